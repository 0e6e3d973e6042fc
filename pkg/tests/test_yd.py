import pytest

from app.core import linalg
from app.core.errors import UnknownTag
from app.core.scalars import ONE
from app.services.catalog import CATALOG_TAGS
from app.services.double import SimpleLabel, simple_module
from app.services.lifting_families import SWAP, XI_FREE
from app.services.yetter_drinfeld import (
    braiding,
    catalog_yd,
    direct_sum,
    find_twist,
    from_double_rep,
    rebase,
    same_module,
    twist,
    verify_braid_equation,
    yd_iso,
    yd_ok,
)


@pytest.mark.parametrize("tag", ["V1", "V6", "M1", "M7", "M13", "M17", "M20"])
def test_catalog_modules_are_yetter_drinfeld(tag):
    """Catalog modules satisfy the YD compatibility."""
    V = catalog_yd(tag)
    assert V.dim == (1 if tag.startswith("V") else 2)
    assert yd_ok(V)
    assert verify_braid_equation(V)


def test_one_dim_modules_braid_by_minus_one():
    """V1 .. V8 all braid by -1."""
    for tag in ("V1", "V2", "V3", "V4", "V5", "V6", "V7", "V8"):
        V = catalog_yd(tag)
        assert linalg.entry(braiding(V, V), 0, 0) == -ONE


def test_omega_tags_are_direct_sums():
    """Omega tags give direct sums of their components."""
    V = catalog_yd("Omega14")
    assert V.dim == 4
    assert V.label == "Omega14"
    assert catalog_yd("Omega2(1,0,0,1)").dim == 4
    assert yd_ok(V)


@pytest.mark.parametrize("tag", ["M21", "Omega99", "nonsense"])
def test_unknown_tags(tag):
    """Unknown tags raise UnknownTag."""
    with pytest.raises(UnknownTag):
        catalog_yd(tag)


def test_braiding_shape_between_summands():
    """The braiding matrix has size dim V * dim W."""
    V, W = catalog_yd("V1"), catalog_yd("M1")
    assert braiding(V, W).shape == (2, 2)
    assert braiding(W, W).shape == (4, 4)


def test_rebase_gives_an_isomorphic_module():
    """A change of basis gives an isomorphic module."""
    V = catalog_yd("M7")
    for B in (SWAP, XI_FREE):
        W = rebase(V, B)
        assert yd_ok(W)
        assert yd_iso(V, W) is not None


def test_non_isomorphic_modules_have_no_intertwiner():
    """M1 is not isomorphic to M2, nor V1 to M1."""
    assert yd_iso(catalog_yd("M1"), catalog_yd("M2")) is None
    assert yd_iso(catalog_yd("V1"), catalog_yd("M1")) is None


def test_twist_by_identity():
    """Twisting by tau_1 changes nothing."""
    V = catalog_yd("M13")
    assert same_module(twist(V, 1), V)


def test_twist_table_entry():
    """tau_17 carries V1 to V3 and M2 to M1."""
    assert yd_iso(twist(catalog_yd("V1"), 17), catalog_yd("V3")) is not None
    assert yd_iso(twist(catalog_yd("M2"), 17), catalog_yd("M1")) is not None
    assert find_twist(["M2"], ["M1"]) == 17


def test_direct_sum_keeps_blocks():
    """A direct sum keeps its summands as blocks."""
    V = direct_sum([catalog_yd("V1"), catalog_yd("M1")])
    assert V.dim == 3
    assert yd_ok(V)
    assert V.label == "V1+M1"


@pytest.mark.slow
@pytest.mark.parametrize("tag", ["V1", "M1", "M13", "M17"])
def test_coaction_from_the_double_matches_the_catalog(tag):
    """The coaction read off the double is the tabulated one."""
    label = SimpleLabel.parse(CATALOG_TAGS[tag])
    assert same_module(catalog_yd(tag), from_double_rep(simple_module(label), tag))
