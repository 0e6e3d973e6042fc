import pytest

from app.core.errors import LabelOutOfRange
from app.core.scalars import ONE
from app.services.double import (
    SimpleLabel,
    are_isomorphic,
    build_double,
    catalog_labels,
    census,
    is_simple,
    iso_partner,
    one_dim_braiding_scalar,
    rep_ok,
    simple_module,
    template_module,
    verify_double_presentation,
)
from app.services.hopf import verify_hopf_axioms


def test_label_parsing_reduces_indices():
    """Indices are reduced modulo their ranges."""
    label = SimpleLabel.parse("W(5, 1, 6, 3)")
    assert str(label) == "W(1,1,2,1)"
    assert label.dim == 2


@pytest.mark.parametrize("text", ["X(1,2)", "V(0,1)", "Char(1,1,0,0"])
def test_label_parsing_rejects_bad_text(text):
    """Malformed labels raise LabelOutOfRange."""
    with pytest.raises(LabelOutOfRange):
        SimpleLabel.parse(text)


def test_simple_module_checks_the_index_sets():
    """V(1,0,1,0,0,0) is neither in the first nor in the second index set."""
    with pytest.raises(LabelOutOfRange):
        simple_module("V(1,0,1,0,0,0)")
    with pytest.raises(LabelOutOfRange):
        simple_module("U(0,1,0,0)")
    assert simple_module("V(0,1,0,0,1,1)").dim == 2


def test_catalog_label_counts():
    """88 labels split 32/24/16/16, with squared dimensions summing to 256."""
    labels = catalog_labels()
    assert len(labels) == 88
    assert len(set(labels)) == 88
    counts = {family: sum(1 for l in labels if l.family == family) for family in ("Char", "V", "W", "U")}
    assert counts == {"Char": 32, "V": 24, "W": 16, "U": 16}
    assert sum(l.dim ** 2 for l in labels) == 256


def test_iso_partner_is_an_involution():
    """Taking the partner twice gives the label back."""
    for label in catalog_labels():
        assert iso_partner(iso_partner(label)) == label


@pytest.mark.parametrize("text", ["W(1,0,0,0)", "V(0,0,1,0,0,1)", "U(1,2,0,0)"])
def test_iso_partner_gives_the_same_module(text):
    """A label and its partner give isomorphic modules."""
    label = SimpleLabel.parse(text)
    assert are_isomorphic(template_module(label), template_module(iso_partner(label)))


def test_simple_modules_satisfy_the_relations():
    """Sample labels give simple modules of the double."""
    for text in ("Char(1,3,0,1)", "V(0,1,0,0,1,1)", "W(1,1,0,1)", "U(1,2,0,1)"):
        r = simple_module(text)
        assert rep_ok(r)
        assert is_simple(r)


def test_one_dim_braiding_scalar():
    """Character modules braid by a sign."""
    assert one_dim_braiding_scalar(SimpleLabel.parse("Char(1,1,0,0)")) == -ONE
    assert one_dim_braiding_scalar(SimpleLabel.parse("Char(1,2,0,0)")) == ONE
    assert one_dim_braiding_scalar(SimpleLabel.parse("Char(1,1,0,1)")) == ONE


@pytest.mark.slow
def test_census():
    """88 pairwise non-isomorphic simples whose dimensions square to 256."""
    result = census()
    assert result["passed"]
    assert result["count"] == 88
    assert result["sum_of_squares"] == 256
    assert result["duplicates"] == []


@pytest.mark.slow
def test_double_is_a_hopf_algebra():
    """D(H^cop) has dimension 256 and passes the Hopf axioms."""
    D = build_double()
    assert D.dim == 256
    assert verify_hopf_axioms(D).passed
    relations = verify_double_presentation(D)
    assert len(relations) == 28
    assert all(ok for _, ok in relations)
