import pytest

from app.core import linalg
from app.core.errors import CapExceeded, UnknownTag
from app.core.scalars import ONE, parse, to_text
from app.services.catalog import CATALOG_TAGS, NON_FACTORIZING_PAIRS, omega_components
from app.services.double import SimpleLabel
from app.services.nichols import (
    BraidedSpace,
    catalog_relations,
    diagonal_data,
    eigenvalue_one_witness,
    excluded_two_dim_labels,
    exclusion_census,
    family_factorization,
    generalized_dynkin,
    hilbert_prefix,
    infinite_evidence,
    matsumoto_symmetrizer,
    pair_factorization,
    quadratic_relations,
    quantum_symmetrizer,
    relations_match,
)
from app.services.yetter_drinfeld import braiding, catalog_yd, table_module


def _flip(dim, q=ONE):
    """c(e_a (x) e_b) = q e_b (x) e_a."""
    dod = {b * dim + a: {a * dim + b: q} for a in range(dim) for b in range(dim)}
    return BraidedSpace(dim, linalg.from_dod(dod, dim * dim, dim * dim), f"flip{dim}")


def test_symmetric_algebra_is_polynomial():
    """With c the flip, B(V) = S(V): dims are 1, d, d(d+1)/2, ..."""
    prefix = hilbert_prefix(_flip(2), 3)
    assert prefix.dims == [1, 2, 3, 4]
    assert not prefix.terminated


def test_exterior_algebra_terminates():
    """With c = -flip, B(V) is the exterior algebra."""
    prefix = hilbert_prefix(_flip(3, -ONE), 4)
    assert prefix.dims == [1, 3, 3, 1, 0]
    assert prefix.terminated
    assert prefix.total == 8


@pytest.mark.parametrize("tag", ["M1", "M4", "M13", "M17", "M19"])
def test_two_dim_catalog_series(tag):
    """B(M_k) has dims 1, 2, 1."""
    assert hilbert_prefix(catalog_yd(tag), 4).dims == [1, 2, 1, 0, 0]


def test_one_dim_catalog_series():
    """B(V_k) has dims 1, 1."""
    assert hilbert_prefix(catalog_yd("V5"), 2).dims == [1, 1, 0]


@pytest.mark.parametrize("tag", sorted(CATALOG_TAGS))
def test_listed_quadratic_relations_span_the_kernel(tag):
    """The listed relations span the kernel of 1 + c."""
    assert relations_match(catalog_yd(tag), catalog_relations(tag))


def test_quadratic_relations_count():
    """B(M1) has three quadratic relations."""
    assert len(quadratic_relations(catalog_yd("M1"))) == 3


def test_catalog_relations_unknown_tag():
    """Only catalog tags have listed relations."""
    with pytest.raises(UnknownTag):
        catalog_relations("Omega14")


def test_cap_is_enforced():
    """Symmetrizers larger than the cap raise."""
    with pytest.raises(CapExceeded):
        hilbert_prefix(catalog_yd("Omega14"), 4, cap=64)


@pytest.mark.parametrize("n", [1, 2, 14, 25, 29])
def test_classified_families_factorize(n):
    """B(Omega_n) factorizes over its summands."""
    ok, failing = family_factorization(n)
    assert ok
    assert failing == []


def test_non_factorizing_pairs():
    """V_i + M_j fails to factorize for j >= 13."""
    for v_tag, m_tag in NON_FACTORIZING_PAIRS[:8]:
        assert not pair_factorization(catalog_yd(v_tag), catalog_yd(m_tag))


def test_omega1_is_of_diagonal_type():
    """All eight one-dimensional summands braid with -1 and commute pairwise."""
    q = diagonal_data(catalog_yd("Omega1"))
    assert q is not None
    diagram = generalized_dynkin(q)
    assert diagram["vertices"] == [to_text(-ONE)] * 8
    assert diagram["edges"] == []


def test_omega_components():
    """Omega tags expand to their summand tags."""
    assert omega_components(2) == ["V3", "V4", "V7", "V8", "M1"]
    assert omega_components(25) == ["M13", "M14"]
    assert omega_components(1, [2, 0, 0, 0, 0, 0, 0, 0]) == ["V1", "V1"]
    with pytest.raises(UnknownTag):
        omega_components(25, [1])


@pytest.mark.slow
def test_infinite_evidence_for_a_non_factorizing_sum():
    """V1 + M13 keeps growing at the top degree."""
    evidence = infinite_evidence(["V1", "M13"], 4)
    assert evidence["nonzero_at_top"]


@pytest.fixture(scope="module")
def exclusion_rows():
    return exclusion_census(4)


def test_exclusion_census_has_no_failures(exclusion_rows):
    """Each excluded module gets a witness or growth evidence, never a terminating series."""
    assert len(exclusion_rows) == len(excluded_two_dim_labels())
    assert not [row["label"] for row in exclusion_rows if row["status"] == "fail"]


def test_exclusion_witnesses_are_fixed_by_the_braiding(exclusion_rows):
    """c(v (x) v) = v (x) v for every reported witness."""
    witnessed = [row for row in exclusion_rows if row["status"] == "pass"]
    assert witnessed
    for row in witnessed:
        V = table_module(SimpleLabel.parse(row["label"]))
        v = [parse(a) for a in row["witness"]]
        square = [a * b for a in v for b in v]
        assert any(v)
        assert linalg.apply(braiding(V, V), square) == square


def test_modules_without_a_witness_have_no_braiding_eigenvalue_one(exclusion_rows):
    """The 16 evidence rows are W and U modules whose braiding has eigenvalues +-i only."""
    evidence = [SimpleLabel.parse(row["label"]) for row in exclusion_rows if row["status"] == "evidence"]
    assert len(evidence) == 16
    assert {label.family for label in evidence} == {"W", "U"}
    u_labels = [label for label in evidence if label.family == "U"]
    assert len(u_labels) == 8
    assert all(label.indices[:2] in ((1, 1), (1, 3)) for label in u_labels)
    for label in evidence:
        V = table_module(label)
        assert eigenvalue_one_witness(V) is None
        c = braiding(V, V)
        assert linalg.is_invertible(c - linalg.identity(4))


@pytest.mark.parametrize("tag", ["M1", "M17"])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_factorized_symmetrizer_matches_the_sum_over_permutations(tag, n):
    """The factorized symmetrizer equals the sum of braided lifts."""
    B = BraidedSpace.from_yd(catalog_yd(tag))
    assert linalg.is_zero_matrix(quantum_symmetrizer(n, B) - matsumoto_symmetrizer(n, B))
