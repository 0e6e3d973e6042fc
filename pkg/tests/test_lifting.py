import pytest

from app.core.errors import NicholsNotFinite, WitnessShapeMismatch
from app.core.scalars import gauss
from app.services.hopf import verify_hopf_axioms
from app.services.lifting import (
    IsoWitness,
    LiftingSpec,
    build_bosonization,
    build_lifting,
    bosonize,
    degeneration_check,
    iso_from_witness,
    verify_lifting,
)
from app.services.lifting_families import _squares, get_family
from app.services.suites import DEGENERATION_INSTANCES, LIFT_INSTANCES
from app.services.yetter_drinfeld import catalog_yd, direct_sum

ONE_LETTER = (1, 0, 0, 0, 0, 0, 0, 0)


@pytest.fixture(scope="module")
def u1_alpha_4():
    return build_lifting(LiftingSpec("1", ONE_LETTER, {"alpha": [[4]]}))


@pytest.fixture(scope="module")
def u1_alpha_1():
    return build_lifting(LiftingSpec("1", ONE_LETTER, {"alpha": [[1]]}))


def test_single_letter_lifting_verifies(u1_alpha_1):
    """A1 A1 + A1 A1 = 1 - x^2 over H has dimension 32 and passes every check."""
    report = verify_lifting(u1_alpha_1)
    assert report.passed, [c.to_dict() for c in report.failures()]
    assert report.dim == 32
    assert report.get("antipode") is not None


def test_lifting_report_lists_checks_in_order(u1_alpha_1):
    """Checks run kernel, confluence and dimension first."""
    names = [c.name for c in verify_lifting(u1_alpha_1).checks]
    assert names[:3] == ["braiding_kernel", "confluence", "dimension"]
    assert "coassociativity" in names


def test_lifting_converts_to_hopf(u1_alpha_1):
    """The single-letter lifting becomes a 32-dimensional FDHopf."""
    A = u1_alpha_1.to_hopf(solve=True)
    assert A.dim == 32
    assert verify_hopf_axioms(A).passed


def test_bosonization_of_m1():
    """B(M1) # H has dimension 4 * 16."""
    A = bosonize("M1")
    assert A.dim == 64
    assert verify_hopf_axioms(A).passed


def test_bosonization_of_a_one_dim_module():
    """B(V1) # H has dimension 2 * 16."""
    lifting = build_bosonization("V1")
    assert lifting.expected_dim == 32
    assert lifting.dim == 32


def test_bosonization_refuses_infinite_nichols_algebras():
    """V1 + M13 has no finite Nichols algebra to bosonize."""
    V = direct_sum([catalog_yd("V1"), catalog_yd("M13")])
    with pytest.raises(NicholsNotFinite):
        build_bosonization(V, max_degree=4)


def test_degeneration_to_the_bosonization():
    """alpha = 0 gives back B(V1) # H."""
    assert degeneration_check(LiftingSpec("1", ONE_LETTER, {"alpha": [[1]]}))


def test_scaling_witness(u1_alpha_4, u1_alpha_1):
    """A1 -> 2 A1 carries alpha = 4 to alpha = 1."""
    witness = {"tau": 1, "images": {"A1": "2 A1"}}
    assert iso_from_witness(u1_alpha_4, u1_alpha_1, witness)


def test_identity_witness_is_rejected(u1_alpha_4, u1_alpha_1):
    """The identity does not carry alpha = 4 to alpha = 1."""
    witness = {"tau": 1, "images": {"A1": "A1"}}
    assert not iso_from_witness(u1_alpha_4, u1_alpha_1, witness)


def test_witness_shape_errors(u1_alpha_4, u1_alpha_1):
    """Witnesses must name the source letters and use target letters."""
    with pytest.raises(WitnessShapeMismatch):
        iso_from_witness(u1_alpha_4, u1_alpha_1, {"tau": 1, "images": {"B1": "A1"}})
    with pytest.raises(WitnessShapeMismatch):
        iso_from_witness(u1_alpha_4, u1_alpha_1, {"tau": 1, "images": {"A1": "p1"}})
    with pytest.raises(WitnessShapeMismatch):
        IsoWitness(40, {"A1": "A1"})
    with pytest.raises(WitnessShapeMismatch):
        IsoWitness.from_dict({"tau": 1})


@pytest.mark.slow
@pytest.mark.parametrize("family,params", [
    ("14", {"lambda": 1, "mu": 1, "alpha": 1}),
    ("24", {"lambda": 1}),
    ("29", {"lambda": 1, "mu": 1}),
])
def test_rank_two_liftings_have_dimension_256(family, params):
    """Rank-two liftings verify with 256 normal words."""
    report = verify_lifting(LiftingSpec(family, None, params))
    assert report.passed, [c.to_dict() for c in report.failures()]
    assert report.dim == 256


@pytest.mark.slow
def test_omega25_bosonization():
    """B(Omega25) # H verifies with dimension 256."""
    report = verify_lifting(build_bosonization("Omega25"))
    assert report.passed
    assert report.dim == 256


@pytest.mark.slow
def test_swapping_the_summands_of_u14():
    """Exchanging p and q swaps lambda and mu in family 14."""
    witness = {"tau": 1, "images": {"p1": "q1", "p2": "q2", "q1": "p1", "q2": "p2"}}
    source = LiftingSpec("14", None, {"lambda": 1, "mu": 2, "alpha": 3})
    target = LiftingSpec("14", None, {"lambda": 2, "mu": 1, "alpha": 3})
    assert iso_from_witness(source, target, witness)


def test_identity_witness_is_an_automorphism(u1_alpha_1):
    """Every lifting is isomorphic to itself through the identity."""
    assert iso_from_witness(u1_alpha_1, u1_alpha_1, {"tau": 1, "images": {"A1": "A1"}})


def _squares_of(family, params):
    spec = LiftingSpec(family, None, params)
    return {d.text: d.scale for d in spec.definition.deformations(spec.multiplicities, spec.params)}


@pytest.mark.parametrize("family,params,letter,param", [
    ("16", {"lambda": 1, "mu": 3}, "q2", 3),
    ("22", {"lambda": 2, "mu": 1, "alpha": 1}, "p2", 2),
    ("22", {"lambda": 2, "mu": 5, "alpha": 1}, "q2", 5),
    ("23", {"lambda": 2, "mu": 5, "alpha": 1}, "q2", 5),
])
def test_second_square_keeps_the_sign_of_the_first(family, params, letter, param):
    """In these families p2^2 (or q2^2) is +parameter times (1 - x^2), like p1^2."""
    scales = _squares_of(family, params)
    assert scales[f"{letter} {letter}"] == gauss(param)
    assert scales[f"{letter[0]}1 {letter[0]}1"] == gauss(param)


def test_second_square_flips_sign_in_family_14():
    """Family 14 keeps p2^2 = -lambda (1 - x^2)."""
    scales = _squares_of("14", {"lambda": 2, "mu": 5, "alpha": 1})
    assert scales["p2 p2"] == gauss(-2)
    assert scales["q2 q2"] == gauss(-5)


@pytest.mark.slow
def test_family_16_with_a_flipped_q2_square_is_not_a_hopf_algebra(monkeypatch):
    """q2^2 = -mu (1 - x^2) breaks the coproduct, so the + sign is forced."""
    definition = get_family("16")

    def flipped(groups, params):
        return (_squares("p1", "p2", params["lambda"], "lambda")
                + _squares("q1", "q2", params["mu"], "mu", second_sign=-1))

    monkeypatch.setattr(definition, "relation_builder", flipped)
    report = verify_lifting(LiftingSpec("16", None, {"lambda": 1, "mu": 1}))
    assert not report.passed
    assert not report.get("comultiplication").passed


@pytest.mark.slow
@pytest.mark.parametrize("family,mults,params,expected", LIFT_INSTANCES,
                         ids=[f"{f}-{p}" for f, _, p, _ in LIFT_INSTANCES])
def test_verified_liftings(family, mults, params, expected):
    """Every verified instance passes all stages at its expected dimension."""
    report = verify_lifting(LiftingSpec(family, mults, params))
    assert report.passed, [c.to_dict() for c in report.failures()]
    assert report.dim == expected


@pytest.mark.slow
@pytest.mark.parametrize("family,mults", DEGENERATION_INSTANCES,
                         ids=[f"{f}-{m}" for f, m in DEGENERATION_INSTANCES])
def test_liftings_degenerate_to_bosonizations(family, mults):
    """At zero parameters every family is the bosonization of its module."""
    assert degeneration_check(LiftingSpec(family, mults))
