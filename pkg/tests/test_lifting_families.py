import pytest

from app.core.errors import ParameterShapeMismatch, UnknownFamily
from app.core.scalars import HALF, ONE, ZERO, gauss
from app.services.lifting import LiftingSpec
from app.services.lifting_families import family_key, family_keys, get_family


@pytest.mark.parametrize("given,expected", [
    ("14", "14"), (14, "14"), ("U14", "14"), ("25", "Omega25"), ("Omega25", "Omega25"), ("Ω25", "Omega25"),
])
def test_family_key_normalization(given, expected):
    """Family names accept integers and U or Omega prefixes."""
    assert family_key(given) == expected


@pytest.mark.parametrize("family", ["3", "U13", "30", ""])
def test_unknown_family(family):
    """Families outside the list raise UnknownFamily."""
    with pytest.raises(UnknownFamily):
        family_key(family)


def test_family_keys_are_ordered():
    """Keys sort numerically with Omega25 in place of 25."""
    keys = family_keys()
    assert keys[:5] == ["1", "2", "4", "5", "8"]
    assert keys.index("Omega25") == keys.index("24") + 1
    assert keys[-1] == "29"


def test_dimensions():
    """Dimensions follow 16 times the Nichols algebra dimension."""
    assert get_family("1").dimension((1, 1, 0, 0, 0, 0, 0, 0)) == 64
    assert get_family("2").dimension((0, 0, 0, 0)) == 64
    assert get_family("14").dimension(()) == 256
    assert get_family("Omega25").dimension(()) == 256


def test_multiplicity_shape():
    """Multiplicities must match the family's one-dimensional summands."""
    family = get_family("2")
    assert family.check_multiplicities(None) == (0, 0, 0, 0)
    with pytest.raises(ParameterShapeMismatch):
        family.check_multiplicities((1, 0))
    with pytest.raises(ParameterShapeMismatch):
        family.check_multiplicities((1, 0, -1, 0))
    with pytest.raises(ParameterShapeMismatch):
        get_family("14").check_multiplicities((1,))


def test_family_1_needs_a_letter():
    """Family 1 with all multiplicities zero is rejected."""
    with pytest.raises(ParameterShapeMismatch):
        get_family("1").check_multiplicities((0,) * 8)


def test_missing_parameters_are_zero():
    """Unset parameters resolve to zero."""
    spec = LiftingSpec("14")
    assert spec.params == {"lambda": ZERO, "mu": ZERO, "alpha": ZERO}
    assert spec.name == "U14[0]"


def test_unknown_parameter_is_rejected():
    """Parameters the family lacks raise."""
    with pytest.raises(ParameterShapeMismatch):
        LiftingSpec("15", None, {"alpha": 1})


def test_scalar_parameter_must_be_scalar():
    """A list for a scalar parameter raises."""
    with pytest.raises(ParameterShapeMismatch):
        LiftingSpec("15", None, {"lambda": [1, 2]})


def test_matrix_parameters_follow_multiplicities():
    """Matrix parameters are m x m for multiplicity m."""
    mults = (2, 0, 0, 0, 0, 0, 0, 0)
    spec = LiftingSpec("1", mults, {"alpha": [[1, 0], [0, 2]]})
    assert spec.params["alpha"] == [[ONE, ZERO], [ZERO, gauss(2)]]
    assert spec.params["beta"] == []
    with pytest.raises(ParameterShapeMismatch):
        LiftingSpec("1", mults, {"alpha": [[1]]})


def test_asymmetric_matrix_is_symmetrized():
    """Off-diagonal entries are averaged."""
    spec = LiftingSpec("1", (2, 0, 0, 0, 0, 0, 0, 0), {"alpha": [[0, 1], [0, 0]]})
    assert spec.params["alpha"] == [[ZERO, HALF], [HALF, ZERO]]


def test_vector_parameters():
    """Vector parameters have one entry per letter."""
    spec = LiftingSpec("2", (0, 0, 1, 0), {"nu": 1, "iota_s": ["1/2"]})
    assert spec.params["iota_s"] == [HALF]
    with pytest.raises(ParameterShapeMismatch):
        LiftingSpec("2", (0, 0, 1, 0), {"iota_s": [1, 2]})


def test_positional_values():
    """from_values fills lambda, mu, alpha in order."""
    spec = LiftingSpec.from_values("14", [1, 2, 3])
    assert spec.name == "U14[lambda=1+0*i,mu=2+0*i,alpha=3+0*i]"
    with pytest.raises(ParameterShapeMismatch):
        LiftingSpec.from_values("15", [1, 2, 3])


def test_zero_spec_keeps_multiplicities():
    """zero() keeps multiplicities and clears parameters."""
    spec = LiftingSpec("1", (1, 1, 0, 0, 0, 0, 0, 0), {"alpha": [[1]]})
    zero = spec.zero()
    assert zero.multiplicities == spec.multiplicities
    assert zero.name == "U1(1,1,0,0,0,0,0,0)[0]"


def test_blocks_and_letters():
    """Blocks carry their module tag and letters."""
    family = get_family("2")
    blocks = family.blocks((1, 0, 2, 0))
    letters = [letter for block in blocks for letter in block.letters]
    assert letters == ["p1", "p2", "C1", "G1", "G2"]
    assert [b.tag for b in blocks] == ["M1", "V3", "V7", "V7"]
