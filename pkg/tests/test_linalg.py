import pytest

from app.core import linalg
from app.core.scalars import HALF, I_UNIT, ONE, ZERO, gauss


def test_rank_and_identity():
    """rank counts independent rows exactly."""
    assert linalg.rank(linalg.identity(3)) == 3
    assert linalg.rank(linalg.zeros(2, 3)) == 0
    assert linalg.rank(linalg.from_rows([[1, 2], [2, 4]])) == 1


def test_kernel_basis_is_echelon_normalized():
    """One kernel vector per free column with a 1 there."""
    kernel = linalg.kernel_basis(linalg.from_rows([[1, 1]]))
    assert kernel == [[-ONE, ONE]]


def test_kron_shapes_and_entries():
    """kron(A, B)(u (x) v) = A u (x) B v."""
    A = linalg.from_rows([[1, 2], [0, 1]])
    B = linalg.diag([1, I_UNIT])
    K = linalg.kron(A, B)
    assert K.shape == (4, 4)
    assert linalg.entry(K, 1, 3) == gauss(2) * I_UNIT
    assert linalg.entry(K, 2, 0) == ZERO


def test_inverse_over_gaussian_rationals():
    """Inverses stay exact in Q(i)."""
    M = linalg.from_rows([[2, 0], [0, I_UNIT]])
    inv = linalg.inverse(M)
    assert linalg.entry(inv, 0, 0) == HALF
    assert linalg.entry(inv, 1, 1) == -I_UNIT
    assert linalg.inverse(linalg.from_rows([[1, 1], [1, 1]])) is None
    assert not linalg.is_invertible(linalg.zeros(2, 2))


def test_solve():
    """solve returns one exact solution or None."""
    A = linalg.from_rows([[1, 1], [1, -1]])
    assert linalg.solve(A, [gauss(2), ZERO]) == [ONE, ONE]
    singular = linalg.from_rows([[1, 1], [1, 1]])
    assert linalg.solve(singular, [ONE, ZERO]) is None


def test_span_equal():
    """Spans compare as subspaces, not as lists."""
    first = [[ONE, ZERO], [ZERO, ONE]]
    second = [[ONE, ONE], [ONE, -ONE]]
    assert linalg.span_equal(first, second)
    assert not linalg.span_equal([[ONE, ZERO]], [[ZERO, ONE]])
    assert linalg.span_equal([], [])


def test_permute_factors_swaps_tensor_factors():
    """The flip on k^2 (x) k^2 sends e_a (x) e_b to e_b (x) e_a."""
    P = linalg.permute_factors(2, [2, 2], [1, 0])
    v = [ZERO] * 4
    v[1] = ONE  # e_0 (x) e_1
    assert linalg.apply(P, v) == [ZERO, ZERO, ONE, ZERO]


def test_permute_factors_rejects_bad_permutation():
    """A non-permutation raises ValueError."""
    with pytest.raises(ValueError):
        linalg.permute_factors(2, [2, 2], [0, 0])
