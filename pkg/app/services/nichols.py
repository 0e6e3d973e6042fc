"""Nichols algebras of braided vector spaces, degree by degree.

dim B(V)_n is the rank of the quantum symmetrizer on V^{(x) n}. The
symmetrizer is applied to vectors through the factorization
S_n = (sum_k c_k c_{k+1} ... c_{n-1}) o (S_{n-1} (x) id); the plain sum of
all braided lifts is kept for cross-checks in low degree.
"""
import itertools
import logging
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from app.core import linalg
from app.core.config import get_settings
from app.core.errors import CapExceeded, UnknownTag
from app.core.scalars import I_UNIT, ONE, ZERO, GaussRat, to_text
from app.services import catalog
from app.services.double import SimpleLabel, catalog_labels
from app.services.hopf import add_into
from app.services.yetter_drinfeld import YDModule, braiding, catalog_yd, direct_sum, table_module

logger = logging.getLogger(__name__)
settings = get_settings()

Key = Tuple[int, ...]
TensorVec = Dict[Key, GaussRat]


class BraidedSpace:
    """A vector space with c: V (x) V -> V (x) V given on e_a (x) e_b, column a*d + b."""

    def __init__(self, dim: int, c: linalg.Mat, label: Optional[str] = None):
        if c.shape != (dim * dim, dim * dim):
            raise ValueError(f"braiding of a {dim}-dim space must be {dim * dim}x{dim * dim}")
        self.dim = dim
        self.c = c
        self.label = label
        self._columns: Dict[int, Dict[int, GaussRat]] = {}
        for row, cols in linalg.dod(c).items():
            for col, value in cols.items():
                self._columns.setdefault(col, {})[row] = value
        self._memo: Dict[Key, TensorVec] = {}

    @classmethod
    def from_yd(cls, V: YDModule) -> "BraidedSpace":
        return cls(V.dim, braiding(V, V), V.label)

    def apply_c(self, vec: TensorVec, k: int) -> TensorVec:
        """c acting on tensor factors k and k+1 (1-based)."""
        d = self.dim
        out: TensorVec = {}
        for key, value in vec.items():
            a, b = key[k - 1], key[k]
            for row, entry in self._columns.get(a * d + b, {}).items():
                new = key[:k - 1] + divmod(row, d) + key[k + 1:]
                add_into(out, new, value * entry)
        return out

    def c_matrix(self, k: int, n: int) -> linalg.Mat:
        d = self.dim
        return linalg.kron_all([linalg.identity(d ** (k - 1)), self.c, linalg.identity(d ** (n - k - 1))])

    def braid_equation_holds(self) -> bool:
        left = linalg.matmul(self.c_matrix(1, 3), self.c_matrix(2, 3), self.c_matrix(1, 3))
        right = linalg.matmul(self.c_matrix(2, 3), self.c_matrix(1, 3), self.c_matrix(2, 3))
        return linalg.dod(left) == linalg.dod(right)

    def symmetrize_basis(self, key: Key) -> TensorVec:
        """S_n(e_key), memoized per basis word."""
        if key in self._memo:
            return self._memo[key]
        n = len(key)
        if n <= 1:
            result = {key: ONE}
        else:
            prefix = self.symmetrize_basis(key[:-1])
            current = {k + key[-1:]: v for k, v in prefix.items()}
            result = dict(current)
            for k in range(n - 1, 0, -1):
                current = self.apply_c(current, k)
                for word, value in current.items():
                    add_into(result, word, value)
        self._memo[key] = result
        return result

    def symmetrize(self, vec: TensorVec) -> TensorVec:
        out: TensorVec = {}
        for key, value in vec.items():
            for word, entry in self.symmetrize_basis(key).items():
                add_into(out, word, value * entry)
        return out

    def __repr__(self) -> str:
        return f"BraidedSpace({self.label or '?'}, dim={self.dim})"


def as_braided(space: Union[YDModule, BraidedSpace]) -> BraidedSpace:
    return space if isinstance(space, BraidedSpace) else BraidedSpace.from_yd(space)


def _ravel(key: Key, d: int) -> int:
    return int(np.ravel_multi_index(key, (d,) * len(key))) if key else 0


def _check_cap(d: int, n: int, cap: Optional[int]) -> None:
    cap = cap if cap is not None else settings.symmetrizer_cap
    if d ** n > cap:
        raise CapExceeded(f"symmetrizer in degree {n}", d ** n, cap)


# ---------------------------------------------------------------------------
# lifts and symmetrizers


def reduced_word(perm: Sequence[int]) -> List[int]:
    """A reduced word (1-based adjacent transpositions) for perm, perm[i] = image of i."""
    w = list(perm)
    swaps = []
    changed = True
    while changed:
        changed = False
        for i in range(len(w) - 1):
            if w[i] > w[i + 1]:
                w[i], w[i + 1] = w[i + 1], w[i]
                swaps.append(i + 1)
                changed = True
    return list(reversed(swaps))


def lift_of_word(word: Sequence[int], n: int, B: BraidedSpace) -> linalg.Mat:
    result = linalg.identity(B.dim ** n)
    for k in word:
        result = linalg.matmul(result, B.c_matrix(k, n))
    return result


def braided_lift(perm: Sequence[int], B: BraidedSpace) -> linalg.Mat:
    return lift_of_word(reduced_word(perm), len(perm), B)


def matsumoto_symmetrizer(n: int, B: BraidedSpace) -> linalg.Mat:
    """Sum of braided lifts over Sym(n)."""
    total = linalg.zeros(B.dim ** n, B.dim ** n)
    for perm in itertools.permutations(range(n)):
        total = total + braided_lift(perm, B)
    return total


def quantum_symmetrizer(n: int, B: BraidedSpace, cap: Optional[int] = None) -> linalg.Mat:
    d = B.dim
    _check_cap(d, n, cap)
    size = d ** n
    out: Dict[int, Dict[int, GaussRat]] = {}
    for key in itertools.product(range(d), repeat=n):
        col = _ravel(key, d)
        for word, value in B.symmetrize_basis(key).items():
            out.setdefault(_ravel(word, d), {})[col] = value
    return linalg.from_dod(out, size, size)


class HilbertPrefix:
    """dims[n] = dim B(V)_n for n = 0..max_degree."""

    def __init__(self, dims: List[int], label: Optional[str] = None):
        self.dims = dims
        self.label = label

    @property
    def terminated(self) -> bool:
        return self.dims[-1] == 0

    @property
    def total(self) -> int:
        return sum(self.dims)

    def to_dict(self) -> dict:
        return {"label": self.label, "dims": self.dims, "total": self.total, "terminated": self.terminated}

    def __repr__(self) -> str:
        return f"HilbertPrefix({self.label}, {tuple(self.dims)})"


def hilbert_prefix(space: Union[YDModule, BraidedSpace], max_degree: Optional[int] = None,
                   cap: Optional[int] = None) -> HilbertPrefix:
    B = as_braided(space)
    max_degree = max_degree if max_degree is not None else settings.nichols_max_degree
    dims = [1]
    for n in range(1, max_degree + 1):
        if dims[-1] == 0:
            dims.append(0)
            continue
        dims.append(linalg.rank(quantum_symmetrizer(n, B, cap)))
    logger.info(f"✅ Hilbert prefix of {B.label}: {tuple(dims)}")
    return HilbertPrefix(dims, B.label)


def quadratic_relations(space: Union[YDModule, BraidedSpace]) -> List[List[GaussRat]]:
    """Kernel of 1 + c in V (x) V, index a*d + b for v_a v_b."""
    B = as_braided(space)
    return linalg.kernel_basis(quantum_symmetrizer(2, B))


def relation_vector(dim: int, terms: Dict[Tuple[int, int], object]) -> List[GaussRat]:
    """``{(a, b): coeff}`` (0-based) as a vector of V (x) V."""
    from app.core.scalars import as_scalar

    vec = [ZERO] * (dim * dim)
    for (a, b), c in terms.items():
        vec[a * dim + b] = as_scalar(c)
    return vec


def relations_match(space: Union[YDModule, BraidedSpace], claimed: Sequence[Sequence[GaussRat]]) -> bool:
    return linalg.span_equal(quadratic_relations(space), [list(v) for v in claimed])


def catalog_relations(tag: str) -> List[List[GaussRat]]:
    """The listed quadratic relations of B(M_k), or v^2 = 0 for the one-dimensional V_k."""
    if tag in catalog.ONE_DIM_TAGS:
        return [relation_vector(1, {(0, 0): 1})]
    if tag not in catalog.TWO_DIM_TAGS:
        raise UnknownTag(f"no relation list for {tag!r}")
    squares = [relation_vector(2, {(0, 0): 1}), relation_vector(2, {(1, 1): 1})]
    if tag in catalog.COMMUTATIVE_M:
        return squares + [relation_vector(2, {(0, 1): 1, (1, 0): -1})]
    if tag in catalog.PLUS_SQUARE_M:
        return [relation_vector(2, {(0, 1): 1}), relation_vector(2, {(1, 0): 1}),
                relation_vector(2, {(0, 0): 1, (1, 1): 1})]
    if tag in catalog.MINUS_SQUARE_M:
        return [relation_vector(2, {(0, 1): 1}), relation_vector(2, {(1, 0): 1}),
                relation_vector(2, {(0, 0): 1, (1, 1): -1})]
    return squares + [relation_vector(2, {(0, 1): 1, (1, 0): 1})]


# ---------------------------------------------------------------------------
# witnesses, factorization, diagonal braidings


def _square(v: Sequence[GaussRat]) -> List[GaussRat]:
    return [a * b for a in v for b in v]


def _witness_candidates(V: YDModule) -> List[List[GaussRat]]:
    d = V.dim
    eye = [[ONE if i == j else ZERO for j in range(d)] for i in range(d)]
    candidates = list(eye)
    for value in (ONE, -ONE, I_UNIT, -I_UNIT):
        shifted = V.action["x"] - linalg.identity(d) * value
        candidates.extend(linalg.kernel_basis(shifted))
    for a, b in itertools.combinations(range(d), 2):
        for value in (ONE, -ONE, I_UNIT, -I_UNIT):
            candidates.append([eye[a][p] + value * eye[b][p] for p in range(d)])
    return candidates


def eigenvalue_one_witness(V: YDModule) -> Optional[List[GaussRat]]:
    """A nonzero v with c(v (x) v) = v (x) v among basis vectors, x-eigenvectors and simple sums."""
    c = braiding(V, V)
    for v in _witness_candidates(V):
        if not any(v):
            continue
        square = _square(v)
        if linalg.apply(c, square) == square:
            return v
    return None


def witness_growth(V: YDModule, v: Sequence[GaussRat], max_degree: int) -> List[bool]:
    """S_n(v^{(x) n}) != 0 for n = 1..max_degree."""
    B = as_braided(V)
    support = {i: a for i, a in enumerate(v) if a}
    power: TensorVec = {(): ONE}
    alive = []
    for _ in range(max_degree):
        power = {key + (i,): c * a for key, c in power.items() for i, a in support.items()}
        alive.append(bool(B.symmetrize(power)))
    return alive


def pair_factorization(V: YDModule, W: YDModule) -> bool:
    """c_{W,V} c_{V,W} = id on V (x) W."""
    square = linalg.matmul(braiding(W, V), braiding(V, W))
    return linalg.dod(square) == linalg.dod(linalg.identity(V.dim * W.dim))


def diagonal_data(V: YDModule) -> Optional[List[List[GaussRat]]]:
    """(q_ij) when c(e_i (x) e_j) = q_ij e_j (x) e_i for all i, j; None otherwise."""
    d = V.dim
    columns: Dict[int, Dict[int, GaussRat]] = {}
    for row, cols in linalg.dod(braiding(V, V)).items():
        for col, value in cols.items():
            columns.setdefault(col, {})[row] = value
    q = [[ZERO] * d for _ in range(d)]
    for i in range(d):
        for j in range(d):
            column = columns.get(i * d + j, {})
            if set(column) != {j * d + i}:
                return None
            q[i][j] = column[j * d + i]
    return q


def generalized_dynkin(q: Sequence[Sequence[GaussRat]]) -> dict:
    vertices = [to_text(q[i][i]) for i in range(len(q))]
    edges = []
    for i, j in itertools.combinations(range(len(q)), 2):
        label = q[i][j] * q[j][i]
        if label != ONE:
            edges.append({"from": i, "to": j, "label": to_text(label)})
    return {"vertices": vertices, "edges": edges}


# ---------------------------------------------------------------------------
# catalog-level checks


def family_factorization(n: int, multiplicities: Optional[Sequence[int]] = None) -> Tuple[bool, List[Tuple[str, str]]]:
    """Every pair of distinct summands of Omega_n factorizes; returns the failing pairs."""
    tags = catalog.omega_components(n, multiplicities)
    modules = {t: catalog_yd(t) for t in set(tags)}
    failing = []
    for a, b in itertools.combinations(range(len(tags)), 2):
        if not pair_factorization(modules[tags[a]], modules[tags[b]]):
            failing.append((tags[a], tags[b]))
    return not failing, failing


def excluded_two_dim_labels() -> List[SimpleLabel]:
    """Two-dimensional catalog simples outside M1..M20."""
    kept = {SimpleLabel.parse(text) for text in catalog.TWO_DIM_TAGS.values()}
    return [label for label in catalog_labels() if label.dim == 2 and label not in kept]


def exclusion_census(evidence_degree: Optional[int] = None) -> List[dict]:
    """Witness per excluded module, or growth evidence when the search finds none."""
    evidence_degree = evidence_degree if evidence_degree is not None else settings.evidence_max_degree
    rows = []
    for label in excluded_two_dim_labels():
        V = table_module(label)
        witness = eigenvalue_one_witness(V)
        if witness is not None:
            rows.append({"label": str(label), "status": "pass", "witness": [to_text(a) for a in witness]})
            continue
        prefix = hilbert_prefix(V, evidence_degree)
        status = "evidence" if not prefix.terminated else "fail"
        if status == "fail":
            logger.warning(f"❌ {label}: no witness and the Nichols algebra terminates {prefix.dims}")
        rows.append({"label": str(label), "status": status, "dims": prefix.dims})
    return rows


def infinite_evidence(tags: Sequence[str], degree: int = 4) -> dict:
    """Nonzero degree-``degree`` component of B(sum of tags); evidence, not a proof."""
    V = direct_sum([catalog_yd(t) for t in tags])
    prefix = hilbert_prefix(V, degree)
    return {"label": V.label, "dims": prefix.dims, "nonzero_at_top": prefix.dims[-1] != 0}
