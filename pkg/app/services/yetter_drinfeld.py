"""Yetter-Drinfeld modules over H.

A module carries matrices for x, y, t and a coaction ``V -> H (x) V``
stored as one ``(16 d) x d`` matrix whose row ``k * d + i`` holds the
coefficient of ``h_k (x) v_i``. Left-left compatibility reads
``delta(h.v) = h_1 v_(-1) S(h_3) (x) h_2 . v_(0)``.
"""
import logging
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from app.core import linalg
from app.core.errors import LabelOutOfRange, UnknownTag
from app.core.scalars import HALF, I_UNIT, ONE, ZERO, GaussRat, to_text
from app.services import catalog
from app.services.double import (
    GenRep,
    SimpleLabel,
    build_double_data,
    dual_word,
    template_module,
)
from app.services.hopf import AxiomCheck, Vec, add_into
from app.services.kashina import (
    H_BASIS,
    H_LABELS,
    H_LETTERS,
    apply_automorphism,
    automorphism,
    build_H,
    h_element,
    h_index,
    h_presentation_rules,
    inverse_automorphism,
)

logger = logging.getLogger(__name__)

Coaction = Dict[Tuple[int, int], GaussRat]


class YDModule:
    """Action matrices for x, y, t plus the coaction matrix."""

    def __init__(self, dim: int, action: Dict[str, linalg.Mat], coaction: linalg.Mat, label: Optional[str] = None):
        if coaction.shape != (16 * dim, dim):
            raise ValueError(f"coaction of a {dim}-dim module must be {16 * dim}x{dim}, got {coaction.shape}")
        self.dim = dim
        self.action = {g: action[g] for g in H_LETTERS}
        self.coaction = coaction
        self.label = label
        self._basis_action: Optional[List[linalg.Mat]] = None

    def basis_action(self, k: int) -> linalg.Mat:
        """rho(h_k) for the H basis monomial x^e y^f t^g."""
        if self._basis_action is None:
            mats = []
            for word in H_BASIS:
                m = linalg.identity(self.dim)
                for letter in word:
                    m = linalg.matmul(m, self.action[letter])
                mats.append(m)
            self._basis_action = mats
        return self._basis_action[k]

    def act(self, h: Vec) -> linalg.Mat:
        total = linalg.zeros(self.dim, self.dim)
        for k, c in h.items():
            total = total + self.basis_action(k) * c
        return total

    def coact(self, j: int) -> Coaction:
        """delta(v_j) as ``{(k, i): coeff}``."""
        out: Coaction = {}
        d = self.dim
        for row, cols in linalg.dod(self.coaction).items():
            value = cols.get(j)
            if value:
                out[divmod(row, d)] = value
        return out

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "dim": self.dim,
            "action": {
                g: [[i, j, to_text(v)] for i, row in sorted(linalg.dod(m).items()) for j, v in sorted(row.items())]
                for g, m in self.action.items()
            },
            "coaction": [
                {"h": H_LABELS[row // self.dim], "out": row % self.dim, "in": j, "coeff": to_text(v)}
                for row, cols in sorted(linalg.dod(self.coaction).items())
                for j, v in sorted(cols.items())
            ],
        }

    def __repr__(self) -> str:
        return f"YDModule({self.label or '?'}, dim={self.dim})"


def coaction_matrix(dim: int, deltas: Sequence[Dict[int, Vec]]) -> linalg.Mat:
    """Coaction from ``deltas[j] = {i: h}``: delta(v_j) = sum_i h (x) v_i."""
    out: Dict[int, Dict[int, GaussRat]] = {}
    for j, delta in enumerate(deltas):
        for i, h in delta.items():
            for k, c in h.items():
                if c:
                    out.setdefault(k * dim + i, {})[j] = c
    return linalg.from_dod(out, 16 * dim, dim)


def same_module(V: YDModule, W: YDModule) -> bool:
    """Equal matrices in the given bases, label aside."""
    return (
        V.dim == W.dim
        and all(linalg.dod(V.action[g]) == linalg.dod(W.action[g]) for g in H_LETTERS)
        and linalg.dod(V.coaction) == linalg.dod(W.coaction)
    )


# ---------------------------------------------------------------------------
# construction


def from_double_rep(r: GenRep, label: Optional[str] = None) -> YDModule:
    """delta(v) = sum_k h_k (x) rho(h^k) v with h^k written in the P_alpha basis of H*."""
    data = build_double_data()
    d = r.dim
    out: Dict[int, Dict[int, GaussRat]] = {}
    for k in range(16):
        f_k = linalg.zeros(d, d)
        for beta, c in data.to_p[k].items():
            f_k = f_k + r.word(dual_word(beta)) * c
        for i, row in linalg.dod(f_k).items():
            out[k * d + i] = dict(row)
    action = {g: r.matrices[g] for g in H_LETTERS}
    return YDModule(d, action, linalg.from_dod(out, 16 * d, d), label or r.label)


def _mono(e: int, f: int, g: int) -> Vec:
    return h_element({(e % 4, f % 2, g % 2): 1})


@lru_cache()
def _central_idempotents() -> Tuple[Vec, Vec]:
    """P = (1 + x^2)/2 and Q = (1 - x^2)/2."""
    return (
        h_element({(0, 0, 0): HALF, (2, 0, 0): HALF}),
        h_element({(0, 0, 0): HALF, (2, 0, 0): -HALF}),
    )


def _paired_coaction(g1: Vec, g2: Vec, kappa1: GaussRat, kappa2: GaussRat) -> linalg.Mat:
    """delta(v1) = P g1 (x) v1 + k1 Q g2 (x) v2,  delta(v2) = P g2 (x) v2 + k2 Q g1 (x) v1."""
    H = build_H()
    P, Q = _central_idempotents()
    delta1 = {0: H.multiply(P, g1), 1: {k: kappa1 * c for k, c in H.multiply(Q, g2).items()}}
    delta2 = {1: H.multiply(P, g2), 0: {k: kappa2 * c for k, c in H.multiply(Q, g1).items()}}
    return coaction_matrix(2, [delta1, delta2])


# (m, n) -> exponents (f, g) of y^f t^g in g1 and g2
_V_SHAPES = {
    (0, 0): ((0, 0), (0, 0)),
    (1, 1): ((1, 0), (1, 0)),
    (0, 1): ((0, 1), (1, 1)),
    (1, 0): ((1, 1), (0, 1)),
}

# (l, k) -> exponents (e, f) of x^e y^f t in g1 and g2
_U_SHAPES = {
    (0, 0): ((0, 0), (0, 1)),
    (1, 0): ((0, 1), (0, 0)),
    (0, 1): ((1, 0), (1, 1)),
    (1, 1): ((1, 1), (1, 0)),
}

# (j, k) -> (kappa1, kappa2)
_U_SCALARS = {
    (0, 0): (ONE, ONE), (2, 0): (-ONE, -ONE),
    (0, 1): (I_UNIT, -I_UNIT), (2, 1): (-I_UNIT, I_UNIT),
    (1, 0): (-I_UNIT, I_UNIT), (3, 0): (I_UNIT, -I_UNIT),
    (1, 1): (ONE, ONE), (3, 1): (-ONE, -ONE),
}

# (k, j, l) -> exponents (e, f) of the grouplike x^e y^f coacting on v2
_W_SECOND = {
    (0, 0, 0): (0, 1), (2, 0, 0): (2, 1),
    (0, 1, 0): (2, 1), (2, 1, 0): (0, 1),
    (0, 0, 1): (0, 0), (2, 0, 1): (2, 0),
    (0, 1, 1): (2, 0), (2, 1, 1): (0, 0),
    (1, 0, 0): (3, 1), (3, 0, 0): (1, 1),
    (1, 1, 0): (1, 1), (3, 1, 0): (3, 1),
    (1, 0, 1): (3, 0), (3, 0, 1): (1, 0),
    (1, 1, 1): (1, 0), (3, 1, 1): (3, 0),
}


def table_coaction(label: SimpleLabel) -> linalg.Mat:
    """The tabulated coaction of a catalog simple module."""
    idx = label.indices
    if label.family == "Char":
        _, j, _, l = idx
        return coaction_matrix(1, [{0: _mono(j, l, 0)}])
    if label.family == "V":
        _, _, _, l, m, n = idx
        (f1, g1), (f2, g2) = _V_SHAPES[(m, n)]
        kappa = (ONE, ONE) if l == 0 else (I_UNIT, -I_UNIT)
        return _paired_coaction(_mono(l, f1, g1), _mono(l, f2, g2), *kappa)
    if label.family == "W":
        _, j, k, l = idx
        e, f = _W_SECOND[(k, j, l)]
        return coaction_matrix(2, [{0: _mono(k, l, 0)}, {1: _mono(e, f, 0)}])
    _, j, k, l = idx
    (e1, f1), (e2, f2) = _U_SHAPES[(l, k)]
    k1, k2 = _U_SCALARS[(j, k)]
    return _paired_coaction(_mono(e1, f1, 1), _mono(e2, f2, 1), k1, k2)


def table_module(label: SimpleLabel, tag: Optional[str] = None) -> YDModule:
    if not label.in_range():
        raise LabelOutOfRange(f"{label} is outside the catalog index sets")
    r = template_module(label)
    action = {g: r.matrices[g] for g in H_LETTERS}
    return YDModule(r.dim, action, table_coaction(label), tag or str(label))


def catalog_yd(tag: str) -> YDModule:
    """V1..V8, M1..M20, a family label such as ``W(1,1,0,1)``, or ``Omega<n>[(mults)]``."""
    tag = tag.strip()
    if tag in catalog.CATALOG_TAGS:
        return table_module(SimpleLabel.parse(catalog.CATALOG_TAGS[tag]), tag)
    omega = catalog.parse_omega(tag)
    if omega is not None:
        n, mults = omega
        parts = [catalog_yd(c) for c in catalog.omega_components(n, mults)]
        return direct_sum(parts, label=tag)
    try:
        label = SimpleLabel.parse(tag)
    except LabelOutOfRange as exc:
        raise UnknownTag(f"unknown module tag {tag!r}") from exc
    return table_module(label)


# ---------------------------------------------------------------------------
# verification


def _action_relations(V: YDModule) -> AxiomCheck:
    for rule in h_presentation_rules():
        lhs = linalg.identity(V.dim)
        for letter in rule.lhs:
            lhs = linalg.matmul(lhs, V.action[letter])
        rhs = linalg.zeros(V.dim, V.dim)
        for word, c in rule.rhs.items():
            m = linalg.identity(V.dim)
            for letter in word:
                m = linalg.matmul(m, V.action[letter])
            rhs = rhs + m * c
        if linalg.dod(lhs) != linalg.dod(rhs):
            return AxiomCheck("action_relations", False, f"{''.join(rule.lhs)} relation fails", 6)
    return AxiomCheck("action_relations", True, checked=6)


def _coassociativity(V: YDModule) -> AxiomCheck:
    H = build_H()
    for j in range(V.dim):
        left: Dict = {}
        right: Dict = {}
        for (k, i), c in V.coact(j).items():
            for (p, q), d in H.comult[k].items():
                add_into(left, (p, q, i), c * d)
            for (k2, i2), d in V.coact(i).items():
                add_into(right, (k, k2, i2), c * d)
        if left != right:
            return AxiomCheck("coassociativity", False, f"(Delta (x) id)delta(v_{j}) != (id (x) delta)delta(v_{j})", V.dim)
    return AxiomCheck("coassociativity", True, checked=V.dim)


def _counit(V: YDModule) -> AxiomCheck:
    H = build_H()
    for j in range(V.dim):
        out: Vec = {}
        for (k, i), c in V.coact(j).items():
            add_into(out, i, c * H.counit[k])
        if out != {j: ONE}:
            return AxiomCheck("counit", False, f"(eps (x) id)delta(v_{j}) != v_{j}", V.dim)
    return AxiomCheck("counit", True, checked=V.dim)


@lru_cache(maxsize=None)
def _double_coproduct(m: int) -> Tuple[Tuple[int, int, int, GaussRat], ...]:
    H = build_H()
    terms: Dict = {}
    for (a, b), c in H.comult[m].items():
        for (a1, a2), d in H.comult[a].items():
            add_into(terms, (a1, a2, b), c * d)
    return tuple((a1, a2, b, c) for (a1, a2, b), c in terms.items())


@lru_cache(maxsize=None)
def _conjugate(a1: int, k: int, a3: int) -> Tuple[Tuple[int, GaussRat], ...]:
    """h_{a1} h_k S(h_{a3})."""
    H = build_H()
    value = H.multiply_all(H.basis(a1), H.basis(k), H.apply_antipode(H.basis(a3)))
    return tuple(value.items())


def _yd_compatibility(V: YDModule) -> AxiomCheck:
    checked = 0
    for m in range(16):
        rho = linalg.dod(V.basis_action(m))
        for j in range(V.dim):
            lhs: Dict = {}
            for i, row in rho.items():
                c = row.get(j)
                if c:
                    for (k, i2), d in V.coact(i).items():
                        add_into(lhs, (k, i2), c * d)
            rhs: Dict = {}
            for a1, a2, a3, c in _double_coproduct(m):
                middle = linalg.dod(V.basis_action(a2))
                for (k, i), d in V.coact(j).items():
                    for n, e in _conjugate(a1, k, a3):
                        for out, row in middle.items():
                            f = row.get(i)
                            if f:
                                add_into(rhs, (n, out), c * d * e * f)
            checked += 1
            if lhs != rhs:
                return AxiomCheck(
                    "yd_compatibility", False, f"delta({H_LABELS[m]}.v_{j}) != h1 v(-1) S(h3) (x) h2.v(0)", checked
                )
    return AxiomCheck("yd_compatibility", True, checked=checked)


def verify_yd(V: YDModule) -> List[AxiomCheck]:
    checks = [_action_relations(V), _coassociativity(V), _counit(V), _yd_compatibility(V)]
    failed = [c.name for c in checks if not c.passed]
    if failed:
        logger.warning(f"❌ {V.label}: YD checks failed {failed}")
    return checks


def yd_ok(V: YDModule) -> bool:
    return all(c.passed for c in verify_yd(V))


# ---------------------------------------------------------------------------
# braiding


def braiding(V: YDModule, W: YDModule) -> linalg.Mat:
    """c(v (x) w) = v(-1).w (x) v(0); columns indexed a*dW + b, rows m*dV + i."""
    dv, dw = V.dim, W.dim
    out: Dict[int, Dict[int, GaussRat]] = {}
    for a in range(dv):
        for (k, i), c in V.coact(a).items():
            for m, row in linalg.dod(W.basis_action(k)).items():
                for b, value in row.items():
                    add_into(out.setdefault(m * dv + i, {}), a * dw + b, c * value)
    return linalg.from_dod(out, dw * dv, dv * dw)


def braid_sides(c: linalg.Mat, dim: int) -> Tuple[linalg.Mat, linalg.Mat]:
    eye = linalg.identity(dim)
    c1 = linalg.kron(c, eye)
    c2 = linalg.kron(eye, c)
    return linalg.matmul(c1, c2, c1), linalg.matmul(c2, c1, c2)


def verify_braid_equation(V: YDModule) -> bool:
    left, right = braid_sides(braiding(V, V), V.dim)
    return linalg.dod(left) == linalg.dod(right)


# ---------------------------------------------------------------------------
# twisting, sums, bases


def twist(V: YDModule, k: int) -> YDModule:
    """h ._psi v = psi(h).v and delta^psi = (psi^{-1} (x) id) delta for psi = tau_k."""
    H = build_H()
    generators = {"x": h_index(1, 0, 0), "y": h_index(0, 1, 0), "t": h_index(0, 0, 1)}
    action = {g: V.act(apply_automorphism(k, H.basis(i))) for g, i in generators.items()}
    psi_inverse = automorphism(inverse_automorphism(k))
    coaction = linalg.matmul(linalg.kron(psi_inverse, linalg.identity(V.dim)), V.coaction)
    label = f"{V.label}^tau{k}" if V.label else None
    return YDModule(V.dim, action, coaction, label)


def direct_sum(modules: Sequence[YDModule], label: Optional[str] = None) -> YDModule:
    dim = sum(V.dim for V in modules)
    action: Dict[str, Dict[int, Dict[int, GaussRat]]] = {g: {} for g in H_LETTERS}
    coaction: Dict[int, Dict[int, GaussRat]] = {}
    offset = 0
    for V in modules:
        for g in H_LETTERS:
            for i, row in linalg.dod(V.action[g]).items():
                action[g][offset + i] = {offset + j: v for j, v in row.items()}
        for row, cols in linalg.dod(V.coaction).items():
            k, i = divmod(row, V.dim)
            coaction[k * dim + offset + i] = {offset + j: v for j, v in cols.items()}
        offset += V.dim
    return YDModule(
        dim,
        {g: linalg.from_dod(action[g], dim, dim) for g in H_LETTERS},
        linalg.from_dod(coaction, 16 * dim, dim),
        label or "+".join(V.label or "?" for V in modules),
    )


def rebase(V: YDModule, B: linalg.Mat, label: Optional[str] = None) -> YDModule:
    """The same module in the basis given by the columns of B."""
    inv = linalg.inverse(B)
    if inv is None:
        raise ValueError("change of basis is singular")
    action = {g: linalg.matmul(inv, V.action[g], B) for g in H_LETTERS}
    coaction = linalg.matmul(linalg.kron(linalg.identity(16), inv), V.coaction, B)
    return YDModule(V.dim, action, coaction, label or V.label)


def _intertwiner_system(V: YDModule, W: YDModule) -> linalg.Mat:
    """Rows of T rho_V = rho_W T and (id (x) T) delta_V = delta_W T, T of shape dW x dV row-major."""
    dv, dw = V.dim, W.dim
    rows: Dict[int, Dict[int, GaussRat]] = {}
    offset = 0
    for g in H_LETTERS:
        right = linalg.kron(linalg.identity(dw), V.action[g].transpose())
        left = linalg.kron(W.action[g], linalg.identity(dv))
        for i, row in linalg.dod(right - left).items():
            rows[offset + i] = dict(row)
        offset += dw * dv
    cv, cw = linalg.dod(V.coaction), linalg.dod(W.coaction)
    for k in range(16):
        for i in range(dw):
            for j in range(dv):
                eq: Dict[int, GaussRat] = {}
                for m in range(dv):
                    value = cv.get(k * dv + m, {}).get(j)
                    if value:
                        add_into(eq, i * dv + m, value)
                for m in range(dw):
                    value = cw.get(k * dw + i, {}).get(m)
                    if value:
                        add_into(eq, m * dv + j, -value)
                if eq:
                    rows[offset] = eq
                offset += 1
    return linalg.from_dod(rows, offset, dw * dv)


def yd_iso(V: YDModule, W: YDModule, seed: int = 11, attempts: int = 8) -> Optional[linalg.Mat]:
    """An invertible YD map V -> W, or None."""
    if V.dim != W.dim:
        return None
    n = V.dim
    kernel = linalg.kernel_basis(_intertwiner_system(V, W))
    if not kernel:
        return None
    candidates = list(kernel)
    if len(kernel) > 1:
        rng = np.random.default_rng(seed)
        for _ in range(attempts):
            weights = [int(w) for w in rng.integers(1, 7, size=len(kernel))]
            candidates.append([sum((w * vec[p] for w, vec in zip(weights, kernel)), ZERO) for p in range(n * n)])
    for vec in candidates:
        T = linalg.from_rows([vec[i * n:(i + 1) * n] for i in range(n)], n)
        if linalg.is_invertible(T):
            return T
    return None


def match_components(sources: Sequence[YDModule], targets: Sequence[YDModule]) -> Optional[List[int]]:
    """A bijection sources -> targets through yd_iso, found greedily."""
    if len(sources) != len(targets):
        return None
    used: set = set()
    assignment = []
    for V in sources:
        for idx, W in enumerate(targets):
            if idx not in used and yd_iso(V, W) is not None:
                used.add(idx)
                assignment.append(idx)
                break
        else:
            return None
    return assignment


def find_twist(source_tags: Sequence[str], target_tags: Sequence[str]) -> Optional[int]:
    """The first tau_k whose twist carries the source summands onto the target summands."""
    sources = [catalog_yd(t) for t in source_tags]
    targets = [catalog_yd(t) for t in target_tags]
    order = list(catalog.PREFERRED_TWISTS) + [k for k in range(1, 33) if k not in catalog.PREFERRED_TWISTS]
    for k in order:
        if match_components([twist(V, k) for V in sources], targets) is not None:
            return k
    return None
