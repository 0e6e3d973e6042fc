"""The 16-dimensional Hopf algebra H, its dual generators and the 32 automorphisms tau_k.

H is generated by x, y, t with x^4 = y^2 = t^2 = 1, xy = yx, ty = yt,
tx = x^3 t; x and y are grouplike and
Delta(t) = 1/2 [(1+y)t (x) t + (1-y)t (x) x^2 t].
The basis x^e y^f t^g sits at index e + 4f + 8g.
"""
import logging
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from app.core import linalg
from app.core.errors import NotAnAutomorphism
from app.core.scalars import HALF, ONE, GaussRat, sign, xi_power
from app.services.hopf import FDHopf, Vec, add_into, dual, scale
from app.services.presentation import (
    GROUP,
    GeneratorSymbol,
    Presentation,
    RewriteRule,
    comb,
    hopf_from_presentation,
)

logger = logging.getLogger(__name__)

H_LETTERS = ("x", "y", "t")


def h_index(e: int, f: int, g: int) -> int:
    return e % 4 + 4 * (f % 2) + 8 * (g % 2)


def h_exponents(k: int) -> Tuple[int, int, int]:
    return k % 4, (k // 4) % 2, k // 8


def h_word(e: int, f: int, g: int) -> Tuple[str, ...]:
    return ("x",) * (e % 4) + ("y",) * (f % 2) + ("t",) * (g % 2)


def h_label(k: int) -> str:
    e, f, g = h_exponents(k)
    parts = []
    if e:
        parts.append("x" if e == 1 else f"x^{e}")
    if f:
        parts.append("y")
    if g:
        parts.append("t")
    return "".join(parts) or "1"


H_BASIS = [h_word(*h_exponents(k)) for k in range(16)]
H_LABELS = [h_label(k) for k in range(16)]


def h_presentation_rules() -> List[RewriteRule]:
    """The defining relations of H, oriented for the layered order."""
    return [
        RewriteRule(("x",) * 4, comb((1, ""))),
        RewriteRule(("y", "y"), comb((1, ""))),
        RewriteRule(("t", "t"), comb((1, ""))),
        RewriteRule(("y", "x"), comb((1, "x y"))),
        RewriteRule(("t", "y"), comb((1, "y t"))),
        RewriteRule(("t", "x"), comb((1, "x^3 t"))),
    ]


def h_generators() -> List[GeneratorSymbol]:
    return [GeneratorSymbol(n, GROUP) for n in H_LETTERS]


def h_presentation() -> Presentation:
    return Presentation(h_generators(), h_presentation_rules(), name="H")


def h_letter_comult() -> Dict[str, Dict]:
    """Delta of x, y, t in word form."""
    x, y, t = ("x",), ("y",), ("t",)
    x2t = ("x", "x", "t")
    yt = ("y", "t")
    return {
        "x": {(x, x): ONE},
        "y": {(y, y): ONE},
        "t": {(t, t): HALF, (yt, t): HALF, (t, x2t): HALF, (yt, x2t): -HALF},
    }


def h_letter_antipode() -> Dict[str, Dict]:
    """S(x) = x^3, S(y) = y, S(t) = 1/2[(1+y)t + (1-y)x^2 t]."""
    return {
        "x": comb((1, "x^3")),
        "y": comb((1, "y")),
        "t": comb(("1/2", "t"), ("1/2", "y t"), ("1/2", "x^2 t"), ("-1/2", "x^2 y t")),
    }


@lru_cache()
def build_H() -> FDHopf:
    """H as a 16-dimensional FDHopf on the basis x^e y^f t^g."""
    H = hopf_from_presentation(
        h_presentation(),
        h_letter_comult(),
        {"x": ONE, "y": ONE, "t": ONE},
        basis=H_BASIS,
        letter_antipode=h_letter_antipode(),
        labels=H_LABELS,
        name="H",
    )
    logger.info(f"✅ built H (dim {H.dim})")
    return H


def h_element(terms: Dict[Tuple[int, int, int], object]) -> Vec:
    """Element of H from ``{(e, f, g): coeff}``."""
    from app.core.scalars import as_scalar

    out: Vec = {}
    for (e, f, g), c in terms.items():
        add_into(out, h_index(e, f, g), as_scalar(c))
    return out


# ---------------------------------------------------------------------------
# dual generators


class DualGenerators:
    """Coordinates of a, b, c, d in the dual basis of H."""

    def __init__(self, a: Vec, b: Vec, c: Vec, d: Vec):
        self.a = a
        self.b = b
        self.c = c
        self.d = d

    def as_dict(self) -> Dict[str, Vec]:
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d}


def dual_generator_values(k: int) -> Dict[str, GaussRat]:
    """Values of a, b, c, d on the basis monomial h_k."""
    e, f, g = h_exponents(k)
    return {"a": sign(e), "b": sign(f), "c": sign(f + g), "d": xi_power(e)}


@lru_cache()
def build_H_dual() -> FDHopf:
    return dual(build_H())


@lru_cache()
def build_dual_generators() -> DualGenerators:
    """a = [(1-x+x^2-x^3)(1+y)(1+t)]* and friends, as dual-basis vectors."""
    values = [dual_generator_values(k) for k in range(16)]
    gens = DualGenerators(*({k: v[name] for k, v in enumerate(values)} for name in "abcd"))
    return gens


def dual_relation_checks(H_star: Optional[FDHopf] = None, gens: Optional[DualGenerators] = None) -> List[Tuple[str, bool]]:
    """The algebra and coalgebra identities of a, b, c, d inside dual(H)."""
    A = H_star or build_H_dual()
    g = gens or build_dual_generators()
    a, b, c, d = g.a, g.b, g.c, g.d
    m = A.multiply_all
    one = A.unit

    def tensor(u: Vec, v: Vec) -> Dict:
        out: Dict = {}
        for i, p in u.items():
            for j, q in v.items():
                add_into(out, (i, j), p * q)
        return out

    bcd = m(b, c, d)
    left_plus = dict(d)
    for k, v in bcd.items():
        add_into(left_plus, k, v)
    left_minus = dict(d)
    for k, v in bcd.items():
        add_into(left_minus, k, -v)
    expected_delta_d: Dict = {}
    for key, v in tensor(scale(left_plus, HALF), d).items():
        add_into(expected_delta_d, key, v)
    for key, v in tensor(scale(left_minus, HALF), m(a, d)).items():
        add_into(expected_delta_d, key, v)

    return [
        ("a^2=1", m(a, a) == one),
        ("b^2=1", m(b, b) == one),
        ("c^2=1", m(c, c) == one),
        ("ab=ba", m(a, b) == m(b, a)),
        ("ac=ca", m(a, c) == m(c, a)),
        ("bc=cb", m(b, c) == m(c, b)),
        ("d^2=a", m(d, d) == a),
        ("da=ad", m(d, a) == m(a, d)),
        ("db=cd", m(d, b) == m(c, d)),
        ("dc=bd", m(d, c) == m(b, d)),
        ("Delta(a)=a(x)a", A.comultiply(a) == tensor(a, a)),
        ("Delta(b)=b(x)b", A.comultiply(b) == tensor(b, b)),
        ("Delta(c)=c(x)c", A.comultiply(c) == tensor(c, c)),
        ("Delta(d)=1/2(d+bcd)(x)d+1/2(d-bcd)(x)ad", A.comultiply(d) == expected_delta_d),
    ]


# ---------------------------------------------------------------------------
# automorphisms

_X_IMAGES = [(1, 0, 0), (3, 0, 0), (1, 1, 0), (3, 1, 0)]
_T_IMAGES = [(0, 0, 1), (1, 0, 1), (2, 0, 1), (3, 0, 1), (0, 1, 1), (1, 1, 1), (2, 1, 1), (3, 1, 1)]


def automorphism_images(k: int) -> Dict[str, Tuple[int, int, int]]:
    """Exponents (e, f, g) of the images of x, y, t under tau_k."""
    if not 1 <= k <= 32:
        raise NotAnAutomorphism(f"automorphism index {k} outside 1..32")
    q, r = divmod(k - 1, 8)
    return {"x": _X_IMAGES[q], "y": (0, 1, 0), "t": _T_IMAGES[r]}


def _map_columns(H: FDHopf, images: Dict[str, Vec]) -> List[Vec]:
    columns = []
    for k in range(H.dim):
        e, f, g = h_exponents(k)
        factors = [images["x"]] * e + [images["y"]] * f + [images["t"]] * g
        columns.append(H.multiply_all(*factors))
    return columns


def _columns_to_matrix(columns: List[Vec]) -> linalg.Mat:
    dod: Dict[int, Dict[int, GaussRat]] = {}
    for k, col in enumerate(columns):
        for m, v in col.items():
            dod.setdefault(m, {})[k] = v
    return linalg.from_dod(dod, 16, 16)


def hopf_map_defect(H: FDHopf, columns: List[Vec]) -> Optional[str]:
    """First violated identity for a linear map H -> H given by its columns."""

    def image(v: Vec) -> Vec:
        out: Vec = {}
        for k, c in v.items():
            for m, d in columns[k].items():
                add_into(out, m, c * d)
        return out

    if not linalg.is_invertible(_columns_to_matrix(columns)):
        return "not bijective"
    for i in range(H.dim):
        for j in range(H.dim):
            if image(H.product(i, j)) != H.multiply(columns[i], columns[j]):
                return f"phi({H.labels[i]}*{H.labels[j]}) != phi({H.labels[i]})phi({H.labels[j]})"
    for k in range(H.dim):
        mapped: Dict = {}
        for (i, j), d in H.comult[k].items():
            for p, a in columns[i].items():
                for q, b in columns[j].items():
                    add_into(mapped, (p, q), d * a * b)
        if mapped != H.comultiply(columns[k]):
            return f"Delta(phi({H.labels[k]})) != (phi (x) phi)Delta({H.labels[k]})"
        if H.epsilon(columns[k]) != H.counit[k]:
            return f"eps(phi({H.labels[k]})) != eps({H.labels[k]})"
    return None


@lru_cache(maxsize=None)
def automorphism_columns(k: int) -> Tuple[Tuple[Tuple[int, GaussRat], ...], ...]:
    H = build_H()
    images = {name: h_element({exps: 1}) for name, exps in automorphism_images(k).items()}
    columns = _map_columns(H, images)
    defect = hopf_map_defect(H, columns)
    if defect is not None:
        raise NotAnAutomorphism(f"tau_{k}: {defect}")
    return tuple(tuple(sorted(col.items())) for col in columns)


def automorphism(k: int) -> linalg.Mat:
    """16x16 matrix of tau_k; raises NotAnAutomorphism if a table entry were wrong."""
    return _columns_to_matrix([dict(col) for col in automorphism_columns(k)])


def apply_automorphism(k: int, v: Vec) -> Vec:
    columns = automorphism_columns(k)
    out: Vec = {}
    for i, c in v.items():
        for m, d in columns[i]:
            add_into(out, m, c * d)
    return out


@lru_cache()
def composition_table() -> Dict[Tuple[int, int], int]:
    """(i, j) -> k with tau_i o tau_j = tau_k."""
    lookup = {automorphism_columns(k): k for k in range(1, 33)}
    table = {}
    for i in range(1, 33):
        for j in range(1, 33):
            cols = tuple(
                tuple(sorted(apply_automorphism(i, dict(col)).items())) for col in automorphism_columns(j)
            )
            table[(i, j)] = lookup.get(cols, 0)
    return table


def inverse_automorphism(k: int) -> int:
    table = composition_table()
    for j in range(1, 33):
        if table[(k, j)] == 1:
            return j
    raise NotAnAutomorphism(f"tau_{k} has no inverse in the table")


def verify_automorphisms() -> List[Tuple[str, bool, Optional[str]]]:
    """Each tau_k is a Hopf automorphism, the 32 are distinct and they close under composition."""
    results: List[Tuple[str, bool, Optional[str]]] = []
    for k in range(1, 33):
        try:
            automorphism_columns(k)
            results.append((f"tau_{k}", True, None))
        except NotAnAutomorphism as exc:
            results.append((f"tau_{k}", False, str(exc)))
    if not all(ok for _, ok, _ in results):
        return results
    distinct = len({automorphism_columns(k) for k in range(1, 33)}) == 32
    results.append(("pairwise_distinct", distinct, None if distinct else "two table entries coincide"))
    table = composition_table()
    missing = [pair for pair, k in table.items() if k == 0]
    results.append(("closed_under_composition", not missing,
                    None if not missing else f"tau_{missing[0][0]} o tau_{missing[0][1]} not in table"))
    identity_ok = all(table[(1, k)] == k and table[(k, 1)] == k for k in range(1, 33))
    results.append(("identity_is_tau_1", identity_ok, None))
    if all(ok for _, ok, _ in results):
        logger.info("🎉 all 32 automorphisms verified; table closes under composition")
    return results

