"""The Drinfeld double D = D(H^cop) and its 88 simple modules.

D is built on the basis P_alpha (x) h_w where P_alpha = a^i b^j c^k d^l
(alpha = i + 2j + 4k + 8l) is a product in the dual of H^cop and h_w runs
over the basis of H. Multiplication follows

    (f (x) a)(g (x) b) = f g' (x) a_(2) b,  g'(z) = g(S^{-1}(a_(3)) z a_(1)),

and the coalgebra is the tensor coalgebra (dual of H^cop)^cop (x) H^cop.
"""
import hashlib
import logging
import re
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from app.core import linalg
from app.core.errors import LabelOutOfRange
from app.core.scalars import ONE, ZERO, GaussRat, sign, to_text, xi_power
from app.services.hopf import FDHopf, Tensor, Vec, add_into, cop, dual, solve_antipode
from app.services.kashina import H_BASIS, H_LABELS, build_dual_generators, build_H

logger = logging.getLogger(__name__)

DUAL_LETTERS = ("a", "b", "c", "d")
D_LETTERS = DUAL_LETTERS + ("x", "y", "t")


def dual_exponents(alpha: int) -> Tuple[int, int, int, int]:
    return alpha % 2, (alpha // 2) % 2, (alpha // 4) % 2, alpha // 8


def dual_word(alpha: int) -> Tuple[str, ...]:
    i, j, k, l = dual_exponents(alpha)
    return ("a",) * i + ("b",) * j + ("c",) * k + ("d",) * l


def d_index(alpha: int, w: int) -> int:
    return 16 * alpha + w


def d_label(alpha: int, w: int) -> str:
    return f"{''.join(dual_word(alpha)) or '1'}|{H_LABELS[w]}"


# relations of D: (name, lhs word, rhs word); every one reads lhs = rhs
H_COP_RELATIONS = [
    ("x^4=1", "x^4", "1"),
    ("y^2=1", "y^2", "1"),
    ("t^2=1", "t^2", "1"),
    ("xy=yx", "x y", "y x"),
    ("ty=yt", "t y", "y t"),
    ("tx=x^3t", "t x", "x^3 t"),
]
H_DUAL_RELATIONS = [
    ("a^2=1", "a^2", "1"),
    ("b^2=1", "b^2", "1"),
    ("c^2=1", "c^2", "1"),
    ("ab=ba", "a b", "b a"),
    ("ac=ca", "a c", "c a"),
    ("bc=cb", "b c", "c b"),
    ("d^2=a", "d^2", "a"),
    ("da=ad", "d a", "a d"),
    ("db=cd", "d b", "c d"),
    ("dc=bd", "d c", "b d"),
]
CROSS_RELATIONS = [
    ("xa=ax", "x a", "a x"),
    ("xb=bx", "x b", "b x"),
    ("xc=cx", "x c", "c x"),
    ("xd=bcdx", "x d", "b c d x"),
    ("ya=ay", "y a", "a y"),
    ("yb=by", "y b", "b y"),
    ("yc=cy", "y c", "c y"),
    ("yd=dy", "y d", "d y"),
    ("ta=at", "t a", "a t"),
    ("tb=bx^2t", "t b", "b x^2 t"),
    ("tc=cx^2t", "t c", "c x^2 t"),
    ("td=adyt", "t d", "a d y t"),
]
DOUBLE_RELATIONS = H_COP_RELATIONS + H_DUAL_RELATIONS + CROSS_RELATIONS


def _letters(text: str) -> List[str]:
    from app.services.presentation import parse_word

    return list(parse_word(text))


class DoubleData:
    """D together with the coordinate change between P_alpha and the dual basis."""

    def __init__(self, D: FDHopf, values: List[List[GaussRat]], to_p: List[Dict[int, GaussRat]]):
        self.D = D
        # values[alpha][k] = P_alpha(h_k)
        self.values = values
        # to_p[k] = coordinates of the dual-basis functional h^k in the P basis
        self.to_p = to_p


def _functional_to_p(vec: Vec, to_p: List[Dict[int, GaussRat]]) -> Vec:
    out: Vec = {}
    for k, v in vec.items():
        for beta, c in to_p[k].items():
            add_into(out, beta, v * c)
    return out


@lru_cache()
def build_double_data() -> DoubleData:
    H = build_H()
    A = cop(H)
    A_star = dual(A)
    gens = build_dual_generators().as_dict()

    p_vectors: List[Vec] = []
    for alpha in range(16):
        p_vectors.append(A_star.multiply_all(*[gens[letter] for letter in dual_word(alpha)]))
    values = [[p.get(k, ZERO) for k in range(16)] for p in p_vectors]
    inverse = linalg.inverse(linalg.from_rows(values))
    if inverse is None:
        raise ValueError("the monomials a^i b^j c^k d^l do not span the dual of H")
    # f = M^{-1} P, i.e. h^k = sum_beta Minv[k][beta] P_beta
    inv = linalg.dod(inverse)
    to_p = [dict(inv.get(k, {})) for k in range(16)]

    def evaluate(alpha: int, element: Vec) -> GaussRat:
        total = ZERO
        for k, c in element.items():
            total += c * values[alpha][k]
        return total

    # Delta_A^2 of every basis element of A
    delta2: List[Dict[Tuple[int, int, int], GaussRat]] = []
    for w in range(16):
        out: Dict[Tuple[int, int, int], GaussRat] = {}
        for (i, j), c in A.comult[w].items():
            for (p, q), d in A.comult[i].items():
                add_into(out, (p, q, j), c * d)
        delta2.append(out)

    def conjugated(alpha: int, s1: int, s3: int) -> Vec:
        """z -> P_alpha(S^{-1}(s3) z s1) as a functional on A, in the dual basis."""
        left = H.apply_antipode(H.basis(s3))
        out: Vec = {}
        for k in range(16):
            value = evaluate(alpha, H.multiply(H.multiply(left, H.basis(k)), H.basis(s1)))
            if value:
                out[k] = value
        return out

    n = 256
    left_mult: Dict[str, List[Vec]] = {}
    for letter in DUAL_LETTERS:
        columns = []
        for alpha in range(16):
            prod = _functional_to_p(A_star.multiply(gens[letter], p_vectors[alpha]), to_p)
            for w in range(16):
                columns.append({d_index(beta, w): c for beta, c in prod.items()})
        left_mult[letter] = columns
    for letter in ("x", "y", "t"):
        s = H_BASIS.index((letter,))
        columns = []
        for alpha in range(16):
            for w in range(16):
                col: Vec = {}
                for (s1, s2, s3), c in delta2[s].items():
                    f_new = _functional_to_p(conjugated(alpha, s1, s3), to_p)
                    tail = A.product(s2, w)
                    for beta, u in f_new.items():
                        for v, e in tail.items():
                            add_into(col, d_index(beta, v), c * u * e)
                columns.append(col)
        left_mult[letter] = columns

    words = [dual_word(alpha) + H_BASIS[w] for alpha in range(16) for w in range(16)]
    word_index = {word: i for i, word in enumerate(words)}
    rows: Dict[Tuple[str, ...], List[Vec]] = {(): [{j: ONE} for j in range(n)]}
    for word in sorted(words, key=len):
        if not word:
            continue
        tail_rows = rows[word[1:]]
        lg = left_mult[word[0]]
        row = []
        for j in range(n):
            out: Vec = {}
            for k, c in tail_rows[j].items():
                for m, d in lg[k].items():
                    add_into(out, m, c * d)
            row.append(out)
        rows[word] = row
    mult = {}
    for word in words:
        i = word_index[word]
        for j, vec in enumerate(rows[word]):
            if vec:
                mult[(i, j)] = vec

    # coalgebra: Delta(f (x) h) = (f_(2) (x) h_(1)) (x) (f_(1) (x) h_(2))
    p_comult: List[Dict[Tuple[int, int], GaussRat]] = []
    for alpha in range(16):
        out: Dict[Tuple[int, int], GaussRat] = {}
        for k in range(16):
            for l in range(16):
                value = evaluate(alpha, H.product(k, l))
                if not value:
                    continue
                for b1, c1 in to_p[l].items():
                    for b2, c2 in to_p[k].items():
                        add_into(out, (b1, b2), value * c1 * c2)
        p_comult.append(out)
    comult: List[Tensor] = []
    counit: List[GaussRat] = []
    for alpha in range(16):
        for w in range(16):
            out: Tensor = {}
            for (b1, b2), c in p_comult[alpha].items():
                for (p, q), d in A.comult[w].items():
                    add_into(out, (d_index(b1, p), d_index(b2, q)), c * d)
            comult.append(out)
            counit.append(values[alpha][0] * H.counit[w])

    labels = [d_label(alpha, w) for alpha in range(16) for w in range(16)]
    D = FDHopf(labels, mult, {0: ONE}, comult, counit, words=words, name="D")
    D = D.with_antipode(solve_antipode(D))
    logger.info(f"✅ built D(H^cop) (dim {D.dim})")
    return DoubleData(D, values, to_p)


def build_double() -> FDHopf:
    return build_double_data().D


def _relation_report(evaluate: Callable[[List[str]], object], relations) -> List[Tuple[str, bool]]:
    return [(name, evaluate(_letters(lhs)) == evaluate(_letters(rhs))) for name, lhs, rhs in relations]


def verify_double_presentation(D: Optional[FDHopf] = None, relations=None) -> List[Tuple[str, bool]]:
    """Check each relation of D (H^cop, dual and cross relations) as an identity in D."""
    D = D or build_double()
    gens = D.generator_indices()

    def evaluate(letters: List[str]) -> Vec:
        return D.multiply_all(*[D.basis(gens[c]) for c in letters])

    results = _relation_report(evaluate, relations or DOUBLE_RELATIONS)
    failed = [name for name, ok in results if not ok]
    if failed:
        logger.warning(f"❌ D presentation: {failed}")
    else:
        logger.info(f"✅ D presentation: all {len(results)} relations hold")
    return results


# ---------------------------------------------------------------------------
# simple modules

FAMILY_ARITY = {"Char": 4, "V": 6, "W": 4, "U": 4}
FAMILY_MODULI = {
    "Char": (2, 4, 2, 2),
    "V": (2, 2, 2, 2, 2, 2),
    "W": (4, 2, 4, 2),
    "U": (4, 4, 2, 2),
}
_LABEL_TEXT = re.compile(r"^\s*(Char|V|W|U)\s*\(([-\d,\s]+)\)\s*$")


class SimpleLabel:
    """A simple-module label such as V(0,1,0,0,1,1); indices are reduced mod their ranges."""

    def __init__(self, family: str, indices: Sequence[int]):
        if family not in FAMILY_ARITY:
            raise LabelOutOfRange(f"unknown family {family!r}")
        if len(indices) != FAMILY_ARITY[family]:
            raise LabelOutOfRange(f"{family} takes {FAMILY_ARITY[family]} indices, got {len(indices)}")
        self.family = family
        self.indices = tuple(int(v) % m for v, m in zip(indices, FAMILY_MODULI[family]))

    @classmethod
    def parse(cls, text: str) -> "SimpleLabel":
        match = _LABEL_TEXT.match(text)
        if match is None:
            raise LabelOutOfRange(f"cannot parse label {text!r}")
        return cls(match.group(1), [int(v) for v in match.group(2).split(",")])

    def in_range(self) -> bool:
        """Membership in the index sets of the catalog (Omega for V, Lambda for W and U)."""
        if self.family == "Char":
            return True
        if self.family == "V":
            i, j, k, l, m, n = self.indices
            first = i == 0 and (m + n) % 2 == 1
            second = k == 0 and (m + n) % 2 == 0 and (j + l) % 2 == 1
            return first or second
        return self.indices[0] == 1

    @property
    def dim(self) -> int:
        return 1 if self.family == "Char" else 2

    def __eq__(self, other) -> bool:
        return isinstance(other, SimpleLabel) and (self.family, self.indices) == (other.family, other.indices)

    def __hash__(self) -> int:
        return hash((self.family, self.indices))

    def __str__(self) -> str:
        return f"{self.family}({','.join(str(v) for v in self.indices)})"

    __repr__ = __str__


class GenRep:
    """Matrices of the D-generators a, b, c, d, x, y, t on a module."""

    def __init__(self, dim: int, matrices: Dict[str, linalg.Mat], label: Optional[str] = None):
        self.dim = dim
        self.matrices = dict(matrices)
        self.label = label
        self._cache: Dict[Tuple[str, ...], linalg.Mat] = {}

    def word(self, letters: Sequence[str]) -> linalg.Mat:
        """rho(l_1 l_2 ... l_n) = rho(l_1) rho(l_2 ... l_n)."""
        letters = tuple(letters)
        if letters in self._cache:
            return self._cache[letters]
        if not letters:
            result = linalg.identity(self.dim)
        else:
            result = linalg.matmul(self.matrices[letters[0]], self.word(letters[1:]))
        self._cache[letters] = result
        return result

    def __repr__(self) -> str:
        return f"GenRep({self.label or '?'}, dim={self.dim})"


def _scalar_matrix(value: GaussRat, n: int = 1) -> linalg.Mat:
    return linalg.diag([value] * n)


def _antidiag(top: GaussRat, bottom: GaussRat) -> linalg.Mat:
    """[[0, top], [bottom, 0]]."""
    return linalg.from_rows([[ZERO, top], [bottom, ZERO]])


def template_module(label: SimpleLabel) -> GenRep:
    """The matrix template of a family at any index tuple (no range check)."""
    idx = label.indices
    if label.family == "Char":
        i, j, k, l = idx
        mats = {
            "x": _scalar_matrix(sign(i)), "y": _scalar_matrix(sign(j)), "t": _scalar_matrix(sign(k)),
            "a": _scalar_matrix(sign(j)), "b": _scalar_matrix(sign(l)), "c": _scalar_matrix(sign(l)),
            "d": _scalar_matrix(xi_power(j)),
        }
        return GenRep(1, mats, str(label))
    if label.family == "V":
        i, j, k, l, m, n = idx
        mats = {
            "x": linalg.diag([sign(i), sign(i + m + n)]),
            "y": _scalar_matrix(sign(j), 2),
            "t": linalg.diag([sign(k), sign(j + l + k)]),
            "a": _scalar_matrix(sign(l), 2),
            "b": linalg.diag([sign(m), sign(n)]),
            "c": linalg.diag([sign(n), sign(m)]),
            "d": _antidiag(ONE, sign(l)),
        }
        return GenRep(2, mats, str(label))
    i, j, k, l = idx
    mats = {
        "x": linalg.diag([xi_power(i), xi_power(-i)]),
        "y": _scalar_matrix(sign(j), 2),
        "t": _antidiag(ONE, ONE),
        "a": _scalar_matrix(sign(k), 2),
    }
    if label.family == "W":
        mats["b"] = linalg.diag([sign(l), sign(l + 1)])
        mats["c"] = linalg.diag([sign(l), sign(l + 1)])
        mats["d"] = linalg.diag([xi_power(k), sign(j + k) * xi_power(k)])
    else:
        mats["b"] = linalg.diag([sign(l), sign(l + 1)])
        mats["c"] = linalg.diag([sign(l + 1), sign(l)])
        mats["d"] = _antidiag(xi_power(j), sign(j + k) * xi_power(j))
    return GenRep(2, mats, str(label))


def simple_module(label) -> GenRep:
    """The simple D-module of a catalog label; LabelOutOfRange outside Omega / Lambda."""
    if isinstance(label, str):
        label = SimpleLabel.parse(label)
    if not label.in_range():
        raise LabelOutOfRange(f"{label} is outside the catalog index sets")
    return template_module(label)


def verify_rep(r: GenRep, relations=None) -> List[Tuple[str, bool]]:
    """Every defining relation of D as a matrix identity."""
    return _relation_report(lambda letters: linalg.dod(r.word(letters)), relations or DOUBLE_RELATIONS)


def rep_ok(r: GenRep) -> bool:
    return all(ok for _, ok in verify_rep(r))


def _commutation_system(r1: GenRep, r2: GenRep) -> linalg.Mat:
    """Rows of T rho1(g) - rho2(g) T = 0 for T of shape dim2 x dim1 (row-major)."""
    blocks = []
    for g in D_LETTERS:
        right = linalg.kron(linalg.identity(r2.dim), r1.matrices[g].transpose())
        left = linalg.kron(r2.matrices[g], linalg.identity(r1.dim))
        blocks.append(right - left)
    stacked: Dict[int, Dict[int, GaussRat]] = {}
    offset = 0
    for block in blocks:
        for i, row in linalg.dod(block).items():
            stacked[offset + i] = dict(row)
        offset += block.shape[0]
    return linalg.from_dod(stacked, offset, r1.dim * r2.dim)


def commutant_dim(r: GenRep) -> int:
    system = _commutation_system(r, r)
    return r.dim * r.dim - linalg.rank(system)


def is_simple(r: GenRep) -> bool:
    """D is semisimple, so a module is simple iff its commutant is one-dimensional."""
    return commutant_dim(r) == 1


def find_intertwiner(r1: GenRep, r2: GenRep) -> Optional[linalg.Mat]:
    """An invertible T with T rho1(g) = rho2(g) T for every generator, if the kernel yields one."""
    if r1.dim != r2.dim:
        return None
    kernel = linalg.kernel_basis(_commutation_system(r1, r2))
    n = r1.dim
    candidates = [vec for vec in kernel]
    if len(kernel) > 1:
        total = [ZERO] * (n * n)
        for vec in kernel:
            total = [a + b for a, b in zip(total, vec)]
        candidates.append(total)
    for vec in candidates:
        T = linalg.from_rows([vec[i * n:(i + 1) * n] for i in range(n)], n)
        if linalg.is_invertible(T):
            return T
    return None


@lru_cache()
def double_words() -> Tuple[Tuple[str, ...], ...]:
    return tuple(dual_word(alpha) + H_BASIS[w] for alpha in range(16) for w in range(16))


def character_vector(r: GenRep) -> Tuple[GaussRat, ...]:
    """Traces of rho(e_w) over the 256 basis words of D."""
    traces = []
    for word in double_words():
        m = r.word(word)
        traces.append(sum((linalg.entry(m, i, i) for i in range(r.dim)), ZERO))
    return tuple(traces)


def character_hash(chi: Sequence[GaussRat]) -> str:
    return hashlib.sha256(";".join(to_text(c) for c in chi).encode()).hexdigest()[:16]


def are_isomorphic(r1: GenRep, r2: GenRep) -> bool:
    return r1.dim == r2.dim and character_vector(r1) == character_vector(r2)


def iso_partner(label: SimpleLabel) -> SimpleLabel:
    """The other label of the same module under the basis-swap rules."""
    idx = label.indices
    if label.family == "V":
        i, j, k, l, m, n = idx
        return SimpleLabel("V", (i + m + n, j, k + j + l, l, n, m))
    if label.family == "W":
        i, j, k, l = idx
        if (j + k) % 2 == 0:
            return SimpleLabel("W", (-i, j, k, l + 1))
        return SimpleLabel("W", (-i, j, k + 2, l + 1))
    if label.family == "U":
        i, j, k, l = idx
        if (j + k) % 2 == 0:
            return SimpleLabel("U", (-i, j, k, l + 1))
        return SimpleLabel("U", (-i, j + 2, k, l + 1))
    return label


def catalog_labels() -> List[SimpleLabel]:
    """32 characters, 24 V, 16 W and 16 U labels in a fixed order."""
    labels: List[SimpleLabel] = []
    for l in range(2):
        for k in range(2):
            for j in range(4):
                for i in range(2):
                    labels.append(SimpleLabel("Char", (i, j, k, l)))
    for n in range(2):
        for m in range(2):
            for l in range(2):
                for k in range(2):
                    for j in range(2):
                        for i in range(2):
                            label = SimpleLabel("V", (i, j, k, l, m, n))
                            if label.in_range():
                                labels.append(label)
    for l in range(2):
        for k in range(4):
            for j in range(2):
                labels.append(SimpleLabel("W", (1, j, k, l)))
    for l in range(2):
        for k in range(2):
            for j in range(4):
                labels.append(SimpleLabel("U", (1, j, k, l)))
    return labels


def census() -> dict:
    """Build, verify and compare every catalog simple module."""
    labels = catalog_labels()
    entries = []
    characters: Dict[Tuple[GaussRat, ...], str] = {}
    duplicates = []
    for label in labels:
        r = simple_module(label)
        relations_ok = rep_ok(r)
        simple = is_simple(r)
        chi = character_vector(r)
        if chi in characters:
            duplicates.append([characters[chi], str(label)])
        else:
            characters[chi] = str(label)
        entries.append({
            "label": str(label),
            "dim": r.dim,
            "relations": relations_ok,
            "simple": simple,
            "character_hash": character_hash(chi),
        })
    counts = {family: sum(1 for e in labels if e.family == family) for family in FAMILY_ARITY}
    sum_of_squares = sum(e["dim"] ** 2 for e in entries)
    passed = (
        len(entries) == 88
        and not duplicates
        and all(e["relations"] and e["simple"] for e in entries)
        and sum_of_squares == 256
    )
    if passed:
        logger.info(f"🎉 census: {len(entries)} simple D-modules, sum of squares {sum_of_squares}")
    else:
        logger.warning(f"❌ census failed: {len(entries)} entries, duplicates {duplicates}")
    return {
        "count": len(entries),
        "counts": counts,
        "sum_of_squares": sum_of_squares,
        "duplicates": duplicates,
        "entries": entries,
        "passed": passed,
    }


def one_dim_braiding_scalar(label: SimpleLabel) -> GaussRat:
    """(-1)^{(i+l)j}: the self-braiding of the character module chi_{i,j,k,l}."""
    i, j, _, l = label.indices
    return sign((i + l) * j)


def direct_sum_rep(reps: Sequence[GenRep]) -> GenRep:
    """Block-diagonal sum of modules."""
    dim = sum(r.dim for r in reps)
    mats = {}
    for g in D_LETTERS:
        dod: Dict[int, Dict[int, GaussRat]] = {}
        offset = 0
        for r in reps:
            for i, row in linalg.dod(r.matrices[g]).items():
                dod[offset + i] = {offset + j: v for j, v in row.items()}
            offset += r.dim
        mats[g] = linalg.from_dod(dod, dim, dim)
    return GenRep(dim, mats, "+".join(r.label or "?" for r in reps))
