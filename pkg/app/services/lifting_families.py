"""Family data for the liftings U_i: summands, parameters and deformed relations.

A family lists its summands as blocks of Yetter-Drinfeld letters (a catalog
tag, optionally rewritten in another basis) and the relations whose value
in H is deformed by a parameter. Block pairs without listed relations keep
the braiding kernel as zero relations.
"""
import logging
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from app.core import linalg
from app.core.errors import ParameterShapeMismatch, UnknownFamily
from app.core.scalars import HALF, I_UNIT, ONE, ZERO, GaussRat, as_scalar, to_text
from app.services.presentation import Comb, comb_add, parse_comb

logger = logging.getLogger(__name__)

# v2 -> xi v2: the basis of M7, M8 and M9 in which the coproducts carry no xi
XI_FREE = linalg.diag([ONE, I_UNIT])
# v1 <-> v2: catalog M14, M16, M18 list their basis in the opposite order
SWAP = linalg.from_rows([[0, 1], [1, 0]])


class Block:
    """Letters spanning one summand, with the catalog module they carry."""

    def __init__(self, letters: Sequence[str], tag: str, rebase: Optional[linalg.Mat] = None):
        self.letters = tuple(letters)
        self.tag = tag
        self.rebase = rebase

    def to_dict(self) -> dict:
        return {"letters": list(self.letters), "tag": self.tag, "rebased": self.rebase is not None}

    def __repr__(self) -> str:
        return f"Block({','.join(self.letters)}: {self.tag})"


class Deformation:
    """lhs = scale * value with lhs quadratic in letters and value in H."""

    def __init__(self, lhs: str, value: str = "0", scale=0, name: Optional[str] = None):
        self.text = lhs
        self.lhs: Comb = parse_comb(lhs)
        self.value: Comb = parse_comb(value)
        self.scale: GaussRat = as_scalar(scale)
        self.name = name

    def relation(self) -> Comb:
        return comb_add((ONE, self.lhs), (-self.scale, self.value))

    def letters(self) -> set:
        return {letter for word in self.lhs for letter in word}

    def to_dict(self) -> dict:
        return {"lhs": self.text, "param": self.name, "scale": to_text(self.scale)}

    def __repr__(self) -> str:
        return f"Deformation({self.text} = {self.name or 0})"


Params = Dict[str, object]
RelationBuilder = Callable[[Dict[str, List[str]], Params], List[Deformation]]


class FamilyDef:
    """One lifting family.

    Args:
        key: family name (``"14"``, ``"Omega25"``)
        one_dim: (letter prefix, tag) per multiplicity slot, in multiplicity order
        blocks: fixed two-dimensional blocks
        params: parameter name -> ``"scalar"``, ``"matrix:<slot>"`` or ``"vector:<slot>"``
        relations: builder of the deformed relations
        base_exponent: dim = 2 ** (base_exponent + sum of multiplicities)
    """

    def __init__(
        self,
        key: str,
        blocks: Sequence[Block],
        params: Dict[str, str],
        relations: RelationBuilder,
        one_dim: Sequence[Tuple[str, str]] = (),
        base_exponent: int = 8,
        min_letters: int = 0,
    ):
        self.key = key
        self.fixed_blocks = list(blocks)
        self.params = dict(params)
        self.relation_builder = relations
        self.one_dim = list(one_dim)
        self.base_exponent = base_exponent
        self.min_letters = min_letters

    @property
    def arity(self) -> int:
        return len(self.one_dim)

    def check_multiplicities(self, multiplicities: Optional[Sequence[int]]) -> Tuple[int, ...]:
        if not self.one_dim:
            if multiplicities:
                raise ParameterShapeMismatch(f"family {self.key} takes no multiplicities")
            return ()
        mults = tuple(int(m) for m in (multiplicities if multiplicities is not None else [0] * self.arity))
        if len(mults) != self.arity or any(m < 0 for m in mults):
            raise ParameterShapeMismatch(f"family {self.key} takes {self.arity} non-negative multiplicities, got {mults}")
        if sum(mults) < self.min_letters:
            raise ParameterShapeMismatch(f"family {self.key} needs at least {self.min_letters} one-dimensional letters")
        return mults

    def letter_groups(self, mults: Sequence[int]) -> Dict[str, List[str]]:
        groups = {prefix: [f"{prefix}{i + 1}" for i in range(n)] for (prefix, _), n in zip(self.one_dim, mults)}
        for block in self.fixed_blocks:
            groups[block.letters[0][0]] = list(block.letters)
        return groups

    def blocks(self, mults: Sequence[int]) -> List[Block]:
        out = list(self.fixed_blocks)
        for (prefix, tag), n in zip(self.one_dim, mults):
            out.extend(Block([f"{prefix}{i + 1}"], tag) for i in range(n))
        return out

    def dimension(self, mults: Sequence[int]) -> int:
        return 2 ** (self.base_exponent + sum(mults))

    def resolve_params(self, mults: Sequence[int], params: Optional[Params]) -> Params:
        """Shape-check the parameters; missing ones are zero, matrices are symmetrized."""
        given = dict(params or {})
        unknown = sorted(set(given) - set(self.params))
        if unknown:
            raise ParameterShapeMismatch(f"family {self.key} has no parameters {unknown}; known {sorted(self.params)}")
        resolved: Params = {}
        for name, shape in self.params.items():
            value = given.get(name)
            if shape == "scalar":
                if isinstance(value, (list, tuple)):
                    raise ParameterShapeMismatch(f"{name} of family {self.key} is a scalar")
                resolved[name] = as_scalar(value if value is not None else 0)
                continue
            kind, slot = shape.split(":")
            n = mults[int(slot)]
            if kind == "vector":
                vec = list(value) if value is not None else [0] * n
                if len(vec) != n:
                    raise ParameterShapeMismatch(f"{name} of family {self.key} needs {n} entries, got {len(vec)}")
                resolved[name] = [as_scalar(v) for v in vec]
                continue
            rows = [list(r) for r in value] if value is not None else [[0] * n for _ in range(n)]
            if len(rows) != n or any(len(r) != n for r in rows):
                raise ParameterShapeMismatch(f"{name} of family {self.key} must be {n}x{n}")
            matrix = [[as_scalar(v) for v in r] for r in rows]
            if any(matrix[i][j] != matrix[j][i] for i in range(n) for j in range(i)):
                logger.warning(f"⚠️ {name} of family {self.key} is not symmetric; using (M + M^T)/2")
                matrix = [[HALF * (matrix[i][j] + matrix[j][i]) for j in range(n)] for i in range(n)]
            resolved[name] = matrix
        return resolved

    def deformations(self, mults: Sequence[int], resolved: Params) -> List[Deformation]:
        return self.relation_builder(self.letter_groups(mults), resolved)


# ---------------------------------------------------------------------------
# relation patterns


def _anti(a: str, b: str) -> str:
    return f"{a} {b} + {b} {a}"


def _comm(a: str, b: str) -> str:
    return f"{a} {b} - {b} {a}"


def _same_type(letters: Sequence[str], matrix, name: str, value: str = "1 - x^2") -> List[Deformation]:
    """L_i L_j + L_j L_i = m_ij value for i <= j."""
    out = []
    for i, a in enumerate(letters):
        for j in range(i, len(letters)):
            out.append(Deformation(_anti(a, letters[j]), value, matrix[i][j], f"{name}[{i + 1},{j + 1}]"))
    return out


def _squares(p1: str, p2: str, scale, name: str, second_sign: int = -1, mixed: str = "anti",
             value: str = "1 - x^2") -> List[Deformation]:
    """p1^2 = s value, p2^2 = +-s value, and the mixed relation vanishes."""
    s = as_scalar(scale)
    mixed_text = _anti(p1, p2) if mixed == "anti" else _comm(p1, p2)
    return [
        Deformation(f"{p1} {p1}", value, s, name),
        Deformation(f"{p2} {p2}", value, s * second_sign, name),
        Deformation(mixed_text),
    ]


def _one_dim_families(groups: Dict[str, List[str]], params: Params, names: Dict[str, str]) -> List[Deformation]:
    out: List[Deformation] = []
    for prefix, name in names.items():
        out.extend(_same_type(groups.get(prefix, []), params[name], name))
    return out


# ---------------------------------------------------------------------------
# families with one-dimensional summands


def _family_1(groups, params) -> List[Deformation]:
    return _one_dim_families(groups, params, {
        "A": "alpha", "B": "beta", "C": "gamma", "D": "eta",
        "E": "zeta", "F": "theta", "G": "lambda", "H": "mu",
    })


def _family_2(groups, params) -> List[Deformation]:
    out = _squares("p1", "p2", params["nu"], "nu")
    out += _one_dim_families(groups, params, {"C": "gamma", "D": "eta", "G": "lambda", "H": "mu"})
    patterns = [
        ("C", "lambda_k", "x + x^3 - 2", "x - x^3"),
        ("D", "zeta_l", "x - x^3", "x + x^3 - 2"),
        ("G", "iota_s", "x + x^3 - 2", "x^3 - x"),
        ("H", "theta_r", "x^3 - x", "x + x^3 - 2"),
    ]
    for prefix, name, first, second in patterns:
        for i, letter in enumerate(groups[prefix]):
            value = params[name][i]
            out.append(Deformation(_anti("p1", letter), first, value, f"{name}[{i + 1}]"))
            out.append(Deformation(_anti("p2", letter), second, value, f"{name}[{i + 1}]"))
    return out


def _family_4(groups, params) -> List[Deformation]:
    return _squares("p1", "p2", params["nu"], "nu") + _one_dim_families(
        groups, params, {"A": "alpha", "C": "gamma", "E": "zeta", "G": "lambda"})


def _family_5(groups, params) -> List[Deformation]:
    out = _squares("p1", "p2", params["nu"], "nu", mixed="comm")
    out += _one_dim_families(groups, params, {"A": "alpha", "D": "eta", "E": "zeta", "H": "mu"})
    patterns = [
        ("A", "lambda_i", _comm, "x y t - x^3 y t", _anti, "2 - x y t - x^3 y t"),
        ("D", "kappa_l", _anti, "2 - x y t - x^3 y t", _comm, "x y t - x^3 y t"),
        ("E", "iota_m", _comm, "x y t - x^3 y t", _anti, "-2 + x y t + x^3 y t"),
        ("H", "theta_r", _anti, "-2 + x y t + x^3 y t", _comm, "x y t - x^3 y t"),
    ]
    for prefix, name, first_form, first, second_form, second in patterns:
        for i, letter in enumerate(groups[prefix]):
            value = params[name][i]
            out.append(Deformation(first_form("p1", letter), first, value, f"{name}[{i + 1}]"))
            out.append(Deformation(second_form("p2", letter), second, value, f"{name}[{i + 1}]"))
    return out


def _family_8(groups, params) -> List[Deformation]:
    return _squares("p1", "p2", params["nu"], "nu") + _one_dim_families(
        groups, params, {"A": "alpha", "B": "beta", "E": "zeta", "F": "theta"})


# ---------------------------------------------------------------------------
# families with two two-dimensional summands


def _pq_cross(params: Params, first: str, second: str, second_sign: int = -1,
              off_form=_anti) -> List[Deformation]:
    alpha = params["alpha"]
    return [
        Deformation(_anti("p1", "q1"), first, alpha, "alpha"),
        Deformation(_anti("p2", "q2"), second, alpha * second_sign, "alpha"),
        Deformation(off_form("p1", "q2")),
        Deformation(off_form("p2", "q1")),
    ]


def _family_14(groups, params) -> List[Deformation]:
    return (_squares("p1", "p2", params["lambda"], "lambda") + _squares("q1", "q2", params["mu"], "mu")
            + _pq_cross(params, "1 - x^2", "1 - x^2"))


def _family_15(groups, params) -> List[Deformation]:
    return _squares("p1", "p2", params["lambda"], "lambda") + _squares("q1", "q2", params["mu"], "mu")


def _family_16(groups, params) -> List[Deformation]:
    return _squares("p1", "p2", params["lambda"], "lambda") + _squares("q1", "q2", params["mu"], "mu", second_sign=1)


def _family_18(groups, params) -> List[Deformation]:
    return (_squares("p1", "p2", params["lambda"], "lambda") + _squares("q1", "q2", params["mu"], "mu")
            + _pq_cross(params, "y + x^2 y - 2", "y - x^2 y", second_sign=1))


def _family_19(groups, params) -> List[Deformation]:
    return _squares("p1", "p2", params["lambda"], "lambda") + _squares("q1", "q2", params["mu"], "mu", mixed="comm")


def _family_20(groups, params) -> List[Deformation]:
    return (_squares("p1", "p2", params["lambda"], "lambda", mixed="comm")
            + _squares("q1", "q2", params["mu"], "mu", mixed="comm")
            + _pq_cross(params, "1 - x^2", "1 - x^2", off_form=_comm))


def _family_21(groups, params) -> List[Deformation]:
    return (_squares("p1", "p2", params["lambda"], "lambda", mixed="comm")
            + _squares("q1", "q2", params["mu"], "mu", mixed="comm"))


def _family_22(groups, params) -> List[Deformation]:
    return (_squares("p1", "p2", params["lambda"], "lambda", second_sign=1)
            + _squares("q1", "q2", params["mu"], "mu", second_sign=1)
            + _pq_cross(params, "1 - x^2", "1 - x^2", second_sign=1))


def _family_23(groups, params) -> List[Deformation]:
    return (_squares("p1", "p2", params["lambda"], "lambda", second_sign=1)
            + _squares("q1", "q2", params["mu"], "mu", second_sign=1)
            + _pq_cross(params, "y + x^2 y - 2", "x^2 y - y", second_sign=1))


def _family_24(groups, params) -> List[Deformation]:
    lam = params["lambda"]
    return [
        Deformation(_anti("p1", "q1")),
        Deformation(_anti("p2", "q2")),
        Deformation(_anti("p1", "q2"), "1 - x^2 y", lam, "lambda"),
        Deformation(_anti("p2", "q1"), "1 - x^2 y", -lam, "lambda"),
    ]


def _exterior_pair(p1: str, p2: str, scale, name: str) -> List[Deformation]:
    """p1^2 = p2^2 = 0 and p1 p2 + p2 p1 = s (1 - y)."""
    return [Deformation(f"{p1} {p1}"), Deformation(f"{p2} {p2}"),
            Deformation(_anti(p1, p2), "1 - y", scale, name)]


def _family_26(groups, params) -> List[Deformation]:
    alpha = params["alpha"]
    return (_exterior_pair("p1", "p2", params["lambda"], "lambda") + _exterior_pair("q1", "q2", params["mu"], "mu") + [
        Deformation(_anti("p1", "q1")),
        Deformation(_anti("p2", "q2")),
        Deformation(_anti("p1", "q2"), "1 - y", alpha, "alpha"),
        Deformation(_anti("p2", "q1"), "1 - y", alpha, "alpha"),
    ])


def _family_27(groups, params) -> List[Deformation]:
    return _exterior_pair("p1", "p2", params["lambda"], "lambda") + _exterior_pair("q1", "q2", params["mu"], "mu")


def _crossed_pair(p1: str, p2: str, scale, name: str) -> List[Deformation]:
    """p1^2 + p2^2 = 0 and p1 p2 = p2 p1 = s (1 - y)."""
    return [
        Deformation(f"{p1} {p1} + {p2} {p2}"),
        Deformation(f"{p1} {p2}", "1 - y", scale, name),
        Deformation(f"{p2} {p1}", "1 - y", scale, name),
    ]


def _family_28(groups, params) -> List[Deformation]:
    return (_crossed_pair("p1", "p2", params["lambda"], "lambda") + _crossed_pair("q1", "q2", params["mu"], "mu") + [
        Deformation("p1 q1 + q1 p1 + p2 q2 + q2 p2"),
        Deformation("p1 q2 + q2 p1 + p2 q1 + q1 p2", "1 - y", params["alpha"], "alpha"),
        Deformation("p1 q1 - q1 p1 - p2 q2 + q2 p2"),
        Deformation("p1 q2 - q2 p1 - p2 q1 + q1 p2"),
    ])


def _family_29(groups, params) -> List[Deformation]:
    return _crossed_pair("p1", "p2", params["lambda"], "lambda") + _crossed_pair("q1", "q2", params["mu"], "mu")


def _no_relations(groups, params) -> List[Deformation]:
    return []


def _pq(p_tag: str, q_tag: str, p_rebase=None, q_rebase=None) -> List[Block]:
    return [Block(["p1", "p2"], p_tag, p_rebase), Block(["q1", "q2"], q_tag, q_rebase)]


_LAMBDA_MU = {"lambda": "scalar", "mu": "scalar"}
_LAMBDA_MU_ALPHA = {"lambda": "scalar", "mu": "scalar", "alpha": "scalar"}

FAMILIES: Dict[str, FamilyDef] = {
    "1": FamilyDef(
        "1", [], {
            "alpha": "matrix:0", "beta": "matrix:1", "gamma": "matrix:2", "eta": "matrix:3",
            "zeta": "matrix:4", "theta": "matrix:5", "lambda": "matrix:6", "mu": "matrix:7",
        }, _family_1,
        one_dim=[("A", "V1"), ("B", "V2"), ("C", "V3"), ("D", "V4"),
                 ("E", "V5"), ("F", "V6"), ("G", "V7"), ("H", "V8")],
        base_exponent=4, min_letters=1,
    ),
    "2": FamilyDef(
        "2", [Block(["p1", "p2"], "M1")], {
            "nu": "scalar", "gamma": "matrix:0", "eta": "matrix:1", "lambda": "matrix:2", "mu": "matrix:3",
            "lambda_k": "vector:0", "zeta_l": "vector:1", "iota_s": "vector:2", "theta_r": "vector:3",
        }, _family_2,
        one_dim=[("C", "V3"), ("D", "V4"), ("G", "V7"), ("H", "V8")], base_exponent=6,
    ),
    "4": FamilyDef(
        "4", [Block(["p1", "p2"], "M3")], {
            "nu": "scalar", "alpha": "matrix:0", "gamma": "matrix:1", "zeta": "matrix:2", "lambda": "matrix:3",
        }, _family_4,
        one_dim=[("A", "V1"), ("C", "V3"), ("E", "V5"), ("G", "V7")], base_exponent=6,
    ),
    "5": FamilyDef(
        "5", [Block(["p1", "p2"], "M4")], {
            "nu": "scalar", "alpha": "matrix:0", "eta": "matrix:1", "zeta": "matrix:2", "mu": "matrix:3",
            "lambda_i": "vector:0", "kappa_l": "vector:1", "iota_m": "vector:2", "theta_r": "vector:3",
        }, _family_5,
        one_dim=[("A", "V1"), ("D", "V4"), ("E", "V5"), ("H", "V8")], base_exponent=6,
    ),
    "8": FamilyDef(
        "8", [Block(["p1", "p2"], "M7")], {
            "nu": "scalar", "alpha": "matrix:0", "beta": "matrix:1", "zeta": "matrix:2", "theta": "matrix:3",
        }, _family_8,
        one_dim=[("A", "V1"), ("B", "V2"), ("E", "V5"), ("F", "V6")], base_exponent=6,
    ),
    "14": FamilyDef("14", _pq("M1", "M1"), _LAMBDA_MU_ALPHA, _family_14),
    "15": FamilyDef("15", _pq("M1", "M2"), _LAMBDA_MU, _family_15),
    "16": FamilyDef("16", _pq("M1", "M7", q_rebase=XI_FREE), _LAMBDA_MU, _family_16),
    "17": FamilyDef("17", _pq("M3", "M3"), _LAMBDA_MU_ALPHA, _family_14),
    "18": FamilyDef("18", _pq("M3", "M5"), _LAMBDA_MU_ALPHA, _family_18),
    "19": FamilyDef("19", _pq("M3", "M9", q_rebase=XI_FREE), _LAMBDA_MU, _family_19),
    "20": FamilyDef("20", _pq("M4", "M4"), _LAMBDA_MU_ALPHA, _family_20),
    "21": FamilyDef("21", _pq("M4", "M6"), _LAMBDA_MU, _family_21),
    "22": FamilyDef("22", _pq("M7", "M7", XI_FREE, XI_FREE), _LAMBDA_MU_ALPHA, _family_22),
    "23": FamilyDef("23", _pq("M7", "M8", XI_FREE, XI_FREE), _LAMBDA_MU_ALPHA, _family_23),
    "24": FamilyDef("24", _pq("M13", "M13"), {"lambda": "scalar"}, _family_24),
    "26": FamilyDef("26", _pq("M15", "M15"), _LAMBDA_MU_ALPHA, _family_26),
    "27": FamilyDef("27", _pq("M15", "M16", q_rebase=SWAP), _LAMBDA_MU, _family_27),
    "28": FamilyDef("28", _pq("M17", "M17"), _LAMBDA_MU_ALPHA, _family_28),
    "29": FamilyDef("29", _pq("M17", "M18", q_rebase=SWAP), _LAMBDA_MU, _family_29),
    "Omega25": FamilyDef("Omega25", _pq("M13", "M14"), {}, _no_relations),
}


def family_key(family) -> str:
    """Normalize 14, "14", "U14", "Omega25", "25" to a registry key."""
    text = str(family).strip()
    if text.upper().startswith("U"):
        text = text[1:]
    if text in ("25", "Ω25", "omega25"):
        text = "Omega25"
    if text not in FAMILIES:
        raise UnknownFamily(f"family {family!r} is not implemented; known {sorted(FAMILIES, key=_family_order)}")
    return text


def get_family(family) -> FamilyDef:
    return FAMILIES[family_key(family)]


def _family_order(key: str) -> Tuple[int, str]:
    return (25, key) if key == "Omega25" else (int(key), "")


def family_keys() -> List[str]:
    return sorted(FAMILIES, key=_family_order)
