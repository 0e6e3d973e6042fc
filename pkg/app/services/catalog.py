"""Named Yetter-Drinfeld modules and the tables that refer to them.

``V1``..``V8`` are the one-dimensional modules with infinitesimal braiding
-1, ``M1``..``M20`` the two-dimensional simples with four-dimensional
Nichols algebra, and ``Omega<n>`` the direct sums of the classification.
"""
import re
from typing import Dict, List, Optional, Sequence, Tuple

from app.core.errors import UnknownTag

ONE_DIM_TAGS: Dict[str, str] = {
    "V1": "Char(1,1,0,0)",
    "V2": "Char(1,1,1,0)",
    "V3": "Char(0,1,0,1)",
    "V4": "Char(0,1,1,1)",
    "V5": "Char(1,3,0,0)",
    "V6": "Char(1,3,1,0)",
    "V7": "Char(0,3,0,1)",
    "V8": "Char(0,3,1,1)",
}

TWO_DIM_TAGS: Dict[str, str] = {
    "M1": "V(0,1,0,0,1,1)",
    "M2": "V(1,1,0,0,1,1)",
    "M3": "V(0,0,1,0,0,1)",
    "M4": "V(0,1,1,0,0,1)",
    "M5": "V(0,0,1,0,1,0)",
    "M6": "V(0,1,0,0,1,0)",
    "M7": "V(1,0,0,1,0,0)",
    "M8": "V(1,0,0,1,1,1)",
    "M9": "V(0,1,1,1,0,1)",
    "M10": "V(0,0,1,1,0,1)",
    "M11": "V(0,1,0,1,1,0)",
    "M12": "V(0,0,1,1,1,0)",
    "M13": "W(1,1,0,1)",
    "M14": "W(1,1,2,0)",
    "M15": "W(1,0,2,0)",
    "M16": "W(1,0,2,1)",
    "M17": "U(1,2,0,0)",
    "M18": "U(1,2,0,1)",
    "M19": "U(1,0,1,0)",
    "M20": "U(1,0,1,1)",
}

CATALOG_TAGS: Dict[str, str] = {**ONE_DIM_TAGS, **TWO_DIM_TAGS}

COMMUTATIVE_M = ("M4", "M6", "M9", "M11")
PLUS_SQUARE_M = ("M17", "M18")
MINUS_SQUARE_M = ("M19", "M20")

# one-dimensional summands and the M-summand of Omega_2 .. Omega_13
_SMALL_OMEGA: Dict[int, Tuple[Tuple[str, ...], str]] = {
    2: (("V3", "V4", "V7", "V8"), "M1"),
    3: (("V1", "V2", "V5", "V6"), "M2"),
    4: (("V1", "V3", "V5", "V7"), "M3"),
    5: (("V1", "V4", "V5", "V8"), "M4"),
    6: (("V2", "V4", "V6", "V8"), "M5"),
    7: (("V2", "V3", "V6", "V7"), "M6"),
    8: (("V1", "V2", "V5", "V6"), "M7"),
    9: (("V3", "V4", "V7", "V8"), "M8"),
    10: (("V2", "V4", "V6", "V8"), "M9"),
    11: (("V2", "V3", "V6", "V7"), "M10"),
    12: (("V1", "V3", "V5", "V7"), "M11"),
    13: (("V1", "V4", "V5", "V8"), "M12"),
}

_PAIR_OMEGA: Dict[int, Tuple[str, str]] = {
    14: ("M1", "M1"), 15: ("M1", "M2"), 16: ("M1", "M7"), 17: ("M3", "M3"),
    18: ("M3", "M5"), 19: ("M3", "M9"), 20: ("M4", "M4"), 21: ("M4", "M6"),
    22: ("M7", "M7"), 23: ("M7", "M8"), 24: ("M13", "M13"), 25: ("M13", "M14"),
    26: ("M15", "M15"), 27: ("M15", "M16"), 28: ("M17", "M17"), 29: ("M17", "M18"),
    30: ("M2", "M2"), 31: ("M2", "M8"), 32: ("M4", "M10"), 33: ("M5", "M5"),
    34: ("M5", "M11"), 35: ("M6", "M6"), 36: ("M6", "M12"), 37: ("M8", "M8"),
    38: ("M9", "M9"), 39: ("M9", "M11"), 40: ("M10", "M10"), 41: ("M10", "M12"),
    42: ("M11", "M11"), 43: ("M12", "M12"), 44: ("M14", "M14"), 45: ("M16", "M16"),
    46: ("M18", "M18"), 47: ("M19", "M19"), 48: ("M19", "M20"), 49: ("M20", "M20"),
}

_OMEGA_TEXT = re.compile(r"^\s*Omega\s*(\d+)\s*(?:\(([\d,\s]*)\))?\s*$")


def omega_components(n: int, multiplicities: Optional[Sequence[int]] = None) -> List[str]:
    """Summand tags of Omega_n; families 1..13 take multiplicities of their one-dim summands."""
    if n == 1:
        mults = list(multiplicities) if multiplicities is not None else [1] * 8
        if len(mults) != 8:
            raise UnknownTag(f"Omega1 takes 8 multiplicities, got {len(mults)}")
        return [f"V{i + 1}" for i, m in enumerate(mults) for _ in range(m)]
    if n in _SMALL_OMEGA:
        ones, m_tag = _SMALL_OMEGA[n]
        mults = list(multiplicities) if multiplicities is not None else [1] * 4
        if len(mults) != 4:
            raise UnknownTag(f"Omega{n} takes 4 multiplicities, got {len(mults)}")
        return [tag for tag, m in zip(ones, mults) for _ in range(m)] + [m_tag]
    if n in _PAIR_OMEGA:
        if multiplicities:
            raise UnknownTag(f"Omega{n} takes no multiplicities")
        return list(_PAIR_OMEGA[n])
    raise UnknownTag(f"Omega{n} is not a family of the classification")


def parse_omega(tag: str) -> Optional[Tuple[int, Optional[List[int]]]]:
    match = _OMEGA_TEXT.match(tag)
    if match is None:
        return None
    mults = match.group(2)
    values = [int(v) for v in mults.split(",") if v.strip()] if mults else None
    return int(match.group(1)), values


# pairs whose braidings satisfy c_{W,V} c_{V,W} = id.
FACTORIZING_PAIRS: Dict[str, List[Tuple[str, str]]] = {
    "a": [(f"V{i}", f"V{j}") for i in range(1, 9) for j in range(i, 9)],
    "b": [(v, m) for v in ("V3", "V4", "V7", "V8") for m in ("M1", "M8")],
    "c": [(v, m) for v in ("V1", "V2", "V5", "V6") for m in ("M2", "M7")],
    "d": [(v, m) for v in ("V1", "V3", "V5", "V7") for m in ("M3", "M11")],
    "e": [(v, m) for v in ("V1", "V4", "V5", "V8") for m in ("M4", "M12")],
    "f": [(v, m) for v in ("V2", "V4", "V6", "V8") for m in ("M5", "M9")],
    "g": [(v, m) for v in ("V2", "V3", "V6", "V7") for m in ("M6", "M10")],
    "h": [("M1", "M2"), ("M1", "M7")] + [(a, b) for a in ("M3", "M11") for b in ("M5", "M9")],
    "i": [(a, b) for a in ("M4", "M12") for b in ("M6", "M10")],
    "j": [("M2", "M8"), ("M7", "M8"), ("M13", "M14"), ("M15", "M16"), ("M17", "M18"), ("M19", "M20")],
    "k": [(f"M{i}", f"M{i}") for i in range(1, 21)],
}

# no one-dimensional module factorizes against M13..M20
NON_FACTORIZING_PAIRS: List[Tuple[str, str]] = [
    (f"V{i}", f"M{j}") for i in range(1, 9) for j in range(13, 21)
]

# tau_k sends the first module to (a module isomorphic to) the second.
TWIST_TABLE: Dict[int, List[Tuple[str, str]]] = {
    17: [("V1", "V3"), ("V2", "V4"), ("V5", "V7"), ("V6", "V8"), ("M2", "M1"), ("M7", "M8")],
    5: [("V1", "V2"), ("V3", "V4"), ("V5", "V6"), ("V7", "V8"), ("M3", "M5"), ("M11", "M9"),
        ("M4", "M6"), ("M12", "M10"), ("M17", "M18")],
    9: [("M13", "M14"), ("M15", "M16")],
    2: [("M3", "M10"), ("M4", "M9"), ("M5", "M12"), ("M6", "M11"), ("M17", "M19"), ("M18", "M20"),
        ("V1", "V2"), ("V5", "V6"), ("V3", "V3"), ("V4", "V4"), ("V7", "V7"), ("V8", "V8")],
}

# Families whose bosonizations are isomorphic, related by twisting with an automorphism.
BOSONIZATION_PAIRS_SMALL: List[Tuple[int, int]] = [
    (2, 3), (4, 6), (5, 7), (8, 9), (10, 12), (11, 13), (4, 11), (5, 10),
]
BOSONIZATION_PAIRS_LARGE: List[Tuple[int, int]] = [
    (14, 30), (16, 31), (19, 32), (17, 33), (19, 34), (20, 35), (32, 36), (22, 37), (20, 38), (21, 39),
    (17, 40), (18, 41), (38, 42), (40, 43), (24, 44), (26, 45), (28, 46), (28, 47), (29, 48), (46, 49),
]

# tried first when searching for the twist that realizes a pair
PREFERRED_TWISTS = (17, 5, 9, 2)
