"""Presented algebras: generators, rewrite rules and normal words.

A word is a tuple of generator names and a linear combination is a dict
``{word: scalar}``. Rules rewrite their left-hand word into a combination
of strictly smaller words; with a confluent rule set the irreducible
words form a basis (Diamond lemma).

The default ``layered`` order compares, in turn: the number of
Yetter-Drinfeld letters, the group-letter segments between them (left to
right), and the Yetter-Drinfeld letters themselves. A group segment is
ranked by its count of the separator letter ``t`` and then by its
x/y-blocks read from the right, shortest first. In this order
``t x -> x^3 t`` and ``t A -> A x^2 t`` both decrease, so monomials of H
collect to the right of every word.
"""
import logging
import re
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from app.core.config import get_settings
from app.core.errors import CapExceeded
from app.core.scalars import ONE, ZERO, GaussRat, as_scalar, parse, to_text

logger = logging.getLogger(__name__)
settings = get_settings()

Word = Tuple[str, ...]
Comb = Dict[Word, GaussRat]

GROUP = "group"
YD = "yd"

_POWER = re.compile(r"^([A-Za-z][A-Za-z0-9_]*)(?:\^(\d+))?$")


def parse_word(text: str) -> Word:
    """``"x^3 t p1"`` -> ("x", "x", "x", "t", "p1"); ``"1"`` or ``""`` is the empty word."""
    letters: List[str] = []
    for token in text.split():
        if token == "1":
            continue
        match = _POWER.match(token)
        if match is None:
            raise ValueError(f"bad word token {token!r}")
        letters.extend([match.group(1)] * int(match.group(2) or 1))
    return tuple(letters)


_NUMBER = re.compile(r"^\d+(?:/\d+)?$")


def parse_comb(text: str) -> Comb:
    """``"p1 q1 + q1 p1"`` or ``"2 - x y t - x^3 y t"``; a leading number scales its term."""
    out: Comb = {}
    tokens = text.replace("+", " + ").replace("-", " - ").split()
    sign_value = ONE
    term: List[str] = []

    def flush() -> None:
        if not term:
            return
        coeff = sign_value
        letters = term
        if _NUMBER.match(term[0]):
            coeff = coeff * as_scalar(term[0])
            letters = term[1:]
        add_term(out, parse_word(" ".join(letters)), coeff)

    for token in tokens:
        if token in ("+", "-"):
            flush()
            term = []
            sign_value = ONE if token == "+" else -ONE
            continue
        term.append(token)
    flush()
    return out


def comb(*terms) -> Comb:
    """Combination from ``(coeff, word)`` pairs; words may be given as text."""
    out: Comb = {}
    for coeff, word in terms:
        if isinstance(word, str):
            word = parse_word(word)
        add_term(out, tuple(word), as_scalar(coeff))
    return out


def add_term(target: Comb, word: Word, value: GaussRat) -> None:
    if not value:
        return
    total = target.get(word, ZERO) + value
    if total:
        target[word] = total
    else:
        target.pop(word, None)


def comb_add(*parts: Tuple[GaussRat, Comb]) -> Comb:
    out: Comb = {}
    for coeff, c in parts:
        for w, v in c.items():
            add_term(out, w, coeff * v)
    return out


def comb_mul(a: Comb, b: Comb) -> Comb:
    """Concatenation product in the free algebra."""
    out: Comb = {}
    for u, x in a.items():
        for v, y in b.items():
            add_term(out, u + v, x * y)
    return out


def comb_text(c: Comb) -> str:
    if not c:
        return "0"
    return " + ".join(f"({to_text(v)})*{' '.join(w) or '1'}" for w, v in sorted(c.items()))


class GeneratorSymbol:
    """A generator letter: group-like (x, y, t) or a Yetter-Drinfeld letter."""

    def __init__(self, name: str, sort: str = YD, index: Optional[tuple] = None):
        if sort not in (GROUP, YD):
            raise ValueError(f"unknown generator sort {sort!r}")
        self.name = name
        self.sort = sort
        self.index = tuple(index) if index is not None else None

    def to_json(self) -> dict:
        return {"name": self.name, "sort": self.sort, "index": list(self.index) if self.index else None}

    def __repr__(self) -> str:
        return f"GeneratorSymbol({self.name}, {self.sort})"


class RewriteRule:
    """lhs -> rhs, with every word of rhs smaller than lhs."""

    def __init__(self, lhs: Sequence[str], rhs: Comb):
        self.lhs: Word = tuple(lhs)
        self.rhs: Comb = {tuple(w): c for w, c in rhs.items() if c}

    def to_json(self) -> dict:
        return {
            "lhs": list(self.lhs),
            "rhs": [{"coeff": to_text(c), "word": list(w)} for w, c in sorted(self.rhs.items())],
        }

    @classmethod
    def from_json(cls, data: dict) -> "RewriteRule":
        rhs: Comb = {}
        for term in data["rhs"]:
            add_term(rhs, tuple(term["word"]), parse(term["coeff"]))
        return cls(data["lhs"], rhs)

    def __repr__(self) -> str:
        return f"RewriteRule({' '.join(self.lhs)} -> {comb_text(self.rhs)})"


class Ambiguity:
    """An overlap or inclusion whose two reductions disagree."""

    def __init__(self, word: Word, kind: str, first: Word, second: Word, difference: Comb):
        self.word = word
        self.kind = kind
        self.first = first
        self.second = second
        self.difference = difference

    def to_dict(self) -> dict:
        return {
            "word": " ".join(self.word),
            "kind": self.kind,
            "rules": [" ".join(self.first), " ".join(self.second)],
            "difference": comb_text(self.difference),
        }

    def __repr__(self) -> str:
        return f"Ambiguity({self.kind} {' '.join(self.word)})"


class Presentation:
    """Generators plus order-decreasing rewrite rules.

    Args:
        generators: generator symbols in precedence order
        rules: rewrite rules (one per left-hand word)
        order: ``{"kind": "layered", "separator": "t"}`` or ``{"kind": "deglex"}``
        name: label used in logs and reports
    """

    def __init__(
        self,
        generators: Sequence[GeneratorSymbol],
        rules: Iterable[RewriteRule],
        order: Optional[dict] = None,
        name: str = "P",
    ):
        self.generators = list(generators)
        self.order = dict(order or {"kind": "layered", "separator": "t"})
        self.name = name
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        self.rank = {n: i for i, n in enumerate(names)}
        self.group_letters = {g.name for g in self.generators if g.sort == GROUP}
        self.separator = self.order.get("separator", "t")

        self.rules: Dict[Word, Comb] = {}
        for rule in rules:
            if rule.lhs in self.rules:
                raise ValueError(f"two rules rewrite {' '.join(rule.lhs)}")
            unknown = [c for c in rule.lhs if c not in self.rank]
            if unknown:
                raise ValueError(f"rule {rule} uses unknown letters {unknown}")
            top = self.key(rule.lhs)
            for w in rule.rhs:
                if not self.key(w) < top:
                    raise ValueError(f"rule {rule} is not order-decreasing at {' '.join(w) or '1'}")
            self.rules[rule.lhs] = dict(rule.rhs)
        self._lengths = sorted({len(lhs) for lhs in self.rules})
        self._cache: Dict[Word, Comb] = {}

    @property
    def generator_names(self) -> List[str]:
        return [g.name for g in self.generators]

    def rule_list(self) -> List[RewriteRule]:
        return [RewriteRule(lhs, rhs) for lhs, rhs in self.rules.items()]

    def __repr__(self) -> str:
        return f"Presentation({self.name}, {len(self.generators)} generators, {len(self.rules)} rules)"

    # -- term order ----------------------------------------------------------

    def _segment_key(self, segment: Sequence[str]) -> tuple:
        blocks: List[List[int]] = [[]]
        for letter in segment:
            if letter == self.separator:
                blocks.append([])
            else:
                blocks[-1].append(self.rank[letter])
        return (len(blocks) - 1, tuple((len(b), tuple(b)) for b in reversed(blocks)))

    def key(self, word: Sequence[str]) -> tuple:
        if self.order.get("kind") == "deglex":
            return (len(word), tuple(self.rank[c] for c in word))
        segments: List[List[str]] = [[]]
        yd: List[int] = []
        for letter in word:
            if letter in self.group_letters:
                segments[-1].append(letter)
            else:
                yd.append(self.rank[letter])
                segments.append([])
        return (len(yd), tuple(self._segment_key(s) for s in segments), tuple(yd))

    # -- reduction -----------------------------------------------------------

    def redexes(self, word: Word) -> List[Tuple[int, Word]]:
        found = []
        for i in range(len(word)):
            for length in self._lengths:
                if i + length > len(word):
                    break
                piece = word[i:i + length]
                if piece in self.rules:
                    found.append((i, piece))
        return found

    def _rewrite_at(self, word: Word, i: int, lhs: Word) -> Comb:
        prefix, suffix = word[:i], word[i + len(lhs):]
        out: Comb = {}
        for r, c in self.rules[lhs].items():
            add_term(out, prefix + r + suffix, c)
        return out

    def _rewrite_once(self, word: Word) -> Optional[Comb]:
        for i in range(len(word)):
            for length in self._lengths:
                if i + length > len(word):
                    break
                piece = word[i:i + length]
                if piece in self.rules:
                    return self._rewrite_at(word, i, piece)
        return None

    def is_normal(self, word: Word) -> bool:
        return self._rewrite_once(tuple(word)) is None

    def has_suffix_redex(self, word: Word) -> bool:
        n = len(word)
        for length in self._lengths:
            if length > n:
                break
            if word[n - length:] in self.rules:
                return True
        return False

    def normal_form_word(self, word: Sequence[str]) -> Comb:
        """Leftmost reduction, memoized per word."""
        word = tuple(word)
        if word in self._cache:
            return self._cache[word]
        pending: Dict[Word, Comb] = {}
        stack = [word]
        while stack:
            current = stack[-1]
            if current in self._cache:
                stack.pop()
                continue
            step = pending.get(current)
            if step is None:
                step = self._rewrite_once(current)
                if step is None:
                    self._cache[current] = {current: ONE}
                    stack.pop()
                    continue
                pending[current] = step
            missing = [w for w in step if w not in self._cache]
            if missing:
                stack.extend(missing)
                continue
            result: Comb = {}
            for w, c in step.items():
                for v, d in self._cache[w].items():
                    add_term(result, v, c * d)
            self._cache[current] = result
            pending.pop(current, None)
            stack.pop()
        return self._cache[word]

    def normal_form(self, combination: Comb, strategy: str = "leftmost", seed: Optional[int] = None) -> Comb:
        """Reduce a combination; ``strategy="random"`` picks redexes at random."""
        if strategy == "random":
            return self._normal_form_random(combination, np.random.default_rng(seed))
        out: Comb = {}
        for w, c in combination.items():
            for v, d in self.normal_form_word(w).items():
                add_term(out, v, c * d)
        return out

    def _normal_form_random(self, combination: Comb, rng) -> Comb:
        current = {tuple(w): c for w, c in combination.items() if c}
        while True:
            reducible = sorted((w for w in current if self.redexes(w)), key=self.key)
            if not reducible:
                return current
            word = reducible[int(rng.integers(len(reducible)))]
            spots = self.redexes(word)
            i, lhs = spots[int(rng.integers(len(spots)))]
            coeff = current.pop(word)
            for w, c in self._rewrite_at(word, i, lhs).items():
                add_term(current, w, coeff * c)

    def multiply(self, a: Comb, b: Comb) -> Comb:
        return self.normal_form(comb_mul(a, b))

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "generators": [g.to_json() for g in self.generators],
            "rules": [r.to_json() for r in self.rule_list()],
            "order": self.order,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Presentation":
        generators = [GeneratorSymbol(g["name"], g["sort"], g.get("index")) for g in data["generators"]]
        rules = [RewriteRule.from_json(r) for r in data["rules"]]
        return cls(generators, rules, order=data.get("order"), name=data.get("name", "P"))


def rules_from_relations(relations: Iterable[Comb], key) -> List[RewriteRule]:
    """Orient relations (each = 0) by Gauss-Jordan elimination on words in descending order.

    Every resulting rule has a distinct left-hand word that occurs in no
    other rule's right-hand side.
    """
    from app.core import linalg

    rows = [dict(r) for r in relations if r]
    if not rows:
        return []
    words = sorted({w for r in rows for w in r}, key=key, reverse=True)
    column = {w: i for i, w in enumerate(words)}
    dod = {i: {column[w]: c for w, c in r.items()} for i, r in enumerate(rows)}
    reduced, pivots = linalg.rref(linalg.from_dod(dod, len(rows), len(words)))
    red = linalg.dod(reduced)
    rules = []
    for r, p in enumerate(pivots):
        rhs: Comb = {}
        for j, c in red.get(r, {}).items():
            if j != p:
                add_term(rhs, words[j], -c)
        rules.append(RewriteRule(words[p], rhs))
    return rules


def normal_form(w: Comb, P: Presentation) -> Comb:
    return P.normal_form(w)


def check_confluence(P: Presentation) -> List[Ambiguity]:
    """Reduce every overlap and inclusion ambiguity both ways."""
    unresolved: List[Ambiguity] = []
    lhs_list = sorted(P.rules, key=P.key)
    checked = 0
    for first in lhs_list:
        for second in lhs_list:
            # overlaps: a proper suffix of first equals a proper prefix of second
            for k in range(1, min(len(first), len(second))):
                if first[-k:] != second[:k]:
                    continue
                word = first + second[k:]
                one = P.normal_form(P._rewrite_at(word, 0, first))
                two = P.normal_form(P._rewrite_at(word, len(first) - k, second))
                checked += 1
                if one != two:
                    unresolved.append(Ambiguity(word, "overlap", first, second, comb_add((ONE, one), (-ONE, two))))
            # inclusions: second sits strictly inside first
            if first == second or len(second) > len(first):
                continue
            for i in range(len(first) - len(second) + 1):
                if first[i:i + len(second)] != second:
                    continue
                one = P.normal_form(P.rules[first])
                two = P.normal_form(P._rewrite_at(first, i, second))
                checked += 1
                if one != two:
                    unresolved.append(Ambiguity(first, "inclusion", first, second, comb_add((ONE, one), (-ONE, two))))
    if unresolved:
        logger.warning(f"❌ {P.name}: {len(unresolved)} of {checked} ambiguities unresolved")
    else:
        logger.info(f"✅ {P.name}: all {checked} ambiguities resolve")
    return unresolved


def enumerate_basis(P: Presentation, cap: Optional[int] = None) -> List[Word]:
    """All normal words, sorted by the term order; CapExceeded past ``cap``."""
    cap = cap if cap is not None else settings.basis_cap
    letters = P.generator_names
    basis: List[Word] = [()]
    frontier: List[Word] = [()]
    while frontier:
        grown: List[Word] = []
        for word in frontier:
            for letter in letters:
                candidate = word + (letter,)
                if P.has_suffix_redex(candidate):
                    continue
                grown.append(candidate)
                if len(basis) + len(grown) > cap:
                    raise CapExceeded(f"normal words of {P.name}", len(basis) + len(grown), cap)
        basis.extend(grown)
        frontier = grown
    return sorted(basis, key=P.key)


def structure_constants(P: Presentation, basis: Optional[Sequence[Word]] = None) -> Dict[Tuple[int, int], Dict[int, GaussRat]]:
    """Multiplication tensor on the normal-word basis.

    Left multiplication by each generator is reduced once; every other row
    follows from e_{g w} e_j = L_g(e_w e_j).
    """
    basis = list(basis) if basis is not None else enumerate_basis(P)
    index = {w: i for i, w in enumerate(basis)}
    n = len(basis)

    def to_vec(c: Comb) -> Dict[int, GaussRat]:
        vec = {}
        for w, v in c.items():
            if w not in index:
                raise ValueError(f"{' '.join(w)} is normal in {P.name} but missing from the basis")
            vec[index[w]] = v
        return vec

    left: Dict[str, List[Dict[int, GaussRat]]] = {}
    for g in P.generator_names:
        left[g] = [to_vec(P.normal_form_word((g,) + w)) for w in basis]

    rows: Dict[Word, List[Dict[int, GaussRat]]] = {(): [{j: ONE} for j in range(n)]}
    for w in sorted(basis, key=len):
        if not w:
            continue
        tail = rows[w[1:]]
        lg = left[w[0]]
        row = []
        for j in range(n):
            out: Dict[int, GaussRat] = {}
            for k, c in tail[j].items():
                for m, d in lg[k].items():
                    total = out.get(m, ZERO) + c * d
                    if total:
                        out[m] = total
                    else:
                        out.pop(m, None)
            row.append(out)
        rows[w] = row
    mult = {}
    for i, w in enumerate(basis):
        for j, vec in enumerate(rows[w]):
            if vec:
                mult[(i, j)] = vec
    logger.info(f"structure constants of {P.name}: dim {n}, {len(mult)} nonzero products")
    return mult


WordTensor = Dict[Tuple[Word, Word], GaussRat]


def hopf_from_presentation(
    P: Presentation,
    letter_comult: Dict[str, WordTensor],
    letter_counit: Dict[str, GaussRat],
    basis: Optional[Sequence[Word]] = None,
    letter_antipode: Optional[Dict[str, Comb]] = None,
    labels: Optional[Sequence[str]] = None,
    name: Optional[str] = None,
):
    """FDHopf on the normal words of P with Delta, eps (and S) given on letters.

    Delta and eps are extended multiplicatively along each basis word,
    S anti-multiplicatively. Whether these extensions respect the rules
    is a separate check.
    """
    from app.services.hopf import FDHopf, add_into

    basis = list(basis) if basis is not None else enumerate_basis(P)
    index = {w: i for i, w in enumerate(basis)}
    n = len(basis)
    mult = structure_constants(P, basis)

    def vec_of(c: Comb) -> Dict[int, GaussRat]:
        return {index[w]: v for w, v in P.normal_form(c).items()}

    def tensor_of(t: WordTensor) -> Dict[Tuple[int, int], GaussRat]:
        out: Dict[Tuple[int, int], GaussRat] = {}
        for (u, v), c in t.items():
            for i, a in vec_of({u: ONE}).items():
                for j, b in vec_of({v: ONE}).items():
                    add_into(out, (i, j), c * a * b)
        return out

    unit_index = index[()]
    algebra = FDHopf(labels or [" ".join(w) or "1" for w in basis], mult, {unit_index: ONE},
                     [{} for _ in range(n)], [ZERO] * n, words=basis, name=name or P.name)
    letters = {g: tensor_of(t) for g, t in letter_comult.items()}
    comult: List[Dict[Tuple[int, int], GaussRat]] = [{} for _ in range(n)]
    counit: List[GaussRat] = [ZERO] * n
    for w in sorted(basis, key=len):
        i = index[w]
        if not w:
            comult[i] = {(unit_index, unit_index): ONE}
            counit[i] = ONE
            continue
        prefix = index[w[:-1]]
        comult[i] = algebra.tensor_multiply(comult[prefix], letters[w[-1]])
        counit[i] = counit[prefix] * as_scalar(letter_counit[w[-1]])

    antipode = None
    if letter_antipode is not None:
        images = {g: vec_of(c) for g, c in letter_antipode.items()}
        antipode = [{} for _ in range(n)]
        for w in sorted(basis, key=len):
            i = index[w]
            if not w:
                antipode[i] = {unit_index: ONE}
                continue
            antipode[i] = algebra.multiply(images[w[-1]], antipode[index[w[:-1]]])
    return FDHopf(algebra.labels, mult, {unit_index: ONE}, comult, counit,
                  antipode=antipode, words=basis, name=name or P.name)
