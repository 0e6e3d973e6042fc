"""Liftings of bosonizations: presentations, verification and isomorphisms.

A lifting is presented by the letters x, y, t of H followed by the
Yetter-Drinfeld letters of its summands. Letters commute past H through
h v = (h(1) . v) h(2), their coproduct is v (x) 1 + v(-1) (x) v(0), and the
quadratic relations are the braiding kernel with some of its vectors
deformed into H. Bounded Knuth-Bendix closure adds the higher relations
(p1^3 for the U-type summands) before the normal words are counted.
"""
import logging
from typing import Dict, List, Optional, Sequence, Tuple, Union

from app.core import linalg
from app.core.config import get_settings
from app.core.errors import CapExceeded, NicholsNotFinite, NoAntipode, ParameterShapeMismatch, WitnessShapeMismatch
from app.core.scalars import ONE, ZERO, GaussRat, to_text
from app.services.hopf import AxiomCheck, FDHopf, add_into, antipode_defect, first_difference, solve_antipode
from app.services.kashina import (
    H_BASIS,
    H_LETTERS,
    apply_automorphism,
    build_H,
    h_generators,
    h_index,
    h_letter_antipode,
    h_letter_comult,
    h_presentation_rules,
)
from app.services.lifting_families import Block, Deformation, FamilyDef, get_family
from app.services.nichols import BraidedSpace, hilbert_prefix
from app.services.presentation import (
    YD,
    Comb,
    GeneratorSymbol,
    Presentation,
    RewriteRule,
    Word,
    WordTensor,
    add_term,
    check_confluence,
    comb_add,
    comb_text,
    enumerate_basis,
    hopf_from_presentation,
    parse_comb,
    rules_from_relations,
    structure_constants,
)
from app.services.yetter_drinfeld import YDModule, braiding, catalog_yd, direct_sum, rebase

logger = logging.getLogger(__name__)
settings = get_settings()

_MAX_CLOSURE_ROUNDS = 8


class LiftingSpec:
    """Family, multiplicities of one-dimensional summands and parameters.

    Missing parameters are zero. ``params`` maps the family's parameter
    names to scalars, vectors or symmetric matrices.
    """

    def __init__(self, family, multiplicities: Optional[Sequence[int]] = None, params: Optional[dict] = None):
        self.definition: FamilyDef = get_family(family)
        self.family = self.definition.key
        self.multiplicities = self.definition.check_multiplicities(multiplicities)
        self.raw_params = dict(params or {})
        self.params = self.definition.resolve_params(self.multiplicities, self.raw_params)

    @classmethod
    def from_values(cls, family, values: Sequence, multiplicities: Optional[Sequence[int]] = None) -> "LiftingSpec":
        """Scalar parameters given positionally, in the family's (lambda, mu, alpha) order."""
        definition = get_family(family)
        names = [n for n, shape in definition.params.items() if shape == "scalar"]
        if len(values) > len(names):
            raise ParameterShapeMismatch(f"family {definition.key} takes at most {len(names)} scalar values")
        return cls(family, multiplicities, dict(zip(names, values)))

    def zero(self) -> "LiftingSpec":
        return LiftingSpec(self.family, self.multiplicities, {})

    @property
    def name(self) -> str:
        values = []
        for key, value in self.params.items():
            if isinstance(value, list):
                if any(v if not isinstance(v, list) else any(v) for v in value):
                    values.append(key)
            elif value:
                values.append(f"{key}={to_text(value)}")
        mults = f"({','.join(str(m) for m in self.multiplicities)})" if self.multiplicities else ""
        return f"U{self.family}{mults}[{','.join(values) or '0'}]"

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "multiplicities": list(self.multiplicities),
            "params": {k: _param_text(v) for k, v in self.params.items()},
        }

    def __repr__(self) -> str:
        return f"LiftingSpec({self.name})"


def _param_text(value):
    if isinstance(value, list):
        return [_param_text(v) for v in value]
    return to_text(value)


class Lifting:
    """A presented Hopf algebra over H with its coalgebra data on letters."""

    def __init__(
        self,
        name: str,
        module: YDModule,
        letters: Sequence[str],
        presentation: Presentation,
        letter_comult: Dict[str, WordTensor],
        letter_antipode: Dict[str, Comb],
        expected_dim: Optional[int],
        derived: Sequence[RewriteRule] = (),
        kernel_check: Optional[AxiomCheck] = None,
        spec: Optional[LiftingSpec] = None,
    ):
        self.name = name
        self.module = module
        self.letters = list(letters)
        self.presentation = presentation
        self.letter_comult = letter_comult
        self.letter_antipode = letter_antipode
        self.letter_counit = {g: (ONE if g in H_LETTERS else ZERO) for g in presentation.generator_names}
        self.expected_dim = expected_dim
        self.derived = list(derived)
        self.kernel_check = kernel_check
        self.spec = spec
        self._basis: Optional[List[Word]] = None

    def basis(self) -> List[Word]:
        if self._basis is None:
            cap = max(settings.basis_cap, 2 * (self.expected_dim or 0))
            self._basis = enumerate_basis(self.presentation, cap)
        return self._basis

    @property
    def dim(self) -> int:
        return len(self.basis())

    def to_hopf(self, solve: bool = False) -> FDHopf:
        """Structure constants on the normal words; ``solve`` re-solves S if the letter extension fails."""
        A = hopf_from_presentation(
            self.presentation, self.letter_comult, self.letter_counit,
            basis=self.basis(), letter_antipode=self.letter_antipode, name=self.name,
        )
        if solve and antipode_defect(A, A.antipode) is not None:
            logger.warning(f"letter antipode of {self.name} fails; solving the convolution system")
            A = A.with_antipode(solve_antipode(A))
        return A

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "spec": self.spec.to_dict() if self.spec else None,
            "letters": self.letters,
            "rules": len(self.presentation.rules),
            "derived": [r.to_json() for r in self.derived],
            "expected_dim": self.expected_dim,
        }

    def __repr__(self) -> str:
        return f"Lifting({self.name}, {len(self.letters)} letters)"


class LiftingReport:
    """Outcome of every verification stage for one lifting."""

    def __init__(self, name: str, dim: Optional[int], expected_dim: Optional[int], checks: List[AxiomCheck]):
        self.name = name
        self.dim = dim
        self.expected_dim = expected_dim
        self.checks = checks

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[AxiomCheck]:
        return [c for c in self.checks if not c.passed]

    def get(self, name: str) -> Optional[AxiomCheck]:
        for c in self.checks:
            if c.name == name:
                return c
        return None

    def to_dict(self) -> dict:
        return {
            "lifting": self.name,
            "dim": self.dim,
            "expected_dim": self.expected_dim,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }


# ---------------------------------------------------------------------------
# letters, commutation and coalgebra data


def _yd_degree(word: Sequence[str]) -> int:
    return sum(1 for letter in word if letter not in H_LETTERS)


def _generators(blocks: Sequence[Block]) -> List[GeneratorSymbol]:
    gens = h_generators()
    for b, block in enumerate(blocks):
        gens.extend(GeneratorSymbol(letter, YD, (b, i)) for i, letter in enumerate(block.letters))
    return gens


def commutation_rules(V: YDModule, letters: Sequence[str]) -> List[RewriteRule]:
    """h v_j -> sum (h(1) . v_j) h(2) for h in x, y, t."""
    comult = h_letter_comult()
    rules = []
    for h in H_LETTERS:
        for j, letter in enumerate(letters):
            rhs: Comb = {}
            for (h1, h2), c in comult[h].items():
                action = linalg.dod(V.basis_action(H_BASIS.index(h1)))
                for i, row in action.items():
                    value = row.get(j)
                    if value:
                        add_term(rhs, (letters[i],) + h2, c * value)
            rules.append(RewriteRule((h, letter), rhs))
    return rules


def letter_coproducts(V: YDModule, letters: Sequence[str]) -> Dict[str, WordTensor]:
    """Delta(v_j) = v_j (x) 1 + v_j(-1) (x) v_j(0) for the letters, plus Delta on x, y, t."""
    out: Dict[str, WordTensor] = dict(h_letter_comult())
    for j, letter in enumerate(letters):
        tensor: WordTensor = {((letter,), ()): ONE}
        for (k, i), c in V.coact(j).items():
            add_into(tensor, (H_BASIS[k], (letters[i],)), c)
        out[letter] = tensor
    return out


def letter_antipodes(V: YDModule, letters: Sequence[str]) -> Dict[str, Comb]:
    """S(v_j) = -S(v_j(-1)) v_j(0)."""
    H = build_H()
    out: Dict[str, Comb] = dict(h_letter_antipode())
    for j, letter in enumerate(letters):
        image: Comb = {}
        for (k, i), c in V.coact(j).items():
            for m, s in H.apply_antipode(H.basis(k)).items():
                add_term(image, H_BASIS[m] + (letters[i],), -c * s)
        out[letter] = image
    return out


# ---------------------------------------------------------------------------
# quadratic relations


def _block_slices(blocks: Sequence[Block]) -> List[range]:
    slices, offset = [], 0
    for block in blocks:
        slices.append(range(offset, offset + len(block.letters)))
        offset += len(block.letters)
    return slices


def _pair_kernel(one_plus_c: Dict[int, Dict[int, GaussRat]], d: int, first: range, second: range) -> List[Dict[int, GaussRat]]:
    """ker(1 + c) on span{v_a v_b, v_b v_a : a in first, b in second}."""
    cols = [a * d + b for a in first for b in second]
    if first != second:
        cols += [b * d + a for a in first for b in second]
    position = {col: n for n, col in enumerate(cols)}
    sub: Dict[int, Dict[int, GaussRat]] = {}
    for row, entries in one_plus_c.items():
        kept = {position[col]: v for col, v in entries.items() if col in position}
        if kept:
            sub[row] = kept
    kernel = linalg.kernel_basis(linalg.from_dod(sub, d * d, len(cols)))
    return [{cols[n]: v for n, v in enumerate(vec) if v} for vec in kernel]


def _lhs_vector(lhs: Comb, index: Dict[str, int], d: int) -> Dict[int, GaussRat]:
    vec: Dict[int, GaussRat] = {}
    for word, c in lhs.items():
        if len(word) != 2 or any(letter not in index for letter in word):
            raise ValueError(f"deformed relation term {' '.join(word)} is not quadratic in the letters")
        add_into(vec, index[word[0]] * d + index[word[1]], c)
    return vec


def quadratic_relations(
    V: YDModule, blocks: Sequence[Block], deformations: Sequence[Deformation]
) -> Tuple[List[Comb], AxiomCheck]:
    """Relations for every block pair: listed ones where given, the braiding kernel elsewhere.

    The returned check records whether each listed left-hand side lies in
    ker(1 + c) and whether the listed ones span it.
    """
    letters = [letter for block in blocks for letter in block.letters]
    index = {letter: i for i, letter in enumerate(letters)}
    block_of = {letter: b for b, block in enumerate(blocks) for letter in block.letters}
    d = V.dim
    one_plus_c = linalg.dod(linalg.identity(d * d) + braiding(V, V))
    slices = _block_slices(blocks)

    listed: Dict[Tuple[int, int], List[Deformation]] = {}
    for deformation in deformations:
        pair = sorted({block_of[letter] for letter in deformation.letters()})
        key = (pair[0], pair[-1])
        if len(pair) > 2:
            raise ValueError(f"{deformation} mixes more than two summands")
        listed.setdefault(key, []).append(deformation)

    relations: List[Comb] = []
    violation = None
    checked = 0
    for a in range(len(blocks)):
        for b in range(a, len(blocks)):
            kernel = _pair_kernel(one_plus_c, d, slices[a], slices[b])
            given = listed.get((a, b))
            if not given:
                for vec in kernel:
                    relations.append({(letters[k // d], letters[k % d]): v for k, v in vec.items()})
                continue
            vectors = [_lhs_vector(g.lhs, index, d) for g in given]
            for g, vec in zip(given, vectors):
                checked += 1
                image: Dict[int, GaussRat] = {}
                for col, v in vec.items():
                    for row, entries in one_plus_c.items():
                        if col in entries:
                            add_into(image, row, entries[col] * v)
                if image and violation is None:
                    violation = f"{g.text} is not in ker(1 + c)"
            dense = [[vec.get(k, ZERO) for k in range(d * d)] for vec in vectors]
            spanning = [[vec.get(k, ZERO) for k in range(d * d)] for vec in kernel]
            if violation is None and not linalg.span_equal(dense, spanning):
                violation = f"relations of {blocks[a]} x {blocks[b]} do not span ker(1 + c) (dim {len(kernel)})"
            relations.extend(g.relation() for g in given)
    return relations, AxiomCheck("braiding_kernel", violation is None, violation, checked)


# ---------------------------------------------------------------------------
# closure


def close_presentation(P: Presentation, max_degree: Optional[int] = None) -> Tuple[Presentation, List[RewriteRule]]:
    """Add oriented ambiguity differences until confluent or past ``max_degree`` letters."""
    max_degree = max_degree if max_degree is not None else settings.closure_max_degree
    derived: List[RewriteRule] = []
    for _ in range(_MAX_CLOSURE_ROUNDS):
        ambiguities = check_confluence(P)
        if not ambiguities:
            return P, derived
        new_rules = rules_from_relations([a.difference for a in ambiguities], P.key)
        too_deep = [r for r in new_rules if _yd_degree(r.lhs) > max_degree]
        if too_deep:
            logger.warning(f"⚠️ {P.name}: closure stops at {' '.join(too_deep[0].lhs)} (letter degree > {max_degree})")
            return P, derived
        for rule in new_rules:
            if _yd_degree(rule.lhs) == 0:
                logger.error(f"❌ {P.name}: relations collapse H ({' '.join(rule.lhs)} -> {comb_text(rule.rhs)})")
            else:
                logger.info(f"derived rule {' '.join(rule.lhs)} -> {comb_text(rule.rhs)}")
        derived.extend(new_rules)
        P = Presentation(P.generators, P.rule_list() + new_rules, order=P.order, name=P.name)
    logger.warning(f"⚠️ {P.name}: closure did not settle in {_MAX_CLOSURE_ROUNDS} rounds")
    return P, derived


# ---------------------------------------------------------------------------
# building liftings


def _module_of(blocks: Sequence[Block], label: str) -> YDModule:
    parts = []
    for block in blocks:
        V = catalog_yd(block.tag)
        if block.rebase is not None:
            V = rebase(V, block.rebase, f"{block.tag}'")
        parts.append(V)
    return direct_sum(parts, label)


def _assemble(
    name: str,
    V: YDModule,
    blocks: Sequence[Block],
    relations: Sequence[Comb],
) -> Tuple[Presentation, List[RewriteRule]]:
    letters = [letter for block in blocks for letter in block.letters]
    generators = _generators(blocks)
    base = Presentation(generators, h_presentation_rules() + commutation_rules(V, letters), name=name)
    oriented = rules_from_relations(relations, base.key)
    P = Presentation(generators, base.rule_list() + oriented, name=name)
    return close_presentation(P)


def build_lifting(spec: LiftingSpec) -> Lifting:
    definition = spec.definition
    blocks = definition.blocks(spec.multiplicities)
    V = _module_of(blocks, "+".join(b.tag for b in blocks))
    letters = [letter for block in blocks for letter in block.letters]
    deformations = definition.deformations(spec.multiplicities, spec.params)
    relations, kernel_check = quadratic_relations(V, blocks, deformations)
    P, derived = _assemble(spec.name, V, blocks, relations)
    logger.info(f"🚀 built {spec.name}: {len(letters)} letters, {len(P.rules)} rules, {len(derived)} derived")
    return Lifting(
        spec.name, V, letters, P,
        letter_coproducts(V, letters), letter_antipodes(V, letters),
        definition.dimension(spec.multiplicities),
        derived=derived, kernel_check=kernel_check, spec=spec,
    )


# ---------------------------------------------------------------------------
# verification


class _Coproducts:
    """Delta on words of a presentation, as tensors of normal words."""

    def __init__(self, P: Presentation, letter_comult: Dict[str, WordTensor]):
        self.P = P
        self.letters = {g: self.normalize(t) for g, t in letter_comult.items()}
        self._memo: Dict[Word, WordTensor] = {(): {((), ()): ONE}}

    def normalize(self, tensor: WordTensor) -> WordTensor:
        out: WordTensor = {}
        for (u, v), c in tensor.items():
            for u2, a in self.P.normal_form_word(u).items():
                for v2, b in self.P.normal_form_word(v).items():
                    add_into(out, (u2, v2), c * a * b)
        return out

    def product(self, s: WordTensor, t: WordTensor) -> WordTensor:
        raw: WordTensor = {}
        for (u1, v1), a in s.items():
            for (u2, v2), b in t.items():
                add_into(raw, (u1 + u2, v1 + v2), a * b)
        return self.normalize(raw)

    def of_word(self, word: Sequence[str]) -> WordTensor:
        word = tuple(word)
        if word not in self._memo:
            self._memo[word] = self.product(self.of_word(word[:-1]), self.letters[word[-1]])
        return self._memo[word]

    def of_comb(self, c: Comb) -> WordTensor:
        out: WordTensor = {}
        for word, coeff in c.items():
            for key, value in self.of_word(word).items():
                add_into(out, key, coeff * value)
        return out


def _counit_of(c: Comb) -> GaussRat:
    total = ZERO
    for word, coeff in c.items():
        if _yd_degree(word) == 0:
            total += coeff
    return total


def _check_rule_coproducts(P: Presentation, delta: _Coproducts) -> AxiomCheck:
    for lhs, rhs in P.rules.items():
        if delta.of_word(lhs) != delta.of_comb(rhs):
            return AxiomCheck("comultiplication", False, f"Delta({' '.join(lhs)}) != Delta(rhs)", len(P.rules))
    return AxiomCheck("comultiplication", True, checked=len(P.rules))


def _check_rule_counits(P: Presentation) -> AxiomCheck:
    for lhs, rhs in P.rules.items():
        left = ONE if _yd_degree(lhs) == 0 else ZERO
        if left != _counit_of(rhs):
            return AxiomCheck("counit", False, f"eps({' '.join(lhs)}) != eps(rhs)", len(P.rules))
    return AxiomCheck("counit", True, checked=len(P.rules))


def _check_coassociativity(P: Presentation, delta: _Coproducts) -> AxiomCheck:
    for g in P.generator_names:
        left: Dict[Tuple[Word, Word, Word], GaussRat] = {}
        right: Dict[Tuple[Word, Word, Word], GaussRat] = {}
        for (u, v), c in delta.letters[g].items():
            for (u1, u2), d in delta.of_word(u).items():
                add_into(left, (u1, u2, v), c * d)
            for (v1, v2), d in delta.of_word(v).items():
                add_into(right, (u, v1, v2), c * d)
        if left != right:
            return AxiomCheck("coassociativity", False, f"at {g}: {first_difference(left, right)}", len(P.generators))
    return AxiomCheck("coassociativity", True, checked=len(P.generators))


def _check_antipode(lifting: Lifting) -> AxiomCheck:
    A = lifting.to_hopf()
    defect = antipode_defect(A, A.antipode)
    if defect is None:
        return AxiomCheck("antipode", True, checked=A.dim)
    logger.warning(f"letter antipode of {lifting.name} violates {defect}; solving")
    try:
        solve_antipode(A)
    except NoAntipode as exc:
        return AxiomCheck("antipode", False, str(exc), A.dim)
    return AxiomCheck("antipode", True, f"letter extension violates {defect}; solved instead", A.dim)


def verify_lifting(target: Union[LiftingSpec, Lifting]) -> LiftingReport:
    """Confluence, dimension, Delta and eps on every rule, coassociativity and (small dims) the antipode."""
    lifting = target if isinstance(target, Lifting) else build_lifting(target)
    P = lifting.presentation
    checks: List[AxiomCheck] = []
    if lifting.kernel_check is not None:
        checks.append(lifting.kernel_check)

    ambiguities = check_confluence(P)
    checks.append(AxiomCheck(
        "confluence", not ambiguities,
        f"{len(ambiguities)} unresolved, first {ambiguities[0].to_dict()['word']}" if ambiguities else None,
    ))

    dim: Optional[int] = None
    try:
        dim = lifting.dim
        if lifting.expected_dim is None:
            checks.append(AxiomCheck("dimension", True, None, dim))
        else:
            ok = dim == lifting.expected_dim
            checks.append(AxiomCheck("dimension", ok, None if ok else f"{dim} normal words, expected {lifting.expected_dim}", dim))
    except CapExceeded as exc:
        checks.append(AxiomCheck("dimension", False, str(exc)))

    delta = _Coproducts(P, lifting.letter_comult)
    checks.append(_check_rule_coproducts(P, delta))
    checks.append(_check_rule_counits(P))
    checks.append(_check_coassociativity(P, delta))
    if dim is not None and dim <= settings.antipode_max_dim and not ambiguities:
        checks.append(_check_antipode(lifting))

    report = LiftingReport(lifting.name, dim, lifting.expected_dim, checks)
    if report.passed:
        logger.info(f"✅ {lifting.name} verified (dim {dim})")
    else:
        logger.warning(f"❌ {lifting.name} fails: {[c.name for c in report.failures()]}")
    return report


# ---------------------------------------------------------------------------
# bosonization


def _letter_words(P: Presentation, letters: Sequence[str], max_degree: int) -> List[List[Word]]:
    """Normal words in the letters alone, by degree 0..max_degree."""
    layers: List[List[Word]] = [[()]]
    for _ in range(max_degree):
        grown = [w + (letter,) for w in layers[-1] for letter in letters if not P.has_suffix_redex(w + (letter,))]
        layers.append(grown)
    return layers


def _symmetrizer_relations(B: BraidedSpace, words: Sequence[Word], index: Dict[str, int]) -> List[Comb]:
    """Combinations of ``words`` killed by the quantum symmetrizer."""
    rows: Dict[Tuple[int, ...], int] = {}
    dod: Dict[int, Dict[int, GaussRat]] = {}
    for col, word in enumerate(words):
        for key, value in B.symmetrize_basis(tuple(index[letter] for letter in word)).items():
            row = rows.setdefault(key, len(rows))
            dod.setdefault(row, {})[col] = value
    kernel = linalg.kernel_basis(linalg.from_dod(dod, len(rows), len(words)))
    return [{words[n]: v for n, v in enumerate(vec) if v} for vec in kernel]


def _default_degree(d: int) -> int:
    degree = d + 1
    while degree > 2 and d ** degree > settings.symmetrizer_cap:
        degree -= 1
    return degree


def build_bosonization(
    V: Union[YDModule, str],
    letters: Optional[Sequence[str]] = None,
    max_degree: Optional[int] = None,
    name: Optional[str] = None,
) -> Lifting:
    """B(V) # H: the braiding kernel as relations, completed degree by degree from the symmetrizer."""
    if isinstance(V, str):
        V = catalog_yd(V)
    letters = list(letters) if letters is not None else [f"v{i + 1}" for i in range(V.dim)]
    if len(letters) != V.dim:
        raise ValueError(f"{len(letters)} letters for a {V.dim}-dim module")
    name = name or f"B({V.label})#H"
    max_degree = max_degree if max_degree is not None else _default_degree(V.dim)
    block = Block(letters, V.label or "V")

    prefix = hilbert_prefix(V, max_degree)
    if not prefix.terminated:
        raise NicholsNotFinite(f"B({V.label}) has dims {tuple(prefix.dims)}; not finite by degree {max_degree}")

    relations, _ = quadratic_relations(V, [block], [])
    P, derived = _assemble(name, V, [block], relations)
    B = BraidedSpace.from_yd(V)
    index = {letter: i for i, letter in enumerate(letters)}
    for n in range(2, max_degree + 1):
        words = _letter_words(P, letters, n)[n]
        if len(words) == prefix.dims[n]:
            continue
        if len(words) < prefix.dims[n]:
            raise ValueError(f"{name}: {len(words)} normal words in degree {n}, B(V) has {prefix.dims[n]}")
        extra = _symmetrizer_relations(B, words, index)
        logger.info(f"degree {n}: {len(extra)} relations from the symmetrizer")
        new_rules = rules_from_relations(extra, P.key)
        P = Presentation(P.generators, P.rule_list() + new_rules, order=P.order, name=name)
        P, more = close_presentation(P, max_degree)
        derived += new_rules + more

    logger.info(f"🚀 built {name}: Hilbert series {tuple(prefix.dims)}, expected dim {16 * prefix.total}")
    return Lifting(name, V, letters, P, letter_coproducts(V, letters), letter_antipodes(V, letters),
                   16 * prefix.total, derived=derived)


def bosonize(V: Union[YDModule, str], max_degree: Optional[int] = None) -> FDHopf:
    """B(V) # H as an FDHopf; the antipode is solved when dim <= antipode_max_dim."""
    if isinstance(V, str):
        V = catalog_yd(V)
    if V.dim == 0:
        return build_H()
    lifting = build_bosonization(V, max_degree=max_degree)
    if lifting.dim != lifting.expected_dim:
        raise ValueError(f"{lifting.name}: {lifting.dim} normal words, expected {lifting.expected_dim}")
    return lifting.to_hopf(solve=lifting.dim <= settings.antipode_max_dim)


def degeneration_check(spec: LiftingSpec) -> bool:
    """At zero parameters the lifting has the bosonization's normal words and structure constants."""
    zero = build_lifting(spec.zero())
    boson = build_bosonization(zero.module, letters=zero.letters, name=f"B({zero.module.label})#H")
    try:
        zero_basis = zero.basis()
        boson_basis = boson.basis()
    except CapExceeded as exc:
        logger.warning(f"❌ degeneration of {spec.name}: {exc}")
        return False
    if zero_basis != boson_basis:
        logger.warning(f"❌ degeneration of {spec.name}: normal words differ ({len(zero_basis)} vs {len(boson_basis)})")
        return False
    same = structure_constants(zero.presentation, zero_basis) == structure_constants(boson.presentation, boson_basis)
    if same:
        logger.info(f"✅ {spec.zero().name} equals {boson.name}")
    else:
        logger.warning(f"❌ degeneration of {spec.name}: structure constants differ")
    return same


# ---------------------------------------------------------------------------
# isomorphisms


class IsoWitness:
    """tau_k on H plus images of the source letters as combinations in the target."""

    def __init__(self, tau: int, images: Dict[str, str]):
        if not 1 <= int(tau) <= 32:
            raise WitnessShapeMismatch(f"tau must be in 1..32, got {tau}")
        self.tau = int(tau)
        self.texts = dict(images)
        self.images = {letter: parse_comb(text) for letter, text in images.items()}

    @classmethod
    def from_dict(cls, data: dict) -> "IsoWitness":
        if "images" not in data:
            raise WitnessShapeMismatch("witness needs an 'images' mapping")
        return cls(data.get("tau", 1), data["images"])

    def to_dict(self) -> dict:
        return {"tau": self.tau, "images": self.texts}


def _h_image(tau: int, letter: str) -> Comb:
    exponents = {"x": (1, 0, 0), "y": (0, 1, 0), "t": (0, 0, 1)}[letter]
    H = build_H()
    return {H_BASIS[m]: c for m, c in apply_automorphism(tau, H.basis(h_index(*exponents))).items()}


def iso_defect(source: Lifting, target: Lifting, witness: IsoWitness) -> Optional[str]:
    """First reason the witness is not a Hopf isomorphism, or None."""
    missing = sorted(set(source.letters) - set(witness.images))
    extra = sorted(set(witness.images) - set(source.letters))
    if missing or extra:
        raise WitnessShapeMismatch(f"witness images: missing {missing}, unknown {extra}")
    known = set(target.presentation.generator_names)
    for letter, image in witness.images.items():
        strangers = {g for word in image for g in word} - known
        if strangers:
            raise WitnessShapeMismatch(f"image of {letter} uses {sorted(strangers)}, not letters of {target.name}")

    P, Q = source.presentation, target.presentation
    phi: Dict[str, Comb] = {g: _h_image(witness.tau, g) for g in H_LETTERS}
    phi.update({g: Q.normal_form(c) for g, c in witness.images.items()})

    memo: Dict[Word, Comb] = {(): {(): ONE}}

    def image(word: Word) -> Comb:
        if word not in memo:
            memo[word] = Q.multiply(image(word[:-1]), phi[word[-1]])
        return memo[word]

    def image_of(c: Comb) -> Comb:
        out: Comb = {}
        for word, coeff in c.items():
            for w, v in image(word).items():
                add_term(out, w, coeff * v)
        return out

    for lhs, rhs in P.rules.items():
        if comb_add((ONE, image(lhs)), (-ONE, image_of(rhs))):
            return f"relation {' '.join(lhs)} -> {comb_text(rhs)} does not hold in {target.name}"

    source_delta = _Coproducts(P, source.letter_comult)
    target_delta = _Coproducts(Q, target.letter_comult)
    for g in P.generator_names:
        pushed: WordTensor = {}
        for (u, v), c in source_delta.letters[g].items():
            for a, x in image(u).items():
                for b, y in image(v).items():
                    add_into(pushed, (a, b), c * x * y)
        if target_delta.of_comb(phi[g]) != pushed:
            return f"Delta does not commute with the map at {g}"
        if _counit_of(phi[g]) != (ONE if g in H_LETTERS else ZERO):
            return f"eps does not commute with the map at {g}"

    source_basis, target_basis = source.basis(), target.basis()
    if len(source_basis) != len(target_basis):
        return f"dimensions differ ({len(source_basis)} vs {len(target_basis)})"
    column = {w: i for i, w in enumerate(target_basis)}
    dod = {}
    for j, word in enumerate(source_basis):
        for w, v in image(word).items():
            dod.setdefault(column[w], {})[j] = v
    n = len(target_basis)
    if not linalg.is_invertible(linalg.from_dod(dod, n, n)):
        return "the map is not bijective"
    return None


def iso_from_witness(
    source: Union[LiftingSpec, Lifting],
    target: Union[LiftingSpec, Lifting],
    witness: Union[IsoWitness, dict],
) -> bool:
    """True iff the witness extends to a Hopf algebra isomorphism source -> target."""
    if isinstance(witness, dict):
        witness = IsoWitness.from_dict(witness)
    A = source if isinstance(source, Lifting) else build_lifting(source)
    B = target if isinstance(target, Lifting) else build_lifting(target)
    defect = iso_defect(A, B, witness)
    if defect is None:
        logger.info(f"✅ {A.name} ≅ {B.name} via tau{witness.tau}")
        return True
    logger.info(f"❌ {A.name} -> {B.name} rejected: {defect}")
    return False
