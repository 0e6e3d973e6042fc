"""Verification suites behind the CLI and the HTTP service.

Each suite yields CheckRecords in a fixed order. ``pass`` and ``fail`` are
certified exact results; ``evidence`` marks growth evidence that does not
certify anything (infinite Nichols algebras).
"""
import logging
from typing import Callable, Dict, Iterator, List, Optional

from app.core import linalg
from app.core.config import get_settings
from app.core.errors import AlgebraError, MissingOption, UnknownSuite, UsageError
from app.core.scalars import GaussRat, to_text
from app.services import catalog
from app.services.double import (
    SimpleLabel,
    are_isomorphic,
    build_double,
    catalog_labels,
    census,
    iso_partner,
    one_dim_braiding_scalar,
    simple_module,
    template_module,
    verify_double_presentation,
)
from app.services.hopf import grouplikes, skew_primitive_space, verify_hopf_axioms
from app.services.kashina import build_H, dual_relation_checks, verify_automorphisms
from app.services.lifting import (
    LiftingSpec,
    build_bosonization,
    build_lifting,
    bosonize,
    degeneration_check,
    iso_from_witness,
    verify_lifting,
)
from app.services.nichols import (
    catalog_relations,
    diagonal_data,
    exclusion_census,
    family_factorization,
    generalized_dynkin,
    hilbert_prefix,
    infinite_evidence,
    pair_factorization,
    quadratic_relations,
    relations_match,
)
from app.services.yetter_drinfeld import (
    braiding,
    catalog_yd,
    find_twist,
    from_double_rep,
    same_module,
    twist,
    verify_braid_equation,
    verify_yd,
    yd_iso,
)

logger = logging.getLogger(__name__)
settings = get_settings()

PASS, FAIL, EVIDENCE = "pass", "fail", "evidence"


class CheckRecord:
    """One named outcome of a suite."""

    def __init__(self, suite: str, name: str, status: str, payload=None):
        if status not in (PASS, FAIL, EVIDENCE):
            raise ValueError(f"unknown status {status!r}")
        self.suite = suite
        self.name = name
        self.status = status
        self.payload = payload

    @classmethod
    def of(cls, suite: str, name: str, ok: bool, payload=None) -> "CheckRecord":
        return cls(suite, name, PASS if ok else FAIL, payload)

    def to_dict(self) -> dict:
        return {"suite": self.suite, "name": self.name, "status": self.status, "payload": self.payload}

    def __repr__(self) -> str:
        return f"CheckRecord({self.suite}/{self.name}: {self.status})"


class SuiteOptions:
    """Knobs shared by the CLI flags and the HTTP request body."""

    def __init__(
        self,
        max_degree: Optional[int] = None,
        cap: Optional[int] = None,
        params: Optional[dict] = None,
        tag: Optional[str] = None,
        family: Optional[str] = None,
        action: Optional[str] = None,
        left: Optional[str] = None,
        right: Optional[str] = None,
        witness: Optional[dict] = None,
        all_modules: bool = False,
    ):
        self.max_degree = max_degree
        self.cap = cap
        self.params = dict(params or {})
        self.tag = tag
        self.family = family
        self.action = action
        self.left = left
        self.right = right
        self.witness = witness
        self.all_modules = all_modules

    def require(self, *names: str) -> None:
        missing = [n for n in names if getattr(self, n) in (None, "")]
        if missing:
            what = f"{self.action} " if self.action else ""
            raise MissingOption(f"{what}needs {', '.join('--' + n.replace('_', '-') for n in missing)}")


def _text(value):
    """JSON-ready copy with exact scalars as canonical strings."""
    if isinstance(value, GaussRat):
        return to_text(value)
    if isinstance(value, dict):
        return {str(k): _text(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_text(v) for v in value]
    return value


def _matrix_text(M: linalg.Mat) -> List[List[str]]:
    return [[to_text(v) for v in row] for row in linalg.entries(M)]


# ---------------------------------------------------------------------------
# verify-h


def _verify_h(options: SuiteOptions) -> Iterator[CheckRecord]:
    suite = "verify-h"
    H = build_H()
    yield CheckRecord.of(suite, "dimension", H.dim == 16, {"dim": H.dim})
    report = verify_hopf_axioms(H, "full")
    yield CheckRecord.of(suite, "hopf_axioms", report.passed, report.to_dict())
    group = grouplikes(H)
    yield CheckRecord.of(suite, "grouplikes", len(group) == 8, {"count": len(group)})
    for g in group:
        if g == H.unit:
            continue
        space = skew_primitive_space(H, H.unit, g)
        label = "+".join(H.labels[k] for k in sorted(g))
        yield CheckRecord.of(suite, f"skew_primitives[{label}]", space.dim == 1, {"dim": space.dim})
    for name, ok in dual_relation_checks():
        yield CheckRecord.of(suite, f"dual:{name}", ok)
    for name, ok, violation in verify_automorphisms():
        yield CheckRecord.of(suite, f"automorphism:{name}", ok, {"violation": violation} if violation else None)


# ---------------------------------------------------------------------------
# verify-double


def _verify_double(options: SuiteOptions) -> Iterator[CheckRecord]:
    suite = "verify-double"
    D = build_double()
    yield CheckRecord.of(suite, "dimension", D.dim == 256, {"dim": D.dim})
    report = verify_hopf_axioms(D)
    yield CheckRecord.of(suite, "hopf_axioms", report.passed, report.to_dict())
    relations = verify_double_presentation(D)
    for name, ok in relations:
        yield CheckRecord.of(suite, f"relation:{name}", ok)
    yield CheckRecord.of(suite, "relation_count", len(relations) == 28, {"count": len(relations)})


# ---------------------------------------------------------------------------
# census


def _census(options: SuiteOptions) -> Iterator[CheckRecord]:
    suite = "census"
    result = census()
    for entry in result["entries"]:
        yield CheckRecord.of(suite, entry["label"], entry["relations"] and entry["simple"], entry)
    yield CheckRecord.of(suite, "count", result["count"] == 88, {"count": result["count"], "families": result["counts"]})
    yield CheckRecord.of(suite, "sum_of_squares", result["sum_of_squares"] == 256, {"sum_of_squares": result["sum_of_squares"]})
    yield CheckRecord.of(suite, "pairwise_non_isomorphic", not result["duplicates"], {"duplicates": result["duplicates"]})
    for text in ("W(1,0,0,0)", "V(0,0,1,0,0,1)", "U(1,2,0,0)"):
        label = SimpleLabel.parse(text)
        partner = iso_partner(label)
        ok = are_isomorphic(template_module(label), template_module(partner))
        yield CheckRecord.of(suite, f"iso_rule:{label}~{partner}", ok)


# ---------------------------------------------------------------------------
# yd


def _one_dim_scalar(V) -> GaussRat:
    return linalg.entry(braiding(V, V), 0, 0)


def _yd_axioms(suite: str, tags: List[str]) -> Iterator[CheckRecord]:
    for tag in tags:
        V = catalog_yd(tag)
        checks = verify_yd(V)
        failed = [c.to_dict() for c in checks if not c.passed]
        yield CheckRecord.of(suite, f"yd_axioms:{tag}", not failed, {"failed": failed} if failed else None)
        yield CheckRecord.of(suite, f"braid_equation:{tag}", verify_braid_equation(V))
        if tag in catalog.CATALOG_TAGS:
            label = SimpleLabel.parse(catalog.CATALOG_TAGS[tag])
            yield CheckRecord.of(suite, f"from_double_rep:{tag}", same_module(V, from_double_rep(simple_module(label), tag)))


def _yd_verify(options: SuiteOptions) -> Iterator[CheckRecord]:
    """``yd verify``: one ``--tag`` (catalog tag or simple label) or ``--all`` catalog modules."""
    if options.all_modules:
        yield from _yd_axioms("yd", list(catalog.CATALOG_TAGS))
        return
    options.require("tag")
    yield from _yd_axioms("yd", [options.tag])


def _yd_braiding(options: SuiteOptions) -> Iterator[CheckRecord]:
    options.require("tag")
    V = catalog_yd(options.tag)
    c = braiding(V, V)
    payload = {"dim": V.dim, "braiding": _matrix_text(c)}
    q = diagonal_data(V)
    if q is not None:
        payload["diagonal"] = generalized_dynkin(q)
    yield CheckRecord.of("yd", f"braiding:{options.tag}", verify_braid_equation(V), payload)


def _yd(options: SuiteOptions) -> Iterator[CheckRecord]:
    suite = "yd"
    yield from _yd_axioms(suite, [options.tag] if options.tag else list(catalog.CATALOG_TAGS))
    if options.tag:
        return
    for label in catalog_labels():
        if label.family != "Char":
            continue
        V = from_double_rep(simple_module(label))
        expected = one_dim_braiding_scalar(label)
        got = _one_dim_scalar(V)
        yield CheckRecord.of(suite, f"braiding_scalar:{label}", got == expected,
                             {"scalar": to_text(got), "expected": to_text(expected)})
    for k, pairs in catalog.TWIST_TABLE.items():
        for source, target in pairs:
            T = yd_iso(twist(catalog_yd(source), k), catalog_yd(target))
            yield CheckRecord.of(suite, f"twist:tau{k}({source})~{target}", T is not None,
                                 {"intertwiner": _matrix_text(T)} if T is not None else None)
    for first, second in catalog.BOSONIZATION_PAIRS_SMALL + catalog.BOSONIZATION_PAIRS_LARGE:
        k = find_twist(catalog.omega_components(first), catalog.omega_components(second))
        yield CheckRecord.of(suite, f"bosonization_pair:Omega{first}~Omega{second}", k is not None, {"tau": k})


# ---------------------------------------------------------------------------
# nichols


def _nichols(options: SuiteOptions) -> Iterator[CheckRecord]:
    suite = "nichols"
    if options.tag:
        prefix = hilbert_prefix(catalog_yd(options.tag), options.max_degree, options.cap)
        yield CheckRecord(suite, f"series:{options.tag}", PASS, prefix.to_dict())
        return
    for tag in catalog.TWO_DIM_TAGS:
        V = catalog_yd(tag)
        prefix = hilbert_prefix(V, 4, options.cap)
        yield CheckRecord.of(suite, f"series:{tag}", prefix.dims == [1, 2, 1, 0, 0], prefix.to_dict())
        yield CheckRecord.of(suite, f"quadratic_relations:{tag}", relations_match(V, catalog_relations(tag)))
    for tag in catalog.ONE_DIM_TAGS:
        V = catalog_yd(tag)
        prefix = hilbert_prefix(V, 2, options.cap)
        yield CheckRecord.of(suite, f"series:{tag}", prefix.dims == [1, 1, 0], prefix.to_dict())
        yield CheckRecord.of(suite, f"quadratic_relations:{tag}", relations_match(V, catalog_relations(tag)))

    for row in exclusion_census(options.max_degree):
        yield CheckRecord(suite, f"exclusion:{row['label']}", row["status"], row)

    for n in [1, 2, 4, 5, 8] + list(range(14, 50)):
        ok, failing = family_factorization(n)
        yield CheckRecord.of(suite, f"factorization:Omega{n}", ok, {"failing": failing})
    for part, pairs in catalog.FACTORIZING_PAIRS.items():
        failing = [f"{a}+{b}" for a, b in pairs if not pair_factorization(catalog_yd(a), catalog_yd(b))]
        yield CheckRecord.of(suite, f"factorizing_pairs:{part}", not failing, {"pairs": len(pairs), "failing": failing})
    for v_tag, m_tag in catalog.NON_FACTORIZING_PAIRS:
        ok = not pair_factorization(catalog_yd(v_tag), catalog_yd(m_tag))
        yield CheckRecord.of(suite, f"non_factorization:{v_tag}+{m_tag}", ok)

    q = diagonal_data(catalog_yd("Omega1"))
    yield CheckRecord.of(suite, "dynkin:Omega1", q is not None, generalized_dynkin(q) if q is not None else None)

    for tags in (["V1", "M13"], ["V1", "M17"]):
        evidence = infinite_evidence(tags, 4)
        status = EVIDENCE if evidence["nonzero_at_top"] else FAIL
        yield CheckRecord(suite, f"infinite:{'+'.join(tags)}", status, evidence)


def _nichols_series(options: SuiteOptions) -> Iterator[CheckRecord]:
    options.require("tag")
    prefix = hilbert_prefix(catalog_yd(options.tag), options.max_degree, options.cap)
    yield CheckRecord("nichols", f"series:{options.tag}", PASS, prefix.to_dict())


def _relation_text(vector: List[GaussRat], d: int) -> str:
    terms = [f"({to_text(c)}) v{k // d + 1} v{k % d + 1}" for k, c in enumerate(vector) if c]
    return " + ".join(terms) or "0"


def _nichols_relations(options: SuiteOptions) -> Iterator[CheckRecord]:
    """Degree-two relations; tags with a listed relation set are compared against it."""
    options.require("tag")
    V = catalog_yd(options.tag)
    relations = quadratic_relations(V)
    payload = {"dim": V.dim, "relations": [_relation_text(v, V.dim) for v in relations]}
    name = f"quadratic_relations:{options.tag}"
    if options.tag in catalog.CATALOG_TAGS:
        yield CheckRecord.of("nichols", name, relations_match(V, catalog_relations(options.tag)), payload)
    else:
        yield CheckRecord("nichols", name, PASS, payload)


def _listed_factorization(left: str, right: str) -> Optional[bool]:
    for pairs in catalog.FACTORIZING_PAIRS.values():
        if (left, right) in pairs or (right, left) in pairs:
            return True
    if (left, right) in catalog.NON_FACTORIZING_PAIRS or (right, left) in catalog.NON_FACTORIZING_PAIRS:
        return False
    return None


def _nichols_factorization(options: SuiteOptions) -> Iterator[CheckRecord]:
    """Whether B(V + W) = B(V) (x) B(W) for ``--left`` V and ``--right`` W.

    Pairs with a listed answer pass when the computation agrees with it;
    other pairs just report the answer.
    """
    options.require("left", "right")
    factorizes = pair_factorization(catalog_yd(options.left), catalog_yd(options.right))
    expected = _listed_factorization(options.left, options.right)
    payload = {"factorizes": factorizes, "expected": expected}
    name = f"factorization:{options.left}+{options.right}"
    if expected is None:
        yield CheckRecord("nichols", name, PASS, payload)
    else:
        yield CheckRecord.of("nichols", name, factorizes == expected, payload)


# ---------------------------------------------------------------------------
# bosonize


def _bosonize(options: SuiteOptions) -> Iterator[CheckRecord]:
    suite = "bosonize"
    small = [options.tag] if options.tag else ["M1"]
    for tag in small:
        A = bosonize(tag, options.max_degree)
        yield CheckRecord(suite, f"dimension:{tag}", PASS, {"dim": A.dim})
        report = verify_hopf_axioms(A)
        yield CheckRecord.of(suite, f"hopf_axioms:{tag}", report.passed, report.to_dict())
    if options.tag:
        return
    lifting = build_bosonization("Omega25")
    report = verify_lifting(lifting)
    yield CheckRecord.of(suite, "dimension:Omega25", report.dim == 256, {"dim": report.dim})
    yield CheckRecord.of(suite, "bialgebra:Omega25", report.passed, report.to_dict())


# ---------------------------------------------------------------------------
# lift

# verified instances: (family, multiplicities, params, expected dim)
LIFT_INSTANCES = [
    ("1", (1, 0, 0, 0, 0, 0, 0, 0), {"alpha": [[1]]}, 32),
    ("1", (1, 1, 0, 0, 0, 0, 0, 0), {"alpha": [[1]], "beta": [[2]]}, 64),
    ("2", (0, 0, 0, 0), {"nu": 1}, 64),
    ("4", (0, 0, 0, 0), {"nu": 1}, 64),
    ("5", (0, 0, 0, 0), {"nu": 1}, 64),
    ("8", (0, 0, 0, 0), {"nu": 1}, 64),
] + [
    (family, None, {"lambda": 1, "mu": 1, "alpha": 1}, 256)
    for family in ("14", "17", "18", "20", "22", "23", "26", "28")
] + [
    (family, None, {"lambda": 1, "mu": 1}, 256)
    for family in ("15", "16", "19", "21", "27", "29")
] + [("24", None, {"lambda": 1}, 256)]

DEGENERATION_INSTANCES = [
    ("1", (1, 1, 0, 0, 0, 0, 0, 0)),
    ("2", (1, 0, 0, 0)),
    ("4", (1, 0, 0, 0)),
    ("5", (1, 0, 0, 0)),
    ("8", (1, 0, 0, 0)),
] + [(family, None) for family in ("14", "15", "16", "17", "18", "19", "20", "21", "22", "23", "24",
                                    "26", "27", "28", "29", "Omega25")]

# (name, source, target, witness, expected verdict)
ISO_INSTANCES = [
    ("U15(4,9)~U15(1,1)",
     ("15", {"lambda": 4, "mu": 9}), ("15", {"lambda": 1, "mu": 1}),
     {"tau": 1, "images": {"p1": "2 p1", "p2": "2 p2", "q1": "3 q1", "q2": "3 q2"}}, True),
    ("U18(4,9,6)~U18(1,1,1)",
     ("18", {"lambda": 4, "mu": 9, "alpha": 6}), ("18", {"lambda": 1, "mu": 1, "alpha": 1}),
     {"tau": 1, "images": {"p1": "2 p1", "p2": "2 p2", "q1": "3 q1", "q2": "3 q2"}}, True),
    ("U14(1,2,3)~U14(2,1,3)",
     ("14", {"lambda": 1, "mu": 2, "alpha": 3}), ("14", {"lambda": 2, "mu": 1, "alpha": 3}),
     {"tau": 1, "images": {"p1": "q1", "p2": "q2", "q1": "p1", "q2": "p2"}}, True),
    ("U14(1,1,1)->U14(1,1,0) identity",
     ("14", {"lambda": 1, "mu": 1, "alpha": 1}), ("14", {"lambda": 1, "mu": 1, "alpha": 0}),
     {"tau": 1, "images": {"p1": "p1", "p2": "p2", "q1": "q1", "q2": "q2"}}, False),
]


def _lift_one(suite: str, spec: LiftingSpec) -> Iterator[CheckRecord]:
    report = verify_lifting(spec)
    yield CheckRecord.of(suite, f"verify:{spec.name}", report.passed, report.to_dict())


class _LiftRequest:
    """``--family`` plus a parameter file: the lifting, and optionally a witness and its target."""

    def __init__(self, options: SuiteOptions):
        options.require("family")
        data = dict(options.params)
        witness = options.witness if options.witness is not None else data.pop("witness", None)
        data.pop("witness", None)
        target = data.pop("target", None)
        if witness is not None and target is None:
            target = witness.get("target")
        multiplicities = data.pop("multiplicities", None)
        params = data.pop("params", data)
        self.spec = LiftingSpec(options.family, multiplicities, params)
        self.witness = None if witness is None else {k: v for k, v in witness.items() if k != "target"}
        self.target = None
        if target is not None:
            self.target = LiftingSpec(target.get("family", options.family), target.get("multiplicities"),
                                      target.get("params"))


def _lift_build(options: SuiteOptions) -> Iterator[CheckRecord]:
    spec = _LiftRequest(options).spec
    lifting = build_lifting(spec)
    dim = lifting.dim
    payload = {**lifting.to_dict(), "dim": dim}
    ok = lifting.expected_dim is None or dim == lifting.expected_dim
    yield CheckRecord.of("lift", f"build:{spec.name}", ok, payload)


def _lift_verify(options: SuiteOptions) -> Iterator[CheckRecord]:
    """``lift verify``: one record per verification stage, then the overall verdict."""
    spec = _LiftRequest(options).spec
    report = verify_lifting(spec)
    for check in report.checks:
        yield CheckRecord.of("lift", f"{check.name}:{spec.name}", check.passed, check.to_dict())
    yield CheckRecord.of("lift", f"verify:{spec.name}", report.passed, {"dim": report.dim, "expected_dim": report.expected_dim})


def _lift_degeneration(options: SuiteOptions) -> Iterator[CheckRecord]:
    spec = _LiftRequest(options).spec
    yield CheckRecord.of("lift", f"degeneration:{spec.zero().name}", degeneration_check(spec))


def _lift_iso(options: SuiteOptions) -> Iterator[CheckRecord]:
    """``lift iso``: the witness comes from ``--witness`` or the parameter file.

    Without a ``target`` the witness is checked as an automorphism of the source.
    """
    request = _LiftRequest(options)
    if request.witness is None:
        raise MissingOption("iso needs --witness or a 'witness' entry in --params")
    target = request.target or request.spec
    verdict = iso_from_witness(request.spec, target, request.witness)
    yield CheckRecord.of("lift", f"iso:{request.spec.name}->{target.name}", verdict, request.witness)


def _lift_from_params(options: SuiteOptions) -> Iterator[CheckRecord]:
    suite = "lift"
    request = _LiftRequest(options)
    yield from _lift_one(suite, request.spec)
    ok = degeneration_check(request.spec)
    yield CheckRecord.of(suite, f"degeneration:{request.spec.zero().name}", ok)
    if request.witness is not None:
        target = request.target or request.spec
        verdict = iso_from_witness(request.spec, target, request.witness)
        yield CheckRecord.of(suite, f"iso:{request.spec.name}->{target.name}", verdict, request.witness)


def _lift(options: SuiteOptions) -> Iterator[CheckRecord]:
    suite = "lift"
    if options.family:
        yield from _lift_from_params(options)
        return
    for family, mults, params, expected in LIFT_INSTANCES:
        spec = LiftingSpec(family, mults, params)
        report = verify_lifting(spec)
        ok = report.passed and report.dim == expected
        yield CheckRecord.of(suite, f"verify:{spec.name}", ok, report.to_dict())
    for family, mults in DEGENERATION_INSTANCES:
        spec = LiftingSpec(family, mults)
        yield CheckRecord.of(suite, f"degeneration:{spec.name}", degeneration_check(spec))
    built = {}
    for name, (fa, pa), (fb, pb), witness, expected in ISO_INSTANCES:
        a = LiftingSpec(fa, None, pa)
        b = LiftingSpec(fb, None, pb)
        for spec in (a, b):
            if spec.name not in built:
                built[spec.name] = build_lifting(spec)
        verdict = iso_from_witness(built[a.name], built[b.name], witness)
        yield CheckRecord.of(suite, f"iso:{name}", verdict == expected, {"verdict": verdict, "witness": witness})


# ---------------------------------------------------------------------------
# registry

SUITES: Dict[str, Callable[[SuiteOptions], Iterator[CheckRecord]]] = {
    "verify-h": _verify_h,
    "verify-double": _verify_double,
    "census": _census,
    "yd": _yd,
    "nichols": _nichols,
    "bosonize": _bosonize,
    "lift": _lift,
}
SUITE_NAMES = list(SUITES) + ["all"]

# single operations reachable as ``<suite> <action>``
ACTIONS: Dict[str, Dict[str, Callable[[SuiteOptions], Iterator[CheckRecord]]]] = {
    "yd": {"verify": _yd_verify, "braiding": _yd_braiding},
    "nichols": {"series": _nichols_series, "relations": _nichols_relations, "factorization": _nichols_factorization},
    "lift": {"build": _lift_build, "verify": _lift_verify, "degeneration": _lift_degeneration, "iso": _lift_iso},
}
ACTION_NAMES = sorted({action for actions in ACTIONS.values() for action in actions})


def _runner(name: str, action: Optional[str]) -> Callable[[SuiteOptions], Iterator[CheckRecord]]:
    if action is None:
        return SUITES[name]
    actions = ACTIONS.get(name, {})
    if action not in actions:
        raise UnknownSuite(f"suite {name!r} has no action {action!r}; choose from {sorted(actions)}")
    return actions[action]


def iter_suite(name: str, options: Optional[SuiteOptions] = None) -> Iterator[CheckRecord]:
    """Records of one suite (or of every suite for ``all``) as they are produced.

    Usage errors (unknown names, missing options, malformed parameters) raise
    before or while the suite runs; a computation that raises is recorded as
    a failed ``aborted`` record and the remaining suites still run.
    """
    if name not in SUITE_NAMES:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {SUITE_NAMES}")
    options = options or SuiteOptions()
    if name == "all" and options.action is not None:
        raise UnknownSuite(f"'all' takes no action, got {options.action!r}")
    names = list(SUITES) if name == "all" else [name]
    runners = {suite: _runner(suite, options.action) for suite in names}
    for suite in names:
        logger.info(f"🚀 running suite {suite}" + (f" {options.action}" if options.action else ""))
        try:
            for record in runners[suite](options):
                record.payload = _text(record.payload)
                yield record
        except (AlgebraError, ValueError) as exc:
            if isinstance(exc, UsageError) and name != "all":
                raise
            logger.error(f"❌ suite {suite} aborted: {exc}")
            yield CheckRecord(suite, "aborted", FAIL, {"error": type(exc).__name__, "detail": str(exc)})


def run_suite(name: str, options: Optional[SuiteOptions] = None) -> List[CheckRecord]:
    return list(iter_suite(name, options))


def summarize(records: List[CheckRecord]) -> Dict[str, int]:
    return {status: sum(1 for r in records if r.status == status) for status in (PASS, FAIL, EVIDENCE)}


def build_report(name: str, records: List[CheckRecord]) -> dict:
    summary = summarize(records)
    if summary[FAIL]:
        logger.warning(f"❌ {name}: {summary[FAIL]} of {len(records)} checks failed")
    else:
        logger.info(f"🎉 {name}: {summary[PASS]} passed, {summary[EVIDENCE]} evidence")
    return {"suite": name, "records": [r.to_dict() for r in records], "summary": summary}
