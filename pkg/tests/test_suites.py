import pytest

from app.core.errors import CapExceeded, MissingOption, UnknownFamily, UnknownSuite, UnknownTag, WitnessShapeMismatch
from app.core.scalars import HALF
from app.services import suites
from app.services.suites import (
    EVIDENCE,
    FAIL,
    PASS,
    CheckRecord,
    SuiteOptions,
    build_report,
    iter_suite,
    run_suite,
    summarize,
)


def test_check_record_status_is_validated():
    """Only pass, fail and evidence are statuses."""
    with pytest.raises(ValueError):
        CheckRecord("verify-h", "dimension", "maybe")
    assert CheckRecord.of("verify-h", "dimension", True).status == PASS
    assert CheckRecord.of("verify-h", "dimension", False).status == FAIL


def test_payload_scalars_become_text():
    """Exact scalars are written canonically."""
    assert suites._text({"value": HALF, "list": [HALF, 2]}) == {"value": "1/2+0*i", "list": ["1/2+0*i", 2]}


def test_summary_and_report():
    """Reports keep record order and count statuses."""
    records = [
        CheckRecord("nichols", "a", PASS),
        CheckRecord("nichols", "b", EVIDENCE),
        CheckRecord("nichols", "c", PASS),
    ]
    assert summarize(records) == {"pass": 2, "fail": 0, "evidence": 1}
    report = build_report("nichols", records)
    assert report["suite"] == "nichols"
    assert [r["name"] for r in report["records"]] == ["a", "b", "c"]


def test_unknown_suite():
    """Unregistered suite names raise."""
    with pytest.raises(UnknownSuite):
        run_suite("verify-everything")


def test_verify_h_suite_passes():
    """H passes every check of its suite."""
    records = run_suite("verify-h")
    names = [r.name for r in records]
    assert names[:3] == ["dimension", "hopf_axioms", "grouplikes"]
    assert summarize(records)[FAIL] == 0
    assert sum(1 for n in names if n.startswith("skew_primitives[")) == 7
    assert sum(1 for n in names if n.startswith("automorphism:tau_")) == 32


def test_nichols_suite_with_a_tag():
    """A tag narrows the nichols suite to one series."""
    records = run_suite("nichols", SuiteOptions(tag="M1", max_degree=4))
    assert len(records) == 1
    assert records[0].name == "series:M1"
    assert records[0].payload["dims"] == [1, 2, 1, 0, 0]


def test_nichols_suite_unknown_tag():
    """An unknown tag raises instead of becoming a record."""
    with pytest.raises(UnknownTag):
        run_suite("nichols", SuiteOptions(tag="M99"))


def test_yd_suite_with_a_tag():
    """A tag narrows the yd suite to one module."""
    records = run_suite("yd", SuiteOptions(tag="Omega14"))
    assert [r.name for r in records] == ["yd_axioms:Omega14", "braid_equation:Omega14"]
    assert all(r.status == PASS for r in records)


def test_lift_with_unknown_family():
    """Family 3 has no liftings."""
    with pytest.raises(UnknownFamily):
        run_suite("lift", SuiteOptions(family="3"))


def test_lift_from_params():
    """A parameter file drives verify, degeneration and iso."""
    options = SuiteOptions(family="1", params={
        "multiplicities": [1, 0, 0, 0, 0, 0, 0, 0],
        "params": {"alpha": [[4]]},
        "witness": {"tau": 1, "images": {"A1": "2 A1"}},
        "target": {"multiplicities": [1, 0, 0, 0, 0, 0, 0, 0], "params": {"alpha": [[1]]}},
    })
    records = run_suite("lift", options)
    assert [r.name.split(":")[0] for r in records] == ["verify", "degeneration", "iso"]
    assert all(r.status == PASS for r in records)


def test_all_turns_errors_into_failed_records(monkeypatch):
    """Under ``all`` a suite that raises is recorded as aborted and the rest still run."""
    def good(options):
        yield CheckRecord("good", "ok", PASS)

    def broken(options):
        raise UnknownTag("no such module")
        yield  # pragma: no cover

    monkeypatch.setattr(suites, "SUITES", {"broken": broken, "good": good})
    records = list(iter_suite("all"))
    assert [(r.suite, r.name, r.status) for r in records] == [
        ("broken", "aborted", FAIL),
        ("good", "ok", PASS),
    ]
    assert records[0].payload["error"] == "UnknownTag"


def test_single_suite_computation_error_is_aborted(monkeypatch):
    """Outside ``all`` a computation error still becomes a failed record."""
    def exhausted(options):
        yield CheckRecord("nichols", "series:M1", PASS)
        raise CapExceeded("symmetrizer", 8192, 4096)

    monkeypatch.setitem(suites.SUITES, "nichols", exhausted)
    records = run_suite("nichols")
    assert [(r.name, r.status) for r in records] == [("series:M1", PASS), ("aborted", FAIL)]
    assert records[1].payload["error"] == "CapExceeded"


def test_single_suite_usage_error_raises(monkeypatch):
    """Usage errors still raise for a single suite."""
    def broken(options):
        raise UnknownTag("no such module")
        yield  # pragma: no cover

    monkeypatch.setitem(suites.SUITES, "nichols", broken)
    with pytest.raises(UnknownTag):
        run_suite("nichols")


def test_every_action_belongs_to_a_suite():
    """Actions are registered under existing suites."""
    assert set(suites.ACTIONS) <= set(suites.SUITES)
    assert suites.ACTION_NAMES == sorted({"verify", "braiding", "series", "relations", "factorization",
                                          "build", "degeneration", "iso"})


def test_unknown_action():
    """Actions are per suite: nichols has no braiding action."""
    with pytest.raises(UnknownSuite):
        run_suite("nichols", SuiteOptions(action="braiding", tag="M1"))
    with pytest.raises(UnknownSuite):
        run_suite("all", SuiteOptions(action="verify"))


@pytest.mark.parametrize("name, options", [
    ("nichols", SuiteOptions(action="series")),
    ("nichols", SuiteOptions(action="relations")),
    ("nichols", SuiteOptions(action="factorization", left="V1")),
    ("yd", SuiteOptions(action="verify")),
    ("yd", SuiteOptions(action="braiding")),
    ("lift", SuiteOptions(action="build")),
])
def test_actions_need_their_options(name, options):
    """Actions without their options raise MissingOption."""
    with pytest.raises(MissingOption):
        run_suite(name, options)


def test_nichols_series_action():
    """series gives one Hilbert prefix record."""
    records = run_suite("nichols", SuiteOptions(action="series", tag="V1", max_degree=2))
    assert [r.name for r in records] == ["series:V1"]
    assert records[0].payload["dims"] == [1, 1, 0]


def test_nichols_relations_action_on_a_family_label():
    """Labels outside the catalog are answered without a listed comparison."""
    records = run_suite("nichols", SuiteOptions(action="relations", tag="W(1,1,0,1)"))
    assert records[0].status == PASS
    assert records[0].payload["dim"] == 2


def test_nichols_relations_action_against_the_catalog():
    """Catalog tags are compared with their listed relations."""
    records = run_suite("nichols", SuiteOptions(action="relations", tag="M17"))
    assert records[0].name == "quadratic_relations:M17"
    assert records[0].status == PASS


@pytest.mark.parametrize("left, right, factorizes", [
    ("V1", "M2", True),
    ("M1", "M2", True),
    ("V1", "M13", False),
])
def test_nichols_factorization_action(left, right, factorizes):
    """Listed pairs pass when the computation agrees with the list."""
    [record] = run_suite("nichols", SuiteOptions(action="factorization", left=left, right=right))
    assert record.status == PASS
    assert record.payload == {"factorizes": factorizes, "expected": factorizes}


def test_yd_verify_action_one_tag():
    """verify checks the axioms, the braid equation and the double."""
    records = run_suite("yd", SuiteOptions(action="verify", tag="M5"))
    assert [r.name for r in records] == ["yd_axioms:M5", "braid_equation:M5", "from_double_rep:M5"]
    assert all(r.status == PASS for r in records)


def test_yd_verify_action_all():
    """--all covers the 28 catalog modules and skips the rest of the yd suite."""
    records = run_suite("yd", SuiteOptions(action="verify", all_modules=True))
    assert len(records) == 3 * 28
    assert all(r.status == PASS for r in records)


def test_yd_braiding_action_on_a_diagonal_module():
    """V1 braids by -1 and is of diagonal type."""
    [record] = run_suite("yd", SuiteOptions(action="braiding", tag="V1"))
    assert record.status == PASS
    assert record.payload["braiding"] == [["-1+0*i"]]
    assert record.payload["diagonal"]["vertices"] == ["-1+0*i"]


ONE_LETTER = {"multiplicities": [1, 0, 0, 0, 0, 0, 0, 0], "params": {"alpha": [[1]]}}


def test_lift_build_action():
    """build reports the lifting and its dimension."""
    [record] = run_suite("lift", SuiteOptions(action="build", family="1", params=ONE_LETTER))
    assert record.name.startswith("build:")
    assert record.status == PASS
    assert record.payload["dim"] == 32


def test_lift_verify_action_reports_each_stage():
    """verify emits one record per stage plus the verdict."""
    records = run_suite("lift", SuiteOptions(action="verify", family="1", params=ONE_LETTER))
    stages = [r.name.split(":")[0] for r in records]
    assert stages[-1] == "verify"
    assert {"braiding_kernel", "confluence", "dimension", "comultiplication", "counit",
            "coassociativity", "antipode"} <= set(stages)
    assert all(r.status == PASS for r in records)


def test_lift_degeneration_action():
    """degeneration compares with the bosonization."""
    [record] = run_suite("lift", SuiteOptions(action="degeneration", family="1", params=ONE_LETTER))
    assert record.status == PASS


def test_lift_iso_action_identity_witness():
    """Without a target the witness is checked as an automorphism."""
    options = SuiteOptions(action="iso", family="1", params=ONE_LETTER,
                           witness={"tau": 1, "images": {"A1": "A1"}})
    [record] = run_suite("lift", options)
    assert record.status == PASS


def test_lift_iso_action_with_target_in_witness():
    """The witness file may carry its target."""
    options = SuiteOptions(action="iso", family="1", params={**ONE_LETTER, "params": {"alpha": [[4]]}},
                           witness={"tau": 1, "images": {"A1": "2 A1"}, "target": ONE_LETTER})
    [record] = run_suite("lift", options)
    assert record.status == PASS
    assert record.payload == {"tau": 1, "images": {"A1": "2 A1"}}


def test_lift_iso_action_bad_witness_raises():
    """A witness naming unknown letters is a usage error."""
    options = SuiteOptions(action="iso", family="1", params=ONE_LETTER, witness={"tau": 1, "images": {"B1": "A1"}})
    with pytest.raises(WitnessShapeMismatch):
        run_suite("lift", options)
