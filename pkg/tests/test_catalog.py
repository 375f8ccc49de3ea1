import json
from pathlib import Path

import pytest

from g2forms.catalog import DATA_DIR, InvariantViolation, ParseError, load_catalog, load_file
from g2forms.catalog.report import exit_code, parse_records, render_report
from g2forms.catalog.verify import (CHECKS, FAIL, FLAG, PASS, CheckResult, dead_expectations,
                                    verify_catalog, verify_entry)

# the check inventory documented in the README
RECORDS = 216
INVENTORY = {
    "jacobi": 45, "step": 45, "closed-forms": 13, "obs3": 10, "block": 3, "nu": 3, "existence": 7,
    "nilsoliton": 15, "nilsoliton-basis": 7, "coframe": 15, "bryant-basis": 1, "bryant-dstar": 1,
    "bryant-elimination": 1, "g2": 1, "g2-dual": 1, "contact": 2, "coclosed": 45, "partition": 1,
}


def test_catalog_size(catalog):
    assert len(catalog) == 45
    assert len({e.id for e in catalog}) == 45


def test_catalog_files():
    assert sorted(p.name for p in DATA_DIR.glob("*.yaml")) == [
        "contact.yaml", "decomposable.yaml", "obstructed.yaml", "two_step.yaml"]


def _write(tmp_path: Path, name: str, text: str) -> Path:
    p = tmp_path / name
    p.write_text(text)
    return p


def test_empty_file(tmp_path):
    assert load_file(_write(tmp_path, "e.yaml", "")) == []


def test_non_jacobi_entry(tmp_path):
    p = _write(tmp_path, "bad.yaml", '- id: "x"\n  equations: "(0,0,12,13,24)"\n')
    with pytest.raises(InvariantViolation, match="Jacobi"):
        load_file(p)


def test_bad_form_literal(tmp_path):
    text = '- id: "x"\n  equations: "(0,0,12)"\n  g2:\n    phi: "124"\n'
    with pytest.raises(InvariantViolation, match="g2.phi"):
        load_file(_write(tmp_path, "bad.yaml", text))


def test_yaml_error_has_line(tmp_path):
    text = '- id: "x"\n  equations: "(0,0,12)"\n- id: [unclosed\n'
    with pytest.raises(ParseError) as info:
        load_file(_write(tmp_path, "bad.yaml", text))
    assert info.value.line == 4 or info.value.line == 3


def test_duplicate_ids(tmp_path):
    _write(tmp_path, "a.yaml", '- id: "x"\n  equations: "(0,0,12)"\n')
    _write(tmp_path, "b.yaml", '- id: "x"\n  equations: "(0,0,0)"\n')
    with pytest.raises(InvariantViolation, match="duplicate"):
        load_catalog(tmp_path)


def test_entry_source_lines(catalog):
    for e in catalog:
        name, line = e.source.split(":")
        assert (DATA_DIR / name).read_text().splitlines()[int(line) - 1].startswith("- id:")


def test_no_dead_expectations(catalog):
    assert dead_expectations(catalog) == []


def test_dead_expectation_detected(tmp_path):
    p = _write(tmp_path, "d.yaml", '- id: "x"\n  equations: "(0,0,12)"\n  expected: {jacobi: true, bogus: 1}\n')
    assert dead_expectations(load_file(p)) == [("x", "bogus")]


def test_record_count_and_inventory(verification):
    assert len(verification) == RECORDS
    counts = {}
    for r in verification:
        counts[r.check] = counts.get(r.check, 0) + 1
    assert counts == INVENTORY
    assert sum(INVENTORY.values()) == RECORDS


def test_inventory_is_documented():
    readme = (Path(__file__).parent.parent / "README.md").read_text()
    assert f"{RECORDS} records" in readme
    for check in INVENTORY:
        assert f"`{check}`" in readme


def test_every_check_is_registered(verification):
    ids = {c.id for c in CHECKS} | {"g2-dual", "partition"}
    assert {r.check for r in verification} == ids


def test_reports_are_byte_identical(catalog, verification):
    again = verify_catalog(catalog)
    for fmt in ("text", "records"):
        assert render_report(verification, fmt) == render_report(again, fmt)


def test_records_round_trip(verification):
    body = render_report(verification, "records").decode()
    first = json.loads(body.splitlines()[0])
    assert first["summary"]["checks"] == RECORDS
    back = parse_records(body)
    assert sorted(back, key=lambda r: (r.entry, r.check)) == sorted(verification, key=lambda r: (r.entry, r.check))


def test_empty_report_is_header_only():
    assert render_report([], "text") == b"# 0 checks: 0 pass, 0 flagged, 0 fail\n"
    assert len(render_report([], "records").splitlines()) == 1
    assert exit_code([]) == 0


def test_single_pass_report():
    r = [CheckResult("x", "jacobi", PASS, "d^2 = 0: True")]
    assert render_report(r, "text").decode().splitlines()[1] == "PASS x jacobi: d^2 = 0: True"
    assert len(render_report(r, "records").splitlines()) == 2


def test_exit_codes_follow_statuses():
    flag = [CheckResult("x", "c", FLAG)]
    fail = [CheckResult("x", "c", FAIL)]
    assert exit_code(flag) == 0 and exit_code(flag, strict=True) == 1
    assert exit_code(fail) == 1


def test_crashing_check_is_reported(entries, monkeypatch):
    import g2forms.catalog.verify as v

    def boom(entry, ctx):
        raise RuntimeError("boom")

    monkeypatch.setattr(v, "CHECKS", [v.Check("jacobi", ("jacobi",), lambda e: True, boom)])
    (r,) = v.verify_entry(entries["17"])
    assert r.status == FAIL and "boom" in r.detail


def test_flags_carry_both_values(verification):
    for r in verification:
        if r.status == FLAG and r.check not in ("coclosed", "partition"):
            assert "printed" in r.detail, r


def test_statuses(verification):
    status = {(r.entry, r.check): r.status for r in verification}
    assert status[("17", "existence")] == PASS
    assert status[("ex2", "g2-dual")] == FLAG
    assert status[("g6", "obs3")] == FLAG
    assert status[("n8", "bryant-elimination")] == FAIL


def test_verify_single_entry(entries):
    rs = verify_entry(entries["l1"])
    assert {r.check for r in rs} == {"jacobi", "step", "closed-forms", "block", "nu", "coclosed"}
