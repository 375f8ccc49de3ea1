"""Rendering of verification results as text or line-delimited JSON records."""
from __future__ import annotations

import json
from collections import Counter

from .verify import FAIL, FLAG, PASS, CheckResult

_LABEL = {PASS: "PASS", FLAG: "FLAG", FAIL: "FAIL"}


def ordered(results: list) -> list:
    return sorted(results, key=lambda r: (r.entry, r.check))


def summary(results: list) -> dict:
    c = Counter(r.status for r in results)
    return {"checks": len(results), PASS: c[PASS], FLAG: c[FLAG], FAIL: c[FAIL]}


def header(results: list) -> str:
    s = summary(results)
    return f"# {s['checks']} checks: {s[PASS]} pass, {s[FLAG]} flagged, {s[FAIL]} fail"


def render_text(results: list) -> str:
    lines = [header(results)]
    for r in ordered(results):
        lines.append(f"{_LABEL[r.status]} {r.entry} {r.check}: {r.detail}")
    return "\n".join(lines) + "\n"


def render_records(results: list) -> str:
    lines = [json.dumps({"summary": summary(results)}, sort_keys=True)]
    for r in ordered(results):
        lines.append(json.dumps(r.as_record(), sort_keys=True, ensure_ascii=False))
    return "\n".join(lines) + "\n"


def render_report(results: list, fmt: str = "text") -> bytes:
    if fmt == "text":
        return render_text(results).encode()
    if fmt == "records":
        return render_records(results).encode()
    raise ValueError(f"unknown format {fmt!r}")


def parse_records(body: str) -> list:
    """Inverse of render_records (the summary line is skipped)."""
    out = []
    for line in body.splitlines():
        d = json.loads(line)
        if "summary" in d:
            continue
        out.append(CheckResult(d["entry"], d["check"], d["status"], d["detail"]))
    return out


def exit_code(results: list, strict: bool = False) -> int:
    bad = {FAIL, FLAG} if strict else {FAIL}
    return 1 if any(r.status in bad for r in results) else 0
