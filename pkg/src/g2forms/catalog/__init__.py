"""Machine-readable catalog of Lie algebras, forms and certificates.

Each YAML file holds a list of entries.  Loading checks that the structure
equations parse and satisfy Jacobi and that every form literal parses in
the entry's dimension.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import yaml

from ..dsl import DSLSyntaxError, parse_equations, parse_form, parse_vector
from ..exterior import DimMismatch
from ..liealg import LieAlgebra

DATA_DIR = Path(__file__).parent / "data"


class ParseError(ValueError):
    def __init__(self, message: str, path: str = "", line: int | None = None):
        self.path = path
        self.line = line
        where = f"{path}:{line}" if line is not None else path
        super().__init__(f"{where}: {message}" if where else message)


class InvariantViolation(ValueError):
    pass


@dataclass
class CatalogEntry:
    id: str
    equations: str
    algebra: LieAlgebra
    tags: dict = field(default_factory=dict)
    data: dict = field(default_factory=dict)
    expected: dict = field(default_factory=dict)
    source: str = ""

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def section(self, key: str) -> dict | None:
        return self.data.get(key)


# (section, key) pairs holding form literals
_FORM_KEYS = [
    ("existence", "Phi"),
    ("nilsoliton", "phi"),
    ("bryant", "phi0"),
    ("bryant", "dstar_printed"),
    ("g2", "phi"),
    ("g2", "Phi_printed"),
]
_COFRAME_KEYS = [("existence", "coframe"), ("nilsoliton", "coframe")]
_EQUATION_KEYS = [("nilsoliton", "equations"), ("bryant", "f_equations")]


def _entry_line(node, k: int) -> int | None:
    if isinstance(node, yaml.SequenceNode) and k < len(node.value):
        return node.value[k].start_mark.line + 1
    return None


def _check_literals(entry: CatalogEntry, where: str):
    n = entry.dim

    def form(text, what):
        try:
            parse_form(str(text), n)
        except (DSLSyntaxError, DimMismatch, ValueError) as exc:
            raise InvariantViolation(f"{where}: {what} does not parse: {exc}") from exc

    def equations(text, what):
        try:
            diff = parse_equations(str(text))
        except (DSLSyntaxError, ValueError) as exc:
            raise InvariantViolation(f"{where}: {what} does not parse: {exc}") from exc
        if len(diff) != n:
            raise InvariantViolation(f"{where}: {what} has dimension {len(diff)}, expected {n}")
        if not LieAlgebra(diff).is_jacobi():
            raise InvariantViolation(f"{where}: {what} fails the Jacobi identity")

    for section, key in _FORM_KEYS:
        for block in _blocks(entry, section):
            if key in block:
                form(block[key], f"{section}.{key}")
    for section, key in _COFRAME_KEYS:
        for block in _blocks(entry, section):
            for j, t in enumerate(block.get(key, [])):
                form(t, f"{section}.{key}[{j}]")
            if key in block and len(block[key]) != n:
                raise InvariantViolation(f"{where}: {section}.{key} needs {n} covectors")
    for section, key in _EQUATION_KEYS:
        for block in _blocks(entry, section):
            if key in block:
                equations(block[key], f"{section}.{key}")
    cf = entry.expected.get("closed_forms")
    if isinstance(cf, dict) and "printed" in cf:
        form(cf["printed"], "expected.closed_forms.printed")
    if "nu" in entry.expected:
        try:
            parse_form(str(entry.expected["nu"]), n - 1)
        except (DSLSyntaxError, DimMismatch, ValueError) as exc:
            raise InvariantViolation(f"{where}: expected.nu does not parse: {exc}") from exc
    certs = entry.data.get("certificates", {})
    for name in ("obs3", "obs3_corrected"):
        for j, case in enumerate(certs.get(name, [])):
            for key in ("X", "Y"):
                try:
                    parse_vector(str(case[key]), n)
                except (DSLSyntaxError, KeyError, ValueError) as exc:
                    raise InvariantViolation(f"{where}: {name} case {j + 1} {key} does not parse: {exc}") from exc


def _blocks(entry: CatalogEntry, section: str) -> list:
    """The section and its 'corrected' override, when present."""
    block = entry.data.get(section)
    if not isinstance(block, dict):
        return []
    out = [block]
    if isinstance(block.get("corrected"), dict):
        out.append(block["corrected"])
    return out


def _build(raw: dict, where: str) -> CatalogEntry:
    if not isinstance(raw, dict) or "id" not in raw or "equations" not in raw:
        raise InvariantViolation(f"{where}: an entry needs 'id' and 'equations'")
    eid = str(raw["id"])
    try:
        g = LieAlgebra.parse(str(raw["equations"]), name=eid)
    except (DSLSyntaxError, ValueError) as exc:
        raise InvariantViolation(f"{where}: equations of {eid} do not parse: {exc}") from exc
    if not g.is_jacobi():
        raise InvariantViolation(f"{where}: {eid} fails the Jacobi identity")
    data = {k: v for k, v in raw.items() if k not in ("id", "equations", "tags", "expected")}
    entry = CatalogEntry(eid, str(raw["equations"]), g, dict(raw.get("tags") or {}), data,
                         dict(raw.get("expected") or {}), where)
    _check_literals(entry, where)
    return entry


def load_file(path: str | Path) -> list:
    path = Path(path)
    text = path.read_text()
    try:
        node = yaml.compose(text, Loader=yaml.SafeLoader)
        raw = yaml.safe_load(text)
    except yaml.MarkedYAMLError as exc:
        line = exc.problem_mark.line + 1 if exc.problem_mark is not None else None
        raise ParseError(str(exc.problem or exc), str(path), line) from exc
    if raw is None:
        return []
    if not isinstance(raw, list):
        raise ParseError("a catalog file holds a list of entries", str(path), 1)
    return [_build(item, f"{path.name}:{_entry_line(node, k)}") for k, item in enumerate(raw)]


def load_catalog(path: str | Path | None = None) -> list:
    """Entries from a YAML file or from every *.yaml file of a directory."""
    path = Path(path) if path is not None else DATA_DIR
    files = sorted(path.glob("*.yaml")) if path.is_dir() else [path]
    entries = []
    seen = {}
    for f in files:
        for e in load_file(f):
            if e.id in seen:
                raise InvariantViolation(f"duplicate id {e.id!r} in {e.source} and {seen[e.id]}")
            seen[e.id] = e.source
            entries.append(e)
    return entries


def by_id(entries: list) -> dict:
    return {e.id: e for e in entries}
