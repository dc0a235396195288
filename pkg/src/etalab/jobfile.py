"""Job files: a TOML document describing a ring, named modules, the pairs to
study, bounds and output options.  See docs/jobfile.md for the grammar."""

from __future__ import annotations

import re
from dataclasses import dataclass

import tomli

from .errors import HomogeneityError, ParseError
from .linalg import FieldSpec
from .modules import GradedPresentation, presentation, residue_field
from .ring import RingDescriptor

TASKS = ("check", "hilbert", "tor", "eta", "genfun", "rigidity", "report")
FORMATS = ("json", "csv", "text")
_NAME = re.compile(r"^[A-Za-z_][A-Za-z_0-9]*$")


@dataclass
class JobSpec:
    ring: RingDescriptor
    modules: dict[str, GradedPresentation]
    pairs: list[tuple[str, str]]
    task: str = "report"
    J: int | None = None
    D: int | None = None
    output_format: str = "json"
    output_path: str | None = None


def _locate(text: str, needle: str) -> tuple[int | None, int | None]:
    """Line and column (1-based) of the first quoted occurrence of ``needle``."""
    for quote in ('"', "'"):
        pos = text.find(quote + needle + quote)
        if pos >= 0:
            line = text.count("\n", 0, pos) + 1
            col = pos - (text.rfind("\n", 0, pos) + 1) + 2
            return line, col
    return None, None


def _relocated(exc: ParseError, text: str, source: str) -> ParseError:
    line, col = _locate(text, source)
    if line is None:
        return exc
    inner = exc.column or 1
    msg = str(exc.args[0]).split(" (line ")[0]
    return type(exc)(msg, line, col + inner - 1)


def _where(text: str, needle: str) -> str:
    line, col = _locate(text, needle)
    return "" if line is None else f" (line {line}, column {col})"


def _require(cond: bool, msg: str, text: str = "", key: str | None = None):
    if not cond:
        line = None
        if key is not None:
            m = re.search(rf"^\s*\[?{re.escape(key)}\b", text, re.M)
            if m:
                line = text.count("\n", 0, m.start()) + 1
        raise ParseError(msg, line)


def _polys(raw, what: str, text: str):
    if not isinstance(raw, list) or not all(isinstance(x, (str, int)) for x in raw):
        raise ParseError(f"{what} must be a list of polynomial strings")
    return [str(x) for x in raw]


def parse_job(text: str, field_override: str | None = None) -> JobSpec:
    """Parse and validate a job file; errors carry line/column when known."""
    try:
        doc = tomli.loads(text)
    except tomli.TOMLDecodeError as exc:
        m = re.search(r"\(at line (\d+), column (\d+)\)", str(exc))
        msg = re.sub(r"\s*\(at line \d+, column \d+\)", "", str(exc))
        if m:
            raise ParseError(f"invalid TOML: {msg}", int(m.group(1)), int(m.group(2))) from None
        raise ParseError(f"invalid TOML: {msg}") from None

    known = {"task", "pairs", "ring", "bounds", "modules", "output"}
    for key in doc:
        _require(key in known, f"unknown top-level key {key!r}", text, key)

    ring_doc = doc.get("ring")
    _require(isinstance(ring_doc, dict), "missing [ring] table")
    fld = field_override or ring_doc.get("field", "Q")
    try:
        fs = FieldSpec.parse(str(fld))
    except ValueError as exc:
        raise ParseError(f"bad field {fld!r}: {exc}", *_locate(text, str(fld))) from None
    names = ring_doc.get("vars")
    _require(isinstance(names, list) and names and all(isinstance(x, str) for x in names),
             "[ring] vars must be a non-empty list of names", text, "vars")
    for nm in names:
        _require(bool(_NAME.match(nm)), f"bad variable name {nm!r}", text, "vars")
    rels = _polys(ring_doc.get("relations", []), "[ring] relations", text)
    relations = []
    for k, r in enumerate(rels):
        try:
            relations.append(RingDescriptor.from_strings(names, [r], fs).relations[0])
        except ParseError as exc:
            raise _relocated(exc, text, r) from None
        except HomogeneityError:
            raise HomogeneityError(f"[ring] relation {k + 1} {r!r} must be a nonzero homogeneous "
                                   f"polynomial of degree >= 1{_where(text, r)}") from None
    try:
        ring = RingDescriptor(fs, tuple(names), tuple(relations))
    except HomogeneityError as exc:
        raise HomogeneityError(f"[ring] {exc}") from None
    except ValueError as exc:
        raise ParseError(f"[ring] {exc}", *_locate(text, "vars")) from None

    mods_doc = doc.get("modules", {})
    _require(isinstance(mods_doc, dict) and mods_doc, "at least one [modules.NAME] table is required",
             text, "modules")
    modules: dict[str, GradedPresentation] = {}
    for name, body in mods_doc.items():
        _require(isinstance(body, dict), f"[modules.{name}] must be a table", text, f"modules.{name}")
        if body.get("residue_field"):
            twist = body.get("twist", 0)
            _require(isinstance(twist, int) and twist >= 0, f"[modules.{name}] twist must be a non-negative integer")
            modules[name] = residue_field(ring, twist, name)
            continue
        gens = body.get("gens", [0])
        _require(isinstance(gens, list) and gens and all(isinstance(g, int) and g >= 0 for g in gens),
                 f"[modules.{name}] gens must be a non-empty list of non-negative integers", text,
                 f"modules.{name}")
        raw = body.get("rels", [])
        _require(isinstance(raw, list), f"[modules.{name}] rels must be a list", text, f"modules.{name}")
        cols = []
        for k, col in enumerate(raw):
            if isinstance(col, (str, int)):
                _require(len(gens) == 1, f"[modules.{name}] relation {k + 1} must list one entry per generator")
                col = [col]
            _require(isinstance(col, list) and len(col) == len(gens),
                     f"[modules.{name}] relation {k + 1} must have {len(gens)} entries")
            parsed = []
            for entry in col:
                try:
                    parsed.append(ring.poly(str(entry)))
                except ParseError as exc:
                    raise _relocated(exc, text, str(entry)) from None
            cols.append(parsed)
        try:
            modules[name] = presentation(ring, gens, cols, name)
        except HomogeneityError as exc:
            m = re.search(rf"^\s*\[modules\.{re.escape(name)}\]", text, re.M)
            where = f" (table at line {text.count(chr(10), 0, m.start()) + 1})" if m else ""
            raise HomogeneityError(f"[modules.{name}] {str(exc).split(': ', 1)[-1]}{where}") from None

    pairs_doc = doc.get("pairs")
    if pairs_doc is None:
        keys = list(modules)
        pairs = [(keys[0], keys[1] if len(keys) > 1 else keys[0])]
    else:
        _require(isinstance(pairs_doc, list) and pairs_doc, "pairs must be a non-empty list", text, "pairs")
        pairs = []
        for p in pairs_doc:
            _require(isinstance(p, list) and len(p) == 2 and all(isinstance(x, str) for x in p),
                     "each pair must be [\"M\", \"N\"]", text, "pairs")
            for x in p:
                _require(x in modules, f"pair names unknown module {x!r}", text, "pairs")
            pairs.append((p[0], p[1]))

    task = doc.get("task", "report")
    _require(task in TASKS, f"unknown task {task!r} (expected one of {', '.join(TASKS)})", text, "task")

    bounds = doc.get("bounds", {})
    _require(isinstance(bounds, dict), "[bounds] must be a table", text, "bounds")
    J, D = bounds.get("J"), bounds.get("D")
    for nm, val in (("J", J), ("D", D)):
        _require(val is None or (isinstance(val, int) and val >= 0),
                 f"[bounds] {nm} must be a non-negative integer", text, nm)

    out = doc.get("output", {})
    _require(isinstance(out, dict), "[output] must be a table", text, "output")
    fmt = out.get("format", "json")
    _require(fmt in FORMATS, f"unknown output format {fmt!r}", text, "format")
    return JobSpec(ring, modules, pairs, task, J, D, fmt, out.get("path"))
