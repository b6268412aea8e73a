"""Instance files, reports and the ``sepiso`` command line.

Instance file format (UTF-8, line oriented, ``#`` starts a comment)::

    [group Z2]
    elements = e a
    table =
    e a
    a e

    [space X]
    points = x0 x1 x2

    [code even]
    group = Z2
    space = X
    generators =
    a a e
    a e a

    [hom swap]
    from = even
    to = even
    map =
    a a e -> a e a
    a e a -> a a e

Reports are ``key = value`` lines in a fixed order.
"""

from __future__ import annotations

import argparse
import re
import sys
from dataclasses import dataclass, field
from typing import Callable

from sepiso.codes import DEFAULT_CODE_CAP, FunctionGroup, Verdict, check_code, generate_code
from sepiso.errors import (
    ClosureOverflow,
    GroupError,
    NotBijective,
    NotEquivalent,
    SepisoError,
)
from sepiso.groups import FiniteGroup, GroupMap, validate_group
from sepiso.homs import CodeHom, build_hom, is_biseparating, is_separating
from sepiso.representation import (
    DEFAULT_SEARCH_CAP,
    Decomposition,
    check_paper_propositions,
    decide_equivalence,
    decompose,
    minimal_supports_oracle,
    point_functional,
)
from sepiso.spaces import DEFAULT_CLOSURE_CAP, PointSpace

COMMANDS = ("check-code", "check-hom", "decompose", "equivalent", "oracle-supports", "props")

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2


class InstanceError(SepisoError):
    def __init__(self, line: int | None, message: str):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)


class InstanceSyntaxError(InstanceError):
    pass


class UnknownReference(InstanceError):
    def __init__(self, line: int | None, kind: str, name: str):
        self.kind, self.name = kind, name
        super().__init__(line, f"unknown {kind} {name!r}")


class ValidationError(InstanceError):
    def __init__(self, line: int | None, cause: Exception):
        self.cause = cause
        super().__init__(line, f"{type(cause).__name__}: {cause}")


@dataclass
class InstanceFile:
    groups: dict[str, FiniteGroup] = field(default_factory=dict)
    spaces: dict[str, PointSpace] = field(default_factory=dict)
    codes: dict[str, FunctionGroup] = field(default_factory=dict)
    homs: dict[str, CodeHom] = field(default_factory=dict)
    # name -> (group name, space name) / (source code name, target code name)
    code_refs: dict[str, tuple[str, str]] = field(default_factory=dict)
    hom_refs: dict[str, tuple[str, str]] = field(default_factory=dict)


# --- parsing --------------------------------------------------------------------

_HEADER = re.compile(r"\[(group|space|code|hom)\s+([^\s\[\]=#]+)\]")
_SCALARS = {"group": {"elements"}, "space": {"points"}, "code": {"group", "space"}, "hom": {"from", "to"}}
_BLOCKS = {"group": {"table"}, "space": set(), "code": {"generators"}, "hom": {"map"}}
_BAD_LABEL = re.compile(r"[=#\[\]]|->")


@dataclass
class _Section:
    kind: str
    name: str
    line: int
    scalars: dict[str, tuple[str, int]] = field(default_factory=dict)
    blocks: dict[str, list[tuple[int, str]]] = field(default_factory=dict)
    block_lines: dict[str, int] = field(default_factory=dict)


def _split_sections(text: str) -> list[_Section]:
    sections: list[_Section] = []
    current: _Section | None = None
    block: str | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _HEADER.fullmatch(line)
        if m:
            current = _Section(m.group(1), m.group(2), lineno)
            sections.append(current)
            block = None
            continue
        if line.startswith("["):
            raise InstanceSyntaxError(lineno, f"malformed section header {line!r}")
        if current is None:
            raise InstanceSyntaxError(lineno, "content before the first section header")
        if "=" in line:
            key, _, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if key in current.scalars or key in current.blocks:
                raise InstanceSyntaxError(lineno, f"duplicate key {key!r}")
            if key in _BLOCKS[current.kind]:
                if value:
                    raise InstanceSyntaxError(lineno, f"{key!r} takes its rows on the following lines")
                current.blocks[key] = []
                current.block_lines[key] = lineno
                block = key
            elif key in _SCALARS[current.kind]:
                current.scalars[key] = (value, lineno)
                block = None
            else:
                raise InstanceSyntaxError(lineno, f"unknown key {key!r} in [{current.kind}]")
            continue
        if block is None:
            raise InstanceSyntaxError(lineno, f"unexpected line {line!r}")
        current.blocks[block].append((lineno, line))
    return sections


def _need(sec: _Section, key: str) -> tuple[str, int]:
    if key not in sec.scalars:
        raise InstanceSyntaxError(sec.line, f"[{sec.kind} {sec.name}] is missing {key!r}")
    return sec.scalars[key]


def _need_block(sec: _Section, key: str) -> list[tuple[int, str]]:
    if key not in sec.blocks:
        raise InstanceSyntaxError(sec.line, f"[{sec.kind} {sec.name}] is missing {key!r}")
    return sec.blocks[key]


def _labels(value: str, line: int) -> list[str]:
    labels = value.split()
    for lab in labels:
        if _BAD_LABEL.search(lab):
            raise InstanceSyntaxError(line, f"label {lab!r} contains a reserved character")
    return labels


def _row(group: FiniteGroup, text: str, width: int, line: int) -> tuple[int, ...]:
    labels = text.split()
    if len(labels) != width:
        raise InstanceSyntaxError(line, f"expected {width} values, got {len(labels)}")
    try:
        return tuple(group.index(lab) for lab in labels)
    except GroupError as exc:
        raise ValidationError(line, exc) from None


def parse_instance(text: str, code_cap: int = DEFAULT_CODE_CAP) -> InstanceFile:
    inst = InstanceFile()
    sections = _split_sections(text)
    seen: set[tuple[str, str]] = set()
    for sec in sections:
        if (sec.kind, sec.name) in seen:
            raise InstanceSyntaxError(sec.line, f"duplicate [{sec.kind} {sec.name}]")
        seen.add((sec.kind, sec.name))
    by_kind = {k: [s for s in sections if s.kind == k] for k in ("group", "space", "code", "hom")}

    for sec in by_kind["group"]:
        value, line = _need(sec, "elements")
        labels = _labels(value, line)
        rows = _need_block(sec, "table")
        if len(rows) != len(labels):
            raise InstanceSyntaxError(sec.block_lines["table"], f"table needs {len(labels)} rows, got {len(rows)}")
        table = []
        for lineno, row in rows:
            entries = row.split()
            if len(entries) != len(labels):
                raise InstanceSyntaxError(lineno, f"table row needs {len(labels)} entries")
            table.append(entries)
        try:
            inst.groups[sec.name] = validate_group(labels, table)
        except GroupError as exc:
            raise ValidationError(sec.block_lines["table"], exc) from None

    for sec in by_kind["space"]:
        value, line = _need(sec, "points")
        try:
            inst.spaces[sec.name] = PointSpace(tuple(_labels(value, line)))
        except ValueError as exc:
            raise ValidationError(line, exc) from None

    for sec in by_kind["code"]:
        gname, gline = _need(sec, "group")
        sname, sline = _need(sec, "space")
        if gname not in inst.groups:
            raise UnknownReference(gline, "group", gname)
        if sname not in inst.spaces:
            raise UnknownReference(sline, "space", sname)
        group, space = inst.groups[gname], inst.spaces[sname]
        gens = [_row(group, row, len(space), lineno) for lineno, row in _need_block(sec, "generators")]
        try:
            inst.codes[sec.name] = generate_code(space, group, gens, code_cap)
        except SepisoError as exc:
            raise ValidationError(sec.line, exc) from None
        inst.code_refs[sec.name] = (gname, sname)

    for sec in by_kind["hom"]:
        fname, fline = _need(sec, "from")
        tname, tline = _need(sec, "to")
        if fname not in inst.codes:
            raise UnknownReference(fline, "code", fname)
        if tname not in inst.codes:
            raise UnknownReference(tline, "code", tname)
        src, tgt = inst.codes[fname], inst.codes[tname]
        images: dict[tuple[int, ...], tuple[int, ...]] = {}
        for lineno, row in _need_block(sec, "map"):
            if "->" not in row:
                raise InstanceSyntaxError(lineno, "map rows look like '<values> -> <values>'")
            lhs, _, rhs = row.partition("->")
            key = _row(src.group, lhs, src.n_points, lineno)
            val = _row(tgt.group, rhs, tgt.n_points, lineno)
            if key not in src.generators:
                raise ValidationError(lineno, SepisoError(f"{lhs.strip()} is not a generator of {fname}"))
            if images.setdefault(key, val) != val:
                raise InstanceSyntaxError(lineno, f"generator {lhs.strip()} mapped twice")
        missing = [g for g in src.generators if g not in images]
        if missing:
            shown = " ".join(src.group.labels[v] for v in missing[0])
            raise ValidationError(sec.line, SepisoError(f"no image given for generator {shown}"))
        try:
            inst.homs[sec.name] = build_hom(src, tgt, [images[g] for g in src.generators])
        except SepisoError as exc:
            raise ValidationError(sec.line, exc) from None
        inst.hom_refs[sec.name] = (fname, tname)
    return inst


def serialize_instance(inst: InstanceFile) -> str:
    """Canonical text: groups, spaces, codes, homs; one blank line between sections."""
    chunks = []
    for name, g in inst.groups.items():
        lines = [f"[group {name}]", "elements = " + " ".join(g.labels), "table ="]
        lines += [" ".join(g.labels[c] for c in row) for row in g.table]
        chunks.append(lines)
    for name, s in inst.spaces.items():
        chunks.append([f"[space {name}]", "points = " + " ".join(s.labels)])
    for name, c in inst.codes.items():
        gname, sname = inst.code_refs[name]
        lines = [f"[code {name}]", f"group = {gname}", f"space = {sname}", "generators ="]
        lines += [" ".join(c.group.labels[v] for v in gen) for gen in c.generators]
        chunks.append(lines)
    for name, h in inst.homs.items():
        fname, tname = inst.hom_refs[name]
        lab = h.source.group.labels
        lines = [f"[hom {name}]", f"from = {fname}", f"to = {tname}", "map ="]
        for gen, img in zip(h.source.generators, h.generator_images):
            lines.append(" ".join(lab[v] for v in gen) + " -> " + " ".join(lab[v] for v in img))
        chunks.append(lines)
    return "\n\n".join("\n".join(c) for c in chunks) + "\n"


# --- reports --------------------------------------------------------------------


@dataclass
class Report:
    lines: list[str] = field(default_factory=list)
    exit_status: int = EXIT_OK

    def add(self, key: str, value) -> None:
        if isinstance(value, bool):
            value = "true" if value else "false"
        self.lines.append(f"{key} = {value}")

    def error(self, key: str, exc: Exception) -> None:
        self.add(key, f"{type(exc).__name__}: {exc}")
        self.exit_status = EXIT_ERROR

    def negative(self) -> None:
        if self.exit_status == EXIT_OK:
            self.exit_status = EXIT_NEGATIVE

    @property
    def text(self) -> str:
        return "\n".join(self.lines + [f"exit = {self.exit_status}"]) + "\n"


@dataclass
class Options:
    cap_closure: int = DEFAULT_CLOSURE_CAP
    cap_code: int = DEFAULT_CODE_CAP
    cap_search: int = DEFAULT_SEARCH_CAP
    oracle: bool = False
    codes: list[str] = field(default_factory=list)
    homs: list[str] = field(default_factory=list)


def _fmt_points(space: PointSpace, pts) -> str:
    return " ".join(space.labels[p] for p in pts)


def _emit_verdict(rep: Report, key: str, v: Verdict, witness: Callable | None = None) -> None:
    rep.add(key, v.holds)
    if not v.holds and v.witness is not None and witness is not None:
        for k, val in witness(v.witness):
            rep.add(f"{key}.witness{k}", val)


def _check_code(rep: Report, name: str, code: FunctionGroup, opts: Options) -> None:
    key = f"code.{name}"
    sp = code.space
    rep.add(f"{key}.size", len(code))
    hyp = check_code(code, opts.cap_closure)
    _emit_verdict(rep, f"{key}.separates_points", hyp.separates_points, lambda w: [("", _fmt_points(sp, w))])
    _emit_verdict(
        rep, f"{key}.strongly_separates_points", hyp.strongly_separates_points, lambda w: [("", _fmt_points(sp, w))]
    )
    _emit_verdict(rep, f"{key}.pointwise_dense", hyp.pointwise_dense, lambda w: [("", sp.labels[w])])
    if hyp.controllable is None:
        rep.add(f"{key}.controllable", "unknown")
        rep.error(f"{key}.controllable.error", ClosureOverflow(opts.cap_closure + 1, opts.cap_closure))
        return
    _emit_verdict(
        rep,
        f"{key}.controllable",
        hyp.controllable,
        lambda w: [(".f", code.format_element(w[0])), (".D1", str(w[1])), (".D2", str(w[2]))],
    )


def _weights(rep: Report, key: str, fn: str, pointlab, weights: tuple[GroupMap, ...]) -> None:
    for p, w in zip(pointlab, weights):
        for g, v in w.labelled():
            rep.add(f"{key}.{fn}({p})({g})", v)


def _check_hom(rep: Report, name: str, hom: CodeHom, opts: Options) -> None:
    key = f"hom.{name}"
    src = hom.source
    rep.add(f"{key}.injective", hom.is_injective())
    rep.add(f"{key}.bijective", hom.is_bijective())
    sep = is_separating(hom)
    _emit_verdict(
        rep,
        f"{key}.separating",
        sep,
        lambda w: [(".f", src.format_element(w[0])), (".g", src.format_element(w[1]))],
    )
    try:
        bis = is_biseparating(hom)
    except NotBijective:
        rep.add(f"{key}.biseparating", "undefined")
        return
    rep.add(f"{key}.biseparating", bis.holds)
    if not bis.holds:
        direction, (i, j) = bis.witness
        code = src if direction == "forward" else hom.target
        rep.add(f"{key}.biseparating.witness.direction", direction)
        rep.add(f"{key}.biseparating.witness.f", code.format_element(i))
        rep.add(f"{key}.biseparating.witness.g", code.format_element(j))


def _emit_decomposition(rep: Report, key: str, d: Decomposition, fn_h="h", fn_w="omega") -> None:
    xl = d.hom.source.space.labels
    yl = d.hom.target.space.labels
    for y, x in enumerate(d.support_map):
        rep.add(f"{key}.{fn_h}({yl[y]})", xl[x])
    _weights(rep, key, fn_w, yl, d.weights)
    for y, kind in zip(yl, d.weight_kinds):
        rep.add(f"{key}.kind({y})", kind)


def _decompose(rep: Report, name: str, hom: CodeHom, opts: Options) -> None:
    key = f"hom.{name}"
    d = decompose(hom, opts.cap_closure, oracle=opts.oracle)
    _emit_decomposition(rep, key, d)
    rep.add(f"{key}.theorem_hypotheses", d.theorem_applies)
    rep.add(f"{key}.h_bijective", d.is_bijective_support())
    rep.add(f"{key}.all_automorphisms", all(w.is_bijective() for w in d.weights))
    if opts.oracle:
        rep.add(f"{key}.oracle_agreement", True)
    if d.inverse is None:
        rep.add(f"{key}.inverse_consistent", "n/a")
        return
    inv = d.inverse
    xl, yl = hom.source.space.labels, hom.target.space.labels
    for x, y in enumerate(inv.support_map):
        rep.add(f"{key}.inverse.k({xl[x]})", yl[y])
    _weights(rep, f"{key}.inverse", "rho", xl, inv.weights)
    rep.add(f"{key}.inverse_consistent", bool(d.inverse_consistent))


def _oracle_supports(rep: Report, name: str, hom: CodeHom, opts: Options) -> None:
    key = f"hom.{name}"
    yl = hom.target.space.labels
    for y in range(hom.target.n_points):
        phi = point_functional(hom, y)
        if phi.is_null:
            rep.add(f"{key}.supports({yl[y]})", "null")
            continue
        sr = minimal_supports_oracle(phi)
        rep.add(f"{key}.supports({yl[y]})", " ".join(str(s) for s in sr.minimal_supports))
        rep.add(f"{key}.singleton_minimum({yl[y]})", sr.is_singleton_minimum)


def _props(rep: Report, name: str, hom: CodeHom, opts: Options) -> None:
    key = f"hom.{name}"
    report = check_paper_propositions(hom, opts.cap_closure)
    for r in report.results:
        rep.add(f"{key}.{r.name}", r.status)
        if r.detail and r.status == "fail":
            rep.add(f"{key}.{r.name}.witness", r.detail)
    rep.add(f"{key}.all_pass", report.passed)
    if not report.passed:
        rep.negative()


def _selected(names: list[str], pool: dict, kind: str) -> list[str]:
    for n in names:
        if n not in pool:
            raise UnknownReference(None, kind, n)
    return names or list(pool)


def run_command(command: str, inst: InstanceFile, opts: Options | None = None) -> Report:
    opts = opts or Options()
    rep = Report()
    rep.add("command", command)
    if command not in COMMANDS:
        rep.error("error", SepisoError(f"unknown command {command!r}"))
        return rep
    try:
        if command == "check-code":
            for name in _selected(opts.codes, inst.codes, "code"):
                _guard(rep, f"code.{name}", _check_code, name, inst.codes[name], opts)
        elif command == "equivalent":
            names = opts.codes or list(inst.codes)[:2]
            if len(names) != 2:
                raise SepisoError("equivalent needs exactly two codes")
            for n in names:
                if n not in inst.codes:
                    raise UnknownReference(None, "code", n)
            _equivalent(rep, names[0], names[1], inst, opts)
        else:
            step = {
                "check-hom": _check_hom,
                "decompose": _decompose,
                "oracle-supports": _oracle_supports,
                "props": _props,
            }[command]
            for name in _selected(opts.homs, inst.homs, "hom"):
                _guard(rep, f"hom.{name}", step, name, inst.homs[name], opts)
    except SepisoError as exc:
        rep.error("error", exc)
    return rep


def _guard(rep: Report, key: str, step, name, obj, opts: Options) -> None:
    try:
        step(rep, name, obj, opts)
    except SepisoError as exc:
        rep.error(f"{key}.error", exc)


def _equivalent(rep: Report, a: str, b: str, inst: InstanceFile, opts: Options) -> None:
    rep.add("pair", f"{a} {b}")
    try:
        cert = decide_equivalence(inst.codes[a], inst.codes[b], opts.cap_search)
    except NotEquivalent as exc:
        rep.add("equivalent", False)
        rep.add("reason", exc.reason)
        rep.negative()
        return
    rep.add("equivalent", True)
    _emit_decomposition(rep, "certificate", cert)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="sepiso",
        description="Check separating homomorphisms between group codes and decompose them "
        "as weighted composition operators.",
    )
    p.add_argument("command", choices=COMMANDS + ("format",))
    p.add_argument("instance", help="instance file ('-' for stdin)")
    p.add_argument("--code", action="append", default=[], help="restrict to this code (repeatable)")
    p.add_argument("--hom", action="append", default=[], help="restrict to this hom (repeatable)")
    p.add_argument("--cap-closure", type=int, default=DEFAULT_CLOSURE_CAP, help="sigma-closure size cap")
    p.add_argument("--cap-code", type=int, default=DEFAULT_CODE_CAP, help="code size cap")
    p.add_argument("--cap-search", type=int, default=DEFAULT_SEARCH_CAP, help="equivalence search budget")
    p.add_argument("--oracle", action="store_true", help="cross-check supports by brute force on decompose")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.instance == "-":
            text = sys.stdin.read()
        else:
            with open(args.instance, encoding="utf-8") as fh:
                text = fh.read()
        inst = parse_instance(text, args.cap_code)
    except (OSError, SepisoError) as exc:
        rep = Report()
        rep.add("command", args.command)
        rep.error("error", exc)
        sys.stdout.write(rep.text)
        return rep.exit_status
    if args.command == "format":
        sys.stdout.write(serialize_instance(inst))
        return EXIT_OK
    opts = Options(
        cap_closure=args.cap_closure,
        cap_code=args.cap_code,
        cap_search=args.cap_search,
        oracle=args.oracle,
        codes=args.code,
        homs=args.hom,
    )
    rep = run_command(args.command, inst, opts)
    sys.stdout.write(rep.text)
    return rep.exit_status


if __name__ == "__main__":
    sys.exit(main())
