"""Command-line interface.

Exit codes: 0 success, 1 the fan failed validation, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import render
from .analysis import check_bounds, check_conjecture, classify_degree_n, summarize
from .curves import minimal_components, primitive_collections
from .errors import InvalidFan, MalformedFan, ParseError, ToricError, UnknownBuiltin
from .fan import BUILTINS, builtin_fan, product, star_subdivide, validate_fan
from .fanfile import parse_fan, read_fan, serialize_fan, to_document

EXIT_OK, EXIT_INVALID, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _parse_builtin(token, params):
    name, _, inline = token.partition(":")
    if inline:
        try:
            params = [int(p) for p in inline.split(",")]
        except ValueError:
            raise UsageError(f"bad builtin parameter in {token!r}") from None
    try:
        return builtin_fan(name, *params)
    except UnknownBuiltin as exc:
        raise UsageError(str(exc)) from None
    except ValueError as exc:
        raise UsageError(f"{name}: {exc}") from None


def _load_file(path):
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"no such file: {path}")
    return read_fan(p)


def _load_one(args):
    sources = [s for s in (args.fan,) if s] + list(args.builtin or [])
    if len(sources) != 1:
        raise UsageError("give exactly one fan: a file path or --builtin NAME")
    if args.fan:
        if args.param:
            raise UsageError("--param only applies to --builtin")
        return _load_file(args.fan)
    return _parse_builtin(args.builtin[0], args.param or [])


def _emit(out, sections, form):
    out.write(render.render(sections, form))


def _cmd_validate(args, out, err):
    if args.builtin:
        fan = _load_one(args)
        doc = to_document(fan)
    else:
        if not args.fan:
            raise UsageError("give exactly one fan: a file path or --builtin NAME")
        p = Path(args.fan)
        if not p.is_file():
            raise UsageError(f"no such file: {args.fan}")
        doc = parse_fan(p.read_text(encoding="utf-8"), source=str(p))
    report = validate_fan(doc.dim, doc.ray_rows, doc.cone_rows)
    _emit(out, [render.validation_section(report)], args.format)
    return EXIT_OK if report.ok else EXIT_INVALID


def _cmd_report(args, out, err):
    fan = _load_one(args)
    _emit(out, render.report_sections(summarize(fan)), args.format)
    return EXIT_OK


def _cmd_primitive_collections(args, out, err):
    fan = _load_one(args)
    _emit(out, [render.collections_section(primitive_collections(fan))], args.format)
    return EXIT_OK


def _cmd_minimal_components(args, out, err):
    fan = _load_one(args)
    _emit(out, [render.components_section(minimal_components(fan))], args.format)
    return EXIT_OK


def _cmd_check_bounds(args, out, err):
    fan = _load_one(args)
    _emit(out, [render.bounds_section(check_bounds(fan))], args.format)
    return EXIT_OK


def _cmd_check_conjecture(args, out, err):
    fan = _load_one(args)
    _emit(out, [render.conjecture_section(check_conjecture(fan))], args.format)
    return EXIT_OK


def _cmd_classify_degn(args, out, err):
    fan = _load_one(args)
    _emit(out, [render.classification_section(classify_degree_n(fan))], args.format)
    return EXIT_OK


def _write_result(fan, args, out):
    text = serialize_fan(to_document(fan))
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        out.write(f"wrote {args.output} ({fan.n_rays} rays, {len(fan.max_cones)} maximal cones)\n")
    else:
        out.write(text)


def _cmd_blowup(args, out, err):
    fan = _load_one(args)
    try:
        cone = tuple(int(t) for t in args.cone.split(","))
    except ValueError:
        raise UsageError(f"bad --cone {args.cone!r}; expected comma-separated ray indices") from None
    try:
        new = star_subdivide(fan, cone, name=f"{fan.name or 'fan'}_blowup_{'_'.join(map(str, cone))}")
    except (IndexError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    _write_result(new, args, out)
    return EXIT_OK


def _cmd_product(args, out, err):
    fans = [_load_file(p) for p in args.fans]
    fans += [_parse_builtin(b, []) for b in (args.builtin or [])]
    if len(fans) != 2:
        raise UsageError("product needs exactly two fans (files and/or --builtin NAME[:k])")
    _write_result(product(*fans), args, out)
    return EXIT_OK


def _cmd_builtin_list(args, out, err):
    items = []
    for name, spec in BUILTINS.items():
        params = ",".join(spec.params) or "-"
        items.append((f"builtin.{name}", f"params={params} {spec.description}"))
    _emit(out, [("Built-in fans", items)], args.format)
    return EXIT_OK


def _cmd_scan(args, out, err):
    root = Path(args.directory)
    if not root.is_dir():
        raise UsageError(f"no such directory: {args.directory}")
    code = EXIT_OK
    rows = []
    for path in sorted(root.glob("*.fan")):
        status = "ok"
        rep = None
        try:
            rep = summarize(read_fan(path))
        except ParseError as exc:
            status, code = f"parse_error ({exc})", EXIT_INVALID
        except (InvalidFan, MalformedFan) as exc:
            status, code = f"invalid ({exc})", EXIT_INVALID
        if args.format == "human":
            out.write(f"== {path.name} ==\n")
        else:
            out.write(f"file = {path.name}\n")
        if rep is not None:
            _emit(out, render.report_sections(rep), args.format)
        else:
            out.write(f"status = {status}\n")
        out.write("\n" if args.format == "human" else "")
        rows.append((path.name, status, rep))
    items = [("scan.files", len(rows))]
    for name, status, rep in rows:
        if rep is None:
            items.append((f"scan.{name}", status))
            continue
        conj = rep.conjecture
        items.append((f"scan.{name}",
                      f"dim={rep.dim} rho={rep.rho} projective={render.fmt(rep.projective)} "
                      f"fano={render.fmt(rep.fano)} minimal_components={len(rep.components)} "
                      f"counterexample_candidate="
                      f"{render.fmt(conj.counterexample_candidate if conj else None)}"))
    _emit(out, [("Summary", items)], args.format)
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toricmrc",
        description="Minimal rational curves on smooth complete toric varieties.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "machine"), default="human")

    single = argparse.ArgumentParser(add_help=False)
    single.add_argument("fan", nargs="?", help="fan file")
    single.add_argument("--builtin", action="append", metavar="NAME[:k]",
                        help="use a built-in fan instead of a file")
    single.add_argument("--param", action="append", type=int, metavar="K",
                        help="parameter for --builtin (repeatable)")

    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("-o", "--output", help="write the resulting fan here (default: stdout)")

    commands = [
        ("validate", _cmd_validate, "check smoothness, fan axioms and completeness", [single]),
        ("report", _cmd_report, "full analysis report", [single]),
        ("primitive-collections", _cmd_primitive_collections,
         "list primitive collections and relations", [single]),
        ("minimal-components", _cmd_minimal_components,
         "list minimal rational components", [single]),
        ("check-bounds", _cmd_check_bounds, "counting bounds on minimal components", [single]),
        ("check-conjecture", _cmd_check_conjecture,
         "conjectural Picard-number bound and Mukai-type bounds", [single]),
        ("classify-degn", _cmd_classify_degn,
         "classify Fano n-folds with a degree-n minimal component", [single]),
        ("blowup", _cmd_blowup, "star subdivision along a cone", [single, output]),
        ("product", _cmd_product, "product of two fans", [output]),
        ("builtin-list", _cmd_builtin_list, "list built-in fans", []),
        ("scan", _cmd_scan, "report on every *.fan file in a directory", []),
    ]
    for name, fn, help_, parents in commands:
        p = sub.add_parser(name, help=help_, parents=[common] + parents)
        p.set_defaults(func=fn)
        if name == "blowup":
            p.add_argument("--cone", required=True, help="comma-separated zero-based ray indices")
        elif name == "product":
            p.add_argument("fans", nargs="*", help="fan files")
            p.add_argument("--builtin", action="append", metavar="NAME[:k]")
        elif name == "scan":
            p.add_argument("directory")
    return parser


def run_cli(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, out, err)
    except UsageError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except ParseError as exc:
        err.write(f"parse error: {exc}\n")
        return EXIT_USAGE
    except MalformedFan as exc:
        err.write(f"malformed fan: {exc}\n")
        return EXIT_USAGE
    except InvalidFan as exc:
        err.write(f"invalid fan: {exc}\n")
        err.write(render.render([render.validation_section(exc.report)], "human"))
        return EXIT_INVALID
    except ToricError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INVALID


def main():
    try:
        code = run_cli()
        sys.stdout.flush()
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the interpreter's flush too
        sys.stdout = open(os.devnull, "w")
        code = 0
    sys.exit(code)
