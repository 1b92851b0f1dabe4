"""Command-line front end.  Every subcommand prints one JSON report.

Exit codes
    0  success, claim holds
    1  negative answer (not LH, not maximal, violations found, ...)
    2  usage error (argparse)
    3  ParseError
    4  ValidationError
    5  other precondition failures
    6  TooLarge
    7  ReconstructionFailed
"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import asdict
from typing import Optional, Sequence

from . import enumeration
from .embedding import euler_genus, is_edge_maximal, trace_faces
from .errors import LHGraphError, PreconditionViolated, ValidationError
from .flowers import FlowerDecomposition, build_flower, flower_scheme, is_flower
from .hamiltonian import is_locally_hamiltonian
from .io import _loads, document, dumps, parse_input
from .triangulation import lemma1_candidates, oracle_embed, reconstruct_triangulation, side_decomposition


def _need_scheme(s):
    if s is None:
        raise PreconditionViolated("input has no 'embedding'")
    return s


def _faces_json(g, s):
    return [
        {"length": len(f), "darts": [[d.edge, d.end] for d in f.darts], "vertices": [g.labels[v] for v in f.vertices(g)]}
        for f in trace_faces(s)
    ]


def cmd_check_lh(args):
    g, _ = parse_input(args.input)
    ok, info = is_locally_hamiltonian(g)
    if ok:
        return 0, {"locally_hamiltonian": True, "certificate": info.to_json(g)}
    return 1, {"locally_hamiltonian": False, "failing_vertex": g.labels[info]}


def cmd_faces(args):
    g, s = parse_input(args.input)
    _need_scheme(s)
    faces = _faces_json(g, s)
    return 0, {"face_count": len(faces), "faces": faces}


def cmd_genus(args):
    g, s = parse_input(args.input)
    _need_scheme(s)
    return 0, {
        "n": g.n,
        "m": g.m,
        "faces": s.face_count(),
        "euler_genus": euler_genus(s),
        "orientable": s.is_orientable(),
    }


def cmd_check_maximal(args):
    g, s = parse_input(args.input)
    ok, w = is_edge_maximal(_need_scheme(s))
    if ok:
        return 0, {"edge_maximal": True}
    return 1, {
        "edge_maximal": False,
        "witness": {"u": g.labels[w.u], "v": g.labels[w.v], "face": [[d.edge, d.end] for d in w.face.darts]},
    }


def cmd_reconstruct(args):
    g, _ = parse_input(args.input)
    s, trace = reconstruct_triangulation(g)
    report = {
        "document": document(g, s),
        "euler_genus": euler_genus(s),
        "faces": s.face_count(),
        "attempts": trace.attempts,
        "backtracks": trace.backtracks,
    }
    if args.emit_trace:
        report["trace"] = trace.to_json(g)
    return 0, report


def cmd_oracle(args):
    g, _ = parse_input(args.input)
    s = oracle_embed(g)
    if s is None:
        return 1, {"sphere_triangulation": False}
    return 0, {"sphere_triangulation": True, "document": document(g, s)}


def cmd_lemma1(args):
    g, s = parse_input(args.input)
    _need_scheme(s)
    try:
        cycle = [int(x) for x in args.cycle.split(",")]
    except ValueError:
        raise ValidationError("--cycle must be comma-separated edge ids") from None
    dec = side_decomposition(s, cycle)
    found = lemma1_candidates(s, cycle, args.side)
    return (0 if len(found) >= 2 else 1), {
        "cycle": cycle,
        "side": args.side,
        "interior": sorted(g.labels[v] for v in dec.interior),
        "exterior": sorted(g.labels[v] for v in dec.exterior),
        "candidates": [g.labels[v] for v in found],
    }


def _read_text(path):
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def cmd_flower_build(args):
    data = _loads(_read_text(args.input))
    if not isinstance(data, dict):
        raise ValidationError("flower decomposition must be an object")
    d = FlowerDecomposition.from_json(data)
    # emits a plain graph document so it can be piped into other subcommands
    return 0, document(build_flower(d), flower_scheme(d))


def cmd_flower_recognize(args):
    g, _ = parse_input(args.input)
    d = is_flower(g)
    if d is None:
        return 1, {"flower": False}
    return 0, {"flower": True, "decomposition": d.to_json()}


def cmd_enumerate(args):
    threads = args.threads or os.cpu_count() or 1
    if args.claim == "lemma1":
        rep = enumeration.verify_lemma1()
    else:
        defaults = {
            "lh-bound": enumeration.MULTI_DEFAULT if (args.max_multiplicity or 1) > 1 else enumeration.SIMPLE_DEFAULT,
            "maximal": enumeration.SIMPLE_DEFAULT,
            "loop-bound": enumeration.LOOP_DEFAULT,
        }[args.claim]
        fields = asdict(defaults)
        if args.max_n is not None:
            fields["max_n"] = args.max_n
        if args.max_multiplicity is not None:
            fields["max_multiplicity"] = args.max_multiplicity
        if args.allow_loops:
            fields["allow_loops"] = True
        rep = enumeration.CLAIMS[args.claim](enumeration.EnumerationRange(**fields), threads=threads)
    return (0 if rep.ok else 1), rep.to_dict(timing=not args.no_timing)


def cmd_fixtures(args):
    from .fixtures import write_fixtures

    out = args.output or "fixtures"
    written = write_fixtures(out)
    args.output = None  # the report itself goes to stdout
    return 0, {"directory": out, "files": [os.path.basename(p) for p in written]}


COMMANDS = {
    "check-lh": (cmd_check_lh, "decide local Hamiltonicity, with certificate"),
    "faces": (cmd_faces, "list facial walks of the input scheme"),
    "genus": (cmd_genus, "Euler genus of the input scheme"),
    "check-maximal": (cmd_check_maximal, "decide edge-maximality, with witness"),
    "reconstruct": (cmd_reconstruct, "embed an LH graph with m = 3n-6 on the sphere"),
    "oracle": (cmd_oracle, "brute-force sphere triangulation search (n <= 8)"),
    "lemma1": (cmd_lemma1, "interior-vertex finder for a separating 2- or 3-cycle"),
    "flower-build": (cmd_flower_build, "build a flower and its scheme from a decomposition"),
    "flower-recognize": (cmd_flower_recognize, "recognize a flower and return a decomposition"),
    "enumerate": (cmd_enumerate, "exhaustive claim verification"),
    "fixtures": (cmd_fixtures, "write bundled example graphs to a directory"),
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lhgraph", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, (_, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("input_pos", nargs="?", metavar="INPUT", help="input file (same as --input)")
        sp.add_argument("--input", help="input JSON file, default standard input")
        sp.add_argument("--output", help="write the report here instead of standard output")
        if name == "reconstruct":
            sp.add_argument("--emit-trace", action="store_true")
        if name == "lemma1":
            sp.add_argument("--cycle", required=True, help="comma-separated edge ids of a 2- or 3-cycle")
            sp.add_argument("--side", choices=["interior", "exterior"], default="interior")
        if name == "enumerate":
            sp.add_argument("--claim", required=True, choices=list(enumeration.CLAIMS))
            sp.add_argument("--max-n", type=int)
            sp.add_argument("--max-multiplicity", type=int)
            sp.add_argument("--allow-loops", action="store_true")
            sp.add_argument("--threads", type=int, help="worker processes, default all cores")
            sp.add_argument("--no-timing", action="store_true", help="omit wall-clock fields")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.input_pos is not None:
        if args.input is not None:
            build_parser().error("give the input either positionally or with --input")
        args.input = args.input_pos
    fn = COMMANDS[args.command][0]
    try:
        code, report = fn(args)
    except LHGraphError as exc:
        code = exc.exit_code
        report = {"error": type(exc).__name__, "message": str(exc)}
        tag = getattr(exc, "tag", None)
        if tag:
            report["tag"] = tag
    except OSError as exc:
        code, report = 4, {"error": "ValidationError", "message": f"cannot read input: {exc}"}
    text = dumps(report)
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
