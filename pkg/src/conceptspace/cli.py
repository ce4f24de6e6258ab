"""``conceptspace`` command line.

Documents are given as a path, ``-`` for standard input, or
``corpus:NAME`` for a bundled space.  Exit status is 0 on success, 1 on
domain errors and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from itertools import cycle

from . import artifact as art
from . import io, oracle, space as sp, transform as tf
from .errors import ConceptSpaceError, TheoremViolation, VacuousTheorem

TRIAL_PROBABILITIES = (Fraction(1, 10), Fraction(3, 10), Fraction(7, 10))
TRIAL_VERTICES = (5, 50)


class UsageError(Exception):
    pass


def read_text(ref: str) -> str:
    if ref == "-":
        return sys.stdin.read()
    if ref.startswith("corpus:"):
        return io.corpus_text(ref[len("corpus:"):])
    try:
        with open(ref, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {ref}: {exc.strerror}") from None


def load(ref: str) -> io.SpaceDocument:
    return io.parse_document(read_text(ref))


def ids_arg(text: str) -> frozenset[str]:
    return frozenset(x.strip() for x in text.split(",") if x.strip())


def need_vertex(args):
    if not args.vertex:
        raise UsageError(f"{args.command} needs --vertex")
    return args.vertex


def emit(args, text_lines, payload):
    if args.output == "json":
        return io.dumps(payload)
    return "".join(f"{line}\n" for line in text_lines)


def render_fraction(fr: Fraction) -> str:
    return f"{fr.numerator}/{fr.denominator}" if fr.denominator != 1 else str(fr.numerator)


# --- commands ----------------------------------------------------------------

def cmd_validate(args):
    doc = load(args.document)
    s = doc.space
    n_axioms = len(sp.axioms(s))
    unverified = sum(1 for a in doc.artifacts if not a.verified)
    unverifiable = sp.unverifiable_edges(s)
    warnings = sp.axiom_warnings(s)
    lines = [
        f"valid {s.name}: {len(s.vertices)} vertices, {len(s.edges)} edges, {n_axioms} axioms",
        f"artifacts: {len(doc.artifacts)} ({unverified} unverified)",
        f"unverifiable edges: {len(unverifiable)}",
    ]
    lines += [f"warning: content of axiom {a} lies inside content of {v}" for a, v in warnings]
    return emit(args, lines, {
        "valid": True,
        "name": s.name,
        "vertices": len(s.vertices),
        "edges": len(s.edges),
        "axioms": n_axioms,
        "artifacts": len(doc.artifacts),
        "unverified_artifacts": unverified,
        "unverifiable_edges": [list(e) for e in unverifiable],
        "axiom_warnings": [list(w) for w in warnings],
    })


def cmd_axioms(args):
    found = sorted(sp.axioms(load(args.document).space))
    return emit(args, found, found)


def cmd_potential(args):
    s = load(args.document).space
    if args.vertex:
        value = sp.transformative_potential(s, args.vertex)
        return emit(args, [str(value)], {args.vertex: value})
    table = {v: sp.transformative_potential(s, v) for v in s.ids}
    return emit(args, [f"{v}\t{p}" for v, p in table.items()], table)


def _reach_cmd(kind):
    def run(args):
        s = load(args.document).space
        vid = need_vertex(args)
        s.vertex(vid)
        found = sorted(getattr(sp.reach_sets(s), kind)[vid])
        return emit(args, found, found)
    return run


def cmd_impact(args):
    doc = load(args.document)
    vid = need_vertex(args)
    report = tf.impact(doc.space, vid)
    lines = [
        f"target: {report.target}",
        f"potential: {report.potential}",
        f"touched: {' '.join(sorted(report.touched))}",
    ]
    return emit(args, lines, {
        "target": report.target,
        "potential": report.potential,
        "touched": sorted(report.touched),
    })


def _load_script(doc, ref):
    if ref in doc.scripts:
        return doc.scripts[ref]
    return io.parse_script(read_text(ref))


def cmd_apply(args):
    doc = load(args.document)
    if not args.script:
        raise UsageError("apply needs --script")
    script = _load_script(doc, args.script)
    result = tf.apply_script(doc.space, script, mode=args.mode)
    return io.write_space(result)


def cmd_diff(args):
    if not args.dest:
        raise UsageError("diff needs a source and a destination document")
    src, dst = load(args.document).space, load(args.dest).space
    return io.write_script(tf.diff(src, dst))


def _artifacts_from_args(args, doc, want):
    if args.support:
        found = [art.Artifact("phenomenon", ids_arg(s), "") for s in args.support]
    elif doc is not None:
        picks = args.artifact or list(range(want))
        try:
            found = [doc.artifacts[i] for i in picks]
        except IndexError:
            raise UsageError(f"document has {len(doc.artifacts)} artifacts") from None
    else:
        raise UsageError("give --support sets or a document with artifacts")
    if len(found) != want:
        raise UsageError(f"expected {want} artifact(s), got {len(found)}")
    return found


def cmd_similarity(args):
    doc = load(args.document) if args.document else None
    a, b = _artifacts_from_args(args, doc, 2)
    fr = art.similarity(a, b)
    decimal = f"{float(fr):.6f}"
    return emit(args, [f"{render_fraction(fr)} {decimal}"], {
        "numerator": fr.numerator,
        "denominator": fr.denominator,
        "decimal": decimal,
    })


def cmd_locate(args):
    doc = load(args.document)
    (a,) = _artifacts_from_args(args, doc, 1)
    loc = art.locate(doc.space, a)
    return emit(
        args,
        [f"support: {' '.join(sorted(loc.support))}", f"closure: {' '.join(sorted(loc.closure))}"],
        {"support": sorted(loc.support), "closure": sorted(loc.closure)},
    )


def cmd_induce(args):
    doc = load(args.document)
    contents = {v.id: v.content for v in doc.space.vertices if v.content is not None}
    labels = {v.id: v.label for v in doc.space.vertices}
    induced = art.induce_space(doc.space.name, doc.artifacts, contents, labels, doc.headers)
    return io.write_document(io.SpaceDocument(induced, doc.artifacts, headers=doc.headers))


def cmd_generate(args):
    doc = load(args.document)
    if not args.support:
        raise UsageError("generate needs --support")
    a = art.generate_artifact(doc.space, args.header, ids_arg(args.support[0]), doc.headers)
    return emit(
        args,
        [f"header: {a.header}", f"support: {' '.join(sorted(a.support))}", f"witness: {a.witness}"],
        io.artifact_json(a),
    )


def cmd_export_dot(args):
    s = load(args.document).space
    if args.figure:
        from .plotting import render_space

        render_space(s, args.figure)
    return io.export_dot(s)


def cmd_check_theorem(args):
    if args.document:
        verdict = sp.check_theorem(load(args.document).space)
        if args.require_nonvacuous and not verdict.holds:
            raise VacuousTheorem("every vertex is an axiom")
        payload = {"verdict": verdict.verdict.value, "axioms": list(verdict.axioms)}
        if verdict.holds:
            payload.update(value=verdict.value, maximizers=list(verdict.maximizers))
        return emit(args, [str(verdict)], payload)
    if args.seed is None:
        raise UsageError("check-theorem needs a document or --seed for random mode")
    trials = args.trials
    held = 0
    probs = cycle(TRIAL_PROBABILITIES)
    for s in _trial_seeds(args.seed, trials):
        g = oracle.random_dag(oracle.DagGenParams(TRIAL_VERTICES, next(probs), s, True))
        if sp.check_theorem(g).holds:
            held += 1
    line = f"HOLDS trials={trials} held={held} seed={args.seed}"
    return emit(args, [line], {"verdict": "HOLDS", "trials": trials, "held": held, "seed": args.seed})


def _trial_seeds(seed, count):
    import numpy as np

    return [int(x) for x in np.random.SeedSequence(seed).generate_state(count, dtype=np.uint64)]


def cmd_corpus(args):
    if not args.document:
        return emit(args, list(io.CORPUS_NAMES), list(io.CORPUS_NAMES))
    return io.corpus_text(args.document)


COMMANDS = {
    "validate": (cmd_validate, "validate a document"),
    "axioms": (cmd_axioms, "list the axioms (sink vertices)"),
    "potential": (cmd_potential, "transformative potential of one or all vertices"),
    "depends": (_reach_cmd("depends"), "vertices that depend on --vertex"),
    "prereq": (_reach_cmd("prereq"), "vertices that --vertex depends on"),
    "impact": (cmd_impact, "impact report for modifying --vertex"),
    "apply": (cmd_apply, "apply a transformation script"),
    "diff": (cmd_diff, "script turning one space into another"),
    "similarity": (cmd_similarity, "Jaccard similarity of two artifacts"),
    "locate": (cmd_locate, "support and closure of an artifact"),
    "induce": (cmd_induce, "induce edges from artifact supports and vertex contents"),
    "generate": (cmd_generate, "generate an artifact from a support set"),
    "export-dot": (cmd_export_dot, "Graphviz export (optionally a matplotlib figure)"),
    "check-theorem": (cmd_check_theorem, "check that potential is maximized at axioms"),
    "corpus": (cmd_corpus, "list or print bundled spaces"),
}


def u64(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("text", "json"), default="text")
    parser = argparse.ArgumentParser(prog="conceptspace", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("document", nargs="?", help="path, '-' or corpus:NAME")
        if name == "diff":
            p.add_argument("dest", nargs="?", help="destination document")
        p.add_argument("--vertex")
        p.add_argument("--script", help="script name inside the document, or a script file")
        mode = p.add_mutually_exclusive_group()
        mode.add_argument("--strict", dest="mode", action="store_const", const=tf.STRICT)
        mode.add_argument("--lenient", dest="mode", action="store_const", const=tf.LENIENT)
        p.add_argument("--artifact", type=int, action="append", help="artifact index (repeatable)")
        p.add_argument("--support", action="append", help="comma-separated ids (repeatable)")
        p.add_argument("--header", default="phenomenon")
        p.add_argument("--seed", type=u64)
        p.add_argument("--trials", type=int, default=1000)
        p.add_argument("--require-nonvacuous", action="store_true")
        p.add_argument("--figure", help="also render the space to this image file")
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    needs_doc = args.command not in ("corpus", "check-theorem", "similarity")
    try:
        if needs_doc and not args.document:
            raise UsageError(f"{args.command} needs a document")
        out = COMMANDS[args.command][0](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return 2
    except ConceptSpaceError as exc:
        print(f"{type(exc).__name__}: {exc}", file=stderr)
        return 1
    except TheoremViolation as exc:
        print(f"internal error, theorem check failed: {exc}", file=stderr)
        return 1
    stdout.write(out)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
