"""Command-line front end.

Exit status is 0 on success, 1 when the domain verdict is a failure
(invalid graph, Markov violations found) and 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import equivalence, faithfulness, gaussian, independence, io, parameterization, separation
from .graph import ChainGraph, ancestors, validate


class UsageError(Exception):
    pass


def _emit(args, obj) -> None:
    text = json.dumps(obj, indent=2) if isinstance(obj, (dict, list)) else str(obj)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _load_graph(args) -> ChainGraph:
    try:
        g = io.read_graph(args.graph, args.auto_declare)
    except OSError as exc:
        raise UsageError(f"cannot read {args.graph}: {exc.strerror}") from None
    except io.GraphParseError as exc:
        raise UsageError(f"{args.graph}: {exc}") from None
    return g


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _ids(labels: dict[str, int], text: str | None) -> set[int]:
    if not text:
        return set()
    out = set()
    for tok in text.split(","):
        tok = tok.strip()
        if tok not in labels:
            raise UsageError(f"unknown vertex {tok!r}")
        out.add(labels[tok])
    return out


def _require_cg(g: ChainGraph) -> None:
    if validate(g):
        raise UsageError("input graph is not a chain graph (run 'validate')")


def cmd_validate(args) -> int:
    g = _load_graph(args)
    violations = validate(g)
    if args.json:
        _emit(args, {"ok": not violations,
                     "violations": [{"kind": v.kind, "message": v.message} for v in violations]})
    elif violations:
        for v in violations:
            print(f"{v.kind}: {v.message}")
    else:
        print("ok")
    return 1 if violations else 0


def cmd_separate(args) -> int:
    g = _load_graph(args)
    _require_cg(g)
    labels = {g.label(v): v for v in g.vertices}
    I, J, K = _ids(labels, args.I), _ids(labels, args.J), _ids(labels, args.K)
    try:
        verdict = separation.separated(g, I, J, K)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.json:
        anc = sorted(ancestors(g, I | J | K))
        m = separation.moralized_ancestral_graph(g, I | J | K)
        _emit(args, {
            "separated": verdict,
            "ancestral_set": [g.label(v) for v in anc],
            "moral_edges": [[g.label(a), g.label(b)] for a, b in m.undirected],
        })
    else:
        print("true" if verdict else "false")
    return 0


def cmd_dim(args) -> int:
    g = _load_graph(args)
    _require_cg(g)
    print(parameterization.dimension(g))
    return 0


def cmd_sample(args) -> int:
    g = _load_graph(args)
    _require_cg(g)
    cfg = parameterization.SamplerConfig(diag_range=args.diag_range)
    p = parameterization.sample(g, args.seed, cfg)
    _emit(args, parameterization.to_document(g, p))
    return 0


def cmd_build(args) -> int:
    g = _load_graph(args)
    _require_cg(g)
    try:
        p = parameterization.from_document(g, _load_json(args.params))
        problems = parameterization.validate_params(g, p)
    except (KeyError, ValueError) as exc:
        raise UsageError(f"bad parameter document: {exc}") from None
    if problems:
        raise UsageError("; ".join(f"{v.kind}: {v.message}" for v in problems))
    _emit(args, io.gaussian_to_document(gaussian.build_joint(g, p), g))
    return 0


def cmd_ci(args) -> int:
    doc = _load_json(args.dist)
    try:
        dist = io.gaussian_from_document(doc)
    except (KeyError, ValueError) as exc:
        raise UsageError(f"bad distribution document: {exc}") from None
    names = [str(x) for x in doc["index"]]
    labels = {name: k + 1 for k, name in enumerate(names)}
    (i,), (j,) = _single(labels, args.i), _single(labels, args.j)
    Z = _ids(labels, args.Z)
    try:
        v = independence.ci_test(dist, i, j, Z, args.tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rec = {"i": names[i - 1], "j": names[j - 1], "Z": [names[z - 1] for z in v.Z],
           "partial_corr": v.partial_corr, "independent": v.independent}
    if args.json:
        print(json.dumps(rec))
    else:
        print(f"{'independent' if v.independent else 'dependent'} "
              f"partial_corr={v.partial_corr!r}")
    return 0


def _single(labels, text):
    ids = _ids(labels, text)
    if len(ids) != 1:
        raise UsageError("expected exactly one vertex")
    return tuple(ids)


def cmd_faithfulness(args) -> int:
    g = _load_graph(args)
    _require_cg(g)
    try:
        report = faithfulness.run_harness(g, args.samples, args.seed, args.tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.json or args.out:
        _emit(args, report.to_document())
    else:
        print(f"d={report.d} samples={report.n_samples} triples={report.n_triples}")
        print(f"faithful_fraction={report.faithful_fraction!r}")
        print(f"markov_violations={report.markov_violation_count}")
    return 1 if report.markov_violation_count else 0


def cmd_equiv(args) -> int:
    g = _load_path(args.graph_a, args)
    h = _load_path(args.graph_b, args)
    _require_cg(g)
    _require_cg(h)
    if g.n != h.n or [g.label(v) for v in g.vertices] != [h.label(v) for v in h.vertices]:
        raise UsageError("graphs must declare the same nodes in the same order")
    verdict = equivalence.equivalent(g, h)
    if args.json:
        _emit(args, verdict.to_document())
    else:
        print("equivalent" if verdict.equivalent else f"not equivalent (witness {verdict.witness})")
    return 0


def _load_path(path, args):
    ns = argparse.Namespace(graph=path, auto_declare=args.auto_declare)
    return _load_graph(ns)


def cmd_enumerate(args) -> int:
    try:
        graphs = list(equivalence.enumerate_cgs(args.n))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    classes = equivalence.partition_classes(graphs)
    if args.json or args.out:
        _emit(args, [c.to_document() for c in classes])
    else:
        print(f"{len(graphs)} chain graphs in {len(classes)} classes")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cgfaith", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, graph=True):
        p = sub.add_parser(name)
        if graph:
            p.add_argument("--graph", required=True)
        p.add_argument("--auto-declare", action="store_true",
                       help="declare nodes on first use in an edge line")
        p.add_argument("--json", action="store_true")
        p.add_argument("--out", help="write the document here instead of stdout")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate)
    p = add("separate", cmd_separate)
    p.add_argument("-I", required=True)
    p.add_argument("-J", required=True)
    p.add_argument("-K", default="")
    add("dim", cmd_dim)
    p = add("sample", cmd_sample)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--diag-range", type=float, default=2.0)
    p = add("build", cmd_build)
    p.add_argument("--params", required=True)
    p = add("ci", cmd_ci, graph=False)
    p.add_argument("--dist", required=True)
    p.add_argument("-i", required=True)
    p.add_argument("-j", required=True)
    p.add_argument("-Z", default="")
    p.add_argument("--tol", type=float, default=independence.DEFAULT_TOL)
    p = add("faithfulness", cmd_faithfulness)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=independence.DEFAULT_TOL)
    p = add("equiv", cmd_equiv, graph=False)
    p.add_argument("graph_a")
    p.add_argument("graph_b")
    p = add("enumerate", cmd_enumerate, graph=False)
    p.add_argument("n", type=int)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "tol", 1.0) <= 0:
        parser.error("--tol must be positive")
    if getattr(args, "samples", 1) < 1:
        parser.error("--samples must be at least 1")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
