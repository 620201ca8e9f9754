"""Text and JSON formats.

Graph files hold one declaration per line::

    # comment
    node a
    node b
    edge a -> b
    edge b -- c

Node names are mapped to vertex ids ``1..n`` in order of declaration.
"""
from __future__ import annotations

import numpy as np

from .gaussian import Gaussian
from .graph import ChainGraph


class GraphParseError(ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


def parse_graph(text: str, auto_declare: bool = False) -> ChainGraph:
    ids: dict[str, int] = {}
    und, dirs = [], []
    seen_pairs: set[frozenset] = set()

    def vertex(name, lineno):
        if name not in ids:
            if not auto_declare:
                raise GraphParseError(lineno, f"undeclared node {name!r}")
            ids[name] = len(ids) + 1
        return ids[name]

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if tok[0] == "node" and len(tok) == 2:
            if tok[1] in ids:
                raise GraphParseError(lineno, f"node {tok[1]!r} declared twice")
            ids[tok[1]] = len(ids) + 1
        elif tok[0] == "edge" and len(tok) == 4 and tok[2] in ("--", "->"):
            a, b = vertex(tok[1], lineno), vertex(tok[3], lineno)
            if a == b:
                raise GraphParseError(lineno, f"self-loop at {tok[1]!r}")
            pair = frozenset((a, b))
            if pair in seen_pairs:
                raise GraphParseError(lineno, f"duplicate edge between {tok[1]!r} and {tok[3]!r}")
            seen_pairs.add(pair)
            (und if tok[2] == "--" else dirs).append((a, b))
        else:
            raise GraphParseError(lineno, f"cannot parse {raw.strip()!r}")
    labels = tuple(sorted(ids, key=ids.get))
    return ChainGraph(len(ids), tuple(und), tuple(dirs), labels)


def read_graph(path, auto_declare: bool = False) -> ChainGraph:
    with open(path) as fh:
        return parse_graph(fh.read(), auto_declare)


def format_graph(g: ChainGraph) -> str:
    lab = g.label
    lines = [f"node {lab(v)}" for v in g.vertices]
    lines += [f"edge {lab(a)} -- {lab(b)}" for a, b in g.undirected]
    lines += [f"edge {lab(a)} -> {lab(b)}" for a, b in g.directed]
    return "\n".join(lines) + "\n"


def gaussian_to_document(dist: Gaussian, g: ChainGraph | None = None) -> dict:
    lab = g.label if g is not None else str
    return {
        "format": "gaussian",
        "index": [lab(v) for v in dist.index],
        "mean": [float(x) for x in dist.mean],
        "precision": dist.precision.tolist(),
    }


def gaussian_from_document(doc: dict, g: ChainGraph | None = None) -> Gaussian:
    if doc.get("format") != "gaussian":
        raise ValueError("not a gaussian document")
    # without a graph, coordinates are numbered 1..n in document order
    index = None
    if g is not None:
        ids = {g.label(v): v for v in g.vertices}
        index = [ids[str(x)] for x in doc["index"]]
    return Gaussian.from_precision(
        np.array(doc["mean"], dtype=float),
        np.array(doc["precision"], dtype=float),
        index,
    )
