"""Instance files (JSON) and deterministic corpus generation.

An instance is a multigraph, a bias specification, and a matroid flavor.
The corpus enumerates connected multigraphs up to relabeling within the
bounds, paired with every balance class spanned by a subset of the
fundamental-cycle basis whose span stays loop-free.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement
from typing import Iterator

from .biased import (
    BiasedGraph,
    LinearClass,
    bicircular_bias,
    from_group_labelling,
    graphic_bias,
    linear_completion,
)
from .bitset import bits, ids_of, mask_of
from .errors import ParseError
from .graph import MultiGraph
from .matroid import FrameMatroid


@dataclass(frozen=True)
class Instance:
    name: str
    graph: MultiGraph
    bias: dict
    kind: str

    def build_biased(self) -> BiasedGraph:
        g = self.graph
        b = self.bias
        if b["kind"] == "all":
            return graphic_bias(g)
        if b["kind"] == "none":
            return bicircular_bias(g)
        if b["kind"] == "generators":
            gens = [mask_of(ids) for ids in b["generators"]]
            return BiasedGraph(g, linear_completion(g, gens))
        if b["kind"] == "group":
            return from_group_labelling(g, b["t"], b["labels"])
        raise ParseError(f"unknown bias kind {b['kind']!r}")

    def build_matroid(self, backend: str | None = None) -> FrameMatroid:
        return FrameMatroid(self.build_biased(), self.kind, backend)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "vertices": self.graph.n,
            "edges": [list(e) for e in self.graph.edges],
            "bias": self.bias,
            "matroid": self.kind,
        }


def dumps(instance: Instance) -> str:
    return json.dumps(instance.to_json(), sort_keys=True, indent=1) + "\n"


def _require(cond: bool, where: str, message: str):
    if not cond:
        raise ParseError(f"{where}: {message}")


def parse(text: str, name: str = "instance") -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    _require(isinstance(doc, dict), "$", "top level must be an object")
    for key in ("vertices", "edges", "bias", "matroid"):
        _require(key in doc, "$", f"missing key {key!r}")
    n = doc["vertices"]
    _require(isinstance(n, int) and n >= 0, "$.vertices", "must be a non-negative integer")
    edges = doc["edges"]
    _require(isinstance(edges, list), "$.edges", "must be a list")
    for i, pair in enumerate(edges):
        _require(
            isinstance(pair, list) and len(pair) == 2 and all(isinstance(x, int) for x in pair),
            f"$.edges[{i}]",
            "must be a pair of vertex indices",
        )
        _require(0 <= pair[0] < n and 0 <= pair[1] < n, f"$.edges[{i}]", "endpoint out of range")
    graph = MultiGraph(n, [tuple(e) for e in edges])
    bias = doc["bias"]
    _require(isinstance(bias, dict) and "kind" in bias, "$.bias", "must be an object with a kind")
    kind = bias["kind"]
    _require(kind in ("all", "none", "generators", "group"), "$.bias.kind", f"unknown kind {kind!r}")
    if kind == "generators":
        gens = bias.get("generators")
        _require(isinstance(gens, list), "$.bias.generators", "must be a list of edge-id lists")
        for i, ids in enumerate(gens):
            _require(
                isinstance(ids, list) and all(isinstance(x, int) and 0 <= x < len(edges) for x in ids),
                f"$.bias.generators[{i}]",
                "must be a list of edge ids",
            )
            _require(
                graph.is_simple_cycle(mask_of(ids)),
                f"$.bias.generators[{i}]",
                "generator is not a simple cycle",
            )
    if kind == "group":
        _require(isinstance(bias.get("t"), int) and bias["t"] >= 1, "$.bias.t", "must be a positive integer")
        labels = bias.get("labels")
        _require(
            isinstance(labels, list) and len(labels) == len(edges),
            "$.bias.labels",
            "must list one label per edge",
        )
        for i, lab in enumerate(labels):
            _require(
                isinstance(lab, list) and len(lab) == bias["t"] and all(b in (0, 1) for b in lab),
                f"$.bias.labels[{i}]",
                "must be a 0/1 vector of length t",
            )
    matroid = doc["matroid"]
    _require(matroid in ("frame", "lift"), "$.matroid", f"must be 'frame' or 'lift', got {matroid!r}")
    return Instance(doc.get("name", name), graph, bias, matroid)


def load(path) -> Instance:
    from pathlib import Path

    p = Path(path)
    return parse(p.read_text(), name=p.stem)


# -- corpus generation ------------------------------------------------------------


def _connected_simple_graphs(n: int) -> Iterator[tuple[tuple[int, int], ...]]:
    """Connected spanning simple graphs on labeled vertices 0..n-1, one per
    isomorphism class."""
    if n == 1:
        yield ()
        return
    all_pairs = list(combinations(range(n), 2))
    seen = set()
    for size in range(n - 1, len(all_pairs) + 1):
        for subset in combinations(all_pairs, size):
            g = MultiGraph(n, subset)
            if not g.is_connected():
                continue
            key = g.relabel_key()
            if key in seen:
                continue
            seen.add(key)
            yield subset


def enumerate_multigraphs(max_vertices: int, max_edges: int, max_cyclomatic: int = 3):
    """Connected multigraphs (loops and parallels allowed) up to relabeling,
    within the vertex/edge bounds and a cyclomatic-dimension cap."""
    out = []
    seen = set()
    for n in range(1, max_vertices + 1):
        for support in _connected_simple_graphs(n):
            base_cyclo = len(support) - n + 1
            if base_cyclo > max_cyclomatic or len(support) > max_edges:
                continue
            budget = min(max_cyclomatic - base_cyclo, max_edges - len(support))
            slots = [("p", i) for i in range(len(support))] + [("l", v) for v in range(n)]
            for extra in range(budget + 1):
                for assignment in combinations_with_replacement(range(len(slots)), extra):
                    edges = list(support)
                    for slot_idx in assignment:
                        tag, what = slots[slot_idx]
                        edges.append(support[what] if tag == "p" else (what, what))
                    if n == 1 and not edges:
                        continue
                    g = MultiGraph(n, sorted(edges))
                    key = g.relabel_key()
                    if key in seen:
                        continue
                    seen.add(key)
                    out.append(g)
    return out


def _loop_free(g: MultiGraph, cls: LinearClass) -> bool:
    return not any(g.is_loop(e) and cls.contains(1 << e) for e in range(g.m))


def generate_corpus(
    max_vertices: int,
    max_edges: int,
    seed: int = 0,
    max_cyclomatic: int = 3,
    kinds: tuple[str, ...] = ("frame", "lift"),
) -> list[Instance]:
    """Deterministic corpus: every enumerated multigraph paired with every
    loop-free balance class spanned by a subset of its fundamental cycles.
    The seed is recorded by callers; generation itself is exhaustive."""
    del seed
    instances = []
    for gi, g in enumerate(enumerate_multigraphs(max_vertices, max_edges, max_cyclomatic)):
        basis = g.cycle_space_basis()
        for pick in range(1 << len(basis)):
            gens = [basis[i] for i in bits(pick)]
            cls = LinearClass.from_generators(gens)
            if not _loop_free(g, cls):
                continue
            if pick == 0:
                bias = {"kind": "none"}
            elif len(gens) == len(basis):
                bias = {"kind": "all"}
            else:
                bias = {"kind": "generators", "generators": [list(ids_of(c)) for c in gens]}
            for kind in kinds:
                name = f"g{gi:03d}-n{g.n}m{g.m}-b{pick:02x}-{kind}"
                instances.append(Instance(name, g, bias, kind))
    return instances
