"""Distinguishability hypergraphs and N-complete clique search.

Nodes are pure-state indices of a reduced theory; hyperedges are the
perfectly distinguishable N-subsets. Construction prunes through the
pairwise graph first (a distinguishable N-set has all pairs
distinguishable), then certifies surviving subsets with the full LP.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

from .discrimination import is_perfectly_distinguishable
from .theory import Theory, theory_from_json, theory_to_json


@dataclass(frozen=True)
class DistinguishabilityHypergraph:
    n_arity: int
    num_nodes: int
    edges: frozenset  # of sorted index tuples, each of length n_arity

    def __post_init__(self):
        for e in self.edges:
            if len(e) != self.n_arity or tuple(sorted(e)) != e:
                raise ValueError(f"edge {e} is not a sorted {self.n_arity}-tuple")

    def sorted_edges(self) -> list:
        return sorted(self.edges)


@dataclass(frozen=True)
class Clique:
    members: tuple

    def __len__(self):
        return len(self.members)


def _subset_distinguishable(theory: Theory, subset) -> bool:
    states = [theory.generators[i] for i in subset]
    return is_perfectly_distinguishable(theory, states, validate=False).distinguishable


def _edge_chunk_worker(args):
    theory_doc, subsets = args
    theory = theory_from_json(theory_doc)
    return [s for s in subsets if _subset_distinguishable(theory, s)]


def _filter_distinguishable(theory: Theory, subsets: list, workers: int) -> list:
    if workers <= 1 or len(subsets) < 4:
        return [s for s in subsets if _subset_distinguishable(theory, s)]
    doc = theory_to_json(theory)
    chunk = max(1, len(subsets) // (workers * 4))
    jobs = [(doc, subsets[i:i + chunk]) for i in range(0, len(subsets), chunk)]
    survivors = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_edge_chunk_worker, jobs):
            survivors.extend(part)
    return sorted(survivors)


def theory_digest(theory: Theory) -> str:
    blob = json.dumps(theory_to_json(theory), sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()


def build_hypergraph(theory: Theory, n_arity: int, workers: int = 1,
                     cache_dir: Optional[str] = None) -> DistinguishabilityHypergraph:
    """Enumerate all perfectly distinguishable N-subsets of the pure states.

    The theory must already be reduced to its pure states. Results can be
    cached on disk keyed by (theory content hash, N).
    """
    v = theory.num_generators
    if not 2 <= n_arity <= v:
        raise ValueError(f"N must lie in 2..{v}")

    cache_path = None
    if cache_dir:
        key = f"{theory_digest(theory)}-N{n_arity}"
        cache_path = os.path.join(cache_dir, f"{key}.json")
        if os.path.exists(cache_path):
            h = load_hypergraph(cache_path)
            if h.num_nodes == v:
                return h

    pairs = _filter_distinguishable(theory, [tuple(p) for p in itertools.combinations(range(v), 2)],
                                    workers)
    if n_arity == 2:
        edges = pairs
    else:
        pair_set = set(pairs)
        candidates = [s for s in itertools.combinations(range(v), n_arity)
                      if all(p in pair_set for p in itertools.combinations(s, 2))]
        edges = _filter_distinguishable(theory, candidates, workers)

    h = DistinguishabilityHypergraph(n_arity, v, frozenset(edges))
    if cache_path:
        os.makedirs(cache_dir, exist_ok=True)
        save_hypergraph(h, cache_path)
    return h


def is_fully_connected(node: int, clique: Sequence[int],
                       h: DistinguishabilityHypergraph) -> bool:
    """Whether adding the node keeps the clique N-complete: every
    (N-1)-subset of the clique must extend to a hyperedge with it."""
    members = tuple(clique)
    if node in members:
        raise ValueError("node already belongs to the clique")
    if len(members) < h.n_arity - 1:
        raise ValueError(f"clique must have at least {h.n_arity - 1} members")
    for sub in itertools.combinations(members, h.n_arity - 1):
        if tuple(sorted(sub + (node,))) not in h.edges:
            return False
    return True


def clique_is_valid(h: DistinguishabilityHypergraph, clique: Clique) -> bool:
    members = clique.members
    if len(members) < h.n_arity:
        return len(members) == 0
    return all(tuple(sorted(s)) in h.edges
               for s in itertools.combinations(sorted(members), h.n_arity))


def _better(candidate: tuple, best: tuple) -> bool:
    return len(candidate) > len(best) or (len(candidate) == len(best) and candidate < best)


def greedy_max_clique(h: DistinguishabilityHypergraph) -> Clique:
    """hClique-style expansion: grow each hyperedge once, scanning the
    remaining nodes in ascending index order. Maximal, not maximum."""
    best: tuple = ()
    for edge in h.sorted_edges():
        grown = list(edge)
        for node in range(h.num_nodes):
            if node not in grown and is_fully_connected(node, grown, h):
                grown.append(node)
        grown = tuple(sorted(grown))
        if _better(grown, best):
            best = grown
    return Clique(best)


def exact_max_clique(h: DistinguishabilityHypergraph, node_budget: int = 24) -> Clique:
    """True maximum N-complete set by depth-first branch and bound."""
    if h.num_nodes > node_budget:
        raise ValueError(f"{h.num_nodes} nodes exceed the budget {node_budget}; use the greedy search")
    if not h.edges:
        return Clique(())
    n = h.n_arity
    best: list = []

    def compatible(q: list, v: int) -> bool:
        if len(q) < n - 1:
            return True
        return all(tuple(sorted(sub + (v,))) in h.edges
                   for sub in itertools.combinations(q, n - 1))

    def extend(q: list, candidates: list):
        nonlocal best
        if len(q) >= n and len(q) > len(best):
            best = list(q)
        if len(q) + len(candidates) <= len(best):
            return
        for i, v in enumerate(candidates):
            rest = [w for w in candidates[i + 1:] if compatible(q + [v], w)]
            extend(q + [v], rest)
            if len(q) + len(candidates) - (i + 1) <= len(best):
                return

    extend([], list(range(h.num_nodes)))
    return Clique(tuple(best))


# --- hypergraph JSON -------------------------------------------------------

def hypergraph_to_json(h: DistinguishabilityHypergraph) -> dict:
    return {"N": h.n_arity, "num_nodes": h.num_nodes,
            "edges": [list(e) for e in h.sorted_edges()]}


def hypergraph_from_json(doc: dict) -> DistinguishabilityHypergraph:
    try:
        return DistinguishabilityHypergraph(
            int(doc["N"]), int(doc["num_nodes"]),
            frozenset(tuple(e) for e in doc["edges"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed hypergraph JSON: {exc}") from exc


def save_hypergraph(h: DistinguishabilityHypergraph, path) -> None:
    with open(path, "w") as fh:
        json.dump(hypergraph_to_json(h), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_hypergraph(path) -> DistinguishabilityHypergraph:
    with open(path) as fh:
        return hypergraph_from_json(json.load(fh))
