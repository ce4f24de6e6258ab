"""Brute-force references and random instances for property tests.

Nothing here shares code with the traversal in :mod:`conceptspace.space`:
reachability is a boolean-matrix fixed point, and graphs are drawn from a
numpy ``PCG64`` bit generator so seeds give the same graphs on every
platform.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InvalidParams
from .space import ConceptualSpace, ConstraintVertex, ReachSets, build_space


@dataclass(frozen=True)
class DagGenParams:
    vertex_count: tuple[int, int]
    edge_probability: Fraction
    seed: int
    ensure_nonaxiom: bool = False

    def __post_init__(self):
        lo, hi = self.vertex_count
        p = Fraction(self.edge_probability)
        object.__setattr__(self, "edge_probability", p)
        if lo < 0 or hi < lo:
            raise InvalidParams(f"bad vertex_count range {self.vertex_count}")
        if not 0 <= p <= 1:
            raise InvalidParams(f"edge_probability {p} outside [0, 1]")
        if self.ensure_nonaxiom and lo < 2:
            raise InvalidParams("ensure_nonaxiom needs at least 2 vertices")
        if not 0 <= self.seed < 2**64:
            raise InvalidParams(f"seed {self.seed} is not a 64-bit unsigned integer")


def brute_reach(space: ConceptualSpace) -> ReachSets:
    """Transitive closure by squaring the adjacency matrix until it stops growing."""
    ids = list(space.ids)
    pos = {v: i for i, v in enumerate(ids)}
    n = len(ids)
    reach = np.zeros((n, n), dtype=bool)
    for u, v in space.edges:
        reach[pos[u], pos[v]] = True
    while True:
        step = reach | ((reach.astype(np.int64) @ reach.astype(np.int64)) > 0)
        if np.array_equal(step, reach):
            break
        reach = step
    prereq = {ids[i]: frozenset(ids[j] for j in np.flatnonzero(reach[i])) for i in range(n)}
    depends = {ids[j]: frozenset(ids[i] for i in np.flatnonzero(reach[:, j])) for j in range(n)}
    return ReachSets(prereq=prereq, depends=depends)


def _ids(n: int) -> list[str]:
    width = max(2, len(str(n - 1)))
    return [f"v{i:0{width}d}" for i in range(n)]


def _space(name: str, ids: list[str], edges) -> ConceptualSpace:
    return build_space(name, [ConstraintVertex(i, i) for i in ids], edges)


def random_dag(params: DagGenParams) -> ConceptualSpace:
    """Seeded random DAG over a random topological order.

    Every forward pair of the order becomes an edge with the configured
    probability.  Only order-respecting DAGs are sampled, which is fine
    for invariant checks but not a uniform distribution over all DAGs.
    """
    rng = np.random.Generator(np.random.PCG64(params.seed))
    lo, hi = params.vertex_count
    n = int(rng.integers(lo, hi + 1))
    ids = _ids(n)
    order = [ids[i] for i in rng.permutation(n)]
    p = float(params.edge_probability)
    edges = []
    for i, j in itertools.combinations(range(n), 2):
        if rng.random() < p:
            edges.append((order[i], order[j]))
    if params.ensure_nonaxiom and not edges:
        edges.append((order[0], order[1]))
    return _space(f"random-{params.seed}", ids, edges)


def random_dags(count: int, seed: int, **kw) -> Iterator[ConceptualSpace]:
    """``count`` graphs whose per-graph seeds are derived from ``seed``."""
    seeds = np.random.SeedSequence(seed).generate_state(count, dtype=np.uint64)
    for s in seeds:
        yield random_dag(DagGenParams(seed=int(s), **kw))


def exhaustive_small_spaces(max_vertices: int) -> Iterator[ConceptualSpace]:
    """Every DAG on ``max_vertices`` labelled vertices whose edges follow the id order."""
    if not 0 <= max_vertices <= 4:
        raise InvalidParams("exhaustive enumeration is limited to 4 vertices")
    ids = _ids(max_vertices)
    pairs = list(itertools.combinations(ids, 2))
    for mask in range(1 << len(pairs)):
        edges = [pairs[k] for k in range(len(pairs)) if mask >> k & 1]
        yield _space(f"order-{max_vertices}-{mask}", ids, edges)


def all_labelled_dags(n: int) -> Iterator[ConceptualSpace]:
    """Every DAG on ``n`` labelled vertices (543 of them for n=4)."""
    if not 0 <= n <= 4:
        raise InvalidParams("exhaustive enumeration is limited to 4 vertices")
    ids = _ids(n)
    pairs = [(u, v) for u in ids for v in ids if u != v]
    for mask in range(1 << len(pairs)):
        edges = [pairs[k] for k in range(len(pairs)) if mask >> k & 1]
        if _acyclic(ids, edges):
            yield _space(f"labelled-{n}-{mask}", ids, edges)


def _acyclic(ids, edges) -> bool:
    # repeated sink stripping, independent of the DFS in build_space
    remaining = set(ids)
    live = set(edges)
    while remaining:
        sinks = {v for v in remaining if not any(u == v for u, _ in live)}
        if not sinks:
            return False
        remaining -= sinks
        live = {(u, v) for u, v in live if v not in sinks}
    return True


def random_string_family(rng: np.random.Generator, size: int, alphabet: int = 6) -> list[frozenset[str]]:
    """``size`` pairwise distinct nonempty subsets of a small alphabet."""
    letters = [f"w{i}" for i in range(alphabet)]
    if size > 2**alphabet - 1:
        raise InvalidParams("family larger than the number of nonempty subsets")
    seen: set[frozenset[str]] = set()
    out = []
    while len(out) < size:
        pick = frozenset(x for x in letters if rng.random() < 0.5)
        if pick and pick not in seen:
            seen.add(pick)
            out.append(pick)
    return out


def random_labelled_space(
    rng: np.random.Generator,
    universe: list[str],
    edge_probability: float = 0.3,
    intensional_probability: float = 0.3,
) -> ConceptualSpace:
    """Random space over a random subset of ``universe`` with labels and contents.

    Contents are grown along the edges (a vertex admits everything its
    dependents admit plus a few strings of its own), so the subset
    condition holds; some vertices are left intensional.
    """
    chosen = [u for u in universe if rng.random() < 0.7]
    order = [chosen[i] for i in rng.permutation(len(chosen))]
    edges = [
        (order[i], order[j])
        for i, j in itertools.combinations(range(len(order)), 2)
        if rng.random() < edge_probability
    ]
    preds: dict[str, list[str]] = {u: [] for u in order}
    for u, v in edges:
        preds[v].append(u)
    contents: dict[str, frozenset[str] | None] = {}
    grown: dict[str, frozenset[str]] = {}
    for u in order:
        own = frozenset(f"w{int(k)}" for k in rng.integers(0, 8, size=int(rng.integers(0, 3))))
        grown[u] = own.union(*(grown[p] for p in preds[u]))
        contents[u] = None if rng.random() < intensional_probability else grown[u]
    vertices = [
        ConstraintVertex(u, f"label {int(rng.integers(0, 3))}", contents[u]) for u in order
    ]
    return build_space("random", vertices, edges)
