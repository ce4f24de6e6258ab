"""Conceptual spaces: finite DAGs of constraints whose sinks are axioms.

An edge ``(u, v)`` reads "u depends on v": u is a further constraint on v,
so every string admitted by u is also admitted by v.  Following the edges
from a vertex walks towards the axioms that must be assumed before it.
"""

from __future__ import annotations

import enum
import heapq
import re
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

from .errors import (
    CycleDetected,
    DuplicateEdge,
    DuplicateVertexId,
    EmptySpace,
    InvalidConstraint,
    SubsetViolation,
    TheoremViolation,
    UnknownEdge,
    UnknownEndpoint,
    UnknownVertex,
)

__all__ = [
    "ConstraintVertex",
    "ConceptualSpace",
    "ReachSets",
    "Verdict",
    "TheoremVerdict",
    "build_space",
    "empty_space",
    "axioms",
    "rules",
    "reach_sets",
    "transformative_potential",
    "max_potential",
    "check_theorem",
    "edge_monotonicity_witness",
    "axiom_warnings",
    "unverifiable_edges",
    "topological_order",
]

# Trailing apostrophes mark a transformed constraint (A1 -> A1').
ID_PATTERN = re.compile(r"[A-Za-z0-9_-]+'*")

Edge = tuple[str, str]


def check_id(value: str) -> str:
    if not isinstance(value, str) or not ID_PATTERN.fullmatch(value):
        raise InvalidConstraint(f"invalid constraint id {value!r}")
    return value


@dataclass(frozen=True)
class ConstraintVertex:
    """One constraint of a space.

    ``content`` is a finite extensional sample of the strings the
    constraint admits, or ``None`` when the constraint is only known
    intensionally (by its label).
    """

    id: str
    label: str
    content: Optional[frozenset[str]] = None
    meta: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        check_id(self.id)
        if not isinstance(self.label, str) or not self.label:
            raise InvalidConstraint(f"vertex {self.id} needs a nonempty label")
        if self.content is not None and not isinstance(self.content, frozenset):
            object.__setattr__(self, "content", frozenset(self.content))
        if isinstance(self.meta, Mapping):
            object.__setattr__(self, "meta", tuple(sorted(self.meta.items())))
        else:
            object.__setattr__(self, "meta", tuple(sorted(self.meta)))

    @property
    def extensional(self) -> bool:
        return self.content is not None

    def replace(self, **changes) -> "ConstraintVertex":
        kw = dict(id=self.id, label=self.label, content=self.content, meta=self.meta)
        kw.update(changes)
        return ConstraintVertex(**kw)


@dataclass(frozen=True)
class ReachSets:
    prereq: dict[str, frozenset[str]]
    depends: dict[str, frozenset[str]]


@dataclass(frozen=True)
class ConceptualSpace:
    """Immutable validated space. Build instances with :func:`build_space`."""

    name: str
    vertices: tuple[ConstraintVertex, ...]
    edges: tuple[Edge, ...]

    @cached_property
    def index(self) -> dict[str, ConstraintVertex]:
        return {v.id: v for v in self.vertices}

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(v.id for v in self.vertices)

    @cached_property
    def successors(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {v.id: [] for v in self.vertices}
        for u, v in self.edges:
            out[u].append(v)
        return {k: tuple(vs) for k, vs in out.items()}

    @cached_property
    def predecessors(self) -> dict[str, tuple[str, ...]]:
        inc: dict[str, list[str]] = {v.id: [] for v in self.vertices}
        for u, v in self.edges:
            inc[v].append(u)
        return {k: tuple(sorted(us)) for k, us in inc.items()}

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def __contains__(self, vid) -> bool:
        return vid in self.index

    def __len__(self) -> int:
        return len(self.vertices)

    def vertex(self, vid: str) -> ConstraintVertex:
        try:
            return self.index[vid]
        except KeyError:
            raise UnknownVertex(f"unknown vertex {vid}") from None

    def structure(self):
        """Hashable key for structural equality (ids, labels, contents, edges).

        Names and free-form meta annotations are deliberately left out.
        """
        verts = tuple(
            (v.id, v.label, None if v.content is None else tuple(sorted(v.content)))
            for v in self.vertices
        )
        return verts, self.edges

    def structurally_equal(self, other: "ConceptualSpace") -> bool:
        return self.structure() == other.structure()

    @cached_property
    def _reach(self) -> ReachSets:
        return _compute_reach(self)


def _find_cycle(ids: list[str], succ: dict[str, list[str]]) -> Optional[list[str]]:
    """Return one directed cycle as ``[x, ..., x]`` or ``None``."""
    WHITE, GREY, BLACK = 0, 1, 2
    color = dict.fromkeys(ids, WHITE)
    for root in ids:
        if color[root] != WHITE:
            continue
        path = [root]
        iters = [iter(succ[root])]
        color[root] = GREY
        while iters:
            nxt = next(iters[-1], None)
            if nxt is None:
                color[path.pop()] = BLACK
                iters.pop()
            elif color[nxt] == GREY:
                start = path.index(nxt)
                return path[start:] + [nxt]
            elif color[nxt] == WHITE:
                color[nxt] = GREY
                path.append(nxt)
                iters.append(iter(succ[nxt]))
    return None


def build_space(
    name: str,
    vertices: Iterable[ConstraintVertex],
    edges: Iterable[Edge],
    *,
    check_subsets: bool = True,
) -> ConceptualSpace:
    """Validate vertices and edges and return a canonical space.

    Raises DuplicateVertexId, UnknownEndpoint, DuplicateEdge, CycleDetected
    or SubsetViolation.  ``check_subsets=False`` skips only the content
    check; acyclicity is always enforced.
    """
    index: dict[str, ConstraintVertex] = {}
    for v in vertices:
        if v.id in index:
            raise DuplicateVertexId(f"duplicate vertex id {v.id}")
        index[v.id] = v

    seen: set[Edge] = set()
    for u, v in edges:
        for end in (u, v):
            if end not in index:
                raise UnknownEndpoint(f"edge ({u}, {v}) references unknown vertex {end}")
        if (u, v) in seen:
            raise DuplicateEdge(f"duplicate edge ({u}, {v})")
        seen.add((u, v))

    ids = sorted(index)
    succ: dict[str, list[str]] = {i: [] for i in ids}
    for u, v in sorted(seen):
        succ[u].append(v)
    cycle = _find_cycle(ids, succ)
    if cycle is not None:
        raise CycleDetected(cycle)

    if check_subsets:
        for u, v in sorted(seen):
            cu, cv = index[u].content, index[v].content
            if cu is not None and cv is not None and not cu <= cv:
                raise SubsetViolation((u, v), cu - cv)

    return ConceptualSpace(
        name=name,
        vertices=tuple(index[i] for i in ids),
        edges=tuple(sorted(seen)),
    )


def empty_space(name: str = "") -> ConceptualSpace:
    return ConceptualSpace(name=name, vertices=(), edges=())


def axioms(space: ConceptualSpace) -> frozenset[str]:
    """Sink vertices (out-degree zero)."""
    return frozenset(k for k, vs in space.successors.items() if not vs)


def rules(space: ConceptualSpace) -> frozenset[str]:
    return frozenset(space.ids) - axioms(space)


def topological_order(space: ConceptualSpace) -> list[str]:
    """Dependents before their prerequisites; ties broken by id."""
    indeg = {k: len(v) for k, v in space.predecessors.items()}
    heap = [k for k, d in indeg.items() if d == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        u = heapq.heappop(heap)
        order.append(u)
        for v in space.successors[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                heapq.heappush(heap, v)
    return order


def _compute_reach(space: ConceptualSpace) -> ReachSets:
    ids = space.ids
    bit = {vid: 1 << i for i, vid in enumerate(ids)}
    below: dict[str, int] = {}
    for u in reversed(topological_order(space)):
        mask = 0
        for v in space.successors[u]:
            mask |= bit[v] | below[v]
        below[u] = mask

    def unpack(mask: int) -> frozenset[str]:
        return frozenset(vid for vid in ids if mask & bit[vid])

    prereq = {u: unpack(below[u]) for u in ids}
    depends: dict[str, set[str]] = {u: set() for u in ids}
    for u, reached in prereq.items():
        for v in reached:
            depends[v].add(u)
    return ReachSets(prereq=prereq, depends={k: frozenset(v) for k, v in depends.items()})


def reach_sets(space: ConceptualSpace) -> ReachSets:
    """prereq[v]: everything reachable from v.  depends[v]: everything reaching v."""
    return space._reach


def transformative_potential(space: ConceptualSpace, vid: str) -> int:
    """Number of constraints that depend on ``vid`` (itself excluded)."""
    space.vertex(vid)
    return len(space._reach.depends[vid])


def max_potential(space: ConceptualSpace) -> tuple[int, tuple[str, ...]]:
    """Largest potential and every vertex attaining it, in id order."""
    if not space.vertices:
        raise EmptySpace("max_potential of an empty space is undefined")
    depends = space._reach.depends
    best = max(len(d) for d in depends.values())
    return best, tuple(k for k in space.ids if len(depends[k]) == best)


class Verdict(enum.Enum):
    HOLDS = "HOLDS"
    VACUOUS = "VACUOUS"


@dataclass(frozen=True)
class TheoremVerdict:
    verdict: Verdict
    value: Optional[int] = None
    maximizers: tuple[str, ...] = ()
    axioms: tuple[str, ...] = ()

    @property
    def holds(self) -> bool:
        return self.verdict is Verdict.HOLDS

    def __str__(self):
        if self.verdict is Verdict.VACUOUS:
            return "VACUOUS"
        return f"HOLDS maximizers=[{','.join(self.maximizers)}] value={self.value}"


def check_theorem(space: ConceptualSpace) -> TheoremVerdict:
    """Check that every maximizer of transformative potential is an axiom.

    Returns VACUOUS when the space has no rules.  A rule among the
    maximizers would mean the reachability code is broken, so that case
    raises :class:`TheoremViolation` instead of returning a verdict.
    """
    sinks = axioms(space)
    if len(sinks) == len(space.vertices):
        return TheoremVerdict(Verdict.VACUOUS, axioms=tuple(sorted(sinks)))
    value, maximizers = max_potential(space)
    offenders = [m for m in maximizers if m not in sinks]
    if offenders:
        raise TheoremViolation(
            f"non-axiom maximizers {offenders} with potential {value} in space "
            f"{space.name!r}; edges={list(space.edges)}"
        )
    return TheoremVerdict(Verdict.HOLDS, value, maximizers, tuple(sorted(sinks)))


def edge_monotonicity_witness(space: ConceptualSpace, edge: Edge) -> tuple[int, int]:
    """Return ``(|depends(u)|, |depends(v)|)`` for edge ``(u, v)``.

    Everything depending on u also depends on v, and so does u itself,
    hence the second count always exceeds the first.
    """
    edge = tuple(edge)
    if edge not in space.edge_set:
        raise UnknownEdge(f"unknown edge ({edge[0]}, {edge[1]})")
    u, v = edge
    d_u = len(space._reach.depends[u])
    d_v = len(space._reach.depends[v])
    if d_v < d_u + 1:
        raise TheoremViolation(f"edge {edge}: depends counts {d_u} -> {d_v}")
    return d_u, d_v


def axiom_warnings(space: ConceptualSpace) -> list[tuple[str, str]]:
    """Pairs ``(axiom, v)`` where the axiom's content sits inside another vertex's.

    Structural sinks are always axioms; this only reports the stricter
    set-theoretic reading of non-dependence, as a warning.
    """
    found = []
    for a in sorted(axioms(space)):
        ca = space.index[a].content
        if ca is None:
            continue
        for v in space.vertices:
            if v.id != a and v.content is not None and ca <= v.content:
                found.append((a, v.id))
    return found


def unverifiable_edges(space: ConceptualSpace) -> list[Edge]:
    """Edges whose subset condition cannot be checked (some content absent)."""
    return [
        (u, v)
        for u, v in space.edges
        if space.index[u].content is None or space.index[v].content is None
    ]
