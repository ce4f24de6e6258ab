"""Edits to a conceptual space, scripts of edits, diffing and impact reports."""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from typing import Optional, Union

from .artifact import DEFAULT_HEADERS, Artifact, validate_artifact
from .errors import (
    ConceptSpaceError,
    CycleDetected,
    DuplicateEdge,
    DuplicateVertexId,
    StepFailed,
    UnknownEdge,
    UnknownVertex,
    UnresolvableSubsetConflict,
    WitnessNotInIntersection,
)
from .space import (
    ConceptualSpace,
    ConstraintVertex,
    axioms,
    build_space,
    check_id,
    reach_sets,
    topological_order,
)


@dataclass(frozen=True)
class AddVertex:
    vertex: ConstraintVertex


@dataclass(frozen=True)
class RemoveVertex:
    id: str


@dataclass(frozen=True)
class ModifyVertex:
    """Replace label and content of a vertex; its id and meta survive.

    ``content`` is the complete new content (``None`` means intensional),
    not a delta.
    """

    id: str
    label: str
    content: Optional[frozenset[str]] = None

    def __post_init__(self):
        if self.content is not None and not isinstance(self.content, frozenset):
            object.__setattr__(self, "content", frozenset(self.content))


@dataclass(frozen=True)
class AddEdge:
    source: str
    target: str


@dataclass(frozen=True)
class RemoveEdge:
    source: str
    target: str


Transformation = Union[AddVertex, RemoveVertex, ModifyVertex, AddEdge, RemoveEdge]

STRICT = "strict"
LENIENT = "lenient"


@dataclass(frozen=True)
class TransformationScript:
    steps: tuple[Transformation, ...] = ()
    mode: str = STRICT

    def __post_init__(self):
        if self.mode not in (STRICT, LENIENT):
            raise ValueError(f"unknown script mode {self.mode!r}")
        object.__setattr__(self, "steps", tuple(self.steps))

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)


@dataclass(frozen=True)
class AxiomChanges:
    gained: frozenset[str] = frozenset()
    lost: frozenset[str] = frozenset()


@dataclass(frozen=True)
class ImpactReport:
    target: str
    potential: int
    touched: frozenset[str]
    axiom_changes: AxiomChanges = field(default_factory=AxiomChanges)


def _path(space: ConceptualSpace, start: str, goal: str) -> Optional[list[str]]:
    """A directed path start -> ... -> goal, or None."""
    parent = {start: None}
    stack = [start]
    while stack:
        u = stack.pop()
        if u == goal:
            path = [u]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            return path[::-1]
        for v in space.successors[u]:
            if v not in parent:
                parent[v] = u
                stack.append(v)
    return None


def _apply(space: ConceptualSpace, t: Transformation, check_subsets: bool) -> ConceptualSpace:
    verts = dict(space.index)
    edges = list(space.edges)
    if isinstance(t, AddVertex):
        if t.vertex.id in verts:
            raise DuplicateVertexId(f"duplicate vertex id {t.vertex.id}")
        verts[t.vertex.id] = t.vertex
    elif isinstance(t, RemoveVertex):
        space.vertex(t.id)
        del verts[t.id]
        edges = [e for e in edges if t.id not in e]
    elif isinstance(t, ModifyVertex):
        verts[t.id] = space.vertex(t.id).replace(label=t.label, content=t.content)
    elif isinstance(t, AddEdge):
        for end in (t.source, t.target):
            space.vertex(end)
        if (t.source, t.target) in space.edge_set:
            raise DuplicateEdge(f"duplicate edge ({t.source}, {t.target})")
        back = _path(space, t.target, t.source)
        if back is not None:
            raise CycleDetected([t.source] + back)
        edges.append((t.source, t.target))
    elif isinstance(t, RemoveEdge):
        if (t.source, t.target) not in space.edge_set:
            raise UnknownEdge(f"unknown edge ({t.source}, {t.target})")
        edges.remove((t.source, t.target))
    else:
        raise TypeError(f"not a transformation: {t!r}")
    return build_space(space.name, verts.values(), edges, check_subsets=check_subsets)


def apply(space: ConceptualSpace, t: Transformation) -> ConceptualSpace:
    """Return a new validated space with ``t`` applied; ``space`` is untouched.

    Removing a vertex drops its incident edges too.
    """
    return _apply(space, t, check_subsets=True)


def apply_script(
    space: ConceptualSpace, script: TransformationScript, mode: Optional[str] = None
) -> ConceptualSpace:
    """Fold :func:`apply` over the steps.

    Strict mode validates every intermediate space.  Lenient mode defers
    the content-subset check to the end but still rejects cycles at once.
    Failures are reported as StepFailed with a 1-based step index.
    """
    mode = mode or script.mode
    strict = mode == STRICT
    current = space
    for i, step in enumerate(script.steps, start=1):
        try:
            current = _apply(current, step, check_subsets=strict)
        except ConceptSpaceError as exc:
            raise StepFailed(i, exc) from exc
    if not strict:
        try:
            current = build_space(current.name, current.vertices, current.edges)
        except ConceptSpaceError as exc:
            raise StepFailed(len(script.steps), exc) from exc
    return current


def axiom_changes(before: ConceptualSpace, after: ConceptualSpace) -> AxiomChanges:
    a, b = axioms(before), axioms(after)
    return AxiomChanges(gained=b - a, lost=a - b)


def impact(
    space: ConceptualSpace, target: str, edit: Optional[Transformation] = None
) -> ImpactReport:
    """Dependents of ``target`` in the pre-edit space.

    When ``edit`` is given it is applied to compute which axioms it adds
    or removes.
    """
    space.vertex(target)
    deps = reach_sets(space).depends[target]
    changes = AxiomChanges()
    if edit is not None:
        changes = axiom_changes(space, apply(space, edit))
    return ImpactReport(target, len(deps), deps | {target}, changes)


def _content_key(c):
    return None if c is None else tuple(sorted(c))


def diff(source: ConceptualSpace, dest: ConceptualSpace) -> TransformationScript:
    """Strict-mode script turning ``source`` into ``dest``, matching vertices by id.

    Steps come in the order RemoveEdge, RemoveVertex, ModifyVertex,
    AddVertex, AddEdge.  A shared edge whose endpoint contents change is
    removed and re-added around the modifications, so that no
    intermediate space violates the subset condition.
    """
    src, dst = source.index, dest.index
    changed_content = {
        i for i in src.keys() & dst.keys()
        if _content_key(src[i].content) != _content_key(dst[i].content)
    }

    def cycled(edge):
        u, v = edge
        if not ({u, v} & changed_content):
            return False
        # vacuous throughout if one endpoint is intensional on both sides
        return not any(src[x].content is None and dst[x].content is None for x in (u, v))

    kept = {e for e in source.edge_set & dest.edge_set if not cycled(e)}
    steps: list[Transformation] = []
    steps += [RemoveEdge(u, v) for u, v in sorted(source.edge_set - kept)]
    steps += [RemoveVertex(i) for i in sorted(src.keys() - dst.keys())]
    for i in sorted(src.keys() & dst.keys()):
        s, d = src[i], dst[i]
        if s.label != d.label or i in changed_content:
            steps.append(ModifyVertex(i, d.label, d.content))
    steps += [AddVertex(dst[i]) for i in sorted(dst.keys() - src.keys())]
    steps += [AddEdge(u, v) for u, v in sorted(dest.edge_set - kept)]
    return TransformationScript(tuple(steps), STRICT)


def _sinks_first(space: ConceptualSpace, ids: Iterable[str]) -> list[str]:
    wanted = set(ids)
    return [i for i in reversed(topological_order(space)) if i in wanted]


def revise_to_include(
    space: ConceptualSpace,
    artifact: Artifact,
    contents_hint: Mapping[str, Iterable[str]] | None = None,
    headers=DEFAULT_HEADERS,
) -> TransformationScript:
    """Fewest edits after which ``artifact`` validates against the space.

    Missing support vertices are added (content from ``contents_hint``,
    intensional otherwise).  Supporting vertices whose content lacks the
    witness are widened by exactly the witness, prerequisites first.  A
    widening that would break containment in a prerequisite outside the
    support raises UnresolvableSubsetConflict.
    """
    contents_hint = contents_hint or {}
    try:
        validate_artifact(space, artifact, headers)
        return TransformationScript()
    except (UnknownVertex, WitnessNotInIntersection):
        pass

    w = artifact.witness
    missing = sorted(s for s in artifact.support if s not in space)
    present = sorted(s for s in artifact.support if s in space)
    new_contents = {
        s: (frozenset(contents_hint[s]) if s in contents_hint else None) for s in missing
    }
    all_contents = [space.index[s].content for s in present] + list(new_contents.values())
    needs_witness = all(c is not None for c in all_contents)

    steps: list[Transformation] = []
    for s in missing:
        check_id(s)
        content = new_contents[s]
        if needs_witness and w not in content:
            content = content | {w}
        steps.append(AddVertex(ConstraintVertex(s, s, content)))

    if needs_witness:
        lacking = {s for s in present if w not in space.index[s].content}
        for s in sorted(lacking):
            for p in space.successors[s]:
                pc = space.index[p].content
                if pc is not None and w not in pc and p not in lacking:
                    raise UnresolvableSubsetConflict(
                        f"widening {s} by {w!r} breaks containment in {p}"
                    )
        for s in _sinks_first(space, lacking):
            v = space.index[s]
            steps.append(ModifyVertex(s, v.label, v.content | {w}))
    return TransformationScript(tuple(steps), STRICT)


__all__ = [
    "AddVertex",
    "RemoveVertex",
    "ModifyVertex",
    "AddEdge",
    "RemoveEdge",
    "Transformation",
    "TransformationScript",
    "AxiomChanges",
    "ImpactReport",
    "STRICT",
    "LENIENT",
    "apply",
    "apply_script",
    "axiom_changes",
    "impact",
    "diff",
    "revise_to_include",
]
