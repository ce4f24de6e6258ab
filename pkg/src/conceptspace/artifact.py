"""Artifacts (header, support, witness) and the operations over them."""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    DuplicateContent,
    EmptyArtifactList,
    EmptyIntersection,
    EmptySupport,
    IntensionalSupport,
    MissingContent,
    UnknownHeader,
    UnknownVertex,
    WitnessNotInIntersection,
)
from .space import ConceptualSpace, ConstraintVertex, build_space, check_id, reach_sets

DEFAULT_HEADERS = frozenset(
    {"phenomenon", "law", "measuring-technique", "open-question", "theory", "technique"}
)


@dataclass(frozen=True)
class Artifact:
    header: str
    support: frozenset[str]
    witness: str
    # False when some supporting vertex has no content to check against.
    verified: bool = field(default=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.support, frozenset):
            object.__setattr__(self, "support", frozenset(self.support))


@dataclass(frozen=True)
class Location:
    support: frozenset[str]
    closure: frozenset[str]


def _intersection(space: ConceptualSpace, support: Iterable[str]):
    """Intersection of the supporting contents, or None if any is intensional."""
    contents = [space.vertex(s).content for s in sorted(support)]
    if any(c is None for c in contents):
        return None
    return frozenset.intersection(*contents)


def validate_artifact(
    space: ConceptualSpace, artifact: Artifact, headers=DEFAULT_HEADERS
) -> bool:
    """Raise if ``artifact`` is invalid for ``space``; return whether it was verified."""
    if artifact.header not in headers:
        raise UnknownHeader(f"header {artifact.header!r} not in {sorted(headers)}")
    if not artifact.support:
        raise EmptySupport("artifact support must be nonempty")
    for s in sorted(artifact.support):
        if s not in space:
            raise UnknownVertex(f"unknown vertex {s}")
    common = _intersection(space, artifact.support)
    if common is None:
        return False
    if artifact.witness not in common:
        raise WitnessNotInIntersection(
            f"witness {artifact.witness!r} not in the intersection of "
            f"{sorted(artifact.support)} ({sorted(common)})"
        )
    return True


def make_artifact(
    space: ConceptualSpace,
    header: str,
    support: Iterable[str],
    witness: str,
    headers=DEFAULT_HEADERS,
) -> Artifact:
    candidate = Artifact(header, frozenset(support), witness)
    ok = validate_artifact(space, candidate, headers)
    return Artifact(header, candidate.support, witness, verified=ok)


def locate(space: ConceptualSpace, artifact: Artifact) -> Location:
    """Support of the artifact plus every constraint it presupposes."""
    for s in sorted(artifact.support):
        space.vertex(s)
    prereq = reach_sets(space).prereq
    closure = set(artifact.support)
    for s in artifact.support:
        closure |= prereq[s]
    return Location(artifact.support, frozenset(closure))


def jaccard(a: Iterable[str], b: Iterable[str]) -> Fraction:
    a, b = set(a), set(b)
    union = a | b
    if not union:
        raise EmptySupport("Jaccard similarity of two empty sets is undefined")
    return Fraction(len(a & b), len(union))


def similarity(a: Artifact, b: Artifact) -> Fraction:
    """Exact Jaccard similarity of the two support sets."""
    return jaccard(a.support, b.support)


def _transitive_reduction_of_subsets(contents: Mapping[str, frozenset[str]]):
    ids = sorted(contents)
    below = {u: [v for v in ids if contents[u] < contents[v]] for u in ids}
    edges = []
    for u in ids:
        for v in below[u]:
            if not any(contents[w] < contents[v] for w in below[u]):
                edges.append((u, v))
    return edges


def induce_space(
    name: str,
    artifacts: Iterable[Artifact],
    contents: Mapping[str, Iterable[str]],
    labels: Mapping[str, str] | None = None,
    headers=DEFAULT_HEADERS,
) -> ConceptualSpace:
    """Build a space over the union of the artifacts' supports.

    Edges are the transitive reduction of strict containment between the
    vertex contents.  Two vertices with equal contents are rejected since
    containment between them would need a two-cycle.
    """
    artifacts = list(artifacts)
    if not artifacts:
        raise EmptyArtifactList("cannot induce a space from no artifacts")
    ids: set[str] = set()
    for a in artifacts:
        if not a.support:
            raise EmptySupport("artifact support must be nonempty")
        ids |= a.support
    missing = sorted(i for i in ids if i not in contents)
    if missing:
        raise MissingContent(f"no content given for {missing}")
    sets = {i: frozenset(contents[i]) for i in ids}
    by_set: dict[frozenset[str], str] = {}
    for i in sorted(ids):
        check_id(i)
        if sets[i] in by_set:
            raise DuplicateContent(f"{by_set[sets[i]]} and {i} have equal content")
        by_set[sets[i]] = i
    labels = labels or {}
    vertices = [ConstraintVertex(i, labels.get(i, i), sets[i]) for i in ids]
    space = build_space(name, vertices, _transitive_reduction_of_subsets(sets))
    for a in artifacts:
        validate_artifact(space, a, headers)
    return space


def generate_artifact(
    space: ConceptualSpace,
    header: str,
    support: Iterable[str],
    headers=DEFAULT_HEADERS,
) -> Artifact:
    """New artifact whose witness is the smallest string all supports admit."""
    support = frozenset(support)
    if not support:
        raise EmptySupport("artifact support must be nonempty")
    for s in sorted(support):
        if space.vertex(s).content is None:
            raise IntensionalSupport(f"vertex {s} has no content to draw a witness from")
    common = _intersection(space, support)
    if not common:
        raise EmptyIntersection(f"supports {sorted(support)} admit no common string")
    return make_artifact(space, header, support, min(common), headers)
