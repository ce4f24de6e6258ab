"""Exit criteria.  Each test is tagged with its criterion; the terminal
summary prints one PASS/FAIL line per criterion."""

import time
from fractions import Fraction
from itertools import cycle

import numpy as np
import pytest

from conceptspace.artifact import Artifact, generate_artifact, induce_space, locate, similarity
from conceptspace.errors import CycleDetected, EmptyIntersection, IntensionalSupport, SubsetViolation
from conceptspace.io import (
    CORPUS_NAMES,
    SpaceDocument,
    corpus_text,
    load_corpus,
    parse_document,
    write_document,
)
from conceptspace.oracle import (
    DagGenParams,
    brute_reach,
    exhaustive_small_spaces,
    random_dag,
    random_labelled_space,
    random_string_family,
)
from conceptspace.space import (
    axioms,
    build_space,
    check_theorem,
    max_potential,
    reach_sets,
    rules,
    transformative_potential,
)
from conceptspace.transform import AddEdge, ModifyVertex, apply, apply_script, diff

from test_cli import EXAMPLES, GOLDEN, invoke

SEED = 20251015
PROBABILITIES = (Fraction(1, 10), Fraction(3, 10), Fraction(7, 10))


def random_suite(count=1000, seed=SEED):
    seeds = np.random.SeedSequence(seed).generate_state(count, dtype=np.uint64)
    probs = cycle(PROBABILITIES)
    return [
        random_dag(DagGenParams((5, 50), next(probs), int(s), ensure_nonaxiom=True))
        for s in seeds
    ]


def exhaustive_suite():
    return [s for n in range(1, 5) for s in exhaustive_small_spaces(n)]


@pytest.fixture(scope="module")
def random_spaces():
    return random_suite()


@pytest.fixture(scope="module")
def small_spaces():
    return exhaustive_suite()


@pytest.mark.criterion("1. theorem suite: every maximizer is an axiom")
def test_theorem_suite():
    start = time.perf_counter()
    small = [s for s in exhaustive_suite() if rules(s)]
    spaces = small + random_suite()
    assert len(spaces) == 1000 + sum(1 for s in exhaustive_suite() if s.edges)
    violations = 0
    for s in spaces:
        verdict = check_theorem(s)
        brute = brute_reach(s).depends
        best = max(len(d) for d in brute.values())
        brute_max = {v for v, d in brute.items() if len(d) == best}
        if not (verdict.holds and brute_max <= axioms(s) and set(verdict.maximizers) == brute_max):
            violations += 1
    elapsed = time.perf_counter() - start
    assert violations == 0
    assert elapsed < 10.0, f"theorem suite took {elapsed:.2f}s"


@pytest.mark.criterion("2. geocentric and heliocentric reproduction")
def test_geo_helio_reproduction():
    geo = load_corpus("geocentric").space
    helio = load_corpus("heliocentric").space
    assert axioms(geo) == {"A1", "A2"}
    assert {v: transformative_potential(geo, v) for v in geo.ids} == {
        "A1": 2, "A2": 2, "V2": 1, "V1": 0,
    }
    # transformed vertices keep their ids: A1' is A1, V3' is new
    assert axioms(helio) == {"A1", "A2"}
    assert {v: transformative_potential(helio, v) for v in helio.ids} == {
        "A1": 3, "A2": 3, "V2": 2, "V1": 0, "V3'": 0,
    }
    assert max_potential(helio) == (3, ("A1", "A2"))


@pytest.mark.criterion("3. Copernican script")
def test_copernican():
    geo = load_corpus("geocentric")
    helio = load_corpus("heliocentric").space
    assert apply_script(geo.space, geo.scripts["copernican"]).structurally_equal(helio)
    assert apply_script(geo.space, diff(geo.space, helio)).structurally_equal(helio)


@pytest.mark.criterion("4. oracle equivalence")
def test_oracle_equivalence(small_spaces, random_spaces):
    mismatches = [s.name for s in small_spaces + random_spaces if reach_sets(s) != brute_reach(s)]
    assert len(small_spaces) == 1 + 2 + 8 + 64
    assert len(random_spaces) == 1000
    assert mismatches == []


@pytest.mark.criterion("5. edge monotonicity")
def test_edge_monotonicity(small_spaces, random_spaces):
    violations = 0
    edges = 0
    for s in small_spaces + random_spaces:
        depends = brute_reach(s).depends
        for u, v in s.edges:
            edges += 1
            if not len(depends[v]) >= len(depends[u]) + 1:
                violations += 1
    assert edges > 0
    assert violations == 0


@pytest.mark.criterion("6. Jaccard properties")
def test_jaccard():
    rng = np.random.default_rng(SEED)
    ids = [f"n{i}" for i in range(10)]

    def draw():
        support = {x for x in ids if rng.random() < 0.4}
        return Artifact("law", support or {ids[int(rng.integers(10))]}, "w")

    for _ in range(1000):
        a, b = draw(), draw()
        s = similarity(a, b)
        assert isinstance(s, Fraction)
        assert s == similarity(b, a)
        assert 0 <= s <= 1
        assert similarity(a, a) == 1
        assert s == Fraction(len(a.support & b.support), len(a.support | b.support))
    worked = similarity(Artifact("law", {"V2", "A1", "A2"}, "x"), Artifact("law", {"A1", "A2"}, "y"))
    assert worked == Fraction(2, 3)


@pytest.mark.criterion("7. induction soundness")
def test_induction():
    rng = np.random.default_rng(SEED)
    for trial in range(200):
        family = random_string_family(rng, int(rng.integers(1, 12)))
        contents = {f"s{i}": c for i, c in enumerate(family)}
        keys = sorted(contents)
        arts = []
        for _ in range(int(rng.integers(1, 5))):
            support = {k for k in keys if rng.random() < 0.3} or {keys[0]}
            common = frozenset.intersection(*(contents[k] for k in support))
            if not common:
                support = {min(support)}
                common = contents[min(support)]
            arts.append(Artifact("law", support, min(common)))
        used = set().union(*(a.support for a in arts))
        space = induce_space(f"induced-{trial}", arts, contents)
        assert set(space.ids) == used
        assert build_space(space.name, space.vertices, space.edges) == space
        reach = brute_reach(space).prereq
        for u in used:
            assert reach[u] == {v for v in used if contents[u] < contents[v]}
        for a in arts:
            assert locate(space, a).support == a.support


def random_document(rng, universe):
    a = random_labelled_space(rng, universe)
    b = random_labelled_space(rng, universe)
    artifacts = []
    for vid in a.ids:
        if rng.random() < 0.4:
            try:
                artifacts.append(generate_artifact(a, "law", {vid}))
            except IntensionalSupport:
                artifacts.append(Artifact("open-question", {vid}, f"q{int(rng.integers(100))}"))
            except EmptyIntersection:
                pass
    meta = (("seed-note", "random ünïcode ✓ \"quoted\""),)
    return SpaceDocument(a, tuple(artifacts), {"to-b": diff(a, b)}, meta=meta), b


@pytest.mark.criterion("8. round trips")
def test_round_trips():
    for name in CORPUS_NAMES:
        text = corpus_text(name)
        assert write_document(parse_document(text)) == text

    rng = np.random.default_rng(SEED)
    universe = [f"c{i}" for i in range(8)]
    for _ in range(100):
        doc, _ = random_document(rng, universe)
        text = write_document(doc)
        assert parse_document(text) == doc
        assert write_document(parse_document(text)) == text

    mismatches = 0
    for _ in range(200):
        a = random_labelled_space(rng, universe)
        b = random_labelled_space(rng, universe)
        if not apply_script(a, diff(a, b)).structurally_equal(b):
            mismatches += 1
    assert mismatches == 0


@pytest.mark.criterion("9. rejection behavior")
def test_rejections(random_spaces):
    attempts = rejected = 0
    for s in random_spaces[:200]:
        before = s.structure()
        prereq = reach_sets(s).prereq
        for v in s.ids:
            for u in sorted(prereq[v]):
                # v reaches u, so u -> v would close a cycle
                attempts += 1
                try:
                    apply(s, AddEdge(u, v))
                except CycleDetected:
                    rejected += 1
        assert s.structure() == before
    assert attempts > 0 and rejected == attempts

    rng = np.random.default_rng(SEED)
    universe = [f"c{i}" for i in range(8)]
    attempts = rejected = 0
    for _ in range(300):
        s = random_labelled_space(rng, universe, edge_probability=0.5, intensional_probability=0.0)
        before = s.structure()
        reach = reach_sets(s).prereq
        for u, v in s.edges:
            # widen the dependent with a string its prerequisite lacks
            attempts += 1
            try:
                apply(s, ModifyVertex(u, "x", s.vertex(u).content | {"fresh"}))
            except SubsetViolation:
                rejected += 1
        for u in s.ids:
            for v in s.ids:
                cu, cv = s.vertex(u).content, s.vertex(v).content
                if u == v or (u, v) in s.edge_set or u in reach[v] or cu <= cv:
                    continue
                attempts += 1
                try:
                    apply(s, AddEdge(u, v))
                except SubsetViolation:
                    rejected += 1
        assert s.structure() == before
    assert attempts > 0 and rejected == attempts


@pytest.mark.criterion("10. CLI determinism")
def test_cli_determinism():
    for name, argv in sorted(EXAMPLES.items()):
        first, second = invoke(argv), invoke(argv)
        assert first == second, name
        assert first[0] == 0, name
        assert first[1] == (GOLDEN / f"{name}.txt").read_text(encoding="utf-8"), name
