import itertools
import random
from pathlib import Path as FsPath

import pytest

from leavitt import Graph, LeavittAlgebra, Monomial, Specialization, construct_regular

DATA = FsPath(__file__).resolve().parent.parent / "data"

CORPUS = ("loop", "toeplitz", "rose2", "twocycle", "line", "y", "g3")


def load_graph(name: str) -> Graph:
    return Graph.load(DATA / f"{name}.json")


def corpus_graphs():
    return {name: load_graph(name) for name in CORPUS}


@pytest.fixture(scope="session")
def toeplitz():
    return load_graph("toeplitz")


@pytest.fixture(scope="session")
def gamma_a(toeplitz):
    return Specialization.load(toeplitz, DATA / "gammaA.json")


@pytest.fixture(scope="session")
def gamma_b(toeplitz):
    return Specialization.load(toeplitz, DATA / "gammaB.json")


@pytest.fixture(scope="session")
def alg_a(gamma_a):
    return LeavittAlgebra(gamma_a)


@pytest.fixture(scope="session")
def alg_b(gamma_b):
    return LeavittAlgebra(gamma_b)


@pytest.fixture(scope="session")
def loop_alg():
    g = load_graph("loop")
    return LeavittAlgebra(construct_regular(g))


# -- independent oracles ------------------------------------------------------


def descendants_by_relaxation(g: Graph, v: str) -> frozenset:
    """Transitive closure by repeated edge relaxation over a boolean table."""
    reach = {u: u == v for u in g.vertices}
    changed = True
    while changed:
        changed = False
        for e in g.edges:
            if reach[e.src] and not reach[e.dst]:
                reach[e.dst] = True
                changed = True
    return frozenset(u for u, ok in reach.items() if ok)


def hereditary_sets_bruteforce(g: Graph) -> list[frozenset]:
    """Every nonempty hereditary subset, by exhaustive enumeration."""
    out = []
    verts = g.vertices
    for r in range(1, len(verts) + 1):
        for combo in itertools.combinations(verts, r):
            W = frozenset(combo)
            if all(descendants_by_relaxation(g, w) <= W for w in W):
                out.append(W)
    return out


def minimal_hereditary_bruteforce(g: Graph) -> list[frozenset]:
    hered = hereditary_sets_bruteforce(g)
    minimal = [W for W in hered if not any(U < W for U in hered)]
    return sorted(minimal, key=min)


# -- randomized generators ----------------------------------------------------


def random_graph(rng: random.Random, max_vertices: int = 8, max_edges: int = 16) -> Graph:
    """A random graph where every vertex is a sink or has out-degree >= 1."""
    n = rng.randint(1, max_vertices)
    verts = [f"v{i}" for i in range(n)]
    edges = []
    non_sinks = [v for v in verts if rng.random() < 0.7]
    counter = 0
    for v in non_sinks:
        out = rng.randint(1, 2)
        for _ in range(out):
            if len(edges) >= max_edges:
                break
            edges.append((f"e{counter}", v, rng.choice(verts)))
            counter += 1
    return Graph(verts, edges)


def random_specialization(rng: random.Random, g: Graph) -> Specialization:
    mapping = {}
    for v in g.vertices:
        out = g.out_edges(v)
        if out:
            mapping[v] = rng.choice(out).name
    return Specialization(g, mapping)


def random_path(rng: random.Random, g: Graph, start: str, max_len: int):
    p = g.vertex_path(start)
    for _ in range(rng.randint(0, max_len)):
        out = g.out_edges(p.end)
        if not out:
            break
        p = g.extend(p, rng.choice(out))
    return p


def random_monomial(rng: random.Random, alg: LeavittAlgebra, max_len: int = 4) -> Monomial:
    g = alg.graph
    while True:
        v = rng.choice(g.vertices)
        w = rng.choice(g.vertices)
        p = random_path(rng, g, v, max_len)
        q = random_path(rng, g, w, max_len)
        if p.end == q.end:
            return Monomial(p, q)


def random_element(rng: random.Random, alg: LeavittAlgebra, terms: int = 3, max_len: int = 3):
    pairs = []
    for _ in range(rng.randint(1, terms)):
        coeff = rng.choice([-2, -1, 1, 2, 3])
        pairs.append((random_monomial(rng, alg, max_len), coeff))
    return alg.element(pairs)
