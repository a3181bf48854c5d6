import math
import os
import random
from itertools import combinations

import pytest

from trisample.generators import complete_graph, cycle, erdos_renyi, paw, path, star
from trisample.graph import QueryGraph, load_edge_list
from trisample.labels import Label

DATA = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data")

CORPUS_FILES = [
    "k3.txt",
    "k4.txt",
    "paw.txt",
    "star_10.txt",
    "cycle_12.txt",
    "er_40_p20_seed3.txt",
    "er_100_p10_seed42.txt",
    "k20_noise_120_p08_seed1.txt",
    "k50.txt",
]


def data_path(name: str) -> str:
    return os.path.join(DATA, name)


def load(name: str) -> QueryGraph:
    return load_edge_list(data_path(name))


def corpus() -> dict[str, QueryGraph]:
    graphs = {name[:-4]: load(name) for name in CORPUS_FILES}
    graphs["path_5"] = path(5)
    graphs["er_25_p30_seed1"] = erdos_renyi(25, 0.3, 1)
    graphs["er_30_p50_seed2"] = erdos_renyi(30, 0.5, 2)
    return graphs


def small_corpus(max_n: int = 50) -> dict[str, QueryGraph]:
    return {k: g for k, g in corpus().items() if g.n <= max_n}


def brute_triangles(graph: QueryGraph) -> list[tuple[int, int, int]]:
    """Independent triangle list straight from pair membership."""
    edges = set(graph.edges())
    adj = lambda a, b: (min(a, b), max(a, b)) in edges  # noqa: E731
    return [t for t in combinations(range(graph.n), 3) if adj(t[0], t[1]) and adj(t[0], t[2]) and adj(t[1], t[2])]


def random_labels(n: int, rng: random.Random, p_heavy: float | None = None) -> dict[int, Label]:
    p = rng.random() if p_heavy is None else p_heavy
    return {v: Label.HEAVY if rng.random() < p else Label.LIGHT for v in range(n)}


def mean_and_se(values: list[float]) -> tuple[float, float]:
    n = len(values)
    mean = sum(values) / n
    var = sum((x - mean) ** 2 for x in values) / (n - 1)
    return mean, math.sqrt(var / n)


def sample_variance_with_se(values: list[float]) -> tuple[float, float]:
    """Sample variance and a standard error for it (from the fourth moment)."""
    n = len(values)
    mean = sum(values) / n
    sq = [(x - mean) ** 2 for x in values]
    var = sum(sq) / (n - 1)
    m4 = sum(s * s for s in sq) / n
    return var, math.sqrt(max(m4 - var * var, 0.0) / n)


@pytest.fixture(scope="session")
def k3():
    return complete_graph(3)


@pytest.fixture(scope="session")
def k4():
    return complete_graph(4)


@pytest.fixture(scope="session")
def paw_graph():
    return paw()


@pytest.fixture(scope="session")
def star3():
    return star(3)


@pytest.fixture(scope="session")
def c5():
    return cycle(5)


# acceptance criteria register their verdicts here; the summary hook prints them
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
