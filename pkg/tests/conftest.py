import random

import pytest

from leavitt.fixtures import all_fixtures, fixture_graph
from leavitt.graph import EdgeClass, OMEGA, build_graph


@pytest.fixture(scope="session")
def fixtures():
    return all_fixtures()


for _name in ("g_loop", "g_toe", "g_rose2", "g_2cyc", "g_line", "g_omega"):

    def _make(name=_name):
        def fx():
            return fixture_graph(name)

        fx.__name__ = name
        return pytest.fixture(scope="session", name=name)(fx)

    globals()[_name] = _make()


def random_graph(rng: random.Random, max_vertices: int = 6, max_classes: int = 10,
                 allow_omega: bool = False, allow_multi: bool = True):
    """Seeded random multigraph; class names are deterministic in draw
    order so a fixed seed reproduces the exact graph."""
    n = rng.randint(1, max_vertices)
    vertices = ["v%d" % i for i in range(n)]
    k = rng.randint(0, max_classes)
    classes = []
    for i in range(k):
        src = rng.choice(vertices)
        dst = rng.choice(vertices)
        roll = rng.random()
        if allow_omega and roll < 0.12:
            mult = OMEGA
        elif allow_multi and roll < 0.3:
            mult = rng.randint(2, 3)
        else:
            mult = 1
        classes.append(EdgeClass("e%d" % i, src, dst, mult))
    return build_graph(vertices, classes)


def random_graphs(seed: int, count: int, **kw):
    rng = random.Random(seed)
    return [random_graph(rng, **kw) for _ in range(count)]
