"""Loaders for the graph fixtures that ship with the package.

g_loop    one vertex, one loop
g_toe     loop e at v plus an exit f to the sink w
g_rose2   two loops at a single vertex
g_2cyc    a two-cycle with an exit to a sink
g_line    a single edge into a sink
g_omega   two infinite emitters feeding a sink; one also carries a loop
"""

import json
from importlib import resources

from .graph import Graph, validate_graph

FIXTURE_NAMES = ("g_loop", "g_toe", "g_rose2", "g_2cyc", "g_line", "g_omega")


def fixture_graph(name: str) -> Graph:
    if name not in FIXTURE_NAMES:
        raise KeyError("unknown fixture %r; have %s" % (name, ", ".join(FIXTURE_NAMES)))
    data = resources.files("leavitt").joinpath("data/" + name + ".json").read_text()
    return validate_graph(json.loads(data))


def all_fixtures() -> dict:
    return {name: fixture_graph(name) for name in FIXTURE_NAMES}
