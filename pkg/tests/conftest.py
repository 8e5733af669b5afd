import itertools

import pytest

from quiverorbits.dynkin import adapted_word, build_diagram, build_quiver
from quiverorbits.linalg import _compiled


def orientations(type_letter, rank, limit=None):
    """Quivers for every orientation of the diagram (first ``limit`` of them)."""
    diagram = build_diagram(type_letter, rank)
    edges = sorted(tuple(sorted(e)) for e in diagram.edges)
    out = []
    for flips in itertools.product((False, True), repeat=len(edges)):
        arrows = [(j, i) if f else (i, j) for (i, j), f in zip(edges, flips)]
        out.append(build_quiver(diagram, arrows))
        if limit and len(out) >= limit:
            break
    return out


def word(type_letter, rank, arrows=None):
    return adapted_word(build_quiver(build_diagram(type_letter, rank), arrows))


SMALL_TYPES = [("A", 1), ("A", 2), ("A", 3), ("A", 4), ("D", 4), ("D", 5), ("E", 6)]

BACKENDS = ["python"] + (["cython"] if _compiled is not None else [])


@pytest.fixture(params=BACKENDS)
def kernel_backend(request):
    from quiverorbits import linalg
    previous = linalg.backend()
    linalg.use_backend(request.param)
    yield request.param
    linalg.use_backend(previous)
