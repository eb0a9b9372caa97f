"""Named planar-diagram corpus used by the experiments and the test suite.

All diagrams were traced by hand and are re-checked by the PD validator:
arcs occur exactly twice and the declared signs orient every arc
consistently.
"""

from __future__ import annotations

import json
import os

from .linkhom import PDCode

_CORPUS = {
    # crossingless round unknot
    "unknot0": ((), (), 1),
    # one positive kink
    "unknot_r1plus": (((1, 1, 2, 2),), (1,), 0),
    # one negative kink
    "unknot_r1minus": (((2, 1, 1, 2),), (-1,), 0),
    # a strand poked under an adjacent strand of the same unknot
    "unknot_r2pair": (((1, 4, 2, 1), (2, 4, 3, 3)), (-1, 1), 0),
    # positive Hopf link (closure of two positive half-twists)
    "hopf": (((1, 3, 4, 2), (3, 1, 2, 4)), (1, 1), 0),
    # right-handed trefoil (closure of three positive half-twists)
    "trefoil": (((1, 3, 4, 2), (3, 5, 6, 4), (5, 1, 2, 6)), (1, 1, 1), 0),
    # figure eight (closure of the alternating 3-strand braid word)
    "figure8": (
        ((1, 4, 5, 2), (3, 5, 6, 7), (4, 1, 8, 6), (7, 8, 2, 3)),
        (1, -1, 1, -1),
        0,
    ),
}


def names():
    return sorted(_CORPUS)


def diagram(name):
    try:
        crossings, signs, loops = _CORPUS[name]
    except KeyError:
        raise KeyError(f"unknown diagram {name!r}; known: {', '.join(names())}") from None
    return PDCode(crossings=crossings, signs=signs, loops=loops)


def write_corpus(directory):
    """Writes one <name>.json per diagram; returns the file paths."""
    os.makedirs(directory, exist_ok=True)
    paths = []
    for name in names():
        path = os.path.join(directory, f"{name}.json")
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(diagram(name).to_json(), fh, indent=2)
            fh.write("\n")
        paths.append(path)
    return paths
