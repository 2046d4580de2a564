"""
Named small instances used by the fixture files, the CLI and the tests.
"""

from genrank.exactla import Field, Matrix
from genrank.pmod import PersistenceModule, entire_module
from genrank.poset import Poset, SubposetEmbedding


def grid_id(col, row):
    return "x%dy%d" % (col, row)


# 3 x 5 grid with the bottom-left corner removed; row 0 is the bottom row
GRID_CELLS = ([(c, 0) for c in range(1, 5)] + [(c, 1) for c in range(5)]
              + [(c, 2) for c in range(5)])

GRID_DIMS = {
    (0, 2): 2, (1, 2): 2, (2, 2): 2, (3, 2): 3, (4, 2): 2,
    (0, 1): 3, (1, 1): 3, (2, 1): 2, (3, 1): 2, (4, 1): 3,
    (1, 0): 2, (2, 0): 2, (3, 0): 3, (4, 0): 2,
}

_I2 = [[1, 0], [0, 1]]
_I3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]

GRID_MAPS = {
    ((0, 2), (1, 2)): [[1, 0], [1, 1]],
    ((1, 2), (2, 2)): [[1, -1], [0, 1]],
    ((2, 2), (3, 2)): [[-1, 1], [0, 0], [1, 0]],
    ((3, 2), (4, 2)): [[1, 0, 0], [0, -1, 0]],
    ((0, 1), (1, 1)): _I3,
    ((1, 1), (2, 1)): [[1, 0, 1], [0, 1, -1]],
    ((2, 1), (3, 1)): [[-1, 1], [0, 1]],
    ((3, 1), (4, 1)): [[2, 1], [0, 1], [1, 1]],
    ((1, 0), (2, 0)): [[1, -1], [1, 1]],
    ((2, 0), (3, 0)): [[1, 0], [0, 1], [-1, 1]],
    ((3, 0), (4, 0)): [[0, -1, 0], [-1, 0, 0]],
    ((0, 1), (0, 2)): [[1, 1, 0], [-1, 0, -1]],
    ((1, 1), (1, 2)): [[1, 1, 0], [0, 1, -1]],
    ((2, 1), (2, 2)): _I2,
    ((3, 1), (3, 2)): [[1, 0], [0, 0], [-1, 1]],
    ((4, 1), (4, 2)): [[1, 0, -1], [1, 1, -2]],
    ((1, 0), (1, 1)): [[1, -1], [0, 2], [1, 1]],
    ((2, 0), (2, 1)): [[1, 1], [-1, 0]],
    ((3, 0), (3, 1)): [[-2, -1, 0], [-1, 0, 0]],
    ((4, 0), (4, 1)): [[2, 5], [0, 1], [1, 3]],
}

# distinguished objects of the grid
GRID_MIN_LEFT = grid_id(0, 1)
GRID_MIN_BOTTOM = grid_id(1, 0)
GRID_JOIN = grid_id(1, 1)
GRID_MAX = grid_id(4, 2)


def grid_poset():
    cells = set(GRID_CELLS)
    covers = []
    for c, r in GRID_CELLS:
        for d in ((c + 1, r), (c, r + 1)):
            if d in cells:
                covers.append((grid_id(c, r), grid_id(*d)))
    return Poset([grid_id(c, r) for c, r in GRID_CELLS], covers)


def grid_module(field=None):
    """The 14-object grid module with its fixed integer matrices."""
    field = field or Field.rational()
    P = grid_poset()
    dims = {grid_id(*k): d for k, d in GRID_DIMS.items()}
    maps = {(grid_id(*a), grid_id(*b)): Matrix.from_rows(field, m, GRID_DIMS[a])
            for (a, b), m in GRID_MAPS.items()}
    return PersistenceModule(P, field, dims, maps)


def grid_connector_embedding(connector):
    """Minima, their join and the maximum, joined to the maximum by ``connector``."""
    P = grid_poset()
    carrier = [GRID_MIN_LEFT, GRID_MIN_BOTTOM, GRID_JOIN, GRID_MAX]
    rels = [(GRID_MIN_LEFT, GRID_JOIN), (GRID_MIN_BOTTOM, GRID_JOIN), connector]
    return SubposetEmbedding(P, carrier, rels)


def diamond_poset():
    """``p1, p2 <= p3 <= p4``."""
    return Poset(["p1", "p2", "p3", "p4"], [("p1", "p3"), ("p2", "p3"), ("p3", "p4")])


def nonfull_diamond_embedding(full=False):
    """Inclusion of the diamond where ``p1 <= p4`` is dropped from the source.

    The fiber over ``p3`` is ``{p3, p4}`` with no relation between them, so
    the non-full version is not final.
    """
    P = diamond_poset()
    if full:
        return SubposetEmbedding(P, P.elements)
    return SubposetEmbedding(P, P.elements, [("p1", "p3"), ("p2", "p3"), ("p2", "p4")])


def plane_points_poset():
    """Three incomparable points of the plane, two maxima, and the joins and
    meet between them, under the product order."""
    pts = {
        "s1": (0, 2), "s2": (1, 1), "s3": (2, 0),
        "j12": (1, 2), "j23": (2, 1), "j123": (2, 2),
        "m": (3, 3), "t1": (3, 4), "t2": (4, 3),
    }
    names = list(pts)
    rels = [(a, b) for a in names for b in names if a != b
            and pts[a][0] <= pts[b][0] and pts[a][1] <= pts[b][1]]
    return Poset(names, rels)


def plane_points_module(field=None):
    return entire_module(plane_points_poset(), field or Field.rational())
