"""
Seeded random posets and modules with known entire-interval multiplicity.

Everything is driven by ``random.Random(seed)``, so the same seed and
parameters reproduce the same objects exactly.
"""

import random

from genrank.errors import InputError
from genrank.exactla import Matrix, rank
from genrank.fincat import FinCategory, linearized_hom_module
from genrank.pmod import conjugate, direct_sum, interval_module, zero_module
from genrank.poset import Poset, SubposetEmbedding


def _rng(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_poset(seed, n, density=0.3, connected=False):
    """Random order on ``p0..p{n-1}`` extending the generation order.

    Each pair ``i < j`` is related with probability ``density`` before
    closing transitively. With ``connected=True`` every new element is also
    attached to a random earlier one (above or below), which leaves a
    spanning zigzag.
    """
    if n < 1:
        raise InputError("n must be >= 1")
    rng = _rng(seed)
    els = ["p%d" % i for i in range(n)]
    rels = []
    for j in range(n):
        for i in range(j):
            if rng.random() < density:
                rels.append((els[i], els[j]))
    if connected:
        for j in range(1, n):
            i = rng.randrange(j)
            rels.append((els[i], els[j]))
    return Poset(els, rels)


def random_interval(seed, P):
    """Convex hull of one to three random elements, or ``↑a ∩ ↓b`` if that is disconnected."""
    rng = _rng(seed)
    k = rng.randint(1, min(3, len(P)))
    S = rng.sample(list(P.elements), k)
    hull = P.convex_hull(S)
    if P.is_connected(hull):
        return hull
    a = S[0]
    b = rng.choice(P.upset([a]))
    return [p for p in P.elements if P.leq(a, p) and P.leq(p, b)]


def random_embedding(seed, P, full=True, keep_maxima=False, p_keep=0.5):
    """Random subposet embedding into ``P``.

    Each element is kept with probability ``p_keep`` (all maxima too if
    ``keep_maxima``). A non-full embedding keeps a random subset of the
    induced relations.
    """
    rng = _rng(seed)
    top = set(P.maxima())
    S = [p for p in P.elements if (keep_maxima and p in top) or rng.random() < p_keep]
    if not S:
        S = [rng.choice(P.elements)]
    if full:
        return SubposetEmbedding(P, S)
    rels = [r for r in P.relations if r[0] in S and r[1] in S]
    return SubposetEmbedding(P, S, [r for r in rels if rng.random() < 0.5])


def random_invertible(rng, field, n, entry_range=3):
    """Rejection-sample an invertible ``n x n`` matrix."""
    while True:
        if field.kind == "prime":
            rows = [[rng.randrange(field.p) for _ in range(n)] for _ in range(n)]
        else:
            rows = [[rng.randint(-entry_range, entry_range) for _ in range(n)] for _ in range(n)]
        m = Matrix.from_rows(field, rows, n)
        if rank(m) == n:
            return m


def planted_module(seed, P, intervals, field):
    """Direct sum of interval modules, conjugated by random bases.

    Returns ``(M, planted_mult)`` where ``planted_mult`` counts the
    intervals equal to all of ``P``.
    """
    rng = _rng(seed)
    M = zero_module(P, field)
    full = set(P.elements)
    planted = 0
    for I in intervals:
        if not P.is_interval(I):
            raise InputError("%r is not an interval" % (sorted(I),))
        M = direct_sum(M, interval_module(P, I, field))
        planted += set(I) == full
    bases = {o: random_invertible(rng, field, M.dims[o]) for o in P.elements}
    M = conjugate(M, bases)
    M.validate()
    return M, planted


def random_planted(seed, P, field, max_intervals=4, p_entire=0.35):
    """Sample intervals (each the entire poset with probability ``p_entire``) and plant them."""
    rng = _rng(seed)
    intervals = []
    for _ in range(rng.randint(1, max_intervals)):
        if rng.random() < p_entire:
            intervals.append(list(P.elements))
        else:
            intervals.append(random_interval(rng, P))
    M, m = planted_module(rng, P, intervals, field)
    return M, m, intervals


def free_module(seed, index, c, field):
    """The free module on ``Hom(c, -)``.

    On a poset this is the field on ``↑c``, with each one-dimensional space
    rescaled by a random nonzero scalar.
    """
    if isinstance(index, Poset):
        rng = _rng(seed)
        M = interval_module(index, index.upset([c]), field)
        bases = {o: random_invertible(rng, field, M.dims[o]) for o in index.elements}
        out = conjugate(M, bases)
        out.validate()
        return out
    return linearized_hom_module(index, c, field)


def random_category(seed, n_objects=4, density=0.5):
    """Free category on a random DAG of generating arrows.

    Objects are ``o0..``; each pair ``i < j`` gets zero, one or two arrows, so
    parallel morphisms occur. Morphisms are paths, named by their arrows
    joined with ``*``; identities are ``id_<o>``. Paths only go up in index,
    so the category is finite.
    """
    rng = _rng(seed)
    objs = ["o%d" % i for i in range(n_objects)]
    arrows = []
    for j in range(n_objects):
        for i in range(j):
            if rng.random() < density:
                for _ in range(rng.choice((1, 1, 2))):
                    arrows.append(("a%d" % len(arrows), i, j))
    paths = {(a,): (i, j) for a, i, j in arrows}
    frontier = list(paths)
    while frontier:
        nxt = []
        for p in frontier:
            for a, i, j in arrows:
                if i == paths[p][1]:
                    q = p + (a,)
                    paths[q] = (paths[p][0], j)
                    nxt.append(q)
        frontier = nxt
    name = {p: "*".join(p) for p in paths}
    identities = {o: "id_%s" % o for o in objs}
    morphisms = [(identities[o], o, o) for o in objs]
    morphisms += [(name[p], objs[s], objs[t]) for p, (s, t) in sorted(paths.items())]
    compose = {}
    for f, (fs, ft) in paths.items():
        for g, (gs, gt) in paths.items():
            if ft == gs:
                compose[(name[g], name[f])] = name[f + g]
    return FinCategory(objs, morphisms, identities, compose)
