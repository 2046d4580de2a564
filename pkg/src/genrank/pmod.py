"""
Persistence modules over finite posets and finite categories.

A module over a poset stores one matrix per Hasse cover; any other structure
map is the composite along the lexicographically least cover path. A module
over a ``FinCategory`` stores one matrix per non-identity morphism.
"""

from genrank.errors import FunctorialityError, InputError
from genrank.exactla import Matrix, block_diag, inverse
from genrank.fincat import FinCategory, Functor
from genrank.poset import Poset, PosetMap


def generator_keys(index):
    """``(key, src, tgt)`` for covers of a poset / non-identity morphisms."""
    if isinstance(index, Poset):
        return [((a, b), a, b) for a, b in index.covers]
    return [(m, index.src[m], index.tgt[m]) for m in index.non_identity()]


class PersistenceModule(object):

    def __init__(self, index, field, dims, maps, validate=True):
        if not isinstance(index, (Poset, FinCategory)):
            raise InputError("index must be a Poset or FinCategory")
        self.index = index
        self.field = field
        self.dims = {}
        for o in index.objects:
            d = dims.get(o, None)
            if d is None:
                raise InputError("missing dimension for %r" % (o,))
            if not isinstance(d, int) or isinstance(d, bool) or d < 0:
                raise InputError("bad dimension %r at %r" % (d, o))
            self.dims[o] = d
        extra = set(dims) - set(self.dims)
        if extra:
            raise InputError("dimensions given for unknown objects %s" % sorted(map(str, extra)))
        keys = self._generator_keys()
        stored = {}
        for key, s, t in keys:
            m = maps.get(key)
            if m is None:
                raise InputError("missing map for %s" % (self._key_str(key),))
            if m.field != field:
                raise InputError("map %s is over %s, module over %s"
                                 % (self._key_str(key), m.field, field))
            if m.shape != (self.dims[t], self.dims[s]):
                raise InputError("map %s has shape %dx%d, expected %dx%d"
                                 % (self._key_str(key), m.rows, m.cols, self.dims[t], self.dims[s]))
            stored[key] = m
        unknown = set(maps) - set(stored)
        if unknown:
            raise InputError("maps given for non-generators %s" % sorted(map(str, unknown)))
        self.maps = stored
        self._composites = {}
        if validate:
            self.validate()

    # --- shape ---------------------------------------------------------

    @property
    def is_poset_indexed(self):
        return isinstance(self.index, Poset)

    @property
    def objects(self):
        return self.index.objects

    def _generator_keys(self):
        return generator_keys(self.index)

    @staticmethod
    def _key_str(key):
        if isinstance(key, tuple) and len(key) == 2:
            return "%s<%s" % key
        return str(key)

    def generators(self):
        """``(key, src, tgt, matrix)`` for every stored generating map."""
        return [(k, s, t, self.maps[k]) for k, s, t in self._generator_keys()]

    def total_dim(self):
        return sum(self.dims.values())

    def is_zero(self):
        return self.total_dim() == 0

    def __eq__(self, other):
        return (isinstance(other, PersistenceModule) and self.index == other.index
                and self.field == other.field and self.dims == other.dims
                and self.maps == other.maps)

    def __repr__(self):
        return "PersistenceModule(dims=%s)" % self.dims

    # --- structure maps ------------------------------------------------

    def structure_map(self, p, q):
        """``M(p <= q)`` along the lexicographically least cover path."""
        P = self.index
        if not isinstance(P, Poset):
            raise InputError("structure_map needs a poset index; use morphism_map")
        if p == q:
            P._idx(p)
            return Matrix.identity(self.field, self.dims[p])
        key = (p, q)
        hit = self._composites.get(key)
        if hit is not None:
            return hit
        if not P.leq(p, q):
            raise InputError("%r is not <= %r" % (p, q))
        for c in P.upper_covers(p):
            if P.leq(c, q):
                out = self.structure_map(c, q) @ self.maps[(p, c)]
                self._composites[key] = out
                return out
        raise AssertionError("no cover path from %r to %r" % (p, q))

    def morphism_map(self, m):
        C = self.index
        if isinstance(C, Poset):
            a, b = m
            return self.structure_map(a, b)
        if C.is_identity(m):
            return Matrix.identity(self.field, self.dims[C.src[m]])
        return self.maps[m]

    def relation_maps(self):
        """Every non-identity relation / morphism with its matrix."""
        if isinstance(self.index, Poset):
            return [((a, b), a, b, self.structure_map(a, b)) for a, b in self.index.relations]
        C = self.index
        return [(m, C.src[m], C.tgt[m], self.maps[m]) for m in C.non_identity()]

    # --- validation ----------------------------------------------------

    def validate(self):
        """Raise ``FunctorialityError`` at the first non-commuting square."""
        if isinstance(self.index, Poset):
            P = self.index
            for p, q in P.relations:
                canon = self.structure_map(p, q)
                for c in P.upper_covers(p):
                    if P.leq(c, q) and self.structure_map(c, q) @ self.maps[(p, c)] != canon:
                        raise FunctorialityError(
                            "square does not commute: %s -> %s -> %s disagrees with the "
                            "canonical path" % (p, c, q), square=(p, c, q))
        else:
            C = self.index
            for f in C.non_identity():
                for g in C.hom(C.tgt[f], None):
                    if C.is_identity(g):
                        continue
                    h = C.compose(g, f)
                    if self.maps[g] @ self.maps[f] != self.morphism_map(h):
                        raise FunctorialityError(
                            "M(%s) M(%s) != M(%s)" % (g, f, h), square=(g, f, h))
        return True


# --- constructors -------------------------------------------------------------


def _convex_in_category(C, S):
    S = set(S)
    for f in C.morphisms:
        for g in C.hom(C.tgt[f], None):
            if C.src[f] in S and C.tgt[g] in S and C.tgt[f] not in S:
                return False
    return True


def _connected_in_category(C, S):
    S = set(S)
    if not S:
        return False
    parent = {o: o for o in S}

    def find(o):
        while parent[o] != o:
            o = parent[o]
        return o

    for m in C.morphisms:
        a, b = C.src[m], C.tgt[m]
        if a in S and b in S:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[rb] = ra
    return len({find(o) for o in S}) == 1


def interval_module(index, carrier, field, require_connected=True):
    """``K_I``: the field on ``I``, identities inside, zero elsewhere.

    The carrier must be convex, and connected unless ``require_connected``
    is false (convex modules such as ``K_{P∖↑p}`` are still functors).
    """
    carrier = set(carrier)
    for o in carrier:
        if o not in index.objects:
            raise InputError("unknown object %r in carrier" % (o,))
    if isinstance(index, Poset):
        convex = index.is_convex(carrier)
        connected = bool(carrier) and index.is_connected(carrier)
    else:
        convex = _convex_in_category(index, carrier)
        connected = _connected_in_category(index, carrier)
    if not convex:
        raise InputError("carrier is not convex")
    if require_connected and not connected:
        raise InputError("carrier is not connected")
    dims = {o: int(o in carrier) for o in index.objects}
    maps = {}
    one = Matrix.identity(field, 1)
    for key, s, t in generator_keys(index):
        if s in carrier and t in carrier:
            maps[key] = one
        else:
            maps[key] = Matrix.zeros(field, dims[t], dims[s])
    return PersistenceModule(index, field, dims, maps)


def entire_module(index, field):
    return interval_module(index, index.objects, field)


def zero_module(index, field):
    return PersistenceModule(index, field, {o: 0 for o in index.objects},
                             {k: Matrix.zeros(field, 0, 0) for k, _, _ in generator_keys(index)})


def direct_sum(M, N):
    if M.index != N.index and M.index is not N.index:
        raise InputError("direct sum of modules over different indices")
    if M.field != N.field:
        raise InputError("direct sum of modules over different fields")
    dims = {o: M.dims[o] + N.dims[o] for o in M.objects}
    maps = {k: block_diag(M.field, [M.maps[k], N.maps[k]]) for k in M.maps}
    return PersistenceModule(M.index, M.field, dims, maps, validate=False)


def conjugate(M, bases):
    """Change basis pointwise: ``M'(f) = T_tgt M(f) T_src^{-1}``."""
    inv = {o: inverse(T) for o, T in bases.items()}
    maps = {k: bases[t] @ m @ inv[s] for k, s, t, m in M.generators()}
    return PersistenceModule(M.index, M.field, M.dims, maps, validate=False)


def restrict(M, F):
    """Precompose ``M`` with a monotone map or functor ``F``.

    For a non-full subposet only the sub-order's covers receive maps, which
    is what distinguishes restrictions along different connecting relations.
    """
    if isinstance(F, PosetMap):
        if not isinstance(M.index, Poset) or F.target != M.index:
            raise InputError("module is not indexed by the map's target")
        S = F.source
        dims = {s: M.dims[F(s)] for s in S.elements}
        maps = {(a, b): M.structure_map(F(a), F(b)) for a, b in S.covers}
        return PersistenceModule(S, M.field, dims, maps, validate=False)
    if isinstance(F, Functor):
        if F.target is not M.index:
            raise InputError("module is not indexed by the functor's target")
        J = F.source
        dims = {j: M.dims[F.object_map[j]] for j in J.objects}
        maps = {g: M.morphism_map(F.morphism_map[g]) for g in J.non_identity()}
        return PersistenceModule(J, M.field, dims, maps, validate=False)
    raise InputError("cannot restrict along %r" % (F,))
