"""
Finite posets, monotone maps and subposet embeddings.

Elements are opaque string ids. The order in which elements are given is
the canonical iteration order everywhere downstream, so ties are always
broken by position in ``Poset.elements``.
"""

import warnings

from genrank.errors import InputError, RedundantRelationWarning


class Poset(object):
    """A finite partial order.

    ``relations`` may be any generating set of pairs ``(a, b)`` meaning
    ``a <= b``; the reflexive-transitive closure is taken and cycles are
    rejected.
    """

    def __init__(self, elements, relations=()):
        elements = tuple(elements)
        index = {}
        for i, e in enumerate(elements):
            if e in index:
                raise InputError("duplicate element id %r" % (e,))
            index[e] = i
        self.elements = elements
        self.index = index
        n = len(elements)
        up = [{i} for i in range(n)]
        for a, b in relations:
            up[self._idx(a)].add(self._idx(b))
        # transitive closure, Floyd-Warshall on sets
        for k in range(n):
            uk = up[k]
            for i in range(n):
                if k in up[i]:
                    up[i] |= uk
        for i in range(n):
            for j in up[i]:
                if j != i and i in up[j]:
                    raise InputError("relations contain a cycle through %r and %r"
                                     % (elements[i], elements[j]))
        self._up = [frozenset(u) for u in up]
        down = [set() for _ in range(n)]
        for i in range(n):
            for j in up[i]:
                down[j].add(i)
        self._down = [frozenset(d) for d in down]
        self._covers = None
        self._upper = None

    # --- basic queries -------------------------------------------------

    def _idx(self, e):
        try:
            return self.index[e]
        except (KeyError, TypeError):
            raise InputError("unknown element id %r" % (e,))

    def _ids(self, S):
        return {self._idx(s) for s in S}

    def _names(self, idx):
        return [self.elements[i] for i in sorted(idx)]

    @property
    def objects(self):
        return self.elements

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, e):
        return e in self.index

    def __eq__(self, other):
        return (isinstance(other, Poset) and self.elements == other.elements
                and self._up == other._up)

    def __hash__(self):
        return hash((self.elements, tuple(self._up)))

    def __repr__(self):
        return "Poset(%s, covers=%s)" % (list(self.elements), self.covers)

    def leq(self, a, b):
        return self._idx(b) in self._up[self._idx(a)]

    def lt(self, a, b):
        return a != b and self.leq(a, b)

    def comparable(self, a, b):
        return self.leq(a, b) or self.leq(b, a)

    @property
    def relations(self):
        """All strict pairs ``a < b`` in element order."""
        E = self.elements
        return [(E[i], E[j]) for i in range(len(E)) for j in sorted(self._up[i]) if j != i]

    @property
    def covers(self):
        """Hasse edges (transitive reduction), in element order."""
        if self._covers is None:
            E = self.elements
            out = []
            for i in range(len(E)):
                above = self._up[i] - {i}
                for j in sorted(above):
                    # j covers i unless something strictly between
                    if not any(k != j and j in self._up[k] for k in above):
                        out.append((E[i], E[j]))
            self._covers = out
        return list(self._covers)

    def upper_covers(self, a):
        if self._upper is None:
            upper = {e: [] for e in self.elements}
            for x, b in self.covers:
                upper[x].append(b)
            self._upper = upper
        return list(self._upper[a])

    # --- sets ----------------------------------------------------------

    def upset(self, S):
        idx = set()
        for i in self._ids(S):
            idx |= self._up[i]
        return self._names(idx)

    def downset(self, S):
        idx = set()
        for i in self._ids(S):
            idx |= self._down[i]
        return self._names(idx)

    def maxima(self, S=None):
        """Elements of ``S`` with nothing strictly above them in ``S``."""
        ids = self._ids(self.elements if S is None else S)
        return self._names(i for i in ids if not (self._up[i] - {i}) & ids)

    def minima(self, S=None):
        ids = self._ids(self.elements if S is None else S)
        return self._names(i for i in ids if not (self._down[i] - {i}) & ids)

    def components(self, S=None):
        """Connected components of the induced order on ``S``."""
        ids = self._ids(self.elements if S is None else S)
        parent = {i: i for i in ids}

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for i in ids:
            for j in self._up[i] & ids:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
        groups = {}
        for i in sorted(ids):
            groups.setdefault(find(i), []).append(self.elements[i])
        return sorted(groups.values(), key=lambda g: self.index[g[0]])

    def is_connected(self, S=None):
        S = self.elements if S is None else S
        return len(self.components(S)) == 1

    def is_convex(self, S):
        ids = self._ids(S)
        between = set()
        for i in ids:
            between |= self._up[i]
        lower = set()
        for i in ids:
            lower |= self._down[i]
        return (between & lower) <= ids

    def is_interval(self, S):
        return self.is_convex(S) and self.is_connected(S)

    def convex_hull(self, S):
        return self._names(set(self._ids(self.upset(S))) & set(self._ids(self.downset(S))))

    # --- derived posets ------------------------------------------------

    def subposet(self, S):
        """Full (induced) subposet on ``S``, keeping element order."""
        ids = self._ids(S)
        els = self._names(ids)
        rels = [(self.elements[i], self.elements[j]) for i in sorted(ids)
                for j in sorted(self._up[i] & ids) if i != j]
        return Poset(els, rels)

    def opposite(self):
        return Poset(self.elements, [(b, a) for (a, b) in self.relations])

    def linear_extension(self):
        """Elements sorted so that ``a < b`` implies ``a`` comes first."""
        return sorted(self.elements, key=lambda e: (-len(self._up[self.index[e]]), self.index[e]))


def poset_from_covers(elements, covers):
    """Build a poset from cover pairs, warning about implied pairs."""
    P = Poset(elements, covers)
    cov = set(P.covers)
    for a, b in covers:
        if a == b:
            warnings.warn("reflexive pair %r ignored" % ((a, b),), RedundantRelationWarning)
        elif (a, b) not in cov:
            warnings.warn("pair %r is implied by other covers" % ((a, b),),
                          RedundantRelationWarning)
    return P


class PosetMap(object):
    """A monotone map ``source -> target`` given by an element mapping."""

    def __init__(self, source, target, mapping):
        self.source = source
        self.target = target
        mapping = dict(mapping)
        for s in source.elements:
            if s not in mapping:
                raise InputError("map undefined on %r" % (s,))
            if mapping[s] not in target:
                raise InputError("image %r of %r not in target" % (mapping[s], s))
        self.mapping = {s: mapping[s] for s in source.elements}
        for a, b in source.covers:
            if not target.leq(self.mapping[a], self.mapping[b]):
                raise InputError("map is not monotone on %r <= %r" % (a, b))

    def __call__(self, s):
        return self.mapping[s]

    def __repr__(self):
        return "PosetMap(%s)" % self.mapping

    @property
    def image(self):
        im = set(self.mapping.values())
        return [p for p in self.target.elements if p in im]

    def is_injective(self):
        return len(set(self.mapping.values())) == len(self.mapping)

    def is_full(self):
        """``a <= b`` iff ``F(a) <= F(b)``."""
        S, T, F = self.source, self.target, self.mapping
        return all(S.leq(a, b) == T.leq(F[a], F[b]) for a in S for b in S)

    def compose(self, other):
        """``self ∘ other``: first ``other``, then ``self``."""
        if other.target != self.source:
            raise InputError("maps are not composable")
        return PosetMap(other.source, self.target,
                        {s: self.mapping[other.mapping[s]] for s in other.source})

    def preimage(self, T):
        T = set(T)
        return [s for s in self.source.elements if self.mapping[s] in T]


class SubposetEmbedding(PosetMap):
    """Inclusion of a (possibly non-full) subposet.

    ``relations`` generate the sub-order on ``carrier``; with the default
    ``None`` the induced order is used and the embedding is full. Every
    given relation must hold in the ambient poset.
    """

    def __init__(self, ambient, carrier, relations=None):
        carrier = list(carrier)
        if not carrier:
            raise InputError("embedding carrier is empty")
        cset = set(carrier)
        if len(cset) != len(carrier):
            raise InputError("embedding carrier has duplicates")
        for c in carrier:
            ambient._idx(c)
        ordered = [p for p in ambient.elements if p in cset]
        if relations is None:
            source = ambient.subposet(ordered)
        else:
            relations = [tuple(r) for r in relations]
            for a, b in relations:
                if a not in cset or b not in cset:
                    raise InputError("relation %r leaves the carrier" % ((a, b),))
                if not ambient.leq(a, b):
                    raise InputError("relation %r does not hold in the ambient poset" % ((a, b),))
            source = Poset(ordered, relations)
        self.ambient = ambient
        PosetMap.__init__(self, source, ambient, {c: c for c in ordered})

    @property
    def carrier(self):
        return list(self.source.elements)

    @property
    def full(self):
        return self.source == self.ambient.subposet(self.carrier)

    def __repr__(self):
        return "SubposetEmbedding(%s, covers=%s)" % (self.carrier, self.source.covers)


def identity_embedding(P):
    return SubposetEmbedding(P, P.elements)


# --- comma fibers and finality -------------------------------------------


def comma_fiber(F, p):
    """``p/F`` as the subposet ``F^{-1}(↑p)`` with the source's order."""
    return F.source.subposet(F.preimage(F.target.upset([p])))


def comma_fiber_down(F, p):
    """``F/p`` as the subposet ``F^{-1}(↓p)``."""
    return F.source.subposet(F.preimage(F.target.downset([p])))


def finality_failures(F):
    """Every ambient element whose fiber is empty or disconnected, in element order."""
    out = []
    for p in F.target.elements:
        fib = comma_fiber(F, p)
        if len(fib) == 0 or not fib.is_connected():
            out.append(p)
    return out


def initiality_failures(F):
    out = []
    for p in F.target.elements:
        fib = comma_fiber_down(F, p)
        if len(fib) == 0 or not fib.is_connected():
            out.append(p)
    return out


def finality_witness(F):
    """Least ambient element whose fiber is empty or disconnected, or None."""
    bad = finality_failures(F)
    return bad[0] if bad else None


def initiality_witness(F):
    bad = initiality_failures(F)
    return bad[0] if bad else None


def top_finality_witness(F):
    """A maximal failing element (least such in element order), or None.

    Fibers shrink going up, so this one has the smallest bad fiber.
    """
    bad = finality_failures(F)
    return F.target.maxima(bad)[0] if bad else None


def bottom_initiality_witness(F):
    bad = initiality_failures(F)
    return F.target.minima(bad)[0] if bad else None


def is_final_embedding(F):
    return finality_witness(F) is None


def is_initial_embedding(F):
    return initiality_witness(F) is None
