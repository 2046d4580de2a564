"""
Finite categories given by an explicit composition table, functors between
them, comma categories and finality.
"""

from genrank.errors import InputError


class FinCategory(object):
    """A finite category.

    ``morphisms`` is a list of ``(id, src, tgt)``; ``identities`` maps each
    object to its identity morphism id; ``compose`` maps ``(g, f)`` to the
    id of ``g ∘ f`` (``f`` first). Compositions with identities may be
    omitted and are filled in.
    """

    def __init__(self, objects, morphisms, identities, compose, check=True):
        self.objects = tuple(objects)
        self._obj_index = {o: i for i, o in enumerate(self.objects)}
        if len(self._obj_index) != len(self.objects):
            raise InputError("duplicate object ids")
        self.morphisms = tuple(m for m, _, _ in morphisms)
        self.src = {}
        self.tgt = {}
        for m, s, t in morphisms:
            if m in self.src:
                raise InputError("duplicate morphism id %r" % (m,))
            if s not in self._obj_index or t not in self._obj_index:
                raise InputError("morphism %r has unknown endpoint" % (m,))
            self.src[m] = s
            self.tgt[m] = t
        self.identities = dict(identities)
        for o in self.objects:
            i = self.identities.get(o)
            if i is None or self.src.get(i) != o or self.tgt.get(i) != o:
                raise InputError("bad identity for object %r" % (o,))
        self._is_identity = set(self.identities.values())
        table = dict(compose)
        for m in self.morphisms:
            table.setdefault((m, self.identities[self.src[m]]), m)
            table.setdefault((self.identities[self.tgt[m]], m), m)
        self.table = table
        self._hom = {}
        self._out = {o: [] for o in self.objects}
        for m in self.morphisms:
            self._hom.setdefault((self.src[m], self.tgt[m]), []).append(m)
            self._out[self.src[m]].append(m)
        if check:
            self.check()

    def check(self):
        src, tgt, table = self.src, self.tgt, self.table
        for (g, f), h in table.items():
            if g not in src or f not in src or h not in src:
                raise InputError("composition %r uses an unknown morphism" % ((g, f, h),))
            if tgt[f] != src[g]:
                raise InputError("composition %r of non-composable pair" % ((g, f),))
            if src[h] != src[f] or tgt[h] != tgt[g]:
                raise InputError("composite %r has wrong endpoints" % ((g, f, h),))
        for f in self.morphisms:
            for g in self.hom(tgt[f], None):
                if (g, f) not in table:
                    raise InputError("missing composition %r ∘ %r" % (g, f))
        for m in self.morphisms:
            if table[(m, self.identities[src[m]])] != m or table[(self.identities[tgt[m]], m)] != m:
                raise InputError("identity law fails at %r" % (m,))
        for f in self.morphisms:
            for g in self.hom(tgt[f], None):
                gf = table[(g, f)]
                for h in self.hom(tgt[g], None):
                    if table[(h, gf)] != table[(table[(h, g)], f)]:
                        raise InputError("associativity fails at %r, %r, %r" % (h, g, f))

    def __repr__(self):
        return "FinCategory(%d objects, %d morphisms)" % (len(self.objects), len(self.morphisms))

    def hom(self, a, b):
        """Morphisms ``a -> b``; ``b=None`` means any target."""
        if b is None:
            return list(self._out[a])
        return list(self._hom.get((a, b), ()))

    def compose(self, g, f):
        return self.table[(g, f)]

    def is_identity(self, m):
        return m in self._is_identity

    def non_identity(self):
        return [m for m in self.morphisms if m not in self._is_identity]

    def components(self):
        parent = {o: o for o in self.objects}

        def find(o):
            while parent[o] != o:
                parent[o] = parent[parent[o]]
                o = parent[o]
            return o

        for m in self.morphisms:
            a, b = find(self.src[m]), find(self.tgt[m])
            if a != b:
                parent[b] = a
        groups = {}
        for o in self.objects:
            groups.setdefault(find(o), []).append(o)
        return list(groups.values())

    def is_connected(self):
        return len(self.objects) > 0 and len(self.components()) == 1

    def opposite(self):
        return FinCategory(
            self.objects,
            [(m, self.tgt[m], self.src[m]) for m in self.morphisms],
            self.identities,
            {(f, g): h for (g, f), h in self.table.items()},
            check=False)


def _rel_id(a, b):
    return "%s<=%s" % (a, b)


def poset_to_category(P):
    """One morphism ``a<=b`` per relation, identities ``a<=a``."""
    morphisms = []
    for a in P.elements:
        for b in P.upset([a]):
            morphisms.append((_rel_id(a, b), a, b))
    identities = {a: _rel_id(a, a) for a in P.elements}
    compose = {}
    for _, a, b in morphisms:
        for c in P.upset([b]):
            compose[(_rel_id(b, c), _rel_id(a, b))] = _rel_id(a, c)
    return FinCategory(P.elements, morphisms, identities, compose, check=False)


def opposite(C):
    return C.opposite()


class Functor(object):
    """Functor between finite categories, validated on construction."""

    def __init__(self, source, target, object_map, morphism_map):
        self.source = source
        self.target = target
        self.object_map = dict(object_map)
        self.morphism_map = dict(morphism_map)
        for o in source.objects:
            if self.object_map.get(o) not in target._obj_index:
                raise InputError("object %r has no valid image" % (o,))
        for m in source.morphisms:
            fm = self.morphism_map.get(m)
            if fm not in target.src:
                raise InputError("morphism %r has no valid image" % (m,))
            if (target.src[fm] != self.object_map[source.src[m]]
                    or target.tgt[fm] != self.object_map[source.tgt[m]]):
                raise InputError("functor does not preserve endpoints of %r" % (m,))
        for o in source.objects:
            if self.morphism_map[source.identities[o]] != target.identities[self.object_map[o]]:
                raise InputError("functor does not preserve the identity of %r" % (o,))
        for (g, f), h in source.table.items():
            if target.compose(self.morphism_map[g], self.morphism_map[f]) != self.morphism_map[h]:
                raise InputError("functor does not preserve %r ∘ %r" % (g, f))

    def __call__(self, x):
        if x in self.object_map:
            return self.object_map[x]
        return self.morphism_map[x]

    def opposite(self):
        return Functor(self.source.opposite(), self.target.opposite(),
                       self.object_map, self.morphism_map)

    def compose(self, other):
        """``self ∘ other``."""
        return Functor(other.source, self.target,
                       {o: self.object_map[x] for o, x in other.object_map.items()},
                       {m: self.morphism_map[x] for m, x in other.morphism_map.items()})


def identity_functor(C):
    return Functor(C, C, {o: o for o in C.objects}, {m: m for m in C.morphisms})


def functor_from_poset_map(F):
    """Promote a monotone map to a functor between the associated categories."""
    S = poset_to_category(F.source)
    T = poset_to_category(F.target)
    mm = {}
    for m in S.morphisms:
        a, b = S.src[m], S.tgt[m]
        mm[m] = _rel_id(F(a), F(b))
    return Functor(S, T, F.mapping, mm)


def full_subcategory_inclusion(C, objects):
    """Inclusion of the full subcategory on ``objects`` (kept in ``C``'s order)."""
    keep = set(objects)
    for o in keep:
        if o not in C._obj_index:
            raise InputError("unknown object %r" % (o,))
    objs = [o for o in C.objects if o in keep]
    morphs = [(m, C.src[m], C.tgt[m]) for m in C.morphisms
              if C.src[m] in keep and C.tgt[m] in keep]
    ids = {m for m, _, _ in morphs}
    table = {k: h for k, h in C.table.items() if k[0] in ids and k[1] in ids}
    S = FinCategory(objs, morphs, {o: C.identities[o] for o in objs}, table, check=False)
    return Functor(S, C, {o: o for o in objs}, {m: m for m in ids})


def comma_category(d, F):
    """``d/F``: objects ``(j, f: d -> F j)``, morphisms induced by ``g: j -> j'``.

    Object ids are the pairs ``(j, f)``, morphism ids the triples ``(j, f, g)``.
    """
    C, J = F.target, F.source
    if d not in C._obj_index:
        raise InputError("unknown object %r" % (d,))
    objs = [(j, f) for j in J.objects for f in C.hom(d, F.object_map[j])]
    morphisms = []
    ident = {}
    for j, f in objs:
        for g in J.hom(j, None):
            morphisms.append(((j, f, g), (j, f), (J.tgt[g], C.compose(F.morphism_map[g], f))))
            if J.is_identity(g):
                ident[(j, f)] = (j, f, g)
    compose = {}
    for (j, f, g), _, (j2, f2) in morphisms:
        for h in J.hom(j2, None):
            compose[((j2, f2, h), (j, f, g))] = (j, f, J.compose(h, g))
    return FinCategory(objs, morphisms, ident, compose, check=False)


def comma_category_down(F, d):
    """``F/d``, computed as ``(d/F^op)^op``."""
    return comma_category(d, F.opposite()).opposite()


def finality_witness(F):
    for d in F.target.objects:
        if not comma_category(d, F).is_connected():
            return d
    return None


def is_final(F):
    return finality_witness(F) is None


def is_initial(F):
    return is_final(F.opposite())


def linearized_hom_module(C, c, field):
    """The free module ``K[Hom(c, -)]`` with post-composition action."""
    from genrank.exactla import Matrix
    from genrank.pmod import PersistenceModule

    bases = {x: C.hom(c, x) for x in C.objects}
    dims = {x: len(b) for x, b in bases.items()}
    maps = {}
    for g in C.non_identity():
        a, b = C.src[g], C.tgt[g]
        pos = {h: i for i, h in enumerate(bases[b])}
        rows = [[field.zero] * dims[a] for _ in range(dims[b])]
        for k, h in enumerate(bases[a]):
            rows[pos[C.compose(g, h)]][k] = field.one
        maps[g] = Matrix.from_rows(field, rows, dims[a])
    return PersistenceModule(C, field, dims, maps)
