"""
Minimal final/initial subposets, the connected restriction poset ``M_rk``,
and witness modules certifying that a map is not final.

Only finite posets are accepted; for those the maximal/minimal elements
needed by the recursion always exist, so no extra hypotheses are checked.
"""

from dataclasses import dataclass, field as dc_field
from typing import List, Tuple

from genrank.errors import InputError, InvariantError, PreconditionError
from genrank.exactla import Field, Matrix
from genrank.fincat import Functor, finality_witness as category_finality_witness
from genrank.fincat import linearized_hom_module
from genrank.pmod import PersistenceModule, interval_module
from genrank.poset import (Poset, PosetMap, SubposetEmbedding, is_final_embedding,
                           is_initial_embedding, top_finality_witness)


@dataclass(frozen=True)
class SChain:
    stages: List[List[str]]
    stabilization_index: int

    @property
    def final(self):
        return self.stages[-1]


def s_chain(P):
    """Grow ``max P`` by the maxima of ``{p : ↑p ∩ S is disconnected}``.

    Connectivity is taken in the induced full order. Stops at the first
    stage that adds nothing; the stabilisation index is the number of
    growing steps and never exceeds ``#max P - 1``.
    """
    if len(P) == 0:
        raise InputError("empty poset")
    S = P.maxima()
    stages = [S]
    while True:
        cur = set(S)
        bad = [p for p in P.elements
               if not P.is_connected([q for q in P.upset([p]) if q in cur])]
        new = P.maxima(bad)
        if not new:
            break
        S = [p for p in P.elements if p in cur or p in set(new)]
        stages.append(S)
    ell = len(stages) - 1
    if ell > len(P.maxima()) - 1:
        raise InvariantError("stabilisation index %d exceeds #max P - 1" % ell)
    return SChain(stages, ell)


def s_chain_initial(P):
    """The dual chain, started at ``min P`` with downsets."""
    return s_chain(P.opposite())


def minimal_final_subposet(P):
    return SubposetEmbedding(P, s_chain(P).final)


def minimal_initial_subposet(P):
    return SubposetEmbedding(P, s_chain_initial(P).final)


def worst_case_poset(k):
    """Poset on ``p_1..p_k, s_1..s_{k-1}`` whose chain needs ``k-1`` steps."""
    if k < 2:
        raise InputError("worst-case family needs k >= 2")
    ps = ["p%d" % i for i in range(1, k + 1)]
    ss = ["s%d" % i for i in range(1, k)]
    covers = [("s1", "p1"), ("s1", "p2")]
    for i in range(2, k):
        covers.append(("s%d" % i, "s%d" % (i - 1)))
        covers.append(("s%d" % i, "p%d" % (i + 1)))
    return Poset(ps + ss, covers)


# --- M_rk ---------------------------------------------------------------------


@dataclass(frozen=True)
class MrkResult:
    embedding: SubposetEmbedding
    connectors: Tuple[Tuple[str, str], ...]
    components_joined: int
    final_part: List[str] = dc_field(default_factory=list)
    initial_part: List[str] = dc_field(default_factory=list)

    @property
    def added_relation(self):
        return self.connectors[0] if self.connectors else None

    @property
    def is_final(self):
        return is_final_embedding(self.embedding)

    @property
    def is_initial(self):
        return is_initial_embedding(self.embedding)


def _piece_relations(P, S):
    return [(a, b) for a, b in P.relations if a in S and b in S]


def _is_good(emb):
    return emb.source.is_connected() and is_final_embedding(emb) and is_initial_embedding(emb)


def construct_mrk(P, connector="least"):
    """Union of the minimal final and initial subposets, made connected.

    The two pieces keep their own (full) orders. While the union is
    disconnected a relation of ``P`` is added from the initial piece to the
    final piece. ``connector="least"`` takes the lexicographically least
    pair (by element order) that joins two components, preferring one after
    which the embedding is final and initial. An explicit pair ``(a, b)`` is
    used as given. Any further relations needed are added greedily.
    """
    if not P.is_connected():
        raise PreconditionError("M_rk needs a connected poset")
    fin = s_chain(P).final
    ini = s_chain_initial(P).final
    carrier = [p for p in P.elements if p in set(fin) | set(ini)]
    rels = set(_piece_relations(P, set(fin))) | set(_piece_relations(P, set(ini)))
    n_before = len(Poset(carrier, rels).components())
    added = []

    def emb_with(extra):
        return SubposetEmbedding(P, carrier, sorted(rels | set(extra)))

    if connector != "least":
        a, b = connector
        if a not in carrier or b not in carrier:
            raise InputError("connector %r must join elements of the union %s" % ((a, b), carrier))
        if not P.leq(a, b):
            raise InputError("connector %r is not a relation of the poset" % ((a, b),))
        added.append((a, b))
        rels.add((a, b))

    cur = emb_with(())
    while not cur.source.is_connected():
        comp_of = {}
        for i, comp in enumerate(cur.source.components()):
            for e in comp:
                comp_of[e] = i
        cands = [(a, b) for a in ini for b in fin
                 if P.leq(a, b) and comp_of[a] != comp_of[b]]
        if not cands:
            # no init->fin relation joins components; any comparable pair will do
            cands = [(a, b) for a, b in P.relations
                     if a in comp_of and b in comp_of and comp_of[a] != comp_of[b]]
        if not cands:
            raise InvariantError("union of minimal subposets cannot be connected")
        pick = next((c for c in cands if _is_good(emb_with([c]))), cands[0])
        added.append(pick)
        rels.add(pick)
        cur = emb_with(())

    if connector == "least":
        # fill in induced relations until both comma conditions hold
        missing = [r for r in P.relations if r[0] in cur.source and r[1] in cur.source
                   and not cur.source.leq(*r)]
        for r in missing:
            if _is_good(cur):
                break
            rels.add(r)
            added.append(r)
            cur = emb_with(())
        if not _is_good(cur):
            raise InvariantError("M_rk embedding is not final and initial")
        # drop added relations that turn out to be unnecessary
        for r in list(added):
            trial = rels - {r}
            emb = SubposetEmbedding(P, carrier, sorted(trial))
            if _is_good(emb):
                rels = trial
                added.remove(r)
                cur = emb

    return MrkResult(cur, tuple(added), n_before - 1, fin, ini)


# --- witnesses ------------------------------------------------------------------


def colimit_witness(F, field=None):
    """``(c, M)`` with ``dim colim M = 1`` but ``dim colim MF`` is 0 or >= 2.

    ``c`` is an object whose comma category ``c/F`` is empty or
    disconnected and ``M`` is the free module on ``Hom(c, -)``. For poset
    maps ``c`` is a maximal such element (least in element order among
    those); for functors it is the least such object.
    """
    field = field or Field.rational()
    if isinstance(F, PosetMap):
        c = top_finality_witness(F)
        if c is None:
            raise PreconditionError("map is final; no colimit witness exists")
        # on a poset the free module on Hom(c, -) is the field on ↑c
        P = F.target
        return c, interval_module(P, P.upset([c]), field)
    if isinstance(F, Functor):
        c = category_finality_witness(F)
        if c is None:
            raise PreconditionError("functor is final; no colimit witness exists")
        return c, linearized_hom_module(F.target, c, field)
    raise InputError("expected a PosetMap or Functor")


def _require_full_nonfinal(F):
    if not isinstance(F, PosetMap):
        raise InputError("expected a poset map")
    if not F.is_full():
        raise PreconditionError("map is not full")
    if is_final_embedding(F):
        raise PreconditionError("map is final; no witness exists")


def _image_components_above(F, x):
    P = F.target
    im = set(F.image)
    return P.components([q for q in P.upset([x]) if q in im])


def find_wlog_triple(F):
    """``(x, z, z')`` with ``z, z'`` maxima in different components of ``↑x ∩ im F``.

    Ascending search: start at the least ``x`` whose fiber is disconnected
    and move to a strictly larger such ``w`` below ``z`` or ``z'`` until
    none is left.
    """
    _require_full_nonfinal(F)
    P = F.target
    im = set(F.image)
    for p in P.elements:
        if not any(q in im for q in P.upset([p])):
            raise PreconditionError("fiber over %r is empty" % (p,))
    maxP = set(P.maxima())

    def disconnected(w):
        return len(_image_components_above(F, w)) > 1

    def pick(x):
        comps = _image_components_above(F, x)
        tops = [[m for m in comp if m in maxP] for comp in comps]
        # each component contains a maximum of P
        first = min(range(len(comps)), key=lambda i: P.index[tops[i][0]])
        z = tops[first][0]
        others = [t[0] for i, t in enumerate(tops) if i != first]
        z2 = min(others, key=lambda e: P.index[e])
        return z, z2

    x = next(p for p in P.elements if disconnected(p))
    z, z2 = pick(x)
    while True:
        nxt = [w for w in P.elements
               if P.lt(x, w) and (P.lt(w, z) or P.lt(w, z2)) and disconnected(w)]
        if not nxt:
            break
        x = nxt[0]
        z, z2 = pick(x)
    return x, z, z2


def mult_witness(F, field=None):
    """Module ``M`` on the target with ``mult(M) = 0`` but ``mult(MF) = 1``.

    If some fiber ``↑p ∩ im F`` is empty, ``M`` is the field on ``P ∖ ↑p``.
    Otherwise ``M`` is the rank-two construction at the triple of
    ``find_wlog_triple``: ``K^2`` at ``x``, ``K`` elsewhere, ``[1 1]^T``
    into ``x``, ``[1 0]`` from ``x`` into the component of ``z`` in
    ``↑x ∖ {x}`` and ``[0 1]`` into the rest.
    """
    field = field or Field.rational()
    _require_full_nonfinal(F)
    P = F.target
    if not P.is_connected() or not F.source.is_connected():
        raise PreconditionError("source and target must be connected")
    im = set(F.image)
    for p in P.elements:
        if not any(q in im for q in P.upset([p])):
            rest = [q for q in P.elements if not P.leq(p, q)]
            return interval_module(P, rest, field, require_connected=False)
    x, z, _ = find_wlog_triple(F)
    strict_up = [q for q in P.upset([x]) if q != x]
    gamma = next(c for c in P.components(strict_up) if z in c)
    gamma = set(gamma)
    dims = {p: 2 if p == x else 1 for p in P.elements}
    into = Matrix.from_rows(field, [[1], [1]])
    left = Matrix.from_rows(field, [[1, 0]])
    right = Matrix.from_rows(field, [[0, 1]])
    one = Matrix.identity(field, 1)
    maps = {}
    for a, b in P.covers:
        if b == x:
            maps[(a, b)] = into
        elif a == x:
            maps[(a, b)] = left if b in gamma else right
        else:
            maps[(a, b)] = one
    return PersistenceModule(P, field, dims, maps)
