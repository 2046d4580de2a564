import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from genrank.catalog import (GRID_JOIN, GRID_MAX, GRID_MIN_BOTTOM, GRID_MIN_LEFT,
                             grid_connector_embedding, grid_module, grid_poset)
from genrank.errors import FunctorialityError, InputError
from genrank.exactla import Field, Matrix
from genrank.gen import random_interval, random_planted, random_poset
from genrank.pmod import (PersistenceModule, direct_sum, entire_module, interval_module, restrict,
                          zero_module)
from genrank.poset import Poset, SubposetEmbedding, identity_embedding
from genrank.rank import generalized_rank

Q = Field.rational()
F5 = Field.prime(5)


def all_cover_paths(P, p, q):
    if p == q:
        return [[p]]
    out = []
    for c in P.upper_covers(p):
        if P.leq(c, q):
            out += [[p] + rest for rest in all_cover_paths(P, c, q)]
    return out


def path_product(M, path):
    m = Matrix.identity(M.field, M.dims[path[0]])
    for a, b in zip(path, path[1:]):
        m = M.maps[(a, b)] @ m
    return m


def test_grid_validates_and_every_path_agrees():
    M = grid_module()
    P = M.index
    for p, q in P.relations:
        mats = {path_product(M, path) for path in all_cover_paths(P, p, q)}
        assert len(mats) == 1
        assert M.structure_map(p, q) in mats


def test_chain_validates_vacuously():
    P = Poset(["a", "b", "c"], [("a", "b"), ("b", "c")])
    rng = random.Random(0)
    maps = {c: Matrix.from_rows(Q, [[rng.randint(-3, 3) for _ in range(2)] for _ in range(2)])
            for c in P.covers}
    PersistenceModule(P, Q, {"a": 2, "b": 2, "c": 2}, maps).validate()


def test_grid_mutation_reports_that_square():
    M = grid_module()
    key = ("x1y1", "x2y1")
    bad = [list(r) for r in M.maps[key].to_literal()]
    bad[0][0] += 1
    maps = dict(M.maps)
    maps[key] = Matrix.from_rows(Q, bad)
    with pytest.raises(FunctorialityError) as ei:
        PersistenceModule(M.index, Q, M.dims, maps)
    p, c, q = ei.value.square
    paths = all_cover_paths(M.index, p, q)
    assert any(key in list(zip(path, path[1:])) for path in paths)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_random_mutations_are_caught(seed):
    rng = random.Random(seed)
    P = random_poset(seed, 6, 0.4, connected=True)
    M, _, _ = random_planted(rng, P, F5)
    for key, s, t, m in M.generators():
        if m.rows == 0 or m.cols == 0:
            continue
        lit = m.to_literal()
        lit[0][0] = (lit[0][0] + 1) % 5
        maps = dict(M.maps)
        maps[key] = Matrix.from_rows(F5, lit)
        N = PersistenceModule(P, F5, M.dims, maps, validate=False)
        ok = all(len({path_product(N, path) for path in all_cover_paths(P, p, q)}) == 1
                 for p, q in P.relations)
        if ok:
            N.validate()
        else:
            with pytest.raises(FunctorialityError):
                N.validate()


def test_shape_and_key_checks():
    P = Poset(["a", "b"], [("a", "b")])
    with pytest.raises(InputError):
        PersistenceModule(P, Q, {"a": 1, "b": 1}, {("a", "b"): Matrix.zeros(Q, 2, 1)})
    with pytest.raises(InputError):
        PersistenceModule(P, Q, {"a": 1, "b": 1}, {})
    with pytest.raises(InputError):
        PersistenceModule(P, Q, {"a": 1}, {("a", "b"): Matrix.zeros(Q, 1, 1)})
    with pytest.raises(InputError):
        PersistenceModule(P, Q, {"a": 1, "b": 1}, {("a", "b"): Matrix.zeros(F5, 1, 1)})


# --- intervals -------------------------------------------------------------------------


def test_entire_and_simple():
    P = grid_poset()
    K = entire_module(P, Q)
    assert all(d == 1 for d in K.dims.values())
    assert generalized_rank(K) == 1
    S = interval_module(P, [GRID_JOIN], Q)
    assert S.total_dim() == 1


def test_interval_rejections():
    P = Poset(["a", "b", "c"], [("a", "b"), ("b", "c")])
    with pytest.raises(InputError):
        interval_module(P, ["a", "c"], Q)
    with pytest.raises(InputError):
        interval_module(Poset(["a", "b"]), ["a", "b"], Q)
    interval_module(Poset(["a", "b"]), ["a", "b"], Q, require_connected=False)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 8))
def test_random_intervals_validate(seed, n):
    P = random_poset(seed, n, 0.4)
    I = random_interval(seed, P)
    assert P.is_interval(I)
    interval_module(P, I, F5).validate()


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 6), st.data())
def test_convexity_rejection_exact(seed, n, data):
    P = random_poset(seed, n, 0.5)
    S = data.draw(st.lists(st.sampled_from(P.elements), unique=True))
    witness = any(P.leq(s, c) and P.leq(c, t) and c not in S
                  for s in S for t in S for c in P)
    if witness:
        with pytest.raises(InputError):
            interval_module(P, S, Q, require_connected=False)
    else:
        interval_module(P, S, Q, require_connected=False)


# --- restriction and sums ----------------------------------------------------------------


def test_restrict_identity():
    M = grid_module()
    R = restrict(M, identity_embedding(M.index))
    assert R == M


def test_grid_blue_restriction_long_map():
    M = grid_module()
    R = restrict(M, grid_connector_embedding((GRID_JOIN, GRID_MAX)))
    assert R.maps[(GRID_JOIN, GRID_MAX)] == Matrix.from_rows(Q, [[-1, 1, -2], [0, 0, 0]])
    C = restrict(M, grid_connector_embedding((GRID_MIN_LEFT, GRID_MAX)))
    assert C.maps[(GRID_MIN_LEFT, GRID_MAX)] == M.structure_map(GRID_MIN_LEFT, GRID_MAX)
    assert (GRID_JOIN, GRID_MAX) not in C.maps
    assert R.dims == {o: M.dims[o] for o in R.objects}
    assert set(R.dims) == {GRID_MIN_LEFT, GRID_MIN_BOTTOM, GRID_JOIN, GRID_MAX}


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.data())
def test_restrict_composes(seed, data):
    P = random_poset(seed, 7, 0.4, connected=True)
    M, _, _ = random_planted(seed, P, F5)
    A = data.draw(st.lists(st.sampled_from(P.elements), unique=True, min_size=1))
    B = data.draw(st.lists(st.sampled_from(A), unique=True, min_size=1))
    F = SubposetEmbedding(P, A)
    G = SubposetEmbedding(F.source, B)
    lhs = restrict(restrict(M, F), G)
    rhs = restrict(M, F.compose(G))
    assert lhs.dims == rhs.dims and lhs.maps == rhs.maps
    lhs.validate()
    for s in F.source:
        assert restrict(M, F).dims[s] == M.dims[s]


def test_direct_sum_with_zero():
    M = grid_module()
    S = direct_sum(M, zero_module(M.index, Q))
    assert S.dims == M.dims and S.maps == M.maps


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_direct_sum_rank_additive(seed):
    P = random_poset(seed, 6, 0.4, connected=True)
    M, a, _ = random_planted(seed, P, F5)
    N, b, _ = random_planted(seed + 1, P, F5)
    S = direct_sum(M, N)
    S.validate()
    assert all(S.dims[o] == M.dims[o] + N.dims[o] for o in P)
    assert generalized_rank(S) == generalized_rank(M) + generalized_rank(N) == a + b


def test_structure_map_cache_matches_recompute():
    M = grid_module()
    cached = {r: M.structure_map(*r) for r in M.index.relations}
    fresh = PersistenceModule(M.index, Q, M.dims, M.maps, validate=False)
    for (p, q), m in cached.items():
        assert fresh.structure_map(p, q) == m
    for p, q in itertools.islice(M.index.relations, 10):
        assert M.structure_map(p, q) is M.structure_map(p, q)
