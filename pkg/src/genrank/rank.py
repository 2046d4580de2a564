"""
Limits, colimits and the limit-to-colimit map of a persistence module.

The limit is the kernel of the difference map
``⊕_c M(c) -> ⊕_f M(tgt f)``, ``x ↦ M(f) x_src − x_tgt``, and the colimit
the cokernel of ``⊕_f M(src f) -> ⊕_c M(c)``. Generators are Hasse covers
for posets and non-identity morphisms for finite categories.
"""

from dataclasses import dataclass
from typing import Dict

from genrank.errors import InvariantError, PreconditionError
from genrank.exactla import (Matrix, complete_basis, cokernel_projection, hstack,
                             inverse, kernel_basis, rank, rref, solve, vstack)
from genrank.pmod import PersistenceModule, restrict


@dataclass(frozen=True)
class LimitData:
    dim: int
    cone: Dict[object, Matrix]   # λ_c : lim M -> M(c)
    basis: Matrix                # columns in ⊕_c M(c)


@dataclass(frozen=True)
class ColimitData:
    dim: int
    cocone: Dict[object, Matrix]  # γ_c : M(c) -> colim M
    projection: Matrix            # ⊕_c M(c) -> colim M


@dataclass(frozen=True)
class PsiData:
    matrix: Matrix
    rank: int
    limit: LimitData
    colimit: ColimitData


def _offsets(M):
    off, total = {}, 0
    for o in M.objects:
        off[o] = total
        total += M.dims[o]
    return off, total


def _accumulate(field, nrows, ncols, blocks):
    """Dense matrix from ``(row0, col0, Matrix, sign)`` blocks, summed."""
    z = field.zero
    red = (lambda x: x % field.p) if field.kind == "prime" else (lambda x: x)
    out = [[z] * ncols for _ in range(nrows)]
    for r0, c0, m, sign in blocks:
        for i, row in enumerate(m.data):
            orow = out[r0 + i]
            for j, x in enumerate(row):
                if x != 0:
                    orow[c0 + j] = red(orow[c0 + j] + sign * x)
    return Matrix(field, nrows, ncols, tuple(tuple(r) for r in out))


def _eye(field, n):
    return Matrix.identity(field, n)


def limit(M):
    """Universal cone of ``M``; deterministic via echelon-form pivots."""
    F = M.field
    off, total = _offsets(M)
    blocks, r = [], 0
    for _, s, t, m in M.generators():
        blocks.append((r, off[s], m, 1))
        blocks.append((r, off[t], _eye(F, M.dims[t]), -1))
        r += M.dims[t]
    D = _accumulate(F, r, total, blocks)
    K = kernel_basis(D)
    cone = {o: K.block(off[o], off[o] + M.dims[o], 0, K.cols) for o in M.objects}
    return LimitData(K.cols, cone, K)


def colimit(M):
    F = M.field
    off, total = _offsets(M)
    blocks, c = [], 0
    for _, s, t, m in M.generators():
        blocks.append((off[t], c, m, 1))
        blocks.append((off[s], c, _eye(F, M.dims[s]), -1))
        c += M.dims[s]
    E = _accumulate(F, total, c, blocks)
    Q = cokernel_projection(E)
    cocone = {o: Q.block(0, Q.rows, off[o], off[o] + M.dims[o]) for o in M.objects}
    return ColimitData(Q.rows, cocone, Q)


def _require_connected(M):
    idx = M.index
    if not idx.is_connected():
        raise PreconditionError("index is not connected; the limit-to-colimit map is undefined")


def psi(M):
    """``Ψ_M = γ_c λ_c``, computed at every object and checked to agree."""
    _require_connected(M)
    lim, colim = limit(M), colimit(M)
    mats = [colim.cocone[o] @ lim.cone[o] for o in M.objects]
    first = mats[0]
    for o, m in zip(M.objects, mats):
        if m != first:
            raise InvariantError("γλ differs at %r; module is not functorial?" % (o,))
    return PsiData(first, rank(first), lim, colim)


def generalized_rank(M):
    return psi(M).rank


def mult_entire(M):
    """Multiplicity of the entire interval module; equals the generalized rank."""
    return generalized_rank(M)


# --- independent route: natural transformations to/from K_C -------------------


def sections(M):
    """Basis of ``Hom(K_C, M)`` as columns in ``⊕_c M(c)``.

    Uses every relation (posets) rather than only covers.
    """
    F = M.field
    off, total = _offsets(M)
    blocks, r = [], 0
    for _, s, t, m in M.relation_maps():
        blocks.append((r, off[s], m, 1))
        blocks.append((r, off[t], _eye(F, M.dims[t]), -1))
        r += M.dims[t]
    return kernel_basis(_accumulate(F, r, total, blocks))


def cosections(M):
    """Basis of ``Hom(M, K_C)``: columns are stacked transposed row vectors."""
    F = M.field
    off, total = _offsets(M)
    blocks, r = [], 0
    for _, s, t, m in M.relation_maps():
        # w_t M(f) = w_s  <=>  M(f)^T w_t^T - w_s^T = 0
        blocks.append((r, off[t], m.T, 1))
        blocks.append((r, off[s], _eye(F, M.dims[s]), -1))
        r += M.dims[s]
    return kernel_basis(_accumulate(F, r, total, blocks))


def hom_pairing_multiplicity(M):
    """Rank of the pairing ``(ψ, φ) ↦ ψ_c φ_c`` between cosections and sections."""
    _require_connected(M)
    S, W = sections(M), cosections(M)
    off, _ = _offsets(M)
    pairing = None
    for o in M.objects:
        a, b = off[o], off[o] + M.dims[o]
        P = W.block(a, b, 0, W.cols).T @ S.block(a, b, 0, S.cols)
        if pairing is None:
            pairing = P
        elif P != pairing:
            raise InvariantError("pairing depends on the object %r" % (o,))
    return rank(pairing)


# --- splitting off the entire interval summands ------------------------------


def split_entire_interval(M):
    """Return ``(r, N)`` with ``M ≅ K_C^r ⊕ N`` and ``Ψ_N = 0``.

    A complement of ``ker Ψ`` in the limit is spanned by the limit basis
    vectors at the pivot columns of ``Ψ``; its image under each ``λ_c`` is
    completed to a basis and ``N(c)`` is the quotient by that image.
    """
    data = psi(M)
    r = data.rank
    F = M.field
    _, pivots = rref(data.matrix)
    U = Matrix.identity(F, data.limit.dim).select_columns(pivots)
    proj, comp = {}, {}
    for o in M.objects:
        A = data.limit.cone[o] @ U
        B = complete_basis(A)
        Binv = inverse(B)
        d = M.dims[o]
        proj[o] = Binv.block(r, d, 0, d)
        comp[o] = B.block(0, d, r, d)
    dims = {o: M.dims[o] - r for o in M.objects}
    maps = {k: proj[t] @ m @ comp[s] for k, s, t, m in M.generators()}
    N = PersistenceModule(M.index, F, dims, maps)
    return r, N


# --- comparison maps along a functor -----------------------------------------


def colimit_comparison(M, F):
    """The canonical map ``colim MF -> colim M`` induced by ``(γ_{F j})``."""
    MF = restrict(M, F)
    big, small = colimit(M), colimit(MF)
    G = hstack(M.field, [big.cocone[F(j)] for j in MF.objects], rows=big.dim)
    S = solve(small.projection, Matrix.identity(M.field, small.dim))
    if S is None:
        raise InvariantError("colimit projection is not surjective")
    phi = G @ S
    for j in MF.objects:
        if phi @ small.cocone[j] != big.cocone[F(j)]:
            raise InvariantError("comparison map does not commute at %r" % (j,))
    return phi


def limit_comparison(M, F):
    """The canonical map ``lim M -> lim MF`` induced by ``(λ_{F j})``."""
    MF = restrict(M, F)
    big, small = limit(M), limit(MF)
    stacked = vstack(M.field, [big.cone[F(j)] for j in MF.objects], cols=big.dim)
    mu = solve(small.basis, stacked)
    if mu is None:
        raise InvariantError("restricted cone does not factor through lim MF")
    return mu

