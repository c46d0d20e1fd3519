"""Free-module actions of the extension and the module-hom solver.

A rank-l presentation stores one l x l matrix per variable, row k holding
the coordinates of t_i . e_k.  With coordinates written as rows (scalars
on the left, maps acting by right matrix multiplication), an A-linear map
with matrix M intertwines the two actions exactly when

    X_i M = sum_j sigma_ij(M) Y_j + delta_i(M)      for every i,

where sigma_ij and delta_i act entrywise.  The row convention is what
makes this identity hold verbatim over noncommutative coefficients; the
equivalence with the pointwise intertwining condition is itself exercised
by the test suite rather than taken on faith.

Over a finite field every sigma_ij and delta_i is linear over the prime
subfield, so the constraint unfolds into an exact linear system mod p and
the solver returns an echelonized basis.  Other carriers fall back to a
guarded exhaustive scan.
"""

import itertools
from dataclasses import dataclass

from . import matrices
from .errors import GuardExceeded, RingMismatch, ShapeError
from .rings import GF, RingElement


class ModulePresentation:
    """Matrices X_1..X_n acting on a rank-l free module, row convention."""

    def __init__(self, ctx, rank, mats):
        mats = tuple(tuple(tuple(row) for row in m) for m in mats)
        if len(mats) != ctx.n:
            raise ShapeError(f"need {ctx.n} action matrices, got {len(mats)}")
        for m in mats:
            if len(m) != rank or any(len(row) != rank for row in m):
                raise ShapeError(f"action matrices must be {rank}x{rank}")
            for row in m:
                for c in row:
                    if not isinstance(c, RingElement) or c.ring != ctx.ring:
                        raise RingMismatch("matrix entries must live in the"
                                           " context ring")
        self.ctx = ctx
        self.rank = rank
        self.mats = mats

    def __eq__(self, other):
        return (isinstance(other, ModulePresentation) and other.ctx is self.ctx
                and other.rank == self.rank and other.mats == self.mats)

    def __repr__(self):
        return f"<ModulePresentation rank={self.rank} over {self.ctx.ring}>"


def module_from_point(a):
    """The rank-1 presentation with X_i = [a_i]; its maps are the point maps."""
    return ModulePresentation(a.ctx, 1, tuple(((c,),) for c in a.coords))


def module_apply(pres, i, u):
    """t_i acting on the coordinate row u = (u_1, ..., u_l), 1-based i.

    Component m is  sum_j sum_k sigma_ij(u_k) (X_j)[k][m] + delta_i(u_m).
    """
    ctx = pres.ctx
    u = tuple(u)
    if len(u) != pres.rank:
        raise ShapeError(f"coordinate row must have length {pres.rank}")
    out = list(ctx.delta(c)[i - 1] for c in u)
    for k, coord in enumerate(u):
        row = ctx.sigma(coord)[i - 1]
        for j in range(ctx.n):
            s = row[j]
            if s.is_zero():
                continue
            xrow = pres.mats[j][k]
            for m in range(pres.rank):
                out[m] = out[m] + s * xrow[m]
    return tuple(out)


def hom_matrix_apply(mmat, u):
    """Coordinates of the A-linear map with matrix M on the row u: (uM)."""
    cols = len(mmat[0])
    return tuple(
        _sum_products(u, tuple(row[s] for row in mmat))
        for s in range(cols))


def _sum_products(u, col):
    acc = None
    for x, y in zip(u, col):
        term = x * y
        acc = term if acc is None else acc + term
    return acc


def condition_residuals(mmat, source, target):
    """The matrices X_i M - sum_j sigma_ij(M) Y_j - delta_i(M), one per i."""
    ctx = source.ctx
    if target.ctx is not ctx:
        raise RingMismatch("presentations from different contexts")
    if len(mmat) != source.rank or any(len(row) != target.rank for row in mmat):
        raise ShapeError(
            f"hom matrix must be {source.rank}x{target.rank}")
    out = []
    for i in range(ctx.n):
        lhs = matrices.mul(source.mats[i], mmat)
        rhs = matrices.entrywise(lambda c: ctx.delta(c)[i], mmat)
        for j in range(ctx.n):
            sig_m = matrices.entrywise(lambda c: ctx.sigma(c)[i][j], mmat)
            rhs = matrices.add(rhs, matrices.mul(sig_m, target.mats[j]))
        out.append(matrices.sub(lhs, rhs))
    return out


def is_module_hom(mmat, source, target, pointwise_guard=4096):
    """Check the matrix identity, then cross-validate it pointwise.

    The pointwise pass enumerates coordinate rows u (up to the guard) and
    compares M(t_i . u) with t_i . M(u); a mismatch either way is returned
    with its witness so the two formulations audit each other.
    """
    residuals = condition_residuals(mmat, source, target)
    ok = all(matrices.is_zero(r) for r in residuals)
    ctx = source.ctx
    count = ctx.ring.card ** source.rank
    if count <= pointwise_guard:
        violation = None
        elems = list(ctx.ring.elements(limit=None))
        for combo in itertools.product(elems, repeat=source.rank):
            for i in range(1, ctx.n + 1):
                via_source = hom_matrix_apply(mmat, module_apply(source, i, combo))
                via_target = module_apply(target, i, hom_matrix_apply(mmat, combo))
                if via_source != via_target:
                    violation = (i, combo)
                    break
            if violation:
                break
        # a hom must intertwine everywhere; a non-hom must fail somewhere
        if ok and violation is not None:
            raise AssertionError(
                f"matrix identity holds but intertwining fails at {violation}")
        if not ok and violation is None:
            raise AssertionError(
                "matrix identity fails but every coordinate row intertwines")
    return ok, residuals


@dataclass
class HomSolution:
    """Solution space of the intertwining identity.

    ``basis`` is an echelonized prime-subfield basis (finite-field path);
    ``solutions`` is the full list (enumeration path).  Exactly one of the
    two is set.
    """
    source: ModulePresentation
    target: ModulePresentation
    basis: list = None
    solutions: list = None
    char: int = 0

    def count(self):
        if self.solutions is not None:
            return len(self.solutions)
        return self.char ** len(self.basis)

    def dimension(self):
        if self.basis is None:
            raise ShapeError("no prime-subfield basis on the enumeration path")
        return len(self.basis)

    def iter_solutions(self, limit=1_000_000):
        if self.solutions is not None:
            yield from self.solutions
            return
        total = self.count()
        if total > limit:
            raise GuardExceeded(
                f"solution space has {total} members, guard is {limit}",
                size=total, limit=limit)
        ring = self.source.ctx.ring
        rows, cols = self.source.rank, self.target.rank
        for combo in itertools.product(range(self.char), repeat=len(self.basis)):
            acc = matrices.zero(ring, rows, cols)
            for c, bmat in zip(combo, self.basis):
                if c:
                    scaled = matrices.entrywise(lambda e: ring.from_int(c) * e, bmat)
                    acc = matrices.add(acc, scaled)
            yield acc


def _nullspace_mod_p(rows, ncols, p):
    """Basis of the right nullspace of a matrix over Z/p, echelonized.

    Returns vectors with 1 in their free coordinate and the pivot
    coordinates back-filled, in ascending free-column order; this makes
    the output deterministic for a fixed input.
    """
    mat = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for rr in range(r, len(mat)):
            if mat[rr][c] % p:
                pivot = rr
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = pow(mat[r][c], -1, p)
        mat[r] = [(inv * v) % p for v in mat[r]]
        for rr in range(len(mat)):
            if rr != r and mat[rr][c] % p:
                f = mat[rr][c]
                mat[rr] = [(v - f * w) % p for v, w in zip(mat[rr], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        vec = [0] * ncols
        vec[fc] = 1
        for prow, pc in enumerate(pivots):
            vec[pc] = (-mat[prow][fc]) % p
        basis.append(vec)
    return basis


def hom_solve(source, target):
    """All matrices M satisfying the intertwining identity.

    Finite fields: entries of M are expanded over the prime subfield, the
    identity becomes a homogeneous linear system mod p (each sigma_ij and
    delta_i is additive, hence prime-subfield linear), and exact Gaussian
    elimination yields an echelonized basis.  Other carriers: guarded
    exhaustive filter over all candidate matrices.
    """
    ctx = source.ctx
    if target.ctx is not ctx:
        raise RingMismatch("presentations from different contexts")
    ring = ctx.ring
    rows, cols = source.rank, target.rank
    if isinstance(ring, GF):
        p, k = ring.p, ring.k
        unknowns = rows * cols * k
        columns = []
        for r in range(rows):
            for s in range(cols):
                for u in range(k):
                    unit = ring.element(tuple(1 if t == u else 0 for t in range(k)))
                    probe = tuple(
                        tuple(unit if (i, j) == (r, s) else ring.zero()
                              for j in range(cols))
                        for i in range(rows))
                    residuals = condition_residuals(probe, source, target)
                    flat = []
                    for res in residuals:
                        for row in res:
                            for cell in row:
                                flat.extend(cell.value)
                    columns.append(flat)
        system = [[columns[j][i] for j in range(unknowns)]
                  for i in range(len(columns[0]))]
        null = _nullspace_mod_p(system, unknowns, p)
        basis = []
        for vec in null:
            entries = []
            for r in range(rows):
                row = []
                for s in range(cols):
                    base = (r * cols + s) * k
                    row.append(ring.element(tuple(vec[base + t] for t in range(k))))
                entries.append(tuple(row))
            basis.append(tuple(entries))
        return HomSolution(source, target, basis=basis, char=p)

    size = ring.card ** (rows * cols)
    if size > ctx.guards.max_search:
        raise GuardExceeded(
            f"hom search needs {size} candidates, guard is {ctx.guards.max_search}",
            size=size, limit=ctx.guards.max_search)
    elems = list(ring.elements(limit=ctx.guards.max_ring_card))
    solutions = []
    for combo in itertools.product(elems, repeat=rows * cols):
        cand = tuple(combo[r * cols:(r + 1) * cols] for r in range(rows))
        residuals = condition_residuals(cand, source, target)
        if all(matrices.is_zero(res) for res in residuals):
            solutions.append(cand)
    return HomSolution(source, target, solutions=solutions)


def endomorphism_count_matches_centralizer(a):
    """|Hom(S/I, S/I)| against the centralizer of the point, both exact."""
    from .structure import centralizer
    pres = module_from_point(a)
    sol = hom_solve(pres, pres)
    return sol.count(), len(centralizer(a))
