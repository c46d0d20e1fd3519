"""Evaluation at points of A^n, conjugation, and the witness relation.

Evaluation has two independent routes that must always agree:

* the operator route: the point a carries the maps
  T_i(b) = sum_j sigma_ij(b) a_j + delta_i(b); a word acts by composing
  them and f(a) is the composite applied to 1;
* the reduction route: f(a) is the unique constant representative of
  f modulo the left ideal generated by the t_i - a_i, computed by
  rewriting one leading term at a time.

Their agreement on random inputs is a standing cross-check used by the
test suite and by the command-line ``eval`` report.
"""

from . import matrices
from .errors import GuardExceeded, ParseError, PreconditionError, RingMismatch, ShapeError
from .orepoly import OrePoly, poly_mul, word_key
from .rings import RingElement


class Point:
    """A column (a_1, ..., a_n) in A^n, the locus of evaluation."""

    __slots__ = ("ctx", "coords")

    def __init__(self, ctx, coords):
        coords = tuple(coords)
        if len(coords) != ctx.n:
            raise ShapeError(f"point needs {ctx.n} coordinates, got {len(coords)}")
        for c in coords:
            if not isinstance(c, RingElement) or c.ring != ctx.ring:
                raise RingMismatch("point coordinates must live in the context ring")
        self.ctx = ctx
        self.coords = coords

    @classmethod
    def zero(cls, ctx):
        return cls(ctx, (ctx.ring.zero(),) * ctx.n)

    @classmethod
    def parse(cls, ctx, text):
        s = text.strip()
        if not (s.startswith("(") and s.endswith(")")):
            raise ParseError(f"point literal must be parenthesized, got {text!r}")
        from .rings import _split_commas
        parts = _split_commas(s[1:-1])
        if len(parts) != ctx.n:
            raise ParseError(f"point needs {ctx.n} coordinates, got {len(parts)}")
        return cls(ctx, tuple(ctx.ring.parse(p) for p in parts))

    def __eq__(self, other):
        return (isinstance(other, Point) and other.ctx is self.ctx
                and other.coords == self.coords)

    def __hash__(self):
        return hash(self.coords)

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + ")"

    def __repr__(self):
        return f"<Point {self}>"

    def sort_key(self):
        return tuple(c.sort_key() for c in self.coords)

    def __getitem__(self, i):
        return self.coords[i]


def all_points(ctx):
    """Every point of A^n in canonical coordinate order (guarded)."""
    card = ctx.ring.card ** ctx.n
    if card > ctx.guards.max_search:
        raise GuardExceeded(
            f"point enumeration needs {card} points, guard is {ctx.guards.max_search}",
            size=card, limit=ctx.guards.max_search)
    elems = list(ctx.ring.elements(limit=ctx.guards.max_ring_card))

    def rec(prefix, depth):
        if depth == 0:
            yield Point(ctx, prefix)
            return
        for e in elems:
            yield from rec(prefix + (e,), depth - 1)

    yield from rec((), ctx.n)


def pmt_apply(a, i, b):
    """T_{a_i}(b) = sum_j sigma_ij(b) a_j + delta_i(b), 1-based i."""
    ctx = a.ctx
    row = ctx.sigma(b)[i - 1]
    acc = ctx.delta(b)[i - 1]
    for j in range(ctx.n):
        acc = acc + row[j] * a.coords[j]
    return acc


def operator_apply(f, a, x):
    """f applied through the point maps: each word t_{i1}..t_{il} acts as
    the composite T_{i1} o ... o T_{il}, and coefficients multiply on the
    left of the final value."""
    ctx = f.ctx
    if a.ctx is not ctx:
        raise RingMismatch("point and polynomial from different contexts")
    total = ctx.ring.zero()
    for w, c in f.terms.items():
        v = x
        for idx in reversed(w):
            v = pmt_apply(a, idx, v)
        total = total + c * v
    return total


def evaluate_pmt(f, a):
    """f(a) via the operator route: the word composite applied to 1."""
    return operator_apply(f, a, f.ctx.ring.one())


def evaluate_reduce(f, a):
    """f(a) via reduction modulo the left ideal of the t_i - a_i.

    Repeatedly splits the deglex-largest nonconstant term c*w't_j into
    (c*w') * a_j, which changes the representative by c*w'(t_j - a_j), a
    member of the ideal.  Total word length strictly drops, so this
    terminates with the unique constant representative.
    """
    ctx = f.ctx
    if a.ctx is not ctx:
        raise RingMismatch("point and polynomial from different contexts")
    work = dict(f.terms)
    while True:
        nonconst = [w for w in work if w]
        if not nonconst:
            break
        w = max(nonconst, key=word_key)
        c = work.pop(w)
        head, j = w[:-1], w[-1]
        piece = poly_mul(OrePoly(ctx, {head: c}),
                         OrePoly.constant(ctx, a.coords[j - 1]))
        for pw, pc in piece.terms.items():
            cur = work.get(pw)
            s = pc if cur is None else cur + pc
            if s.is_zero():
                work.pop(pw, None)
            else:
                work[pw] = s
    return work.get((), ctx.ring.zero())


def conjugate(a, x):
    """The twisted conjugate a^x = sigma(x) a x^{-1} + delta(x) x^{-1}.

    Defined for unit x only; witness-style relations for mere
    non-zero-divisors go through ``related``.
    """
    ctx = a.ctx
    if isinstance(x, int):
        x = ctx.ring.from_int(x)
    xinv = x.try_inverse()
    if xinv is None:
        raise PreconditionError(f"conjugation needs a unit, {x} is not invertible")
    twisted = matrices.col_mul(ctx.sigma(x), a.coords)
    shifted = matrices.col_add(twisted, ctx.delta(x))
    return Point(ctx, matrices.scale_col_right(shifted, xinv))


def related_residual(a, b, x):
    """The column b*x - sigma(x)a - delta(x); zero iff x witnesses a ~ b."""
    ctx = a.ctx
    lhs = tuple(bc * x for bc in b.coords)
    rhs = matrices.col_add(matrices.col_mul(ctx.sigma(x), a.coords), ctx.delta(x))
    return matrices.col_sub(lhs, rhs)


def related(a, b):
    """The least non-zero-divisor x with b*x = sigma(x)a + delta(x), or None.

    The relation is not symmetric over general rings, and nothing here
    assumes it is; the witness search just scans the carrier in canonical
    order, skipping zero divisors (zero included by convention).
    """
    ctx = a.ctx
    if b.ctx is not ctx:
        raise RingMismatch("points from different contexts")
    for x in ctx.ring.elements(limit=ctx.guards.max_ring_card):
        if x.is_zero_divisor():
            continue
        if all(r.is_zero() for r in related_residual(a, b, x)):
            return x
    return None


def conjugacy_class(a):
    """All points b admitting a witness x (non-zero-divisor) for a ~ b.

    A non-zero-divisor witness pins b down uniquely when it exists, so the
    scan runs over witnesses and solves each coordinate equation
    b_i * x = rhs_i by enumeration.  Output is sorted canonically.
    """
    ctx = a.ctx
    ring = ctx.ring
    found = set()
    elems = list(ring.elements(limit=ctx.guards.max_ring_card))
    for x in elems:
        if x.is_zero_divisor():
            continue
        rhs = matrices.col_add(matrices.col_mul(ctx.sigma(x), a.coords),
                               ctx.delta(x))
        coords = []
        for i in range(ctx.n):
            hit = None
            for cand in elems:
                if cand * x == rhs[i]:
                    hit = cand
                    break
            if hit is None:
                break
            coords.append(hit)
        else:
            found.add(Point(ctx, coords))
    return sorted(found, key=Point.sort_key)


def product_formula_general(f, g, a):
    """The pair ((fg)(a), f(T_a)(g(a))); equal over every coefficient ring."""
    lhs = evaluate_pmt(poly_mul(f, g), a)
    rhs = operator_apply(f, a, evaluate_pmt(g, a))
    return lhs, rhs


def product_formula_unit(f, g, a):
    """The pair ((fg)(a), f(a^{g(a)}) * g(a)); needs g(a) to be a unit."""
    ga = evaluate_pmt(g, a)
    if ga.is_zero() or ga.try_inverse() is None:
        raise PreconditionError(
            f"the unit product formula needs g(a) invertible, got g(a) = {ga}")
    lhs = evaluate_pmt(poly_mul(f, g), a)
    rhs = evaluate_pmt(f, conjugate(a, ga)) * ga
    return lhs, rhs


def kernel_transport(f, a, b, x, y):
    """The pair (f(T_b)(y) * x, f(T_a)(y * x)) for a witnessed relation.

    Raises unless x is a non-zero-divisor witnessing b*x = sigma(x)a +
    delta(x); the error carries the residual column.  With y = 1 this
    specializes to f(b) * x = f(T_a)(x), which ties kernel membership of x
    to b being a root.
    """
    residual = related_residual(a, b, x)
    if x.is_zero_divisor():
        raise PreconditionError(f"transport witness {x} is a zero divisor")
    if not all(r.is_zero() for r in residual):
        text = "(" + ", ".join(str(r) for r in residual) + ")"
        raise PreconditionError(
            f"witness relation fails: residual b*x - sigma(x)a - delta(x) = {text}")
    lhs = operator_apply(f, b, y) * x
    rhs = operator_apply(f, a, y * x)
    return lhs, rhs
