"""Arithmetic structure: center, semi-invariance, centralizers, root sets.

Everything here is an exhaustive, exact computation over a finite carrier.
The division-ring hypotheses of the underlying theory are checked at call
time where they matter (root-class decomposition, operator-form checks);
elsewhere the defining conditions are evaluated verbatim and the result is
reported for what it is.
"""

import itertools
import weakref
from dataclasses import dataclass, field

from .errors import GuardExceeded, PreconditionError, ShapeError
from .evaluation import (Point, all_points, conjugate, evaluate_pmt,
                         operator_apply, pmt_apply)
from .orepoly import OrePoly, poly_mul
from .rings import GF, TruncPoly


def center_candidates(ctx):
    """Elements a with a central in A, sigma(a) scalar, and delta(a) = 0.

    Over a division ring these are exactly the central elements of the
    whole extension; over other carriers they are the natural candidate
    set cut out by the same three conditions.
    """
    ring = ctx.ring
    if ring.card ** 2 > ctx.guards.max_search:
        raise GuardExceeded(
            f"centrality scan needs {ring.card ** 2} pairs, guard is"
            f" {ctx.guards.max_search}",
            size=ring.card ** 2, limit=ctx.guards.max_search)
    elems = list(ring.elements(limit=ctx.guards.max_ring_card))
    out = []
    for a in elems:
        if any(a * b != b * a for b in elems):
            continue
        sig = ctx.sigma(a)
        scalar = all(
            sig[i][j] == (a if i == j else ring.zero())
            for i in range(ctx.n) for j in range(ctx.n))
        if not scalar:
            continue
        if any(not d.is_zero() for d in ctx.delta(a)):
            continue
        out.append(a)
    return out


# ---------------------------------------------------------------------------
# semi-invariance
# ---------------------------------------------------------------------------

@dataclass
class SemiInvariantCertificate:
    """A polynomial p with p*a = phi(a)*p for every scalar a.

    ``mapping`` tabulates phi; ``verified`` records whether phi passed the
    unital-ring-homomorphism audit (it always does over a field, where the
    companion scalar is unique).
    """
    poly: OrePoly
    mapping: dict
    verified: bool

    def describe(self):
        return {str(a): str(b) for a, b in
                sorted(self.mapping.items(), key=lambda kv: kv[0].sort_key())}


def semi_invariant_certificate(p):
    """Certify p*a = a'*p solvability for every a, or return None.

    The companion a' is read off the deglex-leading coefficient when that
    coefficient is a unit; otherwise every candidate is tried and the
    enumeration-least full solution is kept.  The assembled map is then
    audited as a unital ring homomorphism.
    """
    if p.is_zero():
        raise PreconditionError("the zero polynomial is never semi-invariant")
    ctx = p.ctx
    ring = ctx.ring
    lead_word, lead_coeff = p.leading()
    lead_inv = lead_coeff.try_inverse()
    mapping = {}
    for a in ring.elements(limit=ctx.guards.max_ring_card):
        pa = poly_mul(p, OrePoly.constant(ctx, a))
        companion = None
        if lead_inv is not None:
            cand = pa.coefficient(lead_word) * lead_inv
            if poly_mul(OrePoly.constant(ctx, cand), p) == pa:
                companion = cand
        else:
            for cand in ring.elements(limit=ctx.guards.max_ring_card):
                if poly_mul(OrePoly.constant(ctx, cand), p) == pa:
                    companion = cand
                    break
        if companion is None:
            return None
        mapping[a] = companion
    verified = _is_unital_hom(ring, mapping, ctx.guards.max_search)
    return SemiInvariantCertificate(p, mapping, verified)


def _is_unital_hom(ring, mapping, guard):
    if ring.card ** 2 > guard:
        raise GuardExceeded(
            f"homomorphism audit needs {ring.card ** 2} pairs, guard is {guard}",
            size=ring.card ** 2, limit=guard)
    if not mapping[ring.one()].is_one():
        return False
    elems = list(mapping)
    for a in elems:
        for b in elems:
            if mapping[a] + mapping[b] != mapping[a + b]:
                return False
            if mapping[a] * mapping[b] != mapping[a * b]:
                return False
    return True


def _words_up_to(n, max_len):
    words = [()]
    for length in range(1, max_len + 1):
        words.extend(itertools.product(range(1, n + 1), repeat=length))
    return words


def find_semi_invariants(ctx, max_len=3, monic_only=True, restricted=True,
                         budget=None):
    """Search for certified semi-invariant polynomials of bounded length.

    The default search space is polynomials with coefficients in {0, 1}
    (which are automatically monic); ``restricted=False`` widens the scan
    to every coefficient assignment, bounded by ``budget`` or the context
    search guard since the space grows as |A|^(number of words).
    """
    words = _words_up_to(ctx.n, max_len)
    limit = budget if budget is not None else ctx.guards.max_search
    one = ctx.ring.one()
    certs = []
    if restricted:
        size = 2 ** len(words) - 1
        if size > limit:
            raise GuardExceeded(
                f"restricted search abandons {size} candidates, guard is {limit}",
                size=size, limit=limit)
        for mask in range(1, 2 ** len(words)):
            terms = {w: one for b, w in enumerate(words) if mask >> b & 1}
            cand = OrePoly(ctx, terms)
            cert = semi_invariant_certificate(cand)
            if cert is not None:
                certs.append(cert)
        return certs
    size = ctx.ring.card ** len(words)
    if size > limit:
        raise GuardExceeded(
            f"unrestricted search abandons {size} candidates, guard is {limit}",
            size=size, limit=limit)
    elems = list(ctx.ring.elements(limit=ctx.guards.max_ring_card))
    for combo in itertools.product(elems, repeat=len(words)):
        terms = {w: c for w, c in zip(words, combo) if not c.is_zero()}
        if not terms:
            continue
        cand = OrePoly(ctx, terms)
        if monic_only and not cand.leading()[1].is_one():
            continue
        cert = semi_invariant_certificate(cand)
        if cert is not None:
            certs.append(cert)
    return certs


_VANISHING_CACHE = weakref.WeakKeyDictionary()


def no_vanishing_polynomial(ctx, i, degree):
    """No nonzero polynomial in t_i of the given degree bound kills all of K.

    This is the hypothesis under which the operator form is equivalent to
    semi-invariance; it can genuinely fail on small fields (already at
    degree 3 under the squaring twist on four elements), so callers can
    interrogate it separately.  Exhausts all coefficient tuples; memoised
    per (context, variable, degree).
    """
    per_ctx = _VANISHING_CACHE.setdefault(ctx, {})
    key = (i, degree)
    hit = per_ctx.get(key)
    if hit is not None:
        return hit
    ring = ctx.ring
    size = ring.card ** (degree + 1)
    if size > ctx.guards.max_search:
        raise GuardExceeded(
            f"vanishing-polynomial scan needs {size} candidates, guard is"
            f" {ctx.guards.max_search}", size=size, limit=ctx.guards.max_search)
    elems = list(ring.elements(limit=ctx.guards.max_ring_card))
    points = [Point(ctx, tuple(a if j == i - 1 else ring.zero()
                               for j in range(ctx.n)))
              for a in elems]
    ok = True
    for combo in itertools.product(elems, repeat=degree + 1):
        terms = {(i,) * d: c for d, c in enumerate(combo) if not c.is_zero()}
        if not terms:
            continue
        q = OrePoly(ctx, terms)
        if all(evaluate_pmt(q, pt).is_zero() for pt in points):
            ok = False
            break
    per_ctx[key] = ok
    return ok


def operator_form_check(p, variable=None, verify_hypothesis=True):
    """The operator identity p(T_a) = r_{p(T_a)(1)} o sigma_i^deg(p).

    For a univariate p over a diagonal twist on a finite field this holds
    for all a exactly when p is semi-invariant, provided no nonzero
    polynomial of the same degree vanishes identically on K.  By default
    that hypothesis is verified and its failure raises; passing
    ``verify_hypothesis=False`` returns the bare identity verdict, which
    still follows from semi-invariance but no longer implies it.
    """
    ctx = p.ctx
    if p.is_zero():
        raise PreconditionError("the zero polynomial has no operator form")
    if ctx.twist.kind != "diagonal":
        raise ShapeError("operator-form check needs a diagonal twist")
    if not isinstance(ctx.ring, GF):
        raise ShapeError("operator-form check needs a finite field carrier")
    seen = {idx for w in p.terms for idx in w}
    if variable is None:
        if len(seen) > 1:
            raise ShapeError(f"polynomial mixes variables {sorted(seen)};"
                             " the operator form is univariate")
        variable = seen.pop() if seen else 1
    elif seen - {variable}:
        raise ShapeError(f"polynomial is not univariate in t{variable}")
    degree = p.degree()
    if verify_hypothesis and not no_vanishing_polynomial(ctx, variable, degree):
        raise PreconditionError(
            f"some nonzero polynomial of degree <= {degree} vanishes on all"
            " of K; the operator form is not conclusive here")
    endo = ctx.twist._data["endos"][variable - 1]
    ring = ctx.ring
    for a in ring.elements(limit=ctx.guards.max_ring_card):
        pt = Point(ctx, tuple(a if j == variable - 1 else ring.zero()
                              for j in range(ctx.n)))
        base = evaluate_pmt(p, pt)
        for x in ring.elements(limit=ctx.guards.max_ring_card):
            twisted = x
            for _ in range(degree):
                twisted = endo(twisted)
            if operator_apply(p, pt, x) != twisted * base:
                return False
    return True


def classification_audit(certs, variable, ctx):
    """Audit: monic univariate semi-invariants decompose over the minimal one.

    Given certified polynomials, restricts to the monic ones living in
    t_variable, takes a minimal positive-degree member p, and checks that
    every other one equals sum_j a_j p^j by greedy elimination of leading
    terms.  Returns None when no positive-degree member exists.
    """
    univ = []
    for cert in certs:
        words = set(cert.poly.terms)
        if all(set(w) <= {variable} for w in words) and cert.poly.degree() >= 1:
            if cert.poly.leading()[1].is_one():
                univ.append(cert.poly)
    if not univ:
        return None
    minimal = min(univ, key=lambda q: q.degree())
    d = minimal.degree()
    for q in univ:
        if q.degree() % d != 0:
            return False
        rem = q
        while rem.degree() >= 1:
            j, col = divmod(rem.degree(), d)
            if col != 0:
                return False
            power = OrePoly.one(ctx)
            for _ in range(j):
                power = poly_mul(power, minimal)
            lead_w, lead_c = rem.leading()
            pw_c = power.coefficient(lead_w)
            inv = pw_c.try_inverse()
            if inv is None:
                return False
            coeff = lead_c * inv
            rem = rem - poly_mul(OrePoly.constant(ctx, coeff), power)
    return True


# ---------------------------------------------------------------------------
# centralizers and the idealizer
# ---------------------------------------------------------------------------

def centralizer(a):
    """All x with sigma(x)a + delta(x) = a x, componentwise.

    The result is audited to be a subring (0, 1, closed under + and *)
    before being returned; a failure would indicate a broken context.
    """
    ctx = a.ctx
    ring = ctx.ring
    members = []
    for x in ring.elements(limit=ctx.guards.max_ring_card):
        if all(pmt_apply(a, i, x) == a.coords[i - 1] * x
               for i in range(1, ctx.n + 1)):
            members.append(x)
    member_set = set(members)
    if ring.zero() not in member_set or ring.one() not in member_set:
        raise AssertionError("centralizer lost 0 or 1; context is inconsistent")
    for x in members:
        for y in members:
            if x + y not in member_set or x * y not in member_set:
                raise AssertionError(
                    f"centralizer is not closed at ({x}, {y})")
    return members


def idealizer_member(b, a):
    """Constant membership in the idealizer of the evaluation ideal.

    b qualifies exactly when each generator times b evaluates to zero,
    i.e. ((t_i - a_i) * b)(a) = 0 for every i; this matches centralizer
    membership, which the tests exercise as an equivalence.
    """
    ctx = a.ctx
    for i in range(1, ctx.n + 1):
        gen = OrePoly.variable(ctx, i) - OrePoly.constant(ctx, a.coords[i - 1])
        prod = poly_mul(gen, OrePoly.constant(ctx, b))
        if not evaluate_pmt(prod, a).is_zero():
            return False
    return True


def right_linearity_check(a):
    """T_{a_i}(x y) = T_{a_i}(x) y for every x and every centralizer member y."""
    ctx = a.ctx
    cent = centralizer(a)
    for x in ctx.ring.elements(limit=ctx.guards.max_ring_card):
        for y in cent:
            for i in range(1, ctx.n + 1):
                if pmt_apply(a, i, x * y) != pmt_apply(a, i, x) * y:
                    return False
    return True


# ---------------------------------------------------------------------------
# root sets and their class decomposition
# ---------------------------------------------------------------------------

def roots(f):
    """The exact root set { a : f(a) = 0 }, scanned over all of A^n."""
    return [a for a in all_points(f.ctx) if evaluate_pmt(f, a).is_zero()]


@dataclass
class ClassSlice:
    representative: Point
    witnesses: list            # E(f, a): nonzero kernel members of f(T_a)
    members: list              # the conjugates a^x for x in E(f, a)


@dataclass
class RootClassReport:
    poly: OrePoly
    root_set: list
    slices: list = field(default_factory=list)
    coverage: bool = False
    kernel_root_link: bool = True
    centralizer_closure: bool = True

    def describe_rows(self):
        return [(str(s.representative), len(s.witnesses),
                 ", ".join(str(m) for m in s.members)) for s in self.slices]


def class_decomposition(f):
    """Split V(f) into conjugacy-class slices via kernels of the point maps.

    Works over finite fields, where every nonzero x is a unit and each
    witness picks out the single conjugate a^x.  For every representative
    the kernel-root link (x in ker f(T_a) iff f(a^x) = 0) and the closure
    of the kernel and witness sets under right multiplication by the
    centralizer are checked along the way; the coverage flag records
    whether the slices exhaust the root set.
    """
    ctx = f.ctx
    if not isinstance(ctx.ring, GF):
        raise PreconditionError(
            "non-field ring rejected (domain hypothesis): class decomposition"
            f" needs a finite field, not {ctx.ring}")
    ring = ctx.ring
    root_list = roots(f)
    root_set = set(root_list)
    report = RootClassReport(poly=f, root_set=root_list)
    nonzero = [x for x in ring.elements(limit=ctx.guards.max_ring_card)
               if not x.is_zero()]
    covered = set()
    for rep in root_list:
        if rep in covered:
            continue
        kernel = [x for x in ring.elements(limit=ctx.guards.max_ring_card)
                  if operator_apply(f, rep, x).is_zero()]
        witnesses = [x for x in kernel if not x.is_zero()]
        members = sorted({conjugate(rep, x) for x in witnesses},
                         key=Point.sort_key)
        for x in nonzero:
            in_kernel = operator_apply(f, rep, x).is_zero()
            is_root = evaluate_pmt(f, conjugate(rep, x)).is_zero()
            if in_kernel != is_root:
                report.kernel_root_link = False
        kernel_set = set(kernel)
        witness_set = set(witnesses)
        cent = centralizer(rep)
        for x in kernel:
            for c in cent:
                if x * c not in kernel_set:
                    report.centralizer_closure = False
        for x in witnesses:
            for c in cent:
                prod = x * c
                if not prod.is_zero() and prod not in witness_set:
                    report.centralizer_closure = False
        report.slices.append(ClassSlice(rep, witnesses, members))
        covered.update(members)
    report.coverage = covered == root_set
    return report


def semi_invariant_root_closure(cert):
    """Conjugating a root of a certified semi-invariant stays a root."""
    f = cert.poly
    ctx = f.ctx
    if not isinstance(ctx.ring, GF):
        raise PreconditionError(
            "non-field ring rejected (domain hypothesis): root closure needs"
            f" a finite field, not {ctx.ring}")
    for b in roots(f):
        for x in ctx.ring.elements(limit=ctx.guards.max_ring_card):
            if x.is_zero():
                continue
            if not evaluate_pmt(f, conjugate(b, x)).is_zero():
                return False
    return True


def derivation_square_kernel(ctx):
    """The squared-variable kernel phenomenon on (Z/2)[x]/(x^2).

    With the identity diagonal twist and d/dx in both coordinates the
    derivation squares to zero, so t_1^2 and t_2^2 act as zero through the
    point maps at the origin.  Checked on every carrier element.
    """
    ring = ctx.ring
    if not (isinstance(ring, TruncPoly) and ring.p == 2 and ring.order == 2):
        raise ShapeError("the kernel demo lives over Z/2[x]/(x^2)")
    if ctx.twist.kind != "diagonal" or ctx.n != 2:
        raise ShapeError("the kernel demo needs the 2-variable diagonal twist")
    if any(e.kind != "identity" for e in ctx.twist._data["endos"]):
        raise ShapeError("the kernel demo needs identity twists")
    if (ctx.derivation.kind != "coordinate"
            or any(m.kind != "derivative" for m in ctx.derivation._data["maps"])):
        raise ShapeError("the kernel demo needs d/dx in both coordinates")
    origin = Point.zero(ctx)
    for i in (1, 2):
        square = OrePoly.variable(ctx, i, 2)
        for x in ring.elements(limit=ctx.guards.max_ring_card):
            if not operator_apply(square, origin, x).is_zero():
                return False
    return True
