"""Left-normal-form polynomials over the free monoid on t_1..t_n.

A polynomial is a finite map from words (tuples of 1-based variable
indices) to nonzero coefficients, the coefficient sitting on the LEFT of
its word.  Multiplication concatenates words and normalizes with the
commutation rule

    t_i a = sum_j sigma_ij(a) t_j + delta_i(a),

applied letter by letter from the innermost (rightmost) position, so the
term count can grow but each rewrite step is a single push.  Words are
ordered by deglex: length first, then lexicographically with t1 < t2 < ...
"""

from .errors import GuardExceeded, ParseError, RingMismatch, ShapeError
from .rings import RingElement
from .twist import CoordinateMap, Derivation, OreContext, TwistMap, validate_twist

Word = tuple


def word_key(w):
    return (len(w), w)


class OrePoly:
    """An element of the extension, held in normal form (no zero terms)."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms=None):
        self.ctx = ctx
        clean = {}
        if terms:
            for w, c in terms.items():
                if not all(1 <= i <= ctx.n for i in w):
                    raise ShapeError(f"word {w} uses variables outside t1..t{ctx.n}")
                if not c.is_zero():
                    clean[tuple(w)] = c
        self.terms = clean

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, ctx):
        return cls(ctx, {})

    @classmethod
    def one(cls, ctx):
        return cls(ctx, {(): ctx.ring.one()})

    @classmethod
    def constant(cls, ctx, c):
        if isinstance(c, int):
            c = ctx.ring.from_int(c)
        return cls(ctx, {(): c})

    @classmethod
    def variable(cls, ctx, i, power=1):
        if not 1 <= i <= ctx.n:
            raise ShapeError(f"no variable t{i} in a {ctx.n}-variable context")
        return cls(ctx, {(i,) * power: ctx.ring.one()})

    # -- ring structure --------------------------------------------------------

    def _check(self, other):
        if isinstance(other, (RingElement, int)):
            other = OrePoly.constant(self.ctx, other)
        if not isinstance(other, OrePoly):
            return None
        if other.ctx is not self.ctx:
            raise RingMismatch("polynomials from different contexts")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            cur = out.get(w)
            s = c if cur is None else cur + c
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
        return OrePoly(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return OrePoly(self.ctx, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return poly_mul(self, other)

    def __rmul__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return poly_mul(other, self)

    def __eq__(self, other):
        return (isinstance(other, OrePoly) and other.ctx is self.ctx
                and other.terms == self.terms)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"<OrePoly {format_poly(self)}>"

    # -- inspection ------------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(len(w) == 0 for w in self.terms)

    def constant_value(self):
        return self.terms.get((), self.ctx.ring.zero())

    def degree(self):
        """Word length of the deglex-leading term; -1 for the zero polynomial."""
        return max((len(w) for w in self.terms), default=-1)

    def leading(self):
        """(word, coefficient) of the deglex-maximal term."""
        if not self.terms:
            raise ValueError("the zero polynomial has no leading term")
        w = max(self.terms, key=word_key)
        return w, self.terms[w]

    def coefficient(self, word):
        return self.terms.get(tuple(word), self.ctx.ring.zero())


def push_variable(ctx, i, a):
    """Normal form of t_i * a:  sum_j sigma_ij(a) t_j + delta_i(a)."""
    if isinstance(a, int):
        a = ctx.ring.from_int(a)
    return OrePoly(ctx, _push_terms(ctx, i, {(): a}))


def _push_terms(ctx, i, terms):
    """Left-multiply a term dict by t_i, returning a new term dict."""
    out = {}
    for w, c in terms.items():
        sig = ctx.sigma(c)
        row = sig[i - 1]
        dlt = ctx.delta(c)[i - 1]
        for j in range(ctx.n):
            coeff = row[j]
            if coeff.is_zero():
                continue
            key = (j + 1,) + w
            cur = out.get(key)
            s = coeff if cur is None else cur + coeff
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        if not dlt.is_zero():
            cur = out.get(w)
            s = dlt if cur is None else cur + dlt
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
    return out


def poly_mul(f, g):
    """The product in the extension.

    Each term c*v of f acts on g by the letter-at-a-time rewrite: fold
    t_i * (...) over the letters of v right to left, then scale by c on
    the left.  Addition being commutative, accumulation order is
    irrelevant to the result.
    """
    if f.ctx is not g.ctx:
        raise RingMismatch("polynomials from different contexts")
    ctx = f.ctx
    limit = ctx.guards.max_terms
    acc = {}
    for v, c in f.terms.items():
        part = g.terms
        for idx in reversed(v):
            part = _push_terms(ctx, idx, part)
            if len(part) > limit:
                raise GuardExceeded(
                    f"product exceeds the {limit}-term guard",
                    size=len(part), limit=limit)
        for w, d in part.items():
            coeff = c * d
            if coeff.is_zero():
                continue
            cur = acc.get(w)
            s = coeff if cur is None else cur + coeff
            if s.is_zero():
                acc.pop(w, None)
            else:
                acc[w] = s
        if len(acc) > limit:
            raise GuardExceeded(
                f"product exceeds the {limit}-term guard",
                size=len(acc), limit=limit)
    return OrePoly(ctx, acc)


# ---------------------------------------------------------------------------
# text form
# ---------------------------------------------------------------------------

def _format_word(w):
    parts = []
    idx = 0
    while idx < len(w):
        j = idx
        while j < len(w) and w[j] == w[idx]:
            j += 1
        count = j - idx
        parts.append(f"t{w[idx]}" + (f"^{count}" if count > 1 else ""))
        idx = j
    return " ".join(parts)


def format_poly(f):
    """Deglex-descending text form; parse(format(f)) == f."""
    if not f.terms:
        return "0"
    chunks = []
    for w in sorted(f.terms, key=word_key, reverse=True):
        c = f.terms[w]
        text = str(c)
        wrapped = f"({text})" if ("+" in text or "-" in text) else text
        if not w:
            chunks.append(wrapped)
        elif c.is_one():
            chunks.append(_format_word(w))
        else:
            chunks.append(f"{wrapped} {_format_word(w)}")
    return " + ".join(chunks)


class _Scanner:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take_int(self):
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        return int(self.text[start:self.pos])

    def take_balanced(self, open_ch, close_ch):
        # consumes from the current opening char through its matching close
        start = self.pos
        depth = 0
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == open_ch:
                depth += 1
            elif ch == close_ch:
                depth -= 1
                if depth == 0:
                    self.pos += 1
                    return self.text[start + 1:self.pos - 1]
            self.pos += 1
        raise ParseError(f"unbalanced {open_ch!r}", position=start)


def parse_poly(ctx, text):
    """Parse the textual grammar: terms joined by +/-, each term a product
    of variable powers and coefficient literals in any order.

    Coefficients containing top-level '+'/'-' must be parenthesized, e.g.
    "(g+1) t1"; matrix literals are self-delimiting.  A mid-word
    coefficient is legal and gets normalized through the product, so
    "t1 g" parses to the same polynomial as the normal form of t1 * g.
    """
    sc = _Scanner(text)
    result = OrePoly.zero(ctx)
    sign = 1
    if sc.peek() == "-":
        sign = -1
        sc.pos += 1
    elif sc.peek() == "+":
        sc.pos += 1
    while True:
        term = _parse_term(ctx, sc)
        result = result + (term if sign == 1 else -term)
        ch = sc.peek()
        if ch == "":
            return result
        if ch == "+":
            sign = 1
        elif ch == "-":
            sign = -1
        else:
            raise ParseError(f"expected '+' or '-', found {ch!r}", position=sc.pos)
        sc.pos += 1


def _parse_term(ctx, sc):
    factors = []
    while True:
        ch = sc.peek()
        if ch == "*":
            sc.pos += 1
            ch = sc.peek()
            if ch in ("", "+", "-", "*"):
                raise ParseError("dangling '*'", position=sc.pos)
            continue
        if ch in ("", "+", "-"):
            break
        factors.append(_parse_factor(ctx, sc))
    if not factors:
        raise ParseError("empty term", position=sc.pos)
    out = factors[0]
    for f in factors[1:]:
        out = poly_mul(out, f)
    return out


def _parse_factor(ctx, sc):
    ring = ctx.ring
    ch = sc.peek()
    start = sc.pos
    if ch == "t" and sc.pos + 1 < len(sc.text) and sc.text[sc.pos + 1].isdigit():
        sc.pos += 1
        idx = sc.take_int()
        if not 1 <= idx <= ctx.n:
            raise ParseError(f"unknown variable t{idx}", position=start)
        power = 1
        if sc.peek() == "^":
            sc.pos += 1
            if not sc.peek().isdigit():
                raise ParseError("bad exponent", position=sc.pos)
            power = sc.take_int()
        return OrePoly.variable(ctx, idx, power)
    if ch == "(":
        inner = sc.take_balanced("(", ")")
        return OrePoly.constant(ctx, ring.parse(inner))
    if ch == "[":
        inner = sc.take_balanced("[", "]")
        return OrePoly.constant(ctx, ring.parse("[" + inner + "]"))
    if ch.isdigit() or ch == ring.symbol:
        # a simple literal: digits and/or a generator power, no +/- inside
        s = sc.pos
        while sc.pos < len(sc.text):
            c = sc.text[sc.pos]
            if c.isdigit() or c == ring.symbol:
                sc.pos += 1
            elif c == "^" and sc.pos + 1 < len(sc.text) and sc.text[sc.pos + 1].isdigit():
                sc.pos += 1
            else:
                break
        lit = sc.text[s:sc.pos]
        # "t" never reaches here, so literal/variable ambiguity cannot arise
        try:
            return OrePoly.constant(ctx, ring.parse(lit))
        except ParseError as exc:
            raise ParseError(f"bad coefficient literal {lit!r}: {exc}",
                             position=s) from None
    raise ParseError(f"unexpected character {ch!r}", position=sc.pos)


# ---------------------------------------------------------------------------
# JSON form
# ---------------------------------------------------------------------------

def poly_to_obj(f):
    return [{"word": list(w), "coeff": str(f.terms[w])}
            for w in sorted(f.terms, key=word_key, reverse=True)]


def poly_from_obj(ctx, data):
    terms = {}
    for item in data:
        w = tuple(item["word"])
        terms[w] = ctx.ring.parse(item["coeff"])
    return OrePoly(ctx, terms)


# ---------------------------------------------------------------------------
# the two-variable block context collapses onto one variable
# ---------------------------------------------------------------------------

def univariate_target(ctx):
    """The one-variable context A[t; alpha, gamma] under a block twist.

    Requires the n=2 shape [[alpha(a), gamma(a)], [0, a]]: both blocks
    1x1, the lower one the identity, and no extra derivation.
    """
    tw = ctx.twist
    if (ctx.n != 2 or tw.kind != "block" or ctx.derivation.kind != "zero"):
        raise ShapeError("collapse needs the 2-variable block twist with zero"
                         " derivation")
    alpha, beta, gamma = tw._data["alpha"], tw._data["beta"], tw._data["gamma"]
    if alpha.size != 1 or beta.size != 1:
        raise ShapeError("collapse needs 1x1 diagonal blocks")
    if not all(beta.matrix(a)[0][0] == a for a in ctx.ring.elements(
            limit=ctx.guards.max_ring_card)):
        raise ShapeError("collapse needs the lower block to act as the identity")
    if alpha.kind == "diagonal":
        new_twist = TwistMap.diagonal(ctx.ring, alpha._data["endos"])
    else:
        entries = {a: ((alpha.matrix(a)[0][0],),)
                   for a in ctx.ring.elements(limit=ctx.guards.max_ring_card)}
        new_twist = TwistMap.table(ctx.ring, entries, 1)
    table = {a: gamma.matrix(a)[0][0]
             for a in ctx.ring.elements(limit=ctx.guards.max_ring_card)}
    new_delta = Derivation.coordinate(ctx.ring, [CoordinateMap("table", table)])
    target = OreContext(ctx.ring, 1, new_twist, new_delta, ctx.guards)
    report = validate_twist(target)
    if not report.passed:
        bad = report.first_failure()
        raise ShapeError(f"collapsed context failed {bad.name} at {bad.witness}")
    return target


def specialize_univariate(f, target=None):
    """The ring homomorphism t1 |-> t, t2 |-> 1, a |-> a into A[t; alpha, gamma]."""
    ctx = f.ctx
    if target is None:
        target = univariate_target(ctx)
    t = OrePoly.variable(target, 1)
    one = OrePoly.one(target)
    out = OrePoly.zero(target)
    for w, c in f.terms.items():
        img = OrePoly.constant(target, c)
        for letter in w:
            img = poly_mul(img, t if letter == 1 else one)
        out = out + img
    return out
