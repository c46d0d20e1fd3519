"""Finite coefficient rings with exact, canonical-form arithmetic.

Four carrier kinds are available:

* ``ZMod(m)``       -- integers mod m (commutative, zero divisors for composite m)
* ``GF(p, k)``      -- the field with p^k elements, explicit irreducible modulus
* ``TruncPoly(p,m)``-- (Z/p)[x] / (x^m), commutative with nilpotents and a
                       nontrivial derivation when p divides m
* ``MatrixRing``    -- k x k matrices over any of the above (noncommutative)

Every element is stored in a canonical form (reduced residues, reduced
coefficient vectors) so equality and hashing are structural; the set-valued
searches elsewhere (centralizers, root sets, conjugacy classes) rely on
this.  All operations are pure and elements are immutable.
"""

import itertools

from .errors import GuardExceeded, ParseError, RingMismatch, ShapeError

DEFAULT_ENUM_GUARD = 65536


class RingElement:
    """An element of a finite ring, always in canonical form."""

    __slots__ = ("ring", "value")

    def __init__(self, ring, value):
        self.ring = ring
        self.value = value

    def _coerce(self, other):
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise RingMismatch(
                    f"cannot combine elements of {self.ring} and {other.ring}")
            return other.value
        if isinstance(other, int):
            return self.ring.from_int(other).value
        return None

    def __add__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return RingElement(self.ring, self.ring._add(self.value, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return RingElement(self.ring, self.ring._add(self.value, self.ring._neg(v)))

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return RingElement(self.ring, self.ring._add(v, self.ring._neg(self.value)))

    def __mul__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return RingElement(self.ring, self.ring._mul(self.value, v))

    def __rmul__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return RingElement(self.ring, self.ring._mul(v, self.value))

    def __neg__(self):
        return RingElement(self.ring, self.ring._neg(self.value))

    def __eq__(self, other):
        return (isinstance(other, RingElement)
                and self.ring == other.ring and self.value == other.value)

    def __hash__(self):
        return hash((self.ring, self.value))

    def __str__(self):
        return self.ring.format_payload(self.value)

    def __repr__(self):
        return f"{self.ring}:{self}"

    def is_zero(self):
        return self.value == self.ring._zero_payload()

    def is_one(self):
        return self.value == self.ring._one_payload()

    def sort_key(self):
        """Deterministic total order key; comparable within one ring only."""
        return self.ring.sort_key_payload(self.value)

    def try_inverse(self):
        """Two-sided inverse, or None if the element is not a unit."""
        w = self.ring.try_inverse_payload(self.value)
        return None if w is None else RingElement(self.ring, w)

    def is_zero_divisor(self):
        """True iff some nonzero b gives ab = 0 or ba = 0.

        Zero itself counts as a zero divisor whenever the ring has more
        than one element, so "non-zero-divisor" filters exclude it.
        """
        ring = self.ring
        if self.is_zero():
            return ring.card > 1
        z = ring._zero_payload()
        for b in ring._iter_payloads():
            if b == z:
                continue
            if ring._mul(self.value, b) == z or ring._mul(b, self.value) == z:
                return True
        return False


class Ring:
    """Base descriptor.  Subclasses provide payload-level arithmetic."""

    kind = None
    symbol = None          # generator symbol used by text literals, if any
    is_commutative = True
    card = 0

    # -- payload protocol ---------------------------------------------------

    def _zero_payload(self):
        raise NotImplementedError

    def _one_payload(self):
        raise NotImplementedError

    def _add(self, x, y):
        raise NotImplementedError

    def _neg(self, x):
        raise NotImplementedError

    def _mul(self, x, y):
        raise NotImplementedError

    def _iter_payloads(self):
        raise NotImplementedError

    # -- public element API -------------------------------------------------

    def element(self, payload):
        """Wrap an already-canonical payload."""
        return RingElement(self, payload)

    def zero(self):
        return RingElement(self, self._zero_payload())

    def one(self):
        return RingElement(self, self._one_payload())

    def from_int(self, n):
        """The image of the integer n (repeated sums of 1)."""
        raise NotImplementedError

    def elements(self, limit=DEFAULT_ENUM_GUARD):
        """Every element exactly once, in canonical coordinate order."""
        if limit is not None and self.card > limit:
            raise GuardExceeded(
                f"enumeration of {self} needs {self.card} elements, guard is {limit}",
                size=self.card, limit=limit)
        for payload in self._iter_payloads():
            yield RingElement(self, payload)

    def random_element(self, rng):
        raise NotImplementedError

    def try_inverse_payload(self, x):
        # exhaustive fallback; subclasses override with direct methods
        one = self._one_payload()
        for b in self._iter_payloads():
            if self._mul(x, b) == one and self._mul(b, x) == one:
                return b
        return None

    def sort_key_payload(self, x):
        raise NotImplementedError

    def format_payload(self, x):
        raise NotImplementedError

    def parse(self, text):
        """Inverse of str(): parse a canonical (or equivalent) literal."""
        return RingElement(self, self._parse_payload(text.strip()))

    def _parse_payload(self, text):
        raise NotImplementedError

    def __ne__(self, other):
        return not self.__eq__(other)


# ---------------------------------------------------------------------------
# Z/m
# ---------------------------------------------------------------------------

class ZMod(Ring):
    """Integers modulo m, canonical residues in [0, m)."""

    kind = "zmod"

    def __init__(self, modulus):
        if modulus < 2:
            raise ValueError("modulus must be at least 2")
        self.modulus = modulus
        self.card = modulus

    def __eq__(self, other):
        return isinstance(other, ZMod) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("zmod", self.modulus))

    def __str__(self):
        return f"Z/{self.modulus}"

    def _zero_payload(self):
        return 0

    def _one_payload(self):
        return 1

    def _add(self, x, y):
        return (x + y) % self.modulus

    def _neg(self, x):
        return (-x) % self.modulus

    def _mul(self, x, y):
        return (x * y) % self.modulus

    def _iter_payloads(self):
        return iter(range(self.modulus))

    def from_int(self, n):
        return RingElement(self, n % self.modulus)

    def random_element(self, rng):
        return RingElement(self, rng.randrange(self.modulus))

    def try_inverse_payload(self, x):
        try:
            return pow(x, -1, self.modulus)
        except ValueError:
            return None

    def sort_key_payload(self, x):
        return x

    def format_payload(self, x):
        return str(x)

    def _parse_payload(self, text):
        try:
            return int(text, 10) % self.modulus
        except ValueError:
            raise ParseError(f"bad integer literal {text!r} for {self}") from None


# ---------------------------------------------------------------------------
# polynomial coefficient vectors over Z/p (shared by GF and TruncPoly)
# ---------------------------------------------------------------------------

def _poly_format(coeffs, symbol):
    # descending powers, canonical spelling such as "g^2+g+1"
    parts = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if c == 0:
            continue
        if e == 0:
            parts.append(str(c))
        else:
            head = "" if c == 1 else str(c)
            parts.append(f"{head}{symbol}" + (f"^{e}" if e > 1 else ""))
    return "+".join(parts) if parts else "0"


def _poly_parse(text, symbol, p, size, ringname):
    coeffs = [0] * size
    s = text.replace(" ", "")
    if not s:
        raise ParseError(f"empty literal for {ringname}")
    pos, sign = 0, 1
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        pos = 1
    while pos <= len(s):
        nxt = pos
        while nxt < len(s) and s[nxt] not in "+-":
            nxt += 1
        term = s[pos:nxt]
        if not term:
            raise ParseError(f"bad literal {text!r} for {ringname}", position=pos)
        c, e, i = 1, 0, 0
        if term[0].isdigit():
            j = i
            while j < len(term) and term[j].isdigit():
                j += 1
            c, i = int(term[i:j]), j
        if i < len(term):
            if term[i] != symbol:
                raise ParseError(
                    f"unexpected {term[i]!r} in literal {text!r} for {ringname}",
                    position=pos + i)
            i += 1
            e = 1
            if i < len(term):
                if term[i] != "^" or not term[i + 1:].isdigit():
                    raise ParseError(
                        f"bad exponent in literal {text!r} for {ringname}",
                        position=pos + i)
                e = int(term[i + 1:])
        if e >= size:
            raise ParseError(
                f"degree {e} too large in literal {text!r} for {ringname}",
                position=pos)
        coeffs[e] = (coeffs[e] + sign * c) % p
        if nxt == len(s):
            break
        sign = -1 if s[nxt] == "-" else 1
        pos = nxt + 1
    return tuple(coeffs)


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _polydiv_zp(num, den, p):
    """Division with remainder in (Z/p)[x]; inputs are coefficient lists."""
    num = list(num)
    dd = len(den) - 1
    while len(den) > 1 and den[-1] == 0:
        den = den[:-1]
        dd -= 1
    inv = pow(den[-1], -1, p)
    quo = [0] * max(len(num) - dd, 1)
    for i in range(len(num) - 1, dd - 1, -1):
        c = (num[i] * inv) % p
        if c:
            quo[i - dd] = c
            for j, dc in enumerate(den):
                num[i - dd + j] = (num[i - dd + j] - c * dc) % p
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return quo, num


class GF(Ring):
    """The Galois field GF(p^k), elements as length-k vectors over Z/p.

    The modulus must be a monic irreducible polynomial of degree k over
    Z/p, given low-degree-first; irreducibility is established at
    construction by a brute-force search for a monic factor.  When no
    modulus is supplied the lexicographically least irreducible one is
    chosen, which makes descriptors reproducible across runs.
    """

    kind = "gf"
    symbol = "g"

    def __init__(self, p, k, modulus=None):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be at least 1")
        self.p = p
        self.k = k
        self.card = p ** k
        if modulus is None:
            modulus = self._default_modulus(p, k)
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {k}")
        factor = self._find_factor(modulus, p)
        if factor is not None:
            raise ValueError(
                f"modulus {_poly_format(modulus, 'g')} is reducible over Z/{p}: "
                f"factor {_poly_format(factor, 'g')}")
        self.modulus = modulus

    @staticmethod
    def _default_modulus(p, k):
        if k == 1:
            return (0, 1)
        for idx in range(p ** k):
            coeffs = []
            v = idx
            for _ in range(k):
                coeffs.append(v % p)
                v //= p
            cand = tuple(coeffs) + (1,)
            if GF._find_factor(cand, p) is None:
                return cand
        raise ValueError(f"no irreducible polynomial of degree {k} over Z/{p}")

    @staticmethod
    def _find_factor(modulus, p):
        k = len(modulus) - 1
        if k == 1:
            return None
        for d in range(1, k // 2 + 1):
            for idx in range(p ** d):
                coeffs = []
                v = idx
                for _ in range(d):
                    coeffs.append(v % p)
                    v //= p
                cand = tuple(coeffs) + (1,)
                _, rem = _polydiv_zp(modulus, cand, p)
                if rem == [0]:
                    return cand
        return None

    def __eq__(self, other):
        return (isinstance(other, GF) and other.p == self.p
                and other.k == self.k and other.modulus == self.modulus)

    def __hash__(self):
        return hash(("gf", self.p, self.k, self.modulus))

    def __str__(self):
        return f"GF({self.p}^{self.k})"

    def _zero_payload(self):
        return (0,) * self.k

    def _one_payload(self):
        return (1,) + (0,) * (self.k - 1)

    def _add(self, x, y):
        p = self.p
        return tuple((a + b) % p for a, b in zip(x, y))

    def _neg(self, x):
        p = self.p
        return tuple((-a) % p for a in x)

    def _mul(self, x, y):
        p, k = self.p, self.k
        prod = [0] * (2 * k - 1)
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    prod[i + j] = (prod[i + j] + a * b) % p
        # reduce by the monic modulus
        for i in range(2 * k - 2, k - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j in range(k):
                    prod[i - k + j] = (prod[i - k + j] - c * self.modulus[j]) % p
        return tuple(prod[:k])

    def _iter_payloads(self):
        p, k = self.p, self.k
        for idx in range(self.card):
            coeffs, v = [], idx
            for _ in range(k):
                coeffs.append(v % p)
                v //= p
            yield tuple(coeffs)

    def from_int(self, n):
        return RingElement(self, (n % self.p,) + (0,) * (self.k - 1))

    def random_element(self, rng):
        return RingElement(self, tuple(rng.randrange(self.p) for _ in range(self.k)))

    def power(self, x, e):
        """x^e by square-and-multiply on payloads, e >= 0."""
        result = self._one_payload()
        base = x
        while e:
            if e & 1:
                result = self._mul(result, base)
            base = self._mul(base, base)
            e >>= 1
        return result

    def try_inverse_payload(self, x):
        if x == self._zero_payload():
            return None
        return self.power(x, self.card - 2)

    def sort_key_payload(self, x):
        total = 0
        for c in reversed(x):
            total = total * self.p + c
        return total

    def format_payload(self, x):
        return _poly_format(x, self.symbol)

    def _parse_payload(self, text):
        return _poly_parse(text, self.symbol, self.p, self.k, str(self))


class TruncPoly(Ring):
    """(Z/p)[x] / (x^m): truncated polynomials, x nilpotent of order m."""

    kind = "truncpoly"
    symbol = "x"

    def __init__(self, p, order):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if order < 2:
            raise ValueError("nilpotency order must be at least 2")
        self.p = p
        self.order = order
        self.card = p ** order

    def __eq__(self, other):
        return (isinstance(other, TruncPoly)
                and other.p == self.p and other.order == self.order)

    def __hash__(self):
        return hash(("truncpoly", self.p, self.order))

    def __str__(self):
        return f"Z/{self.p}[x]/(x^{self.order})"

    def _zero_payload(self):
        return (0,) * self.order

    def _one_payload(self):
        return (1,) + (0,) * (self.order - 1)

    def _add(self, x, y):
        p = self.p
        return tuple((a + b) % p for a, b in zip(x, y))

    def _neg(self, x):
        p = self.p
        return tuple((-a) % p for a in x)

    def _mul(self, x, y):
        p, m = self.p, self.order
        prod = [0] * m
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if i + j >= m:
                        break
                    prod[i + j] = (prod[i + j] + a * b) % p
        return tuple(prod)

    def _iter_payloads(self):
        p, m = self.p, self.order
        for idx in range(self.card):
            coeffs, v = [], idx
            for _ in range(m):
                coeffs.append(v % p)
                v //= p
            yield tuple(coeffs)

    def from_int(self, n):
        return RingElement(self, (n % self.p,) + (0,) * (self.order - 1))

    def random_element(self, rng):
        return RingElement(self, tuple(rng.randrange(self.p) for _ in range(self.order)))

    def try_inverse_payload(self, x):
        # unit iff the constant term is a unit mod p; invert the power series
        try:
            c0inv = pow(x[0], -1, self.p)
        except ValueError:
            return None
        p, m = self.p, self.order
        inv = [c0inv] + [0] * (m - 1)
        for j in range(1, m):
            acc = 0
            for i in range(1, j + 1):
                acc = (acc + x[i] * inv[j - i]) % p
            inv[j] = (-c0inv * acc) % p
        return tuple(inv)

    def derivative_payload(self, x):
        if self.order % self.p != 0:
            raise ShapeError(
                f"d/dx does not descend to {self}: {self.order} not divisible by {self.p}")
        p, m = self.p, self.order
        return tuple(((i + 1) * x[i + 1]) % p for i in range(m - 1)) + (0,)

    def sort_key_payload(self, x):
        total = 0
        for c in reversed(x):
            total = total * self.p + c
        return total

    def format_payload(self, x):
        return _poly_format(x, self.symbol)

    def _parse_payload(self, text):
        return _poly_parse(text, self.symbol, self.p, self.order, str(self))


# ---------------------------------------------------------------------------
# matrix rings
# ---------------------------------------------------------------------------

def _split_commas(text):
    """Split on commas at bracket depth zero."""
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return parts


class MatrixRing(Ring):
    """k x k matrices over a base ring; the noncommutative carrier kind."""

    kind = "matrix"

    def __init__(self, base, size):
        if size < 1:
            raise ValueError("matrix size must be at least 1")
        self.base = base
        self.size = size
        self.card = base.card ** (size * size)
        self.is_commutative = size == 1 and base.is_commutative

    def __eq__(self, other):
        return (isinstance(other, MatrixRing)
                and other.size == self.size and other.base == self.base)

    def __hash__(self):
        return hash(("matrix", self.size, self.base))

    def __str__(self):
        return f"M{self.size}({self.base})"

    def _zero_payload(self):
        z = self.base._zero_payload()
        return tuple((z,) * self.size for _ in range(self.size))

    def _one_payload(self):
        z = self.base._zero_payload()
        o = self.base._one_payload()
        return tuple(tuple(o if i == j else z for j in range(self.size))
                     for i in range(self.size))

    def _add(self, x, y):
        b = self.base
        return tuple(tuple(b._add(a, c) for a, c in zip(rx, ry))
                     for rx, ry in zip(x, y))

    def _neg(self, x):
        b = self.base
        return tuple(tuple(b._neg(a) for a in row) for row in x)

    def _mul(self, x, y):
        b, k = self.base, self.size
        out = []
        for i in range(k):
            row = []
            for j in range(k):
                acc = b._zero_payload()
                for s in range(k):
                    acc = b._add(acc, b._mul(x[i][s], y[s][j]))
                row.append(acc)
            out.append(tuple(row))
        return tuple(out)

    def _iter_payloads(self):
        cells = list(self.base._iter_payloads())
        k = self.size
        for combo in itertools.product(cells, repeat=k * k):
            yield tuple(combo[i * k:(i + 1) * k] for i in range(k))

    def from_int(self, n):
        c = self.base.from_int(n).value
        z = self.base._zero_payload()
        return RingElement(self, tuple(
            tuple(c if i == j else z for j in range(self.size))
            for i in range(self.size)))

    def random_element(self, rng):
        return RingElement(self, tuple(
            tuple(self.base.random_element(rng).value for _ in range(self.size))
            for _ in range(self.size)))

    def try_inverse_payload(self, x):
        from . import matrices
        grid = tuple(tuple(RingElement(self.base, c) for c in row) for row in x)
        inv = matrices.invert(self.base, grid)
        if inv is None:
            return None
        return tuple(tuple(e.value for e in row) for row in inv)

    def sort_key_payload(self, x):
        return tuple(self.base.sort_key_payload(c) for row in x for c in row)

    def format_payload(self, x):
        rows = ("[" + ",".join(self.base.format_payload(c) for c in row) + "]"
                for row in x)
        return "[" + ",".join(rows) + "]"

    def _parse_payload(self, text):
        s = text.replace(" ", "")
        if not (s.startswith("[") and s.endswith("]")):
            raise ParseError(f"matrix literal must be bracketed, got {text!r}")
        rows = _split_commas(s[1:-1])
        if len(rows) != self.size:
            raise ParseError(f"expected {self.size} rows in {text!r}")
        out = []
        for row in rows:
            if not (row.startswith("[") and row.endswith("]")):
                raise ParseError(f"bad row {row!r} in matrix literal")
            cells = _split_commas(row[1:-1])
            if len(cells) != self.size:
                raise ParseError(f"expected {self.size} entries per row in {text!r}")
            out.append(tuple(self.base._parse_payload(c) for c in cells))
        return tuple(out)


# ---------------------------------------------------------------------------
# ring endomorphisms used to assemble twists
# ---------------------------------------------------------------------------

class Endo:
    """A unital ring endomorphism of a finite carrier.

    Construction verifies the endomorphism laws exhaustively (additivity,
    multiplicativity, preservation of 1) whenever the pair count fits the
    guard; there is no lazy trust path.
    """

    def __init__(self, ring, kind, param=None, check_guard=1_000_000):
        self.ring = ring
        self.kind = kind
        self.param = param
        if kind == "identity":
            pass
        elif kind == "frobenius":
            if not isinstance(ring, GF):
                raise ShapeError("frobenius powers exist on GF carriers only")
            if param < 0:
                raise ValueError("frobenius power must be nonnegative")
        elif kind == "substitution":
            if not isinstance(ring, TruncPoly):
                raise ShapeError("substitution endomorphisms exist on truncated"
                                 " polynomial carriers only")
            u = param
            acc = ring._one_payload()
            for _ in range(ring.order):
                acc = ring._mul(acc, u.value)
            if acc != ring._zero_payload():
                raise ValueError(f"substitution image {u} is not nilpotent"
                                 f" of order {ring.order}")
        else:
            raise ValueError(f"unknown endomorphism kind {kind!r}")
        self._verify(check_guard)

    @classmethod
    def identity(cls, ring):
        return cls(ring, "identity")

    @classmethod
    def frobenius(cls, ring, e=1):
        return cls(ring, "frobenius", e)

    @classmethod
    def substitution(cls, ring, u):
        return cls(ring, "substitution", u)

    def __call__(self, a):
        ring = self.ring
        if a.ring != ring:
            raise RingMismatch(f"endomorphism over {ring} applied to {a.ring} element")
        if self.kind == "identity":
            return a
        if self.kind == "frobenius":
            e = self.param % ring.k
            v = a.value
            for _ in range(e):
                v = ring.power(v, ring.p)
            return RingElement(ring, v)
        # substitution: evaluate the representative at u by Horner's rule
        u, acc = self.param, ring.zero()
        for c in reversed(a.value):
            acc = acc * u + ring.from_int(c)
        return acc

    def _verify(self, guard):
        ring = self.ring
        if self.kind == "identity":
            return
        if ring.card * ring.card > guard:
            raise GuardExceeded(
                f"endomorphism verification over {ring} needs {ring.card ** 2}"
                f" pairs, guard is {guard}",
                size=ring.card ** 2, limit=guard)
        if not self(ring.one()).is_one():
            raise ValueError(f"map does not fix 1 on {ring}")
        elems = list(ring.elements(limit=None))
        images = {a: self(a) for a in elems}
        for a in elems:
            for b in elems:
                if images[a] + images[b] != self(a + b):
                    raise ValueError(f"map is not additive at ({a}, {b})")
                if images[a] * images[b] != self(a * b):
                    raise ValueError(f"map is not multiplicative at ({a}, {b})")

    def describe(self):
        if self.kind == "identity":
            return "identity"
        if self.kind == "frobenius":
            return f"frobenius:{self.param}"
        return f"substitution:{self.param}"

    def __repr__(self):
        return f"Endo({self.describe()} on {self.ring})"


def formal_derivative(a):
    """Coefficientwise d/dx on a truncated polynomial carrier.

    Defined only when the characteristic divides the nilpotency order,
    otherwise the map would not descend to the quotient.
    """
    if not isinstance(a.ring, TruncPoly):
        raise ShapeError(f"d/dx is defined on truncated polynomial carriers,"
                         f" not {a.ring}")
    return RingElement(a.ring, a.ring.derivative_payload(a.value))


def ring_from_obj(obj, path="$"):
    """Build a ring descriptor from a plain dict (the config schema form)."""
    from .errors import SchemaError
    if not isinstance(obj, dict):
        raise SchemaError("ring block must be an object", path)
    kind = obj.get("kind")
    known = {
        "zmod": {"kind", "modulus"},
        "gf": {"kind", "p", "k", "modulus"},
        "truncpoly": {"kind", "p", "order"},
        "matrix": {"kind", "base", "size"},
    }
    if kind not in known:
        raise SchemaError(f"unknown ring kind {kind!r}", f"{path}.kind")
    extra = set(obj) - known[kind]
    if extra:
        raise SchemaError(f"unknown keys {sorted(extra)}", path)
    try:
        if kind == "zmod":
            return ZMod(obj["modulus"])
        if kind == "gf":
            return GF(obj["p"], obj["k"], obj.get("modulus"))
        if kind == "truncpoly":
            return TruncPoly(obj["p"], obj["order"])
        return MatrixRing(ring_from_obj(obj["base"], f"{path}.base"), obj["size"])
    except KeyError as exc:
        raise SchemaError(f"missing key {exc.args[0]!r}", path) from None
    except (ValueError, TypeError) as exc:
        raise SchemaError(str(exc), path) from None


def ring_to_obj(ring):
    if isinstance(ring, ZMod):
        return {"kind": "zmod", "modulus": ring.modulus}
    if isinstance(ring, GF):
        return {"kind": "gf", "p": ring.p, "k": ring.k, "modulus": list(ring.modulus)}
    if isinstance(ring, TruncPoly):
        return {"kind": "truncpoly", "p": ring.p, "order": ring.order}
    return {"kind": "matrix", "base": ring_to_obj(ring.base), "size": ring.size}
