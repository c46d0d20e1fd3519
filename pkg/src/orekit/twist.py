"""The twisting data of a multivariate Ore extension.

An extension A[t_1..t_n; sigma, delta] is driven by a ring homomorphism
sigma: A -> M_n(A) and a column delta: A -> A^n obeying the twisted
Leibniz rule  delta(ab) = sigma(a) delta(b) + delta(a) b.  This module
builds the standard constructors for both maps, packages them into an
OreContext, and provides the two validators: the direct law check and the
equivalent embedding of A into M_{n+1}(A) via

    a  |->  [[sigma(a), delta(a)], [0, a]].

A context is only marked ``validated`` after an exhaustive pass; sampled
validation reports failures but never certifies.
"""

import random
from dataclasses import dataclass, field

from . import matrices
from .errors import GuardExceeded, RingMismatch, SchemaError, ShapeError
from .guards import DEFAULT_GUARDS
from .rings import Endo, formal_derivative


class TwistMap:
    """sigma: A -> M_n(A), assembled from one of four constructors."""

    def __init__(self, ring, size, kind, **data):
        self.ring = ring
        self.size = size
        self.kind = kind
        self._data = data

    @classmethod
    def diagonal(cls, ring, endos):
        """diag(e_1(a), ..., e_n(a))."""
        endos = tuple(endos)
        for e in endos:
            if e.ring != ring:
                raise RingMismatch("endomorphism ring does not match carrier")
        return cls(ring, len(endos), "diagonal", endos=endos)

    @classmethod
    def conjugated(cls, ring, u, endos):
        """U diag(e_1(a), ..., e_n(a)) U^{-1}; U must be invertible."""
        endos = tuple(endos)
        n = len(endos)
        if len(u) != n or any(len(row) != n for row in u):
            raise ShapeError(f"conjugating matrix must be {n}x{n}")
        u_inv = matrices.invert(ring, u)
        if u_inv is None:
            raise ValueError("conjugating matrix is not invertible")
        return cls(ring, n, "conjugated", u=u, u_inv=u_inv, endos=endos)

    @classmethod
    def block(cls, ring, alpha, beta, gamma):
        """[[alpha(a), gamma(a)], [0, beta(a)]] with gamma an (alpha, beta)-derivation."""
        if alpha.ring != ring or beta.ring != ring:
            raise RingMismatch("block pieces live over different rings")
        if gamma.shape != (alpha.size, beta.size):
            raise ShapeError(
                f"bridge map must be {alpha.size}x{beta.size}, got {gamma.shape}")
        return cls(ring, alpha.size + beta.size, "block",
                   alpha=alpha, beta=beta, gamma=gamma)

    @classmethod
    def table(cls, ring, entries, size):
        """Explicit map, one n x n matrix per carrier element."""
        return cls(ring, size, "table", entries=dict(entries))

    def matrix(self, a):
        ring, n = self.ring, self.size
        if self.kind == "diagonal":
            z = ring.zero()
            return tuple(tuple(self._data["endos"][i](a) if i == j else z
                               for j in range(n)) for i in range(n))
        if self.kind == "conjugated":
            z = ring.zero()
            endos = self._data["endos"]
            diag = tuple(tuple(endos[i](a) if i == j else z for j in range(n))
                         for i in range(n))
            return matrices.mul(matrices.mul(self._data["u"], diag),
                                self._data["u_inv"])
        if self.kind == "block":
            alpha, beta = self._data["alpha"], self._data["beta"]
            top = alpha.matrix(a)
            bottom = beta.matrix(a)
            bridge = self._data["gamma"].matrix(a)
            zeros = matrices.zero(ring, beta.size, alpha.size)
            rows = [trow + brow for trow, brow in zip(top, bridge)]
            rows += [zrow + brow for zrow, brow in zip(zeros, bottom)]
            return tuple(rows)
        try:
            return self._data["entries"][a]
        except KeyError:
            raise ValueError(f"twist table has no entry for {a}") from None

    def describe(self):
        if self.kind == "diagonal":
            names = ",".join(e.describe() for e in self._data["endos"])
            return f"diagonal({names})"
        if self.kind == "conjugated":
            names = ",".join(e.describe() for e in self._data["endos"])
            return f"conjugated({names})"
        if self.kind == "block":
            return (f"block({self._data['alpha'].describe()};"
                    f"{self._data['beta'].describe()};"
                    f"{self._data['gamma'].kind})")
        return f"table[{self.size}]"


class CrossDerivation:
    """gamma: A -> M_{r x c}(A) with gamma(ab) = alpha(a)gamma(b) + gamma(a)beta(b)."""

    def __init__(self, ring, shape, kind, **data):
        self.ring = ring
        self.shape = shape
        self.kind = kind
        self._data = data

    @classmethod
    def zero(cls, ring, shape):
        return cls(ring, shape, "zero")

    @classmethod
    def inner(cls, ring, alpha, beta, x):
        """gamma(a) = x beta(a) - alpha(a) x for a fixed r x c matrix x."""
        shape = (len(x), len(x[0]))
        if shape != (alpha.size, beta.size):
            raise ShapeError(f"inner matrix must be {alpha.size}x{beta.size}")
        return cls(ring, shape, "inner", alpha=alpha, beta=beta, x=x)

    @classmethod
    def table(cls, ring, entries, shape):
        return cls(ring, shape, "table", entries=dict(entries))

    def matrix(self, a):
        if self.kind == "zero":
            return matrices.zero(self.ring, *self.shape)
        if self.kind == "inner":
            x = self._data["x"]
            return matrices.sub(
                matrices.mul(x, self._data["beta"].matrix(a)),
                matrices.mul(self._data["alpha"].matrix(a), x))
        try:
            return self._data["entries"][a]
        except KeyError:
            raise ValueError(f"bridge table has no entry for {a}") from None


class CoordinateMap:
    """One coordinate of a derivation column: zero, d/dx, or an explicit table."""

    def __init__(self, kind, table=None):
        if kind not in ("zero", "derivative", "table"):
            raise ValueError(f"unknown coordinate map kind {kind!r}")
        self.kind = kind
        self.table = table

    def __call__(self, a):
        if self.kind == "zero":
            return a.ring.zero()
        if self.kind == "derivative":
            return formal_derivative(a)
        try:
            return self.table[a]
        except KeyError:
            raise ValueError(f"derivation table has no entry for {a}") from None


class Derivation:
    """delta: A -> A^n, the column part of the commutation rule."""

    def __init__(self, ring, size, kind, **data):
        self.ring = ring
        self.size = size
        self.kind = kind
        self._data = data

    @classmethod
    def zero(cls, ring, size):
        return cls(ring, size, "zero")

    @classmethod
    def inner(cls, ring, anchor):
        """delta(x) = anchor * x - sigma(x) * anchor for a fixed column anchor."""
        anchor = tuple(anchor)
        for c in anchor:
            if c.ring != ring:
                raise RingMismatch("anchor entries do not match the carrier")
        return cls(ring, len(anchor), "inner", anchor=anchor)

    @classmethod
    def coordinate(cls, ring, maps):
        maps = tuple(maps)
        return cls(ring, len(maps), "coordinate", maps=maps)

    @classmethod
    def transformed(cls, ring, v, base, source_ctx):
        """The column V * delta(x) of an existing context, frozen as a table.

        The base derivation may reference the source context's twist (the
        inner constructor does), so its values are materialized here once;
        the new context then owns an explicit, twist-independent map.
        """
        size = len(v)
        table = {}
        for a in ring.elements(limit=source_ctx.guards.max_ring_card):
            table[a] = matrices.col_mul(v, source_ctx.delta(a))
        return cls(ring, size, "transformed", v=v, table=table, base=base)

    def column(self, ctx, a):
        ring, n = self.ring, self.size
        if self.kind == "zero":
            z = ring.zero()
            return (z,) * n
        if self.kind == "inner":
            anchor = self._data["anchor"]
            direct = tuple(c * a for c in anchor)
            twisted = matrices.col_mul(ctx.sigma(a), anchor)
            return matrices.col_sub(direct, twisted)
        if self.kind == "coordinate":
            return tuple(m(a) for m in self._data["maps"])
        try:
            return self._data["table"][a]
        except KeyError:
            raise ValueError(f"derivation table has no entry for {a}") from None

    def describe(self):
        if self.kind == "coordinate":
            return "coordinate(" + ",".join(m.kind for m in self._data["maps"]) + ")"
        return self.kind


class OreContext:
    """The full data of A[t_1..t_n; sigma, delta], with memoised tables.

    Instances are conceptually immutable: only the ``validated`` flag and
    the internal value caches change after construction, so sharing a
    validated context across threads is safe.
    """

    def __init__(self, ring, n, twist, derivation, guards=DEFAULT_GUARDS):
        if twist.size != n:
            raise ShapeError(f"twist has size {twist.size}, context needs {n}")
        if derivation.size != n:
            raise ShapeError(f"derivation has size {derivation.size}, context needs {n}")
        if twist.ring != ring or derivation.ring != ring:
            raise RingMismatch("twist and derivation must live over the context ring")
        self.ring = ring
        self.n = n
        self.twist = twist
        self.derivation = derivation
        self.guards = guards
        self.validated = False
        self._sigma_cache = {}
        self._delta_cache = {}

    def sigma(self, a):
        """The n x n matrix sigma(a)."""
        hit = self._sigma_cache.get(a)
        if hit is None:
            hit = self.twist.matrix(a)
            self._sigma_cache[a] = hit
        return hit

    def sigma_entry(self, a, i, j):
        """sigma(a)[i][j] with 0-based indices."""
        return self.sigma(a)[i][j]

    def delta(self, a):
        """The length-n column delta(a)."""
        hit = self._delta_cache.get(a)
        if hit is None:
            hit = self.derivation.column(self, a)
            self._delta_cache[a] = hit
        return hit

    def describe(self):
        return (f"{self.ring}[t1..t{self.n}; {self.twist.describe()};"
                f" {self.derivation.describe()}]")

    def __repr__(self):
        return f"<OreContext {self.describe()}>"


@dataclass
class CheckResult:
    name: str
    passed: bool
    witness: str | None = None


@dataclass
class ValidationReport:
    mode: str                      # "exhaustive" or "sampled"
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def add(self, name, passed, witness=None):
        self.checks.append(CheckResult(name, passed, witness))

    def first_failure(self):
        for c in self.checks:
            if not c.passed:
                return c
        return None


def _element_pairs(ctx, sample, seed):
    """All pairs when the guard allows, otherwise a seeded random sample."""
    ring, guards = ctx.ring, ctx.guards
    pair_count = ring.card * ring.card
    if ring.card <= guards.max_ring_card and pair_count <= guards.max_search:
        elems = list(ring.elements(limit=None))
        return "exhaustive", [(a, b) for a in elems for b in elems]
    if sample is None:
        raise GuardExceeded(
            f"validation over {ring} needs {pair_count} pairs, guard is"
            f" {guards.max_search}; supply a sample budget for a randomized pass",
            size=pair_count, limit=guards.max_search)
    rng = random.Random(seed)
    return "sampled", [(ring.random_element(rng), ring.random_element(rng))
                       for _ in range(sample)]


def validate_twist(ctx, sample=None, seed=0):
    """Check the homomorphism and twisted Leibniz laws of a context.

    Returns a ValidationReport with one entry per law; on failure the
    witness records the offending pair.  Only a fully exhaustive pass sets
    ctx.validated.
    """
    mode, pairs = _element_pairs(ctx, sample, seed)
    report = ValidationReport(mode=mode)
    ident = matrices.identity(ctx.ring, ctx.n)

    report.add("sigma_unital", ctx.sigma(ctx.ring.one()) == ident,
               None if ctx.sigma(ctx.ring.one()) == ident else "1")

    def scan(name, law):
        for a, b in pairs:
            if not law(a, b):
                report.add(name, False, f"({a}, {b})")
                return
        report.add(name, True)

    scan("sigma_additive",
         lambda a, b: ctx.sigma(a + b) == matrices.add(ctx.sigma(a), ctx.sigma(b)))
    scan("sigma_multiplicative",
         lambda a, b: ctx.sigma(a * b) == matrices.mul(ctx.sigma(a), ctx.sigma(b)))
    scan("delta_additive",
         lambda a, b: ctx.delta(a + b) == matrices.col_add(ctx.delta(a), ctx.delta(b)))

    def leibniz(a, b):
        lhs = ctx.delta(a * b)
        rhs = matrices.col_add(matrices.col_mul(ctx.sigma(a), ctx.delta(b)),
                               matrices.scale_col_right(ctx.delta(a), b))
        return lhs == rhs

    scan("delta_twisted_leibniz", leibniz)

    if mode == "exhaustive" and report.passed:
        ctx.validated = True
    return report


def phi_matrix(ctx, a):
    """The embedding matrix  [[sigma(a), delta(a)], [0, a]]  in M_{n+1}(A)."""
    n, ring = ctx.n, ctx.ring
    sig, col = ctx.sigma(a), ctx.delta(a)
    rows = [sig[i] + (col[i],) for i in range(n)]
    rows.append((ring.zero(),) * n + (a,))
    return tuple(rows)


def phi_embedding_check(ctx, sample=None, seed=0):
    """Cross-check: the block embedding into M_{n+1}(A) is a ring homomorphism.

    Equivalent to validate_twist in content; kept as an independent route
    so a disagreement between the two would expose an implementation bug.
    """
    mode, pairs = _element_pairs(ctx, sample, seed)
    report = ValidationReport(mode=mode)
    ident = matrices.identity(ctx.ring, ctx.n + 1)
    report.add("phi_unital", phi_matrix(ctx, ctx.ring.one()) == ident,
               None if phi_matrix(ctx, ctx.ring.one()) == ident else "1")

    for name, law in (
        ("phi_additive",
         lambda a, b: phi_matrix(ctx, a + b) == matrices.add(phi_matrix(ctx, a),
                                                             phi_matrix(ctx, b))),
        ("phi_multiplicative",
         lambda a, b: phi_matrix(ctx, a * b) == matrices.mul(phi_matrix(ctx, a),
                                                             phi_matrix(ctx, b))),
    ):
        failed = None
        for a, b in pairs:
            if not law(a, b):
                failed = f"({a}, {b})"
                break
        report.add(name, failed is None, failed)
    return report


def change_of_variables(ctx):
    """Rewrite a conjugated context in the variables y = U^{-1} t.

    Returns (diagonal context, U): the new context carries the plain
    diagonal twist and the transported derivation U^{-1} delta, and is
    validated before being handed back.
    """
    if ctx.twist.kind != "conjugated":
        raise ShapeError("change of variables applies to conjugated twists only")
    u = ctx.twist._data["u"]
    u_inv = ctx.twist._data["u_inv"]
    endos = ctx.twist._data["endos"]
    new_twist = TwistMap.diagonal(ctx.ring, endos)
    if ctx.derivation.kind == "zero":
        new_delta = Derivation.zero(ctx.ring, ctx.n)
    else:
        new_delta = Derivation.transformed(ctx.ring, u_inv, ctx.derivation, ctx)
    new_ctx = OreContext(ctx.ring, ctx.n, new_twist, new_delta, ctx.guards)
    report = validate_twist(new_ctx)
    if not report.passed:
        bad = report.first_failure()
        raise ValueError(f"transported derivation failed {bad.name} at {bad.witness}")
    return new_ctx, u


# ---------------------------------------------------------------------------
# config-schema constructors
# ---------------------------------------------------------------------------

def endo_from_text(ring, text, path="$"):
    parts = str(text).split(":")
    name = parts[0]
    try:
        if name == "identity" and len(parts) == 1:
            return Endo.identity(ring)
        if name == "frobenius" and len(parts) == 2:
            return Endo.frobenius(ring, int(parts[1]))
        if name == "substitution" and len(parts) == 2:
            return Endo.substitution(ring, ring.parse(parts[1]))
    except (ValueError, ShapeError) as exc:
        raise SchemaError(str(exc), path) from None
    raise SchemaError(f"unknown endomorphism descriptor {text!r}", path)


def _require_keys(obj, allowed, path):
    extra = set(obj) - allowed
    if extra:
        raise SchemaError(f"unknown keys {sorted(extra)}", path)


def twist_from_obj(ring, obj, path="$.sigma"):
    if not isinstance(obj, dict):
        raise SchemaError("sigma block must be an object", path)
    kind = obj.get("kind")
    if kind == "diagonal":
        _require_keys(obj, {"kind", "endos"}, path)
        endos = [endo_from_text(ring, t, f"{path}.endos[{i}]")
                 for i, t in enumerate(obj.get("endos", []))]
        if not endos:
            raise SchemaError("diagonal sigma needs at least one endomorphism", path)
        return TwistMap.diagonal(ring, endos)
    if kind == "conjugated":
        _require_keys(obj, {"kind", "u", "endos"}, path)
        endos = [endo_from_text(ring, t, f"{path}.endos[{i}]")
                 for i, t in enumerate(obj.get("endos", []))]
        n = len(endos)
        u = matrices.grid_from_obj(ring, obj.get("u"), n, n, f"{path}.u")
        try:
            return TwistMap.conjugated(ring, u, endos)
        except ValueError as exc:
            raise SchemaError(str(exc), f"{path}.u") from None
    if kind == "block":
        _require_keys(obj, {"kind", "alpha", "beta", "gamma"}, path)
        alpha = twist_from_obj(ring, obj.get("alpha"), f"{path}.alpha")
        beta = twist_from_obj(ring, obj.get("beta"), f"{path}.beta")
        gamma = gamma_from_obj(ring, alpha, beta, obj.get("gamma"), f"{path}.gamma")
        return TwistMap.block(ring, alpha, beta, gamma)
    if kind == "table":
        _require_keys(obj, {"kind", "entries"}, path)
        entries = {}
        raw = obj.get("entries")
        if not isinstance(raw, dict) or not raw:
            raise SchemaError("table sigma needs a nonempty entries object",
                              f"{path}.entries")
        size = None
        for lit, grid in raw.items():
            key = ring.parse(lit)
            if size is None:
                size = len(grid)
            entries[key] = matrices.grid_from_obj(ring, grid, size, size,
                                                  f"{path}.entries[{lit!r}]")
        _check_table_domain(ring, entries, f"{path}.entries")
        return TwistMap.table(ring, entries, size)
    raise SchemaError(f"unknown sigma kind {kind!r}", f"{path}.kind")


def gamma_from_obj(ring, alpha, beta, obj, path):
    if not isinstance(obj, dict):
        raise SchemaError("gamma block must be an object", path)
    kind = obj.get("kind")
    shape = (alpha.size, beta.size)
    if kind == "zero":
        _require_keys(obj, {"kind"}, path)
        return CrossDerivation.zero(ring, shape)
    if kind == "inner":
        _require_keys(obj, {"kind", "matrix"}, path)
        x = matrices.grid_from_obj(ring, obj.get("matrix"), shape[0], shape[1],
                                   f"{path}.matrix")
        return CrossDerivation.inner(ring, alpha, beta, x)
    if kind == "table":
        _require_keys(obj, {"kind", "entries"}, path)
        raw = obj.get("entries")
        if not isinstance(raw, dict) or not raw:
            raise SchemaError("table gamma needs a nonempty entries object",
                              f"{path}.entries")
        entries = {ring.parse(lit): matrices.grid_from_obj(
            ring, grid, shape[0], shape[1], f"{path}.entries[{lit!r}]")
            for lit, grid in raw.items()}
        _check_table_domain(ring, entries, f"{path}.entries")
        return CrossDerivation.table(ring, entries, shape)
    raise SchemaError(f"unknown gamma kind {kind!r}", f"{path}.kind")


def derivation_from_obj(ring, n, obj, path="$.delta", twist=None):
    if not isinstance(obj, dict):
        raise SchemaError("delta block must be an object", path)
    kind = obj.get("kind")
    if kind == "transformed":
        _require_keys(obj, {"kind", "v", "base"}, path)
        if twist is None:
            raise SchemaError("transformed delta needs the sigma block", path)
        from . import matrices as _m
        v = _m.grid_from_obj(ring, obj.get("v"), n, n, f"{path}.v")
        base = derivation_from_obj(ring, n, obj.get("base"), f"{path}.base", twist)
        source = OreContext(ring, n, twist, base)
        return Derivation.transformed(ring, v, base, source)
    if kind == "zero":
        _require_keys(obj, {"kind"}, path)
        return Derivation.zero(ring, n)
    if kind == "inner":
        _require_keys(obj, {"kind", "point"}, path)
        coords = obj.get("point")
        if not isinstance(coords, list) or len(coords) != n:
            raise SchemaError(f"inner delta needs a point of length {n}",
                              f"{path}.point")
        return Derivation.inner(ring, tuple(ring.parse(str(c)) for c in coords))
    if kind == "coordinate":
        _require_keys(obj, {"kind", "maps"}, path)
        raw = obj.get("maps")
        if not isinstance(raw, list) or len(raw) != n:
            raise SchemaError(f"coordinate delta needs {n} maps", f"{path}.maps")
        maps = []
        for i, m in enumerate(raw):
            mpath = f"{path}.maps[{i}]"
            if m == "zero":
                maps.append(CoordinateMap("zero"))
            elif m == "derivative":
                maps.append(CoordinateMap("derivative"))
            elif isinstance(m, dict) and m.get("kind") == "table":
                _require_keys(m, {"kind", "entries"}, mpath)
                raw_entries = m.get("entries")
                if not isinstance(raw_entries, dict) or not raw_entries:
                    raise SchemaError("table map needs a nonempty entries object",
                                      f"{mpath}.entries")
                table = {ring.parse(lit): ring.parse(str(val))
                         for lit, val in raw_entries.items()}
                _check_table_domain(ring, table, f"{mpath}.entries")
                maps.append(CoordinateMap("table", table))
            else:
                raise SchemaError(f"unknown coordinate map {m!r}", mpath)
        return Derivation.coordinate(ring, maps)
    raise SchemaError(f"unknown delta kind {kind!r}", f"{path}.kind")


def _check_table_domain(ring, table, path):
    if ring.card > DEFAULT_GUARDS.max_ring_card:
        raise SchemaError(
            f"explicit tables require an enumerable carrier ({ring.card} elements)",
            path)
    missing = [a for a in ring.elements(limit=None) if a not in table]
    if missing:
        raise SchemaError(f"table is missing an entry for {missing[0]}", path)
