"""Shared fixture contexts, random generators, and independent oracles.

The GF(4) tables below are written out by hand from g^2 = g + 1 and serve
as an oracle that never touches the package's own arithmetic.
"""

from orekit import (GF, CoordinateMap, CrossDerivation, Derivation, Endo,
                    MatrixRing, OreContext, OrePoly, Point, TruncPoly,
                    TwistMap, ZMod, formal_derivative, validate_twist)

# hand-computed GF(4) = F2[g]/(g^2+g+1) tables, elements named by text
GF4_ELEMS = ["0", "1", "g", "g+1"]
GF4_ADD = {
    ("0", "0"): "0", ("0", "1"): "1", ("0", "g"): "g", ("0", "g+1"): "g+1",
    ("1", "0"): "1", ("1", "1"): "0", ("1", "g"): "g+1", ("1", "g+1"): "g",
    ("g", "0"): "g", ("g", "1"): "g+1", ("g", "g"): "0", ("g", "g+1"): "1",
    ("g+1", "0"): "g+1", ("g+1", "1"): "g", ("g+1", "g"): "1", ("g+1", "g+1"): "0",
}
GF4_MUL = {
    ("0", "0"): "0", ("0", "1"): "0", ("0", "g"): "0", ("0", "g+1"): "0",
    ("1", "0"): "0", ("1", "1"): "1", ("1", "g"): "g", ("1", "g+1"): "g+1",
    ("g", "0"): "0", ("g", "1"): "g", ("g", "g"): "g+1", ("g", "g+1"): "1",
    ("g+1", "0"): "0", ("g+1", "1"): "g+1", ("g+1", "g"): "1", ("g+1", "g+1"): "g",
}
GF4_SQUARE = {"0": "0", "1": "1", "g": "g+1", "g+1": "g"}


def build_gf4_frob():
    """GF(4), n=2, diagonal (Frobenius, identity), no derivation."""
    ring = GF(2, 2)
    tw = TwistMap.diagonal(ring, [Endo.frobenius(ring, 1), Endo.identity(ring)])
    return OreContext(ring, 2, tw, Derivation.zero(ring, 2))


def build_gf4_id():
    """GF(4), n=2, identity diagonal, no derivation."""
    ring = GF(2, 2)
    tw = TwistMap.diagonal(ring, [Endo.identity(ring), Endo.identity(ring)])
    return OreContext(ring, 2, tw, Derivation.zero(ring, 2))


def build_gf4_inner():
    """GF(4), n=2, diagonal (Frobenius, identity), inner derivation at (g, 0)."""
    ring = GF(2, 2)
    tw = TwistMap.diagonal(ring, [Endo.frobenius(ring, 1), Endo.identity(ring)])
    anchor = (ring.parse("g"), ring.zero())
    return OreContext(ring, 2, tw, Derivation.inner(ring, anchor))


def build_gf4_conj():
    """GF(4), n=2, conjugated twist with U = [[1,1],[0,1]] around (Frobenius, id)."""
    ring = GF(2, 2)
    u = tuple(tuple(ring.parse(v) for v in row) for row in (("1", "1"), ("0", "1")))
    tw = TwistMap.conjugated(ring, u, [Endo.frobenius(ring, 1), Endo.identity(ring)])
    return OreContext(ring, 2, tw, Derivation.zero(ring, 2))


def build_gf3():
    """GF(3), n=2; on a prime field the twist is forced scalar and delta zero."""
    ring = GF(3, 1)
    tw = TwistMap.diagonal(ring, [Endo.identity(ring), Endo.identity(ring)])
    return OreContext(ring, 2, tw, Derivation.zero(ring, 2))


def build_zmod6():
    """Z/6, n=2; zero divisors in play, twist forced scalar."""
    ring = ZMod(6)
    tw = TwistMap.diagonal(ring, [Endo.identity(ring), Endo.identity(ring)])
    return OreContext(ring, 2, tw, Derivation.zero(ring, 2))


def build_trunc_deriv():
    """Z/2[x]/(x^2), n=2, identity diagonal, d/dx in both coordinates."""
    ring = TruncPoly(2, 2)
    tw = TwistMap.diagonal(ring, [Endo.identity(ring), Endo.identity(ring)])
    dd = Derivation.coordinate(ring, [CoordinateMap("derivative"),
                                      CoordinateMap("derivative")])
    return OreContext(ring, 2, tw, dd)


def build_trunc_block():
    """The collapsible block twist [[a, a'], [0, a]] over Z/2[x]/(x^2)."""
    ring = TruncPoly(2, 2)
    alpha = TwistMap.diagonal(ring, [Endo.identity(ring)])
    beta = TwistMap.diagonal(ring, [Endo.identity(ring)])
    table = {a: ((formal_derivative(a),),) for a in ring.elements()}
    gamma = CrossDerivation.table(ring, table, (1, 1))
    tw = TwistMap.block(ring, alpha, beta, gamma)
    return OreContext(ring, 2, tw, Derivation.zero(ring, 2))


def build_mat2_inner():
    """M2(Z/2), n=2, identity diagonal, inner derivation at a nilpotent matrix."""
    ring = MatrixRing(ZMod(2), 2)
    tw = TwistMap.diagonal(ring, [Endo.identity(ring), Endo.identity(ring)])
    anchor = (ring.parse("[[0,1],[0,0]]"), ring.zero())
    return OreContext(ring, 2, tw, Derivation.inner(ring, anchor))


def build_mat2_block():
    """M2(Z/2), n=2, block twist with an inner bridge map."""
    ring = MatrixRing(ZMod(2), 2)
    alpha = TwistMap.diagonal(ring, [Endo.identity(ring)])
    beta = TwistMap.diagonal(ring, [Endo.identity(ring)])
    x = ((ring.parse("[[0,1],[0,0]]"),),)
    gamma = CrossDerivation.inner(ring, alpha, beta, x)
    tw = TwistMap.block(ring, alpha, beta, gamma)
    return OreContext(ring, 2, tw, Derivation.zero(ring, 2))


FIXTURE_BUILDERS = {
    "gf4_frob": build_gf4_frob,
    "gf4_id": build_gf4_id,
    "gf4_inner": build_gf4_inner,
    "gf4_conj": build_gf4_conj,
    "gf3": build_gf3,
    "zmod6": build_zmod6,
    "trunc_deriv": build_trunc_deriv,
    "trunc_block": build_trunc_block,
    "mat2_inner": build_mat2_inner,
    "mat2_block": build_mat2_block,
}

FIELD_FIXTURES = ("gf4_frob", "gf4_id", "gf4_inner", "gf4_conj", "gf3")


def build_all(validate=True):
    out = {}
    for name, builder in FIXTURE_BUILDERS.items():
        ctx = builder()
        if validate:
            report = validate_twist(ctx)
            assert report.passed, f"fixture {name} failed {report.first_failure()}"
        out[name] = ctx
    return out


def random_poly(rng, ctx, max_terms=3, max_len=2):
    terms = {}
    for _ in range(rng.randrange(1, max_terms + 1)):
        length = rng.randrange(max_len + 1)
        w = tuple(rng.randrange(1, ctx.n + 1) for _ in range(length))
        terms[w] = ctx.ring.random_element(rng)
    return OrePoly(ctx, terms)


def random_point(rng, ctx):
    return Point(ctx, tuple(ctx.ring.random_element(rng) for _ in range(ctx.n)))
