"""Small exact matrices over a coefficient ring.

Matrices are immutable tuples of tuples of RingElement; columns are plain
tuples.  Multiplication order is preserved everywhere since coefficient
rings may be noncommutative.
"""

import itertools

from .errors import GuardExceeded, ShapeError


def identity(ring, n):
    z, o = ring.zero(), ring.one()
    return tuple(tuple(o if i == j else z for j in range(n)) for i in range(n))


def zero(ring, rows, cols):
    z = ring.zero()
    return tuple((z,) * cols for _ in range(rows))


def add(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def sub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def neg(a):
    return tuple(tuple(-x for x in row) for row in a)


def mul(a, b):
    if len(a[0]) != len(b):
        raise ShapeError(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0])}")
    bt = tuple(zip(*b))
    out = []
    for row in a:
        out.append(tuple(
            _dot(row, col) for col in bt))
    return tuple(out)


def _dot(row, col):
    acc = None
    for x, y in zip(row, col):
        term = x * y
        acc = term if acc is None else acc + term
    return acc


def entrywise(fn, a):
    return tuple(tuple(fn(x) for x in row) for row in a)


def col_mul(a, v):
    """Matrix times column: (sum_j a[i][j] * v[j])_i, coefficients on the left."""
    if len(a[0]) != len(v):
        raise ShapeError(f"{len(a)}x{len(a[0])} matrix against column of length {len(v)}")
    return tuple(_dot(row, v) for row in a)


def col_add(u, v):
    return tuple(x + y for x, y in zip(u, v))


def col_sub(u, v):
    return tuple(x - y for x, y in zip(u, v))


def scale_col_right(v, c):
    return tuple(x * c for x in v)


def scale_col_left(c, v):
    return tuple(c * x for x in v)


def is_zero(a):
    return all(x.is_zero() for row in a for x in row)


def transpose(a):
    return tuple(zip(*a))


def _det(ring, a):
    n = len(a)
    if n == 1:
        return a[0][0]
    acc = ring.zero()
    for j in range(n):
        minor = tuple(row[:j] + row[j + 1:] for row in a[1:])
        term = a[0][j] * _det(ring, minor)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def _adjugate_inverse(ring, a):
    n = len(a)
    det = _det(ring, a)
    dinv = det.try_inverse()
    if dinv is None:
        return None
    if n == 1:
        return ((dinv,),)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = tuple(r[:i] + r[i + 1:]
                          for k, r in enumerate(a) if k != j)
            c = _det(ring, minor)
            row.append(dinv * c if (i + j) % 2 == 0 else -(dinv * c))
        out.append(tuple(row))
    return tuple(out)


def _gauss_jordan_inverse(ring, a):
    n = len(a)
    work = [list(row) + list(irow) for row, irow in zip(a, identity(ring, n))]
    for col in range(n):
        pivot_row, pivot_inv = None, None
        for r in range(col, n):
            inv = work[r][col].try_inverse()
            if inv is not None:
                pivot_row, pivot_inv = r, inv
                break
        if pivot_row is None:
            # try to build a unit pivot by adding a lower row
            for r in range(col, n):
                for r2 in range(col, n):
                    if r2 == r:
                        continue
                    cand = work[r][col] + work[r2][col]
                    inv = cand.try_inverse()
                    if inv is not None:
                        work[r] = [x + y for x, y in zip(work[r], work[r2])]
                        pivot_row, pivot_inv = r, inv
                        break
                if pivot_row is not None:
                    break
        if pivot_row is None:
            return None
        work[col], work[pivot_row] = work[pivot_row], work[col]
        work[col] = [pivot_inv * x for x in work[col]]
        for r in range(n):
            if r == col or work[r][col].is_zero():
                continue
            factor = work[r][col]
            work[r] = [x - factor * y for x, y in zip(work[r], work[col])]
    return tuple(tuple(row[n:]) for row in work)


def invert(ring, a, search_guard=1_000_000):
    """Two-sided inverse of a square matrix over the ring, or None.

    Commutative coefficients use the adjugate (complete: invertible iff the
    determinant is a unit).  Noncommutative coefficients use Gauss-Jordan
    with unit-pivot search, falling back to a guarded exhaustive scan since
    pivot search alone can miss invertible matrices over general rings.
    """
    n = len(a)
    if any(len(row) != n for row in a):
        raise ShapeError("only square matrices can be inverted")
    if ring.is_commutative:
        inv = _adjugate_inverse(ring, a)
    else:
        inv = _gauss_jordan_inverse(ring, a)
        if inv is None:
            size = ring.card ** (n * n)
            if size > search_guard:
                raise GuardExceeded(
                    f"exhaustive inverse search needs {size} candidates,"
                    f" guard is {search_guard}", size=size, limit=search_guard)
            ident = identity(ring, n)
            cells = list(ring.elements(limit=None))
            for combo in itertools.product(cells, repeat=n * n):
                cand = tuple(combo[i * n:(i + 1) * n] for i in range(n))
                if mul(cand, a) == ident and mul(a, cand) == ident:
                    return cand
            return None
    if inv is not None:
        ident = identity(ring, n)
        if mul(inv, a) != ident or mul(a, inv) != ident:
            return None
    return inv


def format_grid(ring, a):
    rows = ("[" + ",".join(str(x) for x in row) + "]" for row in a)
    return "[" + ",".join(rows) + "]"


def grid_from_obj(ring, obj, rows=None, cols=None, path="$"):
    """Matrix from a nested list of ring literals (config/JSON form)."""
    from .errors import SchemaError
    if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
        raise SchemaError("matrix must be a list of rows", path)
    if rows is not None and len(obj) != rows:
        raise SchemaError(f"expected {rows} rows, got {len(obj)}", path)
    width = cols if cols is not None else (len(obj[0]) if obj else 0)
    out = []
    for i, row in enumerate(obj):
        if len(row) != width:
            raise SchemaError(f"expected {width} entries in row {i}", path)
        out.append(tuple(ring.parse(str(cell)) for cell in row))
    return tuple(out)


def grid_to_obj(a):
    return [[str(x) for x in row] for row in a]
