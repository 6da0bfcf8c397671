"""Exact linear algebra over F_q(T) through specialisation points.

The routines here compute the same objects as the generic ones in
``linalg`` but scale to the larger matrices of the verification grids.
They specialise T at points of an extension field F_{q^s}, do fast
table-driven arithmetic there, and reconstruct exact answers by
interpolation with rigorous degree bounds:

* determinant-style data (kernel pivot solves, characteristic
  polynomial coefficients) are polynomials of bounded T-degree, so
  enough sample points determine them exactly;
* every reconstructed object is verified exactly afterwards (kernel
  vectors are multiplied back into the matrix), so an unlucky sample
  point can never produce a wrong answer, only trigger a retry.

Sample points are drawn with a seeded PRNG so all outputs are
reproducible.
"""

import random

from .errors import InternalError, ShapeError
from .fields import ExtensionField
from .linalg import Mat, UPoly
from .poly import Poly, RatFunc

DEFAULT_SEED = 20101946


def poly_lcm(a, b):
    if a.is_zero() or b.is_zero():
        return Poly.zero(a.field)
    return ((a * b) // a.gcd(b)).monic()


def extension_with_room(field, min_size, cache={}):
    """Smallest tower extension F_{q^s} with q^s >= min_size (cached)."""
    key = (field, min_size)
    if key in cache:
        return cache[key]
    s = 1
    while field.q ** s < min_size:
        s += 1
    # reuse a bigger cached extension of the same field when available
    best = None
    for (f, _), ext in cache.items():
        if f == field and ext.q >= field.q ** s:
            if best is None or ext.q < best.q:
                best = ext
    if best is None:
        best = ExtensionField(field, s) if s > 1 or field.e > 1 else _PrimeAsExt(field)
    cache[key] = best
    return best


class _PrimeAsExt:
    """Adapter presenting a base field itself as its own trivial extension."""

    __slots__ = ("base", "q", "p", "_f")

    def __init__(self, field):
        self.base = field
        self.q = field.q
        self.p = field.p
        self._f = field

    def add(self, a, b):
        return self._f.add(a, b)

    def sub(self, a, b):
        return self._f.sub(a, b)

    def neg(self, a):
        return self._f.neg(a)

    def mul(self, a, b):
        return self._f.mul(a, b)

    def inv(self, a):
        return self._f.inv(a)

    def pow(self, a, n):
        return self._f.pow(a, n)

    def elements(self):
        return self._f.elements()

    def in_base(self, x):
        return True


def sample_points(ext, count, seed=DEFAULT_SEED, avoid=()):
    rng = random.Random(seed)
    pts = [x for x in range(ext.q) if x not in avoid]
    if count > len(pts):
        raise InternalError("extension field too small for the sample")
    rng.shuffle(pts)
    return pts[:count]


def clear_row_denominators(M):
    """Row-scale M to a polynomial matrix (same nullspace)."""
    rows = []
    for i in range(M.rows):
        den = Poly.one(M.field)
        for e in M.row(i):
            den = poly_lcm(den, e.den)
        den_r = RatFunc(den)
        rows.append([(e * den_r).as_poly() for e in M.row(i)])
    return rows


def specialize_poly_rows(rows, ext, t):
    return [[p.evaluate_in(ext, t) for p in row] for row in rows]


# -- arithmetic on plain int matrices over an extension field --


def _rref_ints(rows, ext):
    """In-place RREF; returns pivot column list."""
    if not rows:
        return []
    n, m = len(rows), len(rows[0])
    pivots = []
    r = 0
    for c in range(m):
        pr = next((i for i in range(r, n) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = ext.inv(rows[r][c])
        rows[r] = [ext.mul(inv, x) for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c]:
                f = rows[i][c]
                ri, rr = rows[i], rows[r]
                rows[i] = [ext.sub(x, ext.mul(f, y)) for x, y in zip(ri, rr)]
        pivots.append(c)
        r += 1
        if r == n:
            break
    return pivots


def _solve_square(rows, rhs_cols, ext):
    """Solve A X = B for square A; returns (det, X columns) or None if singular."""
    n = len(rows)
    a = [row[:] for row in rows]
    b = [col[:] for col in rhs_cols]
    det = 1
    for c in range(n):
        pr = next((i for i in range(c, n) if a[i][c]), None)
        if pr is None:
            return None
        if pr != c:
            a[c], a[pr] = a[pr], a[c]
            for col in b:
                col[c], col[pr] = col[pr], col[c]
            det = ext.neg(det)
        det = ext.mul(det, a[c][c])
        inv = ext.inv(a[c][c])
        a[c] = [ext.mul(inv, x) for x in a[c]]
        for col in b:
            col[c] = ext.mul(inv, col[c])
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [ext.sub(x, ext.mul(f, y)) for x, y in zip(a[i], a[c])]
                for col in b:
                    col[i] = ext.sub(col[i], ext.mul(f, col[c]))
    return det, b


def charpoly_ints(rows, ext):
    """Ascending charpoly coefficients of an int matrix (Hessenberg method)."""
    n = len(rows)
    h = [row[:] for row in rows]
    for j in range(n - 2):
        pr = next((i for i in range(j + 1, n) if h[i][j]), None)
        if pr is None:
            continue
        if pr != j + 1:
            h[j + 1], h[pr] = h[pr], h[j + 1]
            for row in h:
                row[j + 1], row[pr] = row[pr], row[j + 1]
        inv = ext.inv(h[j + 1][j])
        for i in range(j + 2, n):
            if h[i][j]:
                f = ext.mul(h[i][j], inv)
                h[i] = [ext.sub(x, ext.mul(f, y)) for x, y in zip(h[i], h[j + 1])]
                for row in h:
                    row[j + 1] = ext.add(row[j + 1], ext.mul(f, row[i]))
    # p_m = (X - h_mm) p_{m-1} - sum_i h_im (prod subdiag) p_{i-1}
    ps = [[1]]
    for m in range(1, n + 1):
        prev = ps[m - 1]
        cur = [0] + prev
        c = ext.neg(h[m - 1][m - 1])
        for i in range(len(prev)):
            cur[i] = ext.add(cur[i], ext.mul(c, prev[i]))
        beta = 1
        for i in range(m - 1, 0, -1):
            beta = ext.mul(beta, h[i][i - 1])
            if beta == 0:
                break
            coef = ext.mul(h[i - 1][m - 1], beta)
            if coef:
                pim = ps[i - 1]
                for t in range(len(pim)):
                    cur[t] = ext.sub(cur[t], ext.mul(coef, pim[t]))
        ps.append(cur)
    return ps[n]


def minpoly_ints(rows, ext):
    """Ascending minimal-polynomial coefficients of an int matrix."""
    n = len(rows)
    current = [1]  # ascending, monic

    def apply(vec):
        return [_dot(row, vec, ext) for row in rows]

    for i in range(n):
        e = [0] * n
        e[i] = 1
        ws = [e]
        for _ in range(len(current) - 1):
            ws.append(apply(ws[-1]))
        if len(current) > 1 and _comb_zero(current, ws, ext):
            continue
        g = _krylov_ints(rows, e, ws, ext)
        current = _lcm_ints(current, g, ext)
        if len(current) - 1 == n:
            break
    return current


def _dot(row, vec, ext):
    acc = 0
    for a, b in zip(row, vec):
        if a and b:
            acc = ext.add(acc, ext.mul(a, b))
    return acc


def _comb_zero(coeffs, ws, ext):
    n = len(ws[0])
    for t in range(n):
        acc = 0
        for c, w in zip(coeffs, ws):
            if c and w[t]:
                acc = ext.add(acc, ext.mul(c, w[t]))
        if acc:
            return False
    return True


def _krylov_ints(rows, e, ws, ext):
    n = len(rows)
    echelon = []
    j = 0
    w = e
    while True:
        if j < len(ws):
            w = ws[j]
        else:
            w = [_dot(row, w, ext) for row in rows]
        vec = w[:]
        expr = [0] * (j + 1)
        expr[j] = 1
        for piv, bvec, bexpr in echelon:
            f = vec[piv]
            if f:
                vec = [ext.sub(x, ext.mul(f, y)) for x, y in zip(vec, bvec)]
                for t in range(len(bexpr)):
                    if bexpr[t]:
                        expr[t] = ext.sub(expr[t], ext.mul(f, bexpr[t]))
        piv = next((t for t in range(n) if vec[t]), None)
        if piv is None:
            return expr[:j] + [1]
        inv = ext.inv(vec[piv])
        vec = [ext.mul(inv, x) for x in vec]
        expr = [ext.mul(inv, x) for x in expr]
        echelon.append((piv, vec, expr))
        j += 1


def _divmod_ints(a, b, ext):
    rem = a[:]
    db = len(b) - 1
    inv = ext.inv(b[-1])
    quot = [0] * max(len(rem) - db, 0)
    while len(rem) - 1 >= db and rem:
        c = ext.mul(rem[-1], inv)
        k = len(rem) - 1 - db
        quot[k] = c
        if c:
            for i, bi in enumerate(b):
                rem[k + i] = ext.sub(rem[k + i], ext.mul(c, bi))
        while rem and rem[-1] == 0:
            rem.pop()
    return quot, rem


def _lcm_ints(a, b, ext):
    g = _gcd_ints(a, b, ext)
    prod = _mul_ints(a, b, ext)
    q, r = _divmod_ints(prod, g, ext)
    if r:
        raise InternalError("lcm remainder nonzero")
    inv = ext.inv(q[-1])
    return [ext.mul(inv, c) for c in q]


def _gcd_ints(a, b, ext):
    a, b = a[:], b[:]
    while b:
        _, a = _divmod_ints(a, b, ext)
        a, b = b, a
    inv = ext.inv(a[-1])
    return [ext.mul(inv, c) for c in a]


def _mul_ints(a, b, ext):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = ext.add(out[i + j], ext.mul(ai, bj))
    return out


def interpolate(ext, xs, ys):
    """Newton interpolation; ascending coefficients over ext (len == len(xs))."""
    n = len(xs)
    dd = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            num = ext.sub(dd[i], dd[i - 1])
            dd[i] = ext.mul(num, ext.inv(ext.sub(xs[i], xs[i - j])))
    coeffs = [dd[n - 1]]
    for i in range(n - 2, -1, -1):
        new = [0] + coeffs
        negx = ext.neg(xs[i])
        for k in range(len(coeffs)):
            new[k] = ext.add(new[k], ext.mul(coeffs[k], negx))
        new[0] = ext.add(new[0], dd[i])
        coeffs = new
    return coeffs


def _coeffs_to_poly(field, ext, coeffs):
    out = []
    for c in coeffs:
        if not ext.in_base(c):
            raise InternalError("interpolated coefficient not in the base field")
        out.append(c)
    return Poly(field, out)


# -- exact high-level operations --


def fast_nullspace(M, seed=DEFAULT_SEED):
    """Exact kernel basis of M, same reduced-echelon shape as Mat.nullspace.

    Row denominators are cleared first (kernel preserving); pivot columns
    and independent rows are read off max-rank specialisations; the pivot
    coordinates are reconstructed by Cramer interpolation and the final
    basis is verified exactly against M.
    """
    last_err = None
    for attempt in range(3):
        try:
            return _fast_nullspace_once(M, seed + 7919 * attempt)
        except InternalError as err:
            last_err = err
    raise last_err


def _fast_nullspace_once(M, seed):
    n, m = M.rows, M.cols
    field = M.field
    rows = clear_row_denominators(M)
    deg = max((p.degree for row in rows for p in row), default=-1)
    if deg < 0:  # zero matrix
        return _unit_kernel(field, m)
    bound = min(n, m) * deg + 2
    ext = extension_with_room(field, bound + 8)
    probes = sample_points(ext, min(4, ext.q), seed)
    best = None
    for t in probes:
        a = specialize_poly_rows(rows, ext, t)
        pivots = _rref_ints(a, ext)
        key = (-len(pivots), pivots)
        if best is None or key < best[0]:
            best = (key, t, pivots)
    _, t0, pivots = best
    r = len(pivots)
    free = [c for c in range(m) if c not in pivots]
    if r == 0:
        return _unit_kernel(field, m)
    # independent rows at t0: pivot columns of the transposed pivot block
    a0 = specialize_poly_rows(rows, ext, t0)
    colblock = [[a0[i][j] for i in range(n)] for j in pivots]
    rows_i = _rref_pivrows(colblock, ext)
    if len(rows_i) != r:
        raise InternalError("row selection rank mismatch")
    sub_rows = [rows[i] for i in rows_i]
    npts = r * deg + 1
    pts = sample_points(ext, npts, seed + 1)
    det_vals = []
    sol_vals = []  # [point][free index] -> list over pivots
    for t in pts:
        a = [[p.evaluate_in(ext, t) for p in row] for row in sub_rows]
        aj = [[a[i][j] for j in pivots] for i in range(r)]
        rhs = [[ext.neg(a[i][f]) for i in range(r)] for f in free]
        solved = _solve_square(aj, rhs, ext)
        if solved is None:
            det_vals.append(0)
            sol_vals.append(None)
            continue
        det, xs = solved
        det_vals.append(det)
        sol_vals.append(xs)
    den = _coeffs_to_poly(field, ext, interpolate(ext, pts, det_vals))
    if den.is_zero():
        raise InternalError("interpolated pivot determinant is zero")
    basis = []
    den_r = RatFunc(den)
    for fi, f in enumerate(free):
        vec = [RatFunc.zero(field)] * m
        vec[f] = RatFunc.one(field)
        for pi, pc in enumerate(pivots):
            vals = []
            for k, t in enumerate(pts):
                if sol_vals[k] is None:
                    vals.append(0)
                else:
                    vals.append(ext.mul(sol_vals[k][fi][pi], det_vals[k]))
            num = _coeffs_to_poly(field, ext, interpolate(ext, pts, vals))
            vec[pc] = RatFunc(num) / den_r
        basis.append(tuple(vec))
    _verify_kernel(M, basis)
    return basis


def _unit_kernel(field, m):
    one = RatFunc.one(field)
    zero = RatFunc.zero(field)
    return [tuple(one if i == j else zero for i in range(m)) for j in range(m)]


def _rref_pivrows(colblock, ext):
    """Pivot columns of the transposed block = independent row indices."""
    block = [row[:] for row in colblock]
    return _rref_ints(block, ext)


def _verify_kernel(M, basis):
    for v in basis:
        if any(M.apply(v)):
            raise InternalError("fast nullspace verification failed")


def nullspace_auto(M, seed=DEFAULT_SEED, cutoff=14):
    """Exact nullspace; generic RREF for small matrices, fast path beyond."""
    if max(M.rows, M.cols) <= cutoff or M.max_num_degree() <= 0:
        return M.nullspace()
    return fast_nullspace(M, seed)


def fast_charpoly(M, seed=DEFAULT_SEED):
    """Exact characteristic polynomial via specialisation + interpolation.

    Entry denominators are cleared with the scaling identity
    char_M(X) = delta^(-n) char_{delta M}(delta X).
    """
    if not M.is_square():
        raise ShapeError("characteristic polynomial of non-square matrix")
    n = M.rows
    field = M.field
    if n == 0:
        return UPoly.one(field)
    delta = Poly.one(field)
    for e in M.entries:
        delta = poly_lcm(delta, e.den)
    scaled = M if delta.is_one() else M.scale(RatFunc(delta))
    rows = [[e.as_poly() for e in scaled.row(i)] for i in range(n)]
    deg = max((p.degree for row in rows for p in row), default=0)
    deg = max(deg, 0)
    npts = n * deg + 1
    ext = extension_with_room(field, npts + 8)
    pts = sample_points(ext, npts, seed)
    per_point = []
    for t in pts:
        a = specialize_poly_rows(rows, ext, t)
        per_point.append(charpoly_ints(a, ext))
    coeffs = []
    for i in range(n + 1):
        vals = [cp[i] for cp in per_point]
        coeffs.append(_coeffs_to_poly(field, ext, interpolate(ext, pts, vals)))
    if not (coeffs[n].degree == 0 and coeffs[n][0] == 1):
        raise InternalError("interpolated charpoly is not monic")
    if delta.is_one():
        return UPoly(field, [RatFunc(c) for c in coeffs])
    # char_M coefficients: c_i / delta^(n-i)
    out = [RatFunc(coeffs[i], delta ** (n - i)) for i in range(n + 1)]
    return UPoly(field, out)


def charpoly_auto(M, seed=DEFAULT_SEED, cutoff=9):
    if M.rows <= cutoff:
        return M.charpoly()
    return fast_charpoly(M, seed)


def rank_auto(M, seed=DEFAULT_SEED, cutoff=14):
    if max(M.rows, M.cols) <= cutoff or M.max_num_degree() <= 0:
        return M.rank()
    return M.cols - len(fast_nullspace(M, seed))


def eigenvalue_sweep(M, degree_bound, seed=DEFAULT_SEED, combo_cap=200000):
    """Candidate rational eigenvalues of a polynomial matrix, unverified.

    Specialises at degree_bound+1 points of an extension with
    q^s > 4*(degree_bound+1) + n, collects finite-field eigenvalues, and
    interpolates every combination into candidates of degree <=
    degree_bound whose coefficients land in F_q.  Callers must verify
    each returned candidate exactly.
    """
    n = M.rows
    field = M.field
    if not M.is_polynomial():
        raise ShapeError("eigenvalue sweep expects a polynomial matrix")
    ext = extension_with_room(field, 4 * (degree_bound + 1) + n + 1)
    pts = sample_points(ext, degree_bound + 1, seed)
    rows = [[e.as_poly() for e in M.row(i)] for i in range(M.rows)]
    root_sets = []
    for t in pts:
        a = specialize_poly_rows(rows, ext, t)
        cp = charpoly_ints(a, ext)
        roots = [x for x in ext.elements() if _eval_ints(cp, x, ext) == 0]
        root_sets.append(roots)
    total = 1
    for rs in root_sets:
        total *= max(len(rs), 1)
        if total > combo_cap:
            raise InternalError("eigenvalue sweep combination explosion")
    candidates = set()
    for combo in _product(root_sets):
        try:
            cand = _coeffs_to_poly(field, ext, interpolate(ext, pts, list(combo)))
        except InternalError:
            continue
        if cand.degree <= degree_bound:
            candidates.add(cand)
    return sorted(candidates, key=lambda p: (p.degree, p.coeffs))


def _product(sets):
    if not sets:
        yield ()
        return
    import itertools
    yield from itertools.product(*sets)


def _eval_ints(coeffs, x, ext):
    acc = 0
    for c in reversed(coeffs):
        acc = ext.add(ext.mul(acc, x), c)
    return acc
