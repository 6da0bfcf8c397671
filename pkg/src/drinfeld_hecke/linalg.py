"""Exact dense linear algebra over F_q(T).

Matrices are immutable, row-major tuples of RatFunc entries.  Echelon
reduction uses the first nonzero entry in row order as pivot -- exact
arithmetic needs no pivoting heuristics and the fixed rule keeps every
output deterministic.  The characteristic polynomial is computed by the
(division-free) Berkowitz iteration, valid in any characteristic; the
minimal polynomial combines per-basis-vector Krylov dependencies by lcm.
"""

from .errors import DivisionByZero, InvalidInput, ShapeError
from .poly import Poly, RatFunc


class Mat:
    """Immutable matrix over F_q(T)."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field, rows, cols, entries):
        if len(entries) != rows * cols:
            raise ShapeError("entry count does not match shape")
        self.field, self.rows, self.cols = field, rows, cols
        self.entries = tuple(RatFunc.of(e) for e in entries)

    @classmethod
    def from_rows(cls, field, rows):
        r = len(rows)
        c = len(rows[0]) if r else 0
        flat = []
        for row in rows:
            if len(row) != c:
                raise ShapeError("ragged rows")
            flat.extend(cls._coerce(field, e) for e in row)
        return cls(field, r, c, flat)

    @staticmethod
    def _coerce(field, e):
        if isinstance(e, RatFunc):
            return e
        if isinstance(e, Poly):
            return RatFunc(e)
        if isinstance(e, int):
            return RatFunc.constant(field, e % field.p)
        raise InvalidInput(f"cannot coerce {e!r} to a matrix entry")

    @classmethod
    def zero(cls, field, rows, cols=None):
        cols = rows if cols is None else cols
        z = RatFunc.zero(field)
        return cls(field, rows, cols, (z,) * (rows * cols))

    @classmethod
    def identity(cls, field, n):
        z, one = RatFunc.zero(field), RatFunc.one(field)
        ents = [z] * (n * n)
        for i in range(n):
            ents[i * n + i] = one
        return cls(field, n, n, ents)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j):
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def is_square(self):
        return self.rows == self.cols

    def is_polynomial(self):
        return all(e.is_polynomial() for e in self.entries)

    def max_num_degree(self):
        return max((e.num.degree for e in self.entries), default=-1)

    def __eq__(self, other):
        return (isinstance(other, Mat) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError("matrix addition shape mismatch")
        return Mat(self.field, self.rows, self.cols,
                   tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError("matrix subtraction shape mismatch")
        return Mat(self.field, self.rows, self.cols,
                   tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self):
        return Mat(self.field, self.rows, self.cols,
                   tuple(-a for a in self.entries))

    def scale(self, c):
        c = RatFunc.of(c)
        return Mat(self.field, self.rows, self.cols,
                   tuple(c * a for a in self.entries))

    def __mul__(self, other):
        if isinstance(other, Mat):
            if self.cols != other.rows:
                raise ShapeError("matrix product shape mismatch")
            n, m, k = self.rows, self.cols, other.cols
            zero = RatFunc.zero(self.field)
            out = []
            for i in range(n):
                ri = self.row(i)
                for j in range(k):
                    acc = zero
                    for l in range(m):
                        a = ri[l]
                        if a:
                            b = other.entries[l * k + j]
                            if b:
                                acc = acc + a * b
                    out.append(acc)
            return Mat(self.field, n, k, out)
        return NotImplemented

    def apply(self, vec):
        """Matrix times a column vector (tuple of RatFunc)."""
        if len(vec) != self.cols:
            raise ShapeError("vector length mismatch")
        zero = RatFunc.zero(self.field)
        out = []
        for i in range(self.rows):
            acc = zero
            ri = self.row(i)
            for a, x in zip(ri, vec):
                if a and x:
                    acc = acc + a * x
            out.append(acc)
        return tuple(out)

    def transpose(self):
        return Mat(self.field, self.cols, self.rows,
                   tuple(self.entries[j * self.cols + i]
                         for i in range(self.cols) for j in range(self.rows)))

    def submatrix(self, row_idx, col_idx):
        return Mat(self.field, len(row_idx), len(col_idx),
                   tuple(self.entries[i * self.cols + j]
                         for i in row_idx for j in col_idx))

    def minus_scalar(self, lam):
        """self - lam*I for a Poly or RatFunc scalar."""
        if not self.is_square():
            raise ShapeError("square matrix required")
        lam = RatFunc.of(lam)
        ents = list(self.entries)
        for i in range(self.rows):
            ents[i * self.cols + i] = ents[i * self.cols + i] - lam
        return Mat(self.field, self.rows, self.cols, ents)

    # -- echelon form and kernels --

    def rref(self):
        """Reduced row echelon form; returns (rows, pivot column list)."""
        rows = self.to_rows()
        n, m = self.rows, self.cols
        pivots = []
        r = 0
        for c in range(m):
            pr = None
            for i in range(r, n):
                if rows[i][c]:
                    pr = i
                    break
            if pr is None:
                continue
            rows[r], rows[pr] = rows[pr], rows[r]
            inv = rows[r][c].inv()
            rows[r] = [inv * x for x in rows[r]]
            for i in range(n):
                if i != r and rows[i][c]:
                    f = rows[i][c]
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == n:
                break
        return rows, pivots

    def rank(self):
        return len(self.rref()[1])

    def nullspace(self):
        """Kernel basis in reduced echelon form (deterministic).

        Each basis vector has entry 1 at its own free column and 0 at the
        other free columns.
        """
        rows, pivots = self.rref()
        free = [c for c in range(self.cols) if c not in pivots]
        zero, one = RatFunc.zero(self.field), RatFunc.one(self.field)
        basis = []
        for f in free:
            v = [zero] * self.cols
            v[f] = one
            for r, pc in enumerate(pivots):
                v[pc] = -rows[r][f]
            basis.append(tuple(v))
        return basis

    # -- characteristic and minimal polynomials --

    def charpoly(self):
        """det(XI - M) by the Berkowitz iteration (division free)."""
        if not self.is_square():
            raise ShapeError("characteristic polynomial of non-square matrix")
        field = self.field
        n = self.rows
        one = RatFunc.one(field)
        if n == 0:
            return UPoly(field, (one,))
        # p holds descending coefficients of charpoly of the leading r x r block
        p = [one, -self.entries[0]]
        for r in range(2, n + 1):
            a_rr = self[r - 1, r - 1]
            row = [self[r - 1, j] for j in range(r - 1)]
            col = [self[j, r - 1] for j in range(r - 1)]
            sub = [[self[i, j] for j in range(r - 1)] for i in range(r - 1)]
            # column vector of the Toeplitz matrix:
            # [1, -a_rr, -R S, -R A S, ..., -R A^{r-2} S]
            toe = [one, -a_rr]
            cur = col
            for _ in range(r - 1):
                acc = RatFunc.zero(field)
                for x, y in zip(row, cur):
                    if x and y:
                        acc = acc + x * y
                toe.append(-acc)
                nxt = []
                for i in range(r - 1):
                    s = RatFunc.zero(field)
                    for j in range(r - 1):
                        a, b = sub[i][j], cur[j]
                        if a and b:
                            s = s + a * b
                    nxt.append(s)
                cur = nxt
            # p <- T_r p where T_r is lower-triangular Toeplitz with column toe
            newp = []
            for i in range(r + 1):
                acc = RatFunc.zero(field)
                for j in range(len(p)):
                    ti = i - j
                    if 0 <= ti < len(toe):
                        t, pj = toe[ti], p[j]
                        if t and pj:
                            acc = acc + t * pj
                newp.append(acc)
            p = newp
        return UPoly(field, tuple(reversed(p)))

    def minpoly(self):
        """Least-degree monic annihilator, via Krylov chains joined by lcm."""
        if not self.is_square():
            raise ShapeError("minimal polynomial of non-square matrix")
        field = self.field
        n = self.rows
        zero, one = RatFunc.zero(field), RatFunc.one(field)
        current = UPoly(field, (one,))
        for i in range(n):
            e = [zero] * n
            e[i] = one
            e = tuple(e)
            # Krylov vectors w_j = M^j e, as many as the current lcm needs
            ws = [e]
            for _ in range(current.degree):
                ws.append(self.apply(ws[-1]))
            if current.degree > 0 and _combination_is_zero(current.coeffs, ws):
                continue  # current already annihilates e_i
            current = current.lcm(self._krylov_minpoly(e, ws))
        return current

    def _krylov_minpoly(self, e, ws):
        """Minimal monic g with g(M) e = 0, reusing precomputed w_j."""
        field = self.field
        n = self.rows
        zero, one = RatFunc.zero(field), RatFunc.one(field)
        echelon = []  # list of (pivot index, vector, expansion in w's)
        w = e
        j = 0
        while True:
            if j < len(ws):
                w = ws[j]
            else:
                w = self.apply(w)
            vec = list(w)
            expr = [zero] * (j + 1)
            expr[j] = one
            for piv, bvec, bexpr in echelon:
                f = vec[piv]
                if f:
                    for t in range(n):
                        if bvec[t]:
                            vec[t] = vec[t] - f * bvec[t]
                    for t in range(len(bexpr)):
                        if bexpr[t]:
                            expr[t] = expr[t] - f * bexpr[t]
            piv = next((t for t in range(n) if vec[t]), None)
            if piv is None:
                # 0 = sum expr[t] w_t with expr[j] = 1, so the chain's
                # minimal polynomial is X^j + sum_{t<j} expr[t] X^t
                coeffs = [expr[t] for t in range(j)] + [one]
                return UPoly(field, tuple(coeffs))
            inv = vec[piv].inv()
            vec = [inv * x for x in vec]
            expr = [inv * x for x in expr]
            echelon.append((piv, vec, expr))
            j += 1

    def __repr__(self):
        return f"Mat({self.rows}x{self.cols})"


def _combination_is_zero(coeffs, ws):
    n = len(ws[0])
    for t in range(n):
        acc = None
        for c, w in zip(coeffs, ws):
            if c and w[t]:
                term = c * w[t]
                acc = term if acc is None else acc + term
        if acc is not None and acc:
            return False
    return True


class UPoly:
    """Polynomial in an indeterminate X over F_q(T), ascending coefficients."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs=()):
        coeffs = tuple(RatFunc.of(c) for c in coeffs)
        n = len(coeffs)
        while n and not coeffs[n - 1]:
            n -= 1
        self.field = field
        self.coeffs = coeffs[:n]

    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def one(cls, field):
        return cls(field, (RatFunc.one(field),))

    @classmethod
    def x_minus(cls, field, lam):
        return cls(field, (-RatFunc.of(lam), RatFunc.one(field)))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_one(self):
        return len(self.coeffs) == 1 and self.coeffs[0].is_one()

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return RatFunc.zero(self.field)

    def lead(self):
        if not self.coeffs:
            raise InvalidInput("zero polynomial")
        return self.coeffs[-1]

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1].is_one()

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UPoly(self.field, out)

    def __neg__(self):
        return UPoly(self.field, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UPoly.zero(self.field)
        zero = RatFunc.zero(self.field)
        out = [zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] = out[i + j] + ai * bj
        return UPoly(self.field, out)

    def __pow__(self, n):
        result = UPoly.one(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        if other.is_zero():
            raise DivisionByZero("UPoly division by zero")
        rem = list(self.coeffs)
        db = other.degree
        inv_lead = other.lead().inv()
        quot = [RatFunc.zero(self.field)] * max(len(rem) - db, 0)
        while len(rem) - 1 >= db and rem:
            c = rem[-1] * inv_lead
            k = len(rem) - 1 - db
            quot[k] = c
            for i, bi in enumerate(other.coeffs):
                rem[k + i] = rem[k + i] - c * bi
            while rem and not rem[-1]:
                rem.pop()
        return UPoly(self.field, quot), UPoly(self.field, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        return (isinstance(other, UPoly) and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.coeffs, self.field.q))

    def monic(self):
        if self.is_zero() or self.is_monic():
            return self
        inv = self.lead().inv()
        return UPoly(self.field, tuple(inv * c for c in self.coeffs))

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def lcm(self, other):
        if self.is_zero() or other.is_zero():
            return UPoly.zero(self.field)
        return ((self * other) // self.gcd(other)).monic()

    def derivative(self):
        """Formal derivative; coefficient i maps through the prime subfield."""
        field = self.field
        out = []
        for i in range(1, len(self.coeffs)):
            out.append(RatFunc.constant(field, i % field.p) * self.coeffs[i])
        return UPoly(field, out)

    def divides(self, other):
        return (other % self).is_zero()

    def evaluate(self, x):
        x = RatFunc.of(x)
        acc = RatFunc.zero(self.field)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_string(self, var="X"):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            pw = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            cs = "(" + c.to_string() + ")"
            parts.append(cs + ("*" + pw if pw else ""))
        return " + ".join(parts)

    def __repr__(self):
        return f"UPoly[{self.to_string()}]"


def upoly_separable(f):
    """Whether gcd(f, f') = 1, i.e. f has no repeated roots in any extension."""
    if f.is_zero():
        raise InvalidInput("separability of the zero polynomial")
    fp = f.derivative()
    if fp.is_zero():
        return f.degree == 0
    return f.gcd(fp).degree == 0
