"""The Bruhat-Tits tree of PGL_2 over F_q((1/T)): normal forms and action.

Vertices are classes of rank-2 lattices, in the normal form (n, u): the
class of the column lattice of [[pi^n, u], [0, 1]] with pi = 1/T and u
reduced modulo pi^n (coefficients at exponents < n only).  The neighbours
of (n, u) are (n-1, u mod pi^(n-1)) and the q vertices (n+1, u + c pi^n).

A directed edge <g> for g in GL_2 runs from the vertex of g to the vertex
of g*diag(1, pi); with this convention the edge of the identity matrix
runs (0,0) -> (-1,0), the edge of [[0,1],[1,0]] runs (0,0) -> (1,0), and
the left action of GL_2(K) on normal forms is computed by column
reduction over O_infinity with pessimistic precision tracking
(PrecisionError asks the caller to retry with more digits).

LaurentNum holds finitely many known pi-digits: the value is known
exactly at exponents in [val, prec); prec == EXACT marks values with no
unknown tail (polynomials and truncations).
"""

from dataclasses import dataclass

from .errors import (DivisionByZero, InternalError, InvalidInput,
                     PrecisionError)
from .poly import Poly, RatFunc

EXACT = 10 ** 9  # precision sentinel: all unlisted digits are exactly zero


class LaurentNum:
    """Finite-precision Laurent series in pi = 1/T over F_q."""

    __slots__ = ("field", "val", "coeffs", "prec")

    def __init__(self, field, val, coeffs, prec):
        # strip leading zeros, then cap at prec
        i = 0
        coeffs = tuple(coeffs)
        while i < len(coeffs) and coeffs[i] == 0:
            i += 1
        val += i
        coeffs = coeffs[i:]
        if prec != EXACT and val + len(coeffs) > prec:
            coeffs = coeffs[:max(prec - val, 0)]
            i = 0
            while i < len(coeffs) and coeffs[i] == 0:
                i += 1
            val += i
            coeffs = coeffs[i:]
        n = len(coeffs)
        while n and coeffs[n - 1] == 0:
            n -= 1
        coeffs = coeffs[:n]
        if not coeffs:
            val = 0
        self.field, self.val, self.coeffs, self.prec = field, val, coeffs, prec

    # -- constructors --

    @classmethod
    def zero(cls, field):
        return cls(field, 0, (), EXACT)

    @classmethod
    def from_poly(cls, poly):
        # T^i = pi^(-i): coefficients reversed, valuation -deg
        c = poly.coeffs
        if not c:
            return cls.zero(poly.field)
        return cls(poly.field, -(len(c) - 1), tuple(reversed(c)), EXACT)

    @classmethod
    def from_ratfunc(cls, rf, digits):
        num = cls.from_poly(rf.num)
        if rf.den.is_one():
            return num
        return num.div(cls.from_poly(rf.den), digits)

    # -- predicates --

    def is_exact_zero(self):
        return not self.coeffs and self.prec == EXACT

    def known_nonzero(self):
        return bool(self.coeffs)

    def valuation(self):
        """Exact valuation; PrecisionError when undetectable."""
        if self.coeffs:
            return self.val
        if self.prec == EXACT:
            raise InvalidInput("valuation of exact zero")
        raise PrecisionError("valuation below known precision")

    def val_lower_bound(self):
        if self.coeffs:
            return self.val
        return self.prec  # exact zero gives EXACT, a safe lower bound

    def __getitem__(self, exponent):
        if 0 <= exponent - self.val < len(self.coeffs):
            return self.coeffs[exponent - self.val]
        return 0

    # -- arithmetic --

    def __add__(self, other):
        f = self.field
        prec = min(self.prec, other.prec)
        if not self.coeffs:
            return LaurentNum(f, other.val, other.coeffs, prec)
        if not other.coeffs:
            return LaurentNum(f, self.val, self.coeffs, prec)
        lo = min(self.val, other.val)
        hi = max(self.val + len(self.coeffs), other.val + len(other.coeffs))
        out = [f.add(self[e], other[e]) for e in range(lo, hi)]
        return LaurentNum(f, lo, out, prec)

    def __neg__(self):
        f = self.field
        return LaurentNum(f, self.val, tuple(f.neg(c) for c in self.coeffs),
                          self.prec)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        f = self.field
        if self.is_exact_zero() or other.is_exact_zero():
            return LaurentNum.zero(f)
        prec = EXACT
        if self.prec != EXACT:
            prec = self.prec + other.val_lower_bound()
        if other.prec != EXACT:
            prec = min(prec, other.prec + self.val_lower_bound())
        if not self.coeffs or not other.coeffs:
            return LaurentNum(f, 0, (), prec)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = f.add(out[i + j], f.mul(a, b))
        return LaurentNum(f, self.val + other.val, out, prec)

    def div(self, other, digits):
        """self / other computed to at most `digits` quotient digits."""
        f = self.field
        if other.is_exact_zero():
            raise DivisionByZero("Laurent division by zero")
        if not other.coeffs:
            raise PrecisionError("division by a value of unknown valuation")
        if self.is_exact_zero():
            return LaurentNum.zero(f)
        vb = other.val
        if not self.coeffs:
            return LaurentNum(f, 0, (), self.prec - vb)
        va = self.val
        qval = va - vb
        # forced absolute precision from the inputs
        abs_prec = qval + digits
        if self.prec != EXACT:
            abs_prec = min(abs_prec, self.prec - vb)
        if other.prec != EXACT:
            abs_prec = min(abs_prec, va - 2 * vb + other.prec)
        m = abs_prec - qval
        if m <= 0:
            return LaurentNum(f, 0, (), abs_prec)
        b0inv = f.inv(other.coeffs[0])
        out = [0] * m
        for i in range(m):
            acc = self.coeffs[i] if i < len(self.coeffs) else 0
            for j in range(1, min(i, len(other.coeffs) - 1) + 1):
                bj = other.coeffs[j]
                if bj and out[i - j]:
                    acc = f.sub(acc, f.mul(bj, out[i - j]))
            out[i] = f.mul(acc, b0inv)
        return LaurentNum(f, qval, out, qval + m)

    def shift(self, n):
        """Multiply by pi^n."""
        prec = self.prec if self.prec == EXACT else self.prec + n
        return LaurentNum(self.field, self.val + n, self.coeffs, prec)

    def truncate_below(self, n):
        """The exact value of the digits at exponents < n (needs prec >= n)."""
        if self.prec != EXACT and self.prec < n:
            raise PrecisionError("truncation beyond known precision")
        if not self.coeffs:
            return LaurentNum.zero(self.field)
        kept = self.coeffs[:max(n - self.val, 0)]
        return LaurentNum(self.field, self.val, kept, EXACT)

    def key(self):
        if not self.coeffs:
            return (0, ())
        return (self.val, self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, LaurentNum) and self.field == other.field
                and self.key() == other.key() and self.prec == other.prec)

    def __hash__(self):
        return hash((self.key(), self.prec))

    def __repr__(self):
        if not self.coeffs:
            return "Laurent[0]" if self.prec == EXACT else f"Laurent[O(pi^{self.prec})]"
        terms = "+".join(f"{c}*pi^{self.val + i}"
                         for i, c in enumerate(self.coeffs) if c)
        tail = "" if self.prec == EXACT else f"+O(pi^{self.prec})"
        return f"Laurent[{terms}{tail}]"


@dataclass(frozen=True)
class TreeVertex:
    """Normal form (n, u) with u an exact truncation mod pi^n."""

    n: int
    u: LaurentNum

    def key(self):
        return (self.n, self.u.key())

    def __eq__(self, other):
        return isinstance(other, TreeVertex) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def neighbors(self, field):
        """The q+1 adjacent vertices: one up (n-1), q down (n+1)."""
        out = [TreeVertex(self.n - 1, self.u.truncate_below(self.n - 1))]
        for c in field.elements():
            step = LaurentNum(field, self.n, (c,), EXACT)
            out.append(TreeVertex(self.n + 1, (self.u + step).truncate_below(self.n + 1)))
        return out

    def is_adjacent(self, other):
        if other.n == self.n + 1:
            return other.u.truncate_below(self.n).key() == self.u.key()
        if other.n == self.n - 1:
            return self.u.truncate_below(other.n).key() == other.u.key()
        return False


def vertex_distance(v, w):
    """Tree distance between two normal-form vertices."""
    diff = v.u - w.u
    if diff.coeffs:
        meet = min(v.n, w.n, diff.val)
    else:
        meet = min(v.n, w.n)  # u's agree on all known digits (exact)
    return (v.n - meet) + (w.n - meet)


@dataclass(frozen=True)
class TreeEdge:
    """Directed edge between adjacent normal-form vertices."""

    tail: TreeVertex
    head: TreeVertex

    def __post_init__(self):
        if not self.tail.is_adjacent(self.head):
            raise InternalError("edge endpoints are not adjacent")

    def key(self):
        return (self.tail.key(), self.head.key())

    def reversed(self):
        return TreeEdge(self.head, self.tail)

    def __eq__(self, other):
        return isinstance(other, TreeEdge) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


class TreeContext:
    """Working precision for normal-form computation, with retry support."""

    def __init__(self, field, digits=24):
        self.field = field
        self.digits = digits

    def laurent(self, rf):
        return LaurentNum.from_ratfunc(RatFunc.of(rf), self.digits)


def vertex_of_matrix(m, ctx):
    """Normal form of the lattice class spanned by the columns of m.

    m is a 2x2 of LaurentNum [[A, B], [C, D]].  Column reduction makes the
    bottom row (0, s); the result is (n, u) = (v(A') - v(s), B'/s mod pi^n).
    """
    (A, B), (C, D) = m
    # choose the bottom entry of smaller valuation as the second column
    if C.is_exact_zero() and D.is_exact_zero():
        raise InvalidInput("singular matrix has no vertex")
    swap = False
    if D.is_exact_zero():
        swap = True
    elif not C.is_exact_zero():
        if C.known_nonzero() and D.known_nonzero():
            swap = C.valuation() < D.valuation()
        elif D.known_nonzero():
            swap = C.val_lower_bound() < D.valuation()
        elif C.known_nonzero():
            swap = True
        else:
            raise PrecisionError("cannot order bottom-row valuations")
    if swap:
        A, B = B, A
        C, D = D, C
    f = C.div(D, ctx.digits)
    A1 = A - f * B
    if not A1.known_nonzero():
        if A1.is_exact_zero():
            raise InvalidInput("singular matrix has no vertex")
        raise PrecisionError("pivot valuation unknown after reduction")
    n = A1.valuation() - D.valuation()
    u = B.div(D, max(ctx.digits, n - (B.val_lower_bound() - D.valuation()) + 2))
    u = u.truncate_below(n)
    return TreeVertex(n, u)


def edge_of_matrix_entries(entries, ctx):
    """Directed edge <g>: from the vertex of g to the vertex of g*diag(1, pi)."""
    (A, B), (C, D) = entries
    tail = vertex_of_matrix(((A, B), (C, D)), ctx)
    head = vertex_of_matrix(((A, B.shift(1)), (C, D.shift(1))), ctx)
    return TreeEdge(tail, head)


def matrix_to_laurent(mat_rows, ctx):
    return tuple(tuple(ctx.laurent(e) for e in row) for row in mat_rows)


def edge_of_matrix(mat_rows, ctx, retries=4):
    """Edge normal form from a 2x2 of Poly/RatFunc, retrying on precision."""
    digits = ctx.digits
    for _ in range(retries + 1):
        try:
            c = TreeContext(ctx.field, digits)
            return edge_of_matrix_entries(matrix_to_laurent(mat_rows, c), c)
        except PrecisionError:
            digits *= 2
    raise PrecisionError("edge normal form failed after retries")


def act_matrix(mat_rows, edge, ctx, retries=4):
    """Left translation of an edge by a 2x2 matrix over F_q(T)."""
    digits = ctx.digits
    for _ in range(retries + 1):
        try:
            c = TreeContext(ctx.field, digits)
            g = matrix_to_laurent(mat_rows, c)
            return TreeEdge(_act_vertex(g, edge.tail, c),
                            _act_vertex(g, edge.head, c))
        except PrecisionError:
            digits *= 2
    raise PrecisionError("edge action failed after retries")


def _act_vertex(g, v, ctx):
    (a, b), (c, d) = g
    pin = LaurentNum(ctx.field, v.n, (1,), EXACT)  # pi^n
    col1 = (a * pin, c * pin)
    col2 = (a * v.u + b, c * v.u + d)
    return vertex_of_matrix(((col1[0], col2[0]), (col1[1], col2[1])), ctx)


class GroupElement:
    """A 2x2 matrix over F_q[T] with unit determinant (congruence groups)."""

    __slots__ = ("a", "b", "c", "d", "_key")

    def __init__(self, a, b, c, d):
        self.a, self.b, self.c, self.d = a, b, c, d
        self._key = (a.coeffs, b.coeffs, c.coeffs, d.coeffs)

    def det(self):
        return self.a * self.d - self.b * self.c

    def entries(self):
        return ((self.a, self.b), (self.c, self.d))

    def ratfunc_rows(self):
        return ((RatFunc(self.a), RatFunc(self.b)),
                (RatFunc(self.c), RatFunc(self.d)))

    def in_gamma1(self):
        det = self.det()
        return (self.a[0] == 1 and self.d[0] == 1 and self.c[0] == 0
                and det.degree == 0 and det[0] != 0)

    def in_gammaT(self):
        return self.in_gamma1() and self.b[0] == 0

    def __mul__(self, other):
        return GroupElement(self.a * other.a + self.b * other.c,
                            self.a * other.b + self.b * other.d,
                            self.c * other.a + self.d * other.c,
                            self.c * other.b + self.d * other.d)

    def inverse_rows(self):
        """Inverse as RatFunc rows (determinant is a unit constant)."""
        det = self.det()
        if det.degree != 0 or det[0] == 0:
            raise InvalidInput("group element determinant is not a unit")
        inv = RatFunc.constant(self.a.field, self.a.field.inv(det[0]))
        return ((inv * RatFunc(self.d), -(inv * RatFunc(self.b))),
                (-(inv * RatFunc(self.c)), inv * RatFunc(self.a)))

    def key(self):
        return self._key

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return (f"[[{self.a.to_string()}],[{self.b.to_string()}],"
                f"[{self.c.to_string()}],[{self.d.to_string()}]]")


def identity_element(field):
    one, zero = Poly.one(field), Poly.zero(field)
    return GroupElement(one, zero, zero, one)


def _polys_with_const(field, max_deg, const):
    """All polynomials of degree <= max_deg with the given constant term."""
    q = field.q
    out = []
    for enc in range(q ** max_deg):
        digits = [const]
        n = enc
        for _ in range(max_deg):
            digits.append(n % q)
            n //= q
        out.append(Poly(field, digits))
    return out


def enumerate_group(group_is_gammaT, field, depth):
    """All group elements with entry degrees <= depth, deterministic order.

    Solutions of a d - b c = 1 are enumerated per coprime pair (a, c) as
    (b, d) = (b0 + a t, d0 + c t); the congruences force det = 1 exactly.
    """
    a_list = _polys_with_const(field, depth, 1)
    c_list = _polys_with_const(field, depth, 0)
    out = []
    for a in a_list:
        for c in c_list:
            g, x0, y0 = a.xgcd(c)
            if g.degree != 0:
                continue
            d0, b0 = x0, -y0
            # reduce so that deg b0 < deg a when possible
            if a.degree >= 1 and b0.degree >= a.degree:
                qq, b0 = divmod(b0, a)
                d0 = d0 - c * qq
            t_deg = depth if a.degree <= 0 else depth - a.degree
            if group_is_gammaT:
                t_consts = [field.neg(b0[0])]
            else:
                t_consts = list(field.elements())
            for t0 in t_consts:
                for t in _polys_with_const(field, t_deg, t0):
                    b = b0 + a * t
                    d = d0 + c * t
                    if b.degree > depth or d.degree > depth:
                        continue
                    if d[0] != 1:
                        raise InternalError("determinant normalisation broke")
                    out.append(GroupElement(a, b, c, d))
    return out
