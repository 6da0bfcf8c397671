"""Finite-field summation identities used by the eigenspace analysis.

These are the exact F_q identities behind the circulant eigenvector
computations: the power-sum/binomial identity, the nested double-sum
reduction, and the circulant matrix built from 1/(1 - a^k).
"""

from .errors import InvalidInput
from .fields import binom_mod_p
from .poly import RatFunc


def binomsum(j, l, field):
    """sum_{n=1}^{q-2} a^(jn) / (1 - a^n)^l  for the field generator a.

    Defined for q >= 3, 1 <= j <= q-1 and l >= 1.  For 1 <= l <= q-2 the
    value is (-1)^(l-1) * C(j, l) in F_q; at l = q-1 the closed form
    breaks down (already at q = 3, j = 1, l = 2 the sum is 2, not 0).
    """
    q = field.q
    if q < 3:
        raise InvalidInput("binomsum needs q >= 3")
    if not 1 <= j <= q - 1 or l < 1:
        raise InvalidInput("binomsum arguments out of range")
    a = field.generator
    total = 0
    for n in range(1, q - 1):
        an = field.pow(a, n)
        num = field.pow(a, j * n)
        den = field.pow(field.sub(1, an), l)
        total = field.add(total, field.div(num, den))
    return total


def binomsum_expected(j, l, field):
    """(-1)^(l-1) C(j, l) as an element of F_q."""
    c = binom_mod_p(j, l, field.p)
    return c if l % 2 == 1 else field.neg(c)


def intersum_check(l, t, X, r, field):
    """Verify the double-sum reduction for one functional X: F_q -> RatFunc.

    Evaluates sum_{b} sum_{s != b} (b-r)^t / (s-b)^l X(s) directly and
    compares it with the closed form: for t > l it is
    (-1)^(l+1) C(t,l) sum_s (s-r)^(t-l) X(s), for t = l it is
    (-1)^(l+1) sum_s X(s), and for t < l it is 0.
    """
    q = field.q
    if not (1 <= l <= q - 2 and 1 <= t <= q - 2):
        raise InvalidInput("intersum_check exponents out of range")
    zero = RatFunc.zero(field)
    lhs = zero
    for b in field.elements():
        brt = field.pow(field.sub(b, r), t)
        if brt == 0:
            continue
        for s in field.elements():
            if s == b:
                continue
            c = field.div(brt, field.pow(field.sub(s, b), l))
            if c:
                lhs = lhs + RatFunc.constant(field, c) * X[s]
    sign = 1 if l % 2 == 1 else field.neg(1)  # (-1)^(l+1)
    rhs = zero
    if t > l:
        coef = field.mul(sign, binom_mod_p(t, l, field.p))
        for s in field.elements():
            c = field.mul(coef, field.pow(field.sub(s, r), t - l))
            if c:
                rhs = rhs + RatFunc.constant(field, c) * X[s]
    elif t == l:
        for s in field.elements():
            rhs = rhs + RatFunc.constant(field, sign) * X[s]
    return lhs == rhs


def circulant_matrix(field):
    """(q-1)x(q-1) matrix with entry (i, n) = 1/(1 - a^(n-i)), 0 on the diagonal.

    Rows and columns are indexed 0..q-2 corresponding to a^(i+1); exponents
    are taken mod q-1.
    """
    q = field.q
    if q < 3:
        raise InvalidInput("circulant matrix needs q >= 3")
    a = field.generator
    size = q - 1
    rows = []
    for i in range(size):
        row = []
        for n in range(size):
            if n == i:
                row.append(0)
            else:
                row.append(field.inv(field.sub(1, field.pow(a, (n - i) % size))))
        rows.append(row)
    return rows


def circulant_eigen_check(field, j):
    """Whether (1, a^j, ..., a^((q-2)j)) is an eigenvector with eigenvalue j*1."""
    q = field.q
    a = field.generator
    mat = circulant_matrix(field)
    vec = [field.pow(a, i * j) for i in range(q - 1)]
    lam = field.from_int(j)
    for i in range(q - 1):
        acc = 0
        for n in range(q - 1):
            acc = field.add(acc, field.mul(mat[i][n], vec[n]))
        if acc != field.mul(lam, vec[i]):
            return False
    return True
