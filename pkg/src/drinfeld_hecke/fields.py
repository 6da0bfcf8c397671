"""Exact arithmetic in finite fields F_q, q = p^e, and their extensions.

Field elements are plain ints in range(q).  The int n encodes the
coefficient vector of the element in the polynomial basis 1, x, ...,
x^(e-1) over F_p: the element c_0 + c_1 x + ... corresponds to
n = c_0 + c_1 p + c_2 p^2 + ...  In particular 0 and 1 are the additive
and multiplicative identities of every field, and elements of the prime
subfield are the ints 0..p-1.  The encoding is canonical, so equality of
elements is equality of ints.

``FiniteField`` covers the base fields used throughout (q <= 16 in
practice); its arithmetic is fully table driven.  ``ExtensionField``
builds F_{q^s} on top of a base field with the same int-encoding scheme
(digits base q) and Zech-logarithm tables, so that specialised linear
algebra over large extensions stays cheap.  A base element a embeds into
any extension as the same int a.
"""

import functools
import math

from .errors import DivisionByZero, InvalidInput

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13)


def is_prime(n):
    if n < 2:
        return False
    for d in range(2, int(math.isqrt(n)) + 1):
        if n % d == 0:
            return False
    return True


def binom_mod_p(n, k, p):
    """Binomial coefficient C(n, k) reduced mod p (an element of F_p).

    Uses plain integer arithmetic for n <= 64 and Lucas' theorem beyond;
    the two paths agree (cross-checked in the test suite).
    """
    if n < 0:
        raise InvalidInput("binomial row index must be nonnegative")
    if k < 0 or k > n:
        return 0
    if n <= 64:
        return math.comb(n, k) % p
    return _binom_lucas(n, k, p)


def _binom_lucas(n, k, p):
    result = 1
    while n or k:
        ni, ki = n % p, k % p
        if ki > ni:
            return 0
        result = (result * math.comb(ni, ki)) % p
        n //= p
        k //= p
    return result


# ---------------------------------------------------------------------------
# raw coefficient-vector arithmetic used only while building tables


def _vec_of_int(n, p, e):
    digits = []
    for _ in range(e):
        digits.append(n % p)
        n //= p
    return tuple(digits)


def _int_of_vec(v, p):
    n = 0
    for c in reversed(v):
        n = n * p + c
    return n


def _poly_trim(c):
    i = len(c)
    while i and c[i - 1] == 0:
        i -= 1
    return tuple(c[:i])


def _poly_mul_mod_p(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_rem_mod_p(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) > dm:
        c = a[-1] * inv_lead % p
        if c:
            shift = len(a) - 1 - dm
            for i, mi in enumerate(m):
                a[shift + i] = (a[shift + i] - c * mi) % p
        a.pop()
    return _poly_trim(a)


def _irreducible_mod_p(m, p):
    """Trial-division irreducibility test for a polynomial over F_p.

    Divides by every monic polynomial of degree 1..deg(m)//2; any factor
    of m yields a monic factor in that range.
    """
    d = len(m) - 1
    if d <= 0:
        return False
    if d == 1:
        return True
    for deg in range(1, d // 2 + 1):
        for enc in range(p ** deg):
            g = _vec_of_int(enc, p, deg) + (1,)
            if _poly_rem_mod_p(m, g, p) == ():
                return False
    return True


def default_modulus(p, e):
    """Smallest (by int encoding) monic irreducible of degree e over F_p."""
    if e == 1:
        return (0, 1)
    for enc in range(p ** e):
        m = _vec_of_int(enc, p, e) + (1,)
        if _irreducible_mod_p(m, p):
            return m
    raise InvalidInput("no irreducible modulus found")  # unreachable


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class FiniteField:
    """The field F_q, q = p^e, with dense add/mul tables.

    Instances are immutable and safe to share.  Use :func:`get_field` for a
    cached constructor.  ``modulus`` is the degree-e defining polynomial
    over F_p (ascending coefficients, ignored when e == 1) and
    ``generator`` an element of multiplicative order q - 1.
    """

    __slots__ = ("p", "e", "q", "modulus", "generator", "_add", "_mul",
                 "_inv", "_neg", "_order")

    def __init__(self, p, e=1, modulus=None, generator=None):
        if not is_prime(p):
            raise InvalidInput(f"{p} is not prime")
        if e < 1:
            raise InvalidInput("extension degree must be positive")
        q = p ** e
        if modulus is None:
            modulus = default_modulus(p, e)
        else:
            modulus = _poly_trim(tuple(c % p for c in modulus))
            if len(modulus) - 1 != e:
                raise InvalidInput("modulus degree must equal e")
            if modulus[-1] != 1:
                inv = pow(modulus[-1], p - 2, p)
                modulus = tuple(c * inv % p for c in modulus)
            if not _irreducible_mod_p(modulus, p):
                raise InvalidInput("modulus is reducible over F_p")
        self.p, self.e, self.q, self.modulus = p, e, q, modulus

        mul = [[0] * q for _ in range(q)]
        add = [[0] * q for _ in range(q)]
        vecs = [_vec_of_int(n, p, e) for n in range(q)]
        for a in range(q):
            va = vecs[a]
            for b in range(a, q):
                s = tuple((x + y) % p for x, y in zip(va, vecs[b]))
                add[a][b] = add[b][a] = _int_of_vec(s, p)
                m = _poly_rem_mod_p(_poly_mul_mod_p(va, vecs[b], p), modulus, p)
                m = _int_of_vec(m + (0,) * (e - len(m)), p)
                mul[a][b] = mul[b][a] = m
        self._add = add
        self._mul = mul
        self._neg = [add[a].index(0) for a in range(q)]
        inv = [0] * q
        for a in range(1, q):
            inv[a] = mul[a].index(1)
        self._inv = inv
        self._order = self._order_table()
        if generator is None:
            generator = next(a for a in range(1, q)
                             if self._order[a] == q - 1)
        elif not 1 <= generator < q or self._order[generator] != q - 1:
            raise InvalidInput("supplied generator does not have order q-1")
        self.generator = generator

    def _order_table(self):
        order = [0] * self.q
        for a in range(1, self.q):
            x, n = a, 1
            while x != 1:
                x = self._mul[x][a]
                n += 1
            order[a] = n
        return order

    # -- arithmetic (elements are ints in range(q)) --

    def add(self, a, b):
        return self._add[a][b]

    def sub(self, a, b):
        return self._add[a][self._neg[b]]

    def neg(self, a):
        return self._neg[a]

    def mul(self, a, b):
        return self._mul[a][b]

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return self._inv[a]

    def div(self, a, b):
        return self._mul[a][self.inv(b)]

    def pow(self, a, n):
        if n < 0:
            a, n = self.inv(a), -n
        result, base = 1, a
        while n:
            if n & 1:
                result = self._mul[result][base]
            base = self._mul[base][base]
            n >>= 1
        return result

    def order_of(self, a):
        if a == 0:
            raise InvalidInput("zero has no multiplicative order")
        return self._order[a]

    def elements(self):
        return range(self.q)

    def units(self):
        return range(1, self.q)

    def from_int(self, n):
        """Embed an integer through the prime subfield (n mod p)."""
        return n % self.p

    def coeffs_of(self, a):
        return _vec_of_int(a, self.p, self.e)

    def element_from_coeffs(self, v):
        if len(v) > self.e:
            raise InvalidInput("coefficient vector too long")
        v = tuple(c % self.p for c in v) + (0,) * (self.e - len(v))
        return _int_of_vec(v, self.p)

    # -- text formats ("p^e/c0,...,ce"; elements as int or tuple) --

    def spec_string(self):
        if self.e == 1:
            return str(self.p)
        mods = ",".join(str(c) for c in self.modulus)
        return f"{self.p}^{self.e}/{mods}"

    def format_element(self, a):
        if self.e == 1:
            return str(a)
        return "(" + ",".join(str(c) for c in self.coeffs_of(a)) + ")"

    def parse_element(self, text):
        text = text.strip()
        if text.startswith("("):
            if not text.endswith(")"):
                raise InvalidInput(f"malformed element {text!r}")
            parts = text[1:-1].split(",")
            return self.element_from_coeffs([int(c) for c in parts])
        n = int(text)
        if not 0 <= n < self.q:
            raise InvalidInput(f"element {n} out of range for q={self.q}")
        return n

    def __repr__(self):
        return f"FiniteField({self.spec_string()})"

    def __eq__(self, other):
        return (isinstance(other, FiniteField)
                and (self.p, self.e, self.modulus, self.generator)
                == (other.p, other.e, other.modulus, other.generator))

    def __hash__(self):
        return hash((self.p, self.e, self.modulus, self.generator))


@functools.lru_cache(maxsize=None)
def get_field(p, e=1, modulus=None, generator=None):
    """Cached FiniteField constructor; modulus given as a tuple or None."""
    return FiniteField(p, e, modulus, generator)


def field_from_string(text):
    """Parse the "p^e/c0,c1,...,ce" field format ("p" when e = 1)."""
    text = text.strip()
    if "/" in text:
        head, mods = text.split("/", 1)
        modulus = tuple(int(c) for c in mods.split(","))
    else:
        head, modulus = text, None
    if "^" in head:
        p_str, e_str = head.split("^", 1)
        p, e = int(p_str), int(e_str)
    else:
        p, e = int(head), 1
    return get_field(p, e, modulus)


class ExtensionField:
    """F_{q^s} over a base FiniteField, with Zech-logarithm arithmetic.

    Elements are ints in range(q^s) encoding base-q digit vectors in the
    polynomial basis over the base field; base elements embed as
    themselves.  Used internally for specialisation points in exact
    linear algebra; not part of the public field-tower model.
    """

    __slots__ = ("base", "s", "q", "modulus", "_log", "_exp", "_zech",
                 "generator", "p", "e")

    def __init__(self, base, s, modulus=None):
        self.base, self.s = base, s
        self.q = base.q ** s
        self.p = base.p
        self.e = base.e * s
        if modulus is None:
            modulus = self._default_modulus()
        self.modulus = modulus
        if len(modulus) - 1 != s or modulus[-1] != 1:
            raise InvalidInput("extension modulus must be monic of degree s")
        self._build_tables()

    # raw vectors here have entries in the *base* field
    def _vec(self, n):
        digits = []
        q = self.base.q
        for _ in range(self.s):
            digits.append(n % q)
            n //= q
        return tuple(digits)

    def _int(self, v):
        n = 0
        for c in reversed(v):
            n = n * self.base.q + c
        return n

    def _raw_mul(self, a, b):
        base = self.base
        va, vb = self._vec(a), self._vec(b)
        out = [0] * (2 * self.s - 1)
        for i, ai in enumerate(va):
            if ai:
                for j, bj in enumerate(vb):
                    out[i + j] = base.add(out[i + j], base.mul(ai, bj))
        # reduce modulo the (monic) modulus
        m = self.modulus
        for top in range(len(out) - 1, self.s - 1, -1):
            c = out[top]
            if c:
                out[top] = 0
                for i in range(self.s):
                    out[top - self.s + i] = base.sub(
                        out[top - self.s + i], base.mul(c, m[i]))
        return self._int(tuple(out[:self.s]))

    def _irreducible(self, m):
        base, s = self.base, len(m) - 1
        if s == 1:
            return True
        # no roots in the base field
        for x in base.elements():
            acc = 0
            for c in reversed(m):
                acc = base.add(base.mul(acc, x), c)
            if acc == 0:
                return False
        if s <= 3:
            return True
        # trial divide by monic irreducibles of degree 2..s//2 over base
        irr = {1: [(x, 1) for x in base.elements()]}
        for d in range(2, s // 2 + 1):
            irr[d] = [f for f in self._monic_polys(d)
                      if self._rootless(f) and not any(
                          self._divides(g, f) for dd in range(2, d)
                          for g in irr.get(dd, ()))]
            for g in irr[d]:
                if self._divides(g, m):
                    return False
        return True

    def _monic_polys(self, d):
        q = self.base.q
        for enc in range(q ** d):
            digits = []
            n = enc
            for _ in range(d):
                digits.append(n % q)
                n //= q
            yield tuple(digits) + (1,)

    def _rootless(self, f):
        base = self.base
        for x in base.elements():
            acc = 0
            for c in reversed(f):
                acc = base.add(base.mul(acc, x), c)
            if acc == 0:
                return False
        return True

    def _divides(self, g, f):
        base = self.base
        f = list(f)
        dg = len(g) - 1
        while len(f) - 1 >= dg:
            c = f[-1]
            if c:
                shift = len(f) - 1 - dg
                for i, gi in enumerate(g):
                    f[shift + i] = base.sub(f[shift + i], base.mul(c, gi))
            f.pop()
        return not any(f)

    def _default_modulus(self):
        for f in self._monic_polys(self.s):
            if self._irreducible(f):
                return f
        raise InvalidInput("no irreducible modulus found")  # unreachable

    def _build_tables(self):
        n = self.q - 1
        factors = _prime_factors(n)
        gen = 1 if n == 1 else None
        for cand in range(2, self.q):
            if gen is not None:
                break
            if all(self._raw_pow(cand, n // f) != 1 for f in factors):
                gen = cand
        if gen is None:
            raise InvalidInput("no generator found")  # unreachable
        self.generator = gen
        exp = [1] * n
        for i in range(1, n):
            exp[i] = self._raw_mul(exp[i - 1], gen)
        log = {1: 0}
        for i in range(1, n):
            log[exp[i]] = i
        # zech[i] = log(1 + g^i), or -1 when 1 + g^i == 0
        zech = [-1] * n
        one = 1
        for i in range(n):
            s = self._raw_add(one, exp[i])
            zech[i] = -1 if s == 0 else log[s]
        self._exp, self._log, self._zech = exp, log, zech

    def _raw_add(self, a, b):
        base = self.base
        va, vb = self._vec(a), self._vec(b)
        return self._int(tuple(base.add(x, y) for x, y in zip(va, vb)))

    def _raw_pow(self, a, k):
        result, bbase = 1, a
        while k:
            if k & 1:
                result = self._raw_mul(result, bbase)
            bbase = self._raw_mul(bbase, bbase)
            k >>= 1
        return result

    # -- arithmetic --

    def add(self, a, b):
        if a == 0:
            return b
        if b == 0:
            return a
        la, lb = self._log[a], self._log[b]
        z = self._zech[(lb - la) % (self.q - 1)]
        if z < 0:
            return 0
        return self._exp[(la + z) % (self.q - 1)]

    def neg(self, a):
        if a == 0 or self.p == 2:
            return a
        return self._exp[(self._log[a] + (self.q - 1) // 2) % (self.q - 1)]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return self._exp[-self._log[a] % (self.q - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, k):
        if a == 0:
            if k < 0:
                raise DivisionByZero("inverse of zero")
            return 0 if k else 1
        return self._exp[(self._log[a] * k) % (self.q - 1)]

    def elements(self):
        return range(self.q)

    def embed(self, a):
        """Image of a base-field element (the identity on int encodings)."""
        return a

    def in_base(self, x):
        """Whether x lies in the embedded base field."""
        return x < self.base.q

    def frobenius_base(self, x):
        """x ** (base.q), the generator of Gal(F_{q^s}/F_q)."""
        return self.pow(x, self.base.q)

    def __repr__(self):
        return f"ExtensionField({self.base!r}, s={self.s})"
