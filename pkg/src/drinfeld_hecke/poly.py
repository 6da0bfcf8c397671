"""Polynomials F_q[T] and rational functions F_q(T), exact and immutable.

A ``Poly`` stores ascending coefficients as a tuple of field-element ints
with no trailing zeros (the zero polynomial has an empty tuple).  A
``RatFunc`` is a reduced fraction num/den with monic denominator and
gcd(num, den) = 1; zero is 0/1.  Both carry their field context, and
mixing contexts raises.

Multiplication over prime fields packs coefficient vectors into big ints
so the heavy lifting happens in C; everything else is straightforward
schoolbook arithmetic on tuples.
"""

from .errors import DivisionByZero, InvalidInput

_PACK_MIN_LEN = 12  # below this, schoolbook beats packing overhead


class Poly:
    """Dense univariate polynomial over a finite field, indeterminate T."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs=()):
        n = len(coeffs)
        while n and coeffs[n - 1] == 0:
            n -= 1
        self.field = field
        self.coeffs = tuple(coeffs[:n])

    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def one(cls, field):
        return cls(field, (1,))

    @classmethod
    def constant(cls, field, c):
        return cls(field, (c,))

    @classmethod
    def t(cls, field):
        return cls(field, (0, 1))

    @classmethod
    def t_power(cls, field, n):
        return cls(field, (0,) * n + (1,))

    @property
    def degree(self):
        """Degree, with the convention deg 0 = -1."""
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_one(self):
        return self.coeffs == (1,)

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def lead(self):
        if not self.coeffs:
            raise InvalidInput("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def _check(self, other):
        if self.field is not other.field and self.field != other.field:
            raise InvalidInput("mixed field contexts")

    def __add__(self, other):
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        add = self.field.add
        out = list(a)
        for i, c in enumerate(b):
            out[i] = add(out[i], c)
        return Poly(self.field, out)

    def __neg__(self):
        neg = self.field.neg
        return Poly(self.field, tuple(neg(c) for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(self.field)
        field = self.field
        if field.e == 1 and min(len(a), len(b)) >= _PACK_MIN_LEN:
            return Poly(field, _mul_packed(a, b, field.p))
        out = [0] * (len(a) + len(b) - 1)
        add, mul = field.add, field.mul
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] = add(out[i + j], mul(ai, bj))
        return Poly(field, out)

    def scale(self, c):
        mul = self.field.mul
        return Poly(self.field, tuple(mul(c, x) for x in self.coeffs))

    def shift(self, n):
        """Multiply by T^n."""
        if not self.coeffs:
            return self
        return Poly(self.field, (0,) * n + self.coeffs)

    def __pow__(self, n):
        if n < 0:
            raise InvalidInput("negative power of a Poly; use RatFunc")
        result = Poly.one(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        self._check(other)
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        field = self.field
        rem = list(self.coeffs)
        db = other.degree
        inv_lead = field.inv(other.lead())
        quot = [0] * max(len(rem) - db, 0)
        sub, mul = field.sub, field.mul
        while len(rem) - 1 >= db and rem:
            c = mul(rem[-1], inv_lead)
            k = len(rem) - 1 - db
            quot[k] = c
            for i, bi in enumerate(other.coeffs):
                rem[k + i] = sub(rem[k + i], mul(c, bi))
            while rem and rem[-1] == 0:
                rem.pop()
        return Poly(field, quot), Poly(field, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.lead()))

    def gcd(self, other):
        """Monic greatest common divisor."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other):
        """(g, x, y) with g = gcd (monic) and x*self + y*other = g."""
        field = self.field
        a, b = self, other
        xa, ya = Poly.one(field), Poly.zero(field)
        xb, yb = Poly.zero(field), Poly.one(field)
        while not b.is_zero():
            q, r = divmod(a, b)
            a, b = b, r
            xa, xb = xb, xa - q * xb
            ya, yb = yb, ya - q * yb
        if a.is_zero():
            return a, xa, ya
        c = field.inv(a.lead())
        return a.scale(c), xa.scale(c), ya.scale(c)

    def evaluate(self, x):
        """Value at a point of the coefficient field."""
        field = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = field.add(field.mul(acc, x), c)
        return acc

    def evaluate_in(self, ext, x):
        """Value at a point of an extension field (base embeds as ints)."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = ext.add(ext.mul(acc, x), c)
        return acc

    def map_coeffs(self, fn, field=None):
        return Poly(field or self.field, tuple(fn(c) for c in self.coeffs))

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return other == self
        return (isinstance(other, Poly) and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.coeffs, self.field.q))

    def to_string(self):
        """Comma-separated ascending coefficients ("" is not used; zero is "0")."""
        if not self.coeffs:
            return self.field.format_element(0)
        return ",".join(self.field.format_element(c) for c in self.coeffs)

    def __repr__(self):
        return f"Poly[{self.to_string()}]"


def _mul_packed(a, b, p):
    """Multiply coefficient tuples over F_p via big-int packing."""
    bits = ((p - 1) * (p - 1) * min(len(a), len(b))).bit_length() + 1
    mask = (1 << bits) - 1
    ai = 0
    for c in reversed(a):
        ai = (ai << bits) | c
    bi = 0
    for c in reversed(b):
        bi = (bi << bits) | c
    prod = ai * bi
    n = len(a) + len(b) - 1
    out = [0] * n
    for i in range(n):
        out[i] = (prod & mask) % p
        prod >>= bits
    return out


def parse_poly(field, text):
    """Parse the comma-separated ascending-coefficient format."""
    text = text.strip()
    if not text:
        raise InvalidInput("empty polynomial string")
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
            continue
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        cur.append(ch)
    parts.append("".join(cur))
    return Poly(field, tuple(field.parse_element(s) for s in parts))


class RatFunc:
    """Reduced fraction of polynomials; the coefficient field F_q(T)."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _normalized=False):
        if den is None:
            den = Poly.one(num.field)
        if _normalized:
            self.num, self.den = num, den
            return
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = num, Poly.one(num.field)
            return
        if not den.is_one():
            g = num.gcd(den)
            if not g.is_one():
                num, den = num // g, den // g
            c = den.lead()
            if c != 1:
                inv = num.field.inv(c)
                num, den = num.scale(inv), den.scale(inv)
        self.num, self.den = num, den

    @classmethod
    def zero(cls, field):
        return cls(Poly.zero(field), Poly.one(field), _normalized=True)

    @classmethod
    def one(cls, field):
        return cls(Poly.one(field), Poly.one(field), _normalized=True)

    @classmethod
    def constant(cls, field, c):
        return cls(Poly.constant(field, c), Poly.one(field), _normalized=True)

    @classmethod
    def of(cls, value):
        if isinstance(value, RatFunc):
            return value
        if isinstance(value, Poly):
            return cls(value)
        raise InvalidInput(f"cannot coerce {value!r} to RatFunc")

    @property
    def field(self):
        return self.num.field

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def is_polynomial(self):
        return self.den.is_one()

    def as_poly(self):
        if not self.den.is_one():
            raise InvalidInput("rational function is not a polynomial")
        return self.num

    def __bool__(self):
        return not self.num.is_zero()

    def __add__(self, other):
        other = RatFunc.of(other)
        if self.den.is_one() and other.den.is_one():
            return RatFunc(self.num + other.num, _normalized=True)
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    def __neg__(self):
        return RatFunc(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        return self + (-RatFunc.of(other))

    def __mul__(self, other):
        other = RatFunc.of(other)
        if self.den.is_one() and other.den.is_one():
            return RatFunc(self.num * other.num, _normalized=True)
        return RatFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        other = RatFunc.of(other)
        if other.is_zero():
            raise DivisionByZero("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def inv(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        return RatFunc(self.den, self.num)

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        return RatFunc(self.num ** n, self.den ** n)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.den.is_one() and self.num == other
        return (isinstance(other, RatFunc) and self.num == other.num
                and self.den == other.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def evaluate_in(self, ext, x):
        """Value at an extension-field point; raises on a pole."""
        d = self.den.evaluate_in(ext, x)
        if d == 0:
            raise DivisionByZero("pole at specialisation point")
        return ext.mul(self.num.evaluate_in(ext, x), ext.inv(d))

    def to_string(self):
        s = self.num.to_string()
        if self.den.is_one():
            return s
        return s + " / " + self.den.to_string()

    def __repr__(self):
        return f"RatFunc[{self.to_string()}]"


def parse_ratfunc(field, text):
    if " / " in text:
        num_s, den_s = text.split(" / ", 1)
        return RatFunc(parse_poly(field, num_s), parse_poly(field, den_s))
    return RatFunc(parse_poly(field, text))
