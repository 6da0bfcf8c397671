"""Coordinate model of harmonic cocycles for Gamma_1(T) and Gamma(T).

A cocycle for Gamma_1(T) is determined by its functional value at the
single stable edge; we use the k-1 coordinates c(gamma_0)(X^j Y^(k-2-j)),
j = 0..k-2.  A cocycle for Gamma(T) is determined by its values at the q
stable edges gamma_r, r in F_q, written in the shifted bases: the
coordinate Z(c, r, j) = c(gamma_r)((X - rY)^j Y^(k-2-j)).  Coordinates
are ordered r-major with r enumerated as 0, a, a^2, ..., a^(q-1) for the
field generator a (so the last residue is 1), then j ascending; this is
the order all matrices in this package use.

The genus/cusp data is (g, h) = (0, 2) for Gamma_1(T) and (0, q+1) for
Gamma(T).
"""

import enum
from dataclasses import dataclass

from .errors import GroupMismatch, InvalidInput
from .fields import binom_mod_p
from .linalg import Mat
from .poly import RatFunc


class GroupKind(enum.Enum):
    GAMMA1 = "gamma1"
    GAMMA = "gammaT"

    @classmethod
    def parse(cls, text):
        for kind in cls:
            if kind.value.lower() == text.lower():
                return kind
        raise InvalidInput(f"unknown group {text!r}")


CUSPIDAL = "cuspidal"
DOUBLE_CUSPIDAL = "double-cuspidal"


def genus_cusps(group, q):
    if group is GroupKind.GAMMA1:
        return 0, 2
    return 0, q + 1


@dataclass(frozen=True)
class SpaceSpec:
    """A space of cusp forms: field, weight k, type m, group, layer."""

    field: object
    k: int
    group: GroupKind
    layer: str = CUSPIDAL
    m: int = 1  # type; metadata only, never enters matrix entries

    def __post_init__(self):
        if self.k < 2:
            raise InvalidInput("weight must be at least 2")
        if self.layer not in (CUSPIDAL, DOUBLE_CUSPIDAL):
            raise InvalidInput(f"unknown layer {self.layer!r}")

    @property
    def q(self):
        return self.field.q

    def residues(self):
        """The elements of F_q in the fixed order 0, a, a^2, ..., a^(q-1)."""
        f = self.field
        return [0] + [f.pow(f.generator, i) for i in range(1, self.q)]

    def dim(self):
        return dim_space(self)

    def index_of(self, r, j):
        """Flat coordinate index of (r, j) for Gamma(T)."""
        if self.group is not GroupKind.GAMMA:
            raise GroupMismatch("(r, j) indices apply to Gamma(T) only")
        return self.residues().index(r) * (self.k - 1) + j

    def labels(self):
        """Basis labels in coordinate order."""
        if self.group is GroupKind.GAMMA1:
            return [f"c_{j}" for j in range(self.k - 1)]
        f = self.field
        return [f"c_{j}^({f.format_element(r)})"
                for r in self.residues() for j in range(self.k - 1)]

    def with_layer(self, layer):
        return SpaceSpec(self.field, self.k, self.group, layer, self.m)


def dim_space(spec):
    """Dimension of the cuspidal or double-cuspidal space."""
    if spec.k < 2:
        raise InvalidInput("weight must be at least 2")
    g, h = genus_cusps(spec.group, spec.q)
    if spec.layer == CUSPIDAL:
        return (spec.k - 1) * (g + h - 1)
    if spec.k == 2:
        return g
    return (spec.k - 2) * (g + h - 1) + g - 1


@dataclass(frozen=True)
class CocycleVector:
    """Coordinates of a harmonic cocycle on the stable-edge basis."""

    spec: SpaceSpec
    coords: tuple

    def __post_init__(self):
        expected = _coord_len(self.spec)
        if len(self.coords) != expected:
            raise InvalidInput(
                f"coordinate length {len(self.coords)} != {expected}")

    def __add__(self, other):
        if self.spec != other.spec:
            raise GroupMismatch("cocycles from different spaces")
        return CocycleVector(self.spec,
                             tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        if self.spec != other.spec:
            raise GroupMismatch("cocycles from different spaces")
        return CocycleVector(self.spec,
                             tuple(a - b for a, b in zip(self.coords, other.coords)))

    def scale(self, c):
        c = RatFunc.of(c)
        return CocycleVector(self.spec, tuple(c * a for a in self.coords))


def _coord_len(spec):
    if spec.group is GroupKind.GAMMA1:
        return spec.k - 1
    return (spec.k - 1) * spec.q


def basis(spec):
    """The standard cuspidal basis as CocycleVectors (unit coordinates)."""
    if spec.layer != CUSPIDAL:
        raise InvalidInput("basis() applies to the cuspidal layer")
    n = _coord_len(spec)
    field = spec.field
    zero, one = RatFunc.zero(field), RatFunc.one(field)
    out = []
    for i in range(n):
        coords = [zero] * n
        coords[i] = one
        out.append(CocycleVector(spec, tuple(coords)))
    return out


def double_cusp_constraints(spec):
    """Linear functionals (coordinate rows) cutting out the double-cusp layer.

    Gamma_1(T): the coordinates j = 0 and j = k-2 must vanish (one single
    functional when k = 2).  Gamma(T): Z(c, r, k-2) = 0 for every r, plus
    sum_r Z(c, r, 0) = 0, the value of the cocycle at gamma_infinity
    rewritten through harmonicity.
    """
    field = spec.field
    n = _coord_len(spec)
    zero, one = RatFunc.zero(field), RatFunc.one(field)
    rows = []
    if spec.group is GroupKind.GAMMA1:
        row = [zero] * n
        row[0] = one
        rows.append(tuple(row))
        if spec.k > 2:
            row = [zero] * n
            row[spec.k - 2] = one
            rows.append(tuple(row))
        return rows
    k = spec.k
    residues = spec.residues()
    for ri in range(len(residues)):
        row = [zero] * n
        row[ri * (k - 1) + (k - 2)] = one
        rows.append(tuple(row))
    if k > 2:
        row = [zero] * n
        for ri in range(len(residues)):
            row[ri * (k - 1)] = one
        rows.append(tuple(row))
    return rows


def constraints_matrix(spec):
    rows = double_cusp_constraints(spec)
    return Mat.from_rows(spec.field, [list(r) for r in rows])


def double_cusp_basis(spec):
    """Deterministic basis (nullspace of the constraints) of the double-cusp layer."""
    return constraints_matrix(spec).nullspace()


def basis_change_xy_to_shifted(r, k, field):
    """(k-1)x(k-1) matrix S(r) sending monomial coordinates to shifted ones.

    Row j of S(r) expands (X - rY)^j Y^(k-2-j) over the X^i Y^(k-2-i), so
    for a functional w the vector S(r) (w(X^i Y^(k-2-i)))_i lists the
    values w((X - rY)^j Y^(k-2-j)).  S(0) is the identity and
    S(r)^(-1) = S(-r).
    """
    if k < 2:
        raise InvalidInput("weight must be at least 2")
    zero = RatFunc.zero(field)
    rows = []
    for j in range(k - 1):
        row = [zero] * (k - 1)
        for i in range(j + 1):
            c = binom_mod_p(j, i, field.p)
            sign = field.pow(field.neg(r), j - i)
            row[i] = RatFunc.constant(field, field.mul(c, sign))
        rows.append(row)
    return Mat.from_rows(field, rows)
