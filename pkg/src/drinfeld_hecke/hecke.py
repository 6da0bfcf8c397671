"""Hecke operator matrices at degree-one primes, from the closed formulas.

Matrices act on coordinate vectors: column j' holds the image of the j'-th
basis cocycle, i.e. (T c)_j = sum_j' M[j, j'] c_j'.  All entries come out
in F_q[T] (denominator 1); the tree oracle reproduces these matrices
independently from the double-coset definition.

The degree-one prime is P = 1 + alpha*T with alpha a unit; 1 - P = -alpha*T
drives every binomial sum below, with binomial coefficients reduced mod p.
"""

from dataclasses import dataclass

from .cocycles import (CUSPIDAL, GroupKind, SpaceSpec, constraints_matrix,
                       dim_space)
from .errors import (GroupMismatch, InternalError, InvalidInput,
                     InvariantViolation, WrongDegree)
from .fields import binom_mod_p
from .linalg import Mat
from .poly import Poly, RatFunc


def poly_is_irreducible(P):
    """Trial-division irreducibility over F_q (small degrees)."""
    d = P.degree
    if d <= 0:
        return False
    if d == 1:
        return True
    field = P.field
    for deg in range(1, d // 2 + 1):
        for enc in range(field.q ** deg):
            digits = []
            n = enc
            for _ in range(deg):
                digits.append(n % field.q)
                n //= field.q
            g = Poly(field, tuple(digits) + (1,))
            if (P % g).is_zero():
                return False
    return True


@dataclass(frozen=True)
class HeckePrime:
    """An irreducible P in F_q[T] with P(0) = 1 (so the ideal is not (T))."""

    field: object
    P: Poly

    def __post_init__(self):
        if self.P.degree < 1:
            raise InvalidInput("Hecke prime must be nonconstant")
        if self.P[0] != 1:
            raise InvalidInput("Hecke prime must have constant term 1")
        if not poly_is_irreducible(self.P):
            raise InvalidInput("Hecke prime must be irreducible")

    @classmethod
    def degree_one(cls, field, alpha):
        if alpha == 0:
            raise InvalidInput("alpha must be a unit")
        return cls(field, Poly(field, (1, alpha)))

    @property
    def degree(self):
        return self.P.degree

    @property
    def alpha(self):
        if self.degree != 1:
            raise WrongDegree("alpha only defined for degree-one primes")
        return self.P[1]


@dataclass(frozen=True)
class HeckeMatrix:
    """A Hecke operator matrix on the basis order of its SpaceSpec."""

    spec: SpaceSpec
    prime: HeckePrime
    mat: Mat

    def __post_init__(self):
        n = dim_space(self.spec)
        if self.mat.rows != n or self.mat.cols != n:
            raise InternalError("Hecke matrix has the wrong size")
        if not self.mat.is_polynomial():
            raise InternalError("Hecke matrix entries must be polynomials")


def lambda_eig(j, k, prime):
    """Eigenvalue polynomial sum_l C(j,l) C(k-2-j,l) (1-P)^l for deg P = 1."""
    if prime.degree != 1:
        raise WrongDegree("lambda_j is defined for degree-one primes")
    if not 0 <= j <= k - 2:
        raise InvalidInput("j out of range")
    field = prime.field
    one_minus_p = Poly(field, (0, field.neg(prime.alpha)))  # 1 - P = -alpha T
    total = Poly.zero(field)
    power = Poly.one(field)
    for l in range(min(j, k - 2 - j) + 1):
        c = field.mul(binom_mod_p(j, l, field.p), binom_mod_p(k - 2 - j, l, field.p))
        total = total + power.scale(c)
        power = power * one_minus_p
    return total


def _powers(base, n):
    out = [Poly.one(base.field)]
    for _ in range(n):
        out.append(out[-1] * base)
    return out


def hecke_matrix_gamma1(spec, prime):
    """Matrix of T_P on the basis c_0..c_(k-2) for Gamma_1(T).

    Row j holds P^(k-2-j) on the diagonal plus the backward shifts
    j - m(q-1) and forward shifts j + n(q-1) with their binomial weights.
    For q >= k only the m = 0 term survives and the matrix is
    diag(lambda_j(P)).
    """
    if spec.group is not GroupKind.GAMMA1:
        raise GroupMismatch("expected a Gamma_1(T) space spec")
    if spec.layer != CUSPIDAL:
        raise InvalidInput("Hecke matrices are built on the cuspidal layer")
    if prime.degree != 1:
        raise WrongDegree("closed formula requires a degree-one prime")
    field = spec.field
    k, q = spec.k, spec.q
    kk = k - 2
    P = prime.P
    one_minus_p = Poly(field, (0, field.neg(prime.alpha)))
    omp = _powers(one_minus_p, kk)  # (1-P)^l
    ppow = _powers(P, kk)           # P^i
    zero = Poly.zero(field)
    rows = [[zero] * (k - 1) for _ in range(k - 1)]
    for j in range(k - 1):
        rows[j][j] = rows[j][j] + ppow[kk - j]
        for m in range(j // (q - 1) + 1):
            tgt = j - m * (q - 1)
            if not 0 <= tgt <= kk:
                raise InternalError("backward Hecke index out of range")
            acc = zero
            for l in range(j - m * (q - 1) + 1):
                c = field.mul(binom_mod_p(j, l + m * (q - 1), field.p),
                              binom_mod_p(kk - j, l, field.p))
                if c and l <= kk:
                    acc = acc + omp[l].scale(c)
            acc = acc - ppow[kk - j].scale(binom_mod_p(j, m * (q - 1), field.p))
            rows[j][tgt] = rows[j][tgt] + acc
        for n in range(1, (kk - j) // (q - 1) + 1):
            tgt = j + n * (q - 1)
            if not 0 <= tgt <= kk:
                raise InternalError("forward Hecke index out of range")
            acc = zero
            for l in range(n * (q - 1), kk - j + 1):
                c = field.mul(binom_mod_p(j, l - n * (q - 1), field.p),
                              binom_mod_p(kk - j, l, field.p))
                if c:
                    acc = acc + omp[l].scale(c)
            acc = acc - (ppow[j].scale(binom_mod_p(kk - j, n * (q - 1), field.p))
                         .shift(n * (q - 1)))
            rows[j][tgt] = rows[j][tgt] + acc
    return HeckeMatrix(spec, prime, Mat.from_rows(field, rows))


def _alpha_entry(i, mi, mprime, k, prime):
    """alpha^(i)_(mi, m') of the block decomposition (no diagonal addition)."""
    field = prime.field
    q = field.q
    kk = k - 2
    j = i + mi * (q - 1)
    one_minus_p = Poly(field, (0, field.neg(prime.alpha)))
    acc = Poly.zero(field)
    power = Poly.one(field)
    for l in range(i + (mi - mprime) * (q - 1) + 1):
        c = field.mul(binom_mod_p(j, l + mprime * (q - 1), field.p),
                      binom_mod_p(kk - j, l, field.p))
        if c:
            acc = acc + power.scale(c)
        power = power * one_minus_p
    acc = acc - (prime.P ** (kk - j)).scale(binom_mod_p(j, mprime * (q - 1), field.p))
    return acc


def _beta_entry(i, mi, n, k, prime):
    """beta^(i)_(mi, n) of the block decomposition."""
    field = prime.field
    q = field.q
    kk = k - 2
    j = i + mi * (q - 1)
    one_minus_p = Poly(field, (0, field.neg(prime.alpha)))
    acc = Poly.zero(field)
    for l in range(n * (q - 1), kk - j + 1):
        c = field.mul(binom_mod_p(j, l - n * (q - 1), field.p),
                      binom_mod_p(kk - j, l, field.p))
        if c:
            acc = acc + (one_minus_p ** l).scale(c)
    acc = acc - ((prime.P ** j)
                 .scale(binom_mod_p(kk - j, n * (q - 1), field.p))
                 .shift(n * (q - 1)))
    return acc


def block_decompose_gamma1(H):
    """Blocks [T_P]_i on the residue sub-bases {c_i, c_(i+q-1), ...}.

    Each extracted block is re-verified against the closed-form alpha/beta
    entries, including the diagonal additions P^(k-2-(i+m_i(q-1))).
    """
    if H.spec.group is not GroupKind.GAMMA1:
        raise GroupMismatch("expected a Gamma_1(T) Hecke matrix")
    field = H.spec.field
    k, q = H.spec.k, H.spec.q
    blocks = []
    for i in range(q - 1):
        idx = list(range(i, k - 1, q - 1))
        block = H.mat.submatrix(idx, idx)
        size = len(idx)
        for mi in range(size):
            for mp in range(size):
                if mp <= mi:
                    expected = _alpha_entry(i, mi, mi - mp, k, H.prime)
                    if mp == mi:
                        expected = expected + H.prime.P ** (k - 2 - idx[mi])
                else:
                    expected = _beta_entry(i, mi, mp - mi, k, H.prime)
                if block[mi, mp] != RatFunc(expected):
                    raise InternalError(
                        "block entry disagrees with the closed form")
        blocks.append((i, block))
    return blocks


def hecke_matrix_gammaT(spec, prime):
    """Matrix of T_P on the c_j^(r) basis (Z-coordinates) for Gamma(T).

    Row (r, j) of the matrix lists, per input coordinate (b, u), the
    coefficient of Z(c, b, u) in Z(T_P c, r, j).  For u with b = r these
    are the diagonal/shift terms; for b != r the (b - r)^(j-u) weights
    appear, with negative exponents computed as field inverses.
    """
    if spec.group is not GroupKind.GAMMA:
        raise GroupMismatch("expected a Gamma(T) space spec")
    if spec.layer != CUSPIDAL:
        raise InvalidInput("Hecke matrices are built on the cuspidal layer")
    if prime.degree != 1:
        raise WrongDegree("closed formula requires a degree-one prime")
    field = spec.field
    k, q = spec.k, spec.q
    kk = k - 2
    residues = spec.residues()
    one_minus_p = Poly(field, (0, field.neg(prime.alpha)))
    omp = _powers(one_minus_p, kk)
    ppow = _powers(prime.P, kk)
    n_dim = (k - 1) * q
    zero = Poly.zero(field)
    rows = [[zero] * n_dim for _ in range(n_dim)]

    def pos(ri, j):
        return ri * (k - 1) + j

    for ri, r in enumerate(residues):
        for j in range(k - 1):
            row = rows[pos(ri, j)]
            row[pos(ri, j)] = row[pos(ri, j)] + ppow[kk - j]
            for n in range(1, (kk - j) // (q - 1) + 1):
                c = binom_mod_p(kk - j, n * (q - 1), field.p)
                term = ppow[j].scale(c).shift(n * (q - 1))
                tgt = pos(ri, j + n * (q - 1))
                row[tgt] = row[tgt] - term
            for bi, b in enumerate(residues):
                if b == r:
                    continue
                br = field.sub(b, r)
                for u in range(j + 1):
                    # P^(k-2-j) C(j,u) - sum_l C(j,u-l) C(k-2-j,l) (1-P)^l
                    acc = ppow[kk - j].scale(binom_mod_p(j, u, field.p))
                    for l in range(u + 1):
                        c = field.mul(binom_mod_p(j, u - l, field.p),
                                      binom_mod_p(kk - j, l, field.p))
                        if c:
                            acc = acc - omp[l].scale(c)
                    w = field.pow(br, j - u)
                    if not acc.is_zero():
                        row[pos(bi, u)] = row[pos(bi, u)] + acc.scale(w)
                for u in range(j + 1, k - 1):
                    acc = zero
                    for l in range(u - j, kk - j + 1):
                        c = field.mul(binom_mod_p(j, u - l, field.p),
                                      binom_mod_p(kk - j, l, field.p))
                        if c:
                            acc = acc + omp[l].scale(c)
                    w = field.pow(br, j - u)  # negative exponent: inverse
                    if not acc.is_zero():
                        row[pos(bi, u)] = row[pos(bi, u)] - acc.scale(w)
    return HeckeMatrix(spec, prime, Mat.from_rows(field, rows))


def hecke_matrix_gammaT_reduced(spec, prime):
    """The reduced Gamma(T) formula, valid for q >= k (cross-check form).

    Entries: alpha_u(j,P) (b-r)^(j-u) for u < j (all b), the diagonal
    lambda_j(P) plus the constant block [P^(k-2-j) - lambda_j(P)] at u = j,
    and -beta_u(j,P) (b-r)^(j-u) for u > j (b != r).
    """
    if spec.group is not GroupKind.GAMMA:
        raise GroupMismatch("expected a Gamma(T) space spec")
    if spec.q < spec.k:
        raise InvalidInput("reduced formula requires q >= k")
    field = spec.field
    k, q = spec.k, spec.q
    kk = k - 2
    residues = spec.residues()
    one_minus_p = Poly(field, (0, field.neg(prime.alpha)))
    omp = _powers(one_minus_p, kk)
    ppow = _powers(prime.P, kk)
    zero = Poly.zero(field)
    n_dim = (k - 1) * q
    rows = [[zero] * n_dim for _ in range(n_dim)]

    def pos(ri, j):
        return ri * (k - 1) + j

    def alpha_u(u, j):
        acc = ppow[kk - j].scale(binom_mod_p(j, u, field.p))
        for l in range(u + 1):
            c = field.mul(binom_mod_p(j, u - l, field.p),
                          binom_mod_p(kk - j, l, field.p))
            if c:
                acc = acc - omp[l].scale(c)
        return acc

    def beta_u(u, j):
        acc = zero
        for l in range(u - j, kk - j + 1):
            c = field.mul(binom_mod_p(j, u - l, field.p),
                          binom_mod_p(kk - j, l, field.p))
            if c:
                acc = acc + omp[l].scale(c)
        return acc

    for ri, r in enumerate(residues):
        for j in range(k - 1):
            row = rows[pos(ri, j)]
            lam = lambda_eig(j, k, prime)
            const_j = ppow[kk - j] - lam
            for bi, b in enumerate(residues):
                for u in range(j):
                    br = field.sub(b, r)
                    if br == 0:
                        continue
                    w = field.pow(br, j - u)
                    a = alpha_u(u, j)
                    if not a.is_zero():
                        row[pos(bi, u)] = row[pos(bi, u)] + a.scale(w)
                row[pos(bi, j)] = row[pos(bi, j)] + const_j
                if bi == ri:
                    row[pos(bi, j)] = row[pos(bi, j)] + lam
                for u in range(j + 1, k - 1):
                    if b == r:
                        continue
                    w = field.pow(field.sub(b, r), j - u)
                    bu = beta_u(u, j)
                    if not bu.is_zero():
                        row[pos(bi, u)] = row[pos(bi, u)] - bu.scale(w)
    return HeckeMatrix(spec, prime, Mat.from_rows(field, rows))


def restrict_double_cusp(H):
    """Restriction of H to the double-cusp subspace, in its kernel basis.

    Verifies exactly that H maps the subspace into itself; a failure
    raises InvariantViolation (it would mean a formula bug).
    """
    spec = H.spec
    cmat = constraints_matrix(spec)
    rref_rows, pivots = cmat.rref()
    free = [c for c in range(cmat.cols) if c not in pivots]
    kernel = cmat.nullspace()
    field = spec.field
    nu = len(kernel)
    if nu == 0:
        return Mat.zero(field, 0, 0)
    images = [H.mat.apply(v) for v in kernel]
    rows = [[images[i][f] for i in range(nu)] for f in free]
    R = Mat.from_rows(field, rows)
    # verify: sum_j R[j][i] kernel_j == images[i]
    for i in range(nu):
        recon = [RatFunc.zero(field)] * len(kernel[0])
        for jj in range(nu):
            c = R[jj, i]
            if c:
                recon = [x + c * y for x, y in zip(recon, kernel[jj])]
        if tuple(recon) != tuple(images[i]):
            raise InvariantViolation(
                "operator does not preserve the double-cusp subspace")
    return R


def conjectured_eigenvalue(j, k, prime):
    """Product of lambda_j over the conjugate degree-one factors of P.

    Builds F_{q^d} = F_q[theta]/(P), takes theta the class of T, computes
    prod_i lambda_j(1 - theta^(-q^i) T) over F_{q^d}[T], checks the result
    is Galois invariant, and returns it as a polynomial over F_q.
    """
    from .fields import ExtensionField

    field = prime.field
    d = prime.degree
    if not 0 <= j <= k - 2:
        raise InvalidInput("j out of range")
    # monic normalisation defines the same quotient ring
    pm = prime.P.monic()
    ext = ExtensionField(field, d, modulus=pm.coeffs)
    theta = field.q if d > 1 else field.neg(pm[0])  # class of T
    kk = k - 2
    # factors: lambda_j(Q_i) with 1 - Q_i = theta^(-q^i) T
    total = [1]  # polynomial over ext, ascending
    for i in range(d):
        beta = ext.pow(ext.inv(theta), field.q ** i)
        factor = [0] * (min(j, kk - j) + 1)
        for l in range(min(j, kk - j) + 1):
            c = field.mul(binom_mod_p(j, l, field.p),
                          binom_mod_p(kk - j, l, field.p))
            factor[l] = ext.mul(ext.embed(c), ext.pow(beta, l))
        total = _ext_poly_mul(total, factor, ext)
    while total and total[-1] == 0:
        total.pop()
    frob = [ext.frobenius_base(c) for c in total]
    if frob != total:
        raise InternalError("conjectured eigenvalue is not Galois invariant")
    for c in total:
        if not ext.in_base(c):
            raise InternalError("conjectured eigenvalue has a coefficient "
                                "outside F_q")
    result = Poly(field, total)
    if 2 * result.degree > d * kk:
        raise InternalError("conjectured eigenvalue exceeds its degree bound")
    return result


def _ext_poly_mul(a, b, ext):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for jj, bj in enumerate(b):
                if bj:
                    out[i + jj] = ext.add(out[i + jj], ext.mul(ai, bj))
    return out


def commutes(H1, H2):
    """Exact equality of the two operator products."""
    if H1.spec != H2.spec:
        raise GroupMismatch("Hecke matrices on different spaces")
    return H1.mat * H2.mat == H2.mat * H1.mat
