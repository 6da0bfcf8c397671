"""Eigenstructure of Hecke matrices: rational eigenvalues, eigenspaces,
multiplicities, and a diagonalizability certificate valid in
characteristic p.

Diagonalizability over the algebraic closure is decided by separability
of the minimal polynomial (gcd with its formal derivative), never by
factoring over F_q(T).  Rational eigenvalue searches combine candidate
testing with a specialisation sweep; every reported eigenvalue is
verified exactly by kernel computation, so the sweep can only miss
nothing and report nothing wrong.
"""

from dataclasses import dataclass, field as dc_field

from .errors import ShapeError
from .fastlinalg import (DEFAULT_SEED, charpoly_auto, eigenvalue_sweep,
                         nullspace_auto)
from .hecke import lambda_eig
from .cocycles import GroupKind, constraints_matrix
from .linalg import UPoly, upoly_separable
from .poly import Poly, RatFunc


@dataclass
class EigenReport:
    """Complete eigen-analysis of one matrix."""

    matrix_ref: dict
    size: int
    charpoly: UPoly
    minpoly: UPoly
    rational_eigs: list  # (Poly, algebraic mult, geometric mult, eigenbasis)
    irrational_part: list  # (UPoly factor of minpoly, charpoly mult, separable)
    diagonalizable: bool
    certificate: dict = dc_field(default_factory=dict)

    def eigenvalue_set(self):
        return [lam for lam, _, _, _ in self.rational_eigs]

    def geometric_dim(self, lam):
        for l, _, g, _ in self.rational_eigs:
            if l == lam:
                return g
        return 0


def eigenspace(M, lam, seed=DEFAULT_SEED):
    """Exact kernel basis of M - lam*I (empty when lam is no eigenvalue)."""
    if not M.is_square():
        raise ShapeError("eigenspace of a non-square matrix")
    return nullspace_auto(M.minus_scalar(lam), seed)


def rational_eigenvalues(M, degree_bound, candidates=(), seed=DEFAULT_SEED):
    """All lam in F_q[T] with det(M - lam I) = 0 and deg lam <= degree_bound.

    Tests the supplied candidates first, then runs the specialisation
    sweep for completeness; every returned value is certified by an
    exact nonzero kernel.
    """
    if not M.is_square():
        raise ShapeError("eigenvalues of a non-square matrix")
    seen = []
    for lam in candidates:
        if lam not in seen and lam.degree <= degree_bound:
            seen.append(lam)
    for lam in eigenvalue_sweep(M, degree_bound, seed):
        if lam not in seen:
            seen.append(lam)
    out = []
    for lam in seen:
        if eigenspace(M, lam, seed):
            out.append(lam)
    return sorted(out, key=lambda p: (p.degree, p.coeffs))


def diagonalizable(M, minpoly=None):
    """(verdict, certificate): separability of the minimal polynomial."""
    if not M.is_square():
        raise ShapeError("diagonalizability of a non-square matrix")
    mp = minpoly if minpoly is not None else M.minpoly()
    fp = mp.derivative()
    g = mp.gcd(fp) if not fp.is_zero() else mp.monic()
    verdict = upoly_separable(mp)
    return verdict, {"minpoly": mp, "gcd_with_derivative": g}


def _alg_mult(cp, lam):
    """Multiplicity of the root lam in cp, by repeated exact division."""
    factor = UPoly.x_minus(cp.field, RatFunc.of(lam))
    mult = 0
    while True:
        q, r = divmod(cp, factor)
        if not r.is_zero():
            return mult, cp
        cp = q
        mult += 1


def _squarefreeish_factors(f):
    """Split f into pairwise-coprime pieces by gcd-with-derivative chains.

    Not a full irreducible factorisation (a non-goal); for the degrees
    arising here (<= 2 after removing rational roots) each piece is
    certified irreducible by rational-rootlessness.
    """
    out = []
    work = [f]
    while work:
        g = work.pop()
        if g.degree <= 0:
            continue
        gp = g.derivative()
        if gp.is_zero():
            out.append(g.monic())
            continue
        h = g.gcd(gp)
        if h.degree == 0:
            out.append(g.monic())
        else:
            work.append(h)
            work.append(g // h)
    # merge duplicates
    merged = []
    for g in out:
        if g not in merged:
            merged.append(g)
    return merged


def analyze(H, candidates=None, degree_bound=None, seed=DEFAULT_SEED):
    """Full EigenReport for a Hecke matrix (or raw matrix via ref dict).

    candidates default to the lambda_j(P); for Gamma(T) inputs the report
    additionally cross-checks that every eigenvector with eigenvalue != 1
    satisfies the double-cusp constraints.
    """
    spec, prime, M = H.spec, H.prime, H.mat
    k = spec.k
    if candidates is None:
        candidates = []
        for j in range(k - 1):
            lam = lambda_eig(j, k, prime)
            if lam not in candidates:
                candidates.append(lam)
    if degree_bound is None:
        degree_bound = max((prime.degree * (k - 2)) // 2,
                           max((c.degree for c in candidates), default=0))
    cp = charpoly_auto(M, seed)
    mp = M.minpoly()
    eigs = rational_eigenvalues(M, degree_bound, candidates, seed)
    rational = []
    cp_rest = cp
    mp_rest = mp
    for lam in eigs:
        amult, cp_rest = _alg_mult(cp_rest, lam)
        _, mp_rest = _alg_mult(mp_rest, lam)
        basis = eigenspace(M, lam, seed)
        rational.append((lam, amult, len(basis), basis))
    irrational = []
    for g in _squarefreeish_factors(mp_rest):
        gmult = 0
        rest = cp_rest
        while True:
            qd, rd = divmod(rest, g)
            if not rd.is_zero():
                break
            rest, gmult = qd, gmult + 1
        irrational.append((g, gmult, upoly_separable(g)))
    verdict, cert = diagonalizable(M, minpoly=mp)
    report = EigenReport(
        matrix_ref=_ref_of(H),
        size=M.rows,
        charpoly=cp,
        minpoly=mp,
        rational_eigs=rational,
        irrational_part=irrational,
        diagonalizable=verdict,
        certificate=cert,
    )
    _check_multiplicity_budget(report)
    if spec.group is GroupKind.GAMMA:
        _check_nontrivial_eigs_are_double_cusp(H, report)
    return report


def _ref_of(H):
    return {
        "group": H.spec.group.value,
        "field": H.spec.field.spec_string(),
        "k": H.spec.k,
        "layer": H.spec.layer,
        "prime": H.prime.P.to_string(),
    }


def _check_multiplicity_budget(report):
    from .errors import InternalError

    total = sum(a for _, a, _, _ in report.rational_eigs)
    total += sum(g.degree * m for g, m, _ in report.irrational_part)
    if total != report.size:
        raise InternalError("eigenvalue multiplicities do not sum to the size")
    for lam, a, g, _ in report.rational_eigs:
        if g > a:
            raise InternalError("geometric multiplicity exceeds algebraic")


def _check_nontrivial_eigs_are_double_cusp(H, report):
    """Eigenvectors with eigenvalue != 1 must satisfy the cusp constraints."""
    from .errors import InternalError

    spec = H.spec
    one = Poly.one(spec.field)
    cmat = constraints_matrix(spec)
    for lam, _, _, basis in report.rational_eigs:
        if lam == one:
            continue
        for v in basis:
            if any(cmat.apply(v)):
                raise InternalError(
                    "eigenvector with eigenvalue != 1 escapes the "
                    "double-cusp subspace")
