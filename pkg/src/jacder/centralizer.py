"""Commutation structure around Jacobian derivations.

Derivations commuting with D_f form a free module over Q[p] (p the kernel
generator of f) of rank 1 or 2.  The solver finds the bounded slice of that
module as a nullspace, certifies rank 2 with an explicit witness, picks the
generator T0 whose induced action on p has minimal degree, and decomposes
arbitrary members against the pair (T0, D_p).  Eigenfunction search reduces
D_f to its maximal invariant subspace of bounded degree and reads rational
eigenvalues off the characteristic polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from jacder.derivation import Derivation, jacobian_derivation, potential
from jacder.errors import (
    BoundTooSmall,
    ConstantInput,
    DivisibilityViolation,
    InternalInconsistency,
    NotInCentralizer,
    NotRankTwo,
    NotUnitEigenpair,
)
from jacder.kernel import decompose, is_closed, kernel_generator, membership
from jacder.linsolve import (
    LinearSystem,
    charpoly,
    rational_roots,
    rref,
    solve_linear,
    system_from_poly_columns,
)
from jacder.poly import (
    BivarPoly,
    Monomial,
    RationalFunction1,
    UnivarPoly,
    compose,
    exact_divide,
    grlex_key,
    monomials_upto,
)


class CertStatus(Enum):
    RANK_TWO_CERTIFIED = "rank_two_certified"
    RANK_ONE_UP_TO_BOUND = "rank_one_up_to_bound"


@dataclass(frozen=True)
class CriterionReport:
    """Outcome of the composite commutation criterion for (T, f)."""

    commutes: bool
    psi: Optional[UnivarPoly]
    lhs: Optional[BivarPoly]
    rhs: Optional[BivarPoly]


@dataclass(frozen=True)
class CentralizerResult:
    """Generators of the centralizer of D_f found within a degree bound."""

    rank: int
    generator_dp: Derivation
    generator_t0: Optional[Derivation]
    psi0: Optional[UnivarPoly]
    degree_bound: int
    certified: CertStatus


@dataclass(frozen=True)
class EigenPair:
    """Nonzero rational eigenvalue with a normalized polynomial eigenfunction."""

    g: BivarPoly
    lam: Fraction


@dataclass(frozen=True)
class OdeSystem:
    """Autonomous planar system dx/dt = rhs_x, dy/dt = rhs_y."""

    rhs_x: BivarPoly
    rhs_y: BivarPoly
    first_integrals: Tuple[BivarPoly, ...]
    commuting_fields: Tuple[Derivation, ...]


def commute_check(t: Derivation, d: Derivation) -> bool:
    """True when [t, d] = 0."""
    return t.bracket(d).is_zero


def criterion_check(t: Derivation, f: BivarPoly) -> CriterionReport:
    """Commutation test for [t, D_f] = 0 without forming the bracket.

    Writes f = theta(p) and checks that t maps p to some psi(p) and that
    theta''(p)*psi(p) = theta'(p)*(div t - psi'(p)).
    """
    if f.is_constant:
        raise ConstantInput("criterion needs a nonconstant polynomial")
    dec = decompose(f)
    psi = membership(t.apply(dec.p), dec.p)
    if psi is None:
        return CriterionReport(False, None, None, None)
    theta_d = dec.theta.derivative()
    theta_dd = theta_d.derivative()
    lhs = theta_dd(dec.p) * psi(dec.p)
    rhs = theta_d(dec.p) * (t.divergence() - psi.derivative()(dec.p))
    return CriterionReport(lhs == rhs, psi, lhs, rhs)


def corollary4_check(t: Derivation, f: BivarPoly) -> bool:
    """Simplified commutation test valid when f generates its own kernel.

    Requires t(f) = psi(f) and div t = psi'(f); raises NotClosed otherwise.
    """
    from jacder.errors import NotClosed

    if not is_closed(f):
        raise NotClosed("f is a proper composite; use criterion_check")
    psi = membership(t.apply(f), f)
    if psi is None:
        return False
    return t.divergence() == psi.derivative()(f)


def _vector_of(t: Derivation, monos: Sequence[Monomial]) -> list[Fraction]:
    """Concatenated coefficient vector (P block then Q block)."""
    return [t.P.coeff(m) for m in monos] + [t.Q.coeff(m) for m in monos]


def _derivation_of(vec: Sequence[Fraction], monos: Sequence[Monomial]) -> Derivation:
    half = len(monos)
    p = BivarPoly(zip(monos, vec[:half]))
    q = BivarPoly(zip(monos, vec[half:]))
    return Derivation(p, q)


def _centralizer_nullspace(f: BivarPoly, bound: int) -> Tuple[list[Derivation], list[Monomial]]:
    """Basis of {T : [T, D_f] = 0, deg components <= bound} via one linear solve."""
    deriv = jacobian_derivation(f)
    a, b = deriv.P, deriv.Q
    ax, ay = a.partial_x(), a.partial_y()
    bx, by = b.partial_x(), b.partial_y()
    monos = monomials_upto(bound)
    columns = []
    for m in monos:  # P-block unknowns
        mono = BivarPoly.monomial(m)
        mono_x, mono_y = mono.partial_x(), mono.partial_y()
        comp1 = mono * ax - a * mono_x - b * mono_y
        comp2 = mono * bx
        columns.append((comp1, comp2))
    for m in monos:  # Q-block unknowns
        mono = BivarPoly.monomial(m)
        comp1 = mono * ay
        comp2 = mono * by - a * mono.partial_x() - b * mono.partial_y()
        columns.append((comp1, comp2))
    # stack both bracket components into one homogeneous system
    monos1: set = set()
    monos2: set = set()
    for c1, c2 in columns:
        monos1.update(c1.monomials())
        monos2.update(c2.monomials())
    rows1 = sorted(monos1, key=grlex_key, reverse=True)
    rows2 = sorted(monos2, key=grlex_key, reverse=True)
    matrix = [
        tuple(col[0].coeff(m) for col in columns) for m in rows1
    ] + [
        tuple(col[1].coeff(m) for col in columns) for m in rows2
    ]
    system = LinearSystem(tuple(matrix), tuple(Fraction(0) for _ in matrix), ncols=len(columns))
    solution = solve_linear(system)
    basis = [_derivation_of(vec, monos) for vec in solution.nullspace]
    return basis, monos


def _minimal_psi_row(psis: Sequence[UnivarPoly]) -> Tuple[list[Fraction], UnivarPoly, list[list[Fraction]]]:
    """Combination of the psi list with minimal-degree nonzero value.

    Returns (combination, monic psi0, kernel combinations with zero psi).
    Coefficient columns are ordered from the highest power down, so the
    echelon row with the lowest pivot power realizes the minimal degree.
    """
    width = max(int(p.degree) for p in psis if not p.is_zero) + 1
    count = len(psis)
    rows = []
    for i, p in enumerate(psis):
        coeff_desc = [p.coeff(width - 1 - j) for j in range(width)]
        augment = [Fraction(int(i == j)) for j in range(count)]
        rows.append(coeff_desc + augment)
    pr = 0
    pivot_cols = []
    for col in range(width):
        pivot_row = next((r for r in range(pr, len(rows)) if rows[r][col]), None)
        if pivot_row is None:
            continue
        rows[pr], rows[pivot_row] = rows[pivot_row], rows[pr]
        piv = rows[pr][col]
        rows[pr] = [e / piv for e in rows[pr]]
        for r in range(pr + 1, len(rows)):
            if rows[r][col]:
                factor = rows[r][col]
                rows[r] = [e - factor * v for e, v in zip(rows[r], rows[pr])]
        pivot_cols.append(col)
        pr += 1
    chosen = pr - 1  # largest pivot column = smallest leading power
    psi0 = UnivarPoly(reversed(rows[chosen][:width]))
    combination = rows[chosen][width:]
    kernel = [rows[r][width:] for r in range(pr, len(rows))]
    return combination, psi0, kernel


def centralizer_solve(f: BivarPoly, degree_bound: Optional[int] = None) -> CentralizerResult:
    """Generators of {T : [T, D_f] = 0} with component degrees <= degree_bound.

    Rank 2 comes with a certified witness T0 of minimal psi degree; rank 1
    only asserts that no independent element exists up to the bound.
    """
    if f.is_constant:
        raise ConstantInput("centralizer needs a nonconstant polynomial")
    deg_f = int(f.total_degree)
    if degree_bound is None:
        degree_bound = 2 * deg_f
    if degree_bound < deg_f:
        raise BoundTooSmall(f"degree bound {degree_bound} is below deg f = {deg_f}")
    dec = decompose(f)
    p = dec.p
    d_p = jacobian_derivation(p)
    basis, monos = _centralizer_nullspace(f, degree_bound)
    if not basis:
        raise InternalInconsistency("D_p itself commutes but was not found")
    psis = []
    for t in basis:
        image = t.apply(p)
        psi = membership(image, p)
        if psi is None:
            raise InternalInconsistency("centralizer element does not preserve Q[p]")
        psis.append(psi)
    if all(psi.is_zero for psi in psis):
        return CentralizerResult(
            rank=1,
            generator_dp=d_p,
            generator_t0=None,
            psi0=None,
            degree_bound=degree_bound,
            certified=CertStatus.RANK_ONE_UP_TO_BOUND,
        )
    combination, psi0, kernel_combos = _minimal_psi_row(psis)
    t0_vec = _combine_vectors(combination, basis, monos)
    kernel_vecs = [_combine_vectors(a, basis, monos) for a in kernel_combos]
    kernel_rref, kernel_pivots = rref(kernel_vecs)
    for row, pivot in zip(kernel_rref, kernel_pivots):
        factor = t0_vec[pivot]
        if factor:
            t0_vec = [e - factor * v for e, v in zip(t0_vec, row)]
    t0 = _derivation_of(t0_vec, monos)
    if not commute_check(t0, jacobian_derivation(f)):
        raise InternalInconsistency("certified generator fails the bracket test")
    if t0.apply(p) != compose(psi0, p) or psi0.is_zero:
        raise InternalInconsistency("certified generator fails its psi witness")
    return CentralizerResult(
        rank=2,
        generator_dp=d_p,
        generator_t0=t0,
        psi0=psi0,
        degree_bound=degree_bound,
        certified=CertStatus.RANK_TWO_CERTIFIED,
    )


def _combine_vectors(
    coeffs: Sequence[Fraction], basis: Sequence[Derivation], monos: Sequence[Monomial]
) -> list[Fraction]:
    total = [Fraction(0)] * (2 * len(monos))
    for c, t in zip(coeffs, basis):
        if not c:
            continue
        for i, v in enumerate(_vector_of(t, monos)):
            if v:
                total[i] += c * v
    return total


def basis_decompose(
    t: Derivation, result: CentralizerResult, f: BivarPoly
) -> Tuple[UnivarPoly, UnivarPoly]:
    """Coordinates (q, delta) of t = q(p)*T0 + delta(p)*D_p over Q[p]."""
    if result.rank != 2 or result.generator_t0 is None or result.psi0 is None:
        raise NotRankTwo("basis decomposition needs a rank-2 result")
    d_f = jacobian_derivation(f)
    if not commute_check(t, d_f):
        raise NotInCentralizer("[T, D_f] is nonzero")
    p = decompose(f).p
    if jacobian_derivation(p) != result.generator_dp:
        raise ValueError("result does not belong to this f")
    psi_t = membership(t.apply(p), p)
    if psi_t is None:
        raise InternalInconsistency("commuting element does not preserve Q[p]")
    ratio = RationalFunction1.of(psi_t, result.psi0)
    if not ratio.is_polynomial:
        raise DivisibilityViolation("psi is not divisible by psi0")
    q = ratio.num
    rest = t - compose(q, p) * result.generator_t0
    d_p = result.generator_dp
    if rest.is_zero:
        delta = UnivarPoly.zero()
    else:
        numerator, denominator = (
            (rest.P, d_p.P) if not d_p.P.is_zero else (rest.Q, d_p.Q)
        )
        cofactor = exact_divide(numerator, denominator)
        if cofactor is None:
            raise InternalInconsistency("residual is not a multiple of D_p")
        delta = membership(cofactor, p)
        if delta is None:
            raise InternalInconsistency("cofactor is not a polynomial in p")
    if t != compose(q, p) * result.generator_t0 + compose(delta, p) * d_p:
        raise InternalInconsistency("basis decomposition failed verification")
    return q, delta


def _reduce_coords(
    vec: list[Fraction], basis_rows: Sequence[Sequence[Fraction]], pivots: Sequence[int]
) -> Tuple[list[Fraction], list[Fraction]]:
    """Coordinates of vec against RREF basis rows plus the residual."""
    residual = list(vec)
    coords = []
    for row, pivot in zip(basis_rows, pivots):
        c = residual[pivot]
        coords.append(c)
        if c:
            residual = [e - c * v for e, v in zip(residual, row)]
    return coords, residual


def eigen_search(f: BivarPoly, degree_bound: int) -> list[EigenPair]:
    """All pairs (g, lam) with D_f(g) = lam*g, lam rational nonzero, deg g <= bound.

    The search restricts D_f to its maximal invariant subspace of the
    bounded-degree monomial space, then takes rational roots of the
    characteristic polynomial there.
    """
    if f.is_constant:
        raise ConstantInput("eigen search needs a nonconstant polynomial")
    deriv = jacobian_derivation(f)
    comp_deg = max(int(deriv.P.total_degree), int(deriv.Q.total_degree), 1)
    ambient_deg = max(degree_bound, degree_bound - 1 + comp_deg)
    ambient = monomials_upto(ambient_deg)
    index = {m: i for i, m in enumerate(ambient)}
    size = len(ambient)

    def as_vector(poly: BivarPoly) -> list[Fraction]:
        vec = [Fraction(0)] * size
        for m, c in poly.sorted_terms():
            vec[index[m]] = c
        return vec

    search_monos = monomials_upto(degree_bound)
    images = {m: as_vector(deriv.apply(BivarPoly.monomial(m))) for m in search_monos}
    mono_pos = {m: index[m] for m in search_monos}

    def image_of(vec: Sequence[Fraction]) -> list[Fraction]:
        total = [Fraction(0)] * size
        for m, pos in mono_pos.items():
            c = vec[pos]
            if not c:
                continue
            img = images[m]
            for i, v in enumerate(img):
                if v:
                    total[i] += c * v
        return total

    rows, pivots = rref([as_vector(BivarPoly.monomial(m)) for m in search_monos])
    while rows:
        residuals = []
        for row in rows:
            _, residual = _reduce_coords(image_of(row), rows, pivots)
            residuals.append(residual)
        if not any(any(r) for r in residuals):
            break
        # keep only combinations whose image stays inside the current space
        matrix = tuple(
            tuple(residuals[j][i] for j in range(len(rows)))
            for i in range(size)
            if any(residuals[j][i] for j in range(len(rows)))
        )
        system = LinearSystem(matrix, tuple(Fraction(0) for _ in matrix), ncols=len(rows))
        nullspace = solve_linear(system).nullspace
        combined = [
            [sum(a[j] * rows[j][i] for j in range(len(rows))) for i in range(size)]
            for a in nullspace
        ]
        rows, pivots = rref(combined)
    if not rows:
        return []
    k = len(rows)
    restricted = [[Fraction(0)] * k for _ in range(k)]
    for j, row in enumerate(rows):
        coords, residual = _reduce_coords(image_of(row), rows, pivots)
        if any(residual):
            raise InternalInconsistency("invariant subspace is not invariant")
        for i in range(k):
            restricted[i][j] = coords[i]
    pairs: list[EigenPair] = []
    for lam in rational_roots(charpoly(restricted)):
        if lam == 0:
            continue
        shifted = tuple(
            tuple(restricted[i][j] - (lam if i == j else 0) for j in range(k))
            for i in range(k)
        )
        system = LinearSystem(shifted, tuple(Fraction(0) for _ in range(k)), ncols=k)
        vectors = solve_linear(system).nullspace
        space = [
            [sum(a[j] * rows[j][i] for j in range(k)) for i in range(size)]
            for a in vectors
        ]
        reduced, _ = rref(space)
        for row in reduced:
            g = BivarPoly(zip(ambient, row))
            if deriv.apply(g) != lam * g:
                raise InternalInconsistency("eigenfunction failed verification")
            pairs.append(EigenPair(g, lam))
    pairs.sort(key=lambda pr: (pr.lam, tuple((m.ex, m.ey, c) for m, c in pr.g.sorted_terms())))
    return pairs


def commuting_pair_construct(f: BivarPoly, g: BivarPoly) -> Derivation:
    """The field f*D_g - g*D_f, which commutes with D_g when D_f(g) = g."""
    d_f = jacobian_derivation(f)
    d_g = jacobian_derivation(g)
    if d_f.apply(g) != g:
        raise NotUnitEigenpair("need apply(D_f, g) = g exactly")
    t = f * d_g - g * d_f
    if not commute_check(t, d_g):
        raise InternalInconsistency("constructed pair fails the bracket test")
    return t


def ode_export(d: Derivation, centralizer_bound: Optional[int] = None) -> OdeSystem:
    """Autonomous system of d plus conserved quantities when d is exact.

    For divergence-free nonzero d the kernel generator of the potential is a
    first integral; with a bound, centralizer generators are attached as
    commuting fields.
    """
    first_integrals: Tuple[BivarPoly, ...] = ()
    commuting_fields: Tuple[Derivation, ...] = ()
    if not d.is_zero and d.divergence().is_zero:
        g = potential(d)
        first_integrals = (kernel_generator(g).p,)
        if centralizer_bound is not None:
            result = centralizer_solve(g, centralizer_bound)
            fields = [result.generator_dp]
            if result.generator_t0 is not None:
                fields.append(result.generator_t0)
            commuting_fields = tuple(fields)
    return OdeSystem(d.P, d.Q, first_integrals, commuting_fields)
