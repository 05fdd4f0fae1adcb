"""Kernel structure of Jacobian derivations.

The kernel of D_f in Q[x, y] is Q[p] for a single generator p of minimal
degree, and f itself is a univariate composite theta(p).  The generator is
found by a degree-by-degree linear solve and normalized to leading
coefficient 1 and constant term 0; theta absorbs the matching affine
substitution, so decompose(f) is canonical.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from jacder.derivation import jacobian_derivation
from jacder.errors import ConstantInput, InconsistentSystem, InternalInconsistency
from jacder.linsolve import solve_linear, system_from_poly_columns
from jacder.poly import BivarPoly, UnivarPoly, compose, monomials_upto


@dataclass(frozen=True)
class KernelBasis:
    """Minimal nonconstant kernel generator found up to degree_bound."""

    p: BivarPoly
    degree_bound: int


@dataclass(frozen=True)
class Decomposition:
    """f = theta(p) with p the normalized kernel generator of D_f."""

    p: BivarPoly
    theta: UnivarPoly


def kernel_generator(f: BivarPoly) -> KernelBasis:
    """Minimal-degree nonconstant p with D_f(p) = 0, normalized.

    Searches degree by degree up to deg f; f lies in its own kernel, so the
    search always succeeds for nonconstant f.
    """
    if f.is_constant:
        raise ConstantInput("kernel generator needs a nonconstant polynomial")
    deriv = jacobian_derivation(f)
    bound = int(f.total_degree)
    for degree in range(1, bound + 1):
        monos = monomials_upto(degree, min_degree=1)
        columns = [deriv.apply(BivarPoly.monomial(m)) for m in monos]
        solution = solve_linear(system_from_poly_columns(columns, BivarPoly.zero()))
        if not solution.nullspace:
            continue
        candidates = []
        for vec in solution.nullspace:
            p = BivarPoly(zip(monos, vec)).monic()
            candidates.append(p)
        # deterministic tie-break: smallest coefficient vector in grlex order
        p = min(candidates, key=lambda q: tuple(q.coeff(m) for m in monos))
        return KernelBasis(p, bound)
    raise InternalInconsistency("no kernel element found although f is one")


def decompose(f: BivarPoly) -> Decomposition:
    """Write f as theta(p) over the normalized kernel generator p."""
    basis = kernel_generator(f)
    p = basis.p
    k = int(f.total_degree) // int(p.total_degree)
    powers = [p**i for i in range(k + 1)]
    try:
        solution = solve_linear(system_from_poly_columns(powers, f))
    except InconsistentSystem as exc:
        raise InternalInconsistency("f is not a polynomial in its kernel generator") from exc
    theta = UnivarPoly(solution.particular)
    if compose(theta, p) != f:
        raise InternalInconsistency("decomposition failed verification")
    return Decomposition(p, theta)


def membership(h: BivarPoly, p: BivarPoly) -> Optional[UnivarPoly]:
    """The psi with h = psi(p) when one exists, else None."""
    if p.is_constant:
        raise ConstantInput("membership test needs a nonconstant p")
    if h.is_zero:
        return UnivarPoly.zero()
    k = int(h.total_degree) // int(p.total_degree)
    powers = [p**i for i in range(k + 1)]
    try:
        solution = solve_linear(system_from_poly_columns(powers, h))
    except InconsistentSystem:
        return None
    return UnivarPoly(solution.particular)


def is_closed(f: BivarPoly) -> bool:
    """True when f generates its own kernel, i.e. deg theta = 1."""
    return decompose(f).theta.degree == 1
