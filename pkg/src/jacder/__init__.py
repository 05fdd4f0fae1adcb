"""Exact symbolic computation with Jacobian derivations of Q[x, y]."""

from jacder.centralizer import (
    CentralizerResult,
    CertStatus,
    CriterionReport,
    EigenPair,
    OdeSystem,
    basis_decompose,
    centralizer_solve,
    commute_check,
    commuting_pair_construct,
    corollary4_check,
    criterion_check,
    eigen_search,
    ode_export,
)
from jacder.derivation import (
    DX,
    DY,
    Derivation,
    jacobian_derivation,
    potential,
    scale_and_combine,
)
from jacder.errors import (
    BothZero,
    BoundTooSmall,
    ConstantInput,
    DivisibilityViolation,
    InconsistentSystem,
    InternalInconsistency,
    JacderError,
    NotClosed,
    NotDivergenceFree,
    NotInCentralizer,
    NotRankTwo,
    NotUnitEigenpair,
    ParseError,
)
from jacder.kernel import (
    Decomposition,
    KernelBasis,
    decompose,
    is_closed,
    kernel_generator,
    membership,
)
from jacder.linsolve import (
    LinearSolution,
    LinearSystem,
    charpoly,
    rational_roots,
    solve_linear,
    system_from_poly_columns,
)
from jacder.parser import parse_poly, parse_univar
from jacder.poly import (
    NEG_INF,
    ONE,
    X,
    Y,
    ZERO,
    BivarPoly,
    Monomial,
    Rational,
    RationalFunction1,
    UnivarPoly,
    compose,
    exact_divide,
    gcd_bivar,
    gcd_univar,
    monomials_upto,
)
from jacder.serialize import poly_text, rational_text, serialize, univar_text

__version__ = "0.1.0"
