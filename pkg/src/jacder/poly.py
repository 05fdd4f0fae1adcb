"""Exact polynomial arithmetic over the rationals.

Bivariate polynomials are sparse dictionaries mapping exponent pairs to
``fractions.Fraction`` coefficients; univariate polynomials are dense
coefficient tuples.  Zero coefficients are never stored, so dictionary
equality is equality of canonical forms.  The canonical monomial order is
graded lexicographic with x > y.  All values are immutable and every
operation returns a fresh value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple, Optional, Tuple, Union

from jacder.errors import BothZero

Rational = Fraction
Scalar = Union[Rational, int]

NEG_INF = float("-inf")  # degree of the zero polynomial


class Monomial(NamedTuple):
    """x^ex * y^ey with non-negative exponents."""

    ex: int
    ey: int

    @property
    def total_degree(self) -> int:
        return self.ex + self.ey


def grlex_key(m: Tuple[int, int]) -> Tuple[int, int]:
    """Sort key realizing graded-lex order with x > y (larger key = larger)."""
    return (m[0] + m[1], m[0])


def monomials_upto(degree: int, min_degree: int = 0) -> list[Monomial]:
    """All monomials with min_degree <= total degree <= degree, grlex descending."""
    monos = [
        Monomial(ex, ey)
        for ex in range(degree + 1)
        for ey in range(degree + 1 - ex)
        if ex + ey >= min_degree
    ]
    monos.sort(key=grlex_key, reverse=True)
    return monos


TermsLike = Union[Mapping[Tuple[int, int], Scalar], Iterable[Tuple[Tuple[int, int], Scalar]]]


class BivarPoly:
    """Sparse polynomial in Q[x, y].

    The term dict is private and never mutated after construction; treat
    instances as frozen values.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: TermsLike = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        canon: dict[Monomial, Fraction] = {}
        for mono, coeff in items:
            ex, ey = mono
            if ex < 0 or ey < 0:
                raise ValueError(f"negative exponent in monomial {mono!r}")
            c = Fraction(coeff)
            if not c:
                continue
            key = Monomial(ex, ey)
            acc = canon.get(key)
            if acc is None:
                canon[key] = c
            else:
                acc += c
                if acc:
                    canon[key] = acc
                else:
                    del canon[key]
        self._terms = canon

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls) -> "BivarPoly":
        return cls()

    @classmethod
    def one(cls) -> "BivarPoly":
        return cls({(0, 0): 1})

    @classmethod
    def const(cls, c: Scalar) -> "BivarPoly":
        return cls({(0, 0): c})

    @classmethod
    def variable(cls, name: str) -> "BivarPoly":
        if name == "x":
            return cls({(1, 0): 1})
        if name == "y":
            return cls({(0, 1): 1})
        raise ValueError(f"unknown variable {name!r}")

    @classmethod
    def monomial(cls, mono: Tuple[int, int], coeff: Scalar = 1) -> "BivarPoly":
        return cls({mono: coeff})

    # -- structure -------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        return all(m == (0, 0) for m in self._terms)

    @property
    def total_degree(self) -> Union[int, float]:
        if not self._terms:
            return NEG_INF
        return max(m.total_degree for m in self._terms)

    def coeff(self, mono: Tuple[int, int]) -> Fraction:
        return self._terms.get(Monomial(*mono), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coeff((0, 0))

    def sorted_terms(self) -> list[Tuple[Monomial, Fraction]]:
        """Terms in descending graded-lex order."""
        return sorted(self._terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    def monomials(self) -> Iterator[Monomial]:
        return iter(sorted(self._terms, key=grlex_key, reverse=True))

    def leading_monomial(self) -> Monomial:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self._terms, key=grlex_key)

    def leading_coeff(self) -> Fraction:
        return self._terms[self.leading_monomial()]

    def monic(self) -> "BivarPoly":
        """Scale so the graded-lex leading coefficient is 1."""
        lc = self.leading_coeff()
        return self if lc == 1 else self * (1 / lc)

    # -- arithmetic ------------------------------------------------------

    @staticmethod
    def _coerce(value) -> Optional["BivarPoly"]:
        if isinstance(value, BivarPoly):
            return value
        if isinstance(value, (int, Fraction)):
            return BivarPoly.const(value)
        return None

    def __add__(self, other) -> "BivarPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for m, c in o._terms.items():
            acc = out.get(m)
            s = c if acc is None else acc + c
            if s:
                out[m] = s
            elif acc is not None:
                del out[m]
        res = BivarPoly.__new__(BivarPoly)
        res._terms = out
        return res

    __radd__ = __add__

    def __neg__(self) -> "BivarPoly":
        res = BivarPoly.__new__(BivarPoly)
        res._terms = {m: -c for m, c in self._terms.items()}
        return res

    def __sub__(self, other) -> "BivarPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "BivarPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other) -> "BivarPoly":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return BivarPoly.zero()
            res = BivarPoly.__new__(BivarPoly)
            res._terms = {m: v * c for m, v in self._terms.items()}
            return res
        if not isinstance(other, BivarPoly):
            return NotImplemented
        out: dict[Monomial, Fraction] = {}
        for (ax, ay), ac in self._terms.items():
            for (bx, by), bc in other._terms.items():
                key = Monomial(ax + bx, ay + by)
                c = ac * bc
                acc = out.get(key)
                s = c if acc is None else acc + c
                if s:
                    out[key] = s
                elif acc is not None:
                    del out[key]
        res = BivarPoly.__new__(BivarPoly)
        res._terms = out
        return res

    __rmul__ = __mul__

    def __truediv__(self, other) -> "BivarPoly":
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int) -> "BivarPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = BivarPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- calculus --------------------------------------------------------

    def partial_x(self) -> "BivarPoly":
        return BivarPoly(
            ((m.ex - 1, m.ey), c * m.ex) for m, c in self._terms.items() if m.ex
        )

    def partial_y(self) -> "BivarPoly":
        return BivarPoly(
            ((m.ex, m.ey - 1), c * m.ey) for m, c in self._terms.items() if m.ey
        )

    def evaluate(self, x_val: Scalar, y_val: Scalar) -> Fraction:
        xv, yv = Fraction(x_val), Fraction(y_val)
        total = Fraction(0)
        for m, c in self._terms.items():
            total += c * xv**m.ex * yv**m.ey
        return total

    def deg_x(self) -> Union[int, float]:
        if not self._terms:
            return NEG_INF
        return max(m.ex for m in self._terms)

    # -- comparisons -----------------------------------------------------

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __repr__(self) -> str:
        from jacder.serialize import poly_text

        return f"BivarPoly({poly_text(self)!r})"

    __str__ = __repr__


X = BivarPoly.variable("x")
Y = BivarPoly.variable("y")
ONE = BivarPoly.one()
ZERO = BivarPoly.zero()


class UnivarPoly:
    """Dense polynomial in one indeterminate t over Q.

    Coefficients are stored ascending by power with no trailing zeros.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self._coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> "UnivarPoly":
        return cls()

    @classmethod
    def one(cls) -> "UnivarPoly":
        return cls((1,))

    @classmethod
    def const(cls, c: Scalar) -> "UnivarPoly":
        return cls((c,))

    @classmethod
    def t(cls) -> "UnivarPoly":
        return cls((0, 1))

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return self._coeffs

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def degree(self) -> Union[int, float]:
        return len(self._coeffs) - 1 if self._coeffs else NEG_INF

    def coeff(self, k: int) -> Fraction:
        return self._coeffs[k] if 0 <= k < len(self._coeffs) else Fraction(0)

    def leading_coeff(self) -> Fraction:
        if not self._coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self._coeffs[-1]

    def monic(self) -> "UnivarPoly":
        lc = self.leading_coeff()
        return self if lc == 1 else self * (1 / lc)

    @staticmethod
    def _coerce(value) -> Optional["UnivarPoly"]:
        if isinstance(value, UnivarPoly):
            return value
        if isinstance(value, (int, Fraction)):
            return UnivarPoly.const(value)
        return None

    def __add__(self, other) -> "UnivarPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._coeffs, o._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UnivarPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "UnivarPoly":
        return UnivarPoly(-c for c in self._coeffs)

    def __sub__(self, other) -> "UnivarPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "UnivarPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other) -> "UnivarPoly":
        if isinstance(other, (int, Fraction)):
            return UnivarPoly(c * other for c in self._coeffs)
        if not isinstance(other, UnivarPoly):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return UnivarPoly.zero()
        out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if not a:
                continue
            for j, b in enumerate(other._coeffs):
                out[i + j] += a * b
        return UnivarPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "UnivarPoly":
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int) -> "UnivarPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = UnivarPoly.one()
        for _ in range(n):
            result = result * self
        return result

    def __divmod__(self, other) -> Tuple["UnivarPoly", "UnivarPoly"]:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        q = [Fraction(0)] * max(len(self._coeffs) - len(o._coeffs) + 1, 0)
        rem = list(self._coeffs)
        dlc = o.leading_coeff()
        dd = len(o._coeffs) - 1
        while len(rem) - 1 >= dd and any(rem):
            while rem and not rem[-1]:
                rem.pop()
            if len(rem) - 1 < dd:
                break
            shift = len(rem) - 1 - dd
            factor = rem[-1] / dlc
            q[shift] = factor
            for i, c in enumerate(o._coeffs):
                rem[shift + i] -= factor * c
        return UnivarPoly(q), UnivarPoly(rem)

    def __floordiv__(self, other) -> "UnivarPoly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "UnivarPoly":
        return divmod(self, other)[1]

    def derivative(self) -> "UnivarPoly":
        return UnivarPoly(c * k for k, c in enumerate(self._coeffs) if k)

    def __call__(self, value):
        """Evaluate by Horner's rule at a rational, univariate, or bivariate value."""
        if isinstance(value, (int, Fraction)):
            acc = Fraction(0)
            for c in reversed(self._coeffs):
                acc = acc * value + c
            return acc
        if isinstance(value, BivarPoly):
            return compose(self, value)
        if isinstance(value, UnivarPoly):
            acc = UnivarPoly.zero()
            for c in reversed(self._coeffs):
                acc = acc * value + c
            return acc
        raise TypeError(f"cannot evaluate at {type(value).__name__}")

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._coeffs == o._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __repr__(self) -> str:
        from jacder.serialize import univar_text

        return f"UnivarPoly({univar_text(self)!r})"

    __str__ = __repr__


T = UnivarPoly.t()


def compose(theta: UnivarPoly, p: BivarPoly) -> BivarPoly:
    """theta(p) by Horner's rule."""
    acc = BivarPoly.zero()
    for c in reversed(theta.coeffs):
        acc = acc * p + c
    return acc


def exact_divide(a: BivarPoly, b: BivarPoly) -> Optional[BivarPoly]:
    """Quotient a/b when b divides a exactly, else None."""
    if b.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    quot: dict[Monomial, Fraction] = {}
    rem = a
    bm = b.leading_monomial()
    bc = b.leading_coeff()
    while not rem.is_zero:
        rm = rem.leading_monomial()
        if rm.ex < bm.ex or rm.ey < bm.ey:
            return None
        key = Monomial(rm.ex - bm.ex, rm.ey - bm.ey)
        c = rem.leading_coeff() / bc
        quot[key] = c
        rem = rem - BivarPoly.monomial(key, c) * b
    return BivarPoly(quot)


def gcd_univar(a: UnivarPoly, b: UnivarPoly) -> UnivarPoly:
    """Monic gcd in Q[t]; gcd(0, 0) = 0."""
    while not b.is_zero:
        a, b = b, a % b
    return a.monic() if not a.is_zero else a


def _x_coeffs(p: BivarPoly) -> dict[int, UnivarPoly]:
    """View p as a polynomial in x with coefficients in Q[y]."""
    rows: dict[int, list] = {}
    for m, c in p.sorted_terms():
        rows.setdefault(m.ex, []).append((m.ey, c))
    out = {}
    for ex, pairs in rows.items():
        size = max(ey for ey, _ in pairs) + 1
        cs = [Fraction(0)] * size
        for ey, c in pairs:
            cs[ey] = c
        out[ex] = UnivarPoly(cs)
    return out


def _univar_in_y(u: UnivarPoly) -> BivarPoly:
    return BivarPoly(((0, k), c) for k, c in enumerate(u.coeffs))


def _content_x(p: BivarPoly) -> UnivarPoly:
    """Monic gcd in Q[y] of the x-coefficients of p (p nonzero)."""
    g = UnivarPoly.zero()
    for u in _x_coeffs(p).values():
        g = gcd_univar(g, u)
        if g.degree == 0:
            break
    return g


def _lead_x(p: BivarPoly) -> Tuple[int, BivarPoly]:
    """Highest x-power of p together with its Q[y] coefficient."""
    dx = max(m.ex for m in p.monomials())
    coeff = BivarPoly(((0, m.ey), c) for m, c in p.sorted_terms() if m.ex == dx)
    return dx, coeff


def gcd_bivar(a: BivarPoly, b: BivarPoly) -> BivarPoly:
    """gcd in Q[x, y], normalized so the graded-lex leading coefficient is 1.

    Uses a primitive pseudo-remainder sequence in (Q[y])[x]; the content in
    Q[y] is stripped after every step to control coefficient growth.
    """
    if a.is_zero and b.is_zero:
        raise BothZero("gcd(0, 0) is undefined")
    if a.is_zero:
        return b.monic()
    if b.is_zero:
        return a.monic()
    ca, cb = _content_x(a), _content_x(b)
    c = gcd_univar(ca, cb)
    pa = exact_divide(a, _univar_in_y(ca))
    pb = exact_divide(b, _univar_in_y(cb))
    assert pa is not None and pb is not None
    if pa.deg_x() == 0 or pb.deg_x() == 0:
        # a primitive polynomial without x is a nonzero rational
        prim = ONE
    else:
        prim = _primitive_gcd_x(pa, pb)
    return (_univar_in_y(c) * prim).monic()


def _primitive_part_x(p: BivarPoly) -> BivarPoly:
    if p.is_zero:
        return p
    content = _content_x(p)
    out = exact_divide(p, _univar_in_y(content))
    assert out is not None
    return out


def _primitive_gcd_x(a: BivarPoly, b: BivarPoly) -> BivarPoly:
    """gcd of primitive polynomials in (Q[y])[x] via pseudo-remainders."""
    if a.deg_x() < b.deg_x():
        a, b = b, a
    while not b.is_zero:
        r = _pseudo_rem_x(a, b)
        a, b = b, _primitive_part_x(r)
    return a


def _pseudo_rem_x(a: BivarPoly, b: BivarPoly) -> BivarPoly:
    """Remainder of lc_x(b)^k * a under division by b in (Q[y])[x]."""
    db, lcb = _lead_x(b)
    r = a
    while not r.is_zero:
        dr, lcr = _lead_x(r)
        if dr < db:
            break
        r = lcb * r - BivarPoly.monomial((dr - db, 0)) * lcr * b
    return r


@dataclass(frozen=True)
class RationalFunction1:
    """Reduced ratio of univariate polynomials with monic denominator."""

    num: UnivarPoly
    den: UnivarPoly

    @classmethod
    def of(cls, num: UnivarPoly, den: UnivarPoly) -> "RationalFunction1":
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if num.is_zero:
            return cls(UnivarPoly.zero(), UnivarPoly.one())
        g = gcd_univar(num, den)
        num = num // g
        den = den // g
        lc = den.leading_coeff()
        return cls(num / lc, den / lc)

    @property
    def is_polynomial(self) -> bool:
        return self.den == UnivarPoly.one()

    def __add__(self, other: "RationalFunction1") -> "RationalFunction1":
        return RationalFunction1.of(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __mul__(self, other: "RationalFunction1") -> "RationalFunction1":
        return RationalFunction1.of(self.num * other.num, self.den * other.den)

    def __neg__(self) -> "RationalFunction1":
        return RationalFunction1(-self.num, self.den)

    def __sub__(self, other: "RationalFunction1") -> "RationalFunction1":
        return self + (-other)
