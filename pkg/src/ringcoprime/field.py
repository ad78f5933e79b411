"""Number-field descriptors: parsing, validation and normalisation.

Grammar (ASCII)::

    Q | Q(sqrt<m>) | Q(zeta<m>) | poly:<c0>,<c1>,...,<c_{d-1}>,1

``sqrt`` takes a squarefree integer other than 0 and 1 (a leading minus sign is
allowed); ``zeta`` takes m >= 3; ``poly`` lists integer coefficients from the
constant term up to the leading 1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce as _fold
from typing import Union

import sympy

from . import polymod
from .errors import FieldDomainError, FieldSpecError, ReducibleError


@dataclass(frozen=True)
class Rational:
    pass


@dataclass(frozen=True)
class Quadratic:
    m: int


@dataclass(frozen=True)
class Cyclotomic:
    m: int


@dataclass(frozen=True)
class MonicPolynomial:
    coefficients: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1


FieldSpec = Union[Rational, Quadratic, Cyclotomic, MonicPolynomial]


@dataclass(frozen=True)
class NumberField:
    spec: FieldSpec
    degree: int
    exact_splitting: bool
    label: str
    certificate: str = ""

    def __str__(self) -> str:
        return self.label

    @property
    def discriminant(self) -> int | None:
        """Field discriminant of a quadratic field, else None."""
        if isinstance(self.spec, Quadratic):
            return quadratic_discriminant(self.spec.m)
        return None


def is_squarefree(m: int) -> bool:
    return m != 0 and all(e == 1 for e in sympy.factorint(abs(m)).values())


def totient(m: int) -> int:
    return int(sympy.totient(m))


def quadratic_discriminant(m: int) -> int:
    return m if m % 4 == 1 else 4 * m


# ---------------------------------------------------------------------------
# parsing


_INT = r"[+-]?\d+"
_SQRT = re.compile(rf"Q\(sqrt({_INT})\)")
_ZETA = re.compile(rf"Q\(zeta({_INT})\)")


def parse_field_spec(text: str) -> FieldSpec:
    s = text.strip()
    if not s:
        raise FieldSpecError("empty field spec", text, 0)
    if s == "Q":
        return Rational()
    if s.startswith("poly:"):
        return _parse_poly(text, s)
    if s.startswith("Q("):
        if match := _SQRT.fullmatch(s):
            m = int(match.group(1))
            _check_quadratic(m)
            return Quadratic(m)
        if match := _ZETA.fullmatch(s):
            m = int(match.group(1))
            if m < 3:
                raise FieldDomainError(f"cyclotomic index must be >= 3, got {m}")
            return Cyclotomic(m)
        pos = text.index("Q(") + 2
        raise FieldSpecError("expected 'sqrt<m>)' or 'zeta<m>)'", text, pos)
    pos = len(text) - len(text.lstrip())
    raise FieldSpecError("expected 'Q', 'Q(...)' or 'poly:'", text, pos)


def _parse_poly(text: str, s: str) -> MonicPolynomial:
    offset = text.index("poly:") + 5
    coeffs = []
    for part in s[5:].split(","):
        token = part.strip()
        if not re.fullmatch(_INT, token):
            raise FieldSpecError(f"bad coefficient {token!r}", text, offset)
        coeffs.append(int(token))
        offset += len(part) + 1
    if len(coeffs) < 3:
        raise FieldDomainError("polynomial degree must be at least 2")
    if coeffs[-1] != 1:
        raise FieldDomainError("polynomial must be monic (leading coefficient 1)")
    return MonicPolynomial(tuple(coeffs))


def _check_quadratic(m: int) -> None:
    if m in (0, 1):
        raise FieldDomainError(f"quadratic parameter must not be 0 or 1, got {m}")
    if not is_squarefree(m):
        raise FieldDomainError(f"quadratic parameter {m} is not squarefree")


def render(spec: FieldSpec) -> str:
    """Canonical text form; ``parse_field_spec(render(s)) == s``."""
    if isinstance(spec, Rational):
        return "Q"
    if isinstance(spec, Quadratic):
        return f"Q(sqrt{spec.m})"
    if isinstance(spec, Cyclotomic):
        return f"Q(zeta{spec.m})"
    return "poly:" + ",".join(str(c) for c in spec.coefficients)


# ---------------------------------------------------------------------------
# normalisation


def normalize(spec: FieldSpec) -> NumberField:
    if isinstance(spec, Rational):
        return NumberField(spec, 1, True, "Z")
    if isinstance(spec, Quadratic):
        _check_quadratic(spec.m)
        return NumberField(spec, 2, True, _quadratic_label(spec.m))
    if isinstance(spec, Cyclotomic):
        m = spec.m
        if m < 3:
            raise FieldDomainError(f"cyclotomic index must be >= 3, got {m}")
        if m % 4 == 2:
            m //= 2
        return NumberField(Cyclotomic(m), totient(m), True, f"Z[zeta{m}]")
    if isinstance(spec, MonicPolynomial):
        coeffs = spec.coefficients
        if len(coeffs) < 3:
            raise FieldDomainError("polynomial degree must be at least 2")
        if coeffs[-1] != 1:
            raise FieldDomainError("polynomial must be monic (leading coefficient 1)")
        certificate = irreducibility_certificate(coeffs)
        return NumberField(spec, spec.degree, False, f"Z[x]/({_poly_text(coeffs)})", certificate)
    raise TypeError(f"not a field spec: {spec!r}")


def field_from_text(text: str) -> NumberField:
    return normalize(parse_field_spec(text))


def _quadratic_label(m: int) -> str:
    if m == -1:
        return "Z[i]"
    if m == -3:
        return "Z[omega]"
    if m % 4 == 1:
        return f"Z[(1+sqrt{m})/2]"
    return f"Z[sqrt{m}]"


def _poly_text(coeffs) -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        if mono and abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}{mono}"
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    head_sign, head = terms[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# irreducibility


CERTIFICATE_PRIMES = 5


def irreducibility_certificate(coeffs) -> str:
    """Return a short certificate that the monic integer polynomial is irreducible.

    Raises ReducibleError when a factorisation is found.  Degree patterns
    modulo up to five good primes are intersected; if no proper factor degree
    survives the polynomial is irreducible.  Otherwise sympy's factoriser over
    the integers settles the question.
    """
    coeffs = list(coeffs)
    d = len(coeffs) - 1
    root = _rational_root(coeffs)
    if root is not None:
        raise ReducibleError(f"polynomial has the rational root {root}")
    possible = set(range(1, d))
    used = []
    for p in sympy.primerange(2, 1000):
        f = polymod.reduce(coeffs, p)
        if polymod.deg(polymod.gcd(f, polymod.derivative(f, p), p)) > 0:
            continue
        pattern = polymod.distinct_degree(f, p)
        degrees = [deg for deg, count in pattern.items() for _ in range(count)]
        possible &= _subset_sums(degrees)
        used.append(f"{p}:{'+'.join(map(str, sorted(degrees)))}")
        if not possible:
            return "mod " + " ".join(used)
        if len(used) >= CERTIFICATE_PRIMES:
            break
    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed(coeffs)), x, domain="ZZ")
    _, factors = poly.factor_list()
    if len(factors) > 1 or factors[0][1] > 1:
        shown = " * ".join(f"({g.as_expr()})^{e}" for g, e in factors)
        raise ReducibleError(f"polynomial factors as {shown}")
    return "factorisation over Z"


def _subset_sums(degrees: list[int]) -> set[int]:
    sums = {0}
    for deg in degrees:
        sums |= {s + deg for s in sums}
    return sums


def _rational_root(coeffs) -> int | None:
    # Monic, so rational roots are integers dividing the constant term.
    if coeffs[0] == 0:
        return 0
    for div in sympy.divisors(abs(coeffs[0])):
        for cand in (div, -div):
            if _fold(lambda acc, c: acc * cand + c, reversed(coeffs), 0) == 0:
                return cand
    return None
