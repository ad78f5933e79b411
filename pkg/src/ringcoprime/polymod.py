"""Dense polynomials over GF(p), as thin adapters over sympy's galoistools.

Here a polynomial is a list of ints in ``[0, p)`` ordered from the constant
term up, with no trailing zeros; ``[]`` is the zero polynomial.  galoistools
stores coefficients leading term first, so every call flips the list.
"""

from __future__ import annotations

from collections import Counter

from sympy.polys import galoistools as gf
from sympy.polys.domains import PythonIntegerRing

ZZ = PythonIntegerRing()

Poly = list[int]


def _to(f: Poly) -> list:
    return [ZZ(c) for c in reversed(f)]


def _from(g) -> Poly:
    return [int(c) for c in reversed(g)]


def reduce(coeffs, p: int) -> Poly:
    return _from(gf.gf_from_int_poly([int(c) for c in reversed(coeffs)], p))


def deg(f: Poly) -> int:
    return len(f) - 1


def monic(f: Poly, p: int) -> Poly:
    return _from(gf.gf_monic(_to(f), p, ZZ)[1])


def mul(f: Poly, g: Poly, p: int) -> Poly:
    return _from(gf.gf_mul(_to(f), _to(g), p, ZZ))


def gcd(f: Poly, g: Poly, p: int) -> Poly:
    return _from(gf.gf_gcd(_to(f), _to(g), p, ZZ))


def derivative(f: Poly, p: int) -> Poly:
    return _from(gf.gf_diff(_to(f), p, ZZ))


def squarefree_decomposition(f: Poly, p: int) -> list[tuple[Poly, int]]:
    """``[(g, m), ...]`` with each g monic squarefree, pairwise coprime, and ``monic(f) = prod g**m``."""
    _, parts = gf.gf_sqf_list(_to(f), p, ZZ)
    return [(_from(g), m) for g, m in parts]


def distinct_degree(f: Poly, p: int) -> Counter:
    """Degree -> number of irreducible factors, for squarefree ``f``."""
    counts: Counter = Counter()
    for g, d in gf.gf_ddf_zassenhaus(gf.gf_monic(_to(f), p, ZZ)[1], p, ZZ):
        counts[d] += (len(g) - 1) // d
    return counts
