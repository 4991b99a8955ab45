"""The one-parameter family det3 - lam*(x1+x5+x9)^3 and its annihilator.

The normal-form analysis reduces every cube subtraction det3 - l^3 to one
of three cases; the full-rank case is this family (after rescaling the
determinant coefficient to 1, which changes no rank: scaling a form by a
nonzero constant scales every catalecticant accordingly).

The 36 quadrics below generate the annihilator of mu*det3 - lam*l^3 for
every mu != 0; they are hard data, independently re-derivable through
apolar_generators, and the module exposes both forms so tests can compare
the spans.
"""

from __future__ import annotations

from fractions import Fraction

from .graded import GradedAlgebra, ParametricFamily, algebra_from_apolar
from .polyring import Poly, det_poly, power_of_linear_form
from .scalars import QLAM, QQ, Domain, UniRationalFunction

TRACE_VARS = (0, 4, 8)          # x1 + x5 + x9, the full-rank linear form


def trace_cube(domain: Domain = QQ) -> Poly:
    coeffs = [domain.one if i in TRACE_VARS else domain.zero for i in range(9)]
    return power_of_linear_form(coeffs, 3, domain)


def family_member(lam0, mu=1, domain: Domain = QQ) -> Poly:
    """mu*det3 - lam0*(x1+x5+x9)^3 over the given domain."""
    lam0 = domain.from_rational(Fraction(lam0)) if not hasattr(lam0, "n_vars") else lam0
    mu = domain.from_rational(Fraction(mu))
    return det_poly(3, domain).scale(mu) - trace_cube(domain).scale(lam0)


def family_symbolic() -> Poly:
    """det3 - lam*(x1+x5+x9)^3 over Q(lam), with mu fixed to 1."""
    lam = QLAM.lam
    return det_poly(3, QLAM) - trace_cube(QLAM).scale(lam)


def family_algebra(lam0=None) -> GradedAlgebra:
    if lam0 is None:
        return algebra_from_apolar(family_symbolic(),
                                   "det3 - lam*(x1+x5+x9)^3 over Q(lam)")
    return algebra_from_apolar(family_member(lam0),
                               f"det3 - ({Fraction(lam0)})*(x1+x5+x9)^3")


def parametric_family() -> ParametricFamily:
    return ParametricFamily(
        algebra=family_algebra(),
        specialize=family_algebra,
        description="det3 - lam*(x1+x5+x9)^3, mu = 1",
    )


# ---------------------------------------------------------------------------
# the 36 quadric generators of the annihilator of mu*det3 - lam*l^3
#
# encoded as lists of (coefficient kind, monomial) with y_i numbered 1..9;
# "mu" and "-6lam" mark the two parameter-dependent coefficients of the
# last generator.

_SQUAREFREE = [
    (2, 2), (3, 3), (4, 4), (6, 6), (7, 7), (8, 8),
]
_PAIRS = [
    (1, 2), (1, 3), (1, 4), (1, 7), (2, 3), (2, 5), (2, 8), (3, 6), (3, 9),
    (4, 5), (4, 6), (4, 7), (5, 6), (5, 8), (6, 9), (7, 8), (7, 9), (8, 9),
]
_BINOMIALS = [
    ((1, 6), (3, 4)), ((1, 8), (2, 7)), ((2, 9), (3, 8)),
    ((2, 6), (3, 5)), ((4, 8), (5, 7)), ((4, 9), (6, 7)),
]
_TRINOMIALS = [
    ((1, 5), (2, 4)), ((1, 9), (3, 7)), ((5, 9), (6, 8)),
]


def _mono(i, j):
    m = [0] * 9
    m[i - 1] += 1
    m[j - 1] += 1
    return tuple(m)


def family_quadric_generators(mu=1, lam=1, domain: Domain = QQ) -> list:
    """The 36 quadrics annihilating mu*det3 - lam*(x1+x5+x9)^3.

    Scalars mu and lam may be rationals or domain elements (over Q(lam),
    pass the domain generator to keep the family symbolic)."""
    one = domain.one
    mu = _to_domain(mu, domain)
    lam = _to_domain(lam, domain)
    gens = []
    for i, j in _SQUAREFREE:
        gens.append(Poly(9, {_mono(i, i) if i == j else _mono(i, j): one}, domain))
    gens.append(Poly(9, {_mono(1, 1): one, _mono(9, 9): -one}, domain))
    gens.append(Poly(9, {_mono(5, 5): one, _mono(9, 9): -one}, domain))
    for i, j in _PAIRS:
        gens.append(Poly(9, {_mono(i, j): one}, domain))
    for (a, b), (c, d) in _BINOMIALS:
        gens.append(Poly(9, {_mono(a, b): one, _mono(c, d): one}, domain))
    for (a, b), (c, d) in _TRINOMIALS:
        gens.append(Poly(9, {_mono(a, b): one, _mono(c, d): one,
                             _mono(9, 9): -one}, domain))
    six_lam = domain.from_int(6) * lam
    gens.append(Poly(9, {
        _mono(1, 1): mu,
        _mono(6, 8): -six_lam, _mono(3, 7): -six_lam, _mono(2, 4): -six_lam,
    }, domain))
    return gens


def _to_domain(v, domain):
    if isinstance(v, (int, Fraction)):
        return domain.from_rational(Fraction(v))
    return v
