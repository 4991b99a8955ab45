import random
from fractions import Fraction

import pytest
import sympy

from waringcert.apolar import (ApolarIdealPresentation, apolar_generators,
                               catalecticant, catalecticant_lower_bound,
                               degree_reduction, essential_variable_count,
                               hilbert_function, is_concise,
                               verify_shafiei_generators)
from waringcert.polyring import (Poly, contract, det_poly, key_degrevlex,
                                 monomials_of_degree, per_poly,
                                 power_of_linear_form)
from waringcert.scalars import QQ


def frac(a, b=1):
    return Fraction(a, b)


# -- independent oracle: catalecticant ranks via sympy differentiation

def _sympy_hilbert(F: Poly):
    xs = sympy.symbols(f"x1:{F.n_vars + 1}")
    expr = sympy.Integer(0)
    for m, c in F.terms.items():
        term = sympy.Rational(c)
        for i, e in enumerate(m):
            term *= xs[i] ** e
        expr += term
    expr = sympy.expand(expr)
    d = F.degree()
    out = []
    for a in range(d + 1):
        rows = []
        for mono in monomials_of_degree(F.n_vars, a):
            g = expr
            for i, e in enumerate(mono):
                g = sympy.diff(g, xs[i], e)
            g = sympy.expand(g)
            coeffs = []
            for target in monomials_of_degree(F.n_vars, d - a):
                term = sympy.Integer(1)
                for i, e in enumerate(target):
                    term *= xs[i] ** e
                coeffs.append(g.coeff_monomial(term) if hasattr(g, "coeff_monomial")
                              else sympy.Poly(g, *xs).coeff_monomial(term))
            rows.append(coeffs)
        mat = sympy.Matrix([[sympy.Poly(expr * 0 + v, *xs).as_expr() if False
                             else v for v in row] for row in rows])
        out.append(mat.rank() if rows else 0)
    return tuple(out)


def test_hilbert_function_against_sympy_oracle():
    xyz = Poly.monomial((1, 1, 1), frac(1))
    assert hilbert_function(xyz) == _sympy_hilbert(xyz) == (1, 3, 3, 1)
    rng = random.Random(2)
    for _ in range(6):
        n = rng.randint(2, 4)
        monos = list(monomials_of_degree(n, 3))
        terms = {m: frac(rng.randint(-3, 3)) for m in rng.sample(monos, 4)}
        terms = {m: c for m, c in terms.items() if c}
        if not terms:
            continue
        F = Poly(n, terms)
        assert hilbert_function(F) == _sympy_hilbert(F)


def test_hilbert_function_examples():
    assert hilbert_function(det_poly(3)) == (1, 9, 9, 1)
    assert hilbert_function(per_poly(3)) == (1, 9, 9, 1)
    assert hilbert_function(Poly.monomial((5,), frac(1))) == (1,) * 6


def test_catalecticant_ranks():
    assert catalecticant(det_poly(3), 1).rank() == 9
    assert catalecticant(Poly.monomial((3, 0, 0), frac(1)), 1).rank() == 1
    # full flattening rank C(d, floor(d/2))^2 for d = 2, 3
    assert catalecticant(det_poly(2), 1).rank() == 4
    assert catalecticant(det_poly(3), 1).rank() == 9
    with pytest.raises(ValueError):
        catalecticant(det_poly(2), 3)


def test_catalecticant_lower_bound():
    assert catalecticant_lower_bound(det_poly(3)) == 9
    assert catalecticant_lower_bound(per_poly(3)) == 9
    assert catalecticant_lower_bound(Poly.monomial((4,), frac(1))) == 1


def test_conciseness():
    assert is_concise(det_poly(3))
    assert is_concise(per_poly(3))
    f = Poly(3, {(1, 1, 0): frac(1), (1, 0, 1): frac(1)})  # xy + xz
    assert essential_variable_count(f) == 2
    assert not is_concise(f)
    ell3 = power_of_linear_form(
        [frac(1) if i in (0, 4, 8) else frac(0) for i in range(9)], 3)
    assert is_concise(det_poly(3) - ell3)


def test_gorenstein_palindromy_on_random_concise_cubics():
    rng = random.Random(7)
    done = 0
    while done < 50:
        n = rng.randint(2, 9)
        monos = list(monomials_of_degree(n, 3))
        terms = {m: frac(rng.randint(-4, 4))
                 for m in rng.sample(monos, min(len(monos), n + 3))}
        terms = {m: c for m, c in terms.items() if c}
        if not terms:
            continue
        F = Poly(n, terms)
        if not is_concise(F):
            continue
        hf = hilbert_function(F)
        assert hf == hf[::-1], (F, hf)
        done += 1


def test_apolar_generators_monomial():
    pres = apolar_generators(Poly.monomial((1, 1, 1), frac(1)))
    assert pres.generator_degrees == [2, 2, 2]
    expected = {Poly.monomial((2, 0, 0), frac(1)),
                Poly.monomial((0, 2, 0), frac(1)),
                Poly.monomial((0, 0, 2), frac(1))}
    assert set(pres.generators_in_degree(2)) == expected


def test_apolar_generators_det3():
    pres = apolar_generators(det_poly(3), "det3")
    assert pres.generator_degrees == [2] * 36
    assert pres.concise
    # every reported basis element annihilates
    F = det_poly(3)
    for j, basis in pres.degree_bases.items():
        for theta in basis:
            assert contract(theta, F).is_zero(), (j, theta)
    blob = pres.to_json()
    assert blob["hilbert_function"] == [1, 9, 9, 1]
    assert blob["generator_degrees"] == [2] * 36
    assert blob["conciseness"] is True
    assert blob["catalecticant_bound"] == 9


def test_apolar_generators_power_has_top_degree_generator():
    pres = apolar_generators(Poly.monomial((3, 0, 0), frac(1)))
    assert pres.generator_degrees == [1, 1, 4]


def test_degree2_dimension_identity_for_cubics():
    # dim (annihilator)_2 + hilbert[2] = dim T_2
    rng = random.Random(13)
    for _ in range(10):
        n = rng.randint(2, 5)
        monos = list(monomials_of_degree(n, 3))
        terms = {m: frac(rng.randint(-3, 3)) for m in rng.sample(monos, 3)}
        terms = {m: c for m, c in terms.items() if c}
        if not terms:
            continue
        F = Poly(n, terms)
        red = degree_reduction(F, 2)
        hf = hilbert_function(F)
        assert len(red.kernel) + hf[2] == len(list(monomials_of_degree(n, 2)))


def test_shafiei_families():
    rep = verify_shafiei_generators(3, "det")
    assert rep["ok"] and rep["span_dimension"] == 36
    rep = verify_shafiei_generators(3, "per")
    assert rep["ok"] and rep["span_dimension"] == 36
    rep2 = verify_shafiei_generators(2, "det")
    assert rep2["ok"] and rep2["span_dimension"] == 9
    # d = 2 det case: the single 2x2 permanent annihilates ad - bc
    g = Poly(4, {(1, 0, 0, 1): frac(1), (0, 1, 1, 0): frac(1)})
    assert contract(g, det_poly(2)).is_zero()


def test_family_quadrics_annihilate_random_lambda():
    from waringcert.family import family_member, family_quadric_generators
    rng = random.Random(21)
    for _ in range(5):
        lam = Fraction(rng.randint(-20, 20), rng.randint(1, 9))
        F = family_member(lam)
        for g in family_quadric_generators(1, lam):
            assert contract(g, F).is_zero()


def test_family_quadrics_span_equals_computed_annihilator():
    from waringcert.family import family_member, family_quadric_generators
    from waringcert.linalg import IncrementalEchelon
    monos = sorted(monomials_of_degree(9, 2), key=key_degrevlex)
    midx = {m: i for i, m in enumerate(monos)}
    F = family_member(Fraction(1))
    listed = IncrementalEchelon(QQ)
    for g in family_quadric_generators(1, 1):
        listed.insert({midx[m]: c for m, c in g.terms.items()})
    assert listed.rank == 36
    red = degree_reduction(F, 2)
    assert len(red.kernel) == 36
    for kv in red.kernel:
        assert listed.contains({midx[m]: c for m, c in kv.items()})
