import itertools
import json
import random
from fractions import Fraction

import pytest

from waringcert.polyring import (LinearChange, Poly, contract, det_poly,
                                 key_deglex, key_degrevlex, linear_form,
                                 matrix_substitute, monomials_of_degree,
                                 per_poly, power_of_linear_form, substitute,
                                 trace_form)
from waringcert.scalars import C6, FP, QQ, Cyclotomic6


def frac(a, b=1):
    return Fraction(a, b)


def test_contract_single_variable_power():
    F = Poly.monomial((4,), frac(1))
    theta = Poly.monomial((1,), frac(1))
    assert contract(theta, F) == Poly.monomial((3,), frac(4))


def test_contract_squarefree():
    F = Poly.monomial((1, 1, 1), frac(1))
    theta = Poly.monomial((1, 1, 1), frac(1))
    assert contract(theta, F) == Poly.monomial((0, 0, 0), frac(1))


def test_contract_det_on_det_is_six():
    d3 = det_poly(3)
    assert contract(d3, d3) == Poly.monomial((0,) * 9, frac(6))


def test_contract_vanishes_when_exponent_exceeds():
    F = Poly.monomial((1, 0), frac(1))
    theta = Poly.monomial((2, 0), frac(1))
    assert contract(theta, F).is_zero()


def test_contract_mismatched_variables():
    with pytest.raises(ValueError):
        contract(Poly.monomial((1,), frac(1)), Poly.monomial((1, 0), frac(1)))


def test_det_poly_small():
    assert det_poly(1) == Poly.monomial((1,), frac(1))
    d2 = det_poly(2)
    assert d2.terms == {(1, 0, 0, 1): frac(1), (0, 1, 1, 0): frac(-1)}
    assert len(det_poly(3)) == 6
    assert len(per_poly(3)) == 6
    assert all(c == 1 for c in per_poly(3).terms.values())


def _laplace_det(d, rows, cols):
    # independent construction: expansion along the first remaining row
    if not rows:
        return Poly.monomial((0,) * (d * d), frac(1))
    out = Poly.zero(d * d, QQ)
    r = rows[0]
    for pos, c in enumerate(cols):
        minor = _laplace_det(d, rows[1:], cols[:pos] + cols[pos + 1:])
        var = Poly.variable(d * r + c, d * d)
        term = (var * minor).scale(frac((-1) ** pos))
        out = out + term
    return out


def test_det_poly_matches_laplace_expansion():
    for d in (2, 3):
        expected = _laplace_det(d, list(range(d)), list(range(d)))
        assert det_poly(d) == expected


def test_power_of_linear_form():
    sq = power_of_linear_form([frac(1), frac(1)], 2)
    assert sq == Poly(2, {(2, 0): frac(1), (1, 1): frac(2), (0, 2): frac(1)})
    a = power_of_linear_form([frac(1), frac(1)], 2).scale(frac(1, 4))
    b = power_of_linear_form([frac(1), frac(-1)], 2).scale(frac(1, 4))
    assert a - b == Poly(2, {(1, 1): frac(1)})
    cube = power_of_linear_form(
        [frac(1) if i in (0, 4, 8) else frac(0) for i in range(9)], 3)
    key = tuple(1 if i in (0, 4, 8) else 0 for i in range(9))
    assert cube.coefficient(key) == 6


def test_substitute_identity_and_inverse():
    d3 = det_poly(3)
    eye = [[frac(i == j) for j in range(9)] for i in range(9)]
    assert substitute(d3, eye) == d3
    assert substitute(d3, LinearChange(eye)) == d3
    rng = random.Random(3)
    F = _random_poly(rng, n=4, degree=3, domain=QQ)
    for _ in range(5):
        M = _random_invertible(rng, 4)
        Minv = _invert(M)
        assert substitute(substitute(F, M), Minv) == F


def test_matrix_substitute_sl_invariance():
    d3 = det_poly(3)
    s1 = [[1, 2, 0], [0, 1, 0], [3, 0, 1]]
    s2 = [[1, 0, 0], [-1, 1, 4], [0, 0, 1]]
    assert matrix_substitute(d3, s1, s2) == d3


def test_trace_form_transformation_rule():
    rng = random.Random(0)
    for _ in range(10):
        A = [[frac(rng.randint(-3, 3)) for _ in range(3)] for _ in range(3)]
        if not any(any(row) for row in A):
            continue
        s1 = _random_sl(rng, 3)
        s2 = _random_sl(rng, 3)
        ell = trace_form(A)
        transformed = matrix_substitute(ell, s1, s2)
        Ap = _mat_mul(_mat_mul(_transpose(s1), A), _transpose(s2))
        assert transformed == trace_form(Ap)


def test_contraction_bilinearity_randomized():
    rng = random.Random(9)
    for _ in range(2000):
        n = rng.randint(1, 4)
        F = _random_poly(rng, n, rng.randint(1, 3))
        G = _random_poly(rng, n, F.degree())
        t1 = _random_poly(rng, n, rng.randint(1, 2))
        t2 = _random_poly(rng, n, t1.degree())
        assert contract(t1 + t2, F) == contract(t1, F) + contract(t2, F)
        assert contract(t1, F + G) == contract(t1, F) + contract(t1, G)


def test_contraction_composition_randomized():
    rng = random.Random(10)
    for _ in range(2000):
        n = rng.randint(1, 4)
        F = _random_poly(rng, n, 4)
        t1 = _random_poly(rng, n, rng.randint(1, 2))
        t2 = _random_poly(rng, n, rng.randint(1, 2))
        assert contract(t1, contract(t2, F)) == contract(t1 * t2, F)


def test_monomial_orders():
    monos = list(monomials_of_degree(3, 2))
    deglex = sorted(monos, key=key_deglex, reverse=True)
    assert deglex[0] == (2, 0, 0) and deglex[-1] == (0, 0, 2)
    # degrevlex: x1^2 > x1x2 > x2^2 > x1x3 > x2x3 > x3^2
    drl = sorted(monos, key=key_degrevlex, reverse=True)
    assert drl == [(2, 0, 0), (1, 1, 0), (0, 2, 0), (1, 0, 1), (0, 1, 1),
                   (0, 0, 2)]


def test_poly_json_round_trip():
    rng = random.Random(4)
    F = _random_poly(rng, 3, 3)
    blob = json.dumps(F.to_json())
    assert Poly.from_json(json.loads(blob)) == F
    # deterministic descending term order in output
    exps = [tuple(t["exps"]) for t in F.to_json()["terms"]]
    assert exps == sorted(exps, key=key_degrevlex, reverse=True)
    # cyclotomic coefficients round trip too
    G = Poly(2, {(1, 0): Cyclotomic6(1, 2), (0, 1): Cyclotomic6(frac(1, 3))}, C6)
    assert Poly.from_json(json.loads(json.dumps(G.to_json()))) == G


def test_poly_over_prime_field():
    F = FP(32003)
    d3 = det_poly(3, F)
    assert len(d3) == 6
    assert contract(d3, d3) == Poly.monomial((0,) * 9, F.from_int(6), F)


def test_homogeneity_assertion():
    F = Poly(2, {(1, 0): frac(1), (2, 0): frac(1)})
    assert not F.is_homogeneous()
    with pytest.raises(ValueError):
        F.assert_homogeneous()


# -- helpers

def _random_poly(rng, n, degree, domain=QQ):
    monos = list(monomials_of_degree(n, degree))
    terms = {}
    for m in rng.sample(monos, min(len(monos), rng.randint(1, 4))):
        c = frac(rng.randint(-5, 5))
        if c:
            terms[m] = c
    if not terms:
        terms = {monos[0]: frac(1)}
    return Poly(n, terms, domain)


def _random_invertible(rng, n):
    while True:
        M = [[frac(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)]
        if _det(M) != 0:
            return M


def _random_sl(rng, n):
    # product of random transvections has determinant one
    M = [[frac(i == j) for j in range(n)] for i in range(n)]
    for _ in range(4):
        i, j = rng.sample(range(n), 2)
        c = frac(rng.randint(-2, 2))
        for t in range(n):
            M[i][t] += c * M[j][t]
    return M


def _det(M):
    n = len(M)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        prod = Fraction(1)
        for i in range(n):
            prod *= M[i][perm[i]]
        total += sign * prod
    return total


def _transpose(M):
    return [list(r) for r in zip(*M)]


def _mat_mul(A, B):
    return [[sum(Fraction(A[i][k]) * Fraction(B[k][j]) for k in range(len(B)))
             for j in range(len(B[0]))] for i in range(len(A))]


def _invert(M):
    n = len(M)
    aug = [[Fraction(v) for v in row] + [Fraction(i == j) for j in range(n)]
           for i, row in enumerate(M)]
    for c in range(n):
        piv = next(i for i in range(c, n) if aug[i][c])
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [v * inv for v in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [vi - f * vc for vi, vc in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]
