import random
from fractions import Fraction

import sympy

from waringcert.linalg import (IncrementalEchelon, LinearSolver, rank_any,
                               rank_field_rows, rank_int_rows, rank_mod_p,
                               rank_rational_rows, rank_zpoly_rows,
                               rref_dense, zpoly_primitive, zpoly_rows_from_rf)
from waringcert.scalars import C6, QQ, Cyclotomic6, UniRationalFunction


def _sympy_rank(rows, ncols):
    mat = sympy.zeros(len(rows), ncols)
    for i, r in enumerate(rows):
        for c, v in r.items():
            mat[i, c] = sympy.Rational(v)
    return mat.rank()


def test_rank_engines_agree_with_sympy():
    rng = random.Random(11)
    for _ in range(120):
        nrows, ncols = rng.randint(1, 8), rng.randint(1, 8)
        rows = []
        for _ in range(nrows):
            rows.append({c: Fraction(rng.randint(-5, 5), rng.randint(1, 3))
                         for c in range(ncols) if rng.random() < 0.5})
        expected = _sympy_rank(rows, ncols)
        assert rank_rational_rows(rows) == expected
        int_rows = [{c: (v.numerator if v.denominator == 1 else None)
                     for c, v in r.items()} for r in rows]
        if all(v is not None for r in int_rows for v in r.values()):
            assert rank_int_rows(int_rows) == expected
        assert rank_mod_p([{c: int(v * 6) for c, v in r.items()} for r in rows],
                          ncols, 32003) == _sympy_rank(
            [{c: v * 6 for c, v in r.items()} for r in rows], ncols)


def test_rank_field_rows_cyclotomic():
    t = Cyclotomic6(0, 1)
    one = Cyclotomic6(1)
    rows = [{0: t, 1: one}, {0: t * t, 1: t}, {2: one - t}]
    # second row is theta times the first
    assert rank_field_rows([dict(r) for r in rows], C6) == 2


def test_zpoly_rank_specialization_property():
    rng = random.Random(5)
    x = sympy.Symbol("x")
    for _ in range(150):
        nrows, ncols = rng.randint(2, 7), rng.randint(2, 7)
        rows = []
        for _ in range(nrows):
            r = {}
            for c in range(ncols):
                if rng.random() < 0.5:
                    deg = rng.choice([0, 0, 1, 2])
                    r[c] = tuple(rng.randint(-3, 3) for _ in range(deg + 1))
            rows.append({c: p for c, p in r.items() if any(p)})
        rgen, record = rank_zpoly_rows([dict(r) for r in rows])
        roots = set()
        for p in record:
            for rt in sympy.roots(sympy.Poly(list(reversed(p)), x),
                                  filter="Q"):
                roots.add(Fraction(sympy.Rational(rt)))
        for lam0 in (Fraction(1), Fraction(2), Fraction(-1), Fraction(5, 3)):
            spec = []
            for r in rows:
                nr = {}
                for c, poly in r.items():
                    v = sum(Fraction(k) * lam0 ** i for i, k in enumerate(poly))
                    if v:
                        nr[c] = v
                spec.append(nr)
            rs = rank_rational_rows(spec)
            assert rs <= rgen
            if lam0 not in roots:
                assert rs == rgen


def test_zpoly_rows_from_rf_scales_rows_uniformly():
    row = {0: UniRationalFunction((Fraction(1, 2),)),
           1: UniRationalFunction((0, 1)),
           2: UniRationalFunction((Fraction(1, 3),), (1, 1))}
    zrows, scalings = zpoly_rows_from_rf([row])
    assert zrows[0] == {0: (3, 3), 1: (0, 6, 6), 2: (2,)}
    assert scalings == [(1, 1)]


def test_zpoly_primitive():
    assert zpoly_primitive((2, -4, 6)) == (1, -2, 3)
    assert zpoly_primitive((-3, 0, -6)) == (1, 0, 2)  # positive lead
    assert zpoly_primitive((0, 0)) == ()


def test_rref_dense_and_solver():
    pivots, rows = rref_dense([[Fraction(0), Fraction(2), Fraction(2)],
                               [Fraction(1), Fraction(1), Fraction(0)]], QQ)
    assert pivots == [0, 1]
    assert rows[0][2] == Fraction(-1) and rows[1][2] == Fraction(1)
    solver = LinearSolver([[Fraction(1), Fraction(0), Fraction(2)],
                           [Fraction(1), Fraction(1), Fraction(3)]], QQ)
    assert solver.solve([Fraction(5), Fraction(2), Fraction(12)]) == \
        [Fraction(3), Fraction(2)]
    import pytest
    with pytest.raises(ValueError):
        solver.solve([Fraction(1), Fraction(0), Fraction(0)])


def test_incremental_echelon_membership():
    ech = IncrementalEchelon(QQ)
    assert ech.insert({0: Fraction(2), 1: Fraction(4)}) is not None
    assert ech.insert({0: Fraction(1), 1: Fraction(2)}) is None
    assert ech.insert({1: Fraction(1)}) is not None
    assert ech.rank == 2
    assert ech.contains({0: Fraction(5), 1: Fraction(11)})
    assert not ech.contains({2: Fraction(1)})


def test_rank_any_dispatch():
    rows = [{0: Fraction(1), 1: Fraction(2)}, {0: Fraction(2), 1: Fraction(4)}]
    assert rank_any(rows, QQ) == 1
    from waringcert.scalars import FP
    F = FP(32003)
    frows = [{0: F.from_int(1)}, {1: F.from_int(3)}]
    assert rank_any(frows, F, ncols=2) == 2
