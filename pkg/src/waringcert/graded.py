"""Graded algebra presentations and the Koszul-strand Betti engine.

A GradedAlgebra is a finite list of graded-piece dimensions together with
one exact multiplication matrix per variable and degree.  Graded Betti
numbers of the quotient are computed as homology dimensions of one strand
of the Koszul complex at a time,

    Lambda^(i+1) V (x) A_(j-i-1) -> Lambda^i V (x) A_(j-i)
                                 -> Lambda^(i-1) V (x) A_(j-i+1),

never via a full free resolution.  Basis convention for the exterior
powers: strictly increasing index tuples in lexicographic order; the
differential deletes position s with sign (-1)^s, so all matrices are
byte-reproducible.

Three constructors cover every use here: quotients by annihilators of
forms, quotients by monomial ideals, and coordinate rings of finite point
sets (handled directly, without Artinian reduction).  A fourth, parametric
mode computes the generic strand value of a one-parameter family over
Q(lam) by fraction-free elimination and accounts for the finitely many
parameter values where the computed ranks could drop.
"""

from __future__ import annotations

import itertools
import threading
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .apolar import degree_reduction
from .linalg import (rank_any, rank_zpoly_rows, zpoly_primitive,
                     zpoly_rows_from_rf, IncrementalEchelon, LinearSolver)
from .polyring import Poly, key_degrevlex, monomials_of_degree
from .scalars import QQ, QLAM, Domain, UniRationalFunction


class StrandRangeError(ValueError):
    """A strand touched a graded piece outside the computed range."""


class DegenerateInputError(ValueError):
    """Zero or pairwise-proportional points passed for a point ideal."""


class GradedAlgebra:
    """Standard graded algebra given by piece dimensions and multiplication.

    ``mult[k][j]`` maps basis indices of the degree-j piece to sparse
    columns (tuples of (row, coeff)) in the degree-(j+1) piece.
    """

    def __init__(self, n: int, dims, mult, domain: Domain = QQ,
                 zero_beyond: bool = True, description: str = "",
                 denominator_records=None):
        self.n = n
        self.dims = list(dims)
        self.mult = mult
        self.domain = domain
        self.zero_beyond = zero_beyond
        self.description = description
        self.denominator_records = list(denominator_records or [])
        self._diff_cache: dict = {}
        self._rank_cache: dict = {}
        self._lock = threading.Lock()

    @property
    def j_max(self) -> int:
        return len(self.dims) - 1

    def piece_dim(self, j: int) -> int:
        if j < 0:
            return 0
        if j <= self.j_max:
            return self.dims[j]
        if self.zero_beyond:
            return 0
        raise StrandRangeError(
            f"graded piece {j} not computed (have 0..{self.j_max}); "
            "rebuild the algebra with a larger degree bound")

    def mult_map(self, k: int, j: int) -> dict:
        if 0 <= j < len(self.mult[k]):
            return self.mult[k][j]
        return {}

    def check_commutativity(self) -> bool:
        """mult_k(j+1) mult_l(j) == mult_l(j+1) mult_k(j) for all k, l, j."""
        for j in range(self.j_max - 1):
            for k in range(self.n):
                for l in range(k + 1, self.n):
                    if self._compose(k, l, j) != self._compose(l, k, j):
                        return False
        return True

    def _compose(self, k_outer, k_inner, j):
        inner = self.mult_map(k_inner, j)
        outer = self.mult_map(k_outer, j + 1)
        out = {}
        for a, col in inner.items():
            acc = {}
            for b, v in col:
                for c, w in outer.get(b, ()):
                    acc[c] = acc.get(c, self.domain.zero) + v * w
            acc = {c: v for c, v in acc.items() if v}
            if acc:
                out[a] = acc
        return out


# ---------------------------------------------------------------------------
# constructors

def algebra_from_apolar(F: Poly, description: str = "") -> GradedAlgebra:
    """Quotient by the annihilator of F, realized on a monomial cobasis."""
    F.assert_homogeneous()
    if not F:
        raise ValueError("zero form has no apolar algebra")
    d = F.degree()
    dom = F.domain
    n = F.n_vars
    reductions = [degree_reduction(F, j) for j in range(d + 1)]
    dims = [r.dim for r in reductions]
    cob_index = [{m: i for i, m in enumerate(r.cobasis)} for r in reductions]
    mult = [[{} for _ in range(d)] for _ in range(n)]
    records = []
    for r in reductions:
        for zp in r.pivot_record:
            if zp not in records:
                records.append(zp)
    for j in range(d):
        classes = reductions[j + 1].classes
        for a, b in enumerate(reductions[j].cobasis):
            for k in range(n):
                mm = list(b)
                mm[k] += 1
                expr = classes[tuple(mm)]
                if expr:
                    mult[k][j][a] = tuple(expr)
                if dom.name == "qlam":
                    for _, v in expr:
                        if not v.is_polynomial():
                            from .linalg import zpoly_from_fraction_poly
                            zp = zpoly_primitive(
                                zpoly_from_fraction_poly(v.den)[0])
                            if len(zp) > 1 and zp not in records:
                                records.append(zp)
    return GradedAlgebra(n, dims, mult, dom, zero_beyond=True,
                         description=description or f"apolar({F!r})"[:60],
                         denominator_records=records)


def algebra_from_monomial_quotient(generators, n: int, j_max: int,
                                   domain: Domain = QQ,
                                   description: str = "") -> GradedAlgebra:
    """Quotient by a monomial ideal; bases are the standard monomials."""
    gens = [tuple(g) for g in generators]
    for g in gens:
        if len(g) != n:
            raise ValueError("generator has wrong variable count")

    def standard(m):
        return not any(all(m[i] >= g[i] for i in range(n)) for g in gens)

    bases = []
    for j in range(j_max + 1):
        bases.append([m for m in sorted(monomials_of_degree(n, j),
                                        key=key_degrevlex) if standard(m)])
    index = [{m: i for i, m in enumerate(b)} for b in bases]
    dims = [len(b) for b in bases]
    mult = [[{} for _ in range(j_max)] for _ in range(n)]
    one = domain.one
    for j in range(j_max):
        for a, m in enumerate(bases[j]):
            for k in range(n):
                mm = list(m)
                mm[k] += 1
                target = index[j + 1].get(tuple(mm))
                if target is not None:
                    mult[k][j][a] = ((target, one),)
    zero_beyond = dims[j_max] == 0
    return GradedAlgebra(n, dims, mult, domain, zero_beyond=zero_beyond,
                         description=description or f"monomial quotient({len(gens)} gens)")


def algebra_from_points(points, j_max: int, domain: Domain = QQ,
                        description: str = "") -> GradedAlgebra:
    """Coordinate ring of a finite point set, inside k^(#points).

    The degree-j piece is the image of the degree-j evaluation map;
    multiplication by a variable scales coordinatewise by that variable's
    value at each point.  The ideal is one dimensional, so dimensions
    stabilize at the number of points; no Artinian reduction is performed.
    """
    pts = [tuple(domain.from_rational(Fraction(c)) for c in p) for p in points]
    if not pts:
        raise DegenerateInputError("no points given")
    n = len(pts[0])
    npts = len(pts)
    for p in pts:
        if len(p) != n:
            raise DegenerateInputError("points of mixed dimension")
        if not any(p):
            raise DegenerateInputError("zero vector is not a projective point")
    for a in range(npts):
        for b in range(a + 1, npts):
            if _proportional(pts[a], pts[b]):
                raise DegenerateInputError(
                    f"points {a} and {b} are proportional")

    coord = [[pts[c][k] for c in range(npts)] for k in range(n)]
    # once the evaluation image fills k^npts, switch to the standard basis:
    # multiplication then stays coordinatewise and all entries stay small
    bases = [[[domain.one] * npts]]
    full = [npts == 1]
    for j in range(j_max):
        ech = IncrementalEchelon(domain)
        nxt = []
        for k in range(n):
            for b in bases[j]:
                w = [coord[k][c] * b[c] for c in range(npts)]
                if ech.insert({c: v for c, v in enumerate(w) if v}) is not None:
                    nxt.append(w)
                if len(nxt) == npts:
                    break
            if len(nxt) == npts:
                break
        if len(nxt) == npts:
            nxt = [[domain.one if c == r else domain.zero
                    for c in range(npts)] for r in range(npts)]
            full.append(True)
        else:
            full.append(False)
        bases.append(nxt)
    dims = [len(b) for b in bases]
    mult = [[{} for _ in range(j_max)] for _ in range(n)]
    for j in range(j_max):
        solver = None
        if not full[j + 1] and bases[j + 1]:
            solver = LinearSolver(bases[j + 1], domain)
        for a, b in enumerate(bases[j]):
            for k in range(n):
                w = [coord[k][c] * b[c] for c in range(npts)]
                if full[j + 1]:
                    x = w
                elif solver is None:
                    if any(w):
                        raise DegenerateInputError("inconsistent evaluation")
                    continue
                else:
                    x = solver.solve(w)
                entries = tuple((r, v) for r, v in enumerate(x) if v)
                if entries:
                    mult[k][j][a] = entries
    return GradedAlgebra(n, dims, mult, domain, zero_beyond=False,
                         description=description or f"{npts} points")


def _proportional(p, q) -> bool:
    n = len(p)
    for i in range(n):
        for j in range(i + 1, n):
            if p[i] * q[j] != p[j] * q[i]:
                return False
    return True


# ---------------------------------------------------------------------------
# the Koszul strand engine

def _subsets(n: int, i: int):
    return list(itertools.combinations(range(n), i))


def strand_differential(A: GradedAlgebra, i: int, j: int):
    """Columns of Lambda^i V (x) A_(j-i) -> Lambda^(i-1) V (x) A_(j-i+1).

    Returns (columns, domain_dim, codomain_dim) with columns a dict
    col -> list of (row, coeff).  The zero map is an empty dict.
    """
    n = A.n
    t = j - i
    sdim = A.piece_dim(t) if 0 <= i <= n else 0
    cdim = A.piece_dim(t + 1) if i >= 1 else 0
    dom_dim = comb(n, i) * sdim if 0 <= i <= n else 0
    cod_dim = comb(n, i - 1) * cdim if 1 <= i <= n + 1 else 0
    cols: dict = {}
    if dom_dim == 0 or cod_dim == 0:
        return cols, dom_dim, cod_dim
    subs = _subsets(n, i)
    sub_index = {S: si for si, S in enumerate(_subsets(n, i - 1))}
    minus_one = -A.domain.one
    for si, S in enumerate(subs):
        base_col = si * sdim
        for s, k in enumerate(S):
            U = S[:s] + S[s + 1:]
            base_row = sub_index[U] * cdim
            mmap = A.mult_map(k, t)
            negate = s % 2 == 1
            for a, entries in mmap.items():
                col = base_col + a
                lst = cols.get(col)
                if lst is None:
                    lst = cols[col] = []
                for b, v in entries:
                    lst.append((base_row + b, minus_one * v if negate else v))
    return cols, dom_dim, cod_dim


def _differential(A: GradedAlgebra, i: int, j: int):
    key = (i, j)
    with A._lock:
        hit = A._diff_cache.get(key)
    if hit is not None:
        return hit
    val = strand_differential(A, i, j)
    with A._lock:
        A._diff_cache[key] = val
    return val


def _diff_rank(A: GradedAlgebra, i: int, j: int) -> int:
    key = (i, j)
    with A._lock:
        hit = A._rank_cache.get(key)
    if hit is not None:
        return hit
    cols, dom_dim, cod_dim = _differential(A, i, j)
    if not cols:
        r = 0
    else:
        # rank is transpose invariant: feed columns as sparse rows
        rows = [dict(entries) for entries in cols.values()]
        r = rank_any(rows, A.domain, ncols=cod_dim)
    with A._lock:
        A._rank_cache[key] = r
    return r


def _check_complex(A: GradedAlgebra, i: int, j: int):
    """Verify the two consecutive strand differentials compose to zero."""
    cols_in, _, _ = _differential(A, i + 1, j)
    cols_out, _, _ = _differential(A, i, j)
    if not cols_in or not cols_out:
        return
    zero = A.domain.zero
    for entries in cols_in.values():
        acc: dict = {}
        for m, v in entries:
            for r, w in cols_out.get(m, ()):
                acc[r] = acc.get(r, zero) + v * w
        for r, v in acc.items():
            if v:
                raise AssertionError(
                    f"Koszul differentials at strand ({i},{j}) do not compose to zero")


def koszul_strand_betti(A: GradedAlgebra, i: int, j: int) -> int:
    """Graded Betti number beta_(i,j) of the quotient presented by A."""
    if not 0 <= i <= A.n:
        raise StrandRangeError(f"homological index {i} outside 0..{A.n}")
    mid = comb(A.n, i) * A.piece_dim(j - i)
    if mid == 0:
        # still insist the neighbouring pieces are known
        A.piece_dim(j - i + 1)
        return 0
    _check_complex(A, i, j)
    return mid - _diff_rank(A, i, j) - _diff_rank(A, i + 1, j)


# ---------------------------------------------------------------------------
# Betti tables

@dataclass
class BettiTable:
    """Sparse map (homological index i, internal degree j) -> multiplicity."""

    entries: dict
    description: str = ""
    domain_name: str = "rational"

    def __post_init__(self):
        self.entries = {k: v for k, v in self.entries.items() if v}

    def value(self, i: int, j: int) -> int:
        return self.entries.get((i, j), 0)

    def i_max(self) -> int:
        return max((i for i, _ in self.entries), default=0)

    def row_max(self) -> int:
        return max((j - i for i, j in self.entries), default=0)

    def totals(self) -> list:
        out = [0] * (self.i_max() + 1)
        for (i, _), v in self.entries.items():
            out[i] += v
        return out

    def __eq__(self, other):
        if not isinstance(other, BettiTable):
            return NotImplemented
        return self.entries == other.entries

    def text(self) -> str:
        imax = self.i_max()
        rmax = self.row_max()
        totals = self.totals()
        header = [""] + [str(i) for i in range(imax + 1)]
        rows = [header, ["total:"] + [str(t) for t in totals]]
        for r in range(rmax + 1):
            row = [f"{r}:"]
            for i in range(imax + 1):
                v = self.value(i, i + r)
                row.append(str(v) if v else ".")
            rows.append(row)
        widths = [max(len(row[c]) for row in rows) for c in range(imax + 2)]
        lines = [" ".join(cell.rjust(w) for cell, w in zip(row, widths))
                 for row in rows]
        return "\n".join(lines)

    def to_json(self) -> dict:
        triples = [{"i": i, "j": j, "value": v}
                   for (i, j), v in sorted(self.entries.items())]
        return {
            "description": self.description,
            "domain": self.domain_name,
            "entries": triples,
            "totals": self.totals(),
        }


def betti_table(A: GradedAlgebra, i_max: int, j_max: int,
                threads: int = 1) -> BettiTable:
    """All beta_(i,j) for i <= i_max, j <= j_max."""
    i_cap = min(i_max, A.n)
    jobs = []
    for i in range(i_cap + 1):
        for j in range(i, j_max + 1):
            t = j - i
            if t > A.j_max and A.zero_beyond:
                continue
            jobs.append((i, j))
    entries = {}
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for (i, j), v in zip(jobs, pool.map(
                    lambda ij: koszul_strand_betti(A, *ij), jobs)):
                if v:
                    entries[(i, j)] = v
    else:
        for i, j in jobs:
            v = koszul_strand_betti(A, i, j)
            if v:
                entries[(i, j)] = v
    return BettiTable(entries, description=A.description,
                      domain_name=A.domain.name)


# ---------------------------------------------------------------------------
# the one-parameter family mode

@dataclass
class ParametricFamily:
    """A graded algebra over Q(lam) plus an exact specialization hook."""

    algebra: GradedAlgebra
    specialize: object          # Callable[[Fraction], GradedAlgebra]
    description: str = ""


@dataclass
class ParametricStrandResult:
    """Generic strand value of a family plus exceptional-value accounting.

    The generic value holds for every parameter outside the roots of the
    recorded pivot polynomials.  Rational roots are re-checked exactly and
    reported in resolved_specials; irreducible factors without rational
    roots are listed unresolved (they are data, not failures).
    """

    i: int
    j: int
    generic_value: int
    pivot_polynomials: list
    resolved_specials: dict
    unresolved_specials: list
    monotone_ok: bool = True
    description: str = ""

    def max_resolved(self):
        return max(self.resolved_specials.values(), default=None)

    def to_json(self) -> dict:
        from .scalars import rational_to_string
        return {
            "strand": [self.i, self.j],
            "description": self.description,
            "generic_value": self.generic_value,
            "pivot_polynomials": [list(p) for p in self.pivot_polynomials],
            "resolved_specials": {
                rational_to_string(k): v
                for k, v in sorted(self.resolved_specials.items())},
            "unresolved_specials": [list(p) for p in self.unresolved_specials],
            "generic_not_above_specials": self.monotone_ok,
        }


def _rational_root_split(polys):
    """Split Z[lam] polynomials into rational roots and rootless factors."""
    import sympy
    x = sympy.Symbol("x")
    roots = set()
    rootless = []
    for zp in polys:
        if len(zp) <= 1:
            continue
        sp = sympy.Poly(list(reversed(zp)), x)
        _, factors = sp.factor_list()
        for f, _mult in factors:
            cs = f.all_coeffs()
            if len(cs) == 2:
                roots.add(Fraction(-cs[1], cs[0]))
            elif len(cs) > 2:
                key = zpoly_primitive(tuple(int(c) for c in reversed(cs)))
                if key not in rootless:
                    rootless.append(key)
    return sorted(roots), rootless


def parametric_strand_betti(family: ParametricFamily, i: int,
                            j: int) -> ParametricStrandResult:
    """Generic beta_(i,j) over Q(lam) with pivot-root accounting."""
    A = family.algebra
    if A.domain.name != "qlam":
        raise ValueError("parametric mode needs a Q(lam) family")
    if not 0 <= i <= A.n:
        raise StrandRangeError(f"homological index {i} outside 0..{A.n}")
    mid = comb(A.n, i) * A.piece_dim(j - i)
    _check_complex(A, i, j)
    pivots = [zpoly_primitive(p) for p in A.denominator_records]
    pivots = [p for p in pivots if len(p) > 1]
    ranks = []
    for ii in (i, i + 1):
        cols, _, _ = _differential(A, ii, j)
        if not cols:
            ranks.append(0)
            continue
        rows = [dict(entries) for entries in cols.values()]
        zrows, scalings = zpoly_rows_from_rf(rows)
        r, rec = rank_zpoly_rows(zrows)
        ranks.append(r)
        for p in rec + scalings:
            if len(p) > 1 and p not in pivots:
                pivots.append(p)
    generic = mid - ranks[0] - ranks[1]
    roots, rootless = _rational_root_split(pivots)
    resolved = {}
    for lam0 in roots:
        Aq = family.specialize(lam0)
        resolved[lam0] = koszul_strand_betti(Aq, i, j)
    monotone_ok = all(v >= generic for v in resolved.values())
    if not monotone_ok:
        warnings.warn("a specialized strand value fell below the generic "
                      "value; this cannot happen for minimal strands")
    return ParametricStrandResult(
        i=i, j=j, generic_value=generic, pivot_polynomials=pivots,
        resolved_specials=resolved, unresolved_specials=rootless,
        monotone_ok=monotone_ok, description=family.description)


# ---------------------------------------------------------------------------
# cross-field sanity checking

def strand_cross_check(F: Poly, i: int, j: int,
                       primes=(32003, 46337)) -> dict:
    """Compare a strand value over Q with the same value modulo a prime.

    Equality can fail only on finitely many primes; on a mismatch the
    computation is retried with the second prime and a warning is issued.
    """
    from .scalars import FP
    if F.domain is not QQ:
        raise ValueError("cross-check starts from a rational form")
    value_q = koszul_strand_betti(algebra_from_apolar(F), i, j)
    report = {"strand": [i, j], "value_q": value_q, "primes_tried": []}
    for attempt, p in enumerate(primes):
        Fp = F.map_domain(FP(p))
        value_p = koszul_strand_betti(algebra_from_apolar(Fp), i, j)
        report["primes_tried"].append({"p": p, "value": value_p})
        if value_p == value_q:
            report["agreed"] = True
            report["prime"] = p
            return report
        warnings.warn(f"strand ({i},{j}) disagreed modulo {p} "
                      f"({value_p} vs {value_q} over Q); retrying")
    report["agreed"] = False
    return report
