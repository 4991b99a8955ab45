"""Exact rank and echelon kernels.

Four rank engines, picked by coefficient domain:

* sparse fraction-free elimination over the integers (rationals enter by
  clearing denominators row by row); rows stay integer throughout, growth is
  controlled by cross-multiplication against the pivot followed by gcd
  stripping, and pivots are chosen with a Markowitz-style fewest-entries
  heuristic so fill-in stays low,
* dense elimination over a prime field (numpy, vectorized),
* sparse elimination over an arbitrary exact field (generic fallback),
* sparse fraction-free elimination over Z[lam] that additionally records
  every pivot polynomial and row-clearing denominator, so callers can
  certify for which parameter values the generic rank specializes.

Matrices are lists of sparse rows ``dict[col, value]``.  Rank is side
agnostic, so callers may feed columns as rows when that is cheaper.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

import numpy as np


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


# ---------------------------------------------------------------------------
# sparse integer elimination

def rank_int_rows(rows) -> int:
    """Rank of a sparse integer matrix given as an iterable of dict rows."""
    work = []
    for r in rows:
        nr = {c: v for c, v in r.items() if v}
        if nr:
            work.append(nr)
    col_rows: dict[int, set[int]] = {}
    for ri, r in enumerate(work):
        for c in r:
            col_rows.setdefault(c, set()).add(ri)

    rank = 0
    while col_rows:
        # Markowitz-style pivot hunt: singleton columns are free; otherwise
        # score a few of the sparsest columns by fill-in, preferring unit
        # and small pivot values to curb integer growth
        best = None
        mincount = min(len(s) for s in col_rows.values())
        if mincount == 1:
            c0 = min(c for c, s in col_rows.items() if len(s) == 1)
            p = next(iter(col_rows[c0]))
        else:
            candidates = sorted(
                (c for c, s in col_rows.items() if len(s) <= mincount + 1),
                key=lambda c: (len(col_rows[c]), c))[:6]
            for c in candidates:
                cc = len(col_rows[c]) - 1
                for ri in col_rows[c]:
                    v = work[ri][c]
                    score = ((len(work[ri]) - 1) * cc,
                             abs(v) != 1, v.bit_length(), ri, c)
                    if best is None or score < best[0]:
                        best = (score, c, ri)
            c0, p = best[1], best[2]
        rows_in = col_rows.pop(c0)
        prow = work[p]
        a = prow.pop(c0)
        for c in prow:
            s = col_rows.get(c)
            if s is not None:
                s.discard(p)
                if not s:
                    del col_rows[c]
        for ri in rows_in:
            if ri == p:
                continue
            r = work[ri]
            b = r.pop(c0)
            g = gcd(a, b)
            ma = a // g
            mb = b // g
            if ma != 1:
                for c in r:
                    r[c] *= ma
            for c, v in prow.items():
                w = r.get(c, 0) - mb * v
                if w:
                    if c not in r:
                        col_rows.setdefault(c, set()).add(ri)
                    r[c] = w
                elif c in r:
                    del r[c]
                    s = col_rows.get(c)
                    if s is not None:
                        s.discard(ri)
                        if not s:
                            del col_rows[c]
            if r:
                g2 = 0
                for v in r.values():
                    g2 = gcd(g2, v)
                    if g2 == 1:
                        break
                if g2 > 1:
                    for c in r:
                        r[c] //= g2
        work[p] = prow  # retired; no column references remain
        rank += 1
    return rank


def clear_row_denominators(row) -> dict:
    """Scale a sparse Fraction row to a content-free integer row."""
    den = 1
    for v in row.values():
        f = Fraction(v)
        if f.denominator != 1:
            den = _lcm(den, f.denominator)
    out = {}
    for c, v in row.items():
        f = Fraction(v) * den
        if f:
            out[c] = int(f)
    return out


def rank_rational_rows(rows) -> int:
    """Rank of a sparse matrix with Fraction (or int) entries."""
    return rank_int_rows([clear_row_denominators(r) for r in rows])


# ---------------------------------------------------------------------------
# dense elimination over a prime field

def rank_mod_p(rows, ncols: int, p: int) -> int:
    """Rank via plain dense row reduction modulo p (p^2 must fit in int64)."""
    nrows = len(rows)
    if nrows == 0 or ncols == 0:
        return 0
    A = np.zeros((nrows, ncols), dtype=np.int64)
    for i, r in enumerate(rows):
        for c, v in r.items():
            A[i, c] = v % p
    rank = 0
    for c in range(ncols):
        if rank == nrows:
            break
        nz = np.nonzero(A[rank:, c])[0]
        if len(nz) == 0:
            continue
        i = rank + int(nz[0])
        if i != rank:
            A[[rank, i]] = A[[i, rank]]
        inv = pow(int(A[rank, c]), p - 2, p)
        A[rank, c:] = (A[rank, c:] * inv) % p
        below = np.nonzero(A[rank + 1:, c])[0] + rank + 1
        if len(below):
            A[below, c:] = (A[below, c:]
                            - np.outer(A[below, c], A[rank, c:])) % p
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# sparse elimination over a generic exact field

def rank_field_rows(rows, domain) -> int:
    work = []
    for r in rows:
        nr = {c: v for c, v in r.items() if v}
        if nr:
            work.append(nr)
    col_rows: dict[int, set[int]] = {}
    for ri, r in enumerate(work):
        for c in r:
            col_rows.setdefault(c, set()).add(ri)
    rank = 0
    while col_rows:
        c0 = min(col_rows, key=lambda c: (len(col_rows[c]), c))
        rows_in = col_rows.pop(c0)
        p = min(rows_in, key=lambda ri: (len(work[ri]), ri))
        prow = work[p]
        a = prow.pop(c0)
        inv_a = domain.inv(a)
        for c in prow:
            s = col_rows.get(c)
            if s is not None:
                s.discard(p)
                if not s:
                    del col_rows[c]
        for ri in rows_in:
            if ri == p:
                continue
            r = work[ri]
            f = r.pop(c0) * inv_a
            for c, v in prow.items():
                w = r.get(c, domain.zero) - f * v
                if w:
                    if c not in r:
                        col_rows.setdefault(c, set()).add(ri)
                    r[c] = w
                elif c in r:
                    del r[c]
                    s = col_rows.get(c)
                    if s is not None:
                        s.discard(ri)
                        if not s:
                            del col_rows[c]
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# sparse elimination over Z[lam] with pivot accounting

def _zp_trim(c) -> tuple:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _zp_mul(a, b) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, va in enumerate(a):
        if va:
            for j, vb in enumerate(b):
                out[i + j] += va * vb
    return _zp_trim(out)


def _zp_sub(a, b) -> tuple:
    n = max(len(a), len(b))
    out = [0] * n
    for i, v in enumerate(a):
        out[i] = v
    for i, v in enumerate(b):
        out[i] -= v
    return _zp_trim(out)


def zpoly_from_fraction_poly(coeffs) -> tuple[tuple, int]:
    """Z[lam] polynomial plus the positive denominator cleared from Q[lam]."""
    den = 1
    for v in coeffs:
        f = Fraction(v)
        if f.denominator != 1:
            den = _lcm(den, f.denominator)
    return _zp_trim(int(Fraction(v) * den) for v in coeffs), den


def zpoly_content(a) -> int:
    g = 0
    for v in a:
        g = gcd(g, v)
        if g == 1:
            return 1
    return g


def zpoly_primitive(a) -> tuple:
    """Content-free form with positive leading coefficient."""
    a = _zp_trim(a)
    if not a:
        return ()
    g = zpoly_content(a)
    if a[-1] < 0:
        g = -g
    if g != 1:
        a = tuple(v // g for v in a)
    return a


def rank_zpoly_rows(rows):
    """Rank over Q(lam) of a sparse matrix with Z[lam] entries.

    Returns (rank, pivot_record) where pivot_record collects every
    nonconstant pivot polynomial and every nonconstant row scaling met during
    the elimination, in primitive form.  Outside the roots of the recorded
    polynomials the elimination transcript specializes verbatim, so the
    specialized matrix has the same rank.
    """
    work = []
    for r in rows:
        nr = {c: _zp_trim(v) for c, v in r.items() if _zp_trim(v)}
        if nr:
            work.append(nr)
    record: list[tuple] = []

    def note(poly):
        p = zpoly_primitive(poly)
        if poly_degree_int(p) >= 1 and p not in record:
            record.append(p)

    col_rows: dict[int, set[int]] = {}
    for ri, r in enumerate(work):
        for c in r:
            col_rows.setdefault(c, set()).add(ri)
    rank = 0
    while col_rows:
        # prefer low-degree pivots so most updates multiply by constants
        c0 = min(col_rows,
                 key=lambda c: (min(len(work[ri][c]) for ri in col_rows[c]),
                                len(col_rows[c]), c))
        rows_in = col_rows.pop(c0)
        p = min(rows_in, key=lambda ri: (len(work[ri][c0]), len(work[ri]), ri))
        prow = work[p]
        a = prow.pop(c0)
        note(a)
        for c in prow:
            s = col_rows.get(c)
            if s is not None:
                s.discard(p)
                if not s:
                    del col_rows[c]
        for ri in rows_in:
            if ri == p:
                continue
            r = work[ri]
            b = r.pop(c0)
            if len(a) == 1 and len(b) == 1:
                g = gcd(a[0], b[0])
                ma, mb = (a[0] // g,), (b[0] // g,)
            else:
                ma, mb = a, b
            for c in list(r):
                r[c] = _zp_mul(r[c], ma)
                if not r[c]:
                    del r[c]
            for c, v in prow.items():
                w = _zp_sub(r.get(c, ()), _zp_mul(mb, v))
                if w:
                    if c not in r:
                        col_rows.setdefault(c, set()).add(ri)
                    r[c] = w
                elif c in r:
                    del r[c]
                    s = col_rows.get(c)
                    if s is not None:
                        s.discard(ri)
                        if not s:
                            del col_rows[c]
            if r:
                g2 = 0
                for v in r.values():
                    g2 = gcd(g2, zpoly_content(v))
                    if g2 == 1:
                        break
                # strip a common power of lam as well; scaling a row by
                # lam^-k is only valid away from lam = 0, so record it
                val = min(next(i for i, x in enumerate(v) if x) for v in r.values())
                if val > 0:
                    note((0, 1))
                if g2 > 1 or val > 0:
                    for c in list(r):
                        v = r[c][val:] if val else r[c]
                        if g2 > 1:
                            v = tuple(x // g2 for x in v)
                        r[c] = v
        rank += 1
    return rank, record


def poly_degree_int(a) -> int:
    return len(_zp_trim(a)) - 1


def zpoly_rows_from_rf(rows):
    """Convert rows with UniRationalFunction entries to Z[lam] rows.

    Each row is scaled uniformly: by the polynomial lcm of its denominators
    and then by one integer clearing every coefficient.  The nonconstant
    polynomial scalings are returned alongside, since a scaled row only
    matches the original away from the scaling's roots.
    """
    from .scalars import poly_gcd, poly_divmod, poly_mul as qp_mul
    out = []
    scalings = []
    for r in rows:
        lcm = (Fraction(1),)
        for v in r.values():
            g = poly_gcd(lcm, v.den)
            lcm = poly_divmod(qp_mul(lcm, v.den), g)[0]
        qrow = {c: qp_mul(v.num, poly_divmod(lcm, v.den)[0])
                for c, v in r.items()}
        den = 1
        for poly in qrow.values():
            for coef in poly:
                f = Fraction(coef)
                if f.denominator != 1:
                    den = _lcm(den, f.denominator)
        nr = {}
        for c, poly in qrow.items():
            zp = _zp_trim(int(Fraction(x) * den) for x in poly)
            if zp:
                nr[c] = zp
        out.append(nr)
        if len(lcm) > 1:
            zl, _ = zpoly_from_fraction_poly(lcm)
            zl = zpoly_primitive(zl)
            if zl not in scalings:
                scalings.append(zl)
    return out, scalings


# ---------------------------------------------------------------------------
# rank dispatch by scalar domain

def rank_any(rows, domain, ncols=None) -> int:
    name = domain.name
    if name == "rational":
        return rank_rational_rows(rows)
    if name.startswith("fp:"):
        if ncols is None:
            ncols = 1 + max((max(r) for r in rows if r), default=-1)
        int_rows = [{c: v.residue for c, v in r.items()} for r in rows]
        return rank_mod_p(int_rows, ncols, domain.p)
    if name == "qlam":
        zrows, _ = zpoly_rows_from_rf(rows)
        return rank_zpoly_rows(zrows)[0]
    return rank_field_rows(rows, domain)


# ---------------------------------------------------------------------------
# dense reduced row echelon form over a generic exact field

def rref_dense(mat, domain, pivot_log=None):
    """RREF of a dense matrix (list of row lists).  Returns (pivots, rows).

    Pivot columns are chosen left to right, so callers control the greedy
    basis selection through the column order they pass in.  When a
    ``pivot_log`` list is supplied, the pivot values found (before
    normalization) are appended to it.
    """
    rows = [list(r) for r in mat]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    rank = 0
    for c in range(ncols):
        sel = None
        for i in range(rank, len(rows)):
            if rows[i][c]:
                sel = i
                break
        if sel is None:
            continue
        rows[rank], rows[sel] = rows[sel], rows[rank]
        if pivot_log is not None:
            pivot_log.append(rows[rank][c])
        inv = domain.inv(rows[rank][c])
        rows[rank] = [v * inv for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c]
                rows[i] = [vi - f * vr for vi, vr in zip(rows[i], rows[rank])]
        pivots.append(c)
        rank += 1
        if rank == len(rows):
            break
    return pivots, rows[:rank]


class IncrementalEchelon:
    """Growing row space over an exact field, with membership testing.

    Rows are sparse dicts.  Each stored pivot row leads (has its minimal
    column) at a distinct column and is normalized to pivot value one, so
    reduction of an incoming row terminates after finitely many single-pivot
    eliminations.
    """

    def __init__(self, domain):
        self.domain = domain
        self.pivot_rows: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    def reduce(self, row) -> dict:
        row = {c: v for c, v in row.items() if v}
        while row:
            lead = min(row)
            prow = self.pivot_rows.get(lead)
            if prow is None:
                return row
            f = row[lead]
            for c, v in prow.items():
                w = row.get(c, self.domain.zero) - f * v
                if w:
                    row[c] = w
                elif c in row:
                    del row[c]
        return row

    def insert(self, row) -> dict | None:
        """Reduce and adjoin; returns the normalized new pivot row, or None
        if the row was already in the span."""
        row = self.reduce(row)
        if not row:
            return None
        lead = min(row)
        inv = self.domain.inv(row[lead])
        row = {c: v * inv for c, v in row.items()}
        self.pivot_rows[lead] = row
        return row

    def contains(self, row) -> bool:
        return not self.reduce(row)


class LinearSolver:
    """Solve M x = v for a fixed full-column-rank M over an exact field."""

    def __init__(self, columns, domain):
        self.domain = domain
        self.ncols = len(columns)
        nrows = len(columns[0]) if columns else 0
        # RREF of [M | I] gives x directly from the transformed right side
        aug = []
        for i in range(nrows):
            row = [col[i] for col in columns]
            row.extend(domain.one if j == i else domain.zero
                       for j in range(nrows))
            aug.append(row)
        pivots, rows = rref_dense(aug, domain)
        self._rows = rows
        self._pivots = pivots
        if pivots[:self.ncols] != list(range(self.ncols)):
            raise ValueError("columns are linearly dependent")

    def solve(self, v):
        dom = self.domain
        x = [dom.zero] * self.ncols
        for rowi, pc in enumerate(self._pivots):
            val = dom.zero
            row = self._rows[rowi]
            for i, vi in enumerate(v):
                if vi:
                    val = val + row[self.ncols + i] * vi
            if pc < self.ncols:
                x[pc] = val
            elif val:
                raise ValueError("vector outside the span of the columns")
        return x
