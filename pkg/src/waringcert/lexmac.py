"""Macaulay growth bounds, h-vector enumeration, lex-segment ideals, and
the consecutive-cancellation lower bound for linear-strand Betti numbers.

The pipeline: every one-dimensional saturated ideal of given degree with no
linear form has an h-vector constrained by Macaulay growth; each admissible
h-vector has a lex-segment ideal extremal for Betti numbers; cancellation
(Peeva) bounds the strand Betti number from below by
beta_(i,i+1)(lex) - beta_(i-1,i+1)(lex); minimizing over the admissible
h-vectors yields a threshold valid for every such ideal.

Lex ideals are built in h_1 variables (the Artinian reduction, which has
the same graded Betti numbers), with "initial segment" meaning largest in
degree-lex order on y_1 > y_2 > ...  Betti numbers of stable monomial
ideals come from the Eliahou-Kervaire formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .graded import BettiTable
from .polyring import key_deglex, monomials_of_degree


def macaulay_representation(h: int, t: int) -> list:
    """The t-th binomial representation of h: decreasing a_t > ... > a_s >= s."""
    if h < 0 or t < 1:
        raise ValueError("need h >= 0 and t >= 1")
    rep = []
    while h > 0 and t >= 1:
        a = t
        while comb(a + 1, t) <= h:
            a += 1
        rep.append((a, t))
        h -= comb(a, t)
        t -= 1
    if h:
        raise ValueError("binomial representation failed")  # unreachable
    return rep


def macaulay_next(h: int, t: int) -> int:
    """Macaulay's bound h^<t> on the next Hilbert-function value."""
    if h == 0:
        return 0
    return sum(comb(a + 1, b + 1) for a, b in macaulay_representation(h, t))


@dataclass(frozen=True)
class HVector:
    entries: tuple

    def __post_init__(self):
        if not self.entries or self.entries[0] != 1:
            raise ValueError("h-vector must start with 1")
        if any(e < 0 for e in self.entries):
            raise ValueError("h-vector entries must be nonnegative")

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def degree(self) -> int:
        return sum(self.entries)

    def satisfies_macaulay_growth(self) -> bool:
        for t in range(1, len(self.entries) - 1):
            if self.entries[t + 1] > macaulay_next(self.entries[t], t):
                return False
        return True

    def __repr__(self):
        return "(" + ",".join(str(e) for e in self.entries) + ")"


def enumerate_hvectors(embedding_dim: int, degree: int) -> list:
    """All h-vectors (1, n-1, h_2, ...) of the given total degree allowed by
    Macaulay growth and the nonincreasing rule.

    The rule encoded is exactly the constraint pair the threshold argument
    needs: growth h_(t+1) <= h_t^<t>, and once some entry satisfies
    h_t <= t the remaining entries are nonincreasing.  No further
    constraints are imposed, so the enumeration can only over-approximate
    the true set of h-vectors, which keeps downstream minima valid bounds.
    """
    h1 = embedding_dim - 1
    if degree < 1 + h1:
        raise ValueError(
            f"degree {degree} cannot start (1,{h1},...): too small")
    results = []

    def extend(prefix, remaining, nonincreasing):
        if remaining == 0:
            results.append(HVector(tuple(prefix)))
            return
        t = len(prefix)
        last = prefix[-1]
        cap = macaulay_next(last, t - 1) if t >= 2 else remaining
        cap = min(cap, remaining)
        if nonincreasing:
            cap = min(cap, last)
        for nxt in range(cap, 0, -1):
            extend(prefix + [nxt], remaining - nxt,
                   nonincreasing or nxt <= t)
        return

    extend([1, h1], degree - 1 - h1, h1 <= 1)
    results.sort(key=lambda h: h.entries, reverse=True)
    return results


# ---------------------------------------------------------------------------
# lex-segment ideals

@dataclass
class LexIdeal:
    """Monomial ideal whose graded pieces are degree-lex initial segments."""

    m: int                       # ambient variable count (Artinian reduction)
    hvector: HVector
    pieces: dict                 # degree -> ordered list of exponent tuples
    min_generators: list         # list of (degree, exponents, max_index)

    def piece_set(self, t: int) -> set:
        return set(self.pieces.get(t, ()))

    def is_strongly_stable(self) -> bool:
        """Every y_j -> y_i swap (i < j) on an ideal monomial stays inside."""
        for t, monos in self.pieces.items():
            inside = set(monos)
            for mono in monos:
                for j in range(self.m):
                    if mono[j] == 0:
                        continue
                    for i in range(j):
                        swapped = list(mono)
                        swapped[j] -= 1
                        swapped[i] += 1
                        if tuple(swapped) not in inside:
                            return False
        return True

    def quotient_hilbert_function(self) -> tuple:
        out = []
        for t in range(len(self.hvector) + 1):
            total = comb(self.m - 1 + t, t)
            out.append(total - len(self.pieces.get(t, ())))
        return tuple(out)


def lex_segment_ideal(h: HVector | tuple) -> LexIdeal:
    """The lex ideal in h_1 variables whose quotient has Hilbert function h."""
    if not isinstance(h, HVector):
        h = HVector(tuple(h))
    if not h.satisfies_macaulay_growth():
        raise ValueError(f"h-vector {h} violates Macaulay growth")
    m = h[1]
    if m < 1:
        raise ValueError("need at least one variable")
    entries = list(h.entries) + [0]
    pieces = {}
    for t in range(1, len(entries)):
        ht = entries[t] if t < len(entries) else 0
        monos = sorted(monomials_of_degree(m, t), key=key_deglex, reverse=True)
        cut = len(monos) - ht
        if cut < 0:
            raise ValueError(f"h-vector {h} infeasible in {m} variables")
        pieces[t] = monos[:cut]
    # ideal property: the segment in degree t must absorb variable multiples
    # of the previous segment (guaranteed by Macaulay admissibility)
    for t in range(2, len(entries)):
        inside = set(pieces[t])
        for mono in pieces[t - 1]:
            for k in range(m):
                up = list(mono)
                up[k] += 1
                if tuple(up) not in inside:
                    raise ValueError(
                        f"h-vector {h} does not define an ideal in degree {t}")
    min_generators = []
    for t in range(1, len(entries)):
        prev = set(pieces.get(t - 1, ()))
        for mono in pieces[t]:
            if not _has_divisor_in(mono, prev):
                max_index = max(i for i, e in enumerate(mono) if e) + 1
                min_generators.append((t, mono, max_index))
    return LexIdeal(m=m, hvector=h, pieces=pieces, min_generators=min_generators)


def _has_divisor_in(mono, prev: set) -> bool:
    for i, e in enumerate(mono):
        if e:
            down = list(mono)
            down[i] -= 1
            if tuple(down) in prev:
                return True
    return False


# ---------------------------------------------------------------------------
# Eliahou-Kervaire Betti numbers

def ek_betti(L: LexIdeal) -> BettiTable:
    """Graded Betti numbers of the quotient by a stable monomial ideal.

    For the ideal, beta_(i,i+j) sums C(max(u)-1, i) over the degree-j
    minimal generators u; the quotient shifts the homological index by one.
    """
    if not L.is_strongly_stable():
        raise ValueError("Eliahou-Kervaire needs a strongly stable ideal")
    entries = {(0, 0): 1}
    for deg, _mono, max_index in L.min_generators:
        for i in range(1, max_index + 1):
            v = comb(max_index - 1, i - 1)
            if v:
                key = (i, i + deg - 1)
                entries[key] = entries.get(key, 0) + v
    return BettiTable(entries, description=f"lex ideal, h={L.hvector}")


def peeva_lower_bound(h: HVector | tuple, i: int) -> int:
    """beta_(i,i+1)(T/L) - beta_(i-1,i+1)(T/L), clamped at zero.

    Consecutive cancellation can only remove strand pairs against the row
    above; the no-linear-form hypothesis (h_1 = embedding dim - 1) rules
    out cancellation against homological degree i+1 in the same column.
    """
    table = ek_betti(lex_segment_ideal(h))
    return max(0, table.value(i, i + 1) - table.value(i - 1, i + 1))


def strand_threshold(embedding_dim: int, degree: int, i: int) -> int:
    """Certified lower bound for beta_(i,i+1) of every one-dimensional
    saturated degree-`degree` ideal with no linear form."""
    return threshold_report(embedding_dim, degree, i)["threshold"]


def threshold_report(embedding_dim: int, degree: int, i: int) -> dict:
    rows = []
    best = None
    argmin = []
    for h in enumerate_hvectors(embedding_dim, degree):
        table = ek_betti(lex_segment_ideal(h))
        b_i = table.value(i, i + 1)
        b_prev = table.value(i - 1, i + 1)
        bound = max(0, b_i - b_prev)
        rows.append({"h": list(h.entries), "beta_i_i1": b_i,
                     "beta_im1_i1": b_prev, "bound": bound})
        if best is None or bound < best:
            best = bound
            argmin = [list(h.entries)]
        elif bound == best:
            argmin.append(list(h.entries))
    return {
        "embedding_dim": embedding_dim,
        "degree": degree,
        "strand_i": i,
        "hvectors": rows,
        "threshold": best,
        "argmin_h": argmin,
    }
