"""Sparse multivariate polynomials and the apolarity contraction action.

Monomials are exponent tuples of fixed length n_vars.  A Poly is a sparse
map monomial -> coefficient over one of the exact scalar domains, with no
stored zeros.  Dual variables act on primal ones as partial derivatives,
with the factorial coefficients of the differentiation convention: a
monomial y^a sends x^d to (prod d_i!/(d_i-a_i)!) x^(d-a), or 0 if any
a_i > d_i, extended bilinearly.

Variables on a d x d matrix space are flattened row major, so for d = 3
the variables x_1..x_9 read across the rows of the matrix.
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction
from math import comb, factorial

from .scalars import QQ, Domain


# ---------------------------------------------------------------------------
# monomial utilities

def monomial_degree(m) -> int:
    return sum(m)


def monomials_of_degree(n_vars: int, degree: int):
    """All exponent tuples of the given total degree, lexicographic order."""
    if degree == 0:
        yield (0,) * n_vars
        return
    for c in itertools.combinations_with_replacement(range(n_vars), degree):
        m = [0] * n_vars
        for i in c:
            m[i] += 1
        yield tuple(m)


def key_deglex(m) -> tuple:
    """Sort key: ascending degree-lexicographic (x1 largest within a degree)."""
    return (sum(m), m)


def key_degrevlex(m) -> tuple:
    """Sort key: ascending degree-reverse-lexicographic."""
    return (sum(m), tuple(-e for e in reversed(m)))


ORDER_KEYS = {"deglex": key_deglex, "degrevlex": key_degrevlex}


# ---------------------------------------------------------------------------

class Poly:
    """Sparse polynomial over an exact scalar domain."""

    __slots__ = ("n_vars", "terms", "domain")

    def __init__(self, n_vars: int, terms=None, domain: Domain = QQ):
        self.n_vars = n_vars
        self.domain = domain
        self.terms = {}
        if terms:
            for m, c in terms.items():
                if c:
                    if len(m) != n_vars:
                        raise ValueError("exponent tuple has wrong length")
                    self.terms[tuple(m)] = c

    # -- constructors

    @classmethod
    def zero(cls, n_vars: int, domain: Domain = QQ) -> "Poly":
        return cls(n_vars, {}, domain)

    @classmethod
    def variable(cls, i: int, n_vars: int, domain: Domain = QQ) -> "Poly":
        m = tuple(1 if j == i else 0 for j in range(n_vars))
        return cls(n_vars, {m: domain.one}, domain)

    @classmethod
    def monomial(cls, exps, coeff=None, domain: Domain = QQ) -> "Poly":
        exps = tuple(exps)
        if coeff is None:
            coeff = domain.one
        return cls(len(exps), {exps: coeff}, domain)

    # -- queries

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        """Total degree (-1 for the zero polynomial)."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(m) for m in self.terms}
        return len(degs) <= 1

    def assert_homogeneous(self) -> "Poly":
        if not self.is_homogeneous():
            raise ValueError("polynomial is not homogeneous")
        return self

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), self.domain.zero)

    def __len__(self):
        return len(self.terms)

    # -- ring operations

    def _check(self, other: "Poly"):
        if self.n_vars != other.n_vars:
            raise ValueError("variable-count mismatch")
        if self.domain is not other.domain:
            raise ValueError("scalar-domain mismatch")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            w = out.get(m)
            if w is None:
                out[m] = c
            else:
                w = w + c
                if w:
                    out[m] = w
                else:
                    del out[m]
        p = Poly(self.n_vars, None, self.domain)
        p.terms = out
        return p

    def __neg__(self) -> "Poly":
        p = Poly(self.n_vars, None, self.domain)
        p.terms = {m: -c for m, c in self.terms.items()}
        return p

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Poly):
            self._check(other)
            out = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = tuple(a + b for a, b in zip(m1, m2))
                    c = c1 * c2
                    w = out.get(m)
                    if w is None:
                        if c:
                            out[m] = c
                    else:
                        w = w + c
                        if w:
                            out[m] = w
                        else:
                            del out[m]
            p = Poly(self.n_vars, None, self.domain)
            p.terms = out
            return p
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        if not c:
            return Poly.zero(self.n_vars, self.domain)
        p = Poly(self.n_vars, None, self.domain)
        p.terms = {m: v * c for m, v in self.terms.items()}
        return p

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly.monomial((0,) * self.n_vars, self.domain.one, self.domain)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.n_vars == other.n_vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.n_vars, frozenset(self.terms.items())))

    def map_domain(self, target: Domain, convert=None) -> "Poly":
        """Reinterpret coefficients in another domain (default: via Q)."""
        if convert is None:
            convert = lambda c: target.from_rational(Fraction(c))
        p = Poly(self.n_vars, None, target)
        for m, c in self.terms.items():
            v = convert(c)
            if v:
                p.terms[m] = v
        return p

    # -- display / io

    def sorted_terms(self, order: str = "degrevlex"):
        key = ORDER_KEYS[order]
        return sorted(self.terms.items(), key=lambda mc: key(mc[0]), reverse=True)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(f"x{i+1}" + (f"^{e}" if e > 1 else "")
                            for i, e in enumerate(m) if e)
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    def to_json(self, order: str = "degrevlex") -> dict:
        return {
            "n_vars": self.n_vars,
            "domain": self.domain.name,
            "terms": [{"exps": list(m), "coeff": self.domain.serialize(c)}
                      for m, c in self.sorted_terms(order)],
        }

    @classmethod
    def from_json(cls, obj, domain: Domain | None = None) -> "Poly":
        from .scalars import domain_by_name
        if domain is None:
            domain = domain_by_name(obj.get("domain", "rational"))
        terms = {}
        for t in obj["terms"]:
            terms[tuple(t["exps"])] = domain.parse(t["coeff"])
        return cls(obj["n_vars"], terms, domain)

    def dumps(self) -> str:
        return json.dumps(self.to_json())


# ---------------------------------------------------------------------------
# the contraction action

def contract(theta: Poly, F: Poly) -> Poly:
    """Apply a dual-variable operator to F (differentiation convention)."""
    if theta.n_vars != F.n_vars:
        raise ValueError("variable-count mismatch")
    dom = F.domain
    out = Poly.zero(F.n_vars, dom)
    acc = out.terms
    for a, ca in theta.terms.items():
        for d, cd in F.terms.items():
            mult = 1
            target = []
            for ai, di in zip(a, d):
                if ai > di:
                    mult = 0
                    break
                if ai:
                    mult *= factorial(di) // factorial(di - ai)
                target.append(di - ai)
            if not mult:
                continue
            c = ca * cd * dom.from_int(mult)
            m = tuple(target)
            w = acc.get(m)
            if w is None:
                if c:
                    acc[m] = c
            else:
                w = w + c
                if w:
                    acc[m] = w
                else:
                    del acc[m]
    return out


# ---------------------------------------------------------------------------
# determinant, permanent, powers of linear forms

def det_poly(d: int, domain: Domain = QQ) -> Poly:
    """Determinant of the generic d x d matrix, row-major flattened."""
    if d < 1:
        raise ValueError("d must be >= 1")
    n = d * d
    terms = {}
    for perm in itertools.permutations(range(d)):
        sign = _perm_sign(perm)
        m = [0] * n
        for i in range(d):
            m[d * i + perm[i]] += 1
        terms[tuple(m)] = domain.from_int(sign)
    return Poly(n, terms, domain)


def per_poly(d: int, domain: Domain = QQ) -> Poly:
    """Permanent of the generic d x d matrix, row-major flattened."""
    if d < 1:
        raise ValueError("d must be >= 1")
    n = d * d
    terms = {}
    for perm in itertools.permutations(range(d)):
        m = [0] * n
        for i in range(d):
            m[d * i + perm[i]] += 1
        terms[tuple(m)] = domain.one
    return Poly(n, terms, domain)


def _perm_sign(perm) -> int:
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def linear_form(coeffs, domain: Domain = QQ) -> Poly:
    n = len(coeffs)
    terms = {}
    for i, c in enumerate(coeffs):
        if c:
            m = tuple(1 if j == i else 0 for j in range(n))
            terms[m] = c
    return Poly(n, terms, domain)


def power_of_linear_form(coeffs, d: int, domain: Domain = QQ) -> Poly:
    """Multinomial expansion of (sum_i c_i x_i)^d."""
    if d < 1:
        raise ValueError("d must be >= 1")
    n = len(coeffs)
    support = [(i, c) for i, c in enumerate(coeffs) if c]
    terms = {}
    fact_d = factorial(d)
    for split in _compositions(d, len(support)):
        coef = fact_d
        m = [0] * n
        cprod = domain.one
        for (i, c), e in zip(support, split):
            coef //= factorial(e)
            m[i] = e
            if e:
                cprod = cprod * _pow_scalar(c, e)
        val = cprod * domain.from_int(coef)
        if val:
            terms[tuple(m)] = val
    return Poly(n, terms, domain)


def _pow_scalar(c, e: int):
    out = c
    for _ in range(e - 1):
        out = out * c
    return out


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# linear changes of coordinates

class LinearChange:
    """Invertible n x n matrix acting on the variables: x_i -> sum_j M[i][j] x_j."""

    def __init__(self, matrix):
        self.matrix = [list(row) for row in matrix]
        n = len(self.matrix)
        if any(len(row) != n for row in self.matrix):
            raise ValueError("matrix must be square")
        self.n = n

    def __repr__(self):
        return f"LinearChange({self.matrix})"


def substitute(F: Poly, change) -> Poly:
    """Exact polynomial after the entrywise linear substitution of variables."""
    matrix = change.matrix if isinstance(change, LinearChange) else change
    n = F.n_vars
    if len(matrix) != n:
        raise ValueError("dimension mismatch")
    dom = F.domain
    images = []
    for i in range(n):
        row = matrix[i]
        if len(row) != n:
            raise ValueError("dimension mismatch")
        images.append(linear_form([_coerce(dom, v) for v in row], dom))
    out = Poly.zero(n, dom)
    cache: dict[tuple, Poly] = {}
    for m, c in F.terms.items():
        prod = None
        for i, e in enumerate(m):
            if not e:
                continue
            piece = cache.get((i, e))
            if piece is None:
                piece = images[i] ** e
                cache[(i, e)] = piece
            prod = piece if prod is None else prod * piece
        if prod is None:
            prod = Poly.monomial((0,) * n, dom.one, dom)
        out = out + prod.scale(c)
    return out


def _coerce(domain, v):
    if isinstance(v, (int,)):
        return domain.from_int(v)
    if isinstance(v, Fraction):
        return domain.from_rational(v)
    return v


def matrix_substitute(F: Poly, s1, s2) -> Poly:
    """Substitute X -> s1 X s2 in a polynomial on d x d matrix space."""
    d2 = F.n_vars
    d = int(round(d2 ** 0.5))
    if d * d != d2:
        raise ValueError("polynomial does not live on a square matrix space")
    if len(s1) != d or len(s2) != d:
        raise ValueError("dimension mismatch")
    dom = F.domain
    big = [[dom.zero] * d2 for _ in range(d2)]
    # x_{i,j} -> sum_{a,b} s1[i][a] x_{a,b} s2[b][j]
    for i in range(d):
        for j in range(d):
            row = big[d * i + j]
            for a in range(d):
                va = _coerce(dom, s1[i][a])
                if not va:
                    continue
                for b in range(d):
                    vb = _coerce(dom, s2[b][j])
                    if vb:
                        row[d * a + b] = row[d * a + b] + va * vb
    return substitute(F, big)


def trace_form(A, domain: Domain = QQ) -> Poly:
    """Linear form tr(A X^t) = sum a_{i,j} x_{i,j} from a coefficient matrix."""
    d = len(A)
    coeffs = []
    for i in range(d):
        if len(A[i]) != d:
            raise ValueError("matrix must be square")
        for j in range(d):
            coeffs.append(_coerce(domain, A[i][j]))
    return linear_form(coeffs, domain)
