"""Catalecticant matrices, annihilator ideals, and conciseness tests.

For a homogeneous form F of degree d in n variables, the degree-a
catalecticant is the contraction map from degree-a dual operators to
degree-(d-a) forms.  Its kernels are the graded pieces of the annihilator
F-perp; its ranks give the Hilbert function of the quotient algebra; the
maximal rank is a lower bound for rank, border rank, cactus rank, and
border cactus rank.

Graded pieces are represented degree by degree as kernel bases in reduced
row echelon form with respect to the module's monomial order (ascending
degree-reverse-lex column order), so the chosen monomial cobasis and the
reported bases are canonical across runs.  No Groebner machinery is used
anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .linalg import IncrementalEchelon, rank_any, rref_dense
from .polyring import Poly, contract, key_degrevlex, monomials_of_degree
from .scalars import QQ, Domain


class CatalecticantMatrix:
    """Contraction map T_a -> S_(d-a) for a fixed form.

    Rows are indexed by the degree-a dual monomials, columns by the
    degree-(d-a) primal monomials; the entry is the coefficient of the
    column monomial in the contraction of the row monomial against F.
    """

    def __init__(self, F: Poly, a: int):
        F.assert_homogeneous()
        d = F.degree()
        if not 0 <= a <= d:
            raise ValueError(f"contraction degree {a} out of range 0..{d}")
        self.a = a
        self.d = d
        self.n = F.n_vars
        self.domain = F.domain
        self.row_monomials = sorted(monomials_of_degree(self.n, a),
                                    key=key_degrevlex)
        self.col_monomials = sorted(monomials_of_degree(self.n, d - a),
                                    key=key_degrevlex)
        col_index = {m: i for i, m in enumerate(self.col_monomials)}
        self.rows = []
        for m in self.row_monomials:
            img = contract(Poly.monomial(m, self.domain.one, self.domain), F)
            self.rows.append({col_index[mm]: c for mm, c in img.terms.items()})
        self._rank = None

    @property
    def shape(self):
        return (len(self.row_monomials), len(self.col_monomials))

    def rank(self) -> int:
        if self._rank is None:
            self._rank = rank_any(self.rows, self.domain,
                                  ncols=len(self.col_monomials))
        return self._rank

    def dense(self):
        out = []
        for r in self.rows:
            row = [self.domain.zero] * len(self.col_monomials)
            for c, v in r.items():
                row[c] = v
            out.append(row)
        return out


def catalecticant(F: Poly, a: int) -> CatalecticantMatrix:
    return CatalecticantMatrix(F, a)


def hilbert_function(F: Poly) -> tuple:
    """(rank Cat_0, ..., rank Cat_d) = dimensions of the quotient algebra."""
    F.assert_homogeneous()
    d = F.degree()
    if d < 0:
        return (0,)
    return tuple(catalecticant(F, a).rank() for a in range(d + 1))


def is_concise(F: Poly) -> bool:
    """True iff the annihilator contains no linear form."""
    return catalecticant(F, 1).rank() == F.n_vars


def essential_variable_count(F: Poly) -> int:
    return catalecticant(F, 1).rank()


def catalecticant_lower_bound(F: Poly) -> int:
    """max_a rank Cat_a: a lower bound for rank and cactus rank of F."""
    return max(hilbert_function(F))


# ---------------------------------------------------------------------------
# degree-by-degree reduction data

@dataclass
class DegreeReduction:
    """Monomial cobasis of T_j modulo the degree-j annihilator piece.

    classes[m] expresses the residue class of the monomial m as a sparse
    vector over the cobasis; kernel holds an RREF basis of the annihilator
    piece, one vector per non-cobasis monomial, as {monomial: coeff} maps.
    """

    degree: int
    monomials: list
    cobasis: list
    classes: dict
    kernel: list
    pivot_record: list = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.cobasis)

    def kernel_polys(self, domain) -> list:
        out = []
        for vec in self.kernel:
            p = Poly(len(self.monomials[0]) if self.monomials else 0,
                     dict(vec), domain)
            out.append(p)
        return out


def degree_reduction(F: Poly, j: int) -> DegreeReduction:
    """Row-reduce the degree-j contraction to get cobasis and kernel."""
    F.assert_homogeneous()
    dom = F.domain
    n = F.n_vars
    d = F.degree()
    monos = sorted(monomials_of_degree(n, j), key=key_degrevlex)
    if j > d:
        # everything annihilates
        classes = {m: () for m in monos}
        kernel = [{m: dom.one} for m in monos]
        return DegreeReduction(j, monos, [], classes, kernel)
    smonos = sorted(monomials_of_degree(n, d - j), key=key_degrevlex)
    srow = {m: i for i, m in enumerate(smonos)}
    # matrix of the contraction with columns indexed by T_j monomials in
    # ascending order: pivot columns become the cobasis
    mat = [[dom.zero] * len(monos) for _ in range(len(smonos))]
    for ci, m in enumerate(monos):
        img = contract(Poly.monomial(m, dom.one, dom), F)
        for mm, c in img.terms.items():
            mat[srow[mm]][ci] = c
    pivot_log = []
    pivots, rref = rref_dense(mat, dom, pivot_log=pivot_log)
    pivot_set = set(pivots)
    cobasis = [monos[c] for c in pivots]
    classes = {}
    kernel = []
    for ci, m in enumerate(monos):
        if ci in pivot_set:
            classes[m] = ((pivots.index(ci), dom.one),)
        else:
            expr = []
            kvec = {m: dom.one}
            for ri, pc in enumerate(pivots):
                v = rref[ri][ci]
                if v:
                    expr.append((ri, v))
                    kvec[monos[pc]] = -v
            classes[m] = tuple(expr)
            kernel.append(kvec)
    record = []
    if dom.name == "qlam":
        from .linalg import zpoly_from_fraction_poly, zpoly_primitive
        for pv in pivot_log:
            zp = zpoly_primitive(zpoly_from_fraction_poly(pv.num)[0])
            if len(zp) > 1 and zp not in record:
                record.append(zp)
    return DegreeReduction(j, monos, cobasis, classes, kernel, record)


# ---------------------------------------------------------------------------
# minimal generators of the annihilator

@dataclass
class ApolarIdealPresentation:
    """Per-degree bases of the annihilator plus its minimal generators."""

    form_description: str
    hilbert: tuple
    degree_bases: dict
    min_generators: list        # list of (degree, Poly)
    concise: bool

    @property
    def generator_degrees(self) -> list:
        return sorted(deg for deg, _ in self.min_generators)

    def generators_in_degree(self, j: int) -> list:
        return [g for deg, g in self.min_generators if deg == j]

    def to_json(self) -> dict:
        return {
            "form": self.form_description,
            "hilbert_function": list(self.hilbert),
            "generator_degrees": self.generator_degrees,
            "conciseness": self.concise,
            "catalecticant_bound": max(self.hilbert),
        }


def apolar_generators(F: Poly, description: str = "") -> ApolarIdealPresentation:
    """Kernels of the contraction maps for j <= d+1 and minimal generators.

    Minimal generators in degree j are found by one row reduction per
    degree: reduce the degree-j kernel against the span of the variables
    times the degree-(j-1) kernel.  The scan includes degree d+1, which is
    empty for every concise non-power form; for power-like inputs the
    degree-(d+1) generators are extracted explicitly.
    """
    F.assert_homogeneous()
    dom = F.domain
    n = F.n_vars
    d = F.degree()
    if d < 1:
        raise ValueError("form must have positive degree")
    reductions = {j: degree_reduction(F, j) for j in range(1, d + 1)}
    hilbert = (1,) + tuple(reductions[j].dim for j in range(1, d + 1))
    degree_bases = {j: reductions[j].kernel_polys(dom) for j in range(1, d + 1)}
    min_generators = []

    mono_index = {}

    def idx(j, m):
        table = mono_index.get(j)
        if table is None:
            table = {mm: i for i, mm in enumerate(
                sorted(monomials_of_degree(n, j), key=key_degrevlex))}
            mono_index[j] = table
        return table[m]

    def shift(vec, k, j):
        # multiply a {monomial: coeff} vector of degree j-1 by variable k
        out = {}
        for m, c in vec.items():
            mm = list(m)
            mm[k] += 1
            out[idx(j, tuple(mm))] = c
        return out

    for j in range(1, d + 1):
        prev = reductions.get(j - 1)
        ech = IncrementalEchelon(dom)
        if prev is not None:
            for kv in prev.kernel:
                for k in range(n):
                    ech.insert(shift(kv, k, j))
        for kv in reductions[j].kernel:
            vec = {idx(j, m): c for m, c in kv.items()}
            newrow = ech.insert(vec)
            if newrow is not None:
                mono_list = sorted(monomials_of_degree(n, j), key=key_degrevlex)
                p = Poly(n, {mono_list[c]: v for c, v in newrow.items()}, dom)
                min_generators.append((j, p))

    # degree d+1: every operator annihilates; generators exist only when the
    # products of variables with the degree-d kernel fail to span
    top = d + 1
    dim_top = comb(n - 1 + top, top)
    prod_rows = []
    for kv in reductions[d].kernel:
        for k in range(n):
            prod_rows.append(shift(kv, k, top))
    prod_rank = rank_any(prod_rows, dom, ncols=dim_top)
    if prod_rank < dim_top:
        ech = IncrementalEchelon(dom)
        for r in prod_rows:
            ech.insert(r)
        mono_list = sorted(monomials_of_degree(n, top), key=key_degrevlex)
        for ci, m in enumerate(mono_list):
            newrow = ech.insert({ci: dom.one})
            if newrow is not None:
                p = Poly(n, {mono_list[c]: v for c, v in newrow.items()}, dom)
                min_generators.append((top, p))
    degree_bases[top] = [Poly.monomial(m, dom.one, dom)
                         for m in sorted(monomials_of_degree(n, top),
                                         key=key_degrevlex)]

    return ApolarIdealPresentation(
        form_description=description or repr(F)[:60],
        hilbert=hilbert,
        degree_bases=degree_bases,
        min_generators=min_generators,
        concise=(hilbert[1] == n if d >= 1 else False),
    )


# ---------------------------------------------------------------------------
# generators of the annihilators of determinants and permanents

def shafiei_quadrics(d: int, which: str, domain: Domain = QQ) -> list:
    """The quadric generating set for det (2x2 permanents) or per (2x2
    determinants): squares, same-row and same-column products, and the
    mixed binomials."""
    if which not in ("det", "per"):
        raise ValueError("which must be 'det' or 'per'")
    n = d * d
    sign = domain.from_int(1 if which == "det" else -1)

    def var(i, j):
        return d * i + j

    def mono(*pairs):
        m = [0] * n
        for idx in pairs:
            m[idx] += 1
        return tuple(m)

    out = []
    for i in range(d):
        for j in range(d):
            out.append(Poly(n, {mono(var(i, j), var(i, j)): domain.one}, domain))
    for i in range(d):
        for j1 in range(d):
            for j2 in range(j1 + 1, d):
                out.append(Poly(n, {mono(var(i, j1), var(i, j2)): domain.one},
                                domain))
    for j in range(d):
        for i1 in range(d):
            for i2 in range(i1 + 1, d):
                out.append(Poly(n, {mono(var(i1, j), var(i2, j)): domain.one},
                                domain))
    for i in range(d):
        for k in range(i + 1, d):
            for j in range(d):
                for l in range(j + 1, d):
                    out.append(Poly(n, {
                        mono(var(i, j), var(k, l)): domain.one,
                        mono(var(i, l), var(k, j)): sign,
                    }, domain))
    return out


def verify_shafiei_generators(d: int, which: str, domain: Domain = QQ) -> dict:
    """Check the quadric families annihilate the target and span the full
    degree-2 piece of the annihilator."""
    if d < 2:
        raise ValueError("d must be >= 2")
    from .polyring import det_poly, per_poly
    F = det_poly(d, domain) if which == "det" else per_poly(d, domain)
    gens = shafiei_quadrics(d, which, domain)
    failures = []
    for g in gens:
        r = contract(g, F)
        if r:
            failures.append({"generator": repr(g), "residual": repr(r)})
    n = d * d
    mono_list = sorted(monomials_of_degree(n, 2), key=key_degrevlex)
    midx = {m: i for i, m in enumerate(mono_list)}
    ech = IncrementalEchelon(domain)
    for g in gens:
        ech.insert({midx[m]: c for m, c in g.terms.items()})
    span_dim = ech.rank
    hf = hilbert_function(F)
    expected = len(mono_list) - hf[2]
    return {
        "form": f"{which}{d}",
        "generator_count": len(gens),
        "all_annihilate": not failures,
        "failures": failures,
        "span_dimension": span_dim,
        "expected_dimension": expected,
        "dimension_matches": span_dim == expected,
        "hilbert_function": list(hf),
        "ok": not failures and span_dim == expected,
    }
