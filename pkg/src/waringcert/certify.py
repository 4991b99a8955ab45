"""Certificate assembly: the full lower-bound proof chains as checkable data.

A Certificate is an ordered list of steps; each step records its inputs,
the values actually computed, the comparison made, and a verdict.  The
overall verdict is PASS only if every step passes.  Steps that consume a
cited inequality (strand monotonicity for subideals, cancellation) say so
explicitly; every number is reproduced by re-running the referenced
operation.

Two claims are assembled here: cactus rank >= 14 for det3 and per3, and
Waring rank >= 15 for det3 via the three normal-form cases of a subtracted
cube.  The parametric case distinguishes the family's uniform bound (a
cited statement) from what this artifact certifies: the generic strand
value plus an exact re-check at every rational parameter value where the
generic elimination could degenerate.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .apolar import hilbert_function, is_concise
from .family import family_algebra, family_member, parametric_family
from .graded import (BettiTable, algebra_from_apolar, algebra_from_points,
                     betti_table, koszul_strand_betti, DegenerateInputError)
from .lexmac import strand_threshold, threshold_report
from .polyring import Poly, det_poly, per_poly, power_of_linear_form
from .scalars import QQ, domain_by_name, rational_to_string
from .witness import (char_obstruction_check, check_normal_form,
                      det3_eighteen_cubes, glynn_decomposition,
                      krishna_makam_witness, monomial_expansion,
                      verify_decomposition, PowerSumDecomposition)

PASS, FAIL, INCONCLUSIVE = "PASS", "FAIL", "INCONCLUSIVE"


@dataclass
class Step:
    step_id: str
    statement: str
    inputs: dict
    computed: dict
    comparison: str
    verdict: str
    citation: str = ""

    def to_json(self) -> dict:
        out = {
            "id": self.step_id,
            "statement": self.statement,
            "inputs": self.inputs,
            "computed": self.computed,
            "comparison": self.comparison,
            "verdict": self.verdict,
        }
        if self.citation:
            out["citation"] = self.citation
        return out


@dataclass
class Certificate:
    claim: str
    steps: list = field(default_factory=list)
    environment: dict = field(default_factory=dict)
    caveats: list = field(default_factory=list)

    @property
    def verdict(self) -> str:
        verdicts = [s.verdict for s in self.steps]
        if FAIL in verdicts:
            return FAIL
        if INCONCLUSIVE in verdicts:
            return INCONCLUSIVE
        return PASS

    def to_json(self) -> dict:
        return {
            "schema": "certificate/1",
            "claim": self.claim,
            "verdict": self.verdict,
            "steps": [s.to_json() for s in self.steps],
            "caveats": self.caveats,
            "environment": self.environment,
        }


def _environment(domain_name="rational", threads=1, seed=None, elapsed=None):
    env = {
        "scalar_domain": domain_name,
        "tool_version": __version__,
        "threads": threads,
    }
    if seed is not None:
        env["seed"] = seed
    if elapsed is not None:
        env["timing_seconds"] = round(elapsed, 3)
    return env


def _apply_injection(step: Step, inject_fail) -> Step:
    if inject_fail and step.step_id == inject_fail:
        step.verdict = FAIL
        step.comparison += " [fault injection forced FAIL]"
    return step


MONOTONICITY_CITATION = (
    "consumed as a cited inequality: for ideals I inside J with J containing "
    "no linear form, beta_(i,i+1)(T/I) <= beta_(i,i+1)(T/J)")
CANCELLATION_CITATION = (
    "consumed as a cited inequality: Betti numbers of T/I arise from the "
    "lex-segment table by consecutive cancellations (Peeva)")


# ---------------------------------------------------------------------------
# cactus rank >= 14

def build_rank14_certificate(form: str, threads: int = 1,
                             inject_fail: str | None = None,
                             inject_betti: int | None = None) -> Certificate:
    t0 = time.time()
    if form not in ("det3", "per3"):
        raise ValueError("form must be det3 or per3")
    F = det_poly(3) if form == "det3" else per_poly(3)
    cert = Certificate(claim=f"rank({form}) >= cactusrank({form}) >= 14")

    concise = is_concise(F)
    cert.steps.append(_apply_injection(Step(
        "conciseness",
        f"{form} is concise, so its annihilator contains no linear form and "
        "neither does any one-dimensional saturated ideal inside it",
        {"form": form},
        {"concise": concise, "hilbert_function": list(hilbert_function(F))},
        "essential variable count == 9",
        PASS if concise else FAIL), inject_fail))

    A = algebra_from_apolar(F, form)
    beta = koszul_strand_betti(A, 5, 6) if inject_betti is None else inject_betti
    cert.steps.append(_apply_injection(Step(
        "strand-betti",
        f"beta_(5,6) of the quotient by the annihilator of {form}",
        {"strand": [5, 6]},
        {"beta_5_6": beta},
        "computed exactly over Q as Koszul strand homology",
        PASS), inject_fail))

    rep = threshold_report(9, 13, 5)
    cert.steps.append(_apply_injection(Step(
        "threshold",
        "every one-dimensional saturated degree-13 ideal in 9 variables "
        "with no linear form has beta_(5,6) >= threshold",
        {"embedding_dim": 9, "degree": 13, "strand_i": 5},
        {"threshold": rep["threshold"], "argmin_h": rep["argmin_h"]},
        "minimum of the cancellation bound over all admissible h-vectors",
        PASS if rep["threshold"] == 140 else FAIL,
        citation=CANCELLATION_CITATION), inject_fail))

    threshold = rep["threshold"]
    if beta < threshold:
        verdict, cmp_text = PASS, (
            f"{beta} < {threshold}: no degree-13 apolar subscheme exists, "
            "so the cactus rank is at least 14")
    else:
        verdict, cmp_text = INCONCLUSIVE, (
            f"{beta} >= {threshold}: the strand comparison excludes nothing")
    cert.steps.append(_apply_injection(Step(
        "cactus-bound",
        "a degree-13 apolar one-dimensional ideal would force "
        "beta_(5,6)(T/I) both >= threshold and <= the annihilator's value",
        {"beta_5_6": beta, "threshold": threshold},
        {"conclusion": f"cactusrank({form}) >= 14" if verdict == PASS else "none"},
        cmp_text, verdict, citation=MONOTONICITY_CITATION), inject_fail))

    cert.environment = _environment(threads=threads, elapsed=time.time() - t0)
    return cert


# ---------------------------------------------------------------------------
# rank(det3) >= 15

def _sample_lambdas(samples: int, seed: int) -> list:
    rng = random.Random(seed)
    out = []
    seen = set()
    while len(out) < samples:
        num = rng.randint(-9, 9)
        den = rng.randint(1, 6)
        lam = Fraction(num, den)
        if lam and lam not in seen:
            seen.add(lam)
            out.append(lam)
    return out


def build_rank15_certificate(samples: int = 20, seed: int = 0,
                             trials_per_class: int = 25, threads: int = 1,
                             inject_fail: str | None = None) -> Certificate:
    t0 = time.time()
    cert = Certificate(claim="rank(det3) >= 15")

    obstructions = [char_obstruction_check(p) for p in (2, 3)]
    cert.steps.append(_apply_injection(Step(
        "char-obstruction",
        "in characteristic 2 or 3 the determinant is no sum of cubes (every "
        "cube has squarefree coefficients divisible by 6), so the claim "
        "concerns characteristic 0 or > 3",
        {"primes": [2, 3]},
        {"checks": [{"p": o["p"], "vanishes": o["vanishes_mod_p"]}
                    for o in obstructions]},
        "symbolic multinomial coefficient check",
        PASS if all(o["ok"] for o in obstructions) else FAIL), inject_fail))

    rng = random.Random(seed + 1)
    trial_ok = 0
    total = 0
    for k in (1, 2, 3):
        done = 0
        while done < trials_per_class:
            A = _random_matrix_of_rank(rng, 3, k)
            rep = check_normal_form(A)
            total += 1
            if rep["ok"] and rep["k"] == k:
                trial_ok += 1
            done += 1
    cert.steps.append(_apply_injection(Step(
        "normal-form",
        "every nonzero linear form moves, by a determinant-preserving "
        "coordinate change, to x11, to x11+x22, or to a cube-root scaling "
        "of x11+x22+x33; verified exactly on random coefficient matrices "
        "of each rank",
        {"trials_per_class": trials_per_class},
        {"trials": total, "verified": trial_ok},
        "SL membership, determinant invariance, and the diagonal normal "
        "form are checked with exact arithmetic",
        PASS if trial_ok == total else FAIL), inject_fail))

    rep = threshold_report(9, 13, 5)
    threshold = rep["threshold"]
    cert.steps.append(_apply_injection(Step(
        "threshold",
        "degree-13 one-dimensional saturated ideals without linear forms "
        "have beta_(5,6) >= threshold",
        {"embedding_dim": 9, "degree": 13, "strand_i": 5},
        {"threshold": threshold, "argmin_h": rep["argmin_h"]},
        "minimum of the cancellation bound over admissible h-vectors",
        PASS if threshold == 140 else FAIL,
        citation=CANCELLATION_CITATION), inject_fail))

    d3 = det_poly(3)
    for step_id, vars_ in (("case-k1", (0,)), ("case-k2", (0, 4))):
        ell = power_of_linear_form(
            [QQ.one if i in vars_ else QQ.zero for i in range(9)], 3)
        F = d3 - ell
        concise = is_concise(F)
        beta = koszul_strand_betti(algebra_from_apolar(F), 5, 6)
        ok = concise and beta < threshold
        names = "+".join(f"x{i+1}" for i in vars_)
        cert.steps.append(_apply_injection(Step(
            step_id,
            f"det3 - ({names})^3 is concise and its strand value stays "
            "below the threshold",
            {"subtracted_cube": names},
            {"concise": concise, "beta_5_6": beta},
            f"beta {beta} < threshold {threshold}" if ok else
            f"comparison failed: concise={concise}, beta={beta}",
            PASS if ok else FAIL,
            citation=MONOTONICITY_CITATION), inject_fail))

    lams = _sample_lambdas(samples, seed)
    sampled = []
    all_below = True
    for lam in lams:
        Af = family_algebra(lam)
        beta = koszul_strand_betti(Af, 5, 6)
        concise_f = Af.dims == [1, 9, 9, 1]
        sampled.append({"lam": rational_to_string(lam), "beta_5_6": beta,
                        "concise": concise_f})
        all_below = all_below and beta < threshold and concise_f
    cert.steps.append(_apply_injection(Step(
        "case-k3-samples",
        "det3 - lam*(x1+x5+x9)^3 sampled at nonzero rational lam: concise "
        "with strand value below the threshold at every sample",
        {"samples": len(lams), "seed": seed},
        {"sampled": sampled},
        f"all {len(lams)} sampled values < {threshold}" if all_below else
        "a sampled value reached the threshold",
        PASS if all_below else FAIL), inject_fail))

    pres = parametric_strand_betti_cached()
    resolved_ok = all(v < threshold for v in pres.resolved_specials.values())
    generic_ok = pres.generic_value < threshold
    pverdict = PASS if (generic_ok and resolved_ok) else FAIL
    cert.steps.append(_apply_injection(Step(
        "case-k3-parametric",
        "the one-parameter family (mu fixed to 1: rescaling a form by a "
        "nonzero constant changes no rank, so mu*det3 - lam'*cube reduces "
        "to lam = lam'/mu): generic strand value over Q(lam), with every "
        "rational root of every recorded pivot polynomial re-checked "
        "exactly; the family's uniform bound (<= 135 for all parameters) "
        "is a cited statement, the values below are this artifact's "
        "evidence",
        {"strand": [5, 6], "mu": "1"},
        pres.to_json(),
        f"generic {pres.generic_value} < {threshold}; resolved specials "
        f"{sorted(set(pres.resolved_specials.values()))} all < {threshold}; "
        f"{len(pres.unresolved_specials)} unresolved candidate(s)",
        pverdict), inject_fail))
    if pres.unresolved_specials:
        cert.caveats.append(
            "proof modulo the uniform family bound: the listed irrational "
            "parameter candidates were not re-checked exactly")
        cert.caveats.append(
            {"unresolved_pivot_factors":
             [list(p) for p in pres.unresolved_specials]})
    else:
        cert.caveats.append(
            "complete: the pivot analysis closed every exceptional "
            "parameter value exactly")

    chain_ok = all(s.verdict == PASS for s in cert.steps)
    cert.steps.append(_apply_injection(Step(
        "conclusion",
        "every det3 - l^3 is concise with beta_(5,6) below the degree-13 "
        "threshold, so rank(det3 - l^3) >= 14 for every linear form l, "
        "hence rank(det3) >= 15",
        {},
        {"bound": 15 if chain_ok else None},
        "conjunction of all previous steps",
        PASS if chain_ok else FAIL,
        citation=MONOTONICITY_CITATION), inject_fail))

    cert.environment = _environment(threads=threads, seed=seed,
                                    elapsed=time.time() - t0)
    return cert


_parametric_cache = {}


def parametric_strand_betti_cached():
    from .graded import parametric_strand_betti
    if "res" not in _parametric_cache:
        _parametric_cache["res"] = parametric_strand_betti(
            parametric_family(), 5, 6)
    return _parametric_cache["res"]


def _random_matrix_of_rank(rng, d, k):
    from .linalg import rank_rational_rows
    while True:
        L = [[Fraction(rng.randint(-5, 5)) for _ in range(k)] for _ in range(d)]
        R = [[Fraction(rng.randint(-5, 5)) for _ in range(d)] for _ in range(k)]
        A = [[sum(L[i][t] * R[t][j] for t in range(k)) for j in range(d)]
             for i in range(d)]
        rows = [{j: v for j, v in enumerate(row) if v} for row in A]
        if rank_rational_rows(rows) == k:
            return A


# ---------------------------------------------------------------------------
# data commands

def run_betti(form: str, field: str = "rational", strand=None,
              i_max: int | None = None, j_max: int | None = None,
              threads: int = 1):
    domain = domain_by_name(field)
    if form == "det3":
        F = det_poly(3, domain)
    elif form == "per3":
        F = per_poly(3, domain)
    elif form == "xyz":
        F = Poly.monomial((1, 1, 1), domain.one, domain)
    else:
        raise ValueError(f"unknown form {form!r} (want det3|per3|xyz or a file)")
    A = algebra_from_apolar(F, form)
    if strand is not None:
        i, j = strand
        return koszul_strand_betti(A, i, j)
    d = F.degree()
    return betti_table(A, i_max if i_max is not None else A.n,
                       j_max if j_max is not None else A.n + d,
                       threads=threads)


def run_betti_file(path: str, strand=None, i_max=None, j_max=None,
                   threads: int = 1):
    import json as _json
    with open(path) as fh:
        F = Poly.from_json(_json.load(fh))
    A = algebra_from_apolar(F, path)
    if strand is not None:
        return koszul_strand_betti(A, *strand)
    d = F.degree()
    return betti_table(A, i_max if i_max is not None else A.n,
                       j_max if j_max is not None else A.n + d,
                       threads=threads)


REMARK_STRANDS = ((5, 6), (6, 7), (5, 7), (6, 8), (7, 9), (8, 10))


def sample_points(count: int, seed: int, coord_bound: int = 3):
    """Seeded projective points with small integer coordinates; degenerate
    draws (zero or pairwise-proportional vectors) are re-rolled."""
    rng = random.Random(seed)
    rerolls = 0
    while True:
        pts = [[Fraction(rng.randint(-coord_bound, coord_bound))
                for _ in range(9)] for _ in range(count)]
        try:
            algebra_from_points(pts, 0)
        except DegenerateInputError:
            rerolls += 1
            continue
        return pts, rerolls


def run_points(count: int, seed: int, coord_bound: int = 3,
               strands=REMARK_STRANDS, full: bool = False,
               threads: int = 1):
    pts, rerolls = sample_points(count, seed, coord_bound)
    need = (max(j - i for i, j in strands) + 1) if not full else 3
    A = algebra_from_points(pts, need + 1,
                            description=f"{count} points, seed {seed}")
    if full:
        table = betti_table(A, 9, 9 + 2, threads=threads)
    else:
        entries = {}
        for i, j in strands:
            v = koszul_strand_betti(A, i, j)
            if v:
                entries[(i, j)] = v
        table = BettiTable(entries, description=A.description)
    return {
        "count": count,
        "seed": seed,
        "coord_bound": coord_bound,
        "rerolls": rerolls,
        "table": table,
    }


def run_upper_bounds() -> dict:
    """Verify the full witness suite and summarize the certified bounds."""
    rows = []

    naive_det = _laplace_naive("det")
    ok, _ = verify_decomposition(naive_det)
    rows.append({"target": "det3", "method": "termwise monomial expansion",
                 "cubes": len(naive_det.terms), "verified": ok})

    km = krishna_makam_witness()
    rows.append({"target": "det3", "method": "five products of linear forms",
                 "cubes": km["cube_count"], "verified": km["residual_zero"]})

    w18 = det3_eighteen_cubes()
    ok18, _ = verify_decomposition(w18)
    rows.append({"target": "det3", "method": "explicit cubes over Q(theta)",
                 "cubes": len(w18.terms), "verified": ok18})

    naive_per = _laplace_naive("per")
    okp, _ = verify_decomposition(naive_per)
    rows.append({"target": "per3", "method": "termwise monomial expansion",
                 "cubes": len(naive_per.terms), "verified": okp})

    gprod, gpow = glynn_decomposition(3)
    okg = verify_decomposition(gprod)[0] and verify_decomposition(gpow)[0]
    rows.append({"target": "per3", "method": "signed products (Glynn)",
                 "cubes": len(gpow.terms), "verified": okg})

    best = {}
    for row in rows:
        if row["verified"]:
            t = row["target"]
            best[t] = min(best.get(t, 10 ** 9), row["cubes"])
    return {"witnesses": rows,
            "certified_upper_bounds": best,
            "all_verified": all(r["verified"] for r in rows)}


def _laplace_naive(kind: str) -> PowerSumDecomposition:
    """Expand each of the d! monomials of det/per into cubes separately."""
    F = det_poly(3) if kind == "det" else per_poly(3)
    unit = monomial_expansion(3)
    terms = []
    for mono, sign in F.terms.items():
        support = [i for i, e in enumerate(mono) if e]
        for c, pattern in unit.terms:
            vec = [QQ.zero] * 9
            for slot, i in enumerate(support):
                vec[i] = pattern[slot]
            terms.append((sign * c, vec))
    return PowerSumDecomposition(kind, 3, unit.scale, terms, QQ)
