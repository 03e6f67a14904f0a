"""Verification suites: grids of cases comparing independent routes to the same value.

Each case is a small picklable ``(suite, params)`` pair so grids can be fanned
out over worker processes.  A case reports pass/fail and, on failure, the
first exponent where the two sides differ.
"""

from __future__ import annotations

import itertools
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import products
from .enumeration import INF, enum_boxed, enum_diagonal, enum_symmetric
from .fock import (
    Caps,
    FockVector,
    apply,
    apply_word,
    free_boundary_state,
    gamma_minus,
    gamma_minus_inv,
    gamma_plus,
    weight_L0,
)
from .partitions import EMPTY, Partition, enumerate_in_box, is_symmetric, partitions_up_to
from .qseries import HalfSeries, _exp_text, expand_inverse_factor
from .schur import negated, principal_infinite
from .vev import BoundaryProblem, vev_infinite, vev_inverse_chain, vev_symmetric

SUITES = ("macmahon", "thm13", "thm15", "prop12", "cor14", "cauchy", "commutation", "decomposition")


@dataclass
class Bounds:
    """Grid sizes; ``None`` picks the suite default."""

    max: int | None = None
    max_size: int | None = None
    max_mu: int | None = None
    order: int | None = None
    count: int = 100
    seed: int = 0


@dataclass
class CaseResult:
    suite: str
    case: dict
    passed: bool
    first_mismatch: int | None = None  # doubled exponent
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "passed": self.passed,
            "first_mismatch": None if self.first_mismatch is None else f"q^{_exp_text(self.first_mismatch)}",
            "detail": self.detail,
        }


@dataclass
class SuiteReport:
    suite: str
    results: list[CaseResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_json(self) -> dict:
        failed = sum(not r.passed for r in self.results)
        return {
            "suite": self.suite,
            "passed": self.passed,
            "total": len(self.results),
            "failed": failed,
            "cases": [r.to_json() for r in self.results],
        }


def _cmp(suite, case, a: HalfSeries, b: HalfSeries, order2: int | None = None) -> CaseResult:
    d = a.first_mismatch(b, order2)
    return CaseResult(suite, case, d is None, d)


# case generators


def _cases_macmahon(b: Bounds):
    m = b.max or 4
    return [{"a": x, "b": y, "c": z} for x, y, z in itertools.product(range(1, m + 1), repeat=3)]


def _cases_thm13(b: Bounds):
    m, size = b.max or 4, b.max_size or 4
    out = []
    for N, L in itertools.product(range(1, m + 1), repeat=2):
        for mu in partitions_up_to(size):
            if mu.part(1) <= N and len(mu) <= L:
                out.append({"N": N, "L": L, "mu": list(mu), "order": b.order or 20})
    return out


def _cases_thm15(b: Bounds):
    m, size = b.max or 3, b.max_size or 5
    out = []
    for N in range(1, m + 1):
        for mu in partitions_up_to(size):
            if is_symmetric(mu) and mu.part(1) <= N:
                out.append({"N": N, "mu": list(mu), "order": b.order or 14})
    return out


def _cases_prop12(b: Bounds):
    size = b.max_size or 2
    parts = list(partitions_up_to(size))
    return [{"lam": list(l), "mu": list(m), "nu": list(n), "order": b.order or 10}
            for l, m, n in itertools.product(parts, repeat=3)]


def _cases_cor14(b: Bounds):
    m, size = b.max or 6, b.max_mu or 5
    return [{"mu": list(mu), "L": L, "N": N, "order": b.order or 30}
            for mu in partitions_up_to(size) for L in range(1, m + 1) for N in range(1, m + 1)]


def _cases_cauchy(b: Bounds):
    m = b.max or 4
    return [{"M": M, "N": N, "L": L} for M in range(0, 4) for N in range(0, m + 1) for L in range(0, m + 1)]


_LAWS = ("gamma_commutation", "l0_exchange", "inverse_law", "free_boundary")


def _cases_commutation(b: Bounds):
    return [{"law": law, "seed": b.seed * 100003 + i} for law in _LAWS for i in range(b.count)]


def _cases_decomposition(b: Bounds):
    m = b.max or 3
    out = [{"L": L, "N": N, "M": M, "route": "closed"} for L, N, M in itertools.product(range(1, m + 1), repeat=3)]
    out += [{"L": L, "N": N, "M": M, "route": "operator"} for L, N, M in itertools.product(range(1, 3), repeat=3)]
    size = b.max_size or 3
    out += [{"mu": list(mu), "M": M, "order": b.order or 12, "route": "inverse_chain"}
            for mu in partitions_up_to(size) for M in range(0, 3)]
    return out


# case runners


def _run_macmahon(c):
    return _cmp("macmahon", c, products.macmahon_boxed(c["a"], c["b"], c["c"]).expand(), enum_boxed(c["a"], c["b"], c["c"]))


def _run_thm13(c):
    N, L, mu, order = c["N"], c["L"], Partition(c["mu"]), c["order"]
    f = products.limit_shape_product(N, L, mu)
    v = vev_infinite(BoundaryProblem("diagonal", N + 1, INF, L + 1, EMPTY, mu, EMPTY), order)
    r = _cmp("thm13", c, f.expand(2 * order), v)
    if not r.passed:
        r.detail = "product vs operator"
        return r
    eo = min(order, 10)
    e = enum_diagonal(N + 1, INF, L + 1, EMPTY, mu, EMPTY, eo)
    r = _cmp("thm13", c, f.expand(2 * eo), e)
    if not r.passed:
        r.detail = "product vs enumeration"
    return r


def _run_thm15(c):
    N, mu, order = c["N"], Partition(c["mu"]), c["order"]
    f = products.symmetric_product(N, mu).expand(2 * order)
    v = vev_symmetric(N, mu, order)
    e = enum_symmetric(N, mu, order)
    r = _cmp("thm15", c, f, v)
    if not r.passed:
        r.detail = "product vs operator"
        return r
    r = _cmp("thm15", c, v, e)
    if not r.passed:
        r.detail = "operator vs enumeration"
    return r


def _run_prop12(c):
    lam, mu, nu = (Partition(c[k]) for k in ("lam", "mu", "nu"))
    order = c["order"]
    a = vev_infinite(BoundaryProblem("diagonal", INF, INF, INF, lam, mu, nu), order)
    b = vev_infinite(BoundaryProblem("perpendicular", INF, INF, INF, lam, mu, nu), order)
    return _cmp("prop12", c, a, b)


def _run_cor14(c):
    mu, L, N, order = Partition(c["mu"]), c["L"], c["N"], c["order"]
    ok = products.corollary_check(mu, L, N, order)
    return CaseResult("cor14", c, ok, None, "" if ok else "product forms differ")


def _run_cauchy(c):
    ok = products.cauchy_identity_check(c["M"], c["N"], c["L"])
    return CaseResult("cauchy", c, ok, None, "" if ok else "finite sum differs from product")


def _random_state(rng: random.Random, max_size: int, n_terms: int) -> FockVector:
    pool = list(partitions_up_to(max_size))
    amps = {}
    for p in rng.sample(pool, min(n_terms, len(pool))):
        amps[p] = {rng.randint(0, 4): rng.choice([-3, -2, -1, 1, 2, 3])}
    return FockVector(amps)


def _run_commutation(c):
    rng = random.Random(c["seed"])
    law = c["law"]
    cutoff = 24
    if law == "gamma_commutation":
        a, b = rng.randint(1, 4), rng.randint(1, 4)
        v = _random_state(rng, 4, rng.randint(1, 20)).with_cutoff(cutoff)
        lhs = apply(gamma_plus(a), apply(gamma_minus(b), v, cutoff=cutoff), cutoff=cutoff)
        rhs = apply(gamma_minus(b), apply(gamma_plus(a), v, cutoff=cutoff), cutoff=cutoff)
        rhs = rhs.scale_series(expand_inverse_factor(a + b, cutoff))
        ok = lhs.agrees_with(rhs)
    elif law == "l0_exchange":
        t, z = rng.randint(1, 4), rng.randint(1, 4)
        v = _random_state(rng, 4, rng.randint(1, 20)).with_cutoff(cutoff)
        # q^{t L0} Gamma_-(z) = Gamma_-(q^{t/2} z) q^{t L0}, doubled exponents
        lhs = apply(weight_L0(t), apply(gamma_minus(z), v, cutoff=cutoff), cutoff=cutoff)
        rhs = apply(gamma_minus(z + t), apply(weight_L0(t), v, cutoff=cutoff), cutoff=cutoff)
        ok = lhs.agrees_with(rhs)
    elif law == "inverse_law":
        z = rng.randint(1, 4)
        v = _random_state(rng, 4, rng.randint(1, 20)).with_cutoff(cutoff)
        back = apply(gamma_minus_inv(z), apply(gamma_minus(z), v, cutoff=cutoff), cutoff=cutoff)
        ok = back.agrees_with(v)
    elif law == "free_boundary":
        ok = _free_boundary_case(rng, 10)
    else:
        raise ValueError(f"unknown law {law!r}")
    return CaseResult("commutation", c, ok, None, "" if ok else law)


def _free_boundary_case(rng: random.Random, cutoff: int) -> bool:
    """``G+(z) G-(w...) F = G-(z) G-(w...) F / ((1-z) prod (1-z w_i))`` on small states.

    ``F`` is the sum of all basis states; it is truncated at a size large
    enough that amplitudes of states up to ``T`` cells are exact.
    """
    z = rng.randint(1, 3)
    ws = [rng.randint(1, 3) for _ in range(rng.randint(0, 2))]
    T = rng.randint(2, 3)
    caps = Caps(max_size=T + cutoff // z)
    F = free_boundary_state(caps, cutoff)
    grow = [gamma_minus(w) for w in ws]
    lhs = apply(gamma_plus(z), apply_word(grow, F, caps, cutoff), caps, cutoff)
    rhs = apply_word([gamma_minus(z)] + grow, F, caps, cutoff)
    factor = expand_inverse_factor(z, cutoff)
    for w in ws:
        factor = factor * expand_inverse_factor(z + w, cutoff)
    rhs = rhs.scale_series(factor)
    small = [p for p in set(lhs.amps) | set(rhs.amps) if sum(p) <= T]
    return lhs.agrees_with(rhs, small)


def _run_decomposition(c):
    route = c["route"]
    if route == "inverse_chain":
        mu, M, order = Partition(c["mu"]), c["M"], c["order"]
        mu_t = mu.conjugate()
        rhs = negated(principal_infinite(mu_t), mu_t).shift(2 * M * sum(mu)).expand(2 * order)
        return _cmp("decomposition", c, vev_inverse_chain(mu, M, order), rhs)
    L, N, M = c["L"], c["N"], c["M"]
    full = products.full_macmahon(L, N, M).expand()
    deg = full.degree() // 2
    second = None
    if route == "operator":
        second = {mu: vev_inverse_chain(mu, M, deg) for mu in enumerate_in_box(L, N)}
    got = products.macmahon_via_decomposition(L, N, M, deg, second)
    return _cmp("decomposition", c, got, full.truncate(2 * deg))


_GENERATORS = {
    "macmahon": _cases_macmahon,
    "thm13": _cases_thm13,
    "thm15": _cases_thm15,
    "prop12": _cases_prop12,
    "cor14": _cases_cor14,
    "cauchy": _cases_cauchy,
    "commutation": _cases_commutation,
    "decomposition": _cases_decomposition,
}

_RUNNERS = {
    "macmahon": _run_macmahon,
    "thm13": _run_thm13,
    "thm15": _run_thm15,
    "prop12": _run_prop12,
    "cor14": _run_cor14,
    "cauchy": _run_cauchy,
    "commutation": _run_commutation,
    "decomposition": _run_decomposition,
}


def suite_cases(suite: str, bounds: Bounds | None = None) -> list[dict]:
    if suite not in _GENERATORS:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    return _GENERATORS[suite](bounds or Bounds())


def run_case(suite: str, case: dict) -> CaseResult:
    try:
        return _RUNNERS[suite](case)
    except Exception as exc:  # a crashing case is a failing case, with the reason kept
        return CaseResult(suite, case, False, None, f"{type(exc).__name__}: {exc}")


def _run_packed(args):
    return run_case(*args)


def default_jobs() -> int:
    env = os.environ.get("PPFN_JOBS")
    if env:
        return max(1, int(env))
    return 1


def run_suite(suite: str, bounds: Bounds | None = None, jobs: int | None = None) -> SuiteReport:
    cases = suite_cases(suite, bounds)
    jobs = default_jobs() if jobs is None else max(1, jobs)
    report = SuiteReport(suite)
    if jobs == 1 or len(cases) < 2:
        report.results = [run_case(suite, c) for c in cases]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            report.results = list(pool.map(_run_packed, [(suite, c) for c in cases], chunksize=4))
    return report
