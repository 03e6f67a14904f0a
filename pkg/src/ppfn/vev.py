"""Vacuum expectation values for boundary problems.

Two evaluation routes share the operator alphabet of :mod:`ppfn.fock`:

* the *vertex form*: the product of modified vertex operators at arguments
  ``q^(j+1/2)`` between boundary states.  With finite height the support
  is finite and the result is an exact Laurent polynomial.
* the *slice form*: one transfer step per diagonal slice, each slice weighted
  by ``q^|slice|``.  All weights are nonnegative powers (after per-slice
  offsets for infinite walls), so discarding terms above a running budget
  is exact up to the cutoff.  Infinite heights and walls go through here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from .fock import (
    Caps,
    FockVector,
    OperatorStep,
    Word,
    evaluate_word,
    gamma_minus,
    gamma_minus_inv,
    gamma_plus,
    horizontal_additions,
    horizontal_removals,
    project_cols,
    project_pin,
    apply,
)
from .partitions import EMPTY, Partition, binom2, conjugate, to_frobenius
from .qseries import HalfSeries

INF = math.inf
DIAGONAL = "diagonal"
PERPENDICULAR = "perpendicular"
SYMMETRIC = "symmetric"

PINS_DERIVED = "derived"
PINS_PRINTED = "printed"


class NonStabilization(RuntimeError):
    """Coefficients kept changing up to the configured ceiling."""


def _is_inf(x) -> bool:
    return x == INF


def _dim(x):
    if isinstance(x, str):
        if x.strip().lower() in ("inf", "infinity", "oo"):
            return INF
        x = int(x)
    if x == INF:
        return INF
    if int(x) != x or x < 1:
        raise ValueError(f"dimension must be a positive integer or inf, got {x!r}")
    return int(x)


@dataclass(frozen=True)
class BoundaryProblem:
    kind: str
    L: int | float
    N: int | float
    M: int | float
    lam: Partition = EMPTY
    mu: Partition = EMPTY
    nu: Partition = EMPTY

    def __post_init__(self):
        if self.kind not in (DIAGONAL, PERPENDICULAR, SYMMETRIC):
            raise ValueError(f"unknown problem kind {self.kind!r}")
        object.__setattr__(self, "L", _dim(self.L))
        object.__setattr__(self, "N", _dim(self.N))
        object.__setattr__(self, "M", _dim(self.M))
        for name in ("lam", "mu", "nu"):
            object.__setattr__(self, name, Partition(getattr(self, name)))
        if self.kind == SYMMETRIC:
            if conjugate(self.mu) != self.mu:
                raise ValueError(f"symmetric problems need a symmetric mu, got {self.mu}")
            if self.lam or self.nu:
                raise ValueError("symmetric problems have empty lam and nu")

    @property
    def finite(self) -> bool:
        return not any(_is_inf(x) for x in (self.L, self.N, self.M))

    def with_dims(self, L, N, M) -> "BoundaryProblem":
        return replace(self, L=L, N=N, M=M)


def arm_set(mu: Partition) -> frozenset:
    return frozenset(to_frobenius(mu).arms)


def leg_set(mu: Partition) -> frozenset:
    return frozenset(to_frobenius(mu).legs)


def modified_step(side: str, j: int, mu: Partition, d, z_exp: int, pins=()) -> list[OperatorStep]:
    """Steps, in written order, of the modified vertex operator with index ``j``.

    Plus side: projection, then ``Gamma_+(z)`` or ``Gamma_-(1/z)`` when ``j`` is
    an arm of ``mu``, then any pins ``(k, l)``.  Minus side mirrors this with the
    leg set.  ``d`` may be ``inf`` (or ``None``) for no projection.
    """
    cols = None if d is None or _is_inf(d) else int(d)
    proj = project_cols(cols)
    if side == "plus":
        op = gamma_minus(-z_exp) if j in arm_set(mu) else gamma_plus(z_exp)
        return [proj, op] + [project_pin(*x) for x in pins]
    if side == "minus":
        op = gamma_plus(-z_exp) if j in leg_set(mu) else gamma_minus(z_exp)
        return [project_pin(*x) for x in pins] + [op, proj]
    raise ValueError(f"side must be 'plus' or 'minus', got {side!r}")


def _delta(p: BoundaryProblem) -> bool:
    mu = p.mu
    return p.L > mu.part(1) and p.M > conjugate(mu).part(1)


def _delta_tilde(L, N, mu: Partition, lam_t: Partition) -> bool:
    reach = sum(1 for x in mu if x == L)
    return all(lam_t.part(i) == N for i in range(1, reach + 1))


def perpendicular_pins(p: BoundaryProblem, rule: str = PINS_DERIVED):
    """Pins ``(left, right)``: ``left[j]`` lists the pins of slice ``-j``, ``right[i]`` those of slice ``i``.

    A pin ``(k, l)`` asks for at most ``k`` parts with part ``k`` equal to ``l``.
    """
    L, M, mu = p.L, p.M, p.mu
    lam_t, mu_t, nu = conjugate(p.lam), conjugate(p.mu), p.nu
    if rule == PINS_PRINTED:
        left = [[(L - j - sum(1 for x in mu if x > j + 1), lam_t.part(L - j + 1))] for j in range(L - 1)]
        right = [[(M - i - sum(1 for x in mu_t if x > i + 1), nu.part(M - i + 1))] for i in range(M - 1)]
        return left, right
    if rule != PINS_DERIVED:
        raise ValueError(f"unknown pin rule {rule!r}")

    # slice -j has cells (t + j, t); those cut by the top section come first
    def cut_left(j):
        return sum(1 for t, x in enumerate(mu, 1) if x - t >= j)

    def cut_right(i):
        return sum(1 for t, x in enumerate(mu_t, 1) if x - t >= i)

    left = [[(L - j - cut_left(j), lam_t.part(L - j))] for j in range(L - 1)]
    right = [[(M - i - cut_right(i), nu.part(M - i))] for i in range(M - 1)]
    # the last row runs past slice 0 when M > L, the last column when L > M
    for i in range(1, min(M - L, M - 2) + 1):
        right[i].append((L - cut_right(i), lam_t.part(L + i)))
    for j in range(1, min(L - M, L - 2) + 1):
        left[j].append((M - cut_left(j), nu.part(M + j)))
    return left, right


def _corner_ok(p: BoundaryProblem) -> bool:
    """The corner cell belongs to both the last row and the last column."""
    lam_t, nu = conjugate(p.lam), p.nu
    return len(lam_t) <= p.M and len(nu) <= p.L and lam_t.part(p.M) == nu.part(p.L)


def diagonal_word(p: BoundaryProblem) -> Word:
    if not p.finite:
        raise ValueError("the vertex form needs finite L, N, M")
    L, N, M, lam, mu, nu = p.L, p.N, p.M, p.lam, p.mu, p.nu
    steps: list[OperatorStep] = []
    for j in range(L - 2, -1, -1):
        steps += modified_step("plus", j, mu, N - 1, 2 * j + 1)
    steps.append(project_cols(N - 1))
    for i in range(M - 1):
        steps += modified_step("minus", i, mu, N - 1, 2 * i + 1)
    pre = 2 * (L * sum(lam) + N * sum(mu) + M * sum(nu)) - sum(lam) - sum(nu) - 2 * binom2(lam) - 2 * binom2(conjugate(nu))
    return Word(conjugate(lam), tuple(steps), nu, pre, Caps(max_part=N - 1))


def perpendicular_word(p: BoundaryProblem, rule: str = PINS_DERIVED) -> Word:
    if not p.finite:
        raise ValueError("the vertex form needs finite L, N, M")
    L, N, M, mu = p.L, p.N, p.M, p.mu
    lam_t1, nu1 = conjugate(p.lam).part(1), p.nu.part(1)
    left, right = perpendicular_pins(p, rule)
    steps: list[OperatorStep] = []
    for j in range(L - 2, -1, -1):
        steps += modified_step("plus", j, mu, N - 1, 2 * j + 1, pins=left[j])
    steps.append(project_cols(N - 1))
    for i in range(M - 1):
        steps += modified_step("minus", i, mu, N - 1, 2 * i + 1, pins=right[i])
    pre = 2 * (L * lam_t1 + N * sum(mu) + M * nu1) - lam_t1 - nu1
    return Word(Partition([lam_t1]), tuple(steps), Partition([nu1]), pre, Caps(max_part=N - 1))


def vev_diagonal(p: BoundaryProblem, cutoff: int | None = None) -> HalfSeries:
    """Exact diagonal partition function for finite ``L, N, M`` via the vertex form."""
    if p.kind != DIAGONAL:
        raise ValueError("expected a diagonal problem")
    if not _delta(p):
        return HalfSeries.zero()
    out = evaluate_word(diagonal_word(p))
    return out.truncate(cutoff)


def vev_perpendicular(p: BoundaryProblem, cutoff: int | None = None, rule: str = PINS_DERIVED) -> HalfSeries:
    if p.kind != PERPENDICULAR:
        raise ValueError("expected a perpendicular problem")
    if not _delta(p):
        return HalfSeries.zero()
    if not (_delta_tilde(p.L, p.N, p.mu, conjugate(p.lam)) and _delta_tilde(p.M, p.N, conjugate(p.mu), p.nu)):
        return HalfSeries.zero()
    if rule == PINS_DERIVED and not _corner_ok(p):
        return HalfSeries.zero()
    out = evaluate_word(perpendicular_word(p, rule))
    return out.truncate(cutoff)


# slice form


@dataclass(frozen=True)
class Transition:
    """Produce the next slice: ``grow`` adds a horizontal strip, otherwise remove one.

    The new slice is weighted by ``q^(weight * |slice| - offset)``; ``deficit``
    bounds how far below zero that exponent can go for any valid completion.
    """

    grow: bool
    weight: int = 1
    cap: int | None = None
    pins: tuple = ()
    offset: int = 0
    deficit: int = 0
    floor: Partition | None = None  # valid completions keep the slice above this


@dataclass
class SliceChain:
    ket: Partition
    transitions: list[Transition]
    bra: Partition | None  # None pairs with the free-boundary state
    const: int = 0  # q-exponent added at the end
    ket_weight: int = 1
    ket_offset: int = 0
    ket_pins: tuple = ()
    meta: dict = field(default_factory=dict)

    def total_offset(self) -> int:
        return self.ket_offset + sum(t.offset for t in self.transitions)


def _dominates(p: Partition, floor: Partition) -> bool:
    if len(p) < len(floor):
        return False
    return all(a >= b for a, b in zip(p, floor))


def evaluate_chain(chain: SliceChain, cutoff_q: int) -> HalfSeries:
    """Sum over slice sequences, exact for every exponent ``<= cutoff_q``."""
    T = cutoff_q - chain.const - chain.total_offset()
    rem = [0] * (len(chain.transitions) + 1)
    for idx in range(len(chain.transitions) - 1, -1, -1):
        rem[idx] = rem[idx + 1] + chain.transitions[idx].deficit
    from .fock import _pin_ok

    start = chain.ket_weight * sum(chain.ket) - chain.ket_offset
    if not all(_pin_ok(chain.ket, *x) for x in chain.ket_pins):
        return HalfSeries.zero(2 * cutoff_q)
    cap = chain.meta.get("cap")
    if cap is not None and any(b and b[0] > cap for b in (chain.ket, chain.bra)):
        return HalfSeries.zero(2 * cutoff_q)
    states: dict[Partition, dict[int, int]] = {}
    if start - rem[0] <= T:
        states[chain.ket] = {start: 1}
    for idx, tr in enumerate(chain.transitions):
        limit = T + rem[idx + 1]  # exponents above this cannot come back under T
        nxt: dict[Partition, dict[int, int]] = {}
        for p, amp in states.items():
            base = sum(p)
            if tr.grow:
                lo = min(amp)
                room = limit + tr.offset - lo
                if room < 0:
                    continue
                max_size = room // tr.weight
                max_add = max_size - base
                if max_add < 0:
                    continue
                cands = horizontal_additions(p, tr.cap, max_add)
            else:
                cands = horizontal_removals(p)
            for lam, k in cands:
                if tr.cap is not None and lam and lam[0] > tr.cap:
                    continue
                if tr.pins and not all(_pin_ok(lam, *x) for x in tr.pins):
                    continue
                if tr.floor is not None and not _dominates(lam, tr.floor):
                    continue
                s = tr.weight * sum(lam) - tr.offset
                tgt = None
                for e, c in amp.items():
                    e2 = e + s
                    if e2 > limit:
                        continue
                    if tgt is None:
                        tgt = nxt.get(lam)
                        if tgt is None:
                            tgt = nxt[lam] = {}
                    tgt[e2] = tgt.get(e2, 0) + c
        states = nxt
    if chain.bra is None:
        acc: dict[int, int] = {}
        for amp in states.values():
            for e, c in amp.items():
                acc[e] = acc.get(e, 0) + c
    else:
        acc = dict(states.get(chain.bra, {}))
    shift = chain.const + chain.total_offset()
    terms = {2 * (e + shift): c for e, c in acc.items() if e <= T}
    return HalfSeries(terms, 2 * cutoff_q)


def _flip_reach(mu: Partition) -> tuple[int, int]:
    """Largest arm and leg, or -1 when ``mu`` is empty."""
    f = to_frobenius(mu)
    return (f.arms[0] if f.arms else -1), (f.legs[0] if f.legs else -1)


def diagonal_chain(p: BoundaryProblem, L: int, M: int, inf_L: bool, inf_M: bool) -> SliceChain:
    """Slice-form chain with finite walls ``L, M``; the infinite flags set offsets."""
    N, lam, mu, nu = p.N, p.lam, p.mu, p.nu
    lam_t = conjugate(lam)
    arms, legs = arm_set(mu), leg_set(mu)
    max_arm, max_leg = _flip_reach(mu)
    cap = None if _is_inf(N) else N - 1
    off_left = sum(lam) if inf_L else 0
    off_right = sum(nu) if inf_M else 0
    trs = []
    for i in range(M - 2, -1, -1):  # produces slice i from slice i + 1
        o = off_right if i >= 1 else off_left
        zone = i <= max_leg if i >= 1 else 0 <= max_arm
        trs.append(Transition(grow=i not in legs, cap=cap, offset=o, deficit=o if zone else 0))
    for j in range(L - 1):  # produces slice -(j + 1) from slice -j
        s = j + 1
        zone = s <= max_arm
        trs.append(Transition(grow=j in arms, cap=cap, offset=off_left, deficit=off_left if zone else 0,
                              floor=None if zone else lam_t))
    const = -binom2(lam) - binom2(conjugate(nu))
    if not _is_inf(N):
        const += N * sum(mu)
    if inf_L:
        const -= L * sum(lam)
    if inf_M:
        const -= M * sum(nu)
    ket_off = off_right if M - 1 >= 1 else off_left
    return SliceChain(nu, trs, lam_t, const, 1, ket_off, (), {"cap": cap})


def perpendicular_chain(p: BoundaryProblem, L: int, M: int, inf_L: bool, inf_M: bool,
                        rule: str = PINS_DERIVED) -> SliceChain:
    N, mu = p.N, p.mu
    lam_t, nu = conjugate(p.lam), p.nu
    arms, legs = arm_set(mu), leg_set(mu)
    max_arm, max_leg = _flip_reach(mu)
    cap = None if _is_inf(N) else N - 1
    q = replace(p, L=L, M=M, N=p.N)
    left, right = perpendicular_pins(q, rule)

    def off_left(s):  # slice -s dominates the first L - s parts of lam^t
        return sum(lam_t[: L - s]) if inf_L else 0

    def off_right(i):
        return sum(nu[: M - i]) if inf_M else 0

    trs = []
    for i in range(M - 2, -1, -1):
        if i >= 1:
            o, zone = off_right(i), i <= max_leg
        else:
            o, zone = off_left(0), 0 <= max_arm
        pins = right[i] + (left[0] if i == 0 and left else [])
        trs.append(Transition(grow=i not in legs, cap=cap, pins=tuple(pins), offset=o, deficit=o if zone else 0))
    for j in range(L - 1):
        s = j + 1
        zone = s <= max_arm
        pins = tuple(left[s]) if s <= L - 2 else ()
        floor = None if zone else Partition(lam_t[: L - s])
        trs.append(Transition(grow=j in arms, cap=cap, pins=pins, offset=off_left(s),
                              deficit=off_left(s) if zone else 0, floor=floor))
    const = 0 if _is_inf(N) else N * sum(mu)
    if inf_L:
        const -= L * sum(p.lam)
    if inf_M:
        const -= M * sum(nu)
    ket = Partition([nu.part(1)])
    bra = Partition([lam_t.part(1)])
    ket_off = off_right(M - 1) if M - 1 >= 1 else off_left(0)
    # with M = 1 the ket is slice 0 and carries the left pin
    ket_pins = tuple(left[0]) if M == 1 and L >= 2 else ()
    return SliceChain(ket, trs, bra, const, 1, ket_off, ket_pins, {"cap": cap})


def symmetric_chain(N: int, mu: Partition) -> SliceChain:
    """Half of a symmetric problem: slices ``-N .. 0`` from the empty wall outward."""
    arms = arm_set(mu)
    trs = []
    for j in range(N - 1, -1, -1):  # produces slice -j from slice -(j + 1)
        trs.append(Transition(grow=j not in arms, weight=2 if j > 0 else 1))
    return SliceChain(EMPTY, trs, None, 0)


def _chain_for(p: BoundaryProblem, K: int | None, rule: str) -> SliceChain:
    L = K if _is_inf(p.L) else p.L
    M = K if _is_inf(p.M) else p.M
    if p.kind == DIAGONAL:
        return diagonal_chain(p, L, M, _is_inf(p.L), _is_inf(p.M))
    return perpendicular_chain(p, L, M, _is_inf(p.L), _is_inf(p.M), rule)


@dataclass
class StabilizedResult:
    series: HalfSeries
    K: int | None
    history: list = field(default_factory=list)


def default_k_ceiling(p: BoundaryProblem, order: int) -> int:
    # walls further out than order + sizes cannot be reached; the factor 2
    # leaves the doubling sequence room to confirm that with a second value
    return 2 * (order + max(sum(p.lam), sum(p.mu), sum(p.nu)) + 8)


def _k_start(p: BoundaryProblem) -> int:
    mu_t = conjugate(p.mu)
    return max(p.mu.part(1), mu_t.part(1), len(conjugate(p.lam)), len(p.nu),
               conjugate(p.lam).part(1), p.nu.part(1)) + 2


def vev_infinite_detail(p: BoundaryProblem, order: int, k_ceiling: int | None = None,
                        rule: str = PINS_DERIVED) -> StabilizedResult:
    """Slice-form evaluation through ``q^order``; infinite walls are stabilized in ``K``.

    An infinite height needs no ``K``: dropping the infinitely tall columns is
    exactly the normalized limit.
    """
    if p.kind == SYMMETRIC:
        return StabilizedResult(vev_symmetric(p.N, p.mu, order), None)
    if not (_is_inf(p.L) or _is_inf(p.M)):
        return StabilizedResult(vev_slice(p, order, rule), None)
    ceiling = default_k_ceiling(p, order) if k_ceiling is None else k_ceiling
    K = _k_start(p)
    prev = None
    history = []
    K = min(K, ceiling)
    while True:
        cur = evaluate_chain(_chain_for(p, K, rule), order)
        history.append((K, cur))
        if prev is not None and prev.agrees_with(cur):
            return StabilizedResult(cur, K, history)
        if K >= ceiling:
            raise NonStabilization(f"no stable coefficients through q^{order} with K <= {ceiling}")
        prev = cur
        K = min(2 * K, ceiling)


def vev_infinite(p: BoundaryProblem, order: int, k_ceiling: int | None = None, rule: str = PINS_DERIVED) -> HalfSeries:
    return vev_infinite_detail(p, order, k_ceiling, rule).series


def vev_slice(p: BoundaryProblem, order: int, rule: str = PINS_DERIVED) -> HalfSeries:
    """Slice-form value of a problem with finite walls (any height)."""
    if _is_inf(p.L) or _is_inf(p.M):
        raise ValueError("use vev_infinite for infinite walls")
    if not _delta(p):
        return HalfSeries.zero(2 * order)
    if p.kind == PERPENDICULAR and not (
        _delta_tilde(p.L, p.N, p.mu, conjugate(p.lam)) and _delta_tilde(p.M, p.N, conjugate(p.mu), p.nu)
    ):
        return HalfSeries.zero(2 * order)
    if p.kind == PERPENDICULAR and rule == PINS_DERIVED and not _corner_ok(p):
        return HalfSeries.zero(2 * order)
    return evaluate_chain(_chain_for(p, None, rule), order)


def vev_symmetric(N: int, mu: Partition, order: int) -> HalfSeries:
    """Symmetric partition function with walls ``N + 1`` apart, through ``q^order``.

    The plus-side modified operators at ``q^(2j+1)`` are paired against the
    free-boundary state; in slice form every half-slice carries weight 2
    except the central one.
    """
    mu = Partition(mu)
    if conjugate(mu) != mu:
        raise ValueError(f"{mu} is not symmetric")
    if mu.part(1) > N:
        return HalfSeries.zero(2 * order)
    return evaluate_chain(symmetric_chain(N, mu), order)


def symmetric_word(N: int, mu: Partition) -> Word:
    """``<0| prod_j Gamma^inf_{+,{j,mu}}(q^(2j+1))`` followed by the free boundary (ket side empty)."""
    steps = []
    for j in range(N - 1, -1, -1):
        steps += modified_step("plus", j, mu, INF, 2 * (2 * j + 1))
    return Word(EMPTY, tuple(steps), EMPTY, 0)


def vev_symmetric_vertex(N: int, mu: Partition, order: int, size_ceiling: int = 64) -> StabilizedResult:
    """The same value from the vertex form, stabilized over growing size caps.

    Mirrored onto kets: ``sum_lam <lam| W^* |0>`` with ``W^*`` built from adjoints.
    """
    mu = Partition(mu)
    if conjugate(mu) != mu:
        raise ValueError(f"{mu} is not symmetric")
    if mu.part(1) > N:
        return StabilizedResult(HalfSeries.zero(2 * order), None)
    mirrored = symmetric_word(N, mu).mirror()
    S = max(order, 2)
    prev = None
    history = []
    while S <= size_ceiling:
        caps = Caps(max_size=S)
        v = FockVector.basis(EMPTY, None, caps)
        for s in reversed(mirrored.steps):
            if s.is_identity():
                continue
            v = apply(s, v, caps)
        cur = v.total().truncate(2 * order)
        if cur.cutoff is None:
            cur = HalfSeries(cur.terms, 2 * order)
        history.append((S, cur))
        if prev is not None and prev.agrees_with(cur):
            return StabilizedResult(cur, S, history)
        prev = cur
        S *= 2
    raise NonStabilization(f"vertex-form symmetric value unstable up to size cap {size_ceiling}")


def vev_inverse_chain(mu: Partition, M: int, order: int, max_factors: int = 4096) -> HalfSeries:
    """``<mu| prod_{m >= M} Gamma_-(q^(m+1/2))^(-1) |0>`` through ``q^order``.

    Factors are added one at a time until a factor can no longer reach any
    exponent at or below the cutoff.
    """
    mu = Partition(mu)
    if M < 0:
        raise ValueError("M must be nonnegative")
    cutoff = 2 * order
    caps = Caps(contained_in=mu)
    v = FockVector.basis(EMPTY, cutoff, caps)
    m = M
    while True:
        if m - M > max_factors:
            raise NonStabilization("inverse chain did not settle")
        z = 2 * m + 1
        if z > cutoff and m > M:
            break
        v = apply(gamma_minus_inv(z), v, caps, cutoff)
        m += 1
    return v.amplitude(mu)
