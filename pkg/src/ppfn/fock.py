"""Sparse Fock-space states and the vertex-operator alphabet.

Basis states ``|p>`` are indexed by partitions.  Amplitudes are series in
q^(1/2), held internally as ``{doubled_exponent: coeff}`` dicts and exposed
as :class:`HalfSeries`.

Operator actions on kets:

* ``gamma_minus(z)`` adds a horizontal strip of ``k`` cells with weight ``z^k``
* ``gamma_plus(z)`` removes a horizontal strip, weight ``z^k``
* ``gamma_minus_inv(z)`` adds a vertical strip with weight ``(-z)^k``
* ``gamma_plus_inv(z)`` removes a vertical strip with weight ``(-z)^k``
* ``project_cols(d)`` keeps states with first part ``<= d``
* ``project_pin(k, l)`` keeps states with ``p_k = l`` and nothing below row ``k``
* ``weight_L0(t)`` multiplies ``|p>`` by ``q^(t |p| / 2)``

Operators that add cells can produce infinitely many states.  They need
either a positive ``z`` with a cutoff on the vector, or explicit caps.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from .partitions import EMPTY, Partition, conjugate, parse_partition, partitions_of
from .qseries import HalfSeries

GAMMA_PLUS = "gamma_plus"
GAMMA_MINUS = "gamma_minus"
GAMMA_PLUS_INV = "gamma_plus_inv"
GAMMA_MINUS_INV = "gamma_minus_inv"
PROJECT_COLS = "project_cols"
PROJECT_PIN = "project_pin"
WEIGHT_L0 = "weight_L0"

_GAMMAS = (GAMMA_PLUS, GAMMA_MINUS, GAMMA_PLUS_INV, GAMMA_MINUS_INV)
_ADJOINT = {
    GAMMA_PLUS: GAMMA_MINUS,
    GAMMA_MINUS: GAMMA_PLUS,
    GAMMA_PLUS_INV: GAMMA_MINUS_INV,
    GAMMA_MINUS_INV: GAMMA_PLUS_INV,
}


class PruningRequired(ValueError):
    """An operator would create unboundedly many states and nothing bounds them."""


@dataclass(frozen=True)
class OperatorStep:
    kind: str
    z: int = 0  # doubled exponent of the argument, or of t for weight_L0
    d: int | None = None  # column bound for project_cols; None means no bound
    k: int = 0
    l: int = 0

    def __post_init__(self):
        if self.kind not in _GAMMAS + (PROJECT_COLS, PROJECT_PIN, WEIGHT_L0):
            raise ValueError(f"unknown operator {self.kind!r}")

    @property
    def grows(self) -> bool:
        return self.kind in (GAMMA_MINUS, GAMMA_MINUS_INV)

    def adjoint(self) -> "OperatorStep":
        if self.kind in _ADJOINT:
            return OperatorStep(_ADJOINT[self.kind], self.z)
        return self

    def is_identity(self) -> bool:
        if self.kind == PROJECT_COLS:
            return self.d is None
        if self.kind == PROJECT_PIN:
            return self.k <= 0
        if self.kind == WEIGHT_L0:
            return self.z == 0
        return False

    def dump(self) -> str:
        if self.kind in _GAMMAS:
            side = "+" if self.kind in (GAMMA_PLUS, GAMMA_PLUS_INV) else "-"
            inv = "inv" if self.kind.endswith("inv") else ""
            return f"GAMMA-{side}{inv} z=q^{{{self.z}/2}}"
        if self.kind == PROJECT_COLS:
            return f"PROJ cols<={'inf' if self.d is None else self.d}"
        if self.kind == PROJECT_PIN:
            return f"PIN ({self.k},{self.l})"
        return f"L0 q^{{{self.z}/2}}"


def gamma_plus(z: int) -> OperatorStep:
    return OperatorStep(GAMMA_PLUS, z)


def gamma_minus(z: int) -> OperatorStep:
    return OperatorStep(GAMMA_MINUS, z)


def gamma_plus_inv(z: int) -> OperatorStep:
    return OperatorStep(GAMMA_PLUS_INV, z)


def gamma_minus_inv(z: int) -> OperatorStep:
    return OperatorStep(GAMMA_MINUS_INV, z)


def project_cols(d: int | None) -> OperatorStep:
    return OperatorStep(PROJECT_COLS, d=d)


def project_pin(k: int, l: int) -> OperatorStep:
    return OperatorStep(PROJECT_PIN, k=k, l=l)


def weight_L0(t: int) -> OperatorStep:
    return OperatorStep(WEIGHT_L0, t)


@dataclass(frozen=True)
class Caps:
    """Support bounds: states outside them are discarded after each step."""

    max_part: int | None = None
    max_len: int | None = None
    max_size: int | None = None
    contained_in: Partition | None = None

    def admits(self, p: Partition) -> bool:
        if self.max_part is not None and p and p[0] > self.max_part:
            return False
        if self.max_len is not None and len(p) > self.max_len:
            return False
        if self.max_size is not None and sum(p) > self.max_size:
            return False
        if self.contained_in is not None and not self.contained_in.contains(p):
            return False
        return True


NO_CAPS = Caps()


class FockVector:
    """Finite sparse combination ``sum_p a_p(q) |p>``.

    ``cutoff`` is a doubled exponent: terms above it are unknown and dropped.
    """

    __slots__ = ("amps", "cutoff", "caps")

    def __init__(self, amps: Mapping[Partition, Mapping[int, int]] | None = None,
                 cutoff: int | None = None, caps: Caps = NO_CAPS):
        clean = {}
        for p, a in (amps or {}).items():
            if isinstance(a, HalfSeries):
                a = a.terms
            t = {d: c for d, c in a.items() if c and (cutoff is None or d <= cutoff)}
            if t:
                clean[Partition(p)] = t
        self.amps = clean
        self.cutoff = cutoff
        self.caps = caps

    @classmethod
    def _raw(cls, amps, cutoff, caps=NO_CAPS) -> "FockVector":
        v = cls.__new__(cls)
        v.amps = amps
        v.cutoff = cutoff
        v.caps = caps
        return v

    @classmethod
    def basis(cls, p: Partition, cutoff: int | None = None, caps: Caps = NO_CAPS) -> "FockVector":
        return cls._raw({Partition(p): {0: 1}}, cutoff, caps)

    @classmethod
    def vacuum(cls, cutoff: int | None = None) -> "FockVector":
        return cls.basis(EMPTY, cutoff)

    def __len__(self) -> int:
        return len(self.amps)

    def __iter__(self) -> Iterator[Partition]:
        return iter(self.amps)

    def amplitude(self, p: Partition) -> HalfSeries:
        return HalfSeries(self.amps.get(Partition(p), {}), self.cutoff)

    def items(self) -> Iterator[tuple[Partition, HalfSeries]]:
        for p, a in self.amps.items():
            yield p, HalfSeries(a, self.cutoff)

    def is_zero(self) -> bool:
        return not self.amps

    def with_cutoff(self, cutoff: int | None) -> "FockVector":
        if cutoff is None or (self.cutoff is not None and self.cutoff <= cutoff):
            return self
        return FockVector(self.amps, cutoff, self.caps)

    def shift(self, d: int) -> "FockVector":
        """Multiply every amplitude by ``q^(d/2)``."""
        if d == 0:
            return self
        amps = {p: {e + d: c for e, c in a.items()} for p, a in self.amps.items()}
        return FockVector._raw(amps, None if self.cutoff is None else self.cutoff + d, self.caps)

    def scale_series(self, s: HalfSeries) -> "FockVector":
        out = {}
        cutoff = self.cutoff
        for p, a in self.items():
            r = a * s
            cutoff = _min(cutoff, r.cutoff)
            if r.terms:
                out[p] = r.terms
        return FockVector(out, cutoff, self.caps)

    def __add__(self, other: "FockVector") -> "FockVector":
        cutoff = _min(self.cutoff, other.cutoff)
        out: dict = {}
        for src in (self.amps, other.amps):
            for p, a in src.items():
                _accumulate(out, p, a, 0, 1, cutoff)
        return FockVector._raw(_strip(out), cutoff)

    def __neg__(self) -> "FockVector":
        return FockVector._raw({p: {d: -c for d, c in a.items()} for p, a in self.amps.items()}, self.cutoff, self.caps)

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + (-other)

    def agrees_with(self, other: "FockVector", states: Iterable[Partition] | None = None) -> bool:
        cutoff = _min(self.cutoff, other.cutoff)
        keys = set(self.amps) | set(other.amps) if states is None else set(states)
        for p in keys:
            a = HalfSeries(self.amps.get(p, {}), cutoff)
            b = HalfSeries(other.amps.get(p, {}), cutoff)
            if a.terms != b.terms:
                return False
        return True

    def total(self) -> HalfSeries:
        """Pairing with the free-boundary state: the sum of all amplitudes."""
        acc: dict[int, int] = {}
        for a in self.amps.values():
            for d, c in a.items():
                acc[d] = acc.get(d, 0) + c
        return HalfSeries(acc, self.cutoff)

    def __repr__(self) -> str:
        body = ", ".join(f"{p}: {HalfSeries(a)}" for p, a in sorted(self.amps.items()))
        return f"FockVector({{{body}}}, cutoff={self.cutoff})"


def _min(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _accumulate(out: dict, p: Partition, amp: Mapping[int, int], shift: int, coeff: int, cutoff: int | None):
    tgt = out.get(p)
    if tgt is None:
        tgt = out[p] = {}
    for d, c in amp.items():
        e = d + shift
        if cutoff is not None and e > cutoff:
            continue
        tgt[e] = tgt.get(e, 0) + coeff * c


def _strip(out: dict) -> dict:
    res = {}
    for p, a in out.items():
        t = {d: c for d, c in a.items() if c}
        if t:
            res[p] = t
    return res


# strip enumeration


@lru_cache(maxsize=200_000)
def horizontal_additions(mu: Partition, max_first: int | None, max_add: int | None) -> tuple:
    """All ``(lam, k)`` with ``lam / mu`` a horizontal strip of ``k`` cells."""
    n = len(mu)
    out = []
    parts = [0] * (n + 1)

    def rec(i, added):
        if i == n + 1:
            lam = Partition._trusted(tuple(x for x in parts if x))
            out.append((lam, added))
            return
        lo = mu[i] if i < n else 0
        if i == 0:
            hi = None
            if max_first is not None:
                hi = max_first
            if max_add is not None:
                hi = lo + max_add - added if hi is None else min(hi, lo + max_add - added)
            if hi is None:
                raise PruningRequired("unbounded first row")
        else:
            hi = mu[i - 1]
            if max_add is not None:
                hi = min(hi, lo + max_add - added)
        for v in range(lo, hi + 1):
            parts[i] = v
            rec(i + 1, added + v - lo)

    if max_first is not None and mu and mu[0] > max_first:
        return ()
    rec(0, 0)
    return tuple(out)


@lru_cache(maxsize=200_000)
def horizontal_removals(lam: Partition) -> tuple:
    """All ``(mu, k)`` with ``lam / mu`` a horizontal strip of ``k`` cells."""
    n = len(lam)
    out = []
    parts = [0] * n

    def rec(i, removed):
        if i == n:
            mu = Partition._trusted(tuple(x for x in parts if x))
            out.append((mu, removed))
            return
        lo = lam[i + 1] if i + 1 < n else 0
        for v in range(lo, lam[i] + 1):
            parts[i] = v
            rec(i + 1, removed + lam[i] - v)

    rec(0, 0)
    return tuple(out)


@lru_cache(maxsize=200_000)
def vertical_additions(mu: Partition, max_len: int | None, max_add: int | None) -> tuple:
    return tuple((conjugate(l), k) for l, k in horizontal_additions(conjugate(mu), max_len, max_add))


@lru_cache(maxsize=200_000)
def vertical_removals(lam: Partition) -> tuple:
    return tuple((conjugate(m), k) for m, k in horizontal_removals(conjugate(lam)))


def _pin_ok(p: Partition, k: int, l: int) -> bool:
    if k <= 0:
        return True
    if len(p) > k:
        return False
    return p.part(k) == l


def apply(step: OperatorStep, v: FockVector, caps: Caps | None = None, cutoff: int | None = None) -> FockVector:
    """Apply one operator; ``caps`` and ``cutoff`` prune the result."""
    caps = caps or v.caps or NO_CAPS
    cutoff = _min(v.cutoff, cutoff)
    kind = step.kind
    if kind == PROJECT_COLS:
        if step.d is None:
            return FockVector(v.amps, cutoff, caps)
        amps = {p: a for p, a in v.amps.items() if not p or p[0] <= step.d}
        return FockVector(amps, cutoff, caps)
    if kind == PROJECT_PIN:
        amps = {p: a for p, a in v.amps.items() if _pin_ok(p, step.k, step.l)}
        return FockVector(amps, cutoff, caps)
    if kind == WEIGHT_L0:
        out = {}
        for p, a in v.amps.items():
            s = step.z * sum(p)
            t = {d + s: c for d, c in a.items() if cutoff is None or d + s <= cutoff}
            if t:
                out[p] = t
        return FockVector._raw(out, cutoff, caps)

    z = step.z
    sign = -1 if kind in (GAMMA_PLUS_INV, GAMMA_MINUS_INV) else 1
    out: dict = {}
    if kind in (GAMMA_PLUS, GAMMA_PLUS_INV):
        removals = horizontal_removals if kind == GAMMA_PLUS else vertical_removals
        for p, a in v.amps.items():
            for m, k in removals(p):
                if not caps.admits(m):
                    continue
                _accumulate(out, m, a, z * k, sign ** k, cutoff)
        return FockVector._raw(_strip(out), cutoff, caps)

    horizontal = kind == GAMMA_MINUS
    for p, a in v.amps.items():
        max_add = None
        if caps.max_size is not None:
            max_add = caps.max_size - sum(p)
            if max_add < 0:
                continue
        if z > 0 and cutoff is not None:
            budget = (cutoff - min(a)) // z
            max_add = budget if max_add is None else min(max_add, budget)
        if caps.contained_in is not None:
            room = sum(caps.contained_in) - sum(p)
            max_add = room if max_add is None else min(max_add, room)
        bound = caps.max_part if horizontal else caps.max_len
        if max_add is None and bound is None:
            raise PruningRequired(f"{step.dump()} needs caps or a positive argument with a cutoff")
        if horizontal:
            if bound is None and caps.contained_in is not None:
                bound = caps.contained_in.part(1)
            adds = horizontal_additions(p, bound, max_add)
        else:
            if bound is None and caps.contained_in is not None:
                bound = len(caps.contained_in)
            adds = vertical_additions(p, bound, max_add)
        for lam, k in adds:
            if not caps.admits(lam):
                continue
            _accumulate(out, lam, a, z * k, sign ** k, cutoff)
    return FockVector._raw(_strip(out), cutoff, caps)


@dataclass(frozen=True)
class Word:
    """``<bra| steps[0] steps[1] ... steps[-1] |ket>`` with an overall ``q^(prefactor/2)``."""

    bra: Partition
    steps: tuple[OperatorStep, ...]
    ket: Partition
    prefactor: int = 0
    caps: Caps = NO_CAPS

    def mirror(self) -> "Word":
        """The adjoint word: ``<ket| steps^* reversed |bra>``; same value."""
        return Word(self.ket, tuple(s.adjoint() for s in reversed(self.steps)), self.bra, self.prefactor, self.caps)

    def dump(self) -> str:
        lines = [f"BRA {_fmt(self.bra)}"]
        lines += [s.dump() for s in self.steps]
        lines.append(f"KET {_fmt(self.ket)}")
        lines.append(f"PREFACTOR q^{{{self.prefactor}/2}}")
        if self.caps != NO_CAPS:
            lines.append("CAPS " + _fmt_caps(self.caps))
        return "\n".join(lines)


def _fmt_caps(caps: Caps) -> str:
    out = []
    for name in ("max_part", "max_len", "max_size"):
        x = getattr(caps, name)
        if x is not None:
            out.append(f"{name}={x}")
    if caps.contained_in is not None:
        out.append(f"contained_in={_fmt(caps.contained_in)}")
    return " ".join(out)


def _parse_caps(text: str) -> Caps:
    kw = {}
    for item in text.split():
        name, _, value = item.partition("=")
        kw[name] = parse_partition(value) if name == "contained_in" else int(value)
    return Caps(**kw)


def _fmt(p: Partition) -> str:
    return ",".join(map(str, p)) if p else "[]"


def apply_word(steps: Iterable[OperatorStep], v: FockVector, caps: Caps | None = None,
               cutoff: int | None = None) -> FockVector:
    """Apply ``steps`` written left to right, so the last one acts first."""
    for s in reversed(list(steps)):
        if s.is_identity():
            continue
        v = apply(s, v, caps, cutoff)
    return v


def evaluate_word(word: Word, cutoff: int | None = None) -> HalfSeries:
    v = FockVector.basis(word.ket, cutoff)
    v = apply_word(word.steps, v, word.caps, cutoff)
    return pairing(word.bra, v).shift(word.prefactor)


def pairing(bra: Partition, v: FockVector) -> HalfSeries:
    return v.amplitude(bra)


def inner(u: FockVector, v: FockVector) -> HalfSeries:
    cutoff = None
    acc = HalfSeries.zero()
    for p, a in u.items():
        if p in v.amps:
            acc = acc + a * v.amplitude(p)
    if u.cutoff is not None or v.cutoff is not None:
        cutoff = _min(u.cutoff, v.cutoff)
        acc = acc.truncate(cutoff)
    return acc


def free_boundary_state(caps: Caps, cutoff: int | None = None) -> FockVector:
    """``sum_p |p>`` over every partition allowed by ``caps`` (a size cap is required)."""
    if caps.max_size is None:
        raise PruningRequired("the free-boundary state needs a size cap")
    amps = {}
    for n in range(caps.max_size + 1):
        for p in partitions_of(n, caps.max_len, caps.max_part):
            if caps.admits(p):
                amps[p] = {0: 1}
    return FockVector._raw(amps, cutoff, caps)


def _half_exp(text: str) -> int:
    return int(text.split("q^{")[1].split("/2}")[0])


def parse_step(line: str) -> OperatorStep:
    """Inverse of :meth:`OperatorStep.dump`."""
    line = line.strip()
    head, _, rest = line.partition(" ")
    if head.startswith("GAMMA-"):
        side = head[6]
        inv = head.endswith("inv")
        z = _half_exp(rest)
        kind = {("+", False): GAMMA_PLUS, ("-", False): GAMMA_MINUS,
                ("+", True): GAMMA_PLUS_INV, ("-", True): GAMMA_MINUS_INV}[(side, inv)]
        return OperatorStep(kind, z)
    if head == "PROJ":
        bound = rest.split("<=")[1]
        return project_cols(None if bound == "inf" else int(bound))
    if head == "PIN":
        k, l = rest.strip("()").split(",")
        return project_pin(int(k), int(l))
    if head == "L0":
        return weight_L0(_half_exp(rest))
    raise ValueError(f"cannot parse operator line {line!r}")


def parse_word(text: str) -> Word:
    bra = ket = EMPTY
    pre = 0
    caps = NO_CAPS
    steps = []
    for line in text.strip().splitlines():
        if line.startswith("BRA "):
            bra = parse_partition(line[4:])
        elif line.startswith("KET "):
            ket = parse_partition(line[4:])
        elif line.startswith("PREFACTOR "):
            pre = _half_exp(line)
        elif line.startswith("CAPS"):
            caps = _parse_caps(line[4:])
        elif line.strip():
            steps.append(parse_step(line))
    return Word(bra, tuple(steps), ket, pre, caps)
