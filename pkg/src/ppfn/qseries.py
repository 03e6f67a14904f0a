"""Exact Laurent series in q^(1/2) and symbolic products of (1 - q^(k/2)).

Every exponent is stored doubled: the integer ``d`` stands for ``q^(d/2)``.
A :class:`HalfSeries` is either exact (``cutoff is None``) or known only
up to and including ``q^(cutoff/2)``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping


class InsufficientPrecision(ValueError):
    """A comparison or lookup asked for terms beyond a series' cutoff."""


class NonExpandable(ValueError):
    """A product has a factor that cannot be expanded as a power series."""


def _min_cutoff(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class HalfSeries:
    """Sparse series ``sum c_d q^(d/2)`` with big-integer coefficients."""

    __slots__ = ("terms", "cutoff")

    def __init__(self, terms: Mapping[int, int] | None = None, cutoff: int | None = None):
        clean: dict[int, int] = {}
        if terms:
            for d, c in terms.items():
                if c and (cutoff is None or d <= cutoff):
                    clean[int(d)] = int(c)
        self.terms = clean
        self.cutoff = cutoff

    # constructors

    @classmethod
    def _raw(cls, terms: dict[int, int], cutoff: int | None) -> "HalfSeries":
        # terms already free of zeros and of exponents past the cutoff
        s = cls.__new__(cls)
        s.terms = terms
        s.cutoff = cutoff
        return s

    @classmethod
    def zero(cls, cutoff: int | None = None) -> "HalfSeries":
        return cls._raw({}, cutoff)

    @classmethod
    def one(cls, cutoff: int | None = None) -> "HalfSeries":
        return cls.monomial(0, 1, cutoff)

    @classmethod
    def monomial(cls, d: int, coeff: int = 1, cutoff: int | None = None) -> "HalfSeries":
        return cls({d: coeff}, cutoff)

    @classmethod
    def from_q_coeffs(cls, coeffs: Iterable[int], cutoff: int | None = None) -> "HalfSeries":
        """Build from integer-exponent coefficients ``[c_0, c_1, ...]``; ``cutoff`` is a q-exponent."""
        return cls({2 * i: c for i, c in enumerate(coeffs)}, None if cutoff is None else 2 * cutoff)

    # basic properties

    @property
    def truncated(self) -> bool:
        return self.cutoff is not None

    def is_zero(self) -> bool:
        return not self.terms

    def valuation_bound(self) -> int | None:
        """Lower bound on every exponent, known or not; ``None`` for the exact zero."""
        if self.terms:
            return min(self.terms)
        if self.cutoff is not None:
            return self.cutoff + 1
        return None

    def degree(self) -> int | None:
        return max(self.terms) if self.terms else None

    def coefficient(self, d: int) -> int:
        if self.cutoff is not None and d > self.cutoff:
            raise InsufficientPrecision(f"q^({d}/2) lies beyond cutoff {self.cutoff}")
        return self.terms.get(d, 0)

    def has_integer_exponents(self) -> bool:
        return all(d % 2 == 0 for d in self.terms)

    def q_coeffs(self, order: int) -> list[int]:
        """Integer-exponent coefficients ``c_0 .. c_order``; half-integer terms are an error."""
        if not self.has_integer_exponents():
            raise ValueError("series has half-integer exponents")
        return [self.coefficient(2 * i) for i in range(order + 1)]

    # arithmetic

    def truncate(self, cutoff: int | None) -> "HalfSeries":
        c = _min_cutoff(self.cutoff, cutoff)
        if c == self.cutoff:
            return self
        return HalfSeries._raw({d: v for d, v in self.terms.items() if d <= c}, c)

    def __add__(self, other: "HalfSeries | int") -> "HalfSeries":
        if isinstance(other, int):
            other = HalfSeries.monomial(0, other)
        cutoff = _min_cutoff(self.cutoff, other.cutoff)
        out = {d: v for d, v in self.terms.items() if cutoff is None or d <= cutoff}
        for d, v in other.terms.items():
            if cutoff is not None and d > cutoff:
                continue
            s = out.get(d, 0) + v
            if s:
                out[d] = s
            else:
                out.pop(d, None)
        return HalfSeries._raw(out, cutoff)

    __radd__ = __add__

    def __neg__(self) -> "HalfSeries":
        return HalfSeries._raw({d: -v for d, v in self.terms.items()}, self.cutoff)

    def __sub__(self, other: "HalfSeries | int") -> "HalfSeries":
        return self + (-other)

    def __rsub__(self, other: int) -> "HalfSeries":
        return (-self) + other

    def scale(self, c: int) -> "HalfSeries":
        if c == 0:
            return HalfSeries.zero(self.cutoff)
        return HalfSeries._raw({d: v * c for d, v in self.terms.items()}, self.cutoff)

    def shift(self, d: int) -> "HalfSeries":
        """Multiply by ``q^(d/2)``."""
        if d == 0:
            return self
        return HalfSeries._raw(
            {e + d: v for e, v in self.terms.items()},
            None if self.cutoff is None else self.cutoff + d,
        )

    def product_cutoff(self, other: "HalfSeries") -> int | None:
        va, vb = self.valuation_bound(), other.valuation_bound()
        if va is None or vb is None:
            return None  # exact zero annihilates
        c = None
        if self.cutoff is not None:
            c = self.cutoff + min(vb, 0)
        if other.cutoff is not None:
            c2 = other.cutoff + min(va, 0)
            c = c2 if c is None else min(c, c2)
        return c

    def __mul__(self, other: "HalfSeries | int") -> "HalfSeries":
        if isinstance(other, int):
            return self.scale(other)
        cutoff = self.product_cutoff(other)
        a, b = self.terms, other.terms
        if not a or not b:
            return HalfSeries._raw({}, cutoff)
        if len(a) < len(b):
            a, b = b, a
        out: dict[int, int] = {}
        for db, vb in b.items():
            for da, va in a.items():
                e = da + db
                if cutoff is not None and e > cutoff:
                    continue
                out[e] = out.get(e, 0) + va * vb
        return HalfSeries._raw({d: v for d, v in out.items() if v}, cutoff)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "HalfSeries":
        if n < 0:
            raise ValueError("negative powers are not supported")
        result = HalfSeries.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # comparison

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HalfSeries):
            return NotImplemented
        return self.terms == other.terms and self.cutoff == other.cutoff

    def __hash__(self):
        return hash((frozenset(self.terms.items()), self.cutoff))

    def agrees_with(self, other: "HalfSeries") -> bool:
        """Equal on every exponent both series know."""
        c = _min_cutoff(self.cutoff, other.cutoff)
        return self.truncate(c).terms == other.truncate(c).terms

    def first_mismatch(self, other: "HalfSeries", order: int | None = None) -> int | None:
        """Smallest doubled exponent ``<= order`` where the two differ, or ``None``."""
        c = _min_cutoff(self.cutoff, other.cutoff)
        c = _min_cutoff(c, order)
        keys = sorted(set(self.terms) | set(other.terms))
        for d in keys:
            if c is not None and d > c:
                break
            if self.terms.get(d, 0) != other.terms.get(d, 0):
                return d
        return None

    def __repr__(self) -> str:
        return f"HalfSeries({format_series(self)})"

    def __str__(self) -> str:
        return format_series(self)

    # serialization

    def to_json(self) -> dict:
        return {
            "cutoff": self.cutoff,
            "truncated": self.truncated,
            "terms": [[d, str(self.terms[d])] for d in sorted(self.terms)],
        }

    @classmethod
    def from_json(cls, doc: Mapping) -> "HalfSeries":
        return cls({int(d): int(c) for d, c in doc["terms"]}, doc.get("cutoff"))


def series_eq_to(a: HalfSeries, b: HalfSeries, order: int) -> bool:
    """Coefficientwise equality for doubled exponents ``d <= order``."""
    for s in (a, b):
        if s.cutoff is not None and s.cutoff < order:
            raise InsufficientPrecision(f"series known only to {s.cutoff}, need {order}")
    return a.first_mismatch(b, order) is None


def coefficient(a: HalfSeries, d: int) -> int:
    return a.coefficient(d)


def _exp_text(d: int) -> str:
    if d % 2 == 0:
        return str(d // 2)
    return "{" + f"{d}/2" + "}"


def format_series(s: HalfSeries) -> str:
    parts = []
    for d in sorted(s.terms):
        c = s.terms[d]
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if d == 0:
            body = str(mag)
        else:
            mono = "q" if d == 2 else f"q^{_exp_text(d)}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        parts.append((sign, body))
    if not parts:
        text = "0"
    else:
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
    if s.truncated:
        text += " + ..."
    return text


def expand_inverse_factor(k: int, cutoff: int) -> HalfSeries:
    """``1/(1 - q^(k/2))`` up to ``q^(cutoff/2)``."""
    if k <= 0:
        raise NonExpandable(f"1/(1 - q^({k}/2)) has no power-series expansion")
    return HalfSeries._raw({d: 1 for d in range(0, cutoff + 1, k)}, cutoff)


def _divisors(n: int) -> list[int]:
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


@dataclass(frozen=True)
class ProductForm:
    """``sign * q^(prefactor/2) * prod (1-q^(k/2))^numer[k] / prod (1-q^(k/2))^denom[k]``.

    Use :meth:`build` to normalize arbitrary integer factor exponents; the
    dataclass constructor expects canonical data.
    """

    sign: int = 1
    prefactor: int = 0
    numer: Mapping[int, int] = field(default_factory=dict)
    denom: Mapping[int, int] = field(default_factory=dict)
    zero: bool = False

    @classmethod
    def build(
        cls,
        numer: Iterable[int] = (),
        denom: Iterable[int] = (),
        prefactor: int = 0,
        sign: int = 1,
        zero: bool = False,
    ) -> "ProductForm":
        if zero:
            return cls.zero_form()
        num: Counter = Counter()
        den: Counter = Counter()
        for k in numer:
            if k == 0:
                return cls.zero_form()
            if k < 0:
                # 1 - q^{k/2} = -q^{k/2} (1 - q^{-k/2})
                sign, prefactor = -sign, prefactor + k
                k = -k
            num[k] += 1
        for k in denom:
            if k == 0:
                raise ZeroDivisionError("factor (1 - q^0) in a denominator")
            if k < 0:
                sign, prefactor = -sign, prefactor - k
                k = -k
            den[k] += 1
        return cls._cancelled(sign, prefactor, num, den)

    @classmethod
    def _cancelled(cls, sign: int, prefactor: int, num: Counter, den: Counter) -> "ProductForm":
        for k in list(num):
            common = min(num[k], den.get(k, 0))
            if common:
                num[k] -= common
                den[k] -= common
        num = {k: v for k, v in sorted(num.items()) if v}
        den = {k: v for k, v in sorted(den.items()) if v}
        return cls(sign, prefactor, num, den, False)

    @classmethod
    def zero_form(cls) -> "ProductForm":
        return cls(1, 0, {}, {}, True)

    @classmethod
    def one(cls) -> "ProductForm":
        return cls()

    @classmethod
    def monomial(cls, d: int, sign: int = 1) -> "ProductForm":
        return cls(sign, d, {}, {}, False)

    def __mul__(self, other: "ProductForm") -> "ProductForm":
        if self.zero or other.zero:
            return ProductForm.zero_form()
        return ProductForm._cancelled(
            self.sign * other.sign,
            self.prefactor + other.prefactor,
            Counter(self.numer) + Counter(other.numer),
            Counter(self.denom) + Counter(other.denom),
        )

    def inverse(self) -> "ProductForm":
        if self.zero:
            raise ZeroDivisionError("inverse of the zero product")
        return ProductForm(self.sign, -self.prefactor, dict(self.denom), dict(self.numer), False)

    def __truediv__(self, other: "ProductForm") -> "ProductForm":
        return self * other.inverse()

    def negate(self) -> "ProductForm":
        if self.zero:
            return self
        return ProductForm(-self.sign, self.prefactor, dict(self.numer), dict(self.denom), False)

    def shift(self, d: int) -> "ProductForm":
        if self.zero:
            return self
        return ProductForm(self.sign, self.prefactor + d, dict(self.numer), dict(self.denom), False)

    def cyclotomic_exponents(self) -> dict[int, int]:
        """Net multiplicity of each cyclotomic polynomial in q^(1/2)."""
        net: Counter = Counter()
        for k, m in self.numer.items():
            for d in _divisors(k):
                net[d] += m
        for k, m in self.denom.items():
            for d in _divisors(k):
                net[d] -= m
        return {d: v for d, v in sorted(net.items()) if v}

    def equals(self, other: "ProductForm") -> bool:
        """Exact equality as rational functions of q^(1/2)."""
        if self.zero or other.zero:
            return self.zero and other.zero
        # each (1-x^k) has leading coefficient -1 as a polynomial in x
        # but takes the value 1 at x=0, so sign and prefactor compare directly
        return (
            self.sign == other.sign
            and self.prefactor == other.prefactor
            and self.cyclotomic_exponents() == other.cyclotomic_exponents()
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ProductForm):
            return NotImplemented
        return self.equals(other)

    def __hash__(self):
        if self.zero:
            return hash("zero")
        return hash((self.sign, self.prefactor, tuple(self.cyclotomic_exponents().items())))

    def is_polynomial_form(self) -> bool:
        return not self.denom

    def expand(self, cutoff: int | None = None) -> HalfSeries:
        """Series expansion through ``q^(cutoff/2)``; exact when no denominator remains."""
        if self.zero:
            return HalfSeries.zero(None if not self.denom else cutoff)
        if any(k <= 0 for k in self.denom):
            raise NonExpandable("denominator factor with nonpositive exponent")
        if self.denom and cutoff is None:
            return self._exact_quotient()
        if self.denom:
            top = cutoff - self.prefactor
            if top < 0:
                return HalfSeries.zero(cutoff)
            poly = [0] * (top + 1)
            poly[0] = 1
            for k, m in self.numer.items():
                for _ in range(m):
                    for i in range(top, k - 1, -1):
                        poly[i] -= poly[i - k]
            for k, m in self.denom.items():
                for _ in range(m):
                    for i in range(k, top + 1):
                        poly[i] += poly[i - k]
            terms = {i + self.prefactor: self.sign * c for i, c in enumerate(poly) if c}
            return HalfSeries._raw(terms, cutoff)
        total = sum(k * m for k, m in self.numer.items())
        poly = [0] * (total + 1)
        poly[0] = 1
        deg = 0
        for k, m in self.numer.items():
            for _ in range(m):
                deg += k
                for i in range(deg, k - 1, -1):
                    poly[i] -= poly[i - k]
        terms = {i + self.prefactor: self.sign * c for i, c in enumerate(poly) if c}
        return HalfSeries(terms, cutoff)

    def _exact_quotient(self) -> HalfSeries:
        """Exact expansion when the denominator divides the numerator."""
        poly = [1]
        for k, m in self.numer.items():
            for _ in range(m):
                poly = poly + [0] * k
                for i in range(len(poly) - 1, k - 1, -1):
                    poly[i] -= poly[i - k]
        for k, m in self.denom.items():
            for _ in range(m):
                # solve poly = (1 - x^k) * out from the top down
                n = len(poly) - 1 - k
                if n < 0:
                    raise NonExpandable("not a polynomial; an expansion needs a cutoff")
                out = [0] * (n + 1)
                rem = list(poly)
                for i in range(n, -1, -1):
                    out[i] = -rem[i + k]
                    rem[i + k] = 0
                    rem[i] -= out[i]
                if any(rem):
                    raise NonExpandable("not a polynomial; an expansion needs a cutoff")
                poly = out
        terms = {i + self.prefactor: self.sign * c for i, c in enumerate(poly) if c}
        return HalfSeries(terms, None)

    def describe(self) -> str:
        if self.zero:
            return "0"

        def factors(m: Mapping[int, int]) -> str:
            out = []
            for k, e in m.items():
                f = "(1 - q)" if k == 2 else f"(1 - q^{_exp_text(k)})"
                out.append(f if e == 1 else f"{f}^{e}")
            return "*".join(out) or "1"

        head = ("-" if self.sign < 0 else "") + (f"q^{_exp_text(self.prefactor)}" if self.prefactor else "")
        body = factors(self.numer)
        if self.denom:
            den = factors(self.denom)
            single = len(self.denom) == 1 and next(iter(self.denom.values())) == 1
            body += " / " + (den if single else f"({den})")
        return (head + "*" + body) if head and head != "-" else head + body

    def to_json(self) -> dict:
        return {
            "zero": self.zero,
            "sign": self.sign,
            "prefactor": self.prefactor,
            "numer": [[k, m] for k, m in sorted(self.numer.items())],
            "denom": [[k, m] for k, m in sorted(self.denom.items())],
        }


def product_expand(f: ProductForm, cutoff: int | None) -> HalfSeries:
    return f.expand(cutoff)
