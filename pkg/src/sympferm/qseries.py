"""Truncated q-series with exact rational coefficients.

Exponents are stored as integers in units of 1/24, so ``q**(1/24)`` has
exponent 1 and ``q`` has exponent 24.  Every series carries an exclusive
truncation: coefficients at exponents ``>= trunc`` are unknown and are never
stored.  Arithmetic propagates the truncation pessimistically.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Mapping

DEN = 24


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.replace("−", "-"))
    return Fraction(x)


def fraction_str(x: Fraction) -> str:
    """Serialize as ``"p/q"`` (denominator always written)."""
    x = as_fraction(x)
    return f"{x.numerator}/{x.denominator}"


def weight_to_exp(w) -> int:
    """Convert a q-power (rational, in units of q) to the internal 1/24 units."""
    e = as_fraction(w) * DEN
    if e.denominator != 1:
        raise ValueError(f"q-exponent {w} is not a multiple of 1/{DEN}")
    return int(e)


class QSeries:
    """Sparse truncated series ``sum c_e q^(e/24) + O(q^(trunc/24))``.

    Instances are treated as immutable values.
    """

    __slots__ = ("_terms", "trunc")

    def __init__(self, terms: Mapping[int, object] | Iterable = (), trunc: int = 0):
        if isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = terms
        clean: dict[int, Fraction] = {}
        for e, c in items:
            e = int(e)
            if e >= trunc:
                continue
            c = as_fraction(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
                if not clean[e]:
                    del clean[e]
        self._terms = dict(sorted(clean.items()))
        self.trunc = int(trunc)

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, trunc: int) -> "QSeries":
        return cls({}, trunc)

    @classmethod
    def one(cls, trunc: int) -> "QSeries":
        return cls({0: 1}, trunc)

    @classmethod
    def monomial(cls, exp: int, coeff=1, trunc: int = 0) -> "QSeries":
        return cls({exp: coeff}, trunc)

    @classmethod
    def from_coefficients(cls, coeffs: Iterable, trunc: int, offset: int = 0, step: int = DEN) -> "QSeries":
        """Build ``q^(offset/24) * sum_k coeffs[k] q^(k*step/24)``."""
        return cls({offset + k * step: c for k, c in enumerate(coeffs)}, trunc)

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def valuation(self) -> int:
        """Leading exponent, or the truncation for a series that is zero to precision."""
        if not self._terms:
            return self.trunc
        return next(iter(self._terms))

    @property
    def leading_coefficient(self) -> Fraction:
        if not self._terms:
            raise ValueError("series is zero to its truncation")
        return self._terms[self.valuation]

    def coefficient(self, exp: int) -> Fraction:
        if exp >= self.trunc:
            raise ValueError(f"exponent {exp} is at or above truncation {self.trunc}")
        return self._terms.get(exp, Fraction(0))

    __getitem__ = coefficient

    def coefficients(self, offset: int = 0, step: int = DEN) -> list[Fraction]:
        """Coefficients at ``offset, offset+step, ...`` below the truncation."""
        out = []
        e = offset
        while e < self.trunc:
            out.append(self._terms.get(e, Fraction(0)))
            e += step
        return out

    def exponent_residues(self) -> set[int]:
        return {e % DEN for e in self._terms}

    # -- arithmetic -------------------------------------------------------

    def truncate(self, trunc: int) -> "QSeries":
        return QSeries(self._terms, min(trunc, self.trunc))

    def shift(self, exp: int) -> "QSeries":
        """Multiply by ``q^(exp/24)``."""
        return QSeries({e + exp: c for e, c in self._terms.items()}, self.trunc + exp)

    def substitute(self, k: int) -> "QSeries":
        """Replace q by q^k (k >= 1)."""
        if k < 1:
            raise ValueError("substitution power must be positive")
        return QSeries({e * k: c for e, c in self._terms.items()}, self.trunc * k)

    def scale(self, c) -> "QSeries":
        c = as_fraction(c)
        return QSeries({e: c * v for e, v in self._terms.items()}, self.trunc)

    def __neg__(self):
        return self.scale(-1)

    def __add__(self, other):
        if not isinstance(other, QSeries):
            other = QSeries({0: other}, self.trunc)
        trunc = min(self.trunc, other.trunc)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return QSeries(out, trunc)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, QSeries):
            other = QSeries({0: other}, self.trunc)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return self.scale(other)
        return qs_mul(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, other):
        if not isinstance(other, QSeries):
            return self.scale(1 / as_fraction(other))
        return qs_mul(self, qs_invert(other))

    def __pow__(self, k: int):
        if k < 0:
            return qs_invert(self) ** (-k)
        if k == 0:
            # exact unit, carried at the relative precision of the base
            return QSeries.one(self.trunc - self.valuation)
        base = self
        result = None
        while k:
            if k & 1:
                result = base if result is None else qs_mul(result, base)
            k >>= 1
            if k:
                base = qs_mul(base, base)
        return result

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.trunc == other.trunc and self._terms == other._terms

    def __hash__(self):
        return hash((self.trunc, tuple(self._terms.items())))

    def agrees_with(self, other: "QSeries") -> bool:
        """Equality below the common truncation."""
        return self.first_mismatch(other) is None

    def first_mismatch(self, other: "QSeries") -> int | None:
        """Smallest exponent below the common truncation where coefficients differ."""
        t = min(self.trunc, other.trunc)
        for e in sorted(set(self._terms) | set(other._terms)):
            if e >= t:
                break
            if self._terms.get(e, 0) != other._terms.get(e, 0):
                return e
        return None

    def __repr__(self):
        if not self._terms:
            return f"O(q^{Fraction(self.trunc, DEN)})"
        parts = [f"{c}*q^{Fraction(e, DEN)}" for e, c in self._terms.items()]
        return " + ".join(parts) + f" + O(q^{Fraction(self.trunc, DEN)})"

    # -- serialization ----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "den": DEN,
            "trunc": self.trunc,
            "terms": [[e, fraction_str(c)] for e, c in self._terms.items()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "QSeries":
        den = d.get("den", DEN)
        if den != DEN:
            raise ValueError(f"unsupported exponent denominator {den}")
        return cls({int(e): as_fraction(c) for e, c in d["terms"]}, int(d["trunc"]))

    @classmethod
    def from_json(cls, s: str) -> "QSeries":
        return cls.from_dict(json.loads(s))

    def to_csv_rows(self) -> list[tuple[int, str]]:
        return [(e, fraction_str(c)) for e, c in self._terms.items()]


def qs_mul(a: QSeries, b: QSeries) -> QSeries:
    """Product, known up to ``min(a.trunc + val(b), b.trunc + val(a))``."""
    trunc = min(a.trunc + b.valuation, b.trunc + a.valuation)
    out: dict[int, Fraction] = {}
    bt = list(b._terms.items())
    for ea, ca in a._terms.items():
        limit = trunc - ea
        for eb, cb in bt:
            if eb >= limit:
                break
            e = ea + eb
            out[e] = out.get(e, Fraction(0)) + ca * cb
    return QSeries(out, trunc)


def qs_invert(a: QSeries) -> QSeries:
    """Multiplicative inverse of ``c q^v (1 + ...)``; truncation becomes ``trunc - 2v``."""
    if a.is_zero():
        raise ZeroDivisionError("cannot invert a series that is zero to its truncation")
    v = a.valuation
    c0 = a.leading_coefficient
    prec = a.trunc - v
    rest = [(e - v, c) for e, c in a._terms.items() if e != v]
    inv_c0 = 1 / c0
    b: dict[int, Fraction] = {0: inv_c0}
    # relative offsets need not be multiples of 24, so run over every 1/24 step
    for e in range(1, prec):
        s = Fraction(0)
        for d, c in rest:
            if d > e:
                break
            bv = b.get(e - d)
            if bv:
                s += c * bv
        if s:
            b[e] = -s * inv_c0
    return QSeries({e - v: c for e, c in b.items()}, prec - v)


# -- dense integer helpers for closed-form products -------------------------


def _dense_times_binomial(poly: list[int], step: int, sign: int) -> None:
    """In place: poly *= (1 + sign*q^step)."""
    for i in range(len(poly) - 1, step - 1, -1):
        poly[i] += sign * poly[i - step]


def _dense_divide_one_minus(poly: list[int], step: int) -> None:
    """In place: poly /= (1 - q^step)."""
    for i in range(step, len(poly)):
        poly[i] += poly[i - step]


def _order_for(trunc: int, offset: int) -> int:
    """Number of integer powers q^0..q^(N-1) needed below ``trunc`` after shifting by ``offset``."""
    span = trunc - offset
    if span <= 0:
        return 0
    return -(-span // DEN)


def euler_product(trunc: int) -> QSeries:
    """prod_{n>=1} (1 - q^n) by direct expansion (no prefactor)."""
    N = _order_for(trunc, 0)
    poly = [0] * N
    if N:
        poly[0] = 1
    for n in range(1, N):
        _dense_times_binomial(poly, n, -1)
    return QSeries.from_coefficients(poly, trunc)


def eta(trunc: int) -> QSeries:
    """Dedekind eta ``q^(1/24) prod (1 - q^n)`` via Euler's pentagonal number theorem."""
    if trunc <= 0:
        raise ValueError("truncation must be positive")
    terms = {}
    k = 0
    while True:
        hit = False
        for kk in ((k, -k) if k else (0,)):
            e = 1 + DEN * (kk * (3 * kk - 1) // 2)
            if e < trunc:
                terms[e] = -1 if kk % 2 else 1
                hit = True
        if not hit and k > 0:
            break
        k += 1
    return QSeries(terms, trunc)


def eta_power(k: int, trunc: int) -> QSeries:
    """``eta(q)^k`` for any integer k, complete below ``trunc``."""
    N = _order_for(trunc, k)
    poly = [0] * N
    if N:
        poly[0] = 1
    for s in range(1, N):
        for _ in range(abs(k)):
            if k > 0:
                _dense_times_binomial(poly, s, -1)
            else:
                _dense_divide_one_minus(poly, s)
    return QSeries.from_coefficients(poly, trunc, offset=k)


def eta2(trunc: int) -> QSeries:
    """eta(q^2)."""
    return eta(-(-trunc // 2)).substitute(2).truncate(trunc)


def partial_theta(n: int, trunc: int) -> QSeries:
    """P_n(q) = sum_{m>=0} (-1)^m q^{(m - n - 1/2)^2 / 2}.

    In 1/24 units the exponent of the m-th term is ``3 (2m - 2n - 1)^2``.
    Terms with equal exponents (m and 2n+1-m) cancel.
    """
    terms: dict[int, int] = {}
    m = 0
    while True:
        e = 3 * (2 * m - 2 * n - 1) ** 2
        if e < trunc:
            terms[e] = terms.get(e, 0) + (-1 if m % 2 else 1)
        elif m > n:
            break
        m += 1
    return QSeries(terms, trunc)


def partial_theta_leading_exponent(n: int) -> int:
    """Leading exponent of P_n after the pairwise cancellations."""
    if n >= 0:
        return 3 * (2 * n + 3) ** 2
    return 3 * (2 * n + 1) ** 2


def full_character(m: int, r: int, trunc: int) -> QSeries:
    """``q^(mr/12) prod_{j>=1} (1 + q^j)^(2mr)``, the character of A(mr)."""
    if m < 1 or r < 1:
        raise ValueError("parameters must be positive")
    offset = 2 * m * r
    N = _order_for(trunc, offset)
    poly = [0] * N
    if N:
        poly[0] = 1
    for j in range(1, N):
        for _ in range(2 * m * r):
            _dense_times_binomial(poly, j, 1)
    return QSeries.from_coefficients(poly, trunc, offset=offset)


def free_wtype(weights: Iterable[int], trunc: int) -> QSeries:
    """Character of a freely generated algebra with generators of the given weights (no prefactor)."""
    weights = list(weights)
    if any(w < 1 for w in weights):
        raise ValueError("generator weights must be positive")
    N = _order_for(trunc, 0)
    poly = [0] * N
    if N:
        poly[0] = 1
    for w in weights:
        for s in range(w, N):
            _dense_divide_one_minus(poly, s)
    return QSeries.from_coefficients(poly, trunc)


def sp_orbifold(n: int, trunc: int) -> QSeries:
    """``q^(n/12) prod_{i=1}^n prod_{k>=0} (1 - q^(2i+k))^(-1)``."""
    if n < 1:
        raise ValueError("n must be positive")
    offset = 2 * n
    return free_wtype(range(2, 2 * n + 1, 2), trunc - offset).shift(offset)


def named_product(kind: str, *args, trunc: int) -> QSeries:
    """Dispatch by name: ``full_character(m, r)``, ``sp_orbifold(n)``, ``free_wtype(weights)``."""
    if kind == "full_character":
        return full_character(*args, trunc=trunc)
    if kind == "sp_orbifold":
        return sp_orbifold(*args, trunc=trunc)
    if kind == "free_wtype":
        return free_wtype(*args, trunc=trunc)
    raise ValueError(f"unknown named product {kind!r}")
