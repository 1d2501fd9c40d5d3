"""Root data for gl(m|n), spo(2m|2n) and spo(2m|2n+1) in the lattice L_{m,n}.

Weights carry ``m`` delta-coordinates and ``n`` epsilon-coordinates with the
indefinite form ``(d_i, d_j) = delta_ij``, ``(e_a, e_b) = -delta_ab``.

Positive systems come from a chain ordering of the basis vectors: every basis
vector gets a distinct positive height, decreasing along the chain, and a root
is positive when its height is.  The chains interleave epsilons and deltas so
that the isotropic simple roots ``+-(e_a - d_a)`` form the set S:

* gl(m|n):  e1 > d1 > e2 > d2 > ... then the leftovers;
* spo:      e1 > d1 > d2 > e2 > e3 > d3 > d4 > e4 > ... then the leftovers.
"""

from __future__ import annotations

import itertools
import math
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

KINDS = ("gl", "spo_even", "spo_odd")
WEYL_LIMIT = 200_000


@dataclass(frozen=True)
class Weight:
    """Vector in L_{m,n} (x) Q."""

    delta: tuple
    eps: tuple

    def __post_init__(self):
        object.__setattr__(self, "delta", tuple(Fraction(x) for x in self.delta))
        object.__setattr__(self, "eps", tuple(Fraction(x) for x in self.eps))

    @classmethod
    def zero(cls, m: int, n: int) -> "Weight":
        return cls((0,) * m, (0,) * n)

    @classmethod
    def basis(cls, m: int, n: int, which: str, i: int) -> "Weight":
        """``which`` is 'd' or 'e'; ``i`` is 1-based."""
        d, e = [0] * m, [0] * n
        (d if which == "d" else e)[i - 1] = 1
        return cls(d, e)

    @property
    def m(self) -> int:
        return len(self.delta)

    @property
    def n(self) -> int:
        return len(self.eps)

    def _check(self, other: "Weight"):
        if (self.m, self.n) != (other.m, other.n):
            raise ValueError("weights live in different lattices")

    def __add__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(tuple(a + b for a, b in zip(self.delta, other.delta)),
                      tuple(a + b for a, b in zip(self.eps, other.eps)))

    def __sub__(self, other: "Weight") -> "Weight":
        return self + (-other)

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.delta), tuple(-a for a in self.eps))

    def __mul__(self, c) -> "Weight":
        c = Fraction(c)
        return Weight(tuple(c * a for a in self.delta), tuple(c * a for a in self.eps))

    __rmul__ = __mul__

    def coords(self) -> tuple:
        return self.delta + self.eps

    def euclid(self, other: "Weight") -> Fraction:
        self._check(other)
        return sum((a * b for a, b in zip(self.coords(), other.coords())), Fraction(0))

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self.coords())

    def __str__(self):
        parts = []
        for name, cs in (("d", self.delta), ("e", self.eps)):
            for i, c in enumerate(cs, 1):
                if c:
                    parts.append(f"{c}*{name}{i}")
        return " + ".join(parts) if parts else "0"


def bilinear(x: Weight, y: Weight) -> Fraction:
    """Indefinite form: delta-products minus epsilon-products."""
    x._check(y)
    return (sum((a * b for a, b in zip(x.delta, y.delta)), Fraction(0))
            - sum((a * b for a, b in zip(x.eps, y.eps)), Fraction(0)))


def norm(x: Weight) -> Fraction:
    return bilinear(x, x)


@dataclass(frozen=True)
class WeylElement:
    """Signed permutation of delta-coordinates and of epsilon-coordinates.

    The image of ``x`` has delta-coordinate ``i`` equal to
    ``dsign[i] * x.delta[dperm[i]]`` (and likewise for epsilon).
    """

    dperm: tuple
    dsign: tuple
    eperm: tuple
    esign: tuple

    @property
    def sign(self) -> int:
        return (_perm_sign(self.dperm) * math.prod(self.dsign)
                * _perm_sign(self.eperm) * math.prod(self.esign))

    def __call__(self, x: Weight) -> Weight:
        return Weight(tuple(s * x.delta[p] for p, s in zip(self.dperm, self.dsign)),
                      tuple(s * x.eps[p] for p, s in zip(self.eperm, self.esign)))

    def is_identity(self) -> bool:
        return (self.dperm == tuple(range(len(self.dperm))) and self.eperm == tuple(range(len(self.eperm)))
                and all(s == 1 for s in self.dsign + self.esign))


def _perm_sign(p: Sequence[int]) -> int:
    sign, seen = 1, [False] * len(p)
    for i in range(len(p)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = p[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


# Weyl group types of a single factor: 'A' (permutations), 'BC' (all signed
# permutations), 'D' (even number of sign changes).


def _factor_elements(kind: str, r: int) -> list[tuple[tuple, tuple]]:
    out = []
    for perm in itertools.permutations(range(r)):
        if kind == "A":
            out.append((perm, (1,) * r))
            continue
        for signs in itertools.product((1, -1), repeat=r):
            if kind == "D" and signs.count(-1) % 2:
                continue
            out.append((perm, signs))
    return out


def _factor_order(kind: str, r: int) -> int:
    if kind == "A":
        return math.factorial(r)
    if kind == "BC":
        return 2 ** r * math.factorial(r)
    return math.factorial(r) * 2 ** max(r - 1, 0)


@dataclass(frozen=True)
class SuperRootSystem:
    kind: str
    m: int
    n: int
    even_pos: tuple
    odd_pos: tuple
    isotropic: tuple
    rho0: Weight
    rho1: Weight
    rho: Weight
    delta_type: str
    eps_type: str
    sharp: str  # 'delta' or 'eps': which factor's Weyl group is W#
    chain: tuple = field(default=())

    @property
    def name(self) -> str:
        if self.kind == "gl":
            return f"gl({self.m}|{self.n})"
        if self.kind == "spo_even":
            return f"spo({2 * self.m}|{2 * self.n})"
        return f"spo({2 * self.m}|{2 * self.n + 1})"

    @property
    def odd_nonisotropic(self) -> tuple:
        return tuple(a for a in self.odd_pos if a not in self.isotropic)

    @property
    def weyl_order(self) -> int:
        return _factor_order(self.delta_type, self.m) * _factor_order(self.eps_type, self.n)

    @property
    def sharp_order(self) -> int:
        if self.sharp == "delta":
            return _factor_order(self.delta_type, self.m)
        return _factor_order(self.eps_type, self.n)

    def zero(self) -> Weight:
        return Weight.zero(self.m, self.n)

    def weight(self, delta: Iterable = (), eps: Iterable = ()) -> Weight:
        d, e = list(delta), list(eps)
        d += [0] * (self.m - len(d))
        e += [0] * (self.n - len(e))
        if len(d) != self.m or len(e) != self.n:
            raise ValueError(f"{self.name} weights have {self.m} delta and {self.n} epsilon coordinates")
        return Weight(d, e)

    def __repr__(self):
        return f"SuperRootSystem({self.name})"


def _chain(kind: str, m: int, n: int) -> list[tuple[str, int]]:
    k = min(m, n)
    out = []
    for a in range(1, k + 1):
        if kind == "gl" or a % 2:
            out += [("e", a), ("d", a)]
        else:
            out += [("d", a), ("e", a)]
    out += [("d", i) for i in range(k + 1, m + 1)]
    out += [("e", a) for a in range(k + 1, n + 1)]
    return out


def _all_roots(kind: str, m: int, n: int) -> tuple[list[Weight], list[Weight]]:
    def v(terms):
        w = Weight.zero(m, n)
        for c, which, i in terms:
            w = w + c * Weight.basis(m, n, which, i)
        return w

    even, odd = [], []
    if kind == "gl":
        even += [v([(1, "d", i), (-1, "d", j)]) for i in range(1, m + 1) for j in range(1, m + 1) if i != j]
        even += [v([(1, "e", a), (-1, "e", b)]) for a in range(1, n + 1) for b in range(1, n + 1) if a != b]
        for i in range(1, m + 1):
            for a in range(1, n + 1):
                odd += [v([(1, "d", i), (-1, "e", a)]), v([(-1, "d", i), (1, "e", a)])]
        return even, odd
    signs = ((1, 1), (1, -1), (-1, 1), (-1, -1))
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            even += [v([(s, "d", i), (t, "d", j)]) for s, t in signs]
        even += [v([(2, "d", i)]), v([(-2, "d", i)])]
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            even += [v([(s, "e", a), (t, "e", b)]) for s, t in signs]
    for i in range(1, m + 1):
        for a in range(1, n + 1):
            odd += [v([(s, "d", i), (t, "e", a)]) for s, t in signs]
    if kind == "spo_odd":
        even += [v([(s, "e", a)]) for a in range(1, n + 1) for s in (1, -1)]
        odd += [v([(s, "d", i)]) for i in range(1, m + 1) for s in (1, -1)]
    return even, odd


_KIND_RE = re.compile(r"^\s*(gl|spo)\s*\(\s*(\d+)\s*\|\s*(\d+)\s*\)\s*$")


def parse_kind(text: str) -> tuple[str, int, int]:
    """'gl(2|1)' -> ('gl', 2, 1); 'spo(4|3)' -> ('spo_odd', 2, 1)."""
    mt = _KIND_RE.match(text)
    if not mt:
        raise ValueError(f"cannot parse Lie superalgebra {text!r}")
    name, a, b = mt.group(1), int(mt.group(2)), int(mt.group(3))
    if name == "gl":
        return "gl", a, b
    if a % 2:
        raise ValueError("spo(2m|r) needs an even first entry")
    return ("spo_odd" if b % 2 else "spo_even"), a // 2, b // 2


def kind_from_r(kind: str, m: int, r: int) -> tuple[str, int, int]:
    """Map the (kind, m, r) convention of A(mr) to (kind, m, n)."""
    if kind == "gl":
        return "gl", m, r
    if kind == "spo":
        return ("spo_odd" if r % 2 else "spo_even"), m, r // 2
    if kind in KINDS:
        return kind, m, r
    raise ValueError(f"unsupported kind {kind!r}")


def build_root_system(kind: str, m: int, n: int) -> SuperRootSystem:
    """Root data for ``kind`` in {'gl', 'spo_even', 'spo_odd'} (or a name like 'spo(4|2)')."""
    if "(" in kind:
        kind, m, n = parse_kind(kind)
    if kind not in KINDS:
        raise ValueError(f"unsupported kind {kind!r}")
    if m < 0 or n < 0 or (m == 0 and n == 0):
        raise ValueError("need m, n >= 0, not both zero")
    chain = _chain(kind, m, n)
    height = {c: len(chain) - pos for pos, c in enumerate(chain)}

    def h(w: Weight) -> Fraction:
        return (sum((c * height[("d", i)] for i, c in enumerate(w.delta, 1)), Fraction(0))
                + sum((c * height[("e", a)] for a, c in enumerate(w.eps, 1)), Fraction(0)))

    even, odd = _all_roots(kind, m, n)
    even_pos = tuple(sorted((r for r in even if h(r) > 0), key=lambda r: (-h(r), r.coords())))
    odd_pos = tuple(sorted((r for r in odd if h(r) > 0), key=lambda r: (-h(r), r.coords())))
    iso = []
    for a in range(1, min(m, n) + 1):
        r = Weight.basis(m, n, "e", a) - Weight.basis(m, n, "d", a)
        iso.append(r if h(r) > 0 else -r)
    half = Fraction(1, 2)
    rho0 = sum(even_pos, Weight.zero(m, n)) * half
    rho1 = sum(odd_pos, Weight.zero(m, n)) * half
    if kind == "gl":
        dt, et = "A", "A"
    elif kind == "spo_even":
        dt, et = "BC", "D"
    else:
        dt, et = "BC", "BC"
    # W# belongs to the larger even factor; for spo(2m|2m) that is sp(2m)
    larger_delta = m >= n if kind == "spo_even" else m > n
    return SuperRootSystem(kind, m, n, even_pos, odd_pos, tuple(iso), rho0, rho1, rho0 - rho1,
                           dt, et, "delta" if larger_delta else "eps", tuple(chain))


def closed_odd_count(kind: str, m: int, n: int) -> int:
    if kind == "gl":
        return m * n
    if kind == "spo_even":
        return 2 * m * n
    return m * (2 * n + 1)


# -- Weyl groups ------------------------------------------------------------


def weyl_elements(sys: SuperRootSystem, which: str = "full") -> Iterator[WeylElement]:
    """Elements of W (``which='full'``) or of W# (``which='sharp'``), each once."""
    size = sys.weyl_order if which == "full" else sys.sharp_order
    if size > WEYL_LIMIT:
        raise ValueError(f"Weyl group of order {size} exceeds the limit {WEYL_LIMIT}")
    idm = (tuple(range(sys.m)), (1,) * sys.m)
    idn = (tuple(range(sys.n)), (1,) * sys.n)
    if which == "full":
        ds, es = _factor_elements(sys.delta_type, sys.m), _factor_elements(sys.eps_type, sys.n)
    elif which == "sharp":
        ds = _factor_elements(sys.delta_type, sys.m) if sys.sharp == "delta" else [idm]
        es = _factor_elements(sys.eps_type, sys.n) if sys.sharp == "eps" else [idn]
    else:
        raise ValueError("which must be 'full' or 'sharp'")
    for (dp, dsg), (ep, esg) in itertools.product(ds, es):
        yield WeylElement(dp, dsg, ep, esg)


def reflection(alpha: Weight):
    """r_alpha as a function on weights (alpha must be non-isotropic)."""
    a2 = bilinear(alpha, alpha)
    if not a2:
        raise ValueError("isotropic root has no reflection")
    return lambda x: x - (2 * bilinear(x, alpha) / a2) * alpha


# -- dominance and dimensions -----------------------------------------------


def _factor_dominant(kind: str, xs: Sequence[Fraction]) -> bool:
    if any(xs[i] < xs[i + 1] for i in range(len(xs) - 1)):
        return False
    if not xs:
        return True
    if kind == "BC":
        return xs[-1] >= 0
    if kind == "D":
        return len(xs) < 2 or xs[-2] >= abs(xs[-1])
    return True


def is_dominant(sys: SuperRootSystem, lam: Weight) -> bool:
    """Dominant integral for the even subalgebra."""
    return (lam.is_integral() and _factor_dominant(sys.delta_type, lam.delta)
            and _factor_dominant(sys.eps_type, lam.eps))


def in_root_lattice(sys: SuperRootSystem, lam: Weight) -> bool:
    if not lam.is_integral():
        return False
    s = sum(lam.coords())
    if sys.kind == "gl":
        return s == 0
    if sys.kind == "spo_even":
        return s % 2 == 0
    return True


def dim_irrep(sys: SuperRootSystem, lam: Weight) -> int:
    """Weyl dimension formula for the even subalgebra, factor by factor."""
    if not is_dominant(sys, lam):
        raise ValueError(f"{lam} is not dominant integral for the even part of {sys.name}")
    num, den = Fraction(1), Fraction(1)
    shifted = lam + sys.rho0
    for alpha in sys.even_pos:
        num *= shifted.euclid(alpha)
        den *= sys.rho0.euclid(alpha)
    d = num / den
    assert d.denominator == 1 and d > 0
    return int(d)


def enumerate_dominant(sys: SuperRootSystem, norm_bound) -> list[Weight]:
    """Dominant weights of the root lattice with Euclidean |Lambda + rho0|^2 <= bound.

    The Euclidean norm is used because the lattice form is indefinite.
    Sorted by that norm, then lexicographically.
    """
    bound = Fraction(norm_bound)
    if bound < 0:
        return []
    r0 = sys.rho0.coords()
    radius = math.isqrt(int(bound)) + 1
    ranges = [range(math.floor(-c - radius), math.ceil(-c + radius) + 1) for c in r0]
    out = []
    for xs in itertools.product(*ranges):
        lam = Weight(xs[:sys.m], xs[sys.m:])
        shifted = lam + sys.rho0
        if shifted.euclid(shifted) > bound:
            continue
        if in_root_lattice(sys, lam) and is_dominant(sys, lam):
            out.append(lam)
    out.sort(key=lambda w: ((w + sys.rho0).euclid(w + sys.rho0), w.coords()))
    return out


# -- index sets -------------------------------------------------------------


def isotropic_leading(ell: int, convention: str = "proof_corrected") -> Fraction:
    """Smallest q-exponent carried by the partial theta attached to coefficient ``ell``."""
    idx = -ell - 1 if convention == "proof_corrected" else ell
    if idx >= 0:
        return Fraction((2 * idx + 3) ** 2, 8)
    return Fraction((2 * idx + 1) ** 2, 8)


def _solve_integer_system(cols: list[Weight], target: Weight):
    """Gaussian elimination on the coordinate system sum x_k cols[k] = target.

    Returns (pivot_rows, pivot_cols, free_cols) with pivot_rows in reduced
    form: x_pivot = rhs - sum(coef * x_free).  Returns None if inconsistent.
    """
    ncols = len(cols)
    rows = []
    for i in range(len(target.coords())):
        rows.append([c.coords()[i] for c in cols] + [target.coords()[i]])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    for i in range(r, len(rows)):
        if rows[i][-1] != 0:
            return None
    free = [c for c in range(ncols) if c not in pivots]
    return rows[:r], pivots, free


def enumerate_index_set(sys: SuperRootSystem, lam: Weight, order_bound,
                        convention: str = "proof_corrected") -> list[tuple[tuple, tuple]]:
    """Integer solutions of sum n_a a + sum l_b b = lam below an exponent bound.

    ``a`` runs over the positive odd non-isotropic roots, ``b`` over S.  A
    tuple is kept when sum (n_a + 1/2)^2 / 2 plus the leading exponents of the
    partial thetas is strictly below ``order_bound`` (a rational q-power).
    """
    bound = Fraction(order_bound)
    alphas = list(sys.odd_nonisotropic)
    betas = list(sys.isotropic)
    cols = alphas + betas
    k_a = len(alphas)
    if not cols:
        return [((), ())] if all(c == 0 for c in lam.coords()) and bound > 0 else []
    sol = _solve_integer_system(cols, lam)
    if sol is None:
        return []
    rows, pivots, free = sol

    def cost(k: int, x: int) -> Fraction:
        return Fraction((2 * x + 1) ** 2, 8) if k < k_a else isotropic_leading(x, convention)

    # every variable contributes at least 1/8; bound each free variable alone
    slack = bound - Fraction(len(cols), 8)
    if slack < 0:
        return []
    rad = math.isqrt(int(8 * (slack + Fraction(1, 8)))) + 2
    out = []
    for fv in itertools.product(range(-rad, rad + 1), repeat=len(free)):
        x = [None] * len(cols)
        for c, val in zip(free, fv):
            x[c] = val
        ok = True
        for row, c in zip(rows, pivots):
            val = row[-1] - sum((row[f] * x[f] for f in free), Fraction(0))
            if val.denominator != 1:
                ok = False
                break
            x[c] = int(val)
        if not ok:
            continue
        if sum(cost(k, v) for k, v in enumerate(x)) < bound:
            out.append((tuple(x[:k_a]), tuple(x[k_a:])))
    out.sort()
    return out


# -- denominator identity ---------------------------------------------------


def _exp_at(w: Weight, point) -> Fraction:
    """e^w at a point assigning values to e^{d_i/2} and e^{e_a/2}."""
    xd, xe = point
    val = Fraction(1)
    for c, x in zip(w.delta, xd):
        val *= Fraction(x) ** int(2 * c)
    for c, x in zip(w.eps, xe):
        val *= Fraction(x) ** int(2 * c)
    return val


def denominator_identity_eval(sys: SuperRootSystem, point) -> tuple[Fraction, Fraction]:
    """Both sides of the super denominator identity at an exact point.

    ``point`` is ``(delta_values, eps_values)`` giving e^{d_i/2} and e^{e_a/2}.
    """
    xd, xe = point
    if len(xd) != sys.m or len(xe) != sys.n:
        raise ValueError("point has the wrong number of coordinates")
    if any(Fraction(x) == 0 for x in list(xd) + list(xe)):
        raise ValueError("point coordinates must be nonzero")
    num = _exp_at(sys.rho0, point)
    for a in sys.even_pos:
        num *= 1 - _exp_at(-a, point)
    den = _exp_at(sys.rho1, point)
    for a in sys.odd_pos:
        den *= 1 + _exp_at(-a, point)
    if den == 0:
        raise ValueError("pole: 1 + e^{-alpha} vanishes for an odd root")
    lhs = num / den
    rhs = Fraction(0)
    for w in weyl_elements(sys, "sharp"):
        d = Fraction(1)
        for b in sys.isotropic:
            d *= 1 + _exp_at(-w(b), point)
        if d == 0:
            raise ValueError("pole in the Weyl-group sum")
        rhs += w.sign * _exp_at(w(sys.rho), point) / d
    return lhs, rhs


def random_point(sys: SuperRootSystem, rng: random.Random, max_tries: int = 1000):
    """Seeded pole-free point with small rational coordinates (|num|, den <= 7)."""
    for _ in range(max_tries):
        def draw():
            while True:
                p = rng.randint(-7, 7)
                if p:
                    return Fraction(p, rng.randint(1, 7))
        point = ([draw() for _ in range(sys.m)], [draw() for _ in range(sys.n)])
        try:
            denominator_identity_eval(sys, point)
        except (ValueError, ZeroDivisionError):
            continue
        return point
    raise RuntimeError("could not find a pole-free point")


def sample_points(sys: SuperRootSystem, count: int, seed: int = 42) -> list:
    rng = random.Random(seed)
    return [random_point(sys, rng) for _ in range(count)]
