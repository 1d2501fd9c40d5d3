"""Fock-space model of the symplectic fermion vertex algebra A(nm).

Generators ``e^{i,j}`` and ``f^{i,j}`` (color ``i`` in 1..n, flavor ``j`` in
1..m) are odd, with OPE ``e(z) f(w) ~ (z-w)^-2``.  The induced mode
anticommutators are

    {e_(s), f_(t)} = s * delta_{s+t,0},   {f_(s), e_(t)} = -s * delta_{s+t,0},

and all other pairs anticommute.  A state is a finite linear combination of
ordered monomials ``g1_(p1) g2_(p2) ... |0>`` in creation modes (``p <= -1``).

Conventions
-----------
* A mode is the tuple ``(index, species, color, flavor)`` with species
  ``E = 0`` and ``F = 1``.  Monomials are tuples of modes strictly increasing
  in tuple order, so deep modes come first.
* ``state(d^k g) = k! * g_(-1-k)|0>``, so ``translate`` is exact.
* Weight of a monomial is ``-sum(indices)``; degree is the number of modes.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping

from . import linalg

E, F = 0, 1
SPECIES_NAMES = {E: "e", F: "f"}

Mode = tuple  # (index, species, color, flavor)
Monomial = tuple  # tuple of Modes, strictly increasing


class State:
    """Immutable linear combination of canonical monomials."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, object] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        out: dict[Monomial, Fraction] = {}
        for mono, c in items:
            c = Fraction(c)
            if not c:
                continue
            mono = tuple(mono)
            nv = out.get(mono, 0) + c
            if nv:
                out[mono] = nv
            else:
                out.pop(mono, None)
        self._terms = out

    @classmethod
    def _raw(cls, terms: dict) -> "State":
        s = cls.__new__(cls)
        s._terms = terms
        return s

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    def weights(self) -> set[int]:
        return {mono_weight(m) for m in self._terms}

    @property
    def weight(self) -> int:
        """Weight of a homogeneous state (raises on mixed weights)."""
        ws = self.weights()
        if len(ws) != 1:
            raise ValueError(f"state is not weight-homogeneous: weights {sorted(ws)}")
        return ws.pop()

    def max_weight(self) -> int:
        return max((mono_weight(m) for m in self._terms), default=0)

    def degrees(self) -> set[int]:
        return {len(m) for m in self._terms}

    def component(self, *, weight: int | None = None, degree: int | None = None) -> "State":
        return State._raw({
            m: c for m, c in self._terms.items()
            if (weight is None or mono_weight(m) == weight) and (degree is None or len(m) == degree)
        })

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "State") -> "State":
        out = dict(self._terms)
        for m, c in other._terms.items():
            nv = out.get(m, 0) + c
            if nv:
                out[m] = nv
            else:
                out.pop(m, None)
        return State._raw(out)

    def __sub__(self, other: "State") -> "State":
        return self + (-other)

    def __neg__(self) -> "State":
        return State._raw({m: -c for m, c in self._terms.items()})

    def __mul__(self, c) -> "State":
        c = Fraction(c)
        if not c:
            return State()
        return State._raw({m: c * v for m, v in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, c) -> "State":
        return self * (1 / Fraction(c))

    def __eq__(self, other):
        if not isinstance(other, State):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        return f"State({format_state(self)!r})"

    def __str__(self):
        return format_state(self)


# -- monomial primitives ----------------------------------------------------


def mono_weight(mono: Monomial) -> int:
    return -sum(md[0] for md in mono)


def _canon(modes: list) -> tuple[int, Monomial] | None:
    """Sort a product of odd modes; return (sign, monomial) or None if a mode repeats."""
    modes = list(modes)
    sign = 1
    # insertion sort, counting transpositions
    for i in range(1, len(modes)):
        j = i
        while j > 0 and modes[j - 1] > modes[j]:
            modes[j - 1], modes[j] = modes[j], modes[j - 1]
            sign = -sign
            j -= 1
        if j > 0 and modes[j - 1] == modes[j]:
            return None
    for i in range(1, len(modes)):
        if modes[i - 1] == modes[i]:
            return None
    return sign, tuple(modes)


def _insert(mode: Mode, mono: Monomial) -> tuple[int, Monomial] | None:
    """Place a creation mode to the left of ``mono`` and reorder."""
    pos = 0
    for md in mono:
        if md == mode:
            return None
        if md < mode:
            pos += 1
        else:
            break
    sign = -1 if pos % 2 else 1
    return sign, mono[:pos] + (mode,) + mono[pos:]


def anticommutator(a: Mode, b: Mode) -> int:
    """Scalar value of {a, b} for two generator modes."""
    s, sa, ca, fa = a
    t, sb, cb, fb = b
    if sa == sb or ca != cb or fa != fb or s + t != 0:
        return 0
    return s if sa == E else -s


def _annihilate(mode: Mode, mono: Monomial) -> dict:
    out = {}
    for i, md in enumerate(mono):
        v = anticommutator(mode, md)
        if v:
            rest = mono[:i] + mono[i + 1:]
            out[rest] = out.get(rest, 0) + (-v if i % 2 else v)
    return out


def _mode_on_mono(mode: Mode, mono: Monomial) -> dict:
    if mode[0] < 0:
        r = _insert(mode, mono)
        return {} if r is None else {r[1]: r[0]}
    return _annihilate(mode, mono)


def _accumulate(out: dict, items, scale) -> None:
    for m, c in items:
        nv = out.get(m, 0) + scale * c
        if nv:
            out[m] = nv
        else:
            out.pop(m, None)


def apply_mode(mode: Mode, s: State) -> State:
    """Act with a single generator mode on a state."""
    out: dict = {}
    for mono, c in s._terms.items():
        _accumulate(out, _mode_on_mono(tuple(mode), mono).items(), c)
    return State._raw(out)


# -- constructors -----------------------------------------------------------


def vacuum() -> State:
    return State._raw({(): Fraction(1)})


def mode(species: int | str, color: int, flavor: int, index: int) -> Mode:
    if isinstance(species, str):
        species = {"e": E, "f": F, "E": E, "F": F}[species]
    return (index, species, color, flavor)


def generator(species: int | str, color: int = 1, flavor: int = 1, deriv: int = 0) -> State:
    """The state of ``d^deriv g``, i.e. ``deriv! * g_(-1-deriv)|0>``."""
    return State._raw({(mode(species, color, flavor, -1 - deriv),): Fraction(math.factorial(deriv))})


def monomial_state(*modes: Mode, coeff=1) -> State:
    """``coeff * modes[0] modes[1] ... |0>`` in canonical form."""
    r = _canon(list(modes))
    if r is None:
        return State()
    return State._raw({r[1]: Fraction(coeff) * r[0]})


# -- translation ------------------------------------------------------------


def _translate_mono(mono: Monomial) -> dict:
    out: dict = {}
    for i, (p, sp, c, f) in enumerate(mono):
        new = list(mono)
        new[i] = (p - 1, sp, c, f)
        r = _canon(new)
        if r is not None:
            nv = out.get(r[1], 0) + r[0] * (-p)
            if nv:
                out[r[1]] = nv
            else:
                out.pop(r[1], None)
    return out


def translate(s: State, times: int = 1) -> State:
    """Translation operator T, with [T, g_(-k)] = k g_(-k-1) and T|0> = 0."""
    for _ in range(times):
        out: dict = {}
        for mono, c in s._terms.items():
            _accumulate(out, _translate_mono(mono).items(), c)
        s = State._raw(out)
    return s


# -- circle products --------------------------------------------------------


def _falling_binom(p: int, i: int) -> int:
    """C(p, i) = p (p-1) ... (p-i+1) / i!, valid for negative p."""
    num = 1
    for t in range(i):
        num *= p - t
    return num // math.factorial(i)


def _op_on_state(a: Monomial, k: int, b: dict) -> dict:
    out: dict = {}
    for mono, c in b.items():
        _accumulate(out, _circle_mono(a, k, mono), c)
    return out


@lru_cache(maxsize=None)
def _circle_mono(a: Monomial, k: int, b: Monomial) -> tuple:
    """a_(k) b for canonical monomials, via the iterate formula on the first mode of a."""
    if not a:
        return ((b, Fraction(1)),) if k == -1 else ()
    u, c = a[0], a[1:]
    p = u[0]
    wt_b = mono_weight(b)
    wt_c = mono_weight(c)
    out: dict = {}

    # sum_i (-1)^i C(p,i) u_(p-i) (c_(k+i) b)
    if c:
        imax = wt_c + wt_b - 1 - k
        irange = range(0, imax + 1) if imax >= 0 else range(0)
    else:
        irange = (-1 - k,) if -1 - k >= 0 else ()
    for i in irange:
        coef = _falling_binom(p, i)
        if not coef:
            continue
        if i % 2:
            coef = -coef
        inner = dict(_circle_mono(c, k + i, b)) if c else {b: Fraction(1)}
        umode = (p - i,) + u[1:]
        for mono, v in inner.items():
            r = _insert(umode, mono)
            if r is not None:
                _accumulate(out, ((r[1], r[0]),), coef * v)

    # - (-1)^(p + |u||c|) sum_i (-1)^i C(p,i) c_(p+k-i) (u_(i) b); u_(0) acts as zero
    outer_sign = -1 if (p + len(c)) % 2 == 0 else 1
    for i in range(1, wt_b + 1):
        coef = _falling_binom(p, i)
        if i % 2:
            coef = -coef
        ub = _annihilate((i,) + u[1:], b)
        if not ub:
            continue
        _accumulate(out, _op_on_state(c, p + k - i, ub).items(), outer_sign * coef)

    return tuple(out.items())


def circle(a: State, k: int, b: State) -> State:
    """The k-th circle product a o_k b = a_(k) b."""
    out: dict = {}
    for ma, ca in a._terms.items():
        for mb, cb in b._terms.items():
            _accumulate(out, _circle_mono(ma, k, mb), ca * cb)
    return State._raw(out)


def wick(a: State, b: State) -> State:
    """Normally ordered product :ab: = a_(-1) b."""
    return circle(a, -1, b)


def wick_left_nested(states: list[State]) -> State:
    """:a1(:a2(...:a_{r-1} a_r:...):): with the innermost product on the right."""
    if not states:
        return vacuum()
    acc = states[-1]
    for s in reversed(states[:-1]):
        acc = wick(s, acc)
    return acc


def virasoro(n: int, m: int = 1) -> State:
    """L = -sum_{i,j} e^{i,j}_(-1) f^{i,j}_(-1)|0>, central charge -2nm."""
    if n < 1 or m < 1:
        raise ValueError("n and m must be positive")
    out = {}
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            mono = ((-1, E, i, j), (-1, F, i, j))
            out[mono] = Fraction(-1)
    return State._raw(out)


def clear_caches() -> None:
    _circle_mono.cache_clear()


# -- bases ------------------------------------------------------------------


def generator_ids(n: int, m: int = 1) -> list[tuple[int, int, int]]:
    """All (species, color, flavor) in the fixed lexicographic order."""
    return [(sp, i, j) for sp in (E, F) for i in range(1, n + 1) for j in range(1, m + 1)]


def weight_basis(n: int, m: int, w: int) -> list[Monomial]:
    """All canonical monomials of A(nm) of weight w."""
    if w < 0:
        raise ValueError("weight must be nonnegative")
    cands = sorted((-k, sp, i, j) for k in range(1, w + 1) for (sp, i, j) in generator_ids(n, m))
    out: list[Monomial] = []

    def rec(start: int, remaining: int, acc: list):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for t in range(start, len(cands)):
            md = cands[t]
            if -md[0] <= remaining:
                acc.append(md)
                rec(t + 1, remaining + md[0], acc)
                acc.pop()

    rec(0, w, [])
    out.sort()
    return out


def fock_dimensions(n: int, m: int, max_weight: int) -> list[int]:
    return [len(weight_basis(n, m, w)) for w in range(max_weight + 1)]


# -- Lie algebra actions ----------------------------------------------------


def _pairing(g, h) -> int:
    """Antisymmetric pairing <e^{ij}, f^{kl}> = delta, <f, e> = -delta."""
    if g[1:] != h[1:] or g[0] == h[0]:
        return 0
    return 1 if g[0] == E else -1


class LieGenerator:
    """Linear map on span{e^{i,j}, f^{i,j}} acting identically on every mode index.

    ``entries[(target, source)]`` is the coefficient of generator ``target``
    in the image of generator ``source``.  Construction rejects maps that do
    not infinitesimally preserve the defining pairing.
    """

    __slots__ = ("n", "m", "entries", "label", "_images")

    def __init__(self, n: int, m: int, entries: Mapping, label: str = ""):
        self.n, self.m = n, m
        self.label = label
        self.entries = {k: Fraction(v) for k, v in entries.items() if v}
        gids = set(generator_ids(n, m))
        for tgt, src in self.entries:
            if tgt not in gids or src not in gids:
                raise ValueError(f"generator index out of range in {label or 'Lie generator'}")
        self._images: dict = {}
        for (tgt, src), v in self.entries.items():
            self._images.setdefault(src, []).append((tgt, v))
        self._check_pairing()

    def image(self, gid) -> list:
        return self._images.get(gid, [])

    def _check_pairing(self):
        gids = generator_ids(self.n, self.m)
        for g in gids:
            for h in gids:
                s = Fraction(0)
                for tgt, v in self.image(g):
                    s += v * _pairing(tgt, h)
                for tgt, v in self.image(h):
                    s += v * _pairing(g, tgt)
                if s:
                    raise ValueError(
                        f"{self.label or 'Lie generator'} does not preserve the symplectic pairing"
                    )

    def __repr__(self):
        return f"LieGenerator({self.label!r}, n={self.n}, m={self.m})"


def _lie_on_mono(X: LieGenerator, mono: Monomial) -> dict:
    out: dict = {}
    for t, (p, sp, c, f) in enumerate(mono):
        for (tsp, tc, tf), v in X.image((sp, c, f)):
            new = list(mono)
            new[t] = (p, tsp, tc, tf)
            r = _canon(new)
            if r is not None:
                nv = out.get(r[1], 0) + r[0] * v
                if nv:
                    out[r[1]] = nv
                else:
                    out.pop(r[1], None)
    return out


def lie_action(X: LieGenerator, s: State) -> State:
    """Act by X as an even derivation (Leibniz rule over the modes)."""
    out: dict = {}
    for mono, c in s._terms.items():
        _accumulate(out, _lie_on_mono(X, mono).items(), c)
    return State._raw(out)


def _color_sp_basis(n: int, m: int) -> list[LieGenerator]:
    gens = []
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            ent = {}
            for j in range(1, m + 1):
                ent[((E, a, j), (E, b, j))] = 1
                ent[((F, b, j), (F, a, j))] = -1
            gens.append(LieGenerator(n, m, ent, f"sp:A[{a},{b}]"))
    for a in range(1, n + 1):
        for b in range(a, n + 1):
            ent_b, ent_c = {}, {}
            for j in range(1, m + 1):
                ent_b[((F, b, j), (E, a, j))] = 1
                ent_b[((F, a, j), (E, b, j))] = 1
                ent_c[((E, b, j), (F, a, j))] = 1
                ent_c[((E, a, j), (F, b, j))] = 1
            gens.append(LieGenerator(n, m, ent_b, f"sp:B[{a},{b}]"))
            gens.append(LieGenerator(n, m, ent_c, f"sp:C[{a},{b}]"))
    return gens


def _color_gl_basis(n: int, m: int) -> list[LieGenerator]:
    return [g for g in _color_sp_basis(n, m) if g.label.startswith("sp:A")]


def _flavor_so_basis(n: int, m: int) -> list[LieGenerator]:
    gens = []
    for a in range(1, m + 1):
        for b in range(a + 1, m + 1):
            ent = {}
            for i in range(1, n + 1):
                for sp in (E, F):
                    ent[((sp, i, a), (sp, i, b))] = 1
                    ent[((sp, i, b), (sp, i, a))] = -1
            gens.append(LieGenerator(n, m, ent, f"so:[{a},{b}]"))
    return gens


def _flavor_gl_basis(n: int, m: int) -> list[LieGenerator]:
    gens = []
    for a in range(1, m + 1):
        for b in range(1, m + 1):
            ent = {}
            for i in range(1, n + 1):
                ent[((E, i, a), (E, i, b))] = 1
                ent[((F, i, b), (F, i, a))] = -1
            gens.append(LieGenerator(n, m, ent, f"glm:[{a},{b}]"))
    return gens


GROUP_ALIASES = {
    "sp": "sp", "Sp(2n)": "sp", "Sp": "sp",
    "gl": "gl", "GL(n)": "gl", "GL": "gl",
    "sp_so": "sp_so", "Sp(2n)xSO(m)": "sp_so", "Sp(2n)×SO(m)": "sp_so",
    "gl_gl": "gl_gl", "GL(n)xGL(m)": "gl_gl", "GL(n)×GL(m)": "gl_gl",
}


def lie_basis(group: str, n: int, m: int = 1) -> list[LieGenerator]:
    """Basis of the Lie algebra of ``group`` acting on A(nm)."""
    g = GROUP_ALIASES.get(group)
    if g is None:
        raise ValueError(f"unknown group {group!r}")
    if g == "sp":
        return _color_sp_basis(n, m)
    if g == "gl":
        return _color_gl_basis(n, m)
    if g == "sp_so":
        return _color_sp_basis(n, m) + _flavor_so_basis(n, m)
    return _color_gl_basis(n, m) + _flavor_gl_basis(n, m)


def _torus_charge(mono: Monomial, n: int, m: int, with_flavor: bool) -> tuple:
    ch = [0] * (n + (m if with_flavor else 0))
    for _, sp, c, f in mono:
        s = 1 if sp == E else -1
        ch[c - 1] += s
        if with_flavor:
            ch[n + f - 1] += s
    return tuple(ch)


def invariant_dimension(group: str, n: int, m: int, w: int) -> int:
    """Dimension of the invariants of ``group`` in the weight-w space of A(nm).

    Computed as the joint kernel of a Lie algebra basis on the zero-charge
    subspace of the diagonal torus, by exact row reduction.
    """
    g = GROUP_ALIASES.get(group)
    if g is None:
        raise ValueError(f"unknown group {group!r}")
    zero = tuple([0] * (n + (m if g == "gl_gl" else 0)))
    domain = [mono for mono in weight_basis(n, m, w) if _torus_charge(mono, n, m, g == "gl_gl") == zero]
    if not domain:
        return 0
    basis = lie_basis(g, n, m)
    ech = linalg.Echelon()
    for mono in domain:
        col = {}
        for idx, X in enumerate(basis):
            for out, v in _lie_on_mono(X, mono).items():
                col[(idx, out)] = v
        ech.add(col)
    return len(domain) - ech.rank


def invariant_dimensions(group: str, n: int, m: int, max_weight: int) -> list[int]:
    return [invariant_dimension(group, n, m, w) for w in range(max_weight + 1)]


def charge_sector_dimensions(n: int, m: int, w: int, with_flavor: bool = False) -> dict[tuple, int]:
    """Fock dimensions at weight w split by torus charge."""
    out: dict[tuple, int] = {}
    for mono in weight_basis(n, m, w):
        ch = _torus_charge(mono, n, m, with_flavor)
        out[ch] = out.get(ch, 0) + 1
    return dict(sorted(out.items()))


# -- text format ------------------------------------------------------------


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_mono(mono: Monomial) -> str:
    if not mono:
        return "|0>"
    return " ".join(f"{SPECIES_NAMES[sp]}[{c},{f}]({p})" for p, sp, c, f in mono)


def format_state(s: State) -> str:
    """Render as ``"c*e[1,1](-1) f[1,1](-2) + ..."`` in canonical monomial order."""
    if not s._terms:
        return "0"
    return " + ".join(f"{_format_coeff(c)}*{format_mono(m)}" for m, c in sorted(s._terms.items()))


_MODE_RE = re.compile(r"([ef])\[(\d+),(\d+)\]\((-?\d+)\)")


def parse_state(text: str) -> State:
    """Inverse of :func:`format_state`; also accepts ``−`` and ``·``."""
    text = text.replace("−", "-").replace("·", "*").strip()
    if text == "0":
        return State()
    out: dict = {}
    for chunk in re.split(r"\s\+\s", text):
        coeff_s, _, body = chunk.partition("*")
        coeff = Fraction(coeff_s.strip())
        body = body.strip()
        if body == "|0>":
            modes = []
        else:
            modes = []
            pos = 0
            for mt in _MODE_RE.finditer(body):
                if body[pos:mt.start()].strip():
                    raise ValueError(f"cannot parse {body!r}")
                sp, c, f, p = mt.groups()
                modes.append(mode(sp, int(c), int(f), int(p)))
                pos = mt.end()
            if body[pos:].strip() or not modes:
                raise ValueError(f"cannot parse {body!r}")
        r = _canon(modes)
        if r is None:
            continue
        _accumulate(out, ((r[1], r[0]),), coeff)
    return State._raw(out)
