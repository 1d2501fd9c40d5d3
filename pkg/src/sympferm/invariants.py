"""Orbifold generators, classical relations, remainders and decoupling relations.

Two families are covered:

* ``sp``: the Sp(2n)-invariants, generated by the quadratics ``omega_{a,b}``
  with ``j^{2m} = omega_{0,2m}``;
* ``gl``: the GL(n)-invariants, generated by ``gamma_{a,b}`` with
  ``h^m = gamma_{0,m}``.

All states are exact Fock-space vectors built with :mod:`sympferm.ffva`.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from itertools import product

from . import ffva, linalg
from .ffva import E, F, State

FAMILIES = ("sp", "gl")


class NotInSpan(ValueError):
    """The state is not a combination of the requested spanning set."""


def _family(name: str) -> str:
    aliases = {"sp": "sp", "sp_omega": "sp", "sp_j": "sp", "gl": "gl", "gl_gamma": "gl", "gl_h": "gl"}
    try:
        return aliases[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}") from None


# -- generators -------------------------------------------------------------


def _pair(a: int, ea: tuple, b: int, fb: tuple) -> State:
    """:d^a e d^b f: for generator ids ea = (color, flavor) of e and fb of f."""
    coeff = math.factorial(a) * math.factorial(b)
    return ffva.monomial_state((-1 - a, E) + ea, (-1 - b, F) + fb, coeff=coeff)


def quadratic_generator(family: str, a: int, b: int, n: int, m: int = 1,
                        flavors: tuple[int, int] | None = None) -> State:
    """omega_{a,b} (family ``sp``) or gamma_{a,b} (family ``gl``) as a Fock state.

    With ``flavors=(j, k)`` the flavored generator on A(nm) is returned:
    ``omega^{j,k}_{a,b} = 1/2 sum_i (:d^a e^{i,j} d^b f^{i,k}: + :d^b e^{i,k} d^a f^{i,j}:)``
    and ``gamma^{j,k}_{a,b} = sum_i :d^a e^{i,j} d^b f^{i,k}:``.
    Without flavors, the flavor-diagonal sum over all ``m`` flavors is used.
    """
    fam = _family(family)
    if a < 0 or b < 0:
        raise ValueError("derivative orders must be nonnegative")
    if fam == "sp" and flavors is None and a > b:
        raise ValueError("omega_{a,b} requires a <= b")
    if flavors is not None:
        j, k = flavors
        if not (1 <= j <= m and 1 <= k <= m):
            raise ValueError("flavor index out of range")
        pairs = [(j, k)]
    else:
        pairs = [(j, j) for j in range(1, m + 1)]
    out = State()
    for i in range(1, n + 1):
        for j, k in pairs:
            if fam == "sp":
                out = out + (_pair(a, (i, j), b, (i, k)) + _pair(b, (i, k), a, (i, j))) / 2
            else:
                out = out + _pair(a, (i, j), b, (i, k))
    return out


def j_gen(k: int, n: int, m: int = 1) -> State:
    """j^{k} = omega_{0,k} (k even for the strong generators)."""
    return quadratic_generator("sp", 0, k, n, m)


def h_gen(k: int, n: int, m: int = 1) -> State:
    """h^{k} = gamma_{0,k}."""
    return quadratic_generator("gl", 0, k, n, m)


def generator_state(family: str, label: int, n: int, m: int = 1,
                    flavors: tuple[int, int] | None = None) -> State:
    fam = _family(family)
    return quadratic_generator(fam, 0, label, n, m, flavors)


def generator_weight(family: str, label: int) -> int:
    return label + 2


# -- expansion in the derivative basis --------------------------------------


def j_basis(family: str, weight: int, n: int, m: int = 1,
            flavors: tuple[int, int] | None = None) -> dict[tuple[int, int], State]:
    """Spanning set {d^i g^t} of the quadratic invariants at ``weight``.

    Keys are ``(i, t)``: derivative order and generator label.  For ``sp``
    only even labels occur; for ``gl`` and flavored generators every label.
    """
    fam = _family(family)
    basis = {}
    for t in range(0, weight - 1):
        i = weight - 2 - t
        if fam == "sp" and flavors is None and t % 2:
            continue
        basis[(i, t)] = ffva.translate(generator_state(fam, t, n, m, flavors), i)
    return basis


def express_in_j_basis(s: State, family: str, n: int, m: int = 1,
                       flavors: tuple[int, int] | None = None) -> dict[tuple[int, int], Fraction]:
    """Coefficients c_{i,t} with s = sum c_{i,t} d^i g^t, or raise NotInSpan."""
    if s.is_zero():
        return {}
    ws = s.weights()
    if len(ws) != 1:
        raise NotInSpan(f"state is not weight-homogeneous (weights {sorted(ws)})")
    w = ws.pop()
    basis = j_basis(family, w, n, m, flavors)
    sol = linalg.solve({k: v.terms for k, v in basis.items()}, s.terms)
    if sol is None:
        raise NotInSpan(f"state of weight {w} is outside span of derivative generators")
    return dict(sorted(sol.items()))


def evaluate_expansion(exp: dict, family: str, n: int, m: int = 1,
                       flavors: tuple[int, int] | None = None) -> State:
    out = State()
    for (i, t), c in exp.items():
        out = out + c * ffva.translate(generator_state(family, t, n, m, flavors), i)
    return out


# -- classical relations ----------------------------------------------------


def _poly_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            key = tuple(sorted(m1 + m2))
            out[key] = out.get(key, 0) + c1 * c2
    return {k: v for k, v in out.items() if v}


def _poly_add(p: dict, q: dict) -> dict:
    out = dict(p)
    for k, v in q.items():
        out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def _pfaffian_like(I: tuple) -> tuple:
    """Unsigned Pfaffian recursion p_I in the symmetric symbols Q_{a,b}."""
    def q(a, b):
        return {((min(a, b), max(a, b)),): 1}

    if len(I) == 4:
        i0, i1, i2, i3 = I
        p = _poly_add(_poly_mul(q(i0, i1), q(i2, i3)), _poly_mul(q(i0, i2), q(i1, i3)))
        p = _poly_add(p, _poly_mul(q(i0, i3), q(i1, i2)))
        return tuple(sorted(p.items()))
    out: dict = {}
    i0 = I[0]
    for r in range(1, len(I)):
        rest = I[1:r] + I[r + 1:]
        out = _poly_add(out, _poly_mul(q(i0, I[r]), dict(_pfaffian_like(rest))))
    return tuple(sorted(out.items()))


@lru_cache(maxsize=None)
def _permanent_like(I: tuple, J: tuple) -> tuple:
    """Unsigned determinant recursion d_{I,J} in the symbols P_{a,b}."""
    def p(a, b):
        return {((a, b),): 1}

    if len(I) == 2:
        (i0, i1), (j0, j1) = I, J
        d = _poly_add(_poly_mul(p(i0, j0), p(i1, j1)), _poly_mul(p(i1, j0), p(i0, j1)))
        return tuple(sorted(d.items()))
    out: dict = {}
    for r in range(len(I)):
        rest = I[:r] + I[r + 1:]
        out = _poly_add(out, _poly_mul(p(I[r], J[0]), dict(_permanent_like(rest, J[1:]))))
    return tuple(sorted(out.items()))


def _ext_mul(x: dict, y: dict) -> dict:
    """Product in an exterior algebra; keys are sorted tuples of variables."""
    out: dict = {}
    for m1, c1 in x.items():
        for m2, c2 in y.items():
            if set(m1) & set(m2):
                continue
            r = ffva._canon(list(m1 + m2))
            if r is None:
                continue
            key = r[1]
            nv = out.get(key, 0) + r[0] * c1 * c2
            if nv:
                out[key] = nv
            else:
                out.pop(key, None)
    return out


def _ext_quadratic(family: str, a: int, b: int, n: int) -> dict:
    """q_{a,b} (sp) or p_{a,b} (gl) in the exterior algebra on x_{i,a}, y_{i,a}."""
    out: dict = {}

    def add(u, v, c):
        r = ffva._canon([u, v])
        if r is not None:
            out[r[1]] = out.get(r[1], 0) + r[0] * c

    for i in range(1, n + 1):
        if family == "sp":
            add((0, i, a), (1, i, b), Fraction(1, 2))
            add((0, i, b), (1, i, a), Fraction(1, 2))
        else:
            add((0, i, a), (1, i, b), 1)
    return {k: v for k, v in out.items() if v}


def evaluate_classical(poly: dict, family: str, n: int) -> dict:
    """Image of a polynomial in Q_{a,b} or P_{a,b} in the exterior algebra."""
    fam = _family(family)
    total: dict = {}
    cache: dict = {}
    for mono, c in poly.items():
        acc = {(): Fraction(1)}
        for ab in mono:
            if ab not in cache:
                cache[ab] = _ext_quadratic(fam, ab[0], ab[1], n)
            acc = _ext_mul(acc, cache[ab])
            if not acc:
                break
        for k, v in acc.items():
            nv = total.get(k, 0) + c * v
            if nv:
                total[k] = nv
            else:
                total.pop(k, None)
    return total


def classical_relation(family: str, I, J=None, n: int | None = None) -> tuple[dict, bool]:
    """The degree-(n+1) classical relation and whether it vanishes in the exterior algebra.

    Returns ``(poly, verified)``.  ``poly`` maps a sorted tuple of index pairs
    (one pair per factor ``Q_{a,b}`` or ``P_{a,b}``) to its integer coefficient.
    """
    fam = _family(family)
    I = tuple(I)
    if list(I) != sorted(I) or min(I, default=0) < 0:
        raise ValueError("index list must be sorted and nonnegative")
    if fam == "sp":
        if len(I) < 4 or len(I) % 2:
            raise ValueError("sp index list must have length 2n+2 with n >= 1")
        rank = len(I) // 2 - 1
        poly = dict(_pfaffian_like(I))
    else:
        if J is None:
            raise ValueError("gl relations need a second index list J")
        J = tuple(J)
        if list(J) != sorted(J) or min(J, default=0) < 0:
            raise ValueError("index list must be sorted and nonnegative")
        if len(I) != len(J) or len(I) < 2:
            raise ValueError("gl index lists must both have length n+1 with n >= 1")
        rank = len(I) - 1
        poly = dict(_permanent_like(I, J))
    if n is not None and n != rank:
        raise ValueError(f"index list length does not match n={n}")
    return poly, not evaluate_classical(poly, fam, rank)


# -- remainders -------------------------------------------------------------


def _sp_base(I: tuple) -> Fraction:
    i0, i1, i2, i3 = I
    s = lambda *xs: (-1) ** sum(xs)  # noqa: E731
    terms = [
        (s(i0, i2) + s(i0, i3) + s(i1, i2) + s(i1, i3), 2 + i0 + i1),
        (s(i0, i1) + s(i0, i3) + s(i1, i2) + s(i2, i3), 2 + i0 + i2),
        (s(i0, i1) + s(i0, i2) + s(i1, i3) + s(i2, i3), 2 + i1 + i2),
        (s(i0, i1) + s(i0, i2) + s(i1, i3) + s(i2, i3), 2 + i0 + i3),
        (s(i0, i1) + s(i0, i3) + s(i1, i2) + s(i2, i3), 2 + i1 + i3),
        (s(i0, i2) + s(i0, i3) + s(i1, i2) + s(i1, i3), 2 + i2 + i3),
    ]
    return Fraction(-1, 8) * sum(Fraction(num, den) for num, den in terms)


def sp_even_reduction(I) -> Fraction:
    """Closed form of the n=1 sp remainder on lists with all entries even."""
    I = tuple(I)
    if len(I) != 4 or any(i % 2 for i in I):
        raise ValueError("expects four even entries")
    return Fraction(-1, 2) * sum(Fraction(1, 2 + I[a] + I[b]) for a in range(4) for b in range(a + 1, 4))


def _sp_rec(I: tuple, canonical: bool) -> Fraction:
    if len(I) == 4:
        return _sp_base(I)
    i0 = I[0]
    total = Fraction(0)
    for r in range(1, len(I)):
        ir = I[r]
        rest = I[1:r] + I[r + 1:]
        s0 = -1 if i0 % 2 == 0 else 1  # (-1)^(i0+1)
        sr = -1 if ir % 2 == 0 else 1
        for a, ia in enumerate(rest):
            sub = rest[:a] + (ia + i0 + ir + 2,) + rest[a + 1:]
            val = _sp_memo(tuple(sorted(sub))) if canonical else _sp_rec(sub, False)
            total += s0 * val / (i0 + ia + 2) + sr * val / (ir + ia + 2)
    return Fraction(-1, 2) * total


@lru_cache(maxsize=None)
def _sp_memo(I: tuple) -> Fraction:
    return _sp_rec(I, True)


def _gl_base(I: tuple, J: tuple) -> Fraction:
    (i0, i1), (j0, j1) = I, J
    sign = -1 if (1 + j0 + j1) % 2 else 1
    return sign * (Fraction(1, 2 + i0 + j0) + Fraction(1, 2 + i1 + j0)
                   + Fraction(1, 2 + i0 + j1) + Fraction(1, 2 + i1 + j1))


def _gl_rec(I: tuple, J: tuple, canonical: bool) -> Fraction:
    if len(I) == 2:
        return _gl_base(I, J)
    j0 = J[0]
    Jp = J[1:]
    sj0 = -1 if j0 % 2 else 1
    total = Fraction(0)
    sub = _gl_memo if canonical else (lambda a, b: _gl_rec(a, b, False))
    norm = (lambda t: tuple(sorted(t))) if canonical else (lambda t: t)
    for r in range(len(I)):
        ir = I[r]
        Ir = I[:r] + I[r + 1:]
        sir = -1 if ir % 2 else 1
        for k, ik in enumerate(Ir):
            Irk = Ir[:k] + (ik + ir + j0 + 2,) + Ir[k + 1:]
            total += sj0 * sub(norm(Irk), norm(Jp)) / (2 + ik + j0)
        for l, jl in enumerate(Jp):
            Jl = Jp[:l] + (jl + ir + j0 + 2,) + Jp[l + 1:]
            total += sir * sub(norm(Ir), norm(Jl)) / (2 + jl + ir)
    return total


@lru_cache(maxsize=None)
def _gl_memo(I: tuple, J: tuple) -> Fraction:
    return _gl_rec(I, J, True)


def remainder(family: str, n: int, I, J=None, *, canonical: bool = True) -> Fraction:
    """Exact remainder R_n(I) (sp) or R_n(I, J) (gl).

    Lists are sorted before evaluation unless ``canonical=False``, in which case
    the recursion runs on the lists exactly as given (used to probe symmetry).
    """
    fam = _family(family)
    I = tuple(int(i) for i in I)
    if any(i < 0 for i in I):
        raise ValueError("indices must be nonnegative")
    if fam == "sp":
        if len(I) != 2 * n + 2:
            raise ValueError(f"sp index list must have length {2 * n + 2}")
        if (2 * n + sum(I)) % 2:
            raise ValueError("remainder needs 2n + sum(I) even")
        return _sp_memo(tuple(sorted(I))) if canonical else _sp_rec(I, False)
    if J is None:
        raise ValueError("gl remainder needs a second index list J")
    J = tuple(int(j) for j in J)
    if any(j < 0 for j in J):
        raise ValueError("indices must be nonnegative")
    if len(I) != n + 1 or len(J) != n + 1:
        raise ValueError(f"gl index lists must have length {n + 1}")
    if canonical:
        return _gl_memo(tuple(sorted(I)), tuple(sorted(J)))
    return _gl_rec(I, J, False)


def remainder_cache_info():
    return {"sp": _sp_memo.cache_info(), "gl": _gl_memo.cache_info()}


# -- lambda coefficients ----------------------------------------------------


def lambda_coefficient(a: int, b: int, w: int, c: int, *, termwise: bool = False) -> Fraction:
    """Coefficient of the weight-w mode of omega_{a,b} acting on the slot c.

    By default the whole coefficient vanishes once ``c - b + w < 0``.  With
    ``termwise=True`` only the summand whose factorial argument is negative is
    dropped; half of that value reproduces the engine modulo derivatives.
    """
    if not (0 <= a <= b) or w < 0 or c < 0:
        raise ValueError("need 0 <= a <= b, w >= 0, c >= 0")
    first = c - b + w
    if first < 0 and not termwise:
        return Fraction(0)
    total = Fraction(0)
    if first >= 0:
        total += Fraction((-1) ** (a + 1) * math.factorial(a + c + 1), math.factorial(first))
    if c - a + w >= 0:
        total += Fraction((-1) ** (b + 1) * math.factorial(b + c + 1), math.factorial(c - a + w))
    return total


def lambda_action(a: int, b: int, w: int, c: int, d: int, n: int) -> dict:
    """Engine-side action of omega_{a,b} o_{a+b+1-w} on omega_{c,d}.

    Returns the exact expansion of the degree-2 component in the basis
    {omega_{x,y}: x <= y, x + y = c + d + w}.
    """
    k = a + b + 1 - w
    if k < 0:
        raise ValueError("need a + b + 1 - w >= 0")
    lhs = ffva.circle(quadratic_generator("sp", a, b, n), k, quadratic_generator("sp", c, d, n))
    quad = lhs.component(degree=2)
    total = c + d + w
    cols = {(x, total - x): quadratic_generator("sp", x, total - x, n).terms for x in range(0, total // 2 + 1)}
    sol = linalg.solve(cols, quad.terms)
    if sol is None:
        raise NotInSpan("degree-2 component is outside the quadratic span")
    return dict(sorted(sol.items()))


def lambda_structure_holds(a: int, b: int, w: int, c: int, d: int, n: int) -> bool:
    """Whether the degree-2 part of omega_{a,b} o_{a+b+1-w} omega_{c,d} lies in
    span{omega_{c+w,d}, omega_{c,d+w}} plus derivatives of lower quadratics."""
    k = a + b + 1 - w
    if k < 0:
        raise ValueError("need a + b + 1 - w >= 0")
    quad = ffva.circle(quadratic_generator("sp", a, b, n), k,
                       quadratic_generator("sp", c, d, n)).component(degree=2)
    if quad.is_zero():
        return True

    def omega(x, y):
        return quadratic_generator("sp", min(x, y), max(x, y), n)

    total = c + d + w
    cols = {("lead", c + w, d): omega(c + w, d).terms, ("lead", c, d + w): omega(c, d + w).terms}
    for x in range(0, total // 2 + 1):
        if total - 1 - x >= x:
            cols[("dlow", x)] = ffva.translate(omega(x, total - 1 - x)).terms
    return linalg.solve(cols, quad.terms) is not None


# -- decoupling relations ---------------------------------------------------


def _gen_label(family: str, t: int) -> str:
    return f"{'j' if family == 'sp' else 'h'}{t}"


def _retained_labels(family: str, target_weight: int) -> list[int]:
    step = 2 if family == "sp" else 1
    return [t for t in range(0, target_weight - 2, step)]


def _word_factors(labels: list[int], weight: int) -> list[tuple]:
    """All ordered sequences of (label, derivative) with total weight ``weight``."""
    out = []

    def rec(remaining, acc):
        if remaining == 0 and acc:
            out.append(tuple(acc))
            return
        for t in labels:
            for i in range(0, remaining - t - 2 + 1):
                acc.append((t, i))
                rec(remaining - t - 2 - i, acc)
                acc.pop()

    rec(weight, [])
    return out


def evaluate_word(family: str, n: int, word: tuple, m: int = 1) -> State:
    fam = _family(family)
    states = [ffva.translate(generator_state(fam, t, n, m), i) for t, i in word]
    return ffva.wick_left_nested(states)


def target_label(family: str, target_weight: int) -> int:
    fam = _family(family)
    t = target_weight - 2
    if t < 0 or (fam == "sp" and t % 2):
        raise ValueError(f"no {fam} generator has weight {target_weight}")
    return t


def find_decoupling(family: str, n: int, target_weight: int) -> dict | None:
    """Express the generator of weight ``target_weight`` through lower ones.

    Candidate expressions are all left-nested normally ordered words in the
    lower-weight generators and their derivatives.  Returns a map from words
    (tuples of ``(label, derivative)``) to coefficients, or None if no exact
    solution exists.
    """
    fam = _family(family)
    tgt = target_label(fam, target_weight)
    target = generator_state(fam, tgt, n)
    words = _word_factors(_retained_labels(fam, target_weight), target_weight)
    cols = {}
    for wd in words:
        v = evaluate_word(fam, n, wd)
        if v:
            cols[wd] = v.terms
    sol = linalg.solve(cols, target.terms)
    if sol is None:
        return None
    return dict(sorted(sol.items()))


def evaluate_decoupling(family: str, n: int, solution: dict) -> State:
    out = State()
    for wd, c in solution.items():
        out = out + c * evaluate_word(family, n, wd)
    return out


def format_word(family: str, word: tuple) -> str:
    fam = _family(family)
    parts = []
    for t, i in word:
        g = _gen_label(fam, t)
        parts.append(g if i == 0 else (f"d{g}" if i == 1 else f"d^{i}{g}"))
    return parts[0] if len(parts) == 1 else ":" + " ".join(parts) + ":"


# -- strong generation identities -------------------------------------------


def strong_generation_coefficient(kind: str, n: int, k: int, m: int = 1) -> Fraction:
    """Leading coefficient in the generation identities.

    * ``sp_j``: coefficient of j^{2k+2} in j^2 o_1 j^{2k};
    * ``gl_h``: coefficient of h^{k+1} in h^1 o_1 h^k;
    * ``flavored_sp``: coefficient of omega^{1,2}_{0,2k} in
      omega^{1,2}_{0,0} o_1 omega^{1,1}_{0,2k} on A(mn), m >= 2.
    """
    if kind == "sp_j":
        res = ffva.circle(j_gen(2, n), 1, j_gen(2 * k, n))
        return express_in_j_basis(res, "sp", n).get((0, 2 * k + 2), Fraction(0))
    if kind == "gl_h":
        res = ffva.circle(h_gen(1, n), 1, h_gen(k, n))
        return express_in_j_basis(res, "gl", n).get((0, k + 1), Fraction(0))
    if kind == "flavored_sp":
        if m < 2:
            raise ValueError("flavored identity needs m >= 2")
        a = quadratic_generator("sp", 0, 0, n, m, flavors=(1, 2))
        b = quadratic_generator("sp", 0, 2 * k, n, m, flavors=(1, 1))
        res = ffva.circle(a, 1, b)
        return express_in_j_basis(res, "sp", n, m, flavors=(1, 2)).get((0, 2 * k), Fraction(0))
    raise ValueError(f"unknown identity kind {kind!r}")


def gl_generation_identity(n: int, k: int) -> tuple[State, State]:
    """Both sides of h^1 o_1 h^k = -(k+3) h^{k+1} + 2 d h^k."""
    lhs = ffva.circle(h_gen(1, n), 1, h_gen(k, n))
    rhs = -(k + 3) * h_gen(k + 1, n) + 2 * ffva.translate(h_gen(k, n))
    return lhs, rhs
