"""Branching functions of A(mr) under the even part of gl(m|r) or spo(2m|r).

The graded character of A(mr) splits as ``sum_Lambda ch_Lambda * B_Lambda``
over dominant weights of the root lattice.  ``branching`` evaluates B_Lambda
from the Weyl-group / index-set formula; the closed forms for Sp(2n) and
GL(m), the decomposition check and the freeness checks are built on top.

Exponents are integers in units of 1/24 (see :mod:`sympferm.qseries`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import ffva, qseries, rootsys
from .qseries import DEN, QSeries
from .rootsys import SuperRootSystem, Weight

CONVENTIONS = ("proof_corrected", "literal")


def _convention(name: str) -> str:
    aliases = {"proof_corrected": "proof_corrected", "corrected": "proof_corrected", "literal": "literal"}
    try:
        return aliases[name]
    except KeyError:
        raise ValueError(f"unknown convention {name!r}") from None


def _exp24(x: Fraction) -> int:
    e = Fraction(x) * DEN
    if e.denominator != 1:
        raise ValueError(f"exponent {x} is not a multiple of 1/24")
    return int(e)


def r_of(sys: SuperRootSystem) -> int:
    """The r of A(mr) whose odd generators carry the odd roots of ``sys``."""
    return {"gl": sys.n, "spo_even": 2 * sys.n, "spo_odd": 2 * sys.n + 1}[sys.kind]


def character_prefactor(sys: SuperRootSystem) -> int:
    """Exponent (1/24 units) of the q^{mr/12} prefactor of ch[A(mr)]."""
    return 2 * sys.m * r_of(sys)


def _isotropic_index(ell: int, convention: str) -> int:
    return -ell - 1 if convention == "proof_corrected" else ell


def theta_sum(sys: SuperRootSystem, lam: Weight, trunc: int, convention: str = "proof_corrected") -> QSeries:
    """sum over I_lam of prod q^{(n+1/2)^2/2} prod P_idx, complete below ``trunc``."""
    conv = _convention(convention)
    out = QSeries.zero(trunc)
    for ns, ls in rootsys.enumerate_index_set(sys, lam, Fraction(trunc, DEN), conv):
        e0 = sum(3 * (2 * x + 1) ** 2 for x in ns)
        term = QSeries.monomial(0, 1, trunc)
        for ell in ls:
            term = term * qseries.partial_theta(_isotropic_index(ell, conv), trunc)
        out = out + term.shift(e0).truncate(trunc)
    return out


def branching(sys: SuperRootSystem, lam: Weight, trunc: int, convention: str = "proof_corrected") -> QSeries:
    """B_Lambda as an exact q-series, complete below ``trunc`` (1/24 units)."""
    conv = _convention(convention)
    if not rootsys.is_dominant(sys, lam):
        raise ValueError(f"{lam} is not dominant for the even part of {sys.name}")
    if not rootsys.in_root_lattice(sys, lam):
        raise ValueError(f"{lam} is not in the root lattice of {sys.name}")
    k = len(sys.odd_pos)
    inner = trunc + k
    total = QSeries.zero(inner)
    shifted = lam + sys.rho0
    for w in rootsys.weyl_elements(sys, "full"):
        s = theta_sum(sys, w(shifted) - sys.rho0, inner, conv)
        if not s.is_zero():
            total = total + (s if w.sign > 0 else -s)
    if total.is_zero():
        return QSeries.zero(trunc)
    total = total.scale(Fraction(sys.sharp_order, sys.weyl_order))
    return (total * qseries.eta_power(-k, trunc)).truncate(trunc)


def branching_leading_bound(sys: SuperRootSystem, lam: Weight, trunc: int,
                            convention: str = "proof_corrected") -> bool:
    """True when some index-set tuple can contribute to B_Lambda below ``trunc``."""
    conv = _convention(convention)
    k = len(sys.odd_pos)
    shifted = lam + sys.rho0
    bound = Fraction(trunc + k, DEN)
    return any(rootsys.enumerate_index_set(sys, w(shifted) - sys.rho0, bound, conv)
               for w in rootsys.weyl_elements(sys, "full"))


def branching_sp_closed(n: int, lam, trunc: int) -> QSeries:
    """eta^{-n} sum_W sign(w) q^{|w(Lambda+rho0) - rho|^2 / 2} for G = Sp(2n)."""
    sys = rootsys.build_root_system("spo_odd", n, 0)
    if not isinstance(lam, Weight):
        lam = sys.weight(lam)
    if not rootsys.is_dominant(sys, lam):
        raise ValueError(f"{lam} is not dominant for sp({2 * n})")
    terms: dict[int, int] = {}
    for w in rootsys.weyl_elements(sys, "full"):
        v = w(lam + sys.rho0) - sys.rho
        e = _exp24(rootsys.norm(v) / 2)
        terms[e] = terms.get(e, 0) + w.sign
    s = QSeries(terms, trunc + n)
    if s.is_zero():
        return QSeries.zero(trunc)
    return (s * qseries.eta_power(-n, trunc)).truncate(trunc)


def gl_closed_data(m: int) -> dict:
    """Weyl vectors used by the GL(m) closed form (odd roots e-d1, d2-e, ..., dm-e)."""
    zero = Weight.zero(m, 1)
    d = [Weight.basis(m, 1, "d", i) for i in range(1, m + 1)]
    e = Weight.basis(m, 1, "e", 1)
    odd = [e - d[0]] + [d[i] - e for i in range(1, m)]
    even = [d[i] - d[j] for i in range(m) for j in range(i + 1, m)]
    rho0 = sum(even, zero) * Fraction(1, 2)
    rho1 = sum(odd, zero) * Fraction(1, 2)
    return {"odd": odd, "even": even, "rho0": rho0, "rho1": rho1, "rho": rho0 - rho1}


def branching_gl_closed(m: int, lam, trunc: int) -> QSeries:
    """Closed form for G = GL(m) transcribed term by term.

    ``lam`` is a list of delta-coefficients or a Weight of gl(m|1).
    """
    data = gl_closed_data(m)
    if not isinstance(lam, Weight):
        vals = list(lam)
        lam = Weight(vals + [0] * (m - len(vals)), (0,))
    if lam.m != m or lam.n != 1:
        raise ValueError("weight must have m delta coordinates and one epsilon coordinate")
    rho0, rho = data["rho0"], data["rho"]
    shift24 = -6 * (m - 2) ** 2
    inner = trunc + m
    terms: dict[int, int] = {}
    sys = rootsys.build_root_system("gl", m, 1)
    for w in rootsys.weyl_elements(sys, "full"):
        x = w(lam + rho0)
        base = shift24 + _exp24(rootsys.norm(x - rho) / 2)
        c = (x - rho0).delta[0]
        r = 0
        while True:
            e = base + _exp24(Fraction(r * (r - 1), 2) + c * (r + 1))
            # the r-sum is increasing once r - 1/2 >= -c
            if e >= inner and r - Fraction(1, 2) >= -c:
                break
            if e < inner:
                terms[e] = terms.get(e, 0) + w.sign * (-1) ** r
            r += 1
    s = QSeries(terms, inner)
    if s.is_zero():
        return QSeries.zero(trunc)
    return (s * qseries.eta_power(-m, trunc)).truncate(trunc)


# -- decomposition ----------------------------------------------------------


@dataclass
class DecompositionReport:
    system: str
    lhs: QSeries
    rhs: QSeries
    equal: bool
    first_mismatch: int | None
    norm_bound: Fraction
    sufficient: bool
    weights: list = field(default_factory=list)  # (Lambda, dim, B_Lambda)

    @property
    def nonnegative_integral(self) -> bool:
        return all(c.denominator == 1 and c >= 0 for _, _, b in self.weights for c in b.terms.values())

    def to_dict(self) -> dict:
        return {
            "system": self.system,
            "equal": self.equal,
            "firstMismatch": self.first_mismatch,
            "normBound": qseries.fraction_str(self.norm_bound),
            "sufficient": self.sufficient,
            "weights": [[str(lam), dim] for lam, dim, _ in self.weights],
            "lhs": self.lhs.to_dict(),
            "rhs": self.rhs.to_dict(),
        }


def decompose_check(sys: SuperRootSystem, trunc: int, convention: str = "proof_corrected",
                    max_norm: int = 400, patience: int = 2) -> DecompositionReport:
    """Compare ch[A(mr)] with sum dim(Lambda) B_Lambda below ``trunc``.

    Dominant weights are taken in unit shells of Euclidean |Lambda + rho0|^2.
    Enumeration stops after ``patience`` consecutive nonempty shells in which
    no weight has any index-set tuple below the cutoff.  Reaching ``max_norm``
    first is reported as an insufficient bound.
    """
    conv = _convention(convention)
    lhs = qseries.full_character(sys.m, r_of(sys), trunc)
    rhs = QSeries.zero(trunc)
    used = []
    idle = 0
    radius = 0
    seen: set = set()
    sufficient = False
    while radius <= max_norm:
        shell = [lam for lam in rootsys.enumerate_dominant(sys, radius) if lam not in seen]
        seen.update(shell)
        if shell:
            active = [lam for lam in shell if branching_leading_bound(sys, lam, trunc, conv)]
            for lam in active:
                b = branching(sys, lam, trunc, conv)
                dim = rootsys.dim_irrep(sys, lam)
                rhs = rhs + b.scale(dim)
                used.append((lam, dim, b))
            idle = 0 if active else idle + 1
            if idle >= patience:
                sufficient = True
                break
        radius += 1
    mismatch = lhs.first_mismatch(rhs)
    return DecompositionReport(sys.name, lhs, rhs, mismatch is None and sufficient, mismatch,
                               Fraction(radius), sufficient, used)


# -- freeness ---------------------------------------------------------------


@dataclass
class FreenessReport:
    family: str
    n: int
    equal: bool
    first_mismatch: int | None  # exponent in 1/24 units
    mismatch_weight: int | None
    free_count: Fraction | None
    true_count: Fraction | None
    lhs: QSeries
    rhs: QSeries

    @property
    def deficit(self) -> Fraction | None:
        if self.free_count is None:
            return None
        return self.free_count - self.true_count

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "equal": self.equal,
            "firstMismatch": self.first_mismatch,
            "mismatchWeight": self.mismatch_weight,
            "freeCount": None if self.free_count is None else qseries.fraction_str(self.free_count),
            "trueCount": None if self.true_count is None else qseries.fraction_str(self.true_count),
            "deficit": None if self.deficit is None else qseries.fraction_str(self.deficit),
            "lhs": self.lhs.to_dict(),
            "rhs": self.rhs.to_dict(),
        }


def freeness_check(family: str, n: int, trunc: int) -> FreenessReport:
    """Vacuum branching function against the character of a free W-algebra.

    ``sp``: B_0 of spo(2n|1) against generators of weights 2, 4, ..., 2n;
    ``gl``: B_0 of gl(n|1) against generators of weights 2, 3, ..., 2n+1.
    ``lhs`` is the true character, ``rhs`` the free one.
    """
    if family == "sp":
        sys = rootsys.build_root_system("spo_odd", n, 0)
        weights = range(2, 2 * n + 1, 2)
    elif family == "gl":
        sys = rootsys.build_root_system("gl", n, 1)
        weights = range(2, 2 * n + 2)
    else:
        raise ValueError(f"unknown family {family!r}")
    pre = 2 * n
    true = branching(sys, sys.zero(), trunc)
    free = qseries.free_wtype(weights, trunc - pre).shift(pre)
    mm = true.first_mismatch(free)
    if mm is None:
        return FreenessReport(family, n, True, None, None, None, None, true, free)
    weight = Fraction(mm - pre, DEN)
    return FreenessReport(family, n, False, mm, int(weight) if weight.denominator == 1 else None,
                          free.coefficient(mm), true.coefficient(mm), true, free)


# -- brute-force oracle -----------------------------------------------------


@dataclass
class ChargeTable:
    group: str
    n: int
    m: int
    invariant: list
    sectors: list  # per weight: {charge tuple: dim}

    def to_dict(self) -> dict:
        return {
            "group": self.group, "n": self.n, "m": self.m,
            "invariant": self.invariant,
            "sectors": [{",".join(map(str, k)): v for k, v in sec.items()} for sec in self.sectors],
        }


def charge_graded_character(n: int, m: int, group: str, max_weight: int) -> ChargeTable:
    """Invariant dimensions and torus-charge sector sizes of A(nm) by weight."""
    with_flavor = ffva.GROUP_ALIASES.get(group) == "gl_gl"
    inv = ffva.invariant_dimensions(group, n, m, max_weight)
    sectors = [ffva.charge_sector_dimensions(n, m, w, with_flavor) for w in range(max_weight + 1)]
    return ChargeTable(group, n, m, inv, sectors)


def invariant_series(table: ChargeTable) -> QSeries:
    """Invariant dimensions as a q-series with the q^{nm/12} prefactor."""
    pre = 2 * table.n * table.m
    return QSeries.from_coefficients(table.invariant, pre + DEN * len(table.invariant), offset=pre)
