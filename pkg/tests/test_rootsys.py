import random
from fractions import Fraction

import pytest

from sympferm import rootsys as R

Q = Fraction
SYSTEMS = ["gl(1|1)", "gl(2|1)", "gl(1|2)", "gl(2|2)", "spo(2|1)", "spo(4|1)", "spo(2|2)",
           "spo(4|2)", "spo(2|3)", "spo(2|4)", "spo(4|4)", "spo(4|5)"]


def build(name):
    return R.build_root_system(name, 0, 0)


def test_spo_2_1():
    s = build("spo(2|1)")
    d1 = R.Weight.basis(1, 0, "d", 1)
    assert s.odd_pos == (d1,)
    assert s.isotropic == ()
    assert s.rho1 == d1 * Q(1, 2)


def test_gl_1_1():
    s = build("gl(1|1)")
    e_minus_d = R.Weight.basis(1, 1, "e", 1) - R.Weight.basis(1, 1, "d", 1)
    assert s.odd_pos == (e_minus_d,)
    assert s.isotropic == (e_minus_d,)
    assert s.rho0 == s.zero()


def test_spo_2_2():
    s = build("spo(2|2)")
    d, e = R.Weight.basis(1, 1, "d", 1), R.Weight.basis(1, 1, "e", 1)
    assert set(s.odd_pos) == {e + d, e - d}
    assert s.isotropic == (e - d,)


@pytest.mark.parametrize("name", SYSTEMS)
def test_structure_invariants(name):
    s = build(name)
    assert len(s.odd_pos) == R.closed_odd_count(s.kind, s.m, s.n)
    assert all(R.bilinear(b, b) == 0 for b in s.isotropic)
    assert len(s.isotropic) == min(s.m, s.n)
    assert s.rho == s.rho0 - s.rho1
    assert s.sharp_order <= s.weyl_order


def test_bilinear_form():
    d, e = R.Weight.basis(1, 1, "d", 1), R.Weight.basis(1, 1, "e", 1)
    assert R.bilinear(d, d) == 1
    assert R.bilinear(e, e) == -1
    assert R.bilinear(d, e) == 0
    with pytest.raises(ValueError):
        R.bilinear(d, R.Weight.basis(2, 0, "d", 1))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_odd_weyl_vector_norm(n):
    s = build(f"spo({2 * n}|1)")
    assert R.norm(s.rho1) == Q(n, 4)


def test_weyl_groups():
    s = build("spo(4|1)")
    elems = list(R.weyl_elements(s))
    assert len(elems) == 8 == s.weyl_order
    d1 = R.Weight.basis(2, 0, "d", 1)
    refl = [w for w in elems if w(d1) == -d1 and w(R.Weight.basis(2, 0, "d", 2)) == R.Weight.basis(2, 0, "d", 2)]
    assert len(refl) == 1 and refl[0].sign == -1
    assert len(list(R.weyl_elements(build("gl(1|1)")))) == 1


def test_dimensions():
    sp2 = build("spo(2|1)")
    for k in range(5):
        assert R.dim_irrep(sp2, sp2.weight([k])) == k + 1
    sp4 = build("spo(4|1)")
    assert R.dim_irrep(sp4, sp4.weight([1, 0])) == 4
    gl2 = build("gl(2|1)")
    assert R.dim_irrep(gl2, gl2.weight([1, 0], [0])) == 2


def test_dimension_via_dominant_weights_sum():
    # sp(4) irreps of small highest weight
    sp4 = build("spo(4|1)")
    dims = {lam.coords(): R.dim_irrep(sp4, lam) for lam in R.enumerate_dominant(sp4, 30)}
    assert dims[(1, 1)] == 5 and dims[(2, 0)] == 10


def test_enumerate_dominant():
    s = build("spo(2|1)")
    assert [w.coords()[0] for w in R.enumerate_dominant(s, 9)] == [0, 1, 2]
    g = build("gl(1|1)")
    ks = sorted(w.coords()[1] for w in R.enumerate_dominant(g, 8))
    assert ks == [-2, -1, 0, 1, 2]
    for w in R.enumerate_dominant(g, 8):
        assert w.coords()[0] == -w.coords()[1]
    sp4 = build("spo(4|1)")
    for w in R.enumerate_dominant(sp4, 20):
        a, b = w.coords()
        assert a >= b >= 0


def test_root_lattice():
    g = build("gl(2|1)")
    assert R.in_root_lattice(g, g.weight([1, 0], [-1]))
    assert not R.in_root_lattice(g, g.weight([1, 0], [0]))
    s = build("spo(2|2)")
    assert not R.in_root_lattice(s, s.weight([1], [0]))
    assert R.in_root_lattice(s, s.weight([1], [1]))
    assert R.in_root_lattice(build("spo(2|1)"), build("spo(2|1)").weight([1]))


def test_index_sets():
    g = build("gl(1|1)")
    assert R.enumerate_index_set(g, g.zero(), 1) == [((), (0,))]
    s = build("spo(2|1)")
    for k in range(4):
        assert R.enumerate_index_set(s, s.weight([k]), 100) == [((k,), ())]
    s22 = build("spo(2|2)")
    sets = R.enumerate_index_set(s22, s22.zero(), 4)
    assert ((0,), (0,)) in sets
    for ns, ls in sets:
        assert ns[0] >= 0


@pytest.mark.parametrize("name", SYSTEMS)
def test_denominator_identity(name):
    s = build(name)
    for p in R.sample_points(s, 5, seed=42):
        lhs, rhs = R.denominator_identity_eval(s, p)
        assert lhs == rhs


def test_denominator_identity_gl11_closed_form():
    s = build("gl(1|1)")
    for t in (Q(2), Q(3, 5), Q(-7, 2)):
        # e^{eps/2} = t, e^{delta/2} = 1
        lhs, rhs = R.denominator_identity_eval(s, ((Q(1),), (t,)))
        assert lhs == rhs == (1 / t) / (1 + 1 / t ** 2)


def test_denominator_identity_rejects_bad_points():
    # e^{-alpha} is a ratio of squares, so rational poles only come from zero coordinates
    s = build("gl(1|1)")
    with pytest.raises(ValueError):
        R.denominator_identity_eval(s, ((Q(1),), (Q(0),)))
    with pytest.raises(ValueError):
        R.denominator_identity_eval(s, ((Q(1), Q(2)), (Q(1),)))


def test_sample_points_are_reproducible():
    s = build("spo(4|2)")
    assert R.sample_points(s, 5, seed=7) == R.sample_points(s, 5, seed=7)
    assert R.random_point(s, random.Random(1)) == R.random_point(s, random.Random(1))


def test_unsupported_kind():
    with pytest.raises(ValueError):
        R.build_root_system("e8", 1, 1)
    with pytest.raises(ValueError):
        R.build_root_system("gl", 0, 0)
