import random
from fractions import Fraction

import sympy
from hypothesis import given, settings, strategies as st

from sympferm import linalg

matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r)))


def as_sparse(row):
    return {j: Fraction(v) for j, v in enumerate(row) if v}


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_rank_matches_sympy(rows):
    assert linalg.rank(as_sparse(r) for r in rows) == sympy.Matrix(rows).rank()


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_nullspace_is_kernel(rows):
    ncols = len(rows[0])
    basis = linalg.nullspace([as_sparse(r) for r in rows], list(range(ncols)))
    assert len(basis) == len(sympy.Matrix(rows).nullspace())
    for x in basis:
        for r in rows:
            assert sum(r[j] * x.get(j, 0) for j in range(ncols)) == 0


@settings(max_examples=80, deadline=None)
@given(matrices, st.integers(0, 10**6))
def test_solve_reconstructs_target(rows, seed):
    cols = {f"c{j}": as_sparse(col) for j, col in enumerate(zip(*rows))}
    rng = random.Random(seed)
    weights = {k: Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for k in cols}
    target: dict = {}
    for k, col in cols.items():
        for i, v in col.items():
            target[i] = target.get(i, 0) + weights[k] * v
    target = {i: v for i, v in target.items() if v}
    sol = linalg.solve(cols, target)
    assert sol is not None
    recon: dict = {}
    for k, c in sol.items():
        for i, v in cols[k].items():
            recon[i] = recon.get(i, 0) + c * v
    assert {i: v for i, v in recon.items() if v} == target


def test_solve_reports_inconsistency():
    assert linalg.solve([{0: 1, 1: 1}], {0: 1}) is None


def test_kernel_dimension():
    assert linalg.kernel_dimension([{0: 1, 1: 1}, {0: 2, 1: 2}], 3) == 2
