"""Tests for the finite-field verification layer: random points,
graded rank computations, minimality and Hilbert checks."""

import random
from math import comb

import numpy as np
import pytest

from kalvar.polysym import (
    BlockLayout,
    PrimeField,
    all_top_minors,
    minor,
    reduced_kalman_matrix,
)
from kalvar.resolution import chain_resolution, hilbert_numerator
from kalvar.verify import (
    ALTERNATE_MODULUS,
    DEFAULT_MODULUS,
    KalmanPoint,
    MonomialCapExceeded,
    PrimeFieldConfig,
    SpanEliminator,
    _generator_rows,
    graded_ideal_dimension,
    hypersurface_check,
    minimality_report,
    minors_vanishing_check,
    monomial_count,
    monomials_of_degree,
    random_kalman_point,
    truncated_hilbert,
    truncated_hilbert_check,
    vanishing_test,
)


def dense_rank_mod_p(rows: list[dict[int, int]], ncols: int, p: int) -> int:
    """Plain dense Gaussian elimination, used as an oracle for the
    sparse eliminator."""
    if not rows:
        return 0
    m = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, r in enumerate(rows):
        for c, v in r.items():
            m[i, c] = v % p
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(rows)):
            if m[i, col] % p:
                piv = i
                break
        if piv is None:
            continue
        m[[rank, piv]] = m[[piv, rank]]
        inv = pow(int(m[rank, col]), p - 2, p)
        m[rank] = m[rank] * inv % p
        for i in range(len(rows)):
            if i != rank and m[i, col]:
                m[i] = (m[i] - m[i, col] * m[rank]) % p
        rank += 1
        if rank == len(rows):
            break
    return rank


def minor_rows_at_degree(d: int, n: int, degree: int, p: int, min_mult: int = 0):
    gf = PrimeField(p)
    gens = [poly.map_domain(BlockLayout(d, n).ring(gf)) for _, poly in all_top_minors(d, n)]
    cols = monomials_of_degree(n * n, degree)
    col_index = {m: i for i, m in enumerate(cols)}
    rows = list(_generator_rows(gens, degree, col_index, n * n, min_mult, 10**6))
    return rows, len(cols)


class TestRandomPoint:
    def test_eigen_residual_zero(self):
        gf = PrimeField(DEFAULT_MODULUS)
        rng = random.Random(3)
        for d, n in [(1, 2), (1, 4), (2, 3), (2, 5), (3, 4), (4, 6)]:
            for _ in range(10):
                pt = random_kalman_point(d, n, gf, rng)
                assert pt.eigen_residual() == (0,) * n
                assert any(pt.eigenvector)

    def test_d1_first_column_structure(self):
        # one-dimensional distinguished subspace: first column must be
        # the eigenvalue on top of zeros
        gf = PrimeField(101)
        rng = random.Random(7)
        for _ in range(20):
            pt = random_kalman_point(1, 4, gf, rng)
            col = [pt.entries[i][0] for i in range(4)]
            assert col == [pt.eigenvalue, 0, 0, 0]

    def test_flatten_matches_layout(self):
        gf = PrimeField(101)
        rng = random.Random(1)
        pt = random_kalman_point(2, 3, gf, rng)
        flat = pt.flatten()
        layout = BlockLayout(2, 3)
        for i in range(1, 4):
            for j in range(1, 4):
                assert flat[layout.var_index(i, j)] == pt.entries[i - 1][j - 1]

    def test_deterministic_given_seed(self):
        cfg = PrimeFieldConfig(seed=5)
        a = random_kalman_point(2, 4, cfg.field(), cfg.rng())
        b = random_kalman_point(2, 4, cfg.field(), cfg.rng())
        assert a == b

    def test_config_validates_modulus(self):
        with pytest.raises(ValueError):
            PrimeFieldConfig(modulus=32001)


class TestVanishing:
    def test_minors_vanish_small_grid(self):
        for d, n in [(1, 3), (2, 3), (2, 4), (3, 4)]:
            report = minors_vanishing_check(d, n, trials=25)
            assert report.passed, (d, n, report.details[:3])

    def test_coordinate_function_does_not_vanish(self):
        # sensitivity control: a random coordinate is not identically
        # zero on the locus, so the harness can actually fail
        layout = BlockLayout(2, 4)
        ring = layout.ring(PrimeField(DEFAULT_MODULUS))
        x11 = ring.var(layout.var_index(1, 1))
        report = vanishing_test([x11], 2, 4, trials=20)
        assert not report.passed
        assert any(f["kind"] == "nonvanishing" for f in report.details)

    def test_perturbed_minor_detected(self):
        gf = PrimeField(DEFAULT_MODULUS)
        layout = BlockLayout(2, 4)
        ring = layout.ring(gf)
        good = minor(reduced := reduced_kalman_matrix(2, 4, gf), (0, 1), (0, 1))
        bad = good + ring.var(0) * ring.var(0)
        report = vanishing_test([bad], 2, 4, trials=20)
        assert not report.passed

    def test_hypersurface_check_degrees(self):
        for d in (2, 3):
            report = hypersurface_check(d, trials=30)
            assert report.passed, report.details[:3]
            assert report.data["degree"] == d * (d + 1) // 2


class TestMonomials:
    def test_counts_and_order(self):
        ms = monomials_of_degree(3, 2)
        assert len(ms) == comb(4, 2) == monomial_count(3, 2)
        assert ms[0] == (2, 0, 0)
        assert ms[-1] == (0, 0, 2)
        assert len(set(ms)) == len(ms)

    def test_degree_zero(self):
        assert monomials_of_degree(4, 0) == [(0, 0, 0, 0)]

    def test_cap_enforced(self):
        with pytest.raises(MonomialCapExceeded) as exc:
            monomials_of_degree(16, 6, cap=1000)
        assert exc.value.required == comb(21, 6)
        assert exc.value.cap == 1000


class TestEliminator:
    def test_rank_matches_dense_oracle(self):
        rows, ncols = minor_rows_at_degree(2, 4, 3, DEFAULT_MODULUS)
        elim = SpanEliminator(DEFAULT_MODULUS)
        for r in rows:
            elim.absorb(r)
        assert elim.rank == dense_rank_mod_p(rows, ncols, DEFAULT_MODULUS)

    def test_rank_invariant_under_row_order(self):
        rows, _ = minor_rows_at_degree(2, 4, 3, DEFAULT_MODULUS)
        base = SpanEliminator(DEFAULT_MODULUS)
        for r in rows:
            base.absorb(r)
        shuffled = list(rows)
        random.Random(9).shuffle(shuffled)
        other = SpanEliminator(DEFAULT_MODULUS)
        for r in shuffled:
            other.absorb(r)
        assert base.rank == other.rank

    def test_dependent_rows_do_not_raise_rank(self):
        p = 101
        elim = SpanEliminator(p)
        assert elim.absorb({0: 1, 2: 3})
        assert elim.absorb({1: 5})
        assert not elim.absorb({0: 2, 1: 5, 2: 6})
        assert elim.rank == 2

    def test_zero_row(self):
        elim = SpanEliminator(101)
        assert not elim.absorb({})
        assert not elim.absorb({3: 101})
        assert elim.rank == 0


class TestGradedDimension:
    def test_single_generator_dims(self):
        gf = PrimeField(DEFAULT_MODULUS)
        quad = minor(reduced_kalman_matrix(2, 4, gf), (0, 1), (0, 1))
        q = quad.degree()
        assert graded_ideal_dimension([quad], q) == 1
        assert graded_ideal_dimension([quad], q + 1) == 16
        assert graded_ideal_dimension([quad], q - 1) == 0

    def test_frozen_2_4_degree_3(self):
        # sixteen quadric multiples plus four cubic minors, one linear
        # relation among them
        gens = [p for _, p in all_top_minors(2, 4)]
        assert graded_ideal_dimension(gens, 3) == 19

    def test_prime_invariance(self):
        gens = [p for _, p in all_top_minors(2, 4)]
        a = graded_ideal_dimension(gens, 3, PrimeFieldConfig(modulus=DEFAULT_MODULUS))
        b = graded_ideal_dimension(gens, 3, PrimeFieldConfig(modulus=ALTERNATE_MODULUS))
        assert a == b == 19

    def test_empty_generators(self):
        assert graded_ideal_dimension([], 3) == 0

    def test_monotone_quotient(self):
        # quotient dimensions never go negative and start at 1
        gens = [p for _, p in all_top_minors(2, 3)]
        hs = truncated_hilbert(gens, 2, 3, 4)
        assert hs[0] == 1
        assert all(h >= 0 for h in hs)


class TestTruncatedHilbert:
    def test_2_3_matches_series(self):
        report = truncated_hilbert_check(2, 3, 5)
        assert report.passed, report.details
        assert report.data["measured"][:4] == [1, 9, 45, 164]

    def test_2_4_matches_series(self):
        report = truncated_hilbert_check(2, 4, 4)
        assert report.passed, report.details
        expected = hilbert_numerator(chain_resolution(1, 2, 4)).expand(4)
        assert report.data["expected"] == expected

    def test_detects_wrong_generators(self):
        # quadric alone does not cut out the variety, so its quotient
        # dimensions must exceed the predicted ones somewhere
        gf = PrimeField(DEFAULT_MODULUS)
        quad = minor(reduced_kalman_matrix(2, 4, gf), (0, 1), (0, 1))
        measured = truncated_hilbert([quad], 2, 4, 3)
        assert measured != hilbert_numerator(chain_resolution(1, 2, 4)).expand(3)


class TestMinimality:
    def test_2_4_profile(self):
        report = minimality_report(2, 4, 4)
        assert report.passed, report.details
        by_degree = {e["degree"]: e for e in report.data["per_degree"]}
        assert by_degree[2]["new_generators"] == 1
        assert by_degree[3]["new_generators"] == 3
        assert by_degree[3]["ideal_dim"] == 19
        assert by_degree[3]["from_lower"] == 16
        assert by_degree[4]["new_generators"] == 0

    def test_redundant_generator_invariance(self):
        # dropping the top-degree minor must not change the ideal: the
        # remaining five generate everything the six do
        gf = PrimeField(DEFAULT_MODULUS)
        ring = BlockLayout(2, 4).ring(gf)
        gens = [p.map_domain(ring) for _, p in all_top_minors(2, 4)]
        lower = [g for g in gens if g.degree() < 4]
        assert len(lower) == 5
        full = minimality_report(2, 4, 4)
        trimmed = minimality_report(2, 4, 4, generators=lower)
        for a, b in zip(full.data["per_degree"], trimmed.data["per_degree"]):
            assert a["ideal_dim"] == b["ideal_dim"]
        assert trimmed.passed

    def test_3_4_single_sextic(self):
        report = minimality_report(3, 4, 6)
        assert report.passed, report.details
        by_degree = {e["degree"]: e for e in report.data["per_degree"]}
        for e in range(1, 6):
            assert by_degree[e]["new_generators"] == 0
        assert by_degree[6]["new_generators"] == 1

    def test_second_prime_agrees(self):
        a = minimality_report(2, 4, 3, PrimeFieldConfig(modulus=DEFAULT_MODULUS))
        b = minimality_report(2, 4, 3, PrimeFieldConfig(modulus=ALTERNATE_MODULUS))
        assert [e["ideal_dim"] for e in a.data["per_degree"]] == [
            e["ideal_dim"] for e in b.data["per_degree"]
        ]
