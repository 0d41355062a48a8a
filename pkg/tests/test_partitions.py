import itertools
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kalvar.partitions import (
    Box,
    Partition,
    SkewShape,
    cauchy_terms,
    conjugate,
    partitions_in_box,
    schur_dim,
    skew_schur_dim,
    tilde_shift,
)


def brute_skew_ssyt(outer, inner, m):
    """Oracle: try every assignment of 1..m to the cells and keep the
    semistandard ones.  Exponential, only for tiny shapes."""
    outer, inner = Partition(outer), Partition(inner)
    spans = [(inner.part(r), outer[r]) for r in range(len(outer))]
    cells = [(r, c) for r, (a, b) in enumerate(spans) for c in range(a, b)]
    if not cells:
        return 1
    count = 0
    for vals in itertools.product(range(1, m + 1), repeat=len(cells)):
        grid = dict(zip(cells, vals))
        ok = True
        for (r, c), v in grid.items():
            if (r, c - 1) in grid and grid[(r, c - 1)] > v:
                ok = False
                break
            if (r - 1, c) in grid and grid[(r - 1, c)] >= v:
                ok = False
                break
        count += ok
    return count


@st.composite
def partitions(draw, max_len=5, max_part=6):
    n = draw(st.integers(0, max_len))
    parts = draw(
        st.lists(st.integers(1, max_part), min_size=n, max_size=n).map(
            lambda xs: sorted(xs, reverse=True)
        )
    )
    return Partition(parts)


class TestPartition:
    def test_trims_trailing_zeros(self):
        assert Partition((3, 1, 0, 0)) == Partition((3, 1))
        assert Partition(()) == Partition((0, 0))

    def test_rejects_increasing(self):
        with pytest.raises(ValueError):
            Partition((1, 2))

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            Partition((2, -1))

    def test_size_length_part(self):
        p = Partition((4, 2, 1))
        assert p.size == 7
        assert p.length == 3
        assert p.part(0) == 4
        assert p.part(5) == 0

    def test_padded(self):
        assert Partition((2, 1)).padded(4) == (2, 1, 0, 0)
        with pytest.raises(ValueError):
            Partition((2, 1)).padded(1)

    def test_conjugate_example(self):
        assert conjugate(Partition((3, 3, 3, 1, 1))) == Partition((5, 3, 3))
        assert Partition(()).conjugate() == Partition(())

    def test_conjugate_involution_exhaustive(self):
        for p in partitions_in_box(Box(6, 6)):
            assert p.conjugate().conjugate() == p

    @given(partitions())
    @settings(max_examples=60, deadline=None)
    def test_conjugate_involution_property(self, p):
        q = p.conjugate()
        assert q.conjugate() == p
        assert q.size == p.size

    def test_contains(self):
        assert Partition((3, 2)).contains(Partition((2, 2)))
        assert not Partition((3, 2)).contains(Partition((1, 1, 1)))
        assert Partition(()).contains(Partition(()))


class TestPartitionsInBox:
    def test_two_by_two_order(self):
        got = partitions_in_box(Box(2, 2))
        want = [
            Partition(()),
            Partition((1,)),
            Partition((2,)),
            Partition((1, 1)),
            Partition((2, 1)),
            Partition((2, 2)),
        ]
        assert got == want

    def test_counts_binomial(self):
        for a in range(7):
            for b in range(7):
                assert len(partitions_in_box(Box(a, b))) == comb(a + b, a)

    def test_size_filter(self):
        got = partitions_in_box(Box(2, 2), size=2)
        assert got == [Partition((2,)), Partition((1, 1))]

    def test_length_filter(self):
        got = partitions_in_box(Box(3, 2), length=3)
        assert all(p.length == 3 for p in got)
        assert len(got) == 4  # (1,1,1), (2,1,1), (2,2,1), (2,2,2)

    def test_containment_invariant(self):
        box = Box(3, 4)
        for p in partitions_in_box(box):
            assert p.fits(box)


class TestSchurDim:
    def test_known_values(self):
        assert schur_dim((2, 1), 3) == 8
        assert schur_dim((1, 1, 1), 3) == 1
        assert schur_dim((), 4) == 1

    def test_exterior_power_binomial(self):
        for m in range(1, 7):
            for k in range(m + 1):
                assert schur_dim((1,) * k, m) == comb(m, k)

    def test_symmetric_power_binomial(self):
        for m in range(1, 7):
            for k in range(7):
                assert schur_dim((k,), m) == comb(m + k - 1, k)

    def test_too_many_rows_is_zero(self):
        assert schur_dim((1, 1, 1), 2) == 0
        assert schur_dim((2, 2, 1), 2) == 0

    def test_negative_entries(self):
        # dual standard representation of GL(2), and the adjoint weight
        assert schur_dim((0, -1), 2) == 2
        assert schur_dim((1, -1), 2) == 3

    def test_rejects_non_decreasing(self):
        with pytest.raises(ValueError):
            schur_dim((1, 2), 3)

    def test_rejects_bad_padding(self):
        with pytest.raises(ValueError):
            schur_dim((0, -1), 3)

    def test_matches_tableau_count_in_box(self):
        # independent route: product formula vs direct tableau backtracking
        for lam in partitions_in_box(Box(4, 4)):
            for m in range(1, 5):
                counted = skew_schur_dim(SkewShape.of(lam), m)
                assert schur_dim(lam, m) == counted

    def test_matches_assignment_oracle_small(self):
        for lam in partitions_in_box(Box(3, 3)):
            if lam.size > 6:
                continue
            for m in range(1, 4):
                assert schur_dim(lam, m) == brute_skew_ssyt(lam, (), m)


class TestSkewSchurDim:
    def test_known_values(self):
        assert skew_schur_dim(SkewShape.of((2, 1), (1,)), 2) == 4
        assert skew_schur_dim(SkewShape.of((2, 2), (1,)), 2) == 2
        assert skew_schur_dim(SkewShape.of((), ()), 3) == 1

    def test_empty_inner_reduces_to_schur(self):
        for lam in partitions_in_box(Box(3, 3)):
            for m in range(1, 4):
                assert skew_schur_dim(SkewShape.of(lam), m) == schur_dim(lam, m)

    def test_matches_assignment_oracle(self):
        for lam in partitions_in_box(Box(3, 3)):
            for mu in partitions_in_box(Box(3, 3)):
                if not lam.contains(mu) or lam.size - mu.size > 6:
                    continue
                shape = SkewShape.of(lam, mu)
                for m in range(1, 4):
                    assert skew_schur_dim(shape, m) == brute_skew_ssyt(lam, mu, m)

    def test_single_value_iff_horizontal_strip(self):
        for lam in partitions_in_box(Box(4, 4)):
            for mu in partitions_in_box(Box(4, 4)):
                if not lam.contains(mu):
                    continue
                shape = SkewShape.of(lam, mu)
                want = 1 if shape.is_horizontal_strip() else 0
                assert skew_schur_dim(shape, 1) == want

    def test_rejects_non_contained(self):
        with pytest.raises(ValueError):
            SkewShape.of((1, 1), (2,))


class TestCauchyTerms:
    def test_degree_zero(self):
        assert cauchy_terms(0, 3, 3) == [(Partition(()), Partition(()))]

    def test_degree_two_two_by_two(self):
        got = cauchy_terms(2, 2, 2)
        assert got == [
            (Partition((2,)), Partition((1, 1))),
            (Partition((1, 1)), Partition((2,))),
        ]

    def test_box_constraints(self):
        for lam, lam_t in cauchy_terms(5, 2, 4):
            assert lam.fits(Box(2, 4))
            assert lam_t == lam.conjugate()

    def test_dimension_identity(self):
        # sum of products of paired Schur dimensions = binomial(ef, p)
        for e in range(1, 5):
            for f in range(1, 5):
                for p in range(e * f + 1):
                    total = sum(
                        schur_dim(lam, e) * schur_dim(lam_t, f)
                        for lam, lam_t in cauchy_terms(p, e, f)
                    )
                    assert total == comb(e * f, p)


class TestTildeShift:
    def test_examples(self):
        assert tilde_shift(Partition((3, 1, 1)), 3) == Partition((2,))
        assert tilde_shift(Partition((1,)), 1) == Partition(())

    def test_size_drops_by_length(self):
        for lam in partitions_in_box(Box(3, 3), length=3):
            assert tilde_shift(lam, 3).size == lam.size - 3

    def test_rejects_wrong_length(self):
        with pytest.raises(ValueError):
            tilde_shift(Partition((2, 1)), 3)
        with pytest.raises(ValueError):
            tilde_shift(Partition(()), 1)

    def test_containment_preserved(self):
        for lam in partitions_in_box(Box(3, 3), length=3):
            for mu in partitions_in_box(Box(3, 3), length=3):
                if lam.contains(mu):
                    assert tilde_shift(lam, 3).contains(tilde_shift(mu, 3))

    def test_transposed_skew_shape_unchanged(self):
        # stripping the shared first column does not change the skew
        # diagram of the transposes, so the tableau counts agree
        for lam in partitions_in_box(Box(3, 3), length=3):
            for mu in partitions_in_box(Box(3, 3), length=3):
                if not lam.contains(mu):
                    continue
                before = SkewShape.of(lam.conjugate(), mu.conjugate())
                lam2, mu2 = tilde_shift(lam, 3), tilde_shift(mu, 3)
                after = SkewShape.of(lam2.conjugate(), mu2.conjugate())
                for m in range(1, 4):
                    assert skew_schur_dim(before, m) == skew_schur_dim(after, m)
