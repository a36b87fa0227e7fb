#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
分拆基本运算测试
"""

import hypothesis.strategies as st
import pytest
from hypothesis import given

from src.errors import LevelTooSmall, PartitionParseError, RankMismatch
from src.partitions import Partition, check_ranks, normalize_nonneg


@st.composite
def partitions(draw, rank=None, low=-4, high=4):
    r = draw(st.integers(1, 4)) if rank is None else rank
    parts = draw(st.lists(st.integers(low, high), min_size=r, max_size=r))
    return Partition(sorted(parts, reverse=True))


def P(*parts):
    return Partition(parts)


class TestParse:
    def test_parse_basic(self):
        assert Partition.parse("3,1,-2") == P(3, 1, -2)
        assert Partition.parse(" 2, 2 ,0 ") == P(2, 2, 0)

    def test_parse_reports_first_bad_index(self):
        with pytest.raises(PartitionParseError) as info:
            Partition.parse("3,1,2,5")
        assert info.value.index == 2

    def test_parse_rejects_non_integer(self):
        with pytest.raises(PartitionParseError) as info:
            Partition.parse("1,x")
        assert info.value.index == 1

    def test_constructor_rejects_increasing(self):
        with pytest.raises(PartitionParseError):
            P(0, 1)

    def test_str_roundtrip_format(self):
        assert str(P(3, 1, -2)) == "3,1,-2"


class TestOperations:
    def test_size(self):
        assert P(0, 0, 0).size() == 0
        assert P(3, 1, 0).size() == 4
        assert P(1, -2).size() == -1

    def test_dual(self):
        assert P(2, 1).dual() == P(-1, -2)
        assert P(0, 0, 0).dual() == P(0, 0, 0)

    def test_block_form(self):
        assert P(3, 3, 1).block_form().blocks == ((3, 2), (1, 1))
        assert P(0, 0).block_form().blocks == ((0, 2),)
        assert P(2, 1, 0).block_form().blocks == ((2, 1), (1, 1), (0, 1))
        assert P(3, 3, 1).block_form().expand() == P(3, 3, 1)

    def test_spread(self):
        assert P(3, 1, 0).spread() == 3
        assert P(2, 2, 2).spread() == 0
        assert P(1, -2).spread() == 3

    def test_weights(self):
        assert P(3, 3, 1).weights() == (0, 2)
        assert P(2, 2).weights() == (0,)
        assert P(4, 2, 1).weights() == (0, 2, 3)

    def test_level_shift(self):
        assert P(3, 1).level_shift(5) == P(5, 3)
        assert P(1, 1).dual().level_shift(5) == P(5, 5)

    def test_level_shift_requires_level_above_spread(self):
        with pytest.raises(LevelTooSmall):
            P(3, 0).level_shift(3)

    def test_gl_dimension(self):
        assert P(0, 0, 0).gl_dimension() == 1
        assert P(1, 0).gl_dimension() == 2
        assert P(2, 1, 0).gl_dimension() == 8
        assert P(1, 1).gl_dimension() == 1

    def test_normalize_nonneg(self):
        shifted, t = normalize_nonneg([P(1, 0), P(1, -2)])
        assert shifted == [P(3, 2), P(3, 0)] and t == 2
        shifted, t = normalize_nonneg([P(2, 1)])
        assert shifted == [P(2, 1)] and t == 0

    def test_check_ranks(self):
        assert check_ranks([P(1, 0), P(0, 0)]) == 2
        with pytest.raises(RankMismatch):
            check_ranks([P(1, 0), P(1, 0, 0)])


class TestProperties:
    @given(partitions())
    def test_dual_is_involution(self, p):
        assert p.dual().dual() == p
        assert p.dual().size() == -p.size()

    @given(partitions(), st.integers(-5, 5))
    def test_shift_keeps_spread_and_dimension(self, p, c):
        assert p.shift(c).spread() == p.spread()
        assert p.shift(c).gl_dimension() == p.gl_dimension()

    @given(partitions(), st.integers(1, 6))
    def test_level_shift_first_part_is_level(self, p, extra):
        k = p.spread() + extra
        shifted = p.level_shift(k)
        assert shifted[0] == k
        assert shifted.is_nonnegative()
        assert shifted.spread() == p.spread()

    @given(partitions())
    def test_dual_has_same_dimension(self, p):
        assert p.dual().gl_dimension() == p.gl_dimension()
