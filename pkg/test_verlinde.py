#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Verlinde 引擎测试
小规模实例，和 LR 斜表计数对照
"""

import json

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from src.backends import ExactBackend, FloatBackend
from src.errors import (ComputationError, InvalidParabolicType, LevelTooSmall, NotRational,
                        ResidualTooLarge, SizeMismatch)
from src.lr_oracle import candidate_targets, lr_tableaux_count
from src.partitions import Partition
from src.schur import EvaluationPoint, schur_product_eval
from src.verlinde import (ComputeOptions, ParabolicType, SummationVector, build_type,
                          choose_level, enumerate_vectors, invariant_dimension, lr_coefficient,
                          pieri_check, tensor_multiplicity, verlinde_decompose, verlinde_sum,
                          verlinde_term)


def P(*parts):
    return Partition(parts)


EXACT = ComputeOptions(backend='exact', record_timing=False)
FLOAT = ComputeOptions(backend='float', record_timing=False)


class TestLevel:
    def test_minimal_level(self):
        assert choose_level([P(1, 0), P(1, 0), P(1, 1).dual()]) == 5
        assert choose_level([P(2, 2), P(0, 0), P(-1, -1)]) == 1
        assert choose_level([P(3, 1, 0), P(2, 2, 2), P(0, -1, -2)]) == 16

    def test_explicit_level_too_small(self):
        with pytest.raises(LevelTooSmall) as info:
            lr_coefficient(P(1, 0), P(1, 0), P(1, 1), ComputeOptions(level=4))
        assert info.value.required == 5


class TestParabolicType:
    def test_build_two_factors(self):
        sigma = build_type([P(1, 0), P(1, 0)], P(1, 1), 5)
        assert sigma.shifted == (P(5, 4), P(5, 4), P(5, 5))
        assert sigma.sigma_size == 28
        assert sigma.order == 7
        assert sigma.term_count() == 6

    def test_build_pads_with_zero_partition(self):
        sigma = build_type([P(0, 0)], P(0, 0), 1)
        assert sigma.shifted == (P(1, 1), P(1, 1), P(1, 1))
        assert sigma.sigma_size == 6

    def test_size_mismatch(self):
        with pytest.raises(SizeMismatch):
            build_type([P(1, 0), P(1, 0)], P(2, 1), 5)

    def test_sigma_size_not_divisible_by_rank(self):
        with pytest.raises(InvalidParabolicType) as info:
            ParabolicType(2, 5, (P(5, 4), P(5, 4), P(5, 4)), 27)
        assert isinstance(info.value, ComputationError)
        assert info.value.exit_code == 3

    def test_shifted_partition_must_start_at_level(self):
        with pytest.raises(InvalidParabolicType):
            ParabolicType(2, 5, (P(5, 4), P(4, 4), P(5, 5)), 27)
        with pytest.raises(InvalidParabolicType):
            ParabolicType(2, 5, (P(5, 4), P(5, 5)), 19)

    def test_describe(self):
        info = build_type([P(1, 0), P(1, 0)], P(1, 1), 5).describe()
        assert info['condition_ratio'] == '2/5'
        assert info['points'][0]['multiplicities'] == [1, 1]
        assert info['points'][0]['weights'] == [0, 1]
        assert info['points'][2]['partition'] == '-1,-1'


class TestSummationVectors:
    def test_rank_two(self):
        vectors = [v.v for v in enumerate_vectors(2, 5)]
        assert vectors == [(6, 0), (5, 0), (4, 0), (3, 0), (2, 0), (1, 0)]

    def test_rank_one(self):
        assert [v.v for v in enumerate_vectors(1, 9)] == [(0,)]

    def test_rank_three_count(self):
        assert len(list(enumerate_vectors(3, 2))) == 6

    @given(st.integers(1, 4), st.integers(1, 6))
    def test_all_valid_and_distinct(self, rank, level):
        vectors = list(enumerate_vectors(rank, level))
        assert len(set(vectors)) == len(vectors)
        assert all(v.is_valid(rank, level) for v in vectors)

    def test_invalid_vector(self):
        assert not SummationVector((3, 3, 0)).is_valid(3, 5)
        assert not SummationVector((8, 0)).is_valid(2, 5)


class TestTerm:
    def test_exact_and_float_terms_agree(self):
        sigma = build_type([P(1, 0), P(1, 0)], P(1, 1), 5)
        vector = SummationVector((1, 0))
        exact = verlinde_term(sigma, vector, ExactBackend(sigma.order))
        approx = verlinde_term(sigma, vector, FloatBackend(sigma.order))
        assert abs(exact.to_complex() - approx) < 1e-9

    @pytest.mark.parametrize('factors,target', [
        ([P(1, 0, 0), P(1, 1, 0)], P(2, 1, 0)),
        ([P(1, 0), P(1, 0), P(1, 0)], P(2, 1)),
    ])
    def test_term_matches_literal_definition(self, factors, target):
        sigma = build_type(factors, target, choose_level(list(factors) + [target.dual()]))
        backend = ExactBackend(sigma.order)
        for vector in enumerate_vectors(sigma.rank, sigma.level):
            v = vector.v
            expected = backend.root(-(sigma.sigma_size // sigma.rank) * vector.total())
            for i in range(len(v)):
                for j in range(i + 1, len(v)):
                    expected = expected * backend.two_sin_sq(v[i] - v[j])
            point = EvaluationPoint.roots_of_unity(backend, v)
            expected = expected * schur_product_eval(sigma, point, backend)
            assert verlinde_term(sigma, vector, backend) == expected

    @pytest.mark.parametrize('target', [P(1, 1), P(2, 0)])
    def test_reflected_vectors_give_conjugate_terms(self, target):
        level = choose_level([P(1, 0), P(1, 0), target.dual()])
        sigma = build_type([P(1, 0), P(1, 0)], target, level)
        backend = ExactBackend(sigma.order)
        for a in range(1, sigma.order):
            term = verlinde_term(sigma, SummationVector((a, 0)), backend)
            mirror = verlinde_term(sigma, SummationVector((sigma.order - a, 0)), backend)
            assert mirror == term.conjugate()

    def test_reflection_at_level_five(self):
        sigma = build_type([P(1, 0), P(1, 0)], P(1, 1), 5)
        backend = ExactBackend(7)
        terms = {v.v[0]: verlinde_term(sigma, v, backend) for v in enumerate_vectors(2, 5)}
        assert all(terms[7 - a] == terms[a].conjugate() for a in range(1, 7))

    def test_sum_is_integer_multiple_of_normalizer(self):
        # ν*=(0,-2) 的跨度为 2，S=4，最小层级是 9
        with pytest.raises(LevelTooSmall):
            build_type([P(1, 0), P(1, 0)], P(2, 0), 5)
        sigma = build_type([P(1, 0), P(1, 0)], P(2, 0), 9)
        result = verlinde_sum(sigma, EXACT)
        assert result.coefficient == 1 and result.term_count == 10


class TestCoefficients:
    @pytest.mark.parametrize('lam,mu,nu,expected', [
        (P(1, 0), P(1, 0), P(1, 1), 1),
        (P(1, 0), P(1, 0), P(2, 0), 1),
        (P(1, 0), P(1, 0), P(2, 1), 0),
        (P(2, 1), P(1, 1), P(3, 2), 1),
        (P(1, 0, 0), P(1, 1, 0), P(1, 1, 1), 1),
    ])
    def test_examples(self, lam, mu, nu, expected):
        assert lr_coefficient(lam, mu, nu, EXACT).coefficient == expected

    def test_two_one_squared(self):
        result = lr_coefficient(P(2, 1, 0), P(2, 1, 0), P(3, 2, 1), EXACT)
        assert result.coefficient == 2
        assert result.level_used == 19
        assert result.term_count == 210

    def test_negative_parts(self):
        lam, mu, nu = P(1, -1), P(0, -1), P(1, -2)
        assert lr_coefficient(lam, mu, nu, EXACT).coefficient == lr_tableaux_count(lam, mu, nu)

    @settings(max_examples=15, deadline=None)
    @given(st.lists(st.integers(-1, 2), min_size=2, max_size=2),
           st.lists(st.integers(-1, 2), min_size=2, max_size=2),
           st.data())
    def test_matches_tableaux_rank_two(self, a, b, data):
        lam = Partition(sorted(a, reverse=True))
        mu = Partition(sorted(b, reverse=True))
        nu = data.draw(st.sampled_from(list(candidate_targets(lam, mu))))
        assert lr_coefficient(lam, mu, nu, EXACT).coefficient == lr_tableaux_count(lam, mu, nu)

    def test_level_independence(self):
        lam, mu, nu = P(2, 1), P(1, 0), P(2, 2)
        k_min = choose_level([lam, mu, nu.dual()])
        values = {lr_coefficient(lam, mu, nu, ComputeOptions(level=level)).coefficient
                  for level in (k_min, k_min + 2, k_min + 5)}
        assert values == {1}

    def test_float_backend(self):
        result = lr_coefficient(P(2, 1), P(1, 0), P(3, 1), FLOAT)
        assert result.coefficient == 1
        assert result.float_residual < 1e-6


class TestTensorMultiplicity:
    def test_single_factor(self):
        assert tensor_multiplicity([P(2, 1)], P(2, 1), EXACT).coefficient == 1
        assert tensor_multiplicity([P(2, 1)], P(3, 0), EXACT).coefficient == 0

    def test_size_mismatch_is_zero(self):
        result = tensor_multiplicity([P(1, 0), P(1, 0)], P(3, 0), EXACT)
        assert result.coefficient == 0 and result.level_used is None

    def test_three_factors(self):
        assert tensor_multiplicity([P(1, 0), P(1, 0), P(1, 0)], P(2, 1), EXACT).coefficient == 2

    def test_rank_three_pair(self):
        assert tensor_multiplicity([P(1, 0, 0), P(1, 1, 0)], P(2, 1, 0), EXACT).coefficient == 1

    def test_rank_one(self):
        assert tensor_multiplicity([P(2), P(-3)], P(-1), EXACT).coefficient == 1

    def test_invariant_dimension(self):
        assert invariant_dimension([P(1, 0), P(0, -1)], EXACT).coefficient == 1
        assert invariant_dimension([P(1, 0), P(1, 0)], EXACT).coefficient == 0


class TestDecomposition:
    def test_verlinde_decompose(self):
        table = verlinde_decompose(P(1, 0), P(1, 0), EXACT)
        assert table.entries == {P(2, 0): 1, P(1, 1): 1}

    @pytest.mark.parametrize('lam,s', [(P(1, 0), 1), (P(2, 2, 0), 1), (P(1, 1, 1), 3), (P(2, 1, 0), 2)])
    def test_pieri(self, lam, s):
        ok, expected, actual = pieri_check(lam, s, EXACT)
        assert ok
        assert set(actual.entries.values()) == {1}


class TestReduction:
    def test_workers_do_not_change_output(self):
        lam, mu, nu = P(2, 1), P(1, 0), P(2, 2)
        serial = lr_coefficient(lam, mu, nu, ComputeOptions(record_timing=False, chunk_size=2))
        parallel = lr_coefficient(lam, mu, nu, ComputeOptions(record_timing=False, chunk_size=2, workers=2))
        assert json.dumps(serial.to_dict()) == json.dumps(parallel.to_dict())

    def test_result_schema(self):
        data = lr_coefficient(P(1, 0), P(1, 0), P(1, 1), EXACT).to_dict()
        assert list(data) == ['coefficient', 'method', 'backend', 'level', 'terms', 'elapsed_ms', 'inputs']
        assert data['elapsed_ms'] is None
        assert data['inputs'] == {'lambda': '1,0', 'mu': '1,0', 'nu': '1,1'}

    def test_timing_recorded(self):
        result = lr_coefficient(P(1, 0), P(1, 0), P(1, 1))
        assert result.elapsed is not None and result.elapsed >= 0


class TestPhaseFault:
    def test_exact_backend_detects_shifted_phase(self):
        with pytest.raises(NotRational):
            lr_coefficient(P(1, 0), P(1, 0), P(1, 1), ComputeOptions(phase_offset=1))

    def test_float_backend_reports_residual(self):
        with pytest.raises(ResidualTooLarge) as info:
            lr_coefficient(P(1, 0), P(1, 0), P(1, 1), ComputeOptions(backend='float', phase_offset=1))
        assert info.value.result is not None
