#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
精确后端
在 Q(ζ_N) 中计算 (N = r + k)，小行列式按余子式展开，大行列式用 Bareiss 消元，整数性是硬断言
"""

import logging
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .base_backend import BaseBackend
from ..cyclotomic import (CyclotomicNumber, inverse_root_difference, root_of_unity, sine_weight_pair,
                          two_sin_sq)
from ..errors import DivisionByZero, NonIntegerResult

logger = logging.getLogger(__name__)

# 不超过该阶的行列式用余子式展开
COFACTOR_MAX_SIZE = 4
# 单位根交错式按置换展开的最大阶 (5! = 120 项)
LEIBNIZ_MAX_SIZE = 5


@lru_cache(maxsize=None)
def _signed_permutations(n: int) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
    """(σ, sgn σ)，sgn 由逆序数奇偶得到"""
    result = []
    for perm in permutations(range(n)):
        inversions = sum(1 for a, b in combinations(perm, 2) if a > b)
        result.append((perm, -1 if inversions % 2 else 1))
    return tuple(result)


class ExactBackend(BaseBackend):
    """Q(ζ_N) 精确后端；未设置阶时退化为 Q 上的有理数运算"""

    name = 'exact'

    def __init__(self, order: Optional[int] = None, config: Optional[Dict] = None):
        super().__init__(order, config)

    def zero(self) -> Any:
        if self.order is None:
            return Fraction(0)
        return CyclotomicNumber.zero(self.order)

    def one(self) -> Any:
        if self.order is None:
            return Fraction(1)
        return CyclotomicNumber.one(self.order)

    def root(self, exponent: int) -> CyclotomicNumber:
        return root_of_unity(self.require_order(), exponent)

    def two_sin_sq(self, m: int) -> CyclotomicNumber:
        return two_sin_sq(self.require_order(), m)

    def power(self, x: Any, exponent: int) -> Any:
        if isinstance(x, CyclotomicNumber):
            return x ** exponent
        return Fraction(x) ** exponent

    def determinant(self, matrix: Sequence[Sequence[Any]]) -> Any:
        """r ≤ COFACTOR_MAX_SIZE 时按首行余子式展开 (不做除法)，更大时用 Bareiss 消元"""
        self.stats.determinants += 1
        m = [[x if isinstance(x, CyclotomicNumber) else Fraction(x) for x in row] for row in matrix]
        n = len(m)
        if n == 0:
            return self.one()
        if any(len(row) != n for row in m):
            raise ValueError("行列式需要方阵")
        if n <= COFACTOR_MAX_SIZE:
            return self._cofactor(m)
        return self._bareiss(m)

    def _cofactor(self, m: List[List[Any]]) -> Any:
        """自底向上按列子集记忆 k×k 子式，只用加减乘"""
        n = len(m)
        # minors[cols]: 末 len(cols) 行与列子集 cols 构成的子式
        minors: Dict[Tuple[int, ...], Any] = {(j,): m[n - 1][j] for j in range(n)}
        for size in range(2, n + 1):
            row = m[n - size]
            layer: Dict[Tuple[int, ...], Any] = {}
            for cols in combinations(range(n), size):
                total = None
                for position, j in enumerate(cols):
                    entry = row[j]
                    if entry == 0:
                        continue
                    rest = minors[cols[:position] + cols[position + 1:]]
                    term = entry * rest
                    if position % 2:
                        term = -term
                    total = term if total is None else total + term
                layer[cols] = self.zero() if total is None else total
            minors = layer
        return minors[tuple(range(n))]

    def _bareiss(self, m: List[List[Any]]) -> Any:
        """Bareiss 无分数消元，每步除以上一个主元 (整除)"""
        n = len(m)
        sign = 1
        prev_inv = None
        for k in range(n - 1):
            if m[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
                if swap is None:
                    return self.zero()
                m[k], m[swap] = m[swap], m[k]
                sign = -sign
            pivot = m[k][k]
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    value = m[i][j] * pivot - m[i][k] * m[k][j]
                    m[i][j] = value if prev_inv is None else value * prev_inv
            if k < n - 2:
                prev_inv = self.inverse(pivot)
        det = m[n - 1][n - 1]
        return det if sign > 0 else -det

    def alternant_at_roots(self, exponents: Sequence[Sequence[int]]) -> CyclotomicNumber:
        """Leibniz 展开: 每个置换贡献 ±ζ^{Σ e_iσ(i)}，先在指数上计数再一次约化"""
        n = len(exponents)
        if n > LEIBNIZ_MAX_SIZE:
            return super().alternant_at_roots(exponents)
        self.stats.determinants += 1
        order = self.require_order()
        counts = [0] * order
        for perm, sign in _signed_permutations(n):
            counts[sum(exponents[i][j] for i, j in enumerate(perm)) % order] += sign
        return CyclotomicNumber.from_exponent_counts(order, counts)

    def inverse_root_difference(self, a: int, b: int) -> CyclotomicNumber:
        self.stats.inversions += 1
        return inverse_root_difference(self.require_order(), a, b)

    def sine_weight_pair(self, a: int, b: int, power: int) -> CyclotomicNumber:
        return sine_weight_pair(self.require_order(), a, b, power)

    def inverse(self, x: Any) -> Any:
        self.stats.inversions += 1
        if isinstance(x, CyclotomicNumber):
            return x.inverse()
        if x == 0:
            raise DivisionByZero("零元素没有逆元")
        return 1 / Fraction(x)

    def is_zero(self, x: Any) -> bool:
        return x == 0

    def to_complex(self, x: Any) -> complex:
        if isinstance(x, CyclotomicNumber):
            return x.to_complex()
        return complex(x)

    def reduce_sum(self, values: List[Any]) -> Any:
        total = self.zero()
        for value in values:
            total = total + value
        return total

    def finalize(self, total: Any, normalizer: int) -> Tuple[int, Optional[float]]:
        rational = total.to_rational() if isinstance(total, CyclotomicNumber) else Fraction(total)
        quotient = rational / normalizer
        if quotient.denominator != 1 or quotient < 0:
            logger.error(f"精确和 {rational} 除以 {normalizer} 得到 {quotient}，不是非负整数")
            raise NonIntegerResult(
                f"Verlinde 和 {rational} / {normalizer} = {quotient} 不是非负整数"
            )
        return int(quotient), None
