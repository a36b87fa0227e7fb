#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
浮点后端
complex128 数值计算，行列式用部分主元 LU 分解，求和用 numpy 的成对求和
"""

import logging
import math
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .base_backend import BaseBackend
from ..errors import DivisionByZero, ZeroAngle

logger = logging.getLogger(__name__)


class FloatBackend(BaseBackend):
    """双精度复数后端"""

    name = 'float'

    def __init__(self, order: Optional[int] = None, config: Optional[Dict] = None):
        super().__init__(order, config)
        self.zero_tolerance = float(self.config.get('zero_tolerance', 1e-9))

    def zero(self) -> complex:
        return 0j

    def one(self) -> complex:
        return 1 + 0j

    def root(self, exponent: int) -> complex:
        order = self.require_order()
        return complex(np.exp(2j * np.pi * (exponent % order) / order))

    def two_sin_sq(self, m: int) -> complex:
        order = self.require_order()
        if m % order == 0:
            raise ZeroAngle(order, m)
        return complex((2 * math.sin(math.pi * m / order)) ** 2)

    def power(self, x: Any, exponent: int) -> complex:
        return complex(x) ** exponent

    def determinant(self, matrix: Sequence[Sequence[Any]]) -> complex:
        self.stats.determinants += 1
        if len(matrix) == 0:
            return self.one()
        return complex(np.linalg.det(np.array(matrix, dtype=np.complex128)))

    def inverse(self, x: Any) -> complex:
        self.stats.inversions += 1
        if abs(x) == 0:
            raise DivisionByZero("零元素没有逆元")
        return 1 / complex(x)

    def is_zero(self, x: Any) -> bool:
        return abs(x) < self.zero_tolerance

    def to_complex(self, x: Any) -> complex:
        return complex(x)

    def reduce_sum(self, values: List[Any]) -> complex:
        if not values:
            return 0j
        return complex(np.sum(np.array(values, dtype=np.complex128)))

    def finalize(self, total: Any, normalizer: int) -> Tuple[int, Optional[float]]:
        value = complex(total) / normalizer
        coefficient = int(round(value.real))
        residual = max(abs(value.real - coefficient), abs(value.imag))
        logger.debug(f"浮点结果 {value}，取整 {coefficient}，残差 {residual:.3e}")
        return coefficient, residual
