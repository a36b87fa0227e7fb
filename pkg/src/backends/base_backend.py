#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
数值后端基类
定义统一的域运算接口 (单位根、2sin²、行列式、求逆、整数化) 和使用统计
"""

import logging
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

logger = logging.getLogger(__name__)


@dataclass
class EvaluationStats:
    """后端使用统计"""
    terms: int = 0
    determinants: int = 0
    inversions: int = 0
    elapsed: float = 0.0
    last_run_time: float = 0.0


class BaseBackend(ABC):
    """数值后端基类"""

    name = 'base'

    def __init__(self, order: Optional[int] = None, config: Optional[Dict] = None):
        self.order = order
        self.config = config or {}
        self.stats = EvaluationStats()
        self._is_healthy: Optional[bool] = None

    # ---- 域元素 ----

    @abstractmethod
    def zero(self) -> Any:
        pass

    @abstractmethod
    def one(self) -> Any:
        pass

    @abstractmethod
    def root(self, exponent: int) -> Any:
        """ζ_N^e"""
        pass

    @abstractmethod
    def two_sin_sq(self, m: int) -> Any:
        """(2 sin(πm/N))²"""
        pass

    @abstractmethod
    def determinant(self, matrix: Sequence[Sequence[Any]]) -> Any:
        pass

    @abstractmethod
    def inverse(self, x: Any) -> Any:
        pass

    @abstractmethod
    def is_zero(self, x: Any) -> bool:
        pass

    @abstractmethod
    def to_complex(self, x: Any) -> complex:
        pass

    @abstractmethod
    def reduce_sum(self, values: List[Any]) -> Any:
        """把若干项 (或部分和) 归约为一个值，结果与顺序无关"""
        pass

    @abstractmethod
    def finalize(self, total: Any, normalizer: int) -> Tuple[int, Optional[float]]:
        """总和除以归一化因子并整数化，返回 (系数, 残差)"""
        pass

    def power(self, x: Any, exponent: int) -> Any:
        """重复平方求幂"""
        result = self.one()
        base = x
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def alternant_at_roots(self, exponents: Sequence[Sequence[int]]) -> Any:
        """det(ζ^{e_ij})"""
        return self.determinant([[self.root(e) for e in row] for row in exponents])

    def inverse_root_difference(self, a: int, b: int) -> Any:
        """1 / (ζ^a - ζ^b)"""
        return self.inverse(self.root(a) - self.root(b))

    def sine_weight_pair(self, a: int, b: int, power: int) -> Any:
        """(2 sin(π(a-b)/N))² / (ζ^a - ζ^b)^power"""
        return self.two_sin_sq(a - b) * self.power(self.inverse_root_difference(a, b), power)

    def require_order(self) -> int:
        if self.order is None:
            raise ValueError(f"{self} 未设置分圆阶 N")
        return self.order

    # ---- 健康检查与统计 ----

    def health_check(self) -> bool:
        """检查 ζ_N^N = 1 且 1 + ζ + … + ζ^{N-1} = 0"""
        order = self.require_order()
        try:
            zeta = self.root(1)
            cycle_ok = self.is_zero(self.power(zeta, order) - self.one())
            total = self.reduce_sum([self.root(e) for e in range(order)])
            sum_ok = order == 1 or self.is_zero(total)
            self._is_healthy = bool(cycle_ok and sum_ok)
        except Exception as e:
            logger.error(f"后端 {self} 健康检查异常: {e}")
            self._is_healthy = False
        if self._is_healthy:
            logger.debug(f"后端 {self} 健康检查通过")
        else:
            logger.warning(f"后端 {self} 健康检查失败")
        return self._is_healthy

    def record_terms(self, count: int, elapsed: float):
        self.stats.terms += count
        self.stats.elapsed += elapsed
        self.stats.last_run_time = time.time()

    def get_usage_stats(self) -> Dict:
        """获取使用统计"""
        return {
            'backend': self.name,
            'order': self.order,
            'terms': self.stats.terms,
            'determinants': self.stats.determinants,
            'inversions': self.stats.inversions,
            'elapsed': f"{self.stats.elapsed:.3f}s",
            'last_run_time': time.strftime('%Y-%m-%d %H:%M:%S',
                                           time.localtime(self.stats.last_run_time)),
            'is_healthy': self._is_healthy,
        }

    def __str__(self):
        return f"{self.name.upper()}Backend(N={self.order})"
