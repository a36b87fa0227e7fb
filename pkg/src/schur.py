#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Schur 多项式求值
用双交错式 S_λ(z) = det(z_j^{λ_i+r-i}) / det(z_j^{r-i}) 在互异点处求值，
对精确分圆后端和浮点后端通用
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from .backends import BaseBackend, backend_for_values
from .errors import DegeneratePoint, RankMismatch
from .partitions import Partition

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EvaluationPoint:
    """求值点 (z_1, …, z_r)；若已知 z_j = ζ_N^{e_j}，exponents 记录 e_j"""
    values: Tuple[Any, ...]
    exponents: Optional[Tuple[int, ...]] = None

    @classmethod
    def of(cls, values: Iterable[Any]) -> 'EvaluationPoint':
        return cls(tuple(values))

    @classmethod
    def roots_of_unity(cls, backend: BaseBackend, exponents: Sequence[int]) -> 'EvaluationPoint':
        exponents = tuple(exponents)
        return cls(tuple(backend.root(e) for e in exponents), exponents)

    @property
    def rank(self) -> int:
        return len(self.values)

    def __len__(self) -> int:
        return len(self.values)


class _PowerTable:
    """单次求值内的 z_j^e 记忆表"""

    def __init__(self, point: EvaluationPoint, backend: BaseBackend):
        self.point = point
        self.backend = backend
        self._memo: Dict[Tuple[int, int], Any] = {}

    def get(self, j: int, exponent: int) -> Any:
        key = (j, exponent)
        value = self._memo.get(key)
        if value is None:
            if self.point.exponents is not None:
                value = self.backend.root(self.point.exponents[j] * exponent)
            else:
                value = self.backend.power(self.point.values[j], exponent)
            self._memo[key] = value
        return value


def _resolve_backend(values: Sequence[Any], backend: Optional[BaseBackend]) -> BaseBackend:
    return backend if backend is not None else backend_for_values(values)


def determinant(matrix: Sequence[Sequence[Any]], backend: Optional[BaseBackend] = None) -> Any:
    """方阵行列式 (精确: Bareiss；浮点: 部分主元消元)"""
    flat = [x for row in matrix for x in row]
    return _resolve_backend(flat, backend).determinant(matrix)


def _check_distinct(point: EvaluationPoint, backend: BaseBackend):
    r = point.rank
    if point.exponents is not None and backend.order is not None:
        residues = [e % backend.order for e in point.exponents]
        if len(set(residues)) != r:
            raise DegeneratePoint(f"求值点指数有重复 (mod {backend.order}): {point.exponents}")
        return
    for i in range(r):
        for j in range(i + 1, r):
            if backend.is_zero(point.values[i] - point.values[j]):
                raise DegeneratePoint(f"求值点第 {i} 与第 {j} 个值相同")


def vandermonde(point: EvaluationPoint, backend: Optional[BaseBackend] = None) -> Any:
    """Π_{i<j} (z_i - z_j)"""
    backend = _resolve_backend(point.values, backend)
    _check_distinct(point, backend)
    result = backend.one()
    values = point.values
    for i in range(point.rank):
        for j in range(i + 1, point.rank):
            result = result * (values[i] - values[j])
    return result


def vandermonde_inverse(point: EvaluationPoint, backend: Optional[BaseBackend] = None) -> Any:
    """1 / Π_{i<j} (z_i - z_j)；单位根点上逐因子取闭式逆，不做一般求逆"""
    backend = _resolve_backend(point.values, backend)
    if point.exponents is None or backend.order is None:
        return backend.inverse(vandermonde(point, backend))
    _check_distinct(point, backend)
    result = backend.one()
    exponents = point.exponents
    for i in range(point.rank):
        for j in range(i + 1, point.rank):
            result = result * backend.inverse_root_difference(exponents[i], exponents[j])
    return result


def _alternant(p: Partition, powers: _PowerTable, backend: BaseBackend) -> Any:
    """det(z_j^{λ_i + r - i})"""
    r = p.rank
    point = powers.point
    if point.exponents is not None and backend.order is not None:
        return backend.alternant_at_roots(
            [[point.exponents[j] * (p[i] + r - 1 - i) for j in range(r)] for i in range(r)])
    matrix = [[powers.get(j, p[i] + r - 1 - i) for j in range(r)] for i in range(r)]
    return backend.determinant(matrix)


def _check_partition(p: Partition, point: EvaluationPoint):
    if p.rank != point.rank:
        raise RankMismatch([p.rank, point.rank])
    if not p.is_nonnegative():
        raise ValueError(f"Schur 求值要求非负分拆，先做层级平移: {p}")


def schur_eval(p: Partition, point: EvaluationPoint, backend: Optional[BaseBackend] = None) -> Any:
    """S_λ(z) 的值"""
    _check_partition(p, point)
    backend = _resolve_backend(point.values, backend)
    powers = _PowerTable(point, backend)
    return _alternant(p, powers, backend) * vandermonde_inverse(point, backend)


def _shifted_partitions(sigma, point: EvaluationPoint) -> List[Partition]:
    partitions: List[Partition] = list(getattr(sigma, 'shifted', sigma))
    for p in partitions:
        _check_partition(p, point)
    return partitions


def alternant_product(sigma, point: EvaluationPoint, backend: Optional[BaseBackend] = None) -> Any:
    """Π_x det(z_j^{λ_x,i + r - i})，即 S_Σ(z)·Δ(z)^n"""
    partitions = _shifted_partitions(sigma, point)
    backend = _resolve_backend(point.values, backend)
    _check_distinct(point, backend)
    powers = _PowerTable(point, backend)
    result = backend.one()
    for p in partitions:
        result = result * _alternant(p, powers, backend)
    return result


def schur_product_eval(sigma, point: EvaluationPoint, backend: Optional[BaseBackend] = None) -> Any:
    """S_Σ(z) = Π_x S_{λ_x}(z)；sigma 是 ParabolicType 或分拆列表。
    Vandermonde 只求一次逆。"""
    partitions = _shifted_partitions(sigma, point)
    backend = _resolve_backend(point.values, backend)
    delta_inv = vandermonde_inverse(point, backend)
    return alternant_product(partitions, point, backend) * backend.power(delta_inv, len(partitions))
