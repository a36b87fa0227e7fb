#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
经典 Littlewood-Richardson 规则
回溯枚举 LR 斜表作为独立的真值来源，另外提供两因子张量分解、Pieri 展开、
半标准杨表枚举和表示论恒等式检查
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

from .errors import NegativeContent
from .partitions import Partition, check_ranks, normalize_nonneg

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SkewShape:
    """斜形状 outer/inner (均为非负分拆)"""
    outer: Partition
    inner: Partition

    @property
    def rank(self) -> int:
        return self.outer.rank

    def is_valid(self) -> bool:
        return self.outer.contains(self.inner)

    def size(self) -> int:
        return self.outer.size() - self.inner.size()

    def cells(self) -> List[Tuple[int, int]]:
        """逆读序: 自上而下，每行从右到左"""
        return [(row, col)
                for row in range(self.rank)
                for col in range(self.outer[row] - 1, self.inner[row] - 1, -1)]


@dataclass
class DecompositionTable:
    """ν -> 正重数"""
    entries: Dict[Partition, int] = field(default_factory=dict)

    def __post_init__(self):
        self.entries = {nu: mult for nu, mult in self.entries.items() if mult}
        for nu, mult in self.entries.items():
            if mult < 0:
                raise ValueError(f"重数不能为负: {nu} -> {mult}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, DecompositionTable):
            return NotImplemented
        return self.entries == other.entries

    def __len__(self) -> int:
        return len(self.entries)

    def get(self, nu: Partition) -> int:
        return self.entries.get(nu, 0)

    def items(self) -> List[Tuple[Partition, int]]:
        """按 ν 字典序递减排序"""
        return sorted(self.entries.items(), key=lambda item: item[0].parts, reverse=True)

    def dimension_sum(self) -> int:
        return sum(mult * nu.gl_dimension() for nu, mult in self.entries.items())


@dataclass
class IdentityReport:
    """维数恒等式与对称性检查报告"""
    lam: Partition
    mu: Partition
    table: DecompositionTable
    lhs: int
    rhs: int
    dimension_ok: bool
    symmetry_ok: bool

    @property
    def passed(self) -> bool:
        return self.dimension_ok and self.symmetry_ok


# ---- LR 规则 ----

def _count_fillings(shape: SkewShape, content: Sequence[int]) -> int:
    """半标准填充且逆读字为格路字的个数；按读序放置，每步检查格路前缀条件"""
    if any(c < 0 for c in content):
        raise NegativeContent(f"内容分拆含负数: {list(content)}")
    cells = shape.cells()
    max_value = len(content)
    counts = [0] * (max_value + 1)
    filling: Dict[Tuple[int, int], int] = {}
    outer, inner = shape.outer, shape.inner

    def place(index: int) -> int:
        if index == len(cells):
            return 1
        row, col = cells[index]
        upper = filling.get((row, col + 1), max_value)
        lower = 1
        if row > 0 and inner[row - 1] <= col < outer[row - 1]:
            lower = filling[(row - 1, col)] + 1
        total = 0
        for value in range(lower, upper + 1):
            if counts[value] >= content[value - 1]:
                continue
            if value > 1 and counts[value] >= counts[value - 1]:
                continue
            counts[value] += 1
            filling[(row, col)] = value
            total += place(index + 1)
            del filling[(row, col)]
            counts[value] -= 1
        return total

    return place(0)


def lr_tableaux_count(lam: Partition, mu: Partition, nu: Partition) -> int:
    """c^ν_{λμ}: ν/λ 上内容为 μ 的 LR 斜表个数"""
    check_ranks([lam, mu, nu])
    if lam.size() + mu.size() != nu.size():
        return 0
    # 行列式扭转: μ, ν 同减 μ_r；再把 λ, ν 统一平移为非负
    twist = mu[-1]
    mu, nu = mu.shift(-twist), nu.shift(-twist)
    (lam, nu), t = normalize_nonneg([lam, nu])
    shape = SkewShape(nu, lam)
    if not shape.is_valid():
        return 0
    count = _count_fillings(shape, mu.parts)
    logger.debug(f"LR 计数 λ={lam}, μ={mu}, ν={nu} (平移 {t}) -> {count}")
    return count


def candidate_targets(lam: Partition, mu: Partition) -> Iterator[Partition]:
    """|ν| = |λ|+|μ| 且 λ_r+μ_r ≤ ν_r ≤ ν_1 ≤ λ_1+μ_1 的全部 ν"""
    rank = check_ranks([lam, mu])
    total = lam.size() + mu.size()
    low, high = lam[-1] + mu[-1], lam[0] + mu[0]

    def build(prefix: List[int], remaining: int, ceiling: int) -> Iterator[Partition]:
        slots = rank - len(prefix)
        if slots == 0:
            if remaining == 0:
                yield Partition(prefix)
            return
        for value in range(min(ceiling, remaining - low * (slots - 1)), low - 1, -1):
            if value * slots < remaining:
                break
            yield from build(prefix + [value], remaining - value, value)

    yield from build([], total, high)


def tensor_decompose(lam: Partition, mu: Partition) -> DecompositionTable:
    """V(λ) ⊗ V(μ) = Σ c^ν_{λμ} V(ν)"""
    table = {}
    for nu in candidate_targets(lam, mu):
        count = lr_tableaux_count(lam, mu, nu)
        if count:
            table[nu] = count
    return DecompositionTable(table)


def iterated_decompose(factors: Sequence[Partition]) -> DecompositionTable:
    """V(λ^1) ⊗ … ⊗ V(λ^n) 的分解，逐次两两收缩"""
    if not factors:
        raise ValueError("至少需要一个张量因子")
    check_ranks(factors)
    current: Dict[Partition, int] = {factors[0]: 1}
    for factor in factors[1:]:
        merged: Dict[Partition, int] = {}
        for kappa, mult in current.items():
            for nu, count in tensor_decompose(kappa, factor).entries.items():
                merged[nu] = merged.get(nu, 0) + mult * count
        current = merged
    return DecompositionTable(current)


def tensor_multiplicity_oracle(factors: Sequence[Partition], target: Partition) -> int:
    """经典规则下 V(ν) 在 n 重张量积中的重数"""
    check_ranks(list(factors) + [target])
    if sum(p.size() for p in factors) != target.size():
        return 0
    return iterated_decompose(factors).get(target)


def pieri_expand(lam: Partition, s: int) -> DecompositionTable:
    """Y(λ, ω_s): 在 s 个不同行上各加 1 且保持弱递减"""
    if not 1 <= s <= lam.rank:
        raise ValueError(f"s 必须在 1..{lam.rank} 之间: {s}")
    if not lam.is_nonnegative():
        raise ValueError(f"Pieri 展开要求 λ_r ≥ 0: {lam}")
    table = {}
    for rows in combinations(range(lam.rank), s):
        parts = list(lam.parts)
        for row in rows:
            parts[row] += 1
        if all(parts[i] >= parts[i + 1] for i in range(len(parts) - 1)):
            table[Partition(parts)] = 1
    return DecompositionTable(table)


def validate_identities(lam: Partition, mu: Partition) -> IdentityReport:
    """Σ c·dim(ν) = dim(λ)·dim(μ)，并检查交换两因子后分解不变"""
    table = tensor_decompose(lam, mu)
    swapped = tensor_decompose(mu, lam)
    lhs = table.dimension_sum()
    rhs = lam.gl_dimension() * mu.gl_dimension()
    report = IdentityReport(lam, mu, table, lhs, rhs, lhs == rhs, table == swapped)
    if not report.passed:
        logger.warning(f"恒等式检查失败: λ={lam}, μ={mu}, {lhs} vs {rhs}")
    return report


# ---- 半标准杨表 (Schur 多项式的单项式展开) ----

def semistandard_tableaux(shape: Partition, max_entry: int) -> Iterator[Tuple[Tuple[int, ...], ...]]:
    """形状为 shape、元素 ≤ max_entry 的全部半标准杨表 (行弱增、列严格增)"""
    if not shape.is_nonnegative():
        raise ValueError(f"杨表形状必须非负: {shape}")
    cells = [(row, col) for row in range(shape.rank) for col in range(shape[row])]
    filling: Dict[Tuple[int, int], int] = {}

    def place(index: int) -> Iterator[Tuple[Tuple[int, ...], ...]]:
        if index == len(cells):
            yield tuple(tuple(filling[(row, col)] for col in range(shape[row]))
                        for row in range(shape.rank))
            return
        row, col = cells[index]
        lower = 1
        if col > 0:
            lower = filling[(row, col - 1)]
        if row > 0:
            lower = max(lower, filling[(row - 1, col)] + 1)
        for value in range(lower, max_entry + 1):
            filling[(row, col)] = value
            yield from place(index + 1)
        filling.pop((row, col), None)

    yield from place(0)


def schur_monomial_eval(p: Partition, values: Sequence[Any]) -> Any:
    """S_λ(z) = Σ_T z^{content(T)}，逐个杨表求和"""
    total = 0
    for tableau in semistandard_tableaux(p, len(values)):
        term = 1
        for row in tableau:
            for entry in row:
                term = term * values[entry - 1]
        total = total + term
    return total
