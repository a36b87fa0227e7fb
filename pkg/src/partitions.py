#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
分拆 (GL_r 最高权)
固定秩的弱递减整数向量，以及公式所需的全部分拆层面构造：
大小、对偶、块形式、跨度、权重、层级平移、非负归一化和 Weyl 维数公式
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import groupby
from typing import Iterable, List, Sequence, Tuple

from .errors import LevelTooSmall, PartitionParseError, RankMismatch

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BlockForm:
    """块形式: (值, 重数) 列表，值严格递减"""
    blocks: Tuple[Tuple[int, int], ...]

    @property
    def rank(self) -> int:
        return sum(mult for _, mult in self.blocks)

    @property
    def multiplicities(self) -> Tuple[int, ...]:
        return tuple(mult for _, mult in self.blocks)

    def expand(self) -> 'Partition':
        """展开为原分拆"""
        parts: List[int] = []
        for value, mult in self.blocks:
            parts.extend([value] * mult)
        return Partition(parts)


@dataclass(frozen=True)
class Partition:
    """GL_r 分拆 λ_1 ≥ λ_2 ≥ … ≥ λ_r，分量可以为负"""
    parts: Tuple[int, ...]

    def __init__(self, parts: Iterable[int]):
        values = tuple(int(x) for x in parts)
        if not values:
            raise PartitionParseError("", 0, "分拆不能为空")
        for i in range(1, len(values)):
            if values[i] > values[i - 1]:
                text = ",".join(str(x) for x in values)
                raise PartitionParseError(text, i, f"{values[i]} 大于前一项 {values[i - 1]}")
        object.__setattr__(self, 'parts', values)

    @classmethod
    def parse(cls, text: str) -> 'Partition':
        """解析 `a_1,a_2,...,a_r` 形式的文本"""
        tokens = text.strip().split(',')
        values = []
        for i, token in enumerate(tokens):
            token = token.strip()
            try:
                values.append(int(token))
            except ValueError:
                raise PartitionParseError(text, i, f"'{token}' 不是整数") from None
        for i in range(1, len(values)):
            if values[i] > values[i - 1]:
                raise PartitionParseError(text, i, f"{values[i]} 大于前一项 {values[i - 1]}")
        return cls(values)

    @classmethod
    def zero(cls, rank: int) -> 'Partition':
        return cls([0] * rank)

    @property
    def rank(self) -> int:
        return len(self.parts)

    def __str__(self) -> str:
        return ",".join(str(x) for x in self.parts)

    def __repr__(self) -> str:
        return f"Partition({self})"

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, index):
        return self.parts[index]

    def __len__(self) -> int:
        return len(self.parts)

    def size(self) -> int:
        """|λ| = Σ λ_i"""
        return sum(self.parts)

    def dual(self) -> 'Partition':
        """对偶分拆 λ* = (-λ_r ≥ … ≥ -λ_1)"""
        return Partition(-x for x in reversed(self.parts))

    def shift(self, c: int) -> 'Partition':
        """每个分量加 c (行列式特征的 c 次幂扭转)"""
        return Partition(x + c for x in self.parts)

    def block_form(self) -> BlockForm:
        return BlockForm(tuple((value, len(list(group))) for value, group in groupby(self.parts)))

    def spread(self) -> int:
        """λ_1 - λ_r"""
        return self.parts[0] - self.parts[-1]

    def is_nonnegative(self) -> bool:
        return self.parts[-1] >= 0

    def weights(self) -> Tuple[int, ...]:
        """抛物权重数据 {λ_1 - λ_i}，按块取值，严格递增"""
        top = self.parts[0]
        return tuple(top - value for value, _ in self.block_form().blocks)

    def level_shift(self, k: int) -> 'Partition':
        """层级平移 ^kλ: 分量 k - λ_1 + λ_i"""
        if k <= self.spread():
            raise LevelTooSmall(k, self.spread() + 1)
        top = self.parts[0]
        return Partition(k - top + x for x in self.parts)

    def gl_dimension(self) -> int:
        """Weyl 维数公式 Π_{i<j} (λ_i - λ_j + j - i)/(j - i)"""
        dim = Fraction(1)
        r = self.rank
        for i in range(r):
            for j in range(i + 1, r):
                dim *= Fraction(self.parts[i] - self.parts[j] + j - i, j - i)
        assert dim.denominator == 1, f"维数不是整数: {dim}"
        return int(dim)

    def contains(self, inner: 'Partition') -> bool:
        """逐行包含 inner_i ≤ self_i"""
        return all(a >= b for a, b in zip(self.parts, inner.parts))


def check_ranks(ps: Sequence[Partition]) -> int:
    """检查所有分拆秩相同，返回公共秩"""
    ranks = [p.rank for p in ps]
    if len(set(ranks)) != 1:
        raise RankMismatch(ranks)
    return ranks[0]


def normalize_nonneg(ps: Sequence[Partition]) -> Tuple[List[Partition], int]:
    """统一平移 t = max(0, -min) 使所有分量非负，返回 (平移后的分拆, t)"""
    if not ps:
        return [], 0
    check_ranks(ps)
    lowest = min(p.parts[-1] for p in ps)
    t = max(0, -lowest)
    if t:
        logger.debug(f"非负归一化平移 t={t}")
    return [p.shift(t) for p in ps], t
