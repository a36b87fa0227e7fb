#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Verlinde 公式引擎
选层级 k、构造抛物型 Σ、枚举求和向量、逐项求值并做确定性的并行归约，
得到 LR 系数与 n 重张量积重数
"""

import asyncio
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

from .backends import BaseBackend, available_backends, get_backend
from .errors import ConfigError, InvalidParabolicType, LevelTooSmall, ResidualTooLarge, SizeMismatch
from .lr_oracle import DecompositionTable, candidate_targets, pieri_expand
from .partitions import Partition, check_ranks
from .schur import EvaluationPoint, alternant_product

logger = logging.getLogger(__name__)

# 抛物型至少需要 3 个标记点
MIN_CONSTITUENTS = 3


@dataclass(frozen=True)
class ComputeOptions:
    """单次计算的选项"""
    backend: str = 'exact'
    level: Optional[int] = None
    tolerance: float = 1e-6
    workers: int = 1
    chunk_size: int = 64
    record_timing: bool = True
    # 仅供自检的负对照使用: 相位指数整体偏移
    phase_offset: int = 0

    def __post_init__(self):
        if self.backend not in available_backends():
            raise ConfigError(f"不支持的后端: {self.backend}")
        if self.tolerance <= 0:
            raise ConfigError(f"容差必须为正: {self.tolerance}")
        if self.level is not None and self.level < 1:
            raise ConfigError(f"层级必须为正整数: {self.level}")
        if self.workers < 1 or self.chunk_size < 1:
            raise ConfigError("workers 与 chunk_size 必须为正整数")


@dataclass(frozen=True)
class SummationVector:
    """求和向量 0 = v_r < … < v_1 < r + k"""
    v: Tuple[int, ...]

    def is_valid(self, rank: int, level: int) -> bool:
        v = self.v
        return (len(v) == rank and v[-1] == 0 and v[0] < rank + level
                and all(v[i] > v[i + 1] for i in range(rank - 1)))

    def total(self) -> int:
        return sum(self.v)


@dataclass(frozen=True)
class ParabolicType:
    """抛物型 Σ: 层级 k 与各标记点上的平移分拆 ^kλ^1, …, ^kλ^n, ^k(ν*)"""
    rank: int
    level: int
    shifted: Tuple[Partition, ...]
    sigma_size: int
    constituents: Tuple[Partition, ...] = ()

    def __post_init__(self):
        if len(self.shifted) < MIN_CONSTITUENTS:
            raise InvalidParabolicType(f"抛物型至少需要 {MIN_CONSTITUENTS} 个分拆，实际 {len(self.shifted)}")
        for p in self.shifted:
            if p.rank != self.rank or p[0] != self.level:
                raise InvalidParabolicType(f"平移分拆 {p} 与秩 {self.rank}、层级 {self.level} 不符")
        if self.sigma_size != sum(p.size() for p in self.shifted):
            raise InvalidParabolicType("sigma_size 与平移分拆大小之和不一致")
        if self.sigma_size % self.rank:
            raise InvalidParabolicType(f"|Σ|={self.sigma_size} 不能被 r={self.rank} 整除")

    @property
    def order(self) -> int:
        """分圆阶 N = r + k"""
        return self.rank + self.level

    def term_count(self) -> int:
        return comb(self.rank + self.level - 1, self.rank - 1)

    def describe(self) -> Dict:
        """各标记点的旗重数 n_i(x) 与权重 a_i(x)，以及跨度和与层级之比 S/k"""
        points = []
        for original, shifted in zip(self.constituents or self.shifted, self.shifted):
            points.append({
                'partition': str(original),
                'shifted': str(shifted),
                'multiplicities': list(original.block_form().multiplicities),
                'weights': list(original.weights()),
            })
        total_spread = sum(p.spread() for p in self.shifted)
        return {
            'rank': self.rank,
            'level': self.level,
            'sigma_size': self.sigma_size,
            'condition_ratio': f"{total_spread}/{self.level}",
            'points': points,
        }


@dataclass
class LRResult:
    """系数与来源元数据"""
    coefficient: int
    level_used: Optional[int]
    term_count: int
    backend: Optional[str]
    float_residual: Optional[float] = None
    elapsed: Optional[float] = None
    method: str = 'verlinde'
    inputs: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        """稳定的 JSON 结构"""
        data = {
            'coefficient': self.coefficient,
            'method': self.method,
            'backend': self.backend,
            'level': self.level_used,
            'terms': self.term_count,
        }
        if self.float_residual is not None:
            data['residual'] = self.float_residual
        data['elapsed_ms'] = None if self.elapsed is None else round(self.elapsed * 1000, 3)
        data['inputs'] = self.inputs
        return data


# ---- 层级与抛物型 ----

def _total_spread(ps: Sequence[Partition]) -> int:
    return sum(p.spread() for p in ps)


def choose_level(ps: Sequence[Partition]) -> int:
    """满足 (Σ 跨度)/k < 1/r 的最小 k = r·S + 1"""
    rank = check_ranks(ps)
    return rank * _total_spread(ps) + 1


def check_level(ps: Sequence[Partition], level: int):
    required = choose_level(ps)
    if level < required:
        raise LevelTooSmall(level, required)


def build_type(factors: Sequence[Partition], target: Partition, level: int) -> ParabolicType:
    """Σ(λ^1, …, λ^n, ν*)；不足 3 个分拆时用零分拆 (平移为矩形 (k,…,k)) 补齐"""
    rank = check_ranks(list(factors) + [target])
    factor_size = sum(p.size() for p in factors)
    if factor_size != target.size():
        raise SizeMismatch(factor_size, target.size())
    constituents = list(factors) + [target.dual()]
    check_level(constituents, level)
    while len(constituents) < MIN_CONSTITUENTS:
        constituents.append(Partition.zero(rank))
    shifted = tuple(p.level_shift(level) for p in constituents)
    sigma_size = sum(p.size() for p in shifted)
    logger.debug(f"构造抛物型: r={rank}, k={level}, |Σ|={sigma_size}, 分拆数={len(shifted)}")
    return ParabolicType(rank, level, shifted, sigma_size, tuple(constituents))


def enumerate_vectors(rank: int, level: int) -> Iterator[SummationVector]:
    """按 (v_1, …, v_{r-1}) 字典序递减枚举全部求和向量，共 C(r+k-1, r-1) 个"""
    top = rank + level - 1
    for head in combinations(range(top, 0, -1), rank - 1):
        yield SummationVector(head + (0,))


# ---- 逐项求值 ----

def verlinde_term(sigma: ParabolicType, vector: SummationVector, backend: BaseBackend,
                  phase_offset: int = 0) -> Any:
    """ζ_N^{-(|Σ|/r)Σv_i} · Π_{i<j} (2 sin π(v_i-v_j)/N)² · S_Σ(ζ_N^{v})

    S_Σ 写成交错式之积除以 Δ^n；每对 (i, j) 的 2sin² 与 Δ 因子合并为一个记忆化的值。
    """
    v = vector.v
    constituents = len(sigma.shifted)
    phase = backend.root(-(sigma.sigma_size // sigma.rank) * vector.total() + phase_offset)
    weight = backend.one()
    for i in range(len(v)):
        for j in range(i + 1, len(v)):
            weight = weight * backend.sine_weight_pair(v[i], v[j], constituents)
    point = EvaluationPoint.roots_of_unity(backend, v)
    return phase * weight * alternant_product(sigma, point, backend)


def _evaluate_chunk(sigma: ParabolicType, backend_name: str,
                    chunk: Sequence[Tuple[int, ...]], phase_offset: int) -> Any:
    """在工作进程中求一块向量的部分和"""
    backend = get_backend(backend_name, sigma.order)
    terms = [verlinde_term(sigma, SummationVector(v), backend, phase_offset) for v in chunk]
    return backend.reduce_sum(terms)


async def _gather_chunks(sigma: ParabolicType, backend_name: str,
                         chunks: List[List[Tuple[int, ...]]], phase_offset: int, workers: int) -> List[Any]:
    """并发求各块的部分和；gather 保持提交顺序"""
    loop = asyncio.get_running_loop()
    with ProcessPoolExecutor(max_workers=workers) as executor:
        tasks = [
            loop.run_in_executor(executor, _evaluate_chunk, sigma, backend_name, chunk, phase_offset)
            for chunk in chunks
        ]
        return await asyncio.gather(*tasks)


def verlinde_sum(sigma: ParabolicType, options: Optional[ComputeOptions] = None) -> LRResult:
    """V(Σ) = (1 / (r(r+k)^{r-1})) Σ_v 项"""
    options = options or ComputeOptions()
    start_time = time.perf_counter()
    backend = get_backend(options.backend, sigma.order)

    vectors = [vector.v for vector in enumerate_vectors(sigma.rank, sigma.level)]
    chunks = [vectors[i:i + options.chunk_size] for i in range(0, len(vectors), options.chunk_size)]

    if options.workers > 1 and len(chunks) > 1:
        logger.debug(f"使用 {options.workers} 个工作进程计算 {len(chunks)} 块")
        partials = asyncio.run(_gather_chunks(sigma, options.backend, chunks,
                                              options.phase_offset, options.workers))
    else:
        partials = [_evaluate_chunk(sigma, options.backend, chunk, options.phase_offset)
                    for chunk in chunks]

    total = backend.reduce_sum(partials)
    normalizer = sigma.rank * sigma.order ** (sigma.rank - 1)
    coefficient, residual = backend.finalize(total, normalizer)

    elapsed = time.perf_counter() - start_time
    backend.record_terms(len(vectors), elapsed)
    result = LRResult(
        coefficient=coefficient,
        level_used=sigma.level,
        term_count=len(vectors),
        backend=options.backend,
        float_residual=residual,
        elapsed=elapsed if options.record_timing else None,
    )
    logger.info(f"Verlinde 和完成: r={sigma.rank}, k={sigma.level}, 项数={len(vectors)}, "
                f"系数={coefficient}, 耗时 {elapsed:.3f}s")
    if residual is not None and residual > options.tolerance:
        logger.error(f"浮点残差 {residual:.3e} 超过容差 {options.tolerance:.1e}")
        raise ResidualTooLarge(residual, options.tolerance, result)
    return result


# ---- 对外操作 ----

def tensor_multiplicity(factors: Sequence[Partition], target: Partition,
                        options: Optional[ComputeOptions] = None) -> LRResult:
    """V(ν) 在 V(λ^1) ⊗ … ⊗ V(λ^n) 中的重数"""
    options = options or ComputeOptions()
    if not factors:
        raise ValueError("至少需要一个张量因子")
    check_ranks(list(factors) + [target])
    inputs = {'factors': [str(p) for p in factors], 'target': str(target)}

    factor_size = sum(p.size() for p in factors)
    if factor_size != target.size():
        logger.info(f"大小不平衡 ({factor_size} != {target.size()})，系数为 0")
        return LRResult(0, None, 0, options.backend,
                        elapsed=0.0 if options.record_timing else None, inputs=inputs)

    constituents = list(factors) + [target.dual()]
    level = options.level if options.level is not None else choose_level(constituents)
    sigma = build_type(factors, target, level)
    result = verlinde_sum(sigma, options)
    result.inputs = inputs
    return result


def lr_coefficient(lam: Partition, mu: Partition, nu: Partition,
                   options: Optional[ComputeOptions] = None) -> LRResult:
    """c^ν_{λμ}"""
    result = tensor_multiplicity([lam, mu], nu, options)
    result.inputs = {'lambda': str(lam), 'mu': str(mu), 'nu': str(nu)}
    return result


def invariant_dimension(ps: Sequence[Partition], options: Optional[ComputeOptions] = None) -> LRResult:
    """(V(λ^1) ⊗ … ⊗ V(λ^n))^{GL_r} 的维数"""
    rank = check_ranks(ps)
    return tensor_multiplicity(ps, Partition.zero(rank), options)


def verlinde_decompose(lam: Partition, mu: Partition,
                       options: Optional[ComputeOptions] = None) -> DecompositionTable:
    """用 Verlinde 公式计算 V(λ) ⊗ V(μ) 的完整分解"""
    table: Dict[Partition, int] = {}
    for nu in candidate_targets(lam, mu):
        coefficient = lr_coefficient(lam, mu, nu, options).coefficient
        if coefficient:
            table[nu] = coefficient
    return DecompositionTable(table)


def pieri_check(lam: Partition, s: int, options: Optional[ComputeOptions] = None) -> Tuple[bool, DecompositionTable, DecompositionTable]:
    """V(λ) ⊗ V(ω_s) 的 Verlinde 分解是否等于 Pieri 集合 Y(λ, ω_s) (全部重数为 1)"""
    omega = Partition([1] * s + [0] * (lam.rank - s))
    expected = pieri_expand(lam, s)
    actual = verlinde_decompose(lam, omega, options)
    return expected == actual, expected, actual
