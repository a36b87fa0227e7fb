#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
自检语料
用经典 LR 规则和表示论恒等式交叉验证 Verlinde 引擎；每个套件返回
通过/失败以及第一个失败的最小见证。另含两个后端的基准计时
"""

import json
import logging
import random
import time
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from .errors import ComputationError, ConfigError
from .lr_oracle import candidate_targets, lr_tableaux_count, tensor_multiplicity_oracle
from .partitions import Partition
from .verlinde import (ComputeOptions, choose_level, lr_coefficient, pieri_check,
                       tensor_multiplicity)

logger = logging.getLogger(__name__)

FAULTS = ('phase',)

# Pieri 语料中 λ 的部分上限
PIERI_MAX_PART = 4


@dataclass(frozen=True)
class SelfTestSettings:
    """自检参数 (来自配置文件的 selftest 段)"""
    seed: int = 20240601
    max_rank: int = 3
    rank2_max_part: int = 3
    rank3_samples: int = 200
    rank3_part_range: Tuple[int, int] = (-2, 4)
    k_independence_samples: int = 50
    pieri_samples: int = 30
    pieri_max_rank: int = 4
    dimension_samples: int = 50
    associativity_samples: int = 20
    backend_agreement_max_order: int = 60
    determinism_workers: Tuple[int, ...] = (1, 2, 8)

    @classmethod
    def from_config(cls, config: Dict[str, Any], **overrides) -> 'SelfTestSettings':
        known = {name for name in cls.__dataclass_fields__}
        values = {key: value for key, value in config.items() if key in known}
        if 'rank3_part_range' in values:
            values['rank3_part_range'] = tuple(values['rank3_part_range'])
        if 'determinism_workers' in values:
            values['determinism_workers'] = tuple(values['determinism_workers'])
        values.update({key: value for key, value in overrides.items() if value is not None})
        try:
            settings = cls(**values)
        except TypeError as e:
            raise ConfigError(f"selftest 配置无效: {e}") from e
        if settings.max_rank < 1:
            raise ConfigError(f"max_rank 必须为正: {settings.max_rank}")
        return settings

    def scaled(self, limit: Optional[int]) -> 'SelfTestSettings':
        """把所有抽样数截到 limit (快速模式)"""
        if limit is None:
            return self
        return replace(
            self,
            rank3_samples=min(self.rank3_samples, limit),
            k_independence_samples=min(self.k_independence_samples, limit),
            pieri_samples=min(self.pieri_samples, limit),
            dimension_samples=min(self.dimension_samples, limit),
            associativity_samples=min(self.associativity_samples, limit),
        )


@dataclass
class SuiteResult:
    """单个套件的结果"""
    name: str
    passed: bool
    checked: int
    witness: Optional[str] = None
    elapsed: float = 0.0


Triple = Tuple[Partition, Partition, Partition]


def _exhaustive_rank2(max_part: int) -> Iterator[Triple]:
    parts = [Partition([a, b]) for a in range(max_part + 1) for b in range(a + 1)]
    for lam in parts:
        for mu in parts:
            for nu in candidate_targets(lam, mu):
                yield lam, mu, nu


def _rank1_triples(max_part: int) -> Iterator[Triple]:
    for a in range(-max_part, max_part + 1):
        for b in range(-max_part, max_part + 1):
            yield Partition([a]), Partition([b]), Partition([a + b])


def _random_partition(rng: random.Random, rank: int, low: int, high: int) -> Partition:
    return Partition(sorted((rng.randint(low, high) for _ in range(rank)), reverse=True))


def _random_triple(rng: random.Random, rank: int, low: int, high: int) -> Triple:
    lam = _random_partition(rng, rank, low, high)
    mu = _random_partition(rng, rank, low, high)
    return lam, mu, rng.choice(list(candidate_targets(lam, mu)))


@lru_cache(maxsize=8)
def oracle_corpus(settings: SelfTestSettings) -> Tuple[Triple, ...]:
    """秩 2 穷举 (部分 ≤ rank2_max_part) 加秩 3 抽样；各套件共用同一份"""
    cases: List[Triple] = []
    if settings.max_rank >= 2:
        cases.extend(_exhaustive_rank2(settings.rank2_max_part))
    if settings.max_rank >= 3:
        rng = random.Random(f"{settings.seed}:corpus")
        low, high = settings.rank3_part_range
        cases.extend(_random_triple(rng, 3, low, high) for _ in range(settings.rank3_samples))
    return tuple(cases)


class _Suite:
    """套件上下文: 随机源、设置与计算选项"""

    def __init__(self, settings: SelfTestSettings, options: ComputeOptions, name: str):
        self.settings = settings
        self.options = options
        # 每个套件独立播种，单独运行时结果一致
        self.rng = random.Random(f"{settings.seed}:{name}")

    def random_partition(self, rank: int, low: int, high: int) -> Partition:
        return _random_partition(self.rng, rank, low, high)

    def ranks(self) -> List[int]:
        return list(range(2, self.settings.max_rank + 1))

    def sample_triples(self, count: int) -> Iterator[Triple]:
        """在 2..max_rank 上轮流取秩的随机三元组"""
        ranks = self.ranks() or [1]
        low, high = self.settings.rank3_part_range
        for index in range(count):
            yield _random_triple(self.rng, ranks[index % len(ranks)], low, high)


def _fmt(*ps: Partition) -> str:
    return ' '.join(f"({p})" for p in ps)


# ---- 用例生成 ----

def k_independence_cases(ctx: _Suite) -> List[Triple]:
    """从共用语料中抽取系数非零的三元组"""
    nonzero = [case for case in oracle_corpus(ctx.settings) if lr_tableaux_count(*case)]
    count = min(ctx.settings.k_independence_samples, len(nonzero))
    return ctx.rng.sample(nonzero, count)


def pieri_cases(ctx: _Suite) -> Iterator[Tuple[Partition, int]]:
    """秩 2..pieri_max_rank 轮流，λ 的部分取自 [0, 4]，每个 λ 遍历 s = 1..r"""
    ranks = list(range(2, ctx.settings.pieri_max_rank + 1))
    if not ranks:
        return
    for index in range(ctx.settings.pieri_samples):
        rank = ranks[index % len(ranks)]
        lam = ctx.random_partition(rank, 0, PIERI_MAX_PART)
        for s in range(1, rank + 1):
            yield lam, s


def backend_agreement_cases(ctx: _Suite) -> Iterator[Triple]:
    """共用语料中 N = r + k_min 不超过上限的三元组"""
    for lam, mu, nu in oracle_corpus(ctx.settings):
        if lam.rank + choose_level([lam, mu, nu.dual()]) <= ctx.settings.backend_agreement_max_order:
            yield lam, mu, nu


def associativity_cases(ctx: _Suite) -> Iterator[Tuple[List[Partition], List[Partition]]]:
    """秩 2、部分取自 [0, 2] 的因子三元组，连同全部大小平衡的目标"""
    for _ in range(ctx.settings.associativity_samples):
        factors = [ctx.random_partition(2, 0, 2) for _ in range(3)]
        rest = Partition([a + b for a, b in zip(factors[1].parts, factors[2].parts)])
        yield factors, list(candidate_targets(factors[0], rest))


def determinism_cases(ctx: _Suite) -> List[Triple]:
    return list(_exhaustive_rank2(ctx.settings.rank2_max_part))


# ---- 套件 ----

def suite_oracle(ctx: _Suite) -> Tuple[int, Optional[str]]:
    """秩 2 穷举、秩 3 抽样，Verlinde 与 LR 斜表计数逐一相等"""
    checked = 0
    cases: List[Triple] = list(_rank1_triples(2)) + list(oracle_corpus(ctx.settings))
    for lam, mu, nu in cases:
        checked += 1
        verlinde = lr_coefficient(lam, mu, nu, ctx.options).coefficient
        tableaux = lr_tableaux_count(lam, mu, nu)
        if verlinde != tableaux:
            return checked, f"{_fmt(lam, mu, nu)}: verlinde={verlinde}, tableaux={tableaux}"
    return checked, None


def suite_k_independence(ctx: _Suite) -> Tuple[int, Optional[str]]:
    """k_min、k_min + r 与 k_min + 2r + 1 三个层级给出同一个值"""
    checked = 0
    for lam, mu, nu in k_independence_cases(ctx):
        rank = lam.rank
        k_min = choose_level([lam, mu, nu.dual()])
        values = []
        for level in (k_min, k_min + rank, k_min + 2 * rank + 1):
            values.append(lr_coefficient(lam, mu, nu, replace(ctx.options, level=level)).coefficient)
        checked += 1
        if len(set(values)) != 1:
            return checked, f"{_fmt(lam, mu, nu)}: k={k_min}.. -> {values}"
    return checked, None


def suite_symmetry(ctx: _Suite) -> Tuple[int, Optional[str]]:
    """c^ν_{λμ} = c^ν_{μλ}"""
    checked = 0
    for lam, mu, nu in ctx.sample_triples(ctx.settings.k_independence_samples):
        left = lr_coefficient(lam, mu, nu, ctx.options).coefficient
        right = lr_coefficient(mu, lam, nu, ctx.options).coefficient
        checked += 1
        if left != right:
            return checked, f"{_fmt(lam, mu, nu)}: {left} != {right}"
    return checked, None


def suite_translation(ctx: _Suite) -> Tuple[int, Optional[str]]:
    """c^{ν+c}_{λ+c, μ} = c^ν_{λμ}"""
    checked = 0
    for lam, mu, nu in ctx.sample_triples(ctx.settings.k_independence_samples):
        shift = ctx.rng.randint(-3, 3)
        base = lr_coefficient(lam, mu, nu, ctx.options).coefficient
        moved = lr_coefficient(lam.shift(shift), mu, nu.shift(shift), ctx.options).coefficient
        checked += 1
        if base != moved:
            return checked, f"{_fmt(lam, mu, nu)} 平移 {shift}: {base} != {moved}"
    return checked, None


def suite_pieri(ctx: _Suite) -> Tuple[int, Optional[str]]:
    """V(λ) ⊗ V(ω_s) 的分解等于 Pieri 集合"""
    checked = 0
    for lam, s in pieri_cases(ctx):
        ok, expected, actual = pieri_check(lam, s, ctx.options)
        checked += 1
        if not ok:
            return checked, (f"λ=({lam}), s={s}: 期望 {sorted(str(p) for p in expected.entries)}, "
                             f"实际 {sorted(str(p) for p in actual.entries)}")
    return checked, None


def suite_dimension(ctx: _Suite) -> Tuple[int, Optional[str]]:
    """Σ_ν c^ν_{λμ} dim V(ν) = dim V(λ) · dim V(μ)，系数取自 Verlinde"""
    checked = 0
    ranks = ctx.ranks()
    if not ranks:
        return checked, None
    for index in range(ctx.settings.dimension_samples):
        rank = ranks[index % len(ranks)]
        lam = ctx.random_partition(rank, -1, 2)
        mu = ctx.random_partition(rank, -1, 2)
        lhs = 0
        for nu in candidate_targets(lam, mu):
            lhs += lr_coefficient(lam, mu, nu, ctx.options).coefficient * nu.gl_dimension()
        rhs = lam.gl_dimension() * mu.gl_dimension()
        checked += 1
        if lhs != rhs:
            return checked, f"{_fmt(lam, mu)}: Σ c·dim = {lhs}, dim·dim = {rhs}"
    return checked, None


def suite_backend_agreement(ctx: _Suite) -> Tuple[int, Optional[str]]:
    """N ≤ 上限时浮点后端与精确后端取整后相等 (残差超限记为失败)"""
    checked = 0
    exact_options = replace(ctx.options, backend='exact')
    float_options = replace(ctx.options, backend='float')
    for lam, mu, nu in backend_agreement_cases(ctx):
        exact = lr_coefficient(lam, mu, nu, exact_options).coefficient
        approx = lr_coefficient(lam, mu, nu, float_options).coefficient
        checked += 1
        if exact != approx:
            return checked, f"{_fmt(lam, mu, nu)}: exact={exact}, float={approx}"
    return checked, None


def suite_associativity(ctx: _Suite) -> Tuple[int, Optional[str]]:
    """三重张量积的 Verlinde 重数等于两次 LR 收缩，遍历全部平衡目标"""
    checked = 0
    for factors, targets in associativity_cases(ctx):
        for target in targets:
            verlinde = tensor_multiplicity(factors, target, ctx.options).coefficient
            oracle = tensor_multiplicity_oracle(factors, target)
            checked += 1
            if verlinde != oracle:
                return checked, f"{_fmt(*factors)} -> ({target}): verlinde={verlinde}, 收缩={oracle}"
    return checked, None


def suite_determinism(ctx: _Suite) -> Tuple[int, Optional[str]]:
    """秩 2 穷举语料在不同工作进程数下 JSON 输出逐字节相同"""
    checked = 0
    for lam, mu, nu in determinism_cases(ctx):
        outputs = set()
        for workers in ctx.settings.determinism_workers:
            options = replace(ctx.options, workers=workers, chunk_size=4, record_timing=False)
            result = lr_coefficient(lam, mu, nu, options)
            outputs.add(json.dumps(result.to_dict(), sort_keys=True, ensure_ascii=False))
        checked += 1
        if len(outputs) != 1:
            return checked, f"{_fmt(lam, mu, nu)}: 不同线程数输出不一致"
    return checked, None


SUITES: Dict[str, Callable[[_Suite], Tuple[int, Optional[str]]]] = {
    'oracle': suite_oracle,
    'k-independence': suite_k_independence,
    'symmetry': suite_symmetry,
    'translation': suite_translation,
    'pieri': suite_pieri,
    'dimension': suite_dimension,
    'backend-agreement': suite_backend_agreement,
    'associativity': suite_associativity,
    'determinism': suite_determinism,
}


def run_suite(name: str, settings: SelfTestSettings, options: ComputeOptions) -> SuiteResult:
    """运行单个套件；计算错误也记为失败并给出见证"""
    if name not in SUITES:
        raise ConfigError(f"未知的自检套件: {name} (可选: {', '.join(SUITES)})")
    ctx = _Suite(settings, options, name)
    start_time = time.perf_counter()
    try:
        checked, witness = SUITES[name](ctx)
    except ComputationError as e:
        checked, witness = 0, f"{type(e).__name__}: {e}"
    elapsed = time.perf_counter() - start_time
    result = SuiteResult(name, witness is None, checked, witness, elapsed)
    if result.passed:
        logger.info(f"套件 {name} 通过 ({checked} 例, {elapsed:.2f}s)")
    else:
        logger.error(f"套件 {name} 失败: {witness}")
    return result


def run_selftest(settings: SelfTestSettings, options: Optional[ComputeOptions] = None,
                 suites: Optional[Sequence[str]] = None,
                 inject_fault: Optional[str] = None) -> List[SuiteResult]:
    """运行自检语料；inject_fault='phase' 时故意扰动相位，用作负对照"""
    options = options or ComputeOptions()
    if inject_fault is not None:
        if inject_fault not in FAULTS:
            raise ConfigError(f"未知的故障注入: {inject_fault}")
        logger.warning("已注入相位故障，自检应当失败")
        options = replace(options, phase_offset=1)
    names = list(suites) if suites else list(SUITES)
    return [run_suite(name, settings, options) for name in names]


# ---- 基准 ----

def bench_instance(rank: int) -> Tuple[List[Partition], Partition]:
    """基准实例: V(ω_1) ⊗ V(ω_1) 中 V(ω_2) 的重数 (r = 1 时取 V(1) ⊗ V(1) -> V(2))"""
    if rank == 1:
        return [Partition([1]), Partition([1])], Partition([2])
    omega1 = Partition([1] + [0] * (rank - 1))
    omega2 = Partition([1, 1] + [0] * (rank - 2))
    return [omega1, omega1], omega2


def run_bench(bench_config: Dict[str, Any], options: Optional[ComputeOptions] = None) -> List[Dict[str, Any]]:
    """对每个 (r, k, 后端) 计时；项数为 C(r+k-1, r-1)，与后端无关"""
    options = options or ComputeOptions()
    backends = bench_config.get('backends') or [options.backend]
    rows = []
    for instance in bench_config.get('instances', []):
        rank = int(instance['rank'])
        factors, target = bench_instance(rank)
        for level in instance.get('levels', []):
            for backend in backends:
                run_options = replace(options, backend=backend, level=int(level), record_timing=True)
                try:
                    result = tensor_multiplicity(factors, target, run_options)
                except ComputationError as e:
                    logger.warning(f"跳过基准 r={rank}, k={level}, {backend}: {e}")
                    continue
                rows.append({
                    'r': rank,
                    'k': level,
                    'terms': result.term_count,
                    'backend': backend,
                    'ms': round(result.elapsed * 1000, 3),
                })
                logger.info(f"基准 r={rank}, k={level}, {backend}: {result.term_count} 项, "
                            f"{result.elapsed * 1000:.1f} ms")
    return rows
