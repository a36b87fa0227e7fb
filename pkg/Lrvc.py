#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
LR 系数计算工具 (Verlinde 公式)
用精确分圆算术按 Verlinde 公式计算 GL_r 的 Littlewood-Richardson 系数与
张量积重数，并用经典 LR 斜表计数交叉验证

用法:
    python Lrvc.py compute 1,0 1,0 1,1 --method both
    python Lrvc.py tensor 1,0 1,0 1,0 --target 2,1
    python Lrvc.py decompose 1,0 1,0 --verify
    python Lrvc.py selftest --suite k-independence --max-rank 2
    python Lrvc.py bench
"""

import argparse
import logging
import re
import sys
import time
from dataclasses import replace
from typing import Callable, Dict, List, Optional

import colorlog

from src.config_manager import (BACKENDS, LOG_LEVELS, METHODS, OUTPUTS, ConfigManager,
                                RunConfig, get_config_manager)
from src.errors import ComputationError, ConfigError, CrossCheckDisagreement, LRVCError, SelfTestFailure
from src.lr_oracle import (lr_tableaux_count, tensor_decompose,
                           tensor_multiplicity_oracle)
from src.partitions import Partition, check_ranks
from src.reporting import (bench_frame, decomposition_frame, identity_line, render_bench,
                           render_decomposition, render_result, render_selftest, selftest_frame)
from src.selftest import FAULTS, SUITES, SelfTestSettings, run_bench, run_selftest
from src.verlinde import LRResult, lr_coefficient, tensor_multiplicity, verlinde_decompose

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(log_color)s%(asctime)s - %(levelname)s - %(message)s'

# argparse 会把 "-1,0" 这样的参数当作选项
_NEGATIVE_PARTITION = re.compile(r'^-\d+(,\s*-?\d+)*$')


def setup_logging(level: str = 'WARNING'):
    """配置根日志: 彩色输出到 stderr，stdout 只留给结果"""
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(colorlog.ColoredFormatter(LOG_FORMAT))
    root = logging.getLogger()
    root.handlers[:] = [handler]
    root.setLevel(level.upper())


def _load_dotenv():
    try:
        from dotenv import load_dotenv
        load_dotenv()
    except ImportError:
        logger.debug("未安装python-dotenv包，将使用系统环境变量")


def _protect_negative(argv: List[str]) -> List[str]:
    # 前导空格让 argparse 视为位置参数，Partition.parse 会去掉空白
    return [f" {arg}" if _NEGATIVE_PARTITION.match(arg) else arg for arg in argv]


def _parse_partitions(texts: List[str]) -> List[Partition]:
    partitions = [Partition.parse(text) for text in texts]
    check_ranks(partitions)
    return partitions


def _parse_level_flag(text: Optional[str]) -> Optional[int]:
    if text is None or text.strip().lower() == 'auto':
        return None
    try:
        level = int(text)
    except ValueError:
        raise ConfigError(f"--k 必须是正整数或 auto: {text}") from None
    if level < 1:
        raise ConfigError(f"--k 必须是正整数或 auto: {text}")
    return level


# ---- 子命令 ----

def _tableaux_result(count: int, inputs: Dict, started: float, cfg: RunConfig) -> LRResult:
    elapsed = time.perf_counter() - started if cfg.record_timing else None
    return LRResult(count, None, 0, None, elapsed=elapsed, method='tableaux', inputs=inputs)


def _cross_check(result: LRResult, tableaux: int, cfg: RunConfig):
    """输出两条路径的结果，不一致时抛出 CrossCheckDisagreement"""
    print(render_result(result, cfg.output, tableaux=tableaux))
    if result.coefficient != tableaux:
        raise CrossCheckDisagreement(result.coefficient, tableaux, str(result.inputs))


def cmd_compute(args, cfg: RunConfig, manager: ConfigManager) -> int:
    """compute λ μ ν"""
    lam, mu, nu = _parse_partitions([args.lam, args.mu, args.nu])
    method = 'both' if cfg.verify else cfg.method
    inputs = {'lambda': str(lam), 'mu': str(mu), 'nu': str(nu)}

    if method == 'tableaux':
        started = time.perf_counter()
        count = lr_tableaux_count(lam, mu, nu)
        print(render_result(_tableaux_result(count, inputs, started, cfg), cfg.output))
        return 0

    result = lr_coefficient(lam, mu, nu, cfg.compute_options())
    if method == 'both':
        _cross_check(result, lr_tableaux_count(lam, mu, nu), cfg)
    else:
        print(render_result(result, cfg.output))
    return 0


def cmd_tensor(args, cfg: RunConfig, manager: ConfigManager) -> int:
    """tensor λ¹ … λⁿ --target ν"""
    partitions = _parse_partitions(list(args.factors) + [args.target])
    factors, target = partitions[:-1], partitions[-1]
    method = 'both' if cfg.verify else cfg.method

    if method == 'tableaux':
        started = time.perf_counter()
        count = tensor_multiplicity_oracle(factors, target)
        inputs = {'factors': [str(p) for p in factors], 'target': str(target)}
        print(render_result(_tableaux_result(count, inputs, started, cfg), cfg.output))
        return 0

    result = tensor_multiplicity(factors, target, cfg.compute_options())
    if method == 'both':
        _cross_check(result, tensor_multiplicity_oracle(factors, target), cfg)
    else:
        print(render_result(result, cfg.output))
    return 0


def cmd_decompose(args, cfg: RunConfig, manager: ConfigManager) -> int:
    """decompose λ μ: 完整分解表与维数恒等式"""
    lam, mu = _parse_partitions([args.lam, args.mu])
    options = cfg.compute_options()
    verify = cfg.verify or cfg.method == 'both'

    if args.method == 'verlinde' and not verify:
        table = verlinde_decompose(lam, mu, options)
    else:
        table = tensor_decompose(lam, mu)
    verlinde_table = verlinde_decompose(lam, mu, options) if verify else None

    expected = lam.gl_dimension() * mu.gl_dimension()
    identity = identity_line(table, expected)
    frame = decomposition_frame(table, verlinde_table)
    cross_check = (verlinde_table == table) if verify else None
    print(render_decomposition(frame, identity, cfg.output, cross_check))

    if cross_check is False:
        diff = [str(nu) for nu in set(table.entries) | set(verlinde_table.entries)
                if table.get(nu) != verlinde_table.get(nu)]
        raise CrossCheckDisagreement(verlinde_table.dimension_sum(), table.dimension_sum(),
                                     f"ν ∈ {sorted(diff)}")
    if table.dimension_sum() != expected:
        raise ComputationError(f"维数恒等式不成立: {identity}")
    return 0


def cmd_selftest(args, cfg: RunConfig, manager: ConfigManager) -> int:
    """selftest: 运行交叉验证语料"""
    settings = SelfTestSettings.from_config(
        manager.get_selftest_config(), max_rank=args.max_rank, seed=args.seed
    ).scaled(args.samples)
    results = run_selftest(settings, cfg.compute_options(), args.suite, args.inject_fault)
    print(render_selftest(selftest_frame(results), cfg.output))

    failed = [r for r in results if not r.passed]
    if failed:
        for r in failed:
            print(f"FAIL {r.name}: {r.witness}")
        raise SelfTestFailure(f"{len(failed)}/{len(results)} 个套件失败")
    return 0


def cmd_bench(args, cfg: RunConfig, manager: ConfigManager) -> int:
    """bench: 两个后端的计时表"""
    bench_config = manager.get_bench_config()
    if args.backend:
        bench_config['backends'] = [args.backend]
    rows = run_bench(bench_config, cfg.compute_options())
    print(render_bench(bench_frame(rows), cfg.output))
    return 0


COMMANDS: Dict[str, Callable] = {
    'compute': cmd_compute,
    'tensor': cmd_tensor,
    'decompose': cmd_decompose,
    'selftest': cmd_selftest,
    'bench': cmd_bench,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--method', choices=METHODS, help='计算路径 (默认 verlinde)')
    common.add_argument('--backend', choices=BACKENDS, help='数域后端 (默认 exact)')
    common.add_argument('--k', dest='level', metavar='INT|auto', help='层级 k (默认 auto)')
    common.add_argument('--tolerance', type=float, help='浮点后端的取整容差')
    common.add_argument('--output', choices=OUTPUTS, help='输出格式')
    common.add_argument('--threads', type=int, help='Verlinde 求和的工作进程数')
    common.add_argument('--chunk-size', type=int, help='每个工作块的求和向量数')
    common.add_argument('--verify', action='store_true', default=None, help='同时用 LR 斜表计数交叉验证')
    common.add_argument('--no-timing', action='store_true', help='不记录耗时 (输出逐字节可复现)')
    common.add_argument('--log-level', choices=LOG_LEVELS, type=str.upper, help='日志级别')
    common.add_argument('-v', '--verbose', action='store_true', help='等价于 --log-level DEBUG')
    common.add_argument('--config-dir', help='配置目录 (默认 ./config)')

    parser = argparse.ArgumentParser(prog='Lrvc.py', description='Verlinde 公式计算 LR 系数')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('compute', parents=[common], help='单个系数 c^ν_{λμ}')
    p.add_argument('lam', help='λ，例如 2,1,0')
    p.add_argument('mu', help='μ')
    p.add_argument('nu', help='ν')

    p = sub.add_parser('tensor', parents=[common], help='n 重张量积中 V(ν) 的重数')
    p.add_argument('factors', nargs='+', help='λ¹ … λⁿ')
    p.add_argument('--target', required=True, help='ν')

    p = sub.add_parser('decompose', parents=[common], help='V(λ) ⊗ V(μ) 的完整分解')
    p.add_argument('lam')
    p.add_argument('mu')

    p = sub.add_parser('selftest', parents=[common], help='交叉验证语料')
    p.add_argument('--suite', action='append', choices=list(SUITES), help='只运行指定套件 (可重复)')
    p.add_argument('--max-rank', type=int, help='最大秩')
    p.add_argument('--samples', type=int, help='每个抽样套件的样本数上限')
    p.add_argument('--seed', type=int, help='随机种子')
    p.add_argument('--inject-fault', choices=FAULTS, help='负对照: 故意注入错误')

    sub.add_parser('bench', parents=[common], help='后端计时')
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """主函数，返回退出码"""
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_protect_negative(argv))
    setup_logging()
    _load_dotenv()

    try:
        manager = get_config_manager() if args.config_dir is None else ConfigManager(args.config_dir)
        cfg = manager.get_run_config(
            method=args.method,
            backend=args.backend,
            tolerance=args.tolerance,
            output=args.output,
            threads=args.threads,
            chunk_size=args.chunk_size,
            verify=args.verify,
            record_timing=False if args.no_timing else None,
            log_level='DEBUG' if args.verbose else args.log_level,
        )
        if args.level is not None:
            cfg = replace(cfg, level=_parse_level_flag(args.level))
        setup_logging(cfg.log_level)
        logger.debug(f"运行配置: {cfg}")
        return COMMANDS[args.command](args, cfg, manager)
    except LRVCError as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"错误: {e}", file=sys.stderr)
        return e.exit_code
    except Exception as e:
        logger.exception(f"未预期的错误: {e}")
        return ComputationError.exit_code


if __name__ == "__main__":
    sys.exit(main())
