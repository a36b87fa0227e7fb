#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
异常定义
所有库代码只抛出这里的异常，由命令行入口统一转换为退出码
"""

from typing import Optional, Sequence


class LRVCError(Exception):
    """LRVC异常基类"""

    exit_code = 3


# ---- 输入错误 (退出码 2) ----

class InputError(LRVCError):
    """输入错误"""

    exit_code = 2


class PartitionParseError(InputError, ValueError):
    """分拆文本无法解析或不是弱递减序列"""

    def __init__(self, text: str, index: int, reason: str):
        self.text = text
        self.index = index
        self.reason = reason
        super().__init__(f"无法解析分拆 '{text}'：第 {index} 项 {reason}")


class RankMismatch(InputError, ValueError):
    """分拆的秩不一致"""

    def __init__(self, ranks: Sequence[int]):
        self.ranks = tuple(ranks)
        super().__init__(f"分拆的秩不一致: {list(self.ranks)}")


class ConfigError(InputError, ValueError):
    """配置无效"""


# ---- 计算错误 (退出码 3) ----

class ComputationError(LRVCError):
    """计算错误"""

    exit_code = 3


class LevelTooSmall(ComputationError, ValueError):
    """层级 k 不满足 (Σ 跨度)/k < 1/r"""

    def __init__(self, level: int, required: int):
        self.level = level
        self.required = required
        super().__init__(f"层级 k={level} 太小，至少需要 k={required}")


class SizeMismatch(ComputationError, ValueError):
    """因子大小之和不等于目标大小，系数恒为 0"""

    def __init__(self, factor_size: int, target_size: int):
        self.factor_size = factor_size
        self.target_size = target_size
        super().__init__(f"大小不平衡: 因子总大小 {factor_size} != 目标大小 {target_size}")


class InvalidParabolicType(ComputationError, ValueError):
    """抛物型的平移分拆与秩、层级或 |Σ| 不相容"""


class OrderMismatch(ComputationError, ValueError):
    """两个分圆域元素的阶不同"""

    def __init__(self, left: int, right: int):
        super().__init__(f"分圆域阶不一致: Q(ζ_{left}) 与 Q(ζ_{right})")


class DivisionByZero(ComputationError, ZeroDivisionError):
    """对零求逆"""


class ZeroAngle(ComputationError, ValueError):
    """2sin² 因子的角度为 0 (求和向量含重复分量)"""

    def __init__(self, order: int, m: int):
        super().__init__(f"角度为零: m={m} ≡ 0 (mod {order})")


class NotRational(ComputationError, ValueError):
    """分圆域元素不在 Q 中"""


class NonIntegerResult(ComputationError, ValueError):
    """精确后端的结果不是非负整数"""


class DegeneratePoint(ComputationError, ValueError):
    """求值点存在重复值"""


class NegativeContent(ComputationError, ValueError):
    """LR规则的内容分拆出现负数"""


class ResidualTooLarge(ComputationError):
    """浮点后端整数化残差超过容差"""

    def __init__(self, residual: float, tolerance: float, result=None):
        self.residual = residual
        self.tolerance = tolerance
        self.result = result
        super().__init__(
            f"浮点残差 {residual:.3e} 超过容差 {tolerance:.1e}，请改用 --backend exact"
        )


# ---- 交叉校验与自检 ----

class CrossCheckDisagreement(LRVCError):
    """Verlinde 与 LR 表格计数结果不一致"""

    exit_code = 4

    def __init__(self, verlinde: int, tableaux: int, witness: Optional[str] = None):
        self.verlinde = verlinde
        self.tableaux = tableaux
        self.witness = witness
        detail = f" ({witness})" if witness else ""
        super().__init__(f"交叉校验不一致: verlinde={verlinde}, tableaux={tableaux}{detail}")


class SelfTestFailure(LRVCError):
    """自检失败"""

    exit_code = 1
