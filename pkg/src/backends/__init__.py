#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
数值后端注册表
"""

from typing import Dict, Optional, Sequence, Type

from .base_backend import BaseBackend, EvaluationStats
from .exact_backend import ExactBackend
from .float_backend import FloatBackend
from ..cyclotomic import CyclotomicNumber
from ..errors import ConfigError

_backend_classes: Dict[str, Type[BaseBackend]] = {
    'exact': ExactBackend,
    'float': FloatBackend,
}


def available_backends():
    return sorted(_backend_classes)


def get_backend(name: str, order: Optional[int] = None, config: Optional[Dict] = None) -> BaseBackend:
    """按名称创建后端实例"""
    backend_class = _backend_classes.get(name)
    if backend_class is None:
        raise ConfigError(f"不支持的后端: {name} (可选: {', '.join(available_backends())})")
    return backend_class(order, config)


def backend_for_values(values: Sequence) -> BaseBackend:
    """按求值点的元素类型推断后端"""
    for value in values:
        if isinstance(value, CyclotomicNumber):
            return ExactBackend(value.order)
    if any(isinstance(value, (float, complex)) for value in values):
        return FloatBackend()
    return ExactBackend()


__all__ = [
    'BaseBackend', 'EvaluationStats', 'ExactBackend', 'FloatBackend',
    'available_backends', 'get_backend', 'backend_for_values',
]
