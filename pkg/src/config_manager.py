#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
配置管理器
负责加载、验证和管理运行配置
优先级: 内置默认值 < JSON 配置文件 < LRVC_* 环境变量 < 命令行参数
"""

import json
import logging
import os
import threading
from dataclasses import asdict, dataclass, replace
from pathlib import Path
from typing import Any, Dict, Optional

from .errors import ConfigError
from .verlinde import ComputeOptions

logger = logging.getLogger(__name__)

ENV_PREFIX = 'LRVC_'

METHODS = ('verlinde', 'tableaux', 'both')
BACKENDS = ('exact', 'float')
OUTPUTS = ('text', 'json', 'csv')
LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')

DEFAULTS: Dict[str, Any] = {
    'method': 'verlinde',
    'backend': 'exact',
    'level': None,
    'tolerance': 1e-6,
    'output': 'text',
    'threads': None,
    'chunk_size': 64,
    'verify': False,
    'record_timing': True,
    'log_level': 'WARNING',
}


@dataclass(frozen=True)
class RunConfig:
    """一次命令行运行的配置"""
    method: str = 'verlinde'
    backend: str = 'exact'
    level: Optional[int] = None
    tolerance: float = 1e-6
    output: str = 'text'
    threads: Optional[int] = None
    chunk_size: int = 64
    verify: bool = False
    record_timing: bool = True
    log_level: str = 'WARNING'

    def __post_init__(self):
        if self.method not in METHODS:
            raise ConfigError(f"method 必须是 {'|'.join(METHODS)}: {self.method}")
        if self.backend not in BACKENDS:
            raise ConfigError(f"backend 必须是 {'|'.join(BACKENDS)}: {self.backend}")
        if self.output not in OUTPUTS:
            raise ConfigError(f"output 必须是 {'|'.join(OUTPUTS)}: {self.output}")
        if not self.tolerance > 0:
            raise ConfigError(f"tolerance 必须为正: {self.tolerance}")
        if self.level is not None and self.level < 1:
            raise ConfigError(f"k 必须为正整数: {self.level}")
        if self.threads is not None and self.threads < 1:
            raise ConfigError(f"threads 必须为正整数: {self.threads}")
        if self.chunk_size < 1:
            raise ConfigError(f"chunk_size 必须为正整数: {self.chunk_size}")
        if self.log_level.upper() not in LOG_LEVELS:
            raise ConfigError(f"log_level 无效: {self.log_level}")

    def compute_options(self, **overrides) -> ComputeOptions:
        """转换为 Verlinde 引擎的计算选项"""
        options = ComputeOptions(
            backend=self.backend,
            level=self.level,
            tolerance=self.tolerance,
            workers=self.threads or 1,
            chunk_size=self.chunk_size,
            record_timing=self.record_timing,
        )
        return replace(options, **overrides) if overrides else options

    def with_overrides(self, **overrides) -> 'RunConfig':
        """应用非空的覆盖值 (命令行参数)"""
        values = {key: value for key, value in overrides.items() if value is not None}
        return replace(self, **values) if values else self


def _parse_level(value: Any) -> Optional[int]:
    if value is None:
        return None
    if isinstance(value, str):
        if value.strip().lower() in ('', 'auto'):
            return None
        return int(value)
    return int(value)


def _parse_bool(value: Any) -> bool:
    if isinstance(value, bool):
        return value
    return str(value).strip().lower() in ('1', 'true', 'yes', 'on')


_CONVERTERS = {
    'method': str,
    'backend': str,
    'level': _parse_level,
    'tolerance': float,
    'output': str,
    'threads': lambda v: None if v in (None, '', 'auto') else int(v),
    'chunk_size': int,
    'verify': _parse_bool,
    'record_timing': _parse_bool,
    'log_level': lambda v: str(v).upper(),
}


class ConfigManager:
    """配置管理器"""

    def __init__(self, config_dir: Optional[str] = None, environ: Optional[Dict[str, str]] = None):
        default_dir = Path(__file__).resolve().parent.parent / 'config'
        self.config_dir = Path(config_dir) if config_dir else default_dir
        self.config_path = self.config_dir / 'lrvc_config.json'
        self.environ = os.environ if environ is None else environ

        self.raw_config: Dict[str, Any] = {}
        self._run_config = RunConfig()
        self._lock = threading.Lock()

        # 加载配置
        self.load_config()

    def load_config(self) -> bool:
        """加载配置文件并应用环境变量覆盖"""
        with self._lock:
            values = dict(DEFAULTS)
            loaded = False
            if self.config_path.exists():
                try:
                    with open(self.config_path, 'r', encoding='utf-8') as f:
                        self.raw_config = json.load(f)
                except (OSError, json.JSONDecodeError) as e:
                    raise ConfigError(f"读取配置文件失败 {self.config_path}: {e}") from e
                values.update({k: v for k, v in self.raw_config.get('run', {}).items() if k in DEFAULTS})
                loaded = True
                logger.info(f"配置加载成功: {self.config_path}")
            else:
                logger.warning(f"配置文件不存在，使用内置默认值: {self.config_path}")

            values.update(self._env_overrides())
            self._run_config = self._build(values)
            return loaded

    def reload_config(self):
        """重新加载配置"""
        logger.info("重新加载配置...")
        self.load_config()

    def _env_overrides(self) -> Dict[str, Any]:
        """LRVC_<KEY> 环境变量覆盖"""
        overrides = {}
        for key in DEFAULTS:
            env_key = f"{ENV_PREFIX}{key.upper()}"
            if env_key in self.environ:
                overrides[key] = self.environ[env_key]
                logger.info(f"使用环境变量 {env_key} 覆盖 {key}")
        return overrides

    @staticmethod
    def _build(values: Dict[str, Any]) -> RunConfig:
        """类型转换并验证"""
        converted = {}
        for key, value in values.items():
            try:
                converted[key] = _CONVERTERS[key](value) if value is not None else None
            except (TypeError, ValueError) as e:
                raise ConfigError(f"配置项 {key} 的值无效: {value!r}") from e
        if converted.get('log_level') is None:
            converted['log_level'] = DEFAULTS['log_level']
        for key in ('tolerance', 'chunk_size', 'verify', 'record_timing', 'method', 'backend', 'output'):
            if converted.get(key) is None:
                converted[key] = DEFAULTS[key]
        return RunConfig(**converted)

    def get_run_config(self, **overrides) -> RunConfig:
        """获取运行配置，可附加命令行覆盖"""
        with self._lock:
            config = self._run_config
        return config.with_overrides(**overrides)

    def get_selftest_config(self) -> Dict[str, Any]:
        """获取自检语料配置"""
        with self._lock:
            return dict(self.raw_config.get('selftest', {}))

    def get_bench_config(self) -> Dict[str, Any]:
        """获取基准测试配置"""
        with self._lock:
            return dict(self.raw_config.get('bench', {}))

    def as_dict(self) -> Dict[str, Any]:
        with self._lock:
            return asdict(self._run_config)


# 全局配置管理器实例
_config_manager = None


def get_config_manager() -> ConfigManager:
    """获取全局配置管理器实例"""
    global _config_manager
    if _config_manager is None:
        _config_manager = ConfigManager()
    return _config_manager
