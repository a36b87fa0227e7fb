#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
输出格式化
把计算结果渲染为 text / json / csv；表格统一先构造 pandas.DataFrame
"""

import json
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd

from .lr_oracle import DecompositionTable
from .verlinde import LRResult

BENCH_COLUMNS = ['r', 'k', 'terms', 'backend', 'ms']


def dump_json(data: Any) -> str:
    """稳定的 JSON 文本 (键排序，便于逐字节比较)"""
    return json.dumps(data, sort_keys=True, ensure_ascii=False, indent=2)


def _flatten(data: Dict[str, Any]) -> Dict[str, Any]:
    flat = {key: value for key, value in data.items() if key != 'inputs'}
    for key, value in data.get('inputs', {}).items():
        flat[key] = ' '.join(value) if isinstance(value, list) else value
    return flat


def verdict(agree: bool) -> str:
    return 'AGREE' if agree else 'DISAGREE'


def result_payload(result: LRResult, tableaux: Optional[int] = None) -> Dict[str, Any]:
    """LRResult 的输出结构；提供 tableaux 时附加交叉验证字段"""
    data = result.to_dict()
    if tableaux is not None:
        data['method'] = 'both'
        data['tableaux'] = tableaux
        data['verdict'] = verdict(result.coefficient == tableaux)
    return data


def render_result(result: LRResult, fmt: str, tableaux: Optional[int] = None) -> str:
    """单个系数的报告"""
    data = result_payload(result, tableaux)
    if fmt == 'json':
        return dump_json(data)
    if fmt == 'csv':
        return pd.DataFrame([_flatten(data)]).to_csv(index=False).rstrip('\n')

    if tableaux is None:
        lines = [f"coefficient: {result.coefficient}"]
    else:
        lines = [f"coefficient: {result.coefficient}", f"tableaux: {tableaux}", data['verdict']]
    for key in ('method', 'backend', 'level', 'terms', 'residual', 'elapsed_ms'):
        if data.get(key) is not None:
            lines.append(f"{key}: {data[key]}")
    return '\n'.join(lines)


def decomposition_frame(table: DecompositionTable,
                        verlinde: Optional[DecompositionTable] = None) -> pd.DataFrame:
    """分解表: 按 ν 字典序递减；给出 verlinde 时追加对照列"""
    rows: List[Dict[str, Any]] = []
    support = dict(table.entries)
    if verlinde is not None:
        for nu in verlinde.entries:
            support.setdefault(nu, 0)
    for nu in sorted(support, key=lambda p: p.parts, reverse=True):
        row = {'nu': str(nu), 'multiplicity': table.get(nu), 'dimension': nu.gl_dimension()}
        if verlinde is not None:
            row['verlinde'] = verlinde.get(nu)
            row['check'] = verdict(row['verlinde'] == row['multiplicity'])
        rows.append(row)
    columns = ['nu', 'multiplicity', 'dimension'] + (['verlinde', 'check'] if verlinde is not None else [])
    return pd.DataFrame(rows, columns=columns)


def identity_line(table: DecompositionTable, expected: int) -> str:
    """维数恒等式: dim λ · dim μ = Σ c · dim ν"""
    terms = [f"{mult}*{nu.gl_dimension()}" if mult != 1 else str(nu.gl_dimension())
             for nu, mult in table.items()]
    actual = table.dimension_sum()
    status = 'PASS' if actual == expected else 'FAIL'
    return f"{expected}={'+'.join(terms) or '0'} {status}"


def render_decomposition(frame: pd.DataFrame, identity: str, fmt: str,
                         cross_check: Optional[bool] = None) -> str:
    if fmt == 'json':
        data: Dict[str, Any] = {'table': frame.to_dict(orient='records'), 'identity': identity}
        if cross_check is not None:
            data['verdict'] = verdict(cross_check)
        return dump_json(data)
    if fmt == 'csv':
        return frame.to_csv(index=False).rstrip('\n')

    lines = []
    for row in frame.to_dict(orient='records'):
        line = f"({row['nu']}):{row['multiplicity']}"
        if 'check' in row:
            line += f"  verlinde={row['verlinde']} {row['check']}"
        lines.append(line)
    lines.append(f"identity {identity}")
    if cross_check is not None:
        lines.append(verdict(cross_check))
    return '\n'.join(lines)


def bench_frame(rows: Sequence[Dict[str, Any]]) -> pd.DataFrame:
    return pd.DataFrame(list(rows), columns=BENCH_COLUMNS)


def render_bench(frame: pd.DataFrame, fmt: str) -> str:
    if fmt == 'json':
        return dump_json(frame.to_dict(orient='records'))
    return frame.to_csv(index=False).rstrip('\n')


def selftest_frame(results) -> pd.DataFrame:
    """自检汇总: 每个套件一行"""
    rows = [{
        'suite': r.name,
        'status': 'PASS' if r.passed else 'FAIL',
        'checked': r.checked,
        'seconds': round(r.elapsed, 2),
        'witness': r.witness or '',
    } for r in results]
    return pd.DataFrame(rows, columns=['suite', 'status', 'checked', 'seconds', 'witness'])


def render_selftest(frame: pd.DataFrame, fmt: str) -> str:
    if fmt == 'json':
        return dump_json(frame.to_dict(orient='records'))
    if fmt == 'csv':
        return frame.to_csv(index=False).rstrip('\n')
    return frame.to_string(index=False)
