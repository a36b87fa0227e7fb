#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
命令行集成测试 - 验证 Lrvc.py 的输出与退出码
"""

import json
from pathlib import Path

import pytest

import Lrvc

GOLDEN_DIR = Path(__file__).parent / 'golden'


def run(capsys, *argv):
    code = Lrvc.main(list(argv))
    out = capsys.readouterr().out
    return code, out


@pytest.fixture
def bench_dir(tmp_path):
    config = {
        'run': {},
        'selftest': {'seed': 11, 'max_rank': 2, 'rank2_max_part': 1},
        'bench': {'instances': [{'rank': 2, 'levels': [5, 11]}, {'rank': 3, 'levels': [4]}],
                  'backends': ['exact', 'float']},
    }
    (tmp_path / 'lrvc_config.json').write_text(json.dumps(config), encoding='utf-8')
    return str(tmp_path)


class TestCompute:
    def test_both_methods_agree(self, capsys):
        code, out = run(capsys, 'compute', '1,0', '1,0', '1,1', '--method', 'both')
        assert code == 0
        assert 'coefficient: 1' in out and 'tableaux: 1' in out and 'AGREE' in out

    def test_size_mismatch_is_zero(self, capsys):
        code, out = run(capsys, 'compute', '1,0', '1,0', '2,1')
        assert code == 0 and 'coefficient: 0' in out

    def test_rank_mismatch(self, capsys):
        code, _ = run(capsys, 'compute', '1,0', '1,0,0', '1,1')
        assert code == 2

    def test_parse_error(self, capsys):
        code, _ = run(capsys, 'compute', '1,x', '1,0', '1,1')
        assert code == 2

    def test_negative_parts(self, capsys):
        code, out = run(capsys, 'compute', '0,-1', '1,0', '1,-1', '--verify')
        assert code == 0 and 'AGREE' in out

    def test_leading_negative_argument(self, capsys):
        code, out = run(capsys, 'compute', '-1,-1', '1,1', '0,0')
        assert code == 0 and 'coefficient: 1' in out

    def test_level_too_small(self, capsys):
        code, _ = run(capsys, 'compute', '1,0', '1,0', '1,1', '--k', '3')
        assert code == 3

    def test_bad_level_flag(self, capsys):
        code, _ = run(capsys, 'compute', '1,0', '1,0', '1,1', '--k', 'big')
        assert code == 2

    def test_unknown_method(self):
        with pytest.raises(SystemExit) as info:
            Lrvc.main(['compute', '1,0', '1,0', '1,1', '--method', 'guess'])
        assert info.value.code == 2

    def test_json_schema(self, capsys):
        code, out = run(capsys, 'compute', '1,0', '1,0', '2,0', '--output', 'json', '--no-timing')
        data = json.loads(out)
        assert code == 0
        assert set(data) == {'coefficient', 'method', 'backend', 'level', 'terms', 'elapsed_ms', 'inputs'}
        assert data['coefficient'] == 1 and data['level'] == 9 and data['terms'] == 10
        assert data['elapsed_ms'] is None

    @pytest.mark.parametrize('argv,golden', [
        (['compute', '1,0', '1,0', '1,1'], 'compute_two_boxes.json'),
        (['tensor', '1,0', '1,0', '1,0', '--target', '2,1'], 'tensor_three_boxes.json'),
    ])
    @pytest.mark.parametrize('threads', ['1', '2'])
    def test_json_matches_golden_file(self, capsys, argv, golden, threads):
        code, out = run(capsys, *argv, '--output', 'json', '--no-timing', '--chunk-size', '3',
                        '--threads', threads)
        assert code == 0
        assert out == (GOLDEN_DIR / golden).read_text(encoding='utf-8')

    def test_json_identical_across_threads(self, capsys):
        args = ['compute', '2,1', '1,0', '2,2', '--output', 'json', '--no-timing', '--chunk-size', '2']
        _, single = run(capsys, *args, '--threads', '1')
        _, multi = run(capsys, *args, '--threads', '2')
        assert single == multi

    def test_float_backend_reports_residual(self, capsys):
        code, out = run(capsys, 'compute', '2,1', '1,0', '3,1', '--backend', 'float', '--output', 'json')
        data = json.loads(out)
        assert code == 0 and data['coefficient'] == 1 and data['residual'] < 1e-6

    def test_tableaux_method(self, capsys):
        code, out = run(capsys, 'compute', '2,1,0', '2,1,0', '3,2,1', '--method', 'tableaux',
                        '--output', 'json')
        data = json.loads(out)
        assert code == 0 and data['coefficient'] == 2 and data['method'] == 'tableaux'
        assert data['backend'] is None

    def test_csv_output(self, capsys):
        code, out = run(capsys, 'compute', '1,0', '1,0', '1,1', '--output', 'csv')
        header, row = out.strip().splitlines()
        assert code == 0 and header.startswith('coefficient,') and row.startswith('1,')


class TestTensor:
    @pytest.mark.parametrize('argv,expected', [
        (['1,0', '1,0', '1,0', '--target', '2,1'], 2),
        (['2,1', '--target', '2,1'], 1),
        (['1,0', '1,0', '--target', '3,0'], 0),
    ])
    def test_examples(self, capsys, argv, expected):
        code, out = run(capsys, 'tensor', *argv)
        assert code == 0 and f'coefficient: {expected}' in out

    def test_verify(self, capsys):
        code, out = run(capsys, 'tensor', '1,0', '1,0', '1,0', '--target', '2,1', '--verify')
        assert code == 0 and 'AGREE' in out


class TestDecompose:
    def test_two_boxes(self, capsys):
        code, out = run(capsys, 'decompose', '1,0', '1,0')
        lines = out.strip().splitlines()
        assert code == 0
        assert lines[:2] == ['(2,0):1', '(1,1):1']
        assert lines[-1] == 'identity 4=3+1 PASS'

    def test_trivial_factor(self, capsys):
        code, out = run(capsys, 'decompose', '0,0,0', '2,1,0')
        assert code == 0 and out.splitlines()[0] == '(2,1,0):1'

    def test_verify(self, capsys):
        code, out = run(capsys, 'decompose', '1,0', '1,1', '--verify')
        assert code == 0
        assert out.splitlines()[0].startswith('(2,1):1')
        assert out.strip().splitlines()[-1] == 'AGREE'

    def test_verlinde_table(self, capsys):
        code, out = run(capsys, 'decompose', '1,0', '1,0', '--method', 'verlinde', '--output', 'json')
        data = json.loads(out)
        assert code == 0
        assert [row['nu'] for row in data['table']] == ['2,0', '1,1']
        assert data['identity'].endswith('PASS')


class TestSelftest:
    def test_subset_run(self, capsys, bench_dir):
        code, out = run(capsys, 'selftest', '--suite', 'k-independence', '--max-rank', '2',
                        '--samples', '3', '--config-dir', bench_dir)
        assert code == 0 and 'k-independence' in out and 'PASS' in out

    def test_injected_fault_fails(self, capsys, bench_dir):
        code, out = run(capsys, 'selftest', '--suite', 'k-independence', '--max-rank', '2',
                        '--samples', '3', '--inject-fault', 'phase', '--config-dir', bench_dir)
        assert code == 1
        assert 'FAIL k-independence' in out


class TestBench:
    def test_csv(self, capsys, bench_dir):
        code, out = run(capsys, 'bench', '--config-dir', bench_dir)
        lines = out.strip().splitlines()
        assert code == 0
        assert lines[0] == 'r,k,terms,backend,ms'
        terms = [(line.split(',')[1], line.split(',')[2], line.split(',')[3]) for line in lines[1:]]
        # r=3, k=4 低于最小层级，被跳过
        assert terms == [('5', '6', 'exact'), ('5', '6', 'float'),
                         ('11', '12', 'exact'), ('11', '12', 'float')]

    def test_single_backend(self, capsys, bench_dir):
        code, out = run(capsys, 'bench', '--backend', 'float', '--config-dir', bench_dir)
        assert code == 0 and all(line.split(',')[3] == 'float' for line in out.strip().splitlines()[1:])
