#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
分圆域 Q(ζ_N) 精确算术
元素以幂基 1, ζ, …, ζ^{φ(N)-1} 表示，模分圆多项式 Φ_N 约化。
系数存为整数分子向量加一个公共正分母，二者整体互素，因此表示是规范的。
"""

import logging
import math
import threading
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple, Union

import mpmath

from .errors import DivisionByZero, NotRational, OrderMismatch, ZeroAngle

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]

# 每个阶只计算一次，之后只读
_phi_table: Dict[int, Tuple[int, ...]] = {}
_power_table: Dict[int, Tuple[Tuple[int, ...], ...]] = {}
_unit_table: Dict[int, Dict[Tuple[int, ...], int]] = {}
_one_minus_root_inverse_table: Dict[Tuple[int, int], 'CyclotomicNumber'] = {}
_pair_weight_table: Dict[Tuple[int, int, int, int], 'CyclotomicNumber'] = {}
_table_lock = threading.Lock()


def _poly_exact_div(num: List[int], den: Sequence[int]) -> List[int]:
    """整系数多项式除以首一多项式，要求整除 (系数从低到高)"""
    num = list(num)
    dd = len(den) - 1
    quotient = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            quotient[i - dd] = c
            for j in range(dd + 1):
                num[i - dd + j] -= c * den[j]
    assert not any(num), "分圆多项式除法有余数"
    return quotient


def cyclotomic_polynomial(order: int) -> Tuple[int, ...]:
    """Φ_N 的整系数 (从低到高)，由 z^N - 1 依次除以真因子 d 的 Φ_d 得到"""
    cached = _phi_table.get(order)
    if cached is not None:
        return cached
    if order < 1:
        raise ValueError(f"分圆多项式的阶必须为正: {order}")
    poly = [-1] + [0] * (order - 1) + [1]
    for d in range(1, order):
        if order % d == 0:
            poly = _poly_exact_div(poly, cyclotomic_polynomial(d))
    with _table_lock:
        result = _phi_table.setdefault(order, tuple(poly))
    logger.debug(f"计算 Φ_{order}，次数 {len(result) - 1}")
    return result


def euler_phi(order: int) -> int:
    return len(cyclotomic_polynomial(order)) - 1


def _reduce(coeffs: List[int], order: int) -> List[int]:
    """整系数向量模 Φ_N 约化到长度 φ(N)"""
    phi = cyclotomic_polynomial(order)
    degree = len(phi) - 1
    coeffs = list(coeffs)
    for i in range(len(coeffs) - 1, degree - 1, -1):
        c = coeffs[i]
        if c:
            base = i - degree
            for j in range(degree):
                coeffs[base + j] -= c * phi[j]
            coeffs[i] = 0
    if len(coeffs) < degree:
        coeffs.extend([0] * (degree - len(coeffs)))
    return coeffs[:degree]


def _power_basis(order: int) -> Tuple[Tuple[int, ...], ...]:
    """ζ_N^e (0 ≤ e < N) 的约化系数表"""
    cached = _power_table.get(order)
    if cached is not None:
        return cached
    rows = []
    for e in range(order):
        raw = [0] * (e + 1)
        raw[e] = 1
        rows.append(tuple(_reduce(raw, order)))
    with _table_lock:
        return _power_table.setdefault(order, tuple(rows))


def _unit_index(order: int) -> Dict[Tuple[int, ...], int]:
    """约化系数 -> 指数 e 的反查表，用于单位根的快速求逆"""
    cached = _unit_table.get(order)
    if cached is not None:
        return cached
    index = {row: e for e, row in enumerate(_power_basis(order))}
    with _table_lock:
        return _unit_table.setdefault(order, index)


class CyclotomicNumber:
    """Q(ζ_N) 中的精确元素"""

    __slots__ = ('order', 'num', 'den')

    def __init__(self, order: int, num: Sequence[int], den: int = 1):
        if den == 0:
            raise DivisionByZero("分母为零")
        if den < 0:
            num = [-c for c in num]
            den = -den
        g = den
        for c in num:
            g = math.gcd(g, c)
            if g == 1:
                break
        if g != 1:
            num = [c // g for c in num]
            den //= g
        self.order = order
        self.num = tuple(num)
        self.den = den

    # ---- 构造 ----

    @classmethod
    def from_rational(cls, order: int, value: Scalar) -> 'CyclotomicNumber':
        q = Fraction(value)
        num = [0] * euler_phi(order)
        num[0] = q.numerator
        return cls(order, num, q.denominator)

    @classmethod
    def zero(cls, order: int) -> 'CyclotomicNumber':
        return cls.from_rational(order, 0)

    @classmethod
    def one(cls, order: int) -> 'CyclotomicNumber':
        return cls.from_rational(order, 1)

    @classmethod
    def from_poly(cls, order: int, coeffs: Sequence[Scalar]) -> 'CyclotomicNumber':
        """由任意长度的有理系数多项式构造 (自动约化)"""
        fractions = [Fraction(c) for c in coeffs]
        den = 1
        for f in fractions:
            den = den * f.denominator // math.gcd(den, f.denominator)
        ints = [int(f * den) for f in fractions]
        return cls(order, _reduce(ints, order), den)

    @classmethod
    def from_exponent_counts(cls, order: int, counts: Sequence[int]) -> 'CyclotomicNumber':
        """Σ_e counts[e]·ζ^e (0 ≤ e < N)"""
        return cls(order, _reduce(list(counts), order))

    # ---- 属性 ----

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        """幂基上的既约有理系数"""
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"({c})ζ^{i}")
        body = " + ".join(terms) if terms else "0"
        return f"CyclotomicNumber[N={self.order}]({body})"

    def __eq__(self, other) -> bool:
        if isinstance(other, CyclotomicNumber):
            if other.order != self.order:
                if self.is_rational() and other.is_rational():
                    return self.num[0] * other.den == other.num[0] * self.den
                return False
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(Fraction(self.num[0], self.den))
        return hash((self.order, self.num, self.den))

    def __getstate__(self):
        return (self.order, self.num, self.den)

    def __setstate__(self, state):
        self.order, self.num, self.den = state

    # ---- 域运算 ----

    def _coerce(self, other) -> 'CyclotomicNumber':
        if isinstance(other, CyclotomicNumber):
            if other.order == self.order:
                return other
            if other.is_rational():
                return CyclotomicNumber.from_rational(self.order, Fraction(other.num[0], other.den))
            raise OrderMismatch(self.order, other.order)
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber.from_rational(self.order, other)
        raise TypeError(f"不支持的操作数类型: {type(other).__name__}")

    def _lift(self, other) -> Tuple['CyclotomicNumber', 'CyclotomicNumber']:
        """统一两个操作数的阶；一方为有理数时提升到另一方的阶"""
        if isinstance(other, CyclotomicNumber) and other.order != self.order and self.is_rational():
            return other._coerce(self), other
        return self, self._coerce(other)

    def __add__(self, other) -> 'CyclotomicNumber':
        if not isinstance(other, (CyclotomicNumber, int, Fraction)):
            return NotImplemented
        a, b = self._lift(other)
        num = [x * b.den + y * a.den for x, y in zip(a.num, b.num)]
        return CyclotomicNumber(a.order, num, a.den * b.den)

    __radd__ = __add__

    def __neg__(self) -> 'CyclotomicNumber':
        return CyclotomicNumber(self.order, [-c for c in self.num], self.den)

    def __sub__(self, other) -> 'CyclotomicNumber':
        if not isinstance(other, (CyclotomicNumber, int, Fraction)):
            return NotImplemented
        a, b = self._lift(other)
        return a + (-b)

    def __rsub__(self, other) -> 'CyclotomicNumber':
        return (-self) + other

    def __mul__(self, other) -> 'CyclotomicNumber':
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        a, b = self._lift(other)
        if a.is_rational():
            return b.scale(Fraction(a.num[0], a.den))
        if b.is_rational():
            return a.scale(Fraction(b.num[0], b.den))
        raw = [0] * (len(a.num) + len(b.num) - 1)
        for i, x in enumerate(a.num):
            if x:
                for j, y in enumerate(b.num):
                    if y:
                        raw[i + j] += x * y
        return CyclotomicNumber(a.order, _reduce(raw, a.order), a.den * b.den)

    __rmul__ = __mul__

    def scale(self, q: Scalar) -> 'CyclotomicNumber':
        """有理数数乘"""
        q = Fraction(q)
        return CyclotomicNumber(self.order, [c * q.numerator for c in self.num], self.den * q.denominator)

    def __truediv__(self, other) -> 'CyclotomicNumber':
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZero("除以零")
            return self.scale(1 / Fraction(other))
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        a, b = self._lift(other)
        return a * b.inverse()

    def __rtruediv__(self, other) -> 'CyclotomicNumber':
        return self._coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> 'CyclotomicNumber':
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = CyclotomicNumber.one(self.order)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def inverse(self) -> 'CyclotomicNumber':
        """模 Φ_N 的扩展欧几里得求逆"""
        if self.is_zero():
            raise DivisionByZero("零元素没有逆元")
        if self.is_rational():
            return CyclotomicNumber.from_rational(self.order, Fraction(self.den, self.num[0]))
        units = _unit_index(self.order)
        if self.den == 1:
            if self.num in units:
                return root_of_unity(self.order, -units[self.num])
            negated = tuple(-c for c in self.num)
            if negated in units:
                return -root_of_unity(self.order, -units[negated])
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        a = _trim([Fraction(c) for c in self.num])
        # 不变量: s * self ≡ r0 (mod Φ_N)
        r0, r1 = a, phi
        s0: List[Fraction] = [Fraction(1)]
        s1: List[Fraction] = []
        while len(r1) > 0:
            q, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # r0 是非零常数 (Φ_N 不可约)
        assert len(r0) == 1, "求逆失败: 最大公因式不是常数"
        c = r0[0]
        coeffs = [x / c * self.den for x in s0]
        return CyclotomicNumber.from_poly(self.order, coeffs)

    def conjugate(self) -> 'CyclotomicNumber':
        """复共轭 ζ ↦ ζ^{-1}"""
        table = _power_basis(self.order)
        num = [0] * len(self.num)
        for i, c in enumerate(self.num):
            if c:
                row = table[(-i) % self.order]
                for j, x in enumerate(row):
                    if x:
                        num[j] += c * x
        return CyclotomicNumber(self.order, num, self.den)

    # ---- 输出 ----

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise NotRational(f"元素不在 Q 中: {self!r}")
        return Fraction(self.num[0], self.den)

    def to_complex(self, precision: int = 30) -> complex:
        """ζ_N ↦ exp(2πi/N) 的数值嵌入，precision 为十进制位数"""
        with mpmath.workdps(max(precision, 15) + 10):
            zeta = mpmath.expjpi(mpmath.mpf(2) / self.order)
            total = mpmath.mpc(0)
            power = mpmath.mpc(1)
            for c in self.num:
                if c:
                    total += c * power
                power *= zeta
            total /= self.den
            return complex(total)


def root_of_unity(order: int, exponent: int) -> CyclotomicNumber:
    """ζ_N^e，指数先模 N 约化"""
    if order < 1:
        raise ValueError(f"单位根的阶必须为正: {order}")
    return CyclotomicNumber(order, _power_basis(order)[exponent % order])


def two_sin_sq(order: int, m: int) -> CyclotomicNumber:
    """(2 sin(πm/N))² = (1 - ζ^m)(1 - ζ^{-m}) = 2 - ζ^m - ζ^{-m}"""
    if m % order == 0:
        raise ZeroAngle(order, m)
    return 2 - root_of_unity(order, m) - root_of_unity(order, -m)


def inverse_one_minus_root(order: int, m: int) -> CyclotomicNumber:
    """1 / (1 - ζ^m) 的闭式: w = ζ^m 的阶为 d 时等于 -(1/d) Σ_{j<d} j·w^j"""
    m %= order
    if m == 0:
        raise ZeroAngle(order, m)
    key = (order, m)
    cached = _one_minus_root_inverse_table.get(key)
    if cached is not None:
        return cached
    d = order // math.gcd(m, order)
    raw = [0] * order
    for j in range(1, d):
        raw[(m * j) % order] -= j
    value = CyclotomicNumber(order, _reduce(raw, order), d)
    with _table_lock:
        return _one_minus_root_inverse_table.setdefault(key, value)


def inverse_root_difference(order: int, a: int, b: int) -> CyclotomicNumber:
    """1 / (ζ^a - ζ^b) = ζ^{-a} / (1 - ζ^{b-a})"""
    return root_of_unity(order, -a) * inverse_one_minus_root(order, b - a)


def sine_weight_pair(order: int, a: int, b: int, power: int) -> CyclotomicNumber:
    """two_sin_sq(N, a-b) / (ζ^a - ζ^b)^power

    令 d = a - b、u = 1 - ζ^{-d}，则 two_sin_sq = -ζ^d·u²，1/(ζ^a - ζ^b) = ζ^{-a}/u，
    结果为 -ζ^{d - power·a}·u^{2 - power}。按 (N, a, b, power) 记忆。
    """
    key = (order, a % order, b % order, power)
    cached = _pair_weight_table.get(key)
    if cached is not None:
        return cached
    d = a - b
    if d % order == 0:
        raise ZeroAngle(order, d)
    if power >= 2:
        base = inverse_one_minus_root(order, -d)
    else:
        base = 1 - root_of_unity(order, -d)
    value = -(root_of_unity(order, d - power * a) * base ** abs(power - 2))
    with _table_lock:
        return _pair_weight_table.setdefault(key, value)


def add(x: CyclotomicNumber, y: CyclotomicNumber) -> CyclotomicNumber:
    return x + y


def sub(x: CyclotomicNumber, y: CyclotomicNumber) -> CyclotomicNumber:
    return x - y


def mul(x: CyclotomicNumber, y: CyclotomicNumber) -> CyclotomicNumber:
    return x * y


def scale(x: CyclotomicNumber, q: Scalar) -> CyclotomicNumber:
    return x.scale(q)


def inverse(x: CyclotomicNumber) -> CyclotomicNumber:
    return x.inverse()


# ---- Q[z] 多项式辅助 (系数从低到高，无尾零) ----

def _trim(p: List[Fraction]) -> List[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_sub(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _trim([Fraction(x) for x in out])


def _poly_mul(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _poly_divmod(a: List[Fraction], b: List[Fraction]) -> Tuple[List[Fraction], List[Fraction]]:
    rem = list(a)
    if len(rem) < len(b):
        return [], _trim(rem)
    quotient = [Fraction(0)] * (len(rem) - len(b) + 1)
    lead = b[-1]
    for i in range(len(rem) - len(b), -1, -1):
        c = rem[i + len(b) - 1] / lead
        quotient[i] = c
        if c:
            for j, y in enumerate(b):
                rem[i + j] -= c * y
    return _trim(quotient), _trim(rem[:len(b) - 1])
