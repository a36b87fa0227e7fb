# -*- coding: utf-8 -*-
"""LRVC: 用 Verlinde 公式计算 GL_r 的 Littlewood-Richardson 系数"""

__version__ = '1.0.0'
