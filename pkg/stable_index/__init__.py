"""
stable-index

有向グラフの安定指数 θ の計算、極値的グラフ族の構成、
位数 n で実現可能な指数集合 Θ(n) の計算と証拠グラフの生成。
"""

__version__ = "0.1.0"
