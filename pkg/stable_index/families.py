"""
極値的な有向グラフ族

  cycle:p        C_p                 θ = ∞
  complete:n     K_n（ループ込み）    θ = 1 (n >= 2)
  lollipop:n     C_n + 弧 0→n-1       θ = n (n >= 3)
  g:p,k,q        C_p --(k-1)-路--> C_q    θ = LCM(p,q) + k - 2
  G:p,q,l,t,n    始点 x から C_p, C_q への2本の路と弧 u_i→v_j

頂点番号は固定（出力される隣接行列が実行ごとに一致するように）。
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, List, Optional, Tuple

from .core import INFINITE, Digraph, Theta
from .errors import NotCoprime, ParameterOutOfRange, ParseError, ShrinkNotAllowed, Unrealizable


class FamilyKind(Enum):
    CYCLE = "cycle"
    COMPLETE = "complete"
    LOLLIPOP = "lollipop"
    DUMBBELL = "g"
    THETA_GRAPH = "G"


_ARITY = {
    FamilyKind.CYCLE: 1,
    FamilyKind.COMPLETE: 1,
    FamilyKind.LOLLIPOP: 1,
    FamilyKind.DUMBBELL: 3,
    FamilyKind.THETA_GRAPH: 5,
}


@dataclass(frozen=True)
class FamilySpec:
    """構成のパラメータ表現。G は位数 n まで含む"""
    kind: FamilyKind
    params: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.params) != _ARITY[self.kind]:
            raise ParameterOutOfRange(
                f"{self.kind.value} takes {_ARITY[self.kind]} parameters, got {len(self.params)}"
            )
        if any(x < 1 for x in self.params):
            raise ParameterOutOfRange(f"family parameters must be positive: {self.params}")

    def canonical(self) -> str:
        return f"{self.kind.value}:{','.join(str(x) for x in self.params)}"

    def __str__(self) -> str:
        return self.canonical()

    @classmethod
    def cycle(cls, p: int) -> "FamilySpec":
        return cls(FamilyKind.CYCLE, (p,))

    @classmethod
    def complete(cls, n: int) -> "FamilySpec":
        return cls(FamilyKind.COMPLETE, (n,))

    @classmethod
    def lollipop(cls, n: int) -> "FamilySpec":
        return cls(FamilyKind.LOLLIPOP, (n,))

    @classmethod
    def dumbbell(cls, p: int, k: int, q: int) -> "FamilySpec":
        return cls(FamilyKind.DUMBBELL, (p, k, q))

    @classmethod
    def theta_graph(cls, p: int, q: int, l: int, t: int, n: int) -> "FamilySpec":
        return cls(FamilyKind.THETA_GRAPH, (p, q, l, t, n))


def parse_family_spec(text: str) -> FamilySpec:
    """'g:2,2,3' 形式を読む"""
    name, sep, rest = text.strip().partition(":")
    if not sep:
        raise ParseError(f"family spec must look like 'name:params', got {text!r}")
    try:
        kind = FamilyKind(name)
    except ValueError:
        known = ", ".join(k.value for k in FamilyKind)
        raise ParseError(f"unknown family {name!r} (known: {known})") from None
    try:
        params = tuple(int(x) for x in rest.split(","))
    except ValueError:
        raise ParseError(f"family parameters must be integers: {rest!r}") from None
    try:
        return FamilySpec(kind, params)
    except ParameterOutOfRange as e:
        raise ParseError(e.message) from None


# === 構成 ===


def _cycle_arcs(first: int, length: int) -> List[Tuple[int, int]]:
    return [(first + m, first + (m + 1) % length) for m in range(length)]


def build_cycle(p: int) -> Digraph:
    if p < 1:
        raise ParameterOutOfRange(f"cycle length must be >= 1, got {p}")
    return Digraph(p, frozenset(_cycle_arcs(0, p)))


def build_complete(n: int) -> Digraph:
    if n < 1:
        raise ParameterOutOfRange(f"order must be >= 1, got {n}")
    return Digraph(n, frozenset((u, v) for u in range(n) for v in range(n)))


def build_L(n: int) -> Digraph:
    """C_n に弧 v_1→v_n（0 始まりで 0→n-1）を加えたもの"""
    if n < 3:
        raise ParameterOutOfRange(f"lollipop needs n >= 3, got {n}")
    return Digraph(n, frozenset(_cycle_arcs(0, n) + [(0, n - 1)]))


def build_g(p: int, k: int, q: int) -> Digraph:
    """
    g(p,k,q)

    C_p は 0..p-1、路の内部頂点が続き、C_q が最後。
    路は頂点 0 から出て頂点 p+k-2 に入る（k = 2 なら弧1本）。
    """
    if p < 1 or q < 1 or k < 2:
        raise ParameterOutOfRange(f"g(p,k,q) needs p, q >= 1 and k >= 2, got ({p},{k},{q})")
    entry = p + k - 2
    path = [0] + list(range(p, entry)) + [entry]
    arcs = _cycle_arcs(0, p) + list(zip(path, path[1:])) + _cycle_arcs(entry, q)
    return Digraph(p + q + k - 2, frozenset(arcs))


def _check_G_params(p: int, q: int, l: int, t: int) -> None:
    if p < 1 or q < 1 or t < 1:
        raise ParameterOutOfRange(f"G(p,q,l,t) needs p, q, t >= 1, got ({p},{q},{l},{t})")
    if l < 2:
        raise Unrealizable(f"l = {l} < 2 cannot cover the crossing arc", l=l)


def _G_order(p: int, q: int, l: int, t: int, i: int, j: int) -> int:
    return 1 + (l - 1 - i) + (t - j) + p + q


def G_order_range(p: int, q: int, l: int, t: int) -> Tuple[int, int]:
    """実現可能な位数の範囲 [最小, 最大]"""
    _check_G_params(p, q, l, t)
    return (
        _G_order(p, q, l, t, min(p, l - 1), min(q, t)),
        _G_order(p, q, l, t, 1, 1),
    )


def G_realization(p: int, q: int, l: int, t: int, n: int) -> Tuple[int, int, int, int]:
    """
    位数 n の標準的な実現 (r, s, i, j)

    j = 1, i 最大から始め、位数が足りなければ i を下げ（r が伸びる）、
    多すぎれば j を上げる（s が縮む）。
    """
    _check_G_params(p, q, l, t)
    i, j = min(p, l - 1), 1
    base = _G_order(p, q, l, t, i, j)
    if n > base:
        i -= n - base
    elif n < base:
        j += base - n
    if i < 1 or j > min(q, t):
        lo, hi = G_order_range(p, q, l, t)
        raise Unrealizable(
            f"G({p},{q},{l},{t}) has realizations of order {lo}..{hi}, not {n}",
            n=n, min_order=lo, max_order=hi,
        )
    return l - 1 - i, t - j, i, j


def build_G(p: int, q: int, l: int, t: int, n: int) -> Digraph:
    """
    G(p,q,l,t) の位数 n の代表元

    頂点: x=0, x_1..x_r, u_1..u_p, y_1..y_s, v_1..v_q の順。
    x→…→u_1→…→u_i→v_j の長さが l、x→…→v_1→…→v_j の長さが t。
    """
    r, s, i, j = G_realization(p, q, l, t, n)
    xs = list(range(1, r + 1))
    us = list(range(r + 1, r + 1 + p))
    ys = list(range(r + p + 1, r + p + 1 + s))
    vs = list(range(r + p + s + 1, r + p + s + 1 + q))

    to_p = [0] + xs + [us[0]]
    to_q = [0] + ys + [vs[0]]
    arcs = (
        list(zip(to_p, to_p[1:]))
        + _cycle_arcs(us[0], p)
        + list(zip(to_q, to_q[1:]))
        + _cycle_arcs(vs[0], q)
        + [(us[i - 1], vs[j - 1])]
    )
    return Digraph(n, frozenset(arcs))


def pad_isolated(D: Digraph, n: int) -> Digraph:
    """孤立頂点を追加して位数 n にする（θ は不変）"""
    if n < D.order:
        raise ShrinkNotAllowed(f"cannot pad order {D.order} down to {n}", order=D.order, n=n)
    return D if n == D.order else Digraph(n, D.arcs)


def build_family(spec: FamilySpec) -> Digraph:
    builders = {
        FamilyKind.CYCLE: build_cycle,
        FamilyKind.COMPLETE: build_complete,
        FamilyKind.LOLLIPOP: build_L,
        FamilyKind.DUMBBELL: build_g,
        FamilyKind.THETA_GRAPH: build_G,
    }
    return builders[spec.kind](*spec.params)


# === 閉じた式 ===


def theta_g(p: int, k: int, q: int) -> int:
    if p < 1 or q < 1 or k < 2:
        raise ParameterOutOfRange(f"g(p,k,q) needs p, q >= 1 and k >= 2, got ({p},{k},{q})")
    return math.lcm(p, q) + k - 2


def theta_G(p: int, q: int, l: int, t: int) -> Theta:
    """
    min{l+ap : l+ap = t+bq, a,b >= 0} - 1

    解がなければ ∞ を返すが、実際の θ は有限になりうる（theta_G_exact 参照）。
    """
    if min(p, q, l, t) < 1:
        raise ParameterOutOfRange(f"G(p,q,l,t) parameters must be positive, got ({p},{q},{l},{t})")
    if l == t == 1:
        raise ParameterOutOfRange("l = t = 1 makes the crossing formula 0, which is not a stable index")
    a_max = math.lcm(p, q) // p + -(-abs(l - t) // p)
    for a in range(a_max + 1):
        diff = l + a * p - t
        if diff >= 0 and diff % q == 0:
            return Theta.finite(l + a * p - 1)
    return INFINITE


def _is_combination(m: int, p: int, q: int) -> bool:
    """m = ap + cq (a, c >= 0) か"""
    return m >= 0 and any((m - a * p) % q == 0 for a in range(m // p + 1))


def theta_G_exact(p: int, q: int, l: int, t: int, n: Optional[int] = None) -> Theta:
    """
    位数 n の代表元（build_G）の真の θ。n 省略時は j = 1 の実現

    x からの2経路（C_p 経由と直行）が v_j で合流する最小の長さ X と、
    u_i→v_j を含む g(p,q) 部分の LCM(p,q) の小さい方。
    t - l - q が p, q の非負結合なら、C_p 経由の歩道が C_q を回って
    直行路の最初の到着（v_1、時刻 t-j+1）に追いつく。
    """
    _check_G_params(p, q, l, t)
    j = 1 if n is None else G_realization(p, q, l, t, n)[3]
    lcm = math.lcm(p, q)
    meet = lcm + 1
    for length in range(max(l, t), lcm + 2):
        if (length - t) % q == 0 and _is_combination(length - l, p, q):
            meet = length
            break
    if _is_combination(t - l - q, p, q):
        meet = min(meet, t - j + 1)
    return Theta.finite(min(meet - 1, lcm))


def f_set(p: int, q: int, d: int, n: int) -> FrozenSet[int]:
    """
    f(p,q,d) = {θ(G(p,q,l,t)) : l - t = d}

    (l, t) は最小位数が n 以下のもの（孤立頂点で n に揃える）。
    """
    if not (p > q >= 1) or d < 1 or n < p + q + 1:
        raise ParameterOutOfRange(
            f"f_set needs p > q >= 1, d >= 1, n >= p+q+1, got ({p},{q},{d},{n})"
        )
    values = set()
    for t in range(1, n + 1):
        l = t + d
        if G_order_range(p, q, l, t)[0] > n:
            break
        theta = theta_G(p, q, l, t)
        if theta.is_finite:
            values.add(theta.value)
    return frozenset(values)  # type: ignore[arg-type]


def family_theta(spec: FamilySpec) -> Theta:
    """閉じた式による θ"""
    if spec.kind is FamilyKind.CYCLE:
        return INFINITE
    if spec.kind is FamilyKind.COMPLETE:
        return INFINITE if spec.params[0] == 1 else Theta.finite(1)
    if spec.kind is FamilyKind.LOLLIPOP:
        return Theta.finite(spec.params[0])
    if spec.kind is FamilyKind.DUMBBELL:
        return Theta.finite(theta_g(*spec.params))
    return theta_G_exact(*spec.params)


# === 数論 ===


def residue_permutation_check(p: int, q: int) -> bool:
    """kq mod p (k = 1..p-1) が {1..p-1} の並べ替えか"""
    if p < 1 or q < 1:
        raise ParameterOutOfRange(f"p, q must be positive, got ({p},{q})")
    if math.gcd(p, q) != 1:
        raise NotCoprime(f"gcd({p},{q}) = {math.gcd(p, q)}")
    return sorted(k * q % p for k in range(1, p)) == list(range(1, p))


def min_coeff(p: int, q: int) -> int:
    """min{u >= 0 : p - q = uq - vp, v >= 0}（全探索。p - 1 になるはず）"""
    if not p > q > 1:
        raise ParameterOutOfRange(f"min_coeff needs p > q > 1, got ({p},{q})")
    if math.gcd(p, q) != 1:
        raise NotCoprime(f"gcd({p},{q}) = {math.gcd(p, q)}")
    for u in range(p + 1):
        rest = u * q - (p - q)
        if rest >= 0 and rest % p == 0:
            return u
    raise ParameterOutOfRange(f"no coefficient found for ({p},{q})")
