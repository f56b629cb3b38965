"""
有向グラフと安定指数 θ の計算

θ(D) は D が同じ始点・終点をもつ相異なる (k+1)-歩道を2本含む最小の k。
存在しなければ ∞。隣接行列 A では A^{k+1} が 0-1 行列でなくなる最小の k。

頂点は内部的に 0 始まり。
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import (
    BudgetExceeded,
    DimensionMismatch,
    DuplicateArc,
    IndexOutOfRange,
    ParameterOutOfRange,
    ParseError,
)

Arc = Tuple[int, int]

SATURATION = 2  # 「2以上」を表す飽和値


# === 型 ===


@dataclass(frozen=True)
class Digraph:
    """
    位数 n の有向グラフ（ループ可、多重弧なし）

    arcs は (u, v) の集合。各端点は [0, n) に入る。
    """
    order: int
    arcs: FrozenSet[Arc] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.order < 1:
            raise ParameterOutOfRange(f"order must be >= 1, got {self.order}", order=self.order)
        object.__setattr__(self, "arcs", frozenset(self.arcs))
        for u, v in self.arcs:
            if not (0 <= u < self.order and 0 <= v < self.order):
                raise IndexOutOfRange(
                    f"arc ({u}, {v}) has an endpoint outside [0, {self.order})",
                    arc=(u, v), order=self.order,
                )

    def successors(self) -> List[List[int]]:
        out: List[List[int]] = [[] for _ in range(self.order)]
        for u, v in sorted(self.arcs):
            out[u].append(v)
        return out

    def row_masks(self) -> List[int]:
        """行ごとのビットマスク（ビット j が弧 i→j）"""
        rows = [0] * self.order
        for u, v in self.arcs:
            rows[u] |= 1 << v
        return rows

    def sorted_arcs(self) -> List[Arc]:
        return sorted(self.arcs)


@dataclass(frozen=True)
class Theta:
    """安定指数。value が None なら ∞"""
    value: Optional[int] = None

    @classmethod
    def finite(cls, k: int) -> "Theta":
        if k < 1:
            raise ParameterOutOfRange(f"a finite stable index is >= 1, got {k}")
        return cls(k)

    @property
    def is_finite(self) -> bool:
        return self.value is not None

    def sort_key(self) -> Tuple[int, int]:
        return (1, 0) if self.value is None else (0, self.value)

    @classmethod
    def parse(cls, text: str) -> "Theta":
        text = text.strip().lower()
        if text in ("inf", "infinite", "∞"):
            return INFINITE
        try:
            k = int(text)
        except ValueError as e:
            raise ParseError(f"not a stable index: {text!r}") from e
        if k < 1:
            raise ParseError(f"stable index must be >= 1 or inf, got {k}")
        return cls(k)

    def __str__(self) -> str:
        return "inf" if self.value is None else str(self.value)


INFINITE = Theta(None)


@dataclass(frozen=True, eq=False)
class SaturatingMatrix:
    """n×n の歩道数行列（各成分は 0, 1, 2 で、2 は「2以上」）"""
    entries: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.entries, dtype=np.uint8)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise DimensionMismatch(f"expected a non-empty square matrix, got shape {arr.shape}")
        if arr.size and int(arr.max()) > SATURATION:
            raise ParameterOutOfRange("saturating entries must lie in {0, 1, 2}")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def dim(self) -> int:
        return int(self.entries.shape[0])

    def is_zero_one(self) -> bool:
        return int(self.entries.max()) < SATURATION

    def key(self) -> bytes:
        return self.entries.tobytes()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SaturatingMatrix) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    @classmethod
    def identity(cls, dim: int) -> "SaturatingMatrix":
        return cls(np.eye(dim, dtype=np.uint8))


@dataclass(frozen=True)
class Explanation:
    """最初の重複歩道の位置"""
    theta: Theta
    u: Optional[int] = None
    v: Optional[int] = None
    length: Optional[int] = None


# === 構築 ===


def digraph_from_arcs(n: int, arcs: Iterable[Sequence[int]]) -> Digraph:
    """弧リストから有向グラフを作る（重複はエラー）"""
    if n < 1:
        raise ParameterOutOfRange(f"order must be >= 1, got {n}", order=n)
    seen: set[Arc] = set()
    for pair in arcs:
        u, v = int(pair[0]), int(pair[1])
        if not (0 <= u < n and 0 <= v < n):
            raise IndexOutOfRange(f"arc ({u}, {v}) has an endpoint outside [0, {n})", arc=(u, v), order=n)
        if (u, v) in seen:
            raise DuplicateArc(f"arc ({u}, {v}) appears twice", arc=(u, v))
        seen.add((u, v))
    return Digraph(n, frozenset(seen))


def adjacency(D: Digraph) -> SaturatingMatrix:
    a = np.zeros((D.order, D.order), dtype=np.uint8)
    for u, v in D.arcs:
        a[u, v] = 1
    return SaturatingMatrix(a)


def sat_multiply(M: SaturatingMatrix, A: SaturatingMatrix) -> SaturatingMatrix:
    """飽和積 min(2, Σ_k M(i,k)·A(k,j))"""
    if M.dim != A.dim:
        raise DimensionMismatch(f"cannot multiply {M.dim}x{M.dim} by {A.dim}x{A.dim}")
    product = M.entries.astype(np.int64) @ A.entries.astype(np.int64)
    return SaturatingMatrix(np.minimum(product, SATURATION).astype(np.uint8))


# === 上界 ===


_SMALL_S = {1: 0, 2: 1, 3: 3, 4: 4, 5: 6, 6: 7}


def s_max(n: int) -> int:
    """位数 n の有向グラフの有限安定指数の最大値 s(n)。n = 1 は 0"""
    if n < 1:
        raise ParameterOutOfRange(f"order must be >= 1, got {n}", order=n)
    if n in _SMALL_S:
        return _SMALL_S[n]
    if n % 2 == 1:
        return (n * n - 1) // 4
    if n % 4 == 0:
        return (n * n - 4) // 4
    return (n * n - 16) // 4


# === θ アルゴリズム ===


def stable_index_bounded(D: Digraph) -> Theta:
    """A^2 .. A^{s(n)+1} を順に計算し、最初に 2 を含む冪で止める"""
    A = adjacency(D)
    M = A
    for power in range(2, s_max(D.order) + 2):
        M = sat_multiply(M, A)
        if not M.is_zero_one():
            return Theta.finite(power - 1)
    return INFINITE


def stable_index_cycle_detect(D: Digraph, max_states: Optional[int] = None) -> Theta:
    """
    上界を使わずに冪を反復する。

    0-1 冪は有限集合に属するので、既出の冪が再来したら以後すべて 0-1。
    """
    A = adjacency(D)
    M = A
    seen = {M.key()}
    power = 1
    while True:
        M = sat_multiply(M, A)
        power += 1
        if not M.is_zero_one():
            return Theta.finite(power - 1)
        key = M.key()
        if key in seen:
            return INFINITE
        seen.add(key)
        if max_states is not None and len(seen) > max_states:
            raise BudgetExceeded(
                f"more than {max_states} distinct 0-1 powers stored",
                order=D.order, max_states=max_states,
            )


def stable_index(D: Digraph, algorithm: str = "bounded") -> Theta:
    if algorithm == "bounded":
        return stable_index_bounded(D)
    if algorithm == "cycle":
        return stable_index_cycle_detect(D)
    if algorithm == "bitset":
        return bitset_stable_index(D.order, encode_rows(D.row_masks(), D.order))
    raise ParameterOutOfRange(f"unknown algorithm {algorithm!r}")


def explain(D: Digraph) -> Explanation:
    """θ と、長さ θ+1 で最初に2本の歩道をもつ頂点対"""
    A = adjacency(D)
    M = A
    for power in range(2, s_max(D.order) + 2):
        M = sat_multiply(M, A)
        hits = np.argwhere(M.entries >= SATURATION)
        if len(hits):
            u, v = (int(x) for x in hits[0])
            return Explanation(Theta.finite(power - 1), u, v, power)
    return Explanation(INFINITE)


# 列挙用カーネル: 行をビットマスクで持つ。0-1 冪の間は各行がそのまま集合。


def encode_rows(rows: Sequence[int], n: int) -> int:
    code = 0
    for i, row in enumerate(rows):
        code |= row << (i * n)
    return code


def bitset_stable_index(n: int, code: int) -> Theta:
    """符号 code（ビット i·n+j が弧 i→j）の有向グラフの θ"""
    mask = (1 << n) - 1
    rows = [(code >> (i * n)) & mask for i in range(n)]
    power_rows = rows
    for power in range(2, s_max(n) + 2):
        nxt = []
        for row in power_rows:
            ones = 0
            k = 0
            while row:
                if row & 1:
                    r = rows[k]
                    if ones & r:
                        return Theta.finite(power - 1)
                    ones |= r
                row >>= 1
                k += 1
            nxt.append(ones)
        power_rows = nxt
    return INFINITE


# === 歩道オラクル ===


def walk_count_oracle(
    D: Digraph,
    u: int,
    v: int,
    length: int,
    budget: int = 1_000_000,
) -> int:
    """
    長さ length の u→v 歩道を頂点列の深さ優先列挙で数える（行列を使わない）。

    budget は展開する接頭辞の数の上限。
    """
    if length < 0:
        raise ParameterOutOfRange(f"walk length must be >= 0, got {length}")
    if not (0 <= u < D.order and 0 <= v < D.order):
        raise IndexOutOfRange(f"vertex pair ({u}, {v}) outside [0, {D.order})")

    succ = D.successors()
    count = 0
    expanded = 0
    stack: List[Tuple[int, int]] = [(u, 0)]
    while stack:
        vertex, depth = stack.pop()
        if depth == length:
            if vertex == v:
                count += 1
            continue
        expanded += 1
        if expanded > budget:
            raise BudgetExceeded(
                f"walk enumeration exceeded {budget} prefixes",
                u=u, v=v, length=length,
            )
        for w in succ[vertex]:
            stack.append((w, depth + 1))
    return count


def oracle_stable_index(
    D: Digraph,
    max_length: Optional[int] = None,
    budget: int = 1_000_000,
) -> Theta:
    """
    オラクルのみで θ を求める。長さ 2 .. s(n)+1 を調べる。

    max_length が s(n)+1 未満なら、そこまでに重複歩道がなければ ∞ と断定できず BudgetExceeded。
    """
    needed = s_max(D.order) + 1
    limit = needed if max_length is None else min(max_length, needed)
    for length in range(2, limit + 1):
        for a in range(D.order):
            for b in range(D.order):
                if walk_count_oracle(D, a, b, length, budget) >= 2:
                    return Theta.finite(length - 1)
    if limit < needed:
        raise BudgetExceeded(
            f"walk lengths up to {limit} cannot settle order {D.order} (needs {needed})",
            order=D.order, max_length=limit, needed=needed,
        )
    return INFINITE


# === 連結性 ===


def _reach_masks(rows: Sequence[int]) -> List[int]:
    """各頂点から到達可能な頂点集合（長さ1以上の歩道）"""
    n = len(rows)
    reach = list(rows)
    changed = True
    while changed:
        changed = False
        for i in range(n):
            acc = reach[i]
            bits, k = reach[i], 0
            while bits:
                if bits & 1:
                    acc |= reach[k]
                bits >>= 1
                k += 1
            if acc != reach[i]:
                reach[i] = acc
                changed = True
    return reach


def strong_components(D: Digraph) -> List[FrozenSet[int]]:
    """強連結成分（頂点番号の小さい順）"""
    reach = _reach_masks(D.row_masks())
    full = [reach[i] | (1 << i) for i in range(D.order)]
    components: List[FrozenSet[int]] = []
    assigned = 0
    for i in range(D.order):
        if assigned >> i & 1:
            continue
        members = [j for j in range(D.order) if full[i] >> j & 1 and full[j] >> i & 1]
        for j in members:
            assigned |= 1 << j
        components.append(frozenset(members))
    return components


def is_strongly_connected(D: Digraph) -> bool:
    return len(strong_components(D)) == 1


def is_cycle_graph(D: Digraph) -> bool:
    """D 全体がちょうど1本の有向閉路か"""
    out_deg: Dict[int, int] = {}
    in_deg: Dict[int, int] = {}
    for u, v in D.arcs:
        out_deg[u] = out_deg.get(u, 0) + 1
        in_deg[v] = in_deg.get(v, 0) + 1
    if any(out_deg.get(x) != 1 or in_deg.get(x) != 1 for x in range(D.order)):
        return False
    return is_strongly_connected(D)


# === 辺リスト形式 ===
#
#   # コメント
#   n 3
#   0 1
#   1 2


def parse_edge_list(text: str) -> Digraph:
    """辺リスト文字列を読む（エラーは行番号付き）"""
    order: Optional[int] = None
    arcs: List[Arc] = []
    seen: Dict[Arc, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if order is None:
            if len(parts) != 2 or parts[0] != "n":
                raise ParseError("expected header 'n <order>'", line=lineno)
            try:
                order = int(parts[1])
            except ValueError:
                raise ParseError(f"order is not an integer: {parts[1]!r}", line=lineno) from None
            if order < 1:
                raise ParseError(f"order must be >= 1, got {order}", line=lineno)
            continue
        if len(parts) != 2:
            raise ParseError(f"expected 'u v', got {line!r}", line=lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"arc endpoints must be integers: {line!r}", line=lineno) from None
        if not (0 <= u < order and 0 <= v < order):
            raise ParseError(f"arc ({u}, {v}) outside [0, {order})", line=lineno)
        if (u, v) in seen:
            raise ParseError(f"duplicate arc ({u}, {v}), first seen on line {seen[(u, v)]}", line=lineno)
        seen[(u, v)] = lineno
        arcs.append((u, v))
    if order is None:
        raise ParseError("missing header 'n <order>'")
    return digraph_from_arcs(order, arcs)


def format_edge_list(D: Digraph, comment: Optional[str] = None) -> str:
    lines = []
    if comment:
        lines.append(f"# {comment}")
    lines.append(f"n {D.order}")
    lines.extend(f"{u} {v}" for u, v in D.sorted_arcs())
    return "\n".join(lines) + "\n"
