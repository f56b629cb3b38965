"""
位数 n の安定指数集合 Θ(n)

n >= 7:      Θ(n) = [s(n-1)+1] ∪ {LCM(p,q) : p+q = n} ∪ {∞}
2 <= n <= 6: Θ(n) = [s(n)] ∪ {∞}
n = 1:       Θ(1) = {∞}

証拠（witness）は族を固定順に走査し、core で θ を検証してから返す。
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

import structlog

from .core import INFINITE, Digraph, Theta, s_max, stable_index_bounded
from .errors import NotAchievable, ParameterOutOfRange, SearchExhausted, StableIndexError
from .families import (
    FamilySpec,
    G_order_range,
    build_family,
    f_set,
    pad_isolated,
    theta_G,
    theta_G_exact,
    theta_g,
)
from .performance_monitor import Stopwatch

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class IndexSet:
    """Θ(n)"""
    n: int
    finite_members: Tuple[int, ...]
    has_infinity: bool = True

    def __contains__(self, m: object) -> bool:
        if not isinstance(m, Theta):
            return False
        return self.has_infinity if m.value is None else m.value in self.finite_members

    def describe(self) -> str:
        """'1-8,10,12,inf' 形式"""
        parts = [format_ranges(self.finite_members)] if self.finite_members else []
        if self.has_infinity:
            parts.append("inf")
        return ",".join(parts)


@dataclass(frozen=True)
class GapReport:
    n: int
    gaps: Tuple[int, ...]
    witnessed: Dict[int, FamilySpec] = field(default_factory=dict)


@dataclass(frozen=True)
class Witness:
    digraph: Digraph
    family: FamilySpec
    theta: Theta


@dataclass
class MemberResult:
    """verify_theorem の1要素分"""
    member: Theta
    family: Optional[FamilySpec]
    computed: Optional[Theta]
    ok: bool
    elapsed: float
    error: Optional[str] = None


@dataclass
class TheoremReport:
    n: int
    members: List[MemberResult] = field(default_factory=list)
    exhaustive_checked: bool = False
    exhaustive_ok: Optional[bool] = None
    exhaustive_achieved: Tuple[int, ...] = ()
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return all(m.ok for m in self.members) and self.exhaustive_ok is not False


def format_ranges(values: Tuple[int, ...]) -> str:
    """(1,2,3,5) → '1-3,5'"""
    out: List[str] = []
    run: List[int] = []
    for v in values:
        if run and v == run[-1] + 1:
            run.append(v)
            continue
        if run:
            out.append(str(run[0]) if len(run) == 1 else f"{run[0]}-{run[-1]}")
        run = [v]
    if run:
        out.append(str(run[0]) if len(run) == 1 else f"{run[0]}-{run[-1]}")
    return ",".join(out)


def lcm_values(n: int) -> Tuple[int, ...]:
    """{LCM(p,q) : p+q = n}"""
    return tuple(sorted({math.lcm(p, n - p) for p in range(1, n)}))


def theta_set(n: int) -> IndexSet:
    if n < 1:
        raise ParameterOutOfRange(f"order must be >= 1, got {n}")
    if n >= 7:
        members = set(range(1, s_max(n - 1) + 2)) | set(lcm_values(n))
    else:
        members = set(range(1, s_max(n) + 1))
    return IndexSet(n, tuple(sorted(members)), has_infinity=True)


def gaps(n: int, with_witnesses: bool = False) -> GapReport:
    """[1, s(n)] のうち Θ(n) に入らない値"""
    if n < 2:
        raise ParameterOutOfRange(f"gaps needs n >= 2, got {n}")
    members = theta_set(n).finite_members
    gap_values = tuple(sorted(set(range(1, s_max(n) + 1)) - set(members)))
    witnessed: Dict[int, FamilySpec] = {}
    if with_witnesses:
        witnessed = {m: witness(n, Theta.finite(m)).family for m in members}
    return GapReport(n, gap_values, witnessed)


# === 証拠探索 ===


def _candidates(n: int, m: Theta) -> Iterator[FamilySpec]:
    """固定順の候補列（閉じた式 → g 族 → G 族）"""
    if m.value is None:
        yield FamilySpec.cycle(n)
        return
    target = m.value
    if target == 1 and n >= 2:
        yield FamilySpec.complete(n)
    if target == n and n >= 3:
        yield FamilySpec.lollipop(n)
    for p in range(1, n // 2 + 1):
        if math.lcm(p, n - p) == target:
            yield FamilySpec.dumbbell(p, 2, n - p)

    # g(p,k,q): 位数の小さいものから
    for order in range(2, n + 1):
        for p in range(1, order):
            for q in range(1, order - p + 1):
                k = order - p - q + 2
                if theta_g(p, k, q) == target:
                    yield FamilySpec.dumbbell(p, k, q)

    # G(p,q,l,t): 最小位数で作って孤立頂点で埋める
    for p in range(2, n):
        for q in range(1, p):
            if p + q + 1 > n:
                break
            for t in range(1, n):
                for l in range(2, n + 1):
                    lo, _ = G_order_range(p, q, l, t)
                    if lo > n:
                        break
                    if theta_G(p, q, l, t) == m and theta_G_exact(p, q, l, t, lo) == m:
                        yield FamilySpec.theta_graph(p, q, l, t, lo)


def witness(n: int, m: Theta) -> Witness:
    """θ = m の位数 n の有向グラフ（core で検証済み）"""
    if m not in theta_set(n):
        raise NotAchievable(f"{m} is not the stable index of any digraph of order {n}", n=n, m=str(m))

    for spec in _candidates(n, m):
        D = pad_isolated(build_family(spec), n)
        computed = stable_index_bounded(D)
        if computed == m:
            logger.debug("witness_found", n=n, m=str(m), family=spec.canonical())
            return Witness(D, spec, computed)
        logger.warning("formula_mismatch", family=spec.canonical(), expected=str(m), computed=str(computed))

    raise SearchExhausted(f"no witness found for θ = {m} at order {n}", n=n, m=str(m))


def verify_theorem(
    n: int,
    exhaustive: bool = False,
    ceiling: int = 4,
    workers: int = 1,
) -> TheoremReport:
    """
    Θ(n) の各有限要素について witness を作り θ を再計算する。

    exhaustive=True かつ n <= ceiling なら全列挙で「Θ(n) 以外の値は現れない」ことも確認。
    n > ceiling の位数では全列挙を飛ばし、exhaustive_checked は False のまま。
    """
    if n < 1:
        raise ParameterOutOfRange(f"order must be >= 1, got {n}")
    report = TheoremReport(n)
    with Stopwatch() as total:
        for value in theta_set(n).finite_members:
            m = Theta.finite(value)
            with Stopwatch() as sw:
                try:
                    w = witness(n, m)
                    result = MemberResult(m, w.family, w.theta, w.theta == m and w.digraph.order == n, 0.0)
                except StableIndexError as e:
                    result = MemberResult(m, None, None, False, 0.0, error=f"{type(e).__name__}: {e.message}")
            result.elapsed = sw.elapsed
            report.members.append(result)

        if exhaustive and n > ceiling and n != 1:
            logger.info("exhaustive_skipped", n=n, ceiling=ceiling)
        elif exhaustive or n == 1:
            from .enumerate import Partition, enumerate_exhaustive

            summary = enumerate_exhaustive(Partition.full(n), ceiling=max(ceiling, 1), workers=workers)
            achieved = tuple(sorted(t.value for t in summary.histogram if t.value is not None))
            report.exhaustive_checked = True
            report.exhaustive_achieved = achieved
            report.exhaustive_ok = (
                achieved == theta_set(n).finite_members and INFINITE in summary.histogram
            )
    report.elapsed = total.elapsed
    logger.info(
        "theorem_verified",
        n=n,
        members=len(report.members),
        ok=report.ok,
        exhaustive=report.exhaustive_checked,
        elapsed=round(report.elapsed, 3),
    )
    return report


# === 証明中の個別構成（回帰テスト用） ===


@dataclass(frozen=True)
class ProofConstruction:
    """n >= 8 で [2, s(n-1)+1] を覆う構成"""
    n: int
    case: str
    base_interval: Tuple[int, int]
    extra_intervals: Dict[Tuple[int, int, int], Tuple[int, int]]
    named: Dict[FamilySpec, int]


def proof_construction(n: int) -> ProofConstruction:
    """
    n 偶数 / n ≡ 1 (mod 4) / n ≡ 3 (mod 4) の場合分け

    base_interval は ∪_{p=3}^{⌊n/2⌋} f(p,p-1,1) ∪ f(p,p-1,2) の両端。
    """
    if n < 8:
        raise ParameterOutOfRange(f"the case split applies to n >= 8, got {n}")
    half_down, half_up = n // 2, -(-n // 2)
    base = (2, (half_down - 1) ** 2 + half_up - 2)

    if n % 2 == 0:
        m = n // 2
        return ProofConstruction(n, "even", base, {}, {
            FamilySpec.dumbbell(m, 2, m - 1): m * m - m,
            FamilySpec.dumbbell(m, 3, m - 1): m * m - m + 1,
        })
    if n % 4 == 1:
        m = (n - 1) // 2
        return ProofConstruction(n, "1 mod 4", base, {(m + 1, m - 1, 2): (m * m - m, m * m - 2)}, {
            FamilySpec.dumbbell(m + 1, 2, m - 1): m * m - 1,
            FamilySpec.dumbbell(m + 1, 3, m - 1): m * m,
        })
    m = (n - 1) // 2
    return ProofConstruction(n, "3 mod 4", base, {(m + 2, m - 2, 4): (m * m - m - 2, m * m - 5)}, {
        FamilySpec.dumbbell(m + 2, 2, m - 2): m * m - 4,
        FamilySpec.dumbbell(m + 2, 3, m - 2): m * m - 3,
    })


def covered_by_f_sets(n: int) -> Tuple[int, ...]:
    """∪_{p=3}^{⌊n/2⌋} f(p,p-1,1) ∪ f(p,p-1,2)"""
    values: set[int] = set()
    for p in range(3, n // 2 + 1):
        values |= f_set(p, p - 1, 1, n) | f_set(p, p - 1, 2, n)
    return tuple(sorted(values))


def lambda_max(n: int) -> int:
    """max{θ(g(p,k,q)) : p+q+k-2 <= n, p+q <= n-1}"""
    if n < 3:
        raise ParameterOutOfRange(f"lambda_max needs n >= 3, got {n}")
    return max(
        theta_g(p, n - p - q + 2, q)
        for p in range(1, n - 1)
        for q in range(1, n - p)
    )
