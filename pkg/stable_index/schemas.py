"""
構造化出力のスキーマ

CLI の --format json と列挙結果の保存に使う。θ は番兵整数ではなく
{"kind": "finite", "value": k} / {"kind": "infinite"} で表す。
"""

from __future__ import annotations

from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

from . import __version__
from .core import Digraph, Explanation, Theta
from .enumerate import EnumSummary
from .families import FamilySpec
from .theorem import GapReport, IndexSet, TheoremReport, Witness


class ThetaModel(BaseModel):
    kind: Literal["finite", "infinite"]
    value: Optional[int] = Field(default=None, ge=1)

    model_config = {"frozen": True}

    @model_validator(mode="after")
    def _value_matches_kind(self) -> "ThetaModel":
        if (self.kind == "finite") != (self.value is not None):
            raise ValueError("finite theta needs a value, infinite theta must not have one")
        return self

    @classmethod
    def from_theta(cls, theta: Theta) -> "ThetaModel":
        if theta.value is None:
            return cls(kind="infinite")
        return cls(kind="finite", value=theta.value)

    def to_theta(self) -> Theta:
        return Theta(self.value)


class ExplanationModel(BaseModel):
    u: int
    v: int
    length: int


class ThetaDocument(BaseModel):
    """θ の計算結果"""
    source: str
    n: int
    theta: ThetaModel
    algorithm: str
    explanation: Optional[ExplanationModel] = None

    @classmethod
    def build(
        cls,
        source: str,
        D: Digraph,
        theta: Theta,
        algorithm: str,
        explanation: Optional[Explanation] = None,
    ) -> "ThetaDocument":
        detail = None
        if explanation is not None and explanation.u is not None:
            detail = ExplanationModel(u=explanation.u, v=explanation.v, length=explanation.length)
        return cls(
            source=source,
            n=D.order,
            theta=ThetaModel.from_theta(theta),
            algorithm=algorithm,
            explanation=detail,
        )


class IndexSetDocument(BaseModel):
    n: int
    finite_members: List[int]
    has_infinity: bool
    describe: str

    @classmethod
    def from_index_set(cls, index_set: IndexSet) -> "IndexSetDocument":
        return cls(
            n=index_set.n,
            finite_members=list(index_set.finite_members),
            has_infinity=index_set.has_infinity,
            describe=index_set.describe(),
        )


class GapDocument(BaseModel):
    n: int
    gaps: List[int]
    witnessed: Dict[int, str] = Field(default_factory=dict)

    @classmethod
    def from_report(cls, report: GapReport) -> "GapDocument":
        return cls(
            n=report.n,
            gaps=list(report.gaps),
            witnessed={m: spec.canonical() for m, spec in report.witnessed.items()},
        )


class WitnessDocument(BaseModel):
    n: int
    theta: ThetaModel
    family: str
    arcs: List[Tuple[int, int]]

    @classmethod
    def from_witness(cls, w: Witness) -> "WitnessDocument":
        return cls(
            n=w.digraph.order,
            theta=ThetaModel.from_theta(w.theta),
            family=w.family.canonical(),
            arcs=w.digraph.sorted_arcs(),
        )


class ConstructDocument(BaseModel):
    family: str
    n: int
    arcs: List[Tuple[int, int]]

    @classmethod
    def build(cls, spec: FamilySpec, D: Digraph) -> "ConstructDocument":
        return cls(family=spec.canonical(), n=D.order, arcs=D.sorted_arcs())


class MemberDocument(BaseModel):
    member: ThetaModel
    family: Optional[str]
    computed: Optional[ThetaModel]
    ok: bool
    elapsed: float
    error: Optional[str] = None


class VerifyDocument(BaseModel):
    n: int
    ok: bool
    members: List[MemberDocument]
    exhaustive_checked: bool
    exhaustive_ok: Optional[bool]
    exhaustive_achieved: List[int]
    elapsed: float

    @classmethod
    def from_report(cls, report: TheoremReport) -> "VerifyDocument":
        members = [
            MemberDocument(
                member=ThetaModel.from_theta(m.member),
                family=m.family.canonical() if m.family else None,
                computed=ThetaModel.from_theta(m.computed) if m.computed else None,
                ok=m.ok,
                elapsed=round(m.elapsed, 6),
                error=m.error,
            )
            for m in report.members
        ]
        return cls(
            n=report.n,
            ok=report.ok,
            members=members,
            exhaustive_checked=report.exhaustive_checked,
            exhaustive_ok=report.exhaustive_ok,
            exhaustive_achieved=list(report.exhaustive_achieved),
            elapsed=round(report.elapsed, 6),
        )


class HistogramEntry(BaseModel):
    theta: ThetaModel
    count: int = Field(ge=0)


class EnumSummaryDocument(BaseModel):
    """
    列挙結果

    経過時間やワーカー数は含めない（同じ入力なら同じバイト列になる）。
    """
    n: int = Field(ge=1)
    total: int = Field(ge=0)
    max_finite: Optional[int] = None
    histogram: List[HistogramEntry]
    ranges: List[Tuple[int, int]] = Field(default_factory=list)
    code_version: str = __version__

    @classmethod
    def from_summary(cls, summary: EnumSummary) -> "EnumSummaryDocument":
        return cls(
            n=summary.n,
            total=summary.total,
            max_finite=summary.max_finite,
            histogram=[
                HistogramEntry(theta=ThetaModel.from_theta(theta), count=count)
                for theta, count in summary.sorted_items()
            ],
            ranges=[tuple(r) for r in summary.ranges],
        )

    @model_validator(mode="after")
    def _total_matches(self) -> "EnumSummaryDocument":
        if sum(e.count for e in self.histogram) != self.total:
            raise ValueError("histogram counts do not add up to total")
        return self

    def to_summary(self) -> EnumSummary:
        return EnumSummary(
            self.n,
            {e.theta.to_theta(): e.count for e in self.histogram},
            tuple((lo, hi) for lo, hi in self.ranges),
        )
