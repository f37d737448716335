# data_models/reports.py
from pydantic import BaseModel, ConfigDict, Field
from typing import Any, List, Literal, Optional, Union
import pandas as pd

Verdict = Literal["pass", "fail"]


class CostPair(BaseModel):
    """Evaluation cost: n ticks and a net credit delta r (created minus spent)."""
    n: int = Field(0, ge=0)
    r: int = 0

    model_config = ConfigDict(frozen=True)

    @property
    def amortized(self) -> int:
        return self.n + self.r


class TraceRecord(BaseModel):
    rule: str
    dn: int = 0
    dr: int = 0

    model_config = ConfigDict(frozen=True)

    def __str__(self) -> str:
        return f"{self.rule} {self.dn} {self.dr}"


class EvalOutcome(BaseModel):
    value: Any  # LATerm in the value subgrammar
    cost: CostPair
    trace: Optional[List[TraceRecord]] = None

    model_config = ConfigDict(arbitrary_types_allowed=True)


class BoundRecord(BaseModel):
    """One closed program run against its extracted bound."""
    program: str
    input: str = ""
    size: int = 0
    bank: Union[int, str] = 0
    n: int
    r: int
    amortized: int
    bound: Union[int, str]  # normalized E_c; "inf" when unbounded
    value_bounded: Optional[bool] = None  # None when the result type is higher-order
    verdict: Verdict
    detail: str = ""


class BoundReport(BaseModel):
    name: str = ""
    records: List[BoundRecord] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(rec.verdict == "pass" for rec in self.records)

    @property
    def failures(self) -> List[BoundRecord]:
        return [rec for rec in self.records if rec.verdict != "pass"]

    def to_dataframe(self) -> pd.DataFrame:
        if not self.records:
            return pd.DataFrame(columns=list(BoundRecord.model_fields.keys()))
        return pd.DataFrame([rec.model_dump(mode="json") for rec in self.records])

    def record_frame(self) -> pd.DataFrame:
        """Machine-readable columns: size, n, r, bound, verdict."""
        return self.to_dataframe()[["size", "n", "r", "bound", "verdict"]]

    def summary(self) -> pd.DataFrame:
        """Per input size: worst observed ticks and amortized cost against the tightest bound."""
        df = self.to_dataframe()
        if df.empty:
            return pd.DataFrame(columns=["size", "max_n", "max_amortized", "bound", "all_pass"])
        df = df.assign(bound_num=pd.to_numeric(df["bound"], errors="coerce"),
                       ok=df["verdict"] == "pass")
        grouped = df.groupby("size", as_index=False).agg(
            max_n=("n", "max"), max_amortized=("amortized", "max"),
            bound=("bound_num", "min"), all_pass=("ok", "all"))
        return grouped


class SplayRecord(BaseModel):
    trial: int
    size: int
    pivot: int
    n: int
    r: int
    amortized: int
    bound: int  # 1 + 2φ(size)
    extracted_cost: Union[int, str]  # normalized E_c of the split call
    input_potential: int
    output_potential: int
    invariants_ok: bool
    verdict: Verdict
    detail: str = ""


class SequenceResult(BaseModel):
    operations: int
    total_ticks: int
    plain_bound: int  # Σ (1 + 2φ(n_i))
    accounted_bound: int  # plain bound plus credits supplied from outside minus those left in the tree
    verdict: Verdict


class SplayReport(BaseModel):
    records: List[SplayRecord] = Field(default_factory=list)
    okasaki_cases: int = 0
    okasaki_failures: List[str] = Field(default_factory=list)
    sequence: Optional[SequenceResult] = None

    @property
    def passed(self) -> bool:
        ok = all(rec.verdict == "pass" for rec in self.records) and not self.okasaki_failures
        if self.sequence is not None:
            ok = ok and self.sequence.verdict == "pass"
        return ok

    def to_dataframe(self) -> pd.DataFrame:
        if not self.records:
            return pd.DataFrame(columns=list(SplayRecord.model_fields.keys()))
        return pd.DataFrame([rec.model_dump(mode="json") for rec in self.records])

    def record_frame(self) -> pd.DataFrame:
        return self.to_dataframe()[["size", "n", "r", "bound", "verdict"]]


class FuzzViolation(BaseModel):
    property: str
    term: str
    shrunk: str = ""
    detail: str = ""


class FuzzReport(BaseModel):
    seed: int
    generated: int = 0
    discarded: int = 0
    values_checked: int = 0
    checks: dict = Field(default_factory=dict)  # property name -> number of instances checked
    violations: List[FuzzViolation] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def count(self, prop: str) -> None:
        self.checks[prop] = self.checks.get(prop, 0) + 1

    def to_dataframe(self) -> pd.DataFrame:
        rows = [{"property": name, "checked": count,
                 "violations": sum(1 for v in self.violations if v.property == name)}
                for name, count in sorted(self.checks.items())]
        if not rows:
            return pd.DataFrame(columns=["property", "checked", "violations"])
        return pd.DataFrame(rows)

    def violation_frame(self) -> pd.DataFrame:
        if not self.violations:
            return pd.DataFrame(columns=list(FuzzViolation.model_fields.keys()))
        return pd.DataFrame([v.model_dump() for v in self.violations])


class SampledVerdict(BaseModel):
    """Outcome of a sampled comparison in the preorder model."""
    passed: bool
    checked: int = 0
    counterexample: Optional[str] = None

    def __bool__(self) -> bool:
        return self.passed


class SolveRow(BaseModel):
    function: str
    size: int
    cost: Union[int, str]  # "inf" when unbounded


class SolveTable(BaseModel):
    """Cost of each size-abstractable definition in the preorder model, by input size."""
    rows: List[SolveRow] = Field(default_factory=list)
    skipped: dict = Field(default_factory=dict)  # definition name -> reason

    def to_dataframe(self) -> pd.DataFrame:
        if not self.rows:
            return pd.DataFrame(columns=list(SolveRow.model_fields.keys()))
        return pd.DataFrame([row.model_dump() for row in self.rows])

    def wide(self) -> pd.DataFrame:
        """One row per size, one cost column per function."""
        df = self.to_dataframe()
        if df.empty:
            return pd.DataFrame(columns=["size"])
        out = df.pivot(index="size", columns="function", values="cost").reset_index()
        out.columns.name = None
        return out
