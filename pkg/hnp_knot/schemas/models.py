"""Pydantic models for the documents, reports and run summaries of the knot engine.

Everything that crosses the process boundary (input documents, reports,
manifests, verification tables) is one of these models, so that JSON is
validated on the way in and serialized the same way on the way out.
"""

from __future__ import annotations

from datetime import datetime
from typing import Any, List, Literal, Optional, Union

from pydantic import BaseModel, Field, field_validator

Method = Literal["classifier", "cohomology"]


class GroupLiteral(BaseModel):
    """A permutation group given by 0-based image arrays."""

    degree: int = Field(..., ge=1, description="Number of points the group acts on")
    generators: List[List[int]] = Field(
        default_factory=list, description="Generator image arrays, each of length `degree`"
    )


class NamedGroup(BaseModel):
    """A group built by the zoo from a name and parameters."""

    name: str = Field(..., description="Construction name such as P'n or semidirect-std")
    p: Optional[int] = Field(None, description="The prime")
    n: Optional[int] = Field(None, description="Family index for the Pn, P'n, En and Hn families")
    m: Optional[int] = Field(None, description="Order for the cyclic construction")
    mats: List[List[List[int]]] = Field(
        default_factory=list, description="2x2 matrices mod p given as [[a, b], [c, d]]"
    )

    @field_validator("name", mode="before")
    @classmethod
    def strip_name(cls, v: Any) -> Any:
        return v.strip() if isinstance(v, str) else v


class InputDocument(BaseModel):
    """One decision request."""

    group: Union[GroupLiteral, NamedGroup] = Field(..., description="The Galois group of the closure")
    stabilizer_point: int = Field(0, ge=0, description="Point whose stabilizer plays the role of H")
    decomposition_groups: List[List[List[int]]] = Field(
        default_factory=list, description="Generator lists of the decomposition groups"
    )
    methods: List[Method] = Field(
        default_factory=lambda: ["classifier", "cohomology"], description="Computation paths to run"
    )
    label: Optional[str] = Field(None, description="Free-form case name echoed in reports")


class StarWitnessModel(BaseModel):
    normal_subgroup: List[List[int]] = Field(..., description="Basis of the regular normal (C_p)^2")
    matrices: List[List[List[int]]] = Field(..., description="Action of the H generators in that basis")
    determinants: List[int] = Field(..., description="Determinants mod p of those matrices")


class DecompositionEcho(BaseModel):
    supplied: int = Field(..., description="Number of decomposition groups in the input")
    closure_size: int = Field(..., description="Members after conjugation closure and adding cyclic subgroups")
    added_by_closure: int = Field(0, description="Members added by the closure")
    non_cyclic_orders: List[int] = Field(default_factory=list)
    contains_elementary_abelian: bool = Field(..., description="Some member contains (C_p)^2")


class KnotReport(BaseModel):
    """Outcome of one decision, with enough context to reproduce it."""

    question: Literal["hnp", "h1pic"] = Field(..., description="Which invariant was decided")
    label: Optional[str] = None
    input_hash: Optional[str] = Field(None, description="Canonical hash of the input document")
    p: int
    degree: int
    group_order: int
    stabilizer_order: int
    sylow_shape: List[Union[str, int]] = Field(..., description='["P" or "P\'", n]')
    star: Optional[StarWitnessModel] = None
    sha_invariants: List[int] = Field(default_factory=list, description="Invariant factors, divisibility order")
    decision: str = Field(..., description='"trivial" or the group, e.g. "Z/3"')
    method: Literal["classifier", "cohomology", "both"]
    decomposition: Optional[DecompositionEcho] = None
    weak_approximation_defect: Optional[List[int]] = Field(
        None, description="Invariants of Sha_omega / Sha_D when both were computed"
    )

    @property
    def is_trivial(self) -> bool:
        return not self.sha_invariants


class AdequacyReport(BaseModel):
    label: Optional[str] = None
    input_hash: Optional[str] = None
    adequate: bool
    sylow_order: int
    decision: Optional[str] = Field(None, description="HNP decision when the data is adequate")


class GroupSummary(BaseModel):
    """What `zoo` prints for a construction."""

    name: str
    literal: GroupLiteral
    order: int
    transitive: bool
    exponent: int
    center_order: int


class VerifyRow(BaseModel):
    suite: str
    case: str
    expected: str
    computed: str
    passed: bool
    seconds: float = 0.0


class ManifestError(BaseModel):
    """An error encountered while processing one case."""

    case: str
    stage: str
    message: str


class RunManifest(BaseModel):
    """Summary of a run across all cases."""

    started_at: datetime = Field(default_factory=datetime.utcnow, description="Run start (UTC)")
    finished_at: Optional[datetime] = Field(None, description="Run end (UTC)")
    total: int = Field(..., description="Number of cases submitted")
    successful: int = Field(0, description="Cases that produced a report")
    nontrivial: int = Field(0, description="Reports with a nontrivial knot group")
    errors: List[ManifestError] = Field(default_factory=list)

    def record_success(self, nontrivial: bool = False) -> None:
        self.successful += 1
        if nontrivial:
            self.nontrivial += 1

    def record_error(self, case: str, stage: str, message: str) -> None:
        self.errors.append(ManifestError(case=case, stage=stage, message=message))

    def finish(self) -> None:
        self.finished_at = datetime.utcnow()


class RunConfig(BaseModel):
    """Validated settings for one CLI invocation (YAML, then environment, then flags)."""

    command: Literal["zoo", "sha", "h1pic", "adequacy", "verify"]
    input_path: Optional[str] = None
    group_name: Optional[str] = None
    suite: Optional[str] = None
    p: Optional[int] = None
    n: Optional[int] = None
    mats: List[List[List[int]]] = Field(default_factory=list)
    methods: List[Method] = Field(default_factory=lambda: ["classifier", "cohomology"])
    fast_p_part: bool = True
    cross_check_fast_path: bool = False
    sylow_reduction: bool = True
    concurrency: int = Field(2, ge=1)
    order_cap: int = Field(1_000_000, ge=1)
    schur_cap: int = Field(64, ge=1)
    adequacy_samples: int = Field(100, ge=0)
    seed: int = 0
    output_dir: Optional[str] = None
    csv_path: Optional[str] = None

    @field_validator("methods")
    @classmethod
    def methods_not_empty(cls, v: List[str]) -> List[str]:
        if not v:
            raise ValueError("at least one method is required")
        return sorted(set(v), key=["classifier", "cohomology"].index)
