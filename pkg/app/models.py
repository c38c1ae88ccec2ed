import math
from enum import Enum
from typing import Annotated, Dict, List, Optional, Union

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, PlainSerializer, field_validator, model_validator

from app.config import settings
from app.exceptions import NetworkValidationError
from app.optimizer.frontier_filter import FilterEntry
from app.optimizer.polling import PollOrder
from app.optimizer.results import IncumbentPolicy, RunConfig, bits_to_string
from app.simulation.network import Branch, Bus, NetworkModel

SCHEMA_VERSION = 1


def _parse_loss(value):
    if isinstance(value, str) and value.strip().lower() in ("inf", "+inf", "infinity"):
        return math.inf
    return value


def _dump_loss(value: float) -> Union[float, str]:
    return "inf" if math.isinf(value) else value


# Loss in kW; the infeasible sentinel travels as the string "inf" in JSON
LossKw = Annotated[float, BeforeValidator(_parse_loss), PlainSerializer(_dump_loss)]


# ---------------------------------------------------------------------------
# Network file
# ---------------------------------------------------------------------------

class BaseValues(BaseModel):
    """System base for the per-unit quantities"""
    s_base_kva: float = Field(gt=0)
    v_base_kv: float = Field(gt=0)


class VoltageLimits(BaseModel):
    """Per-unit voltage band"""
    model_config = ConfigDict(populate_by_name=True)

    v_min: float = Field(0.95, alias="min")
    v_max: float = Field(1.05, alias="max")


class BusRecord(BaseModel):
    """Bus entry with its constant-PQ load"""
    id: int
    p_kw: float = 0.0
    q_kvar: float = 0.0


class BranchRecord(BaseModel):
    """Branch entry; switchable branches are indexed in file order"""
    model_config = ConfigDict(populate_by_name=True)

    id: int
    from_bus: int = Field(alias="from")
    to_bus: int = Field(alias="to")
    r_pu: float
    x_pu: float
    rating_pu: float
    switchable: bool = False


class NetworkFile(BaseModel):
    """Versioned JSON network schema"""
    model_config = ConfigDict(extra="forbid")

    schema_version: int = SCHEMA_VERSION
    name: Optional[str] = None
    base: BaseValues
    v_limits: VoltageLimits = Field(default_factory=VoltageLimits)
    source_bus: Union[int, List[int]]
    buses: List[BusRecord]
    branches: List[BranchRecord] = Field(default_factory=list)

    @field_validator("schema_version")
    @classmethod
    def check_schema_version(cls, value: int) -> int:
        if value != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {value}, expected {SCHEMA_VERSION}")
        return value

    def to_model(self, default_name: str = "") -> NetworkModel:
        """Build the validated NetworkModel"""
        if isinstance(self.source_bus, list):
            if len(self.source_bus) != 1:
                raise NetworkValidationError(
                    f"a network needs exactly one source bus, got {len(self.source_bus)}")
            source_bus = self.source_bus[0]
        else:
            source_bus = self.source_bus

        return NetworkModel(
            buses=tuple(Bus(id=b.id, p_kw=b.p_kw, q_kvar=b.q_kvar) for b in self.buses),
            branches=tuple(
                Branch(id=b.id, from_bus=b.from_bus, to_bus=b.to_bus, r_pu=b.r_pu, x_pu=b.x_pu,
                       rating_pu=b.rating_pu, switchable=b.switchable)
                for b in self.branches
            ),
            source_bus=source_bus,
            s_base_kva=self.base.s_base_kva,
            v_base_kv=self.base.v_base_kv,
            v_min=self.v_limits.v_min,
            v_max=self.v_limits.v_max,
            name=self.name or default_name,
        )

    @classmethod
    def from_model(cls, network: NetworkModel) -> "NetworkFile":
        return cls(
            schema_version=SCHEMA_VERSION,
            name=network.name or None,
            base=BaseValues(s_base_kva=network.s_base_kva, v_base_kv=network.v_base_kv),
            v_limits=VoltageLimits(v_min=network.v_min, v_max=network.v_max),
            source_bus=network.source_bus,
            buses=[BusRecord(id=b.id, p_kw=b.p_kw, q_kvar=b.q_kvar) for b in network.buses],
            branches=[
                BranchRecord(id=b.id, from_bus=b.from_bus, to_bus=b.to_bus, r_pu=b.r_pu, x_pu=b.x_pu,
                             rating_pu=b.rating_pu, switchable=b.switchable)
                for b in network.branches
            ],
        )


# ---------------------------------------------------------------------------
# Frontier file
# ---------------------------------------------------------------------------

class FrontierEntryRecord(BaseModel):
    """One frontier member as written to disk"""
    bits: str = Field(pattern=r"^[01]*$")
    f_kw: LossKw
    h: float = Field(ge=0)

    @classmethod
    def from_entry(cls, entry: FilterEntry) -> "FrontierEntryRecord":
        return cls(bits=bits_to_string(entry.x), f_kw=entry.metrics.f, h=entry.metrics.h)


class FrontierFile(BaseModel):
    """Frontier JSON: entries sorted by f ascending, then h"""
    schema_version: int = SCHEMA_VERSION
    entries: List[FrontierEntryRecord] = Field(default_factory=list)

    @field_validator("schema_version")
    @classmethod
    def check_schema_version(cls, value: int) -> int:
        if value != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {value}, expected {SCHEMA_VERSION}")
        return value


# ---------------------------------------------------------------------------
# Harness configuration
# ---------------------------------------------------------------------------

class Algorithm(str, Enum):
    MADS = "mads"
    RANDOM = "random"
    ENUMERATE = "enumerate"


class HarnessConfig(BaseModel):
    """Options of one harness invocation"""
    network_path: str
    algorithm: Algorithm = Algorithm.MADS
    budget: int = Field(default_factory=lambda: settings.DEFAULT_BUDGET)
    seed: int = Field(default_factory=lambda: settings.DEFAULT_SEED, ge=0, lt=2 ** 64)
    poll_order: PollOrder = PollOrder.LEXICOGRAPHIC
    incumbent_policy: IncumbentPolicy = IncumbentPolicy.ROUND_ROBIN
    mesh_adaptive: bool = False
    trace_path: Optional[str] = None
    frontier_path: Optional[str] = None
    trace_skipped: bool = False

    @model_validator(mode="after")
    def check_budget(self) -> "HarnessConfig":
        # enumerate ignores budget and seed
        if self.algorithm is not Algorithm.ENUMERATE and self.budget < 1:
            raise ValueError(f"budget must be at least 1, got {self.budget}")
        return self

    def to_run_config(self, dimension: int) -> RunConfig:
        return RunConfig(
            dimension=dimension,
            budget=self.budget,
            seed=self.seed,
            poll_order=self.poll_order,
            incumbent_policy=self.incumbent_policy,
            mesh_adaptive=self.mesh_adaptive,
            mesh_radius_cap=settings.MESH_RADIUS_CAP,
        )


# ---------------------------------------------------------------------------
# Baseline comparison report
# ---------------------------------------------------------------------------

class AlgorithmRunSummary(BaseModel):
    """Outcome of one algorithm on one seed"""
    best_feasible_f_kw: Optional[float] = None
    frontier_size: int
    evaluations_used: int
    evaluations_to_first_feasible: Optional[int] = None
    stop_reason: str


class SeedComparison(BaseModel):
    seed: int
    mads: AlgorithmRunSummary
    random: AlgorithmRunSummary


class MedianSummary(BaseModel):
    """Medians over seeds; a seed that never found a feasible point counts as +inf"""
    best_feasible_f_kw: Optional[float] = None
    evaluations_to_first_feasible: Optional[float] = None
    frontier_size: float


class ComparisonReport(BaseModel):
    """Machine-readable MADS vs. random-search report"""
    schema_version: int = SCHEMA_VERSION
    network: str
    budget: int
    seeds: List[int]
    per_seed: List[SeedComparison]
    median: Dict[str, MedianSummary]


# ---------------------------------------------------------------------------
# HTTP request / response bodies
# ---------------------------------------------------------------------------

class NetworkInfo(BaseModel):
    """Bundled network summary"""
    name: str
    buses: int
    branches: int
    switchable: int


class EvaluateRequest(BaseModel):
    """Request model for a single black-box evaluation"""
    network: str
    bits: str = Field(pattern=r"^[01]*$")


class ModuleViolation(BaseModel):
    module: str
    violation: float


class EvaluateResponse(BaseModel):
    """Response model for a single black-box evaluation"""
    network: str
    bits: str
    f_kw: LossKw
    h: float
    radial: bool
    connected: bool
    n_islands: int
    n_loops: int
    converged: Optional[bool] = None
    iterations: Optional[int] = None
    min_voltage_pu: Optional[float] = None
    max_voltage_pu: Optional[float] = None
    violations: List[ModuleViolation] = Field(default_factory=list)


class OptimizeRequest(BaseModel):
    """Request model for an optimizer run"""
    network: str
    algorithm: Algorithm = Algorithm.MADS
    budget: int = Field(default_factory=lambda: settings.DEFAULT_BUDGET, ge=1)
    seed: int = Field(default_factory=lambda: settings.DEFAULT_SEED, ge=0, lt=2 ** 64)
    poll_order: PollOrder = PollOrder.LEXICOGRAPHIC
    incumbent_policy: IncumbentPolicy = IncumbentPolicy.ROUND_ROBIN
    mesh_adaptive: bool = False

    @field_validator("algorithm")
    @classmethod
    def check_algorithm(cls, value: Algorithm) -> Algorithm:
        if value is Algorithm.ENUMERATE:
            raise ValueError("use /enumerate for exhaustive enumeration")
        return value


class OptimizeResponse(BaseModel):
    """Response model for an optimizer run"""
    network: str
    algorithm: Algorithm
    evaluations_used: int
    stop_reason: str
    best_feasible_f_kw: Optional[float] = None
    frontier: List[FrontierEntryRecord]
    summary: str


class EnumerateRequest(BaseModel):
    network: str


class EnumerateResponse(BaseModel):
    """Exact frontier over every configuration"""
    network: str
    evaluations: int
    feasible_count: int
    frontier: List[FrontierEntryRecord]
