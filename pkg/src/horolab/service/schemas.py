"""Request models for the HTTP service.

Exact numbers travel as strings (fractions survive JSON untouched) and
complex numbers as [re, im] pairs.  Each request model dumps straight
into the corresponding pipeline mapping.
"""

from typing import List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class SystemSpec(StrictModel):
    """A square matrix of rational function entries, row major.

    The optional fields mirror the serialized form of a system report so
    a previous output can be fed back in verbatim; ``initial`` weights
    the local solution basis into one germ vector.
    """

    matrix: List[List[str]]
    rank: Optional[int] = None
    poles: Optional[list] = None
    initial: Optional[List[str]] = None


class SolveRequest(StrictModel):
    system: SystemSpec
    base_point: str = "0"
    truncation: int = Field(default=16, ge=1, le=4000)


class CertifyRequest(StrictModel):
    system: SystemSpec
    base_point: str = "0"
    truncation: int = Field(default=120, ge=1, le=4000)
    alpha: str = "1"
    allowed_primes: Optional[List[int]] = None
    s: Optional[int] = None


class ConstructRequest(StrictModel):
    system: SystemSpec
    points: List[str] = ["0"]
    degree: int = Field(ge=0)
    order: Optional[int] = Field(default=None, ge=1)
    truncation: Optional[int] = Field(default=None, ge=3, le=4000)
    strategy: Literal["spare", "max"] = "spare"
    profile_degrees: Optional[List[int]] = None


class ZeroLemmaRequest(StrictModel):
    system: SystemSpec
    points: List[str] = ["0"]
    degree: Optional[int] = Field(default=None, ge=0)
    degrees: Optional[List[int]] = None
    truncation: Optional[int] = Field(default=None, ge=3, le=4000)
    strategy: Literal["spare", "max"] = "max"


ComplexLike = Union[float, str, List[float]]


class MapSpec(StrictModel):
    name: str
    coefficients: Optional[List[ComplexLike]] = None
    constant: Optional[ComplexLike] = None


class DivisorPoint(StrictModel):
    point: Optional[ComplexLike] = None  # null stands for infinity
    multiplicity: int = Field(default=1, ge=1)


class DivisorSpec(StrictModel):
    center: ComplexLike = 0.0
    points: List[DivisorPoint] = []


class RadiusGrid(StrictModel):
    min: float
    max: float
    steps: int = Field(default=16, ge=2, le=512)


class ZeroItem(StrictModel):
    point: ComplexLike
    multiplicity: int = Field(default=1, ge=1)


class GrowthRequest(StrictModel):
    map: MapSpec
    target: ComplexLike = 0.0
    divisor: DivisorSpec = DivisorSpec()
    rgrid: Union[RadiusGrid, List[float]] = RadiusGrid(min=2.0, max=256.0, steps=16)
    zeros: Optional[List[ZeroItem]] = None
    samples: int = Field(default=512, ge=16, le=65536)
    raw: bool = False


class IndependenceRequest(StrictModel):
    values: List[str]
    degree: int = Field(default=1, ge=1)
    height_bound: int = Field(default=100, ge=1)
    precision: int = Field(default=200, ge=10, le=5000)
    subspace: bool = False


class OneFormSpec(StrictModel):
    dz: List[List[str]]
    dx: List[List[str]]
    size: Optional[int] = None


class FamilySpec(StrictModel):
    a: Optional[str] = None
    b: Optional[str] = None
    c: Optional[str] = None


class IsomonoRequest(StrictModel):
    one_form: Optional[OneFormSpec] = None
    family: FamilySpec = FamilySpec()


class FamilyRunRequest(StrictModel):
    a: str = "1/2"
    b: str = "1/3"
    c: str = "1"
    x0: str = "1"
    x1: str = "2"
    precision: int = Field(default=30, ge=8, le=120)
