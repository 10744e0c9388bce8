"""Request and response models for the coxfire HTTP API."""

from typing import Literal, Optional

from pydantic import BaseModel, Field

from ..orientation import DEFAULT_STATE_BUDGET


class GraphRequest(BaseModel):
    graph: str = Field(description="graph text: one `NAME NAME LABEL` edge per line")


class ClassEntry(BaseModel):
    signature: list[int]
    size: int
    representative: str


class ClassesResponse(BaseModel):
    elements: int
    classes: list[ClassEntry]


class ConjugateRequest(GraphRequest):
    word1: str
    word2: str
    witness: bool = True
    budget: int = DEFAULT_STATE_BUDGET


class TraceStep(BaseModel):
    kind: Literal["rotate", "swap"]
    letter: Optional[str] = None
    position: Optional[int] = None


class WitnessModel(BaseModel):
    conjugator: list[str]
    trace: list[TraceStep]
    chain: list[str] = Field(description="word after each trace step, starting from word1")


class ConjugateResponse(BaseModel):
    conjugate: bool
    signature1: list[int]
    signature2: list[int]
    witness: Optional[WitnessModel] = None


class OrientRequest(GraphRequest):
    word: str


class OrientResponse(BaseModel):
    orientation: str
    dot: str


class FireRequest(GraphRequest):
    orientation: str
    vertex: str


class FireResponse(BaseModel):
    orientation: str
    fired_as: Literal["sink", "source"]


class PlaybackRequest(GraphRequest):
    orientation: str
    vertex: str


class PlaybackResponse(BaseModel):
    sequence: list[str]


class EnumerateResponse(BaseModel):
    count: int
    orientations: list[str]


class OracleRequest(GraphRequest):
    word1: str
    word2: str
    kind: Literal["auto", "permutation", "signed", "matrix"] = "auto"
    budget: int = DEFAULT_STATE_BUDGET


class OracleResponse(BaseModel):
    conjugate: bool
    kind: str
    group_order: int


class CheckRequest(GraphRequest):
    pass


class CheckItem(BaseModel):
    name: str
    status: Literal["pass", "fail", "skip"]
    detail: str


class CheckResponse(BaseModel):
    ok: bool
    results: list[CheckItem]


class HealthResponse(BaseModel):
    status: str
    version: str
