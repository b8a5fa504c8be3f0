"""Pydantic request/response models for the HTTP service.

The wire format for states is identical to the on-disk state-file format:
complex numbers travel as [re, im] pairs in the |00>,|01>,|10>,|11> basis.
"""

from __future__ import annotations

from typing import Annotated, Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, Field

from .states import DensityMatrix, PureState

ComplexPair = tuple[float, float]
BlochTriple = tuple[float, float, float]


class PureStatePayload(BaseModel):
    kind: Literal["pure"]
    amplitudes: Annotated[list[ComplexPair], Field(min_length=4, max_length=4)]

    def to_state(self) -> PureState:
        return PureState([complex(re, im) for re, im in self.amplitudes])


class DensityPayload(BaseModel):
    kind: Literal["density"]
    matrix: Annotated[
        list[Annotated[list[ComplexPair], Field(min_length=4, max_length=4)]],
        Field(min_length=4, max_length=4),
    ]

    def to_state(self) -> DensityMatrix:
        return DensityMatrix(
            np.array([[complex(re, im) for re, im in row] for row in self.matrix])
        )


StatePayload = Annotated[
    Union[PureStatePayload, DensityPayload], Field(discriminator="kind")
]


def density_of(payload) -> DensityMatrix:
    """Any state payload as a density matrix (pure states become projectors)."""
    state = payload.to_state()
    return state.density() if isinstance(state, PureState) else state


class AnalyticRequest(BaseModel):
    theta: float


class AnalyticResponse(BaseModel):
    theta: float
    bound: float
    entropy: float


class UnitaryModel(BaseModel):
    alpha: float
    beta: float
    gamma: float
    delta: float
    matrix: list[list[ComplexPair]]


class SchmidtRequest(BaseModel):
    state: PureStatePayload


class SchmidtResponse(BaseModel):
    theta: float
    u_a: UnitaryModel
    u_b: UnitaryModel


class SchemeModel(BaseModel):
    a: BlochTriple
    a_prime: BlochTriple
    b: BlochTriple
    b_prime: BlochTriple


class MaximizeRequest(BaseModel):
    state: StatePayload
    restarts: int = Field(default=32, ge=1, le=100_000)
    seed: int = 0


class MaximizeResponse(BaseModel):
    value: float
    scheme: SchemeModel
    restarts_used: int
    converged: bool


class OptimalRequest(BaseModel):
    state: PureStatePayload


class OptimalResponse(BaseModel):
    scheme: SchemeModel
    lambda_angle: float
    achieved: float
    bound: float
    residual: float


class HorodeckiRequest(BaseModel):
    state: DensityPayload


class HorodeckiResponse(BaseModel):
    m: float
    max_chsh: float
    purity: float


class SweepRequest(BaseModel):
    steps: int = Field(ge=1, le=1_000_000)


class SweepRowModel(BaseModel):
    theta: float
    bound: float
    entropy: float


class SweepResponse(BaseModel):
    rows: list[SweepRowModel]


class ScanMixedRequest(BaseModel):
    count: int = Field(ge=1, le=1_000_000)
    seed: int
    rank: Optional[int] = Field(default=None, ge=1, le=4)


class ScanRowModel(BaseModel):
    index: int
    rank: int
    purity: float
    max_chsh: float


class ScanMixedResponse(BaseModel):
    rows: list[ScanRowModel]
    max_chsh: float
    max_purity: float


class VerifyRequest(BaseModel):
    seed: int
    trials: int = Field(default=100, ge=1, le=100_000)


class CheckModel(BaseModel):
    name: str
    passed: bool
    detail: str


class VerifyResponse(BaseModel):
    checks: list[CheckModel]
    all_passed: bool
