from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field


class FactRecord(BaseModel):
    """One fact of the fixpoint, field for field as in the ``f(...)`` listing."""

    iteration: int = Field(..., ge=0)
    atoms: str
    constraint: str
    id: int = Field(..., ge=1)
    rule: str
    parent: int = Field(..., ge=0)


class VerdictReport(BaseModel):
    model: str
    target: str
    coverable: bool
    iterations: int
    fact_count: int
    covering_fact: Optional[int] = None
    initial_index: Optional[int] = None
    trace: Optional[list[str]] = None
    expected: Optional[bool] = None
    facts: list[FactRecord] = []


class WitnessReport(BaseModel):
    model: str
    target: str
    depth: int
    found: bool
    firing_sequence: Optional[list[str]] = None
    configuration: Optional[str] = None
    initial_index: Optional[int] = None
    frontier_exhausted: bool
    visited: int


class CrosscheckReport(BaseModel):
    model: str
    target: str
    depth: int
    agree: bool
    engine_coverable: bool
    oracle_found: bool
    trace: Optional[list[str]] = None
    replay_covers: Optional[bool] = None
    message: str
