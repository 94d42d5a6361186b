from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

from hcov.errors import UnknownTarget
from hcov.models.msr import ConstrainedConfig, MsrSystem
from hcov.models.petri import HConfig, PetriNetH

Target = Union[HConfig, ConstrainedConfig]


class ModelKind(str, Enum):
    PETRI = "petri"
    AUTOMATON = "automaton"
    MSR = "msr"


@dataclass(frozen=True, slots=True)
class ModelFile:
    """A parsed ``.hcov`` model. MSR systems are held in monadic form."""

    kind: ModelKind
    net: Optional[PetriNetH] = None
    msr: Optional[MsrSystem] = None
    targets: tuple[tuple[str, Target], ...] = ()
    expectations: tuple[tuple[str, bool], ...] = ()

    @property
    def target_names(self) -> list[str]:
        return [name for name, _ in self.targets]

    def target(self, name: str) -> Target:
        for target_name, target in self.targets:
            if target_name == name:
                return target
        raise UnknownTarget(name, self.target_names)

    def expected(self, name: str) -> Optional[bool]:
        """``True`` when ``name`` is expected coverable, ``None`` when no expectation is recorded."""
        for target_name, coverable in self.expectations:
            if target_name == name:
                return coverable
        return None
