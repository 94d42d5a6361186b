from hcov.models.constraint import IdConstraint
from hcov.models.fact import Fact, Verdict
from hcov.models.history import History, LogMode
from hcov.models.model_file import ModelFile, ModelKind
from hcov.models.msr import Atom, ConstrainedConfig, GroundAtom, MsrRule, MsrSystem
from hcov.models.petri import HConfig, PetriNetH, Transition

__all__ = [
    "IdConstraint",
    "Fact",
    "Verdict",
    "History",
    "LogMode",
    "ModelFile",
    "ModelKind",
    "Atom",
    "ConstrainedConfig",
    "GroundAtom",
    "MsrRule",
    "MsrSystem",
    "HConfig",
    "PetriNetH",
    "Transition",
]
