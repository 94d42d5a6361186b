from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from string import ascii_uppercase
from typing import Iterable, Optional

from hcov.models.constraint import IdConstraint

ID_TYPE = "id"


@dataclass(frozen=True, slots=True)
class Atom:
    """``p(x)`` with a variable argument, or nullary ``p``."""

    predicate: str
    var: Optional[str] = None

    def render(self, names: dict[str, str] | None = None) -> str:
        if self.var is None:
            return self.predicate
        name = (names or {}).get(self.var, self.var)
        return f"{self.predicate}({name})"


@dataclass(frozen=True, slots=True, order=True)
class GroundAtom:
    """``p(n)`` with a concrete identifier, or nullary ``p``."""

    predicate: str
    value: Optional[int] = None

    def render(self) -> str:
        return self.predicate if self.value is None else f"{self.predicate}({self.value})"


Configuration = tuple[GroundAtom, ...]


def configuration(atoms: Iterable[GroundAtom]) -> Configuration:
    return tuple(sorted(atoms, key=lambda a: (a.predicate, -1 if a.value is None else a.value)))


def render_configuration(config: Configuration) -> str:
    return "{" + ", ".join(a.render() for a in config) + "}"


@dataclass(frozen=True, slots=True)
class MsrRule:
    name: str
    lhs: tuple[Atom, ...]
    rhs: tuple[Atom, ...]
    constraint: IdConstraint = field(default_factory=IdConstraint.true)

    @property
    def variables(self) -> frozenset[str]:
        return frozenset(a.var for a in (*self.lhs, *self.rhs) if a.var is not None)

    @property
    def fresh_variables(self) -> tuple[str, ...]:
        """Variables that occur on the right-hand side only, in order of occurrence."""
        bound = {a.var for a in self.lhs}
        seen: list[str] = []
        for a in self.rhs:
            if a.var is not None and a.var not in bound and a.var not in seen:
                seen.append(a.var)
        return tuple(seen)

    def renamed(self, prefix: str) -> MsrRule:
        mapping = {v: f"{prefix}{v}" for v in self.variables | self.constraint.variables}
        return MsrRule(
            self.name,
            tuple(Atom(a.predicate, mapping.get(a.var) if a.var else None) for a in self.lhs),
            tuple(Atom(a.predicate, mapping.get(a.var) if a.var else None) for a in self.rhs),
            self.constraint.rename(mapping),
        )


def display_names(atoms: Iterable[Atom], constraint: IdConstraint) -> dict[str, str]:
    """``A``, ``B``, ... for shared variables; ``_`` for single-occurrence ones."""
    atoms = list(atoms)
    occurrences = Counter(a.var for a in atoms if a.var is not None)
    constrained = {v for pair in constraint.equalities() for v in pair}
    constrained |= {v for x, y, _ in constraint.gaps for v in (x, y)}
    names: dict[str, str] = {}
    letters = 0
    for a in atoms:
        v = a.var
        if v is None or v in names:
            continue
        if occurrences[v] == 1 and v not in constrained:
            names[v] = "_"
            continue
        index, letters = letters, letters + 1
        label = ascii_uppercase[index % 26]
        names[v] = label if index < 26 else f"{label}{index // 26}"
    return names


@dataclass(frozen=True, slots=True)
class ConstrainedConfig:
    """``atoms : constraint``, standing for every configuration that contains an instance."""

    atoms: tuple[Atom, ...]
    constraint: IdConstraint = field(default_factory=IdConstraint.true)

    @classmethod
    def build(
        cls, atoms: Iterable[Atom], constraint: IdConstraint | None = None,
    ) -> ConstrainedConfig | None:
        """Normalize, or return ``None`` when the constraint is unsatisfiable.

        Equal variables are substituted by one representative, the constraint
        is projected onto the atom variables, and variables are renamed
        ``X1, X2, ...`` by first occurrence. Atom order is preserved.
        """
        from hcov.services.constraints import c_project

        atoms = tuple(atoms)
        constraint = constraint if constraint is not None else IdConstraint.true()
        if not constraint.satisfiable:
            return None
        atom_vars = [a.var for a in atoms if a.var is not None]
        projected = c_project(
            IdConstraint.build(
                set(atom_vars) | constraint.variables,
                constraint.equalities(),
                constraint.gaps,
            ),
            atom_vars,
        )
        rep = {v: v for v in atom_vars}
        rep.update(projected.representatives())
        canonical: dict[str, str] = {}
        for v in atom_vars:
            r = rep[v]
            if r not in canonical:
                canonical[r] = f"X{len(canonical) + 1}"
        mapping = {v: canonical[rep[v]] for v in atom_vars}
        renamed_atoms = tuple(
            Atom(a.predicate, mapping[a.var] if a.var is not None else None) for a in atoms
        )
        renamed = projected.rename(mapping)
        return cls(renamed_atoms, IdConstraint.build(canonical.values(), (), renamed.gaps))

    @property
    def variables(self) -> frozenset[str]:
        return frozenset(a.var for a in self.atoms if a.var is not None)

    def predicate_counts(self) -> Counter[str]:
        return Counter(a.predicate for a in self.atoms)

    def render_parts(self) -> tuple[str, str]:
        names = display_names(self.atoms, self.constraint)
        atoms = ",".join(a.render(names) for a in self.atoms)
        return f"[{atoms}]", self.constraint.render(names)

    def render(self) -> str:
        atoms, constraint = self.render_parts()
        return f"{atoms} : {constraint}"


@dataclass(frozen=True, slots=True)
class PredicateDecl:
    """Declared signature; each argument is typed ``id`` or by an enum name."""

    name: str
    arg_types: tuple[str, ...] = ()

    @property
    def arity(self) -> int:
        return len(self.arg_types)

    @property
    def is_monadic(self) -> bool:
        return self.arg_types in ((), (ID_TYPE,))


@dataclass(frozen=True, slots=True)
class RawAtom:
    """Atom as written in a model file, before enumerated arguments are folded."""

    predicate: str
    args: tuple[str, ...] = ()


@dataclass(frozen=True, slots=True)
class RawRule:
    name: str
    lhs: tuple[RawAtom, ...]
    rhs: tuple[RawAtom, ...]
    constraint: IdConstraint = field(default_factory=IdConstraint.true)
    line: int = 0


@dataclass(frozen=True, slots=True)
class MsrSystem:
    predicates: tuple[tuple[str, int], ...]
    rules: tuple[MsrRule, ...]
    initials: tuple[Configuration, ...] = ()

    def rule(self, name: str) -> MsrRule:
        for r in self.rules:
            if r.name == name:
                return r
        from hcov.errors import ModelError

        raise ModelError(f"no rule named '{name}'")
