"""Monadic multiset rewriting over ordered identifiers.

Constrained configurations are the symbolic elements of backward search;
ground configurations are what the forward oracle explores.
"""

from __future__ import annotations

import itertools
import logging
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from hcov.config import settings
from hcov.errors import ModelError, UndeclaredEnum
from hcov.models.constraint import IdConstraint
from hcov.models.msr import (
    ID_TYPE,
    Atom,
    ConstrainedConfig,
    Configuration,
    GroundAtom,
    MsrRule,
    MsrSystem,
    PredicateDecl,
    RawAtom,
    RawRule,
    configuration,
)
from hcov.services.constraints import c_conjoin, c_entails, c_equalities
from hcov.services.engine import SymbolicDomain
from hcov.services.oracle import ForwardSystem
from hcov.services.wqo import minimize_elements

logger = logging.getLogger(__name__)

RENAME_RULE = "r."


# ---------------------------------------------------------------------------
# Subsumption
# ---------------------------------------------------------------------------


def _atom_maps(
    source: Sequence[Atom], target: Sequence[Atom],
) -> Iterator[dict[str, str]]:
    """Injective predicate-preserving maps ``source -> target``, as variable maps."""
    used = [False] * len(target)
    mapping: dict[str, str] = {}

    def search(i: int) -> Iterator[dict[str, str]]:
        if i == len(source):
            yield dict(mapping)
            return
        atom = source[i]
        tried: set[Atom] = set()
        for j, candidate in enumerate(target):
            if used[j] or candidate.predicate != atom.predicate or candidate in tried:
                continue
            tried.add(candidate)
            bound = None
            if atom.var is not None:
                bound = mapping.get(atom.var)
                if bound is not None and bound != candidate.var:
                    continue
            used[j] = True
            if atom.var is not None and bound is None:
                mapping[atom.var] = candidate.var
            yield from search(i + 1)
            if atom.var is not None and bound is None:
                del mapping[atom.var]
            used[j] = False

    yield from search(0)


def subsumes(psi1: ConstrainedConfig, psi2: ConstrainedConfig) -> bool:
    """``Inst(psi2)`` is contained in ``Inst(psi1)``."""
    have = psi2.predicate_counts()
    for predicate, n in psi1.predicate_counts().items():
        if have[predicate] < n:
            return False
    # most constrained predicates first keeps the search narrow
    order = sorted(psi1.atoms, key=lambda a: (have[a.predicate], a.predicate))
    for mapping in _atom_maps(order, psi2.atoms):
        if c_entails(psi2.constraint, psi1.constraint.rename(mapping)):
            return True
    return False


# ---------------------------------------------------------------------------
# Symbolic predecessors
# ---------------------------------------------------------------------------


def _matchings(
    atoms: Sequence[Atom], rhs: Sequence[Atom],
) -> Iterator[tuple[tuple[int, int], ...]]:
    """Nonempty partial injective matchings of ``atoms`` into ``rhs``, larger first."""
    for size in range(min(len(atoms), len(rhs)), 0, -1):
        for chosen in itertools.combinations(range(len(atoms)), size):
            for images in itertools.permutations(range(len(rhs)), size):
                if all(atoms[i].predicate == rhs[j].predicate for i, j in zip(chosen, images)):
                    yield tuple(zip(chosen, images))


def pre_rule(psi: ConstrainedConfig, rule: MsrRule) -> list[ConstrainedConfig]:
    """Symbolic predecessors of ``psi`` through one application of ``rule``."""
    rule = rule.renamed(RENAME_RULE)
    candidates: list[ConstrainedConfig] = []
    seen: set[ConstrainedConfig] = set()
    for matching in _matchings(psi.atoms, rule.rhs):
        matched = {i for i, _ in matching}
        equalities = [
            (psi.atoms[i].var, rule.rhs[j].var)
            for i, j in matching
            if psi.atoms[i].var is not None
        ]
        phi = c_conjoin(psi.constraint, rule.constraint, c_equalities(equalities))
        if not phi.satisfiable:
            continue
        remainder = [a for i, a in enumerate(psi.atoms) if i not in matched]
        result = ConstrainedConfig.build((*rule.lhs, *remainder), phi)
        if result is None or result in seen:
            continue
        seen.add(result)
        candidates.append(result)
    return minimize_elements(candidates, subsumes)


# ---------------------------------------------------------------------------
# Concrete configurations
# ---------------------------------------------------------------------------


def _ground_maps(
    atoms: Sequence[Atom],
    config: Sequence[GroundAtom],
    constraint: IdConstraint,
    fixed: Mapping[str, int] | None = None,
) -> Iterator[tuple[dict[str, int], tuple[int, ...]]]:
    """Injective predicate-preserving maps of ``atoms`` into ``config``.

    Yields the induced assignment and the indices used. Only assignments
    consistent with ``constraint`` (on the variables bound so far) are kept.
    """
    used: list[int] = []
    assignment: dict[str, int] = dict(fixed or {})

    def search(i: int) -> Iterator[tuple[dict[str, int], tuple[int, ...]]]:
        if i == len(atoms):
            yield dict(assignment), tuple(used)
            return
        atom = atoms[i]
        tried: set[GroundAtom] = set()
        for j, ground in enumerate(config):
            if j in used or ground.predicate != atom.predicate or ground in tried:
                continue
            tried.add(ground)
            fresh = False
            if atom.var is not None:
                if ground.value is None:
                    continue
                bound = assignment.get(atom.var)
                if bound is not None and bound != ground.value:
                    continue
                if bound is None:
                    assignment[atom.var] = ground.value
                    fresh = True
                    if not constraint.holds_partially(assignment):
                        del assignment[atom.var]
                        continue
            used.append(j)
            yield from search(i + 1)
            used.pop()
            if fresh:
                del assignment[atom.var]

    yield from search(0)


def member_concrete(config: Iterable[GroundAtom], psi: ConstrainedConfig) -> bool:
    """``config`` is an instance of ``psi``."""
    config = tuple(config)
    for assignment, _ in _ground_maps(psi.atoms, config, psi.constraint):
        if psi.constraint.holds(assignment):
            return True
    return False


def fresh_candidates(values: Iterable[int], spread: int) -> list[int]:
    """One representative per order position relative to ``values``."""
    ordered = sorted(set(values))
    if not ordered:
        return [0]
    candidates = [ordered[0] - spread, *ordered, ordered[-1] + spread]
    for low, high in zip(ordered, ordered[1:]):
        if high - low >= 2:
            candidates.append((low + high) // 2)
    return sorted(set(candidates))


def canonical_config(config: Iterable[GroundAtom], spread: Optional[int] = None) -> Configuration:
    """Rename identifiers by rank, keeping adjacency and spreading every other gap."""
    spread = spread or settings.id_spread
    config = tuple(config)
    values = sorted({a.value for a in config if a.value is not None})
    renaming: dict[int, int] = {}
    current = 1
    for index, value in enumerate(values):
        if index:
            current += 1 if value - values[index - 1] == 1 else spread
        renaming[value] = current
    return configuration(
        GroundAtom(a.predicate, None if a.value is None else renaming[a.value]) for a in config
    )


def successors(
    config: Sequence[GroundAtom], rule: MsrRule, spread: Optional[int] = None,
) -> list[Configuration]:
    """Every successor of ``config`` through ``rule``, without canonical renaming."""
    spread = spread or settings.id_spread
    config = tuple(config)
    fresh = rule.fresh_variables
    results: list[Configuration] = []
    seen: set[Configuration] = set()
    for assignment, used in _ground_maps(rule.lhs, config, rule.constraint):
        rest = [a for j, a in enumerate(config) if j not in used]
        for full in _fresh_assignments(config, fresh, assignment, rule.constraint, spread):
            if not rule.constraint.holds(full):
                continue
            produced = [
                GroundAtom(a.predicate, None if a.var is None else full[a.var]) for a in rule.rhs
            ]
            successor = configuration((*rest, *produced))
            if successor not in seen:
                seen.add(successor)
                results.append(successor)
    return results


def _fresh_assignments(
    config: Sequence[GroundAtom],
    fresh: Sequence[str],
    assignment: dict[str, int],
    constraint: IdConstraint,
    spread: int,
) -> Iterator[dict[str, int]]:
    if not fresh:
        yield assignment
        return
    values = [a.value for a in config if a.value is not None] + list(assignment.values())
    head, tail = fresh[0], fresh[1:]
    for value in fresh_candidates(values, spread):
        extended = {**assignment, head: value}
        if constraint.holds_partially(extended):
            yield from _fresh_assignments(config, tail, extended, constraint, spread)


def step_forward(
    config: Iterable[GroundAtom], rule: MsrRule, spread: Optional[int] = None,
) -> list[Configuration]:
    """Canonical successors of ``config`` through ``rule``, sorted and deduplicated."""
    canonical = {canonical_config(s, spread) for s in successors(tuple(config), rule, spread)}
    return sorted(canonical)


# ---------------------------------------------------------------------------
# Monadization
# ---------------------------------------------------------------------------


def folded_name(predicate: str, literals: Sequence[str]) -> str:
    return "_".join((predicate, *literals))


def monadic_signature(
    decls: Sequence[PredicateDecl], enums: Mapping[str, Sequence[str]],
) -> tuple[tuple[str, int], ...]:
    """Folded predicate table: one entry per enumeration assignment."""
    table: list[tuple[str, int]] = []
    for decl in decls:
        id_positions = [t for t in decl.arg_types if t == ID_TYPE]
        if len(id_positions) > 1:
            raise ModelError(f"predicate '{decl.name}' has more than one identifier argument")
        enum_types = [t for t in decl.arg_types if t != ID_TYPE]
        for t in enum_types:
            if t not in enums:
                raise UndeclaredEnum(t, where=f"predicate '{decl.name}'")
        arity = len(id_positions)
        for literals in itertools.product(*(enums[t] for t in enum_types)):
            table.append((folded_name(decl.name, literals), arity))
    return tuple(table)


def fold_atom(
    atom: RawAtom,
    decl: PredicateDecl,
    enums: Mapping[str, Sequence[str]],
    binding: Mapping[str, str] | None = None,
) -> tuple[str, Optional[str]]:
    """``h(req, t, x)`` becomes ``("h_req_t", "x")``.

    Enumerated positions must hold a literal of their enum, or a variable
    that ``binding`` resolves to one.
    """
    if len(atom.args) != decl.arity:
        raise ModelError(
            f"'{atom.predicate}' expects {decl.arity} argument(s), got {len(atom.args)}"
        )
    binding = binding or {}
    literals: list[str] = []
    argument: Optional[str] = None
    for arg, arg_type in zip(atom.args, decl.arg_types):
        if arg_type == ID_TYPE:
            argument = arg
            continue
        if arg_type not in enums:
            raise UndeclaredEnum(arg_type, where=f"predicate '{decl.name}'")
        value = binding.get(arg, arg)
        if value not in enums[arg_type]:
            raise ModelError(
                f"'{arg}' is not a value of enum '{arg_type}' in '{atom.predicate}'"
            )
        literals.append(value)
    return folded_name(atom.predicate, literals), argument


def _enum_variables(
    rule: RawRule, decls: Mapping[str, PredicateDecl], enums: Mapping[str, Sequence[str]],
) -> dict[str, str]:
    """Variables standing in enumerated positions, with their enum."""
    found: dict[str, str] = {}
    for atom in (*rule.lhs, *rule.rhs):
        decl = decls.get(atom.predicate)
        if decl is None:
            raise ModelError(f"rule '{rule.name}' uses undeclared predicate '{atom.predicate}'")
        if len(atom.args) != decl.arity:
            raise ModelError(
                f"rule '{rule.name}': '{atom.predicate}' expects {decl.arity} argument(s), "
                f"got {len(atom.args)}"
            )
        for arg, arg_type in zip(atom.args, decl.arg_types):
            if arg_type == ID_TYPE:
                continue
            if arg_type not in enums:
                raise UndeclaredEnum(arg_type, where=f"rule '{rule.name}'")
            if arg in enums[arg_type]:
                continue
            previous = found.setdefault(arg, arg_type)
            if previous != arg_type:
                raise ModelError(
                    f"rule '{rule.name}': variable '{arg}' ranges over both "
                    f"'{previous}' and '{arg_type}'"
                )
    return found


def monadize(
    rules: Sequence[RawRule],
    decls: Sequence[PredicateDecl],
    enums: Mapping[str, Sequence[str]],
) -> tuple[MsrRule, ...]:
    """Fold enumerated arguments into predicate names.

    A rule with free enumerated variables expands into one rule per
    assignment, named ``<rule>_<value>...`` in variable order.
    """
    by_name = {d.name: d for d in decls}
    monadic_signature(decls, enums)
    expanded: list[MsrRule] = []
    for rule in rules:
        variables = _enum_variables(rule, by_name, enums)
        names = sorted(variables)
        for values in itertools.product(*(enums[variables[v]] for v in names)):
            binding = dict(zip(names, values))

            def fold(atoms: Sequence[RawAtom]) -> tuple[Atom, ...]:
                return tuple(
                    Atom(*fold_atom(a, by_name[a.predicate], enums, binding)) for a in atoms
                )

            name = folded_name(rule.name, values) if values else rule.name
            expanded.append(MsrRule(name, fold(rule.lhs), fold(rule.rhs), rule.constraint))
    logger.debug("Monadized %d rule(s) into %d", len(rules), len(expanded))
    return tuple(expanded)


# ---------------------------------------------------------------------------
# Domain adapters
# ---------------------------------------------------------------------------


class MsrDomain(SymbolicDomain[ConstrainedConfig], ForwardSystem[Configuration]):
    """Backward and forward semantics of an :class:`MsrSystem`."""

    def __init__(self, system: MsrSystem, spread: Optional[int] = None) -> None:
        self.system = system
        self.spread = spread or settings.id_spread

    # backward
    def predecessors(self, element: ConstrainedConfig) -> list[tuple[str, ConstrainedConfig]]:
        return [(rule.name, p) for rule in self.system.rules for p in pre_rule(element, rule)]

    def subsumes(self, general: ConstrainedConfig, specific: ConstrainedConfig) -> bool:
        return subsumes(general, specific)

    def is_initial(self, element: ConstrainedConfig) -> bool:
        return self.initial_index(element) is not None

    def initial_index(self, element: ConstrainedConfig) -> int | None:
        for index, initial in enumerate(self.system.initials):
            if member_concrete(initial, element):
                return index
        return None

    def render_parts(self, element: ConstrainedConfig) -> tuple[str, str]:
        return element.render_parts()

    # forward
    def initials(self) -> list[Configuration]:
        return list(self.system.initials)

    def rule_names(self) -> list[str]:
        return [r.name for r in self.system.rules]

    def successors(self, config: Configuration, rule_name: str) -> list[Configuration]:
        return successors(config, self.system.rule(rule_name), self.spread)

    def canonical(self, config: Configuration) -> Configuration:
        return canonical_config(config, self.spread)

    def covers(self, config: Configuration, target: ConstrainedConfig) -> bool:
        return member_concrete(config, target)

    def render_config(self, config: Configuration) -> str:
        from hcov.models.msr import render_configuration

        return render_configuration(config)
