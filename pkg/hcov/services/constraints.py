from __future__ import annotations

from typing import Iterable

from hcov.models.constraint import IdConstraint


def c_satisfiable(phi: IdConstraint) -> bool:
    return phi.satisfiable


def c_conjoin(*phis: IdConstraint) -> IdConstraint:
    variables: set[str] = set()
    equalities: list[tuple[str, str]] = []
    gaps: list[tuple[str, str, int]] = []
    for phi in phis:
        if not phi.satisfiable:
            return IdConstraint.unsat(set().union(*(p.variables for p in phis)))
        variables |= phi.variables
        equalities.extend(phi.equalities())
        gaps.extend(phi.gaps)
    return IdConstraint.build(variables, equalities, gaps)


def c_equalities(pairs: Iterable[tuple[str, str]]) -> IdConstraint:
    return IdConstraint.build(equalities=pairs)


def c_project(phi: IdConstraint, keep: Iterable[str]) -> IdConstraint:
    """Existentially eliminate every variable outside ``keep``.

    The stored form is closed, so eliminating a variable amounts to dropping
    it: whatever it implied between the kept variables is already a gap.
    """
    keep = set(keep) & phi.variables
    if not phi.satisfiable:
        return IdConstraint.unsat(keep)
    rep = phi.representatives()
    new_rep: dict[str, str] = {}
    for v in sorted(keep):
        new_rep.setdefault(rep[v], v)
    equalities = [(new_rep[rep[v]], v) for v in keep if new_rep[rep[v]] != v]
    gaps = [
        (new_rep[x], new_rep[y], k)
        for x, y, k in phi.gaps
        if x in new_rep and y in new_rep
    ]
    return IdConstraint.build(keep, equalities, gaps)


def c_entails(phi1: IdConstraint, phi2: IdConstraint) -> bool:
    """Every integer solution of ``phi1`` solves ``phi2``."""
    if not phi1.satisfiable:
        return True
    if not phi2.satisfiable:
        return False
    rep1 = phi1.representatives()
    for a, b in phi2.equalities():
        if a == b:
            continue
        if a not in rep1 or b not in rep1 or rep1[a] != rep1[b]:
            return False
    closed1 = {(x, y): k for x, y, k in phi1.gaps}
    for x, y, k in phi2.gaps:
        if x not in rep1 or y not in rep1:
            return False
        have = closed1.get((rep1[x], rep1[y]))
        if have is None or have < k:
            return False
    return True
