"""Order constraints over identifier variables, stored in transitively closed form.

A constraint is a partition of its variables into equality classes plus gap
atoms ``(X, Y, k)`` between class representatives, read as ``Y - X > k``; the
surface atom ``x < y`` is the gap ``k = 0``. Identifiers range over the integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

Gap = tuple[str, str, int]


def _union_find(variables: Iterable[str], equalities: Iterable[tuple[str, str]]) -> dict[str, str]:
    parent = {v: v for v in variables}

    def find(v: str) -> str:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b in equalities:
        ra, rb = find(a), find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            parent[rb] = ra
    members: dict[str, list[str]] = {}
    for v in parent:
        members.setdefault(find(v), []).append(v)
    rep: dict[str, str] = {}
    for group in members.values():
        least = min(group)
        for v in group:
            rep[v] = least
    return rep


@dataclass(frozen=True, slots=True)
class IdConstraint:
    variables: frozenset[str] = frozenset()
    classes: tuple[tuple[str, ...], ...] = ()
    gaps: tuple[Gap, ...] = ()
    satisfiable: bool = True

    @classmethod
    def true(cls, variables: Iterable[str] = ()) -> IdConstraint:
        return cls(frozenset(variables))

    @classmethod
    def unsat(cls, variables: Iterable[str] = ()) -> IdConstraint:
        return cls(frozenset(variables), satisfiable=False)

    @classmethod
    def build(
        cls,
        variables: Iterable[str] = (),
        equalities: Iterable[tuple[str, str]] = (),
        gaps: Iterable[Gap] = (),
    ) -> IdConstraint:
        equalities = list(equalities)
        gaps = list(gaps)
        names = set(variables)
        for a, b in equalities:
            names.update((a, b))
        for x, y, _ in gaps:
            names.update((x, y))

        rep = _union_find(sorted(names), equalities)

        weight: dict[tuple[str, str], int] = {}
        for x, y, k in gaps:
            if k < 0:
                raise ValueError(f"gap must be a natural number, got {k}")
            rx, ry = rep[x], rep[y]
            if rx == ry:
                return cls.unsat(names)
            weight[(rx, ry)] = max(weight.get((rx, ry), 0), k + 1)

        nodes = sorted({n for edge in weight for n in edge})
        for m in nodes:
            for i in nodes:
                w_im = weight.get((i, m))
                if w_im is None:
                    continue
                for j in nodes:
                    w_mj = weight.get((m, j))
                    if w_mj is None:
                        continue
                    if i == j:
                        return cls.unsat(names)
                    candidate = w_im + w_mj
                    if candidate > weight.get((i, j), 0):
                        weight[(i, j)] = candidate

        groups: dict[str, list[str]] = {}
        for v, r in rep.items():
            groups.setdefault(r, []).append(v)
        classes = tuple(sorted(tuple(sorted(g)) for g in groups.values() if len(g) > 1))
        closed = tuple(sorted((x, y, w - 1) for (x, y), w in weight.items()))
        return cls(frozenset(names), classes, closed)

    @property
    def is_true(self) -> bool:
        return self.satisfiable and not self.classes and not self.gaps

    def representatives(self) -> dict[str, str]:
        rep = {v: v for v in self.variables}
        for group in self.classes:
            for v in group:
                rep[v] = group[0]
        return rep

    def equalities(self) -> list[tuple[str, str]]:
        return [(group[0], v) for group in self.classes for v in group[1:]]

    def gap_between(self, x: str, y: str) -> int | None:
        """Closed gap ``k`` with ``y - x > k`` implied by this constraint, if any."""
        rep = self.representatives()
        rx, ry = rep.get(x), rep.get(y)
        if rx is None or ry is None:
            return None
        for gx, gy, k in self.gaps:
            if gx == rx and gy == ry:
                return k
        return None

    def rename(self, mapping: Mapping[str, str]) -> IdConstraint:
        """Substitute variables; mapping two variables to one name merges them."""
        def m(v: str) -> str:
            return mapping.get(v, v)

        if not self.satisfiable:
            return IdConstraint.unsat(m(v) for v in self.variables)
        return IdConstraint.build(
            (m(v) for v in self.variables),
            ((m(a), m(b)) for a, b in self.equalities()),
            ((m(x), m(y), k) for x, y, k in self.gaps),
        )

    def holds(self, assignment: Mapping[str, int]) -> bool:
        if not self.satisfiable:
            return False
        for a, b in self.equalities():
            if assignment[a] != assignment[b]:
                return False
        rep = self.representatives()
        for x, y, k in self.gaps:
            if not assignment[rep[y]] - assignment[rep[x]] > k:
                return False
        return True

    def holds_partially(self, assignment: Mapping[str, int]) -> bool:
        """Like :meth:`holds`, ignoring atoms over unassigned variables."""
        if not self.satisfiable:
            return False
        rep = self.representatives()
        values: dict[str, int] = {}
        for v, value in assignment.items():
            if v not in rep:
                continue
            if values.setdefault(rep[v], value) != value:
                return False
        for x, y, k in self.gaps:
            if x in values and y in values and not values[y] - values[x] > k:
                return False
        return True

    def render(self, names: Mapping[str, str] | None = None) -> str:
        names = names or {}

        def n(v: str) -> str:
            return names.get(v, v)

        if not self.satisfiable:
            return "{false}"
        parts = [f"{n(a)}={n(b)}" for a, b in self.equalities()]
        for x, y, k in self.gaps:
            parts.append(f"{n(x)}<{n(y)}" if k == 0 else f"{n(y)}-{n(x)}>{k}")
        return "{" + ", ".join(parts) + "}"
