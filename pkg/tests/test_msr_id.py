from __future__ import annotations

import itertools
import random

import pytest

from hcov.errors import ModelError, UndeclaredEnum
from hcov.models.constraint import IdConstraint
from hcov.models.msr import (
    ID_TYPE,
    Atom,
    ConstrainedConfig,
    Configuration,
    GroundAtom,
    MsrRule,
    PredicateDecl,
    RawAtom,
    RawRule,
    configuration,
)
from hcov.services.msr_id import (
    MsrDomain,
    canonical_config,
    fold_atom,
    folded_name,
    fresh_candidates,
    member_concrete,
    monadic_signature,
    monadize,
    pre_rule,
    step_forward,
    subsumes,
)
from hcov.services.parser import _build_rule, _read, parse_model
from tests.helpers import corpus_text

ENUMS = {"msg": ("req", "ack"), "ag": ("a", "b", "t")}


def cc(atoms: str, gaps=(), equalities=()) -> ConstrainedConfig:
    """``cc("p(a) q(b)", gaps=[("a", "b", 0)])``; bare names are nullary."""
    parsed = []
    for token in atoms.split():
        if "(" in token:
            predicate, var = token.rstrip(")").split("(")
            parsed.append(Atom(predicate, var))
        else:
            parsed.append(Atom(token))
    config = ConstrainedConfig.build(parsed, IdConstraint.build((), equalities, gaps))
    assert config is not None
    return config


def ground(*atoms: tuple) -> tuple[GroundAtom, ...]:
    return configuration(GroundAtom(*a) for a in atoms)


SHIFT_RULE = MsrRule(
    "r",
    (Atom("p", "x"),),
    (Atom("q", "x"), Atom("p", "y")),
    IdConstraint.build(gaps=[("x", "y", 0)]),
)


def test_build_renames_canonically():
    config = cc("q(u) p(v) r(u)", gaps=[("v", "u", 0)])
    assert config.atoms == (Atom("q", "X1"), Atom("p", "X2"), Atom("r", "X1"))
    assert config.render() == "[q(A),p(B),r(A)] : {B<A}"


def test_build_rejects_unsatisfiable():
    assert ConstrainedConfig.build([Atom("p", "x")], IdConstraint.unsat()) is None


def test_singletons_render_as_underscore():
    assert cc("b2(x) i1(y) hc(x)").render_parts() == ("[b2(A),i1(_),hc(A)]", "{}")


def test_subsumes_examples():
    assert subsumes(cc("hc(a)"), cc("hc(a) hi(a)"))
    assert subsumes(cc("hc(a) hi(a)"), cc("hi(a) ok hc(a)"))
    assert not subsumes(cc("hc(a) hi(a)"), cc("hc(a) hi(b)"))
    assert not subsumes(cc("p(a) p(b)"), cc("p(a)"))


def test_subsumes_compares_constraints():
    loose = cc("p(a) q(b)", gaps=[("a", "b", 0)])
    tight = cc("p(a) q(b)", gaps=[("a", "b", 2)])
    assert subsumes(loose, tight)
    assert not subsumes(tight, loose)
    assert subsumes(cc("p(a) q(b)"), tight)


def test_pre_rule_android_rule_three(android_unsafe):
    rule = android_unsafe.msr.rule("3")
    (pre,) = pre_rule(cc("hc(a) hi(a)"), rule)
    assert pre.render_parts() == ("[b2(A),i1(_),hc(A)]", "{}")


def test_pre_rule_with_fresh_identifier():
    target = cc("q(a) p(b)", gaps=[("b", "a", 0)])
    rendered = {p.render() for p in pre_rule(target, SHIFT_RULE)}
    assert rendered == {"[p(A),p(B)] : {B<A}", "[p(A),q(B)] : {B-A>1}"}


def test_pre_rule_without_overlap_is_empty():
    assert pre_rule(cc("z(a)"), SHIFT_RULE) == []


def test_pre_rule_results_are_pairwise_incomparable(android_safe):
    target = android_safe.target("conflict")
    for rule in android_safe.msr.rules:
        results = pre_rule(target, rule)
        for i, a in enumerate(results):
            for b in results[i + 1:]:
                assert not subsumes(a, b)
                assert not subsumes(b, a)


def test_member_concrete():
    assert member_concrete(ground(("p", 1), ("q", 5)), cc("p(a) q(b)", gaps=[("a", "b", 0)]))
    assert not member_concrete(ground(("p", 1), ("q", 5)), cc("p(a) q(b)", gaps=[("b", "a", 0)]))
    assert not member_concrete(ground(("p", 1)), cc("p(a) p(b)"))
    assert member_concrete(ground(("ok",), ("p", 2)), cc("ok"))
    assert not member_concrete(ground(("p", 1), ("q", 2)), cc("p(a) q(a)"))


def test_fresh_candidates():
    assert fresh_candidates([5, 1, 2], 1024) == [-1023, 1, 2, 3, 5, 1029]
    assert fresh_candidates([], 1024) == [0]


def test_canonical_config():
    config = ground(("p", 5), ("q", 6), ("r", 100))
    assert canonical_config(config, 1024) == ground(("p", 1), ("q", 2), ("r", 1026))
    shifted = ground(("p", 45), ("q", 46), ("r", 7000))
    assert canonical_config(shifted, 1024) == canonical_config(config, 1024)


def test_step_forward_draws_a_fresh_nonce(correspondence):
    rule = correspondence.msr.rule("alice_send")
    (initial,) = correspondence.msr.initials
    expected = ground(
        ("a_1", 1), ("b_0",), ("h_req_a", 1), ("nonce", 1025), ("req", 1), ("t_0",)
    )
    assert step_forward(initial, rule, 1024) == [expected]


def test_step_forward_is_invariant_under_shifts(android_unsafe):
    (initial,) = android_unsafe.msr.initials
    shifted = configuration(
        GroundAtom(a.predicate, None if a.value is None else a.value + 10) for a in initial
    )
    for rule in android_unsafe.msr.rules:
        assert step_forward(initial, rule) == step_forward(shifted, rule)


def test_step_forward_of_disabled_rule_is_empty(android_unsafe):
    (initial,) = android_unsafe.msr.initials
    assert step_forward(initial, android_unsafe.msr.rule("3")) == []


def test_monadic_signature_folds_enumerations():
    table = monadic_signature([PredicateDecl("h", ("msg", "ag", "id"))], ENUMS)
    assert table == (
        ("h_req_a", 1), ("h_req_b", 1), ("h_req_t", 1),
        ("h_ack_a", 1), ("h_ack_b", 1), ("h_ack_t", 1),
    )


def test_monadic_signature_errors():
    with pytest.raises(UndeclaredEnum):
        monadic_signature([PredicateDecl("h", ("colour", "id"))], ENUMS)
    with pytest.raises(ModelError):
        monadic_signature([PredicateDecl("pair", ("id", "id"))], ENUMS)


def test_fold_atom():
    decl = PredicateDecl("h", ("msg", "ag", "id"))
    assert fold_atom(RawAtom("h", ("req", "t", "x")), decl, ENUMS) == ("h_req_t", "x")
    assert fold_atom(RawAtom("h", ("m", "b", "x")), decl, ENUMS, {"m": "ack"}) == ("h_ack_b", "x")
    with pytest.raises(ModelError):
        fold_atom(RawAtom("h", ("nack", "a", "x")), decl, ENUMS)
    with pytest.raises(ModelError):
        fold_atom(RawAtom("h", ("req", "x")), decl, ENUMS)


def test_monadize_expands_free_enum_variables():
    decls = [PredicateDecl("p", ("id",)), PredicateDecl("h", ("msg", "ag", "id"))]
    rule = RawRule("log", (RawAtom("p", ("x",)),), (RawAtom("h", ("m", "g", "x")),))
    rules = monadize([rule], decls, ENUMS)
    assert len(rules) == 6
    assert {r.name for r in rules} == {f"log_{g}_{m}" for g in ENUMS["ag"] for m in ENUMS["msg"]}
    by_name = {r.name: r for r in rules}
    assert by_name["log_t_ack"].rhs == (Atom("h_ack_t", "x"),)
    assert by_name["log_t_ack"].lhs == (Atom("p", "x"),)


def test_monadize_rejects_undeclared_predicates():
    rule = RawRule("bad", (RawAtom("nowhere", ("x",)),), ())
    with pytest.raises(ModelError):
        monadize([rule], [PredicateDecl("p", ("id",))], ENUMS)


def test_initial_index_picks_the_matching_initial(android_safe):
    domain = MsrDomain(android_safe.msr)
    assert domain.initial_index(cc("c1(a) hc(a)")) == 0
    assert domain.initial_index(cc("c1(a) c1(b)")) == 1
    assert not domain.is_initial(cc("hi(a)"))


# ---------------------------------------------------------------------------
# Properties on small random instances
# ---------------------------------------------------------------------------

PREDICATES = ("p", "q")
SMALL_IDS = range(0, 3)
FRESH_RANGE = range(-5, 8)


def random_rule(rng: random.Random) -> MsrRule:
    lhs = [Atom(rng.choice(PREDICATES), rng.choice("xy")) for _ in range(rng.randint(1, 2))]
    bound = sorted({a.var for a in lhs})
    rhs = [Atom(rng.choice(PREDICATES), rng.choice([*bound, "z"])) for _ in range(rng.randint(1, 2))]
    variables = sorted({a.var for a in (*lhs, *rhs)})
    gaps = []
    if len(variables) > 1 and rng.random() < 0.6:
        gaps.append((*rng.sample(variables, 2), rng.randint(0, 1)))
    return MsrRule("r", tuple(lhs), tuple(rhs), IdConstraint.build(gaps=gaps))


def random_target(rng: random.Random) -> ConstrainedConfig | None:
    atoms = [Atom(rng.choice(PREDICATES), rng.choice("ab")) for _ in range(rng.randint(1, 2))]
    variables = sorted({a.var for a in atoms})
    gaps = []
    if len(variables) > 1 and rng.random() < 0.6:
        gaps.append((*rng.sample(variables, 2), rng.randint(0, 1)))
    return ConstrainedConfig.build(atoms, IdConstraint.build(gaps=gaps))


def small_configurations(size: int = 3):
    kinds = [GroundAtom(p, v) for p in PREDICATES for v in SMALL_IDS]
    for n in range(size + 1):
        for chosen in itertools.combinations_with_replacement(kinds, n):
            yield configuration(chosen)


def one_step(config: Configuration, rule: MsrRule):
    """Every successor, with fresh identifiers drawn from a wide window."""
    fresh = rule.fresh_variables
    for indices in itertools.permutations(range(len(config)), len(rule.lhs)):
        assignment: dict[str, int] = {}
        for atom, j in zip(rule.lhs, indices):
            ground = config[j]
            if ground.predicate != atom.predicate:
                break
            if assignment.setdefault(atom.var, ground.value) != ground.value:
                break
        else:
            rest = [a for j, a in enumerate(config) if j not in indices]
            for values in itertools.product(FRESH_RANGE, repeat=len(fresh)):
                full = {**assignment, **dict(zip(fresh, values))}
                if rule.constraint.holds(full):
                    yield configuration(
                        (*rest, *(GroundAtom(a.predicate, full[a.var]) for a in rule.rhs))
                    )


def test_pre_rule_matches_one_step_search():
    rng = random.Random(17)
    configs = list(small_configurations())
    for _ in range(60):
        rule, target = random_rule(rng), random_target(rng)
        if target is None:
            continue
        predecessors = pre_rule(target, rule)
        for config in configs:
            symbolic = any(member_concrete(config, pre) for pre in predecessors)
            concrete = any(member_concrete(s, target) for s in one_step(config, rule))
            if symbolic:
                assert concrete, (rule, target.render(), config)
            if concrete:
                assert symbolic or member_concrete(config, target), (rule, target.render(), config)


def random_atoms(rng: random.Random, count: int) -> list[Atom]:
    return [Atom(rng.choice(PREDICATES), rng.choice("abcd")) for _ in range(count)]


def random_gaps(rng: random.Random, atoms: list[Atom]) -> list[tuple[str, str, int]]:
    variables = sorted({a.var for a in atoms})
    if len(variables) < 2:
        return []
    return [(*rng.sample(variables, 2), rng.randint(0, 2)) for _ in range(rng.randint(0, 2))]


def test_subsumes_is_reflexive_and_transitive():
    rng = random.Random(23)
    checked = 0
    for _ in range(300):
        first = random_atoms(rng, rng.randint(0, 2))
        second = first + random_atoms(rng, rng.randint(0, 1))
        third = second + random_atoms(rng, rng.randint(0, 1))
        gaps = random_gaps(rng, first)
        more = gaps + random_gaps(rng, second)
        most = more + random_gaps(rng, third)
        chain = [
            ConstrainedConfig.build(first, IdConstraint.build(gaps=gaps)),
            ConstrainedConfig.build(second, IdConstraint.build(gaps=more)),
            ConstrainedConfig.build(third, IdConstraint.build(gaps=most)),
        ]
        if any(c is None for c in chain):
            continue
        a, b, c = chain
        for x in chain:
            assert subsumes(x, x)
        assert subsumes(a, b) and subsumes(b, c)
        assert subsumes(a, c)
        checked += 1
    assert checked > 100


def test_subsumes_is_transitive_on_unrelated_triples():
    rng = random.Random(29)
    pool = []
    while len(pool) < 40:
        atoms = random_atoms(rng, rng.randint(1, 4))
        config = ConstrainedConfig.build(atoms, IdConstraint.build(gaps=random_gaps(rng, atoms)))
        if config is not None:
            pool.append(config)
    above = {(i, j): subsumes(a, b) for (i, a), (j, b) in itertools.product(enumerate(pool), repeat=2)}
    for i, j, k in itertools.product(range(len(pool)), repeat=3):
        if above[i, j] and above[j, k]:
            assert above[i, k], (pool[i].render(), pool[j].render(), pool[k].render())


ECHO_RULE = "\nrule echo: t_1(x) -> t_1(x), h(m, g, x)\n"


def unfolding(decls, enums) -> dict[str, tuple[PredicateDecl, tuple[str, ...]]]:
    table = {}
    for decl in decls:
        enum_types = [t for t in decl.arg_types if t != ID_TYPE]
        for literals in itertools.product(*(enums[t] for t in enum_types)):
            table[folded_name(decl.name, literals)] = (decl, literals)
    return table


def unfold(config: Configuration, table) -> list[tuple[str, tuple]]:
    raw = []
    for atom in config:
        decl, literals = table[atom.predicate]
        remaining = iter(literals)
        args = tuple(atom.value if t == ID_TYPE else next(remaining) for t in decl.arg_types)
        raw.append((decl.name, args))
    return raw


def fold(raw: list[tuple[str, tuple]], decls) -> Configuration:
    by_name = {d.name: d for d in decls}
    atoms = []
    for predicate, args in raw:
        decl = by_name[predicate]
        literals = [a for a, t in zip(args, decl.arg_types) if t != ID_TYPE]
        ids = [a for a, t in zip(args, decl.arg_types) if t == ID_TYPE]
        atoms.append(GroundAtom(folded_name(predicate, literals), ids[0] if ids else None))
    return configuration(atoms)


def raw_successors(raw: list[tuple[str, tuple]], rule: RawRule, decls, enums, spread: int):
    """Apply a rule with enumerated arguments directly, without folding it first."""
    by_name = {d.name: d for d in decls}

    def variable(arg: str, arg_type: str) -> bool:
        return arg_type == ID_TYPE or arg not in enums[arg_type]

    for indices in itertools.permutations(range(len(raw)), len(rule.lhs)):
        binding: dict[str, object] = {}
        matched = True
        for atom, j in zip(rule.lhs, indices):
            predicate, values = raw[j]
            if predicate != atom.predicate:
                matched = False
                break
            for arg, value, arg_type in zip(atom.args, values, by_name[predicate].arg_types):
                if not variable(arg, arg_type):
                    matched = matched and arg == value
                elif binding.setdefault(arg, value) != value:
                    matched = False
            if not matched:
                break
        if not matched:
            continue
        free_enums: dict[str, str] = {}
        fresh_ids: list[str] = []
        for atom in rule.rhs:
            for arg, arg_type in zip(atom.args, by_name[atom.predicate].arg_types):
                if not variable(arg, arg_type) or arg in binding:
                    continue
                if arg_type == ID_TYPE:
                    if arg not in fresh_ids:
                        fresh_ids.append(arg)
                else:
                    free_enums[arg] = arg_type
        rest = [a for j, a in enumerate(raw) if j not in indices]
        ids = [v for _, args in raw for v in args if isinstance(v, int)]
        names = sorted(free_enums)
        for literals in itertools.product(*(enums[free_enums[n]] for n in names)):
            for fresh in itertools.product(fresh_candidates(ids, spread), repeat=len(fresh_ids)):
                full = {**binding, **dict(zip(names, literals)), **dict(zip(fresh_ids, fresh))}
                numeric = {k: v for k, v in full.items() if isinstance(v, int)}
                if not rule.constraint.holds(numeric):
                    continue
                produced = [
                    (a.predicate, tuple(full.get(arg, arg) for arg in a.args)) for a in rule.rhs
                ]
                yield [*rest, *produced]


def test_monadize_preserves_bounded_reachability():
    text = corpus_text("correspondence") + ECHO_RULE
    draft = _read(text)
    raw_rules = [_build_rule(draft, entry) for entry in draft.rules]
    system = parse_model(text).msr
    table = unfolding(draft.preds, draft.enums)
    spread = 1024

    (initial,) = system.initials
    frontier = {canonical_config(initial, spread)}
    reached = set(frontier)
    for _ in range(5):
        folded = {
            canonical_config(fold(successor, draft.preds), spread)
            for config in frontier
            for rule in raw_rules
            for successor in raw_successors(unfold(config, table), rule, draft.preds, draft.enums, spread)
        }
        monadic = {
            successor
            for config in frontier
            for rule in system.rules
            for successor in step_forward(config, rule, spread)
        }
        assert folded == monadic
        frontier = monadic - reached
        reached |= monadic
    assert any(a.predicate == "h_req_t" for config in reached for a in config)
    assert any(a.predicate == "h_ack_b" for config in reached for a in config)
