"""Reader and writer for the line-oriented ``.hcov`` model format.

One grammar serves every model kind; the ``system`` header selects which
declarations are legal. ``#`` starts a comment.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from typing import Optional

from hcov.errors import ModelError, ModelParseError
from hcov.models.constraint import IdConstraint
from hcov.models.history import History, LogMode
from hcov.models.model_file import ModelFile, ModelKind, Target
from hcov.models.msr import (
    ID_TYPE,
    Atom,
    ConstrainedConfig,
    Configuration,
    GroundAtom,
    MsrSystem,
    PredicateDecl,
    RawAtom,
    RawRule,
    configuration,
)
from hcov.models.multiset import counts, from_counts
from hcov.models.petri import HConfig, PetriNetH, Transition
from hcov.services.msr_id import fold_atom, monadic_signature, monadize
from hcov.services.petri_hist import automaton_net

logger = logging.getLogger(__name__)

IDENT = r"[A-Za-z_][A-Za-z0-9_]*'*"
_IDENT_RE = re.compile(rf"^{IDENT}$")
_INT_RE = re.compile(r"^-?\d+$")
_ATOM_RE = re.compile(rf"^({IDENT})\s*(?:\((.*)\))?$")
_KEYWORD_RE = re.compile(r"^(\w+)\s*(.*)$")
_NAMED_RE = re.compile(r"^(\S+?)\s*:\s*(.*)$")
_PRED_RE = re.compile(rf"({IDENT})\s*(?:/\s*(\d+)|\(([^)]*)\))")
_ENUM_RE = re.compile(rf"^({IDENT})\s*\{{(.*)\}}$")
_PETRI_TRANS_RE = re.compile(r"^pre\b(.*?)->\s*post\b(.*?)(?:\bemit\s+(\S+))?$")
_AUTOMATON_TRANS_RE = re.compile(r"^(\S+)\s*->\s*(\S+)(?:\s+emit\s+(\S+))?$")
_RULE_RE = re.compile(r"^(.*?)->(.*?)(?:\bwhere\b(.*))?$")
_MSR_TARGET_RE = re.compile(r"^\[(.*)\]\s*(?::\s*\{(.*)\})?$")
_GAP_RE = re.compile(rf"^({IDENT})\s*-\s*({IDENT})\s*>\s*(\d+)$")
_REL_RE = re.compile(rf"^({IDENT})\s*(<|>|=)\s*({IDENT})$")

ANONYMOUS = "_"

_KEYWORDS = {
    ModelKind.PETRI: {"places", "events", "logmode", "trans", "init", "target", "expect"},
    ModelKind.AUTOMATON: {"states", "events", "logmode", "trans", "init", "target", "expect"},
    ModelKind.MSR: {"pred", "enum", "rule", "init", "target", "expect"},
}


@dataclass
class _Entry:
    line: int
    name: str
    body: str


@dataclass
class _Draft:
    kind: Optional[ModelKind] = None
    places: list[str] = field(default_factory=list)
    events: list[str] = field(default_factory=list)
    log_mode: LogMode = LogMode.WORD
    transitions: list[_Entry] = field(default_factory=list)
    preds: list[PredicateDecl] = field(default_factory=list)
    pred_lines: dict[str, int] = field(default_factory=dict)
    enums: dict[str, tuple[str, ...]] = field(default_factory=dict)
    rules: list[_Entry] = field(default_factory=list)
    inits: list[_Entry] = field(default_factory=list)
    targets: list[_Entry] = field(default_factory=list)
    expects: list[_Entry] = field(default_factory=list)


# ---------------------------------------------------------------------------
# Lexical helpers
# ---------------------------------------------------------------------------


def _split_top(text: str, line: int) -> list[str]:
    """Split on commas outside parentheses; blank items are an error."""
    items: list[str] = []
    depth = 0
    current = ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ModelParseError(line, "unbalanced ')'")
        if ch == "," and depth == 0:
            items.append(current.strip())
            current = ""
            continue
        current += ch
    if depth:
        raise ModelParseError(line, "unbalanced '('")
    items.append(current.strip())
    if items == [""]:
        return []
    if any(not item for item in items):
        raise ModelParseError(line, "empty item in list")
    return items


def _parse_counts(text: str, line: int) -> dict[str, int]:
    """``p:2, q`` or ``p:2 q`` into symbol counts."""
    result: dict[str, int] = {}
    for token in (t for t in re.split(r"[,\s]+", text.strip()) if t):
        symbol, _, count = token.partition(":")
        if not _IDENT_RE.match(symbol):
            raise ModelParseError(line, f"bad symbol '{symbol}'")
        if count and not count.isdigit():
            raise ModelParseError(line, f"bad count '{count}' for '{symbol}'")
        result[symbol] = result.get(symbol, 0) + (int(count) if count else 1)
    return result


def _parse_raw_atom(text: str, line: int) -> RawAtom:
    match = _ATOM_RE.match(text.strip())
    if not match:
        raise ModelParseError(line, f"bad atom '{text}'")
    predicate, args = match.group(1), match.group(2)
    if args is None:
        return RawAtom(predicate)
    parts = [a.strip() for a in args.split(",")]
    if any(not a for a in parts):
        raise ModelParseError(line, f"empty argument in '{text}'")
    return RawAtom(predicate, tuple(parts))


def _parse_constraint(text: str, line: int) -> tuple[list[tuple[str, str]], list[tuple[str, str, int]]]:
    equalities: list[tuple[str, str]] = []
    gaps: list[tuple[str, str, int]] = []
    for item in _split_top(text, line):
        if item == "true":
            continue
        gap = _GAP_RE.match(item)
        if gap:
            high, low, k = gap.groups()
            gaps.append((low, high, int(k)))
            continue
        rel = _REL_RE.match(item)
        if not rel:
            raise ModelParseError(line, f"bad constraint '{item}'")
        left, op, right = rel.groups()
        if ANONYMOUS in (left, right):
            raise ModelParseError(line, "'_' cannot appear in a constraint")
        if op == "<":
            gaps.append((left, right, 0))
        elif op == ">":
            gaps.append((right, left, 0))
        else:
            equalities.append((left, right))
    return equalities, gaps


def _name_anonymous(atoms: list[RawAtom], start: int = 0) -> tuple[list[RawAtom], int]:
    """Give every ``_`` argument its own variable ``_1``, ``_2``, ..."""
    counter = start
    named: list[RawAtom] = []
    for atom in atoms:
        args = []
        for arg in atom.args:
            if arg == ANONYMOUS:
                counter += 1
                arg = f"{ANONYMOUS}{counter}"
            args.append(arg)
        named.append(RawAtom(atom.predicate, tuple(args)))
    return named, counter


# ---------------------------------------------------------------------------
# Line dispatch
# ---------------------------------------------------------------------------


def _read(text: str) -> _Draft:
    draft = _Draft()
    saw_content = False
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        saw_content = True
        match = _KEYWORD_RE.match(line)
        if not match:
            raise ModelParseError(number, f"cannot read '{line}'")
        keyword, rest = match.group(1), match.group(2).strip()

        if keyword == "system":
            if draft.kind is not None:
                raise ModelParseError(number, "duplicate 'system' header")
            try:
                draft.kind = ModelKind(rest)
            except ValueError:
                raise ModelParseError(number, f"unknown system kind '{rest}'") from None
            continue
        if draft.kind is None:
            raise ModelParseError(number, "expected a 'system petri|automaton|msr' header first")
        if keyword not in _KEYWORDS[draft.kind]:
            raise ModelParseError(number, f"'{keyword}' is not valid in a {draft.kind.value} model")

        if keyword in ("places", "states"):
            for place in rest.replace(",", " ").split():
                if place in draft.places:
                    raise ModelParseError(number, f"duplicate {keyword[:-1]} '{place}'")
                draft.places.append(place)
        elif keyword == "events":
            draft.events.extend(rest.replace(",", " ").split())
        elif keyword == "logmode":
            try:
                draft.log_mode = LogMode(rest)
            except ValueError:
                raise ModelParseError(number, f"unknown log mode '{rest}'") from None
        elif keyword == "pred":
            _read_preds(draft, rest, number)
        elif keyword == "enum":
            enum = _ENUM_RE.match(rest)
            if not enum:
                raise ModelParseError(number, "expected 'enum NAME { value ... }'")
            name, values = enum.group(1), tuple(enum.group(2).replace(",", " ").split())
            if name in draft.enums:
                raise ModelParseError(number, f"duplicate enum '{name}'")
            if not values:
                raise ModelParseError(number, f"enum '{name}' has no values")
            draft.enums[name] = values
        elif keyword == "init":
            draft.inits.append(_Entry(number, "", rest[1:].strip() if rest.startswith(":") else rest))
        else:
            named = _NAMED_RE.match(rest)
            if not named:
                raise ModelParseError(number, f"expected '{keyword} NAME: ...'")
            entry = _Entry(number, named.group(1), named.group(2).strip())
            {
                "trans": draft.transitions,
                "rule": draft.rules,
                "target": draft.targets,
                "expect": draft.expects,
            }[keyword].append(entry)

    if not saw_content:
        raise ModelParseError(1, "empty model")
    if draft.kind is None:
        raise ModelParseError(1, "missing 'system' header")
    return draft


def _read_preds(draft: _Draft, rest: str, line: int) -> None:
    consumed = _PRED_RE.sub("", rest).replace(",", " ").strip()
    if consumed:
        raise ModelParseError(line, f"bad predicate declaration near '{consumed}'")
    for name, arity, types in _PRED_RE.findall(rest):
        if any(d.name == name for d in draft.preds):
            raise ModelParseError(line, f"duplicate predicate '{name}'")
        if types or arity == "":
            arg_types = tuple(t.strip() for t in types.split(",") if t.strip())
        else:
            arg_types = (ID_TYPE,) * int(arity)
        draft.preds.append(PredicateDecl(name, arg_types))
        draft.pred_lines[name] = line


# ---------------------------------------------------------------------------
# Petri nets and automata
# ---------------------------------------------------------------------------


def _parse_history(text: str, mode: LogMode, line: int) -> History:
    parts = text.split(None, 1)
    if not parts:
        return History.empty(mode)
    kind, events = parts[0], parts[1] if len(parts) > 1 else ""
    try:
        declared = LogMode(kind)
    except ValueError:
        raise ModelParseError(line, f"expected 'history word|bag ...', got '{kind}'") from None
    if declared is not mode:
        raise ModelParseError(line, f"{declared.value} history in a model that logs a {mode.value}")
    if mode is LogMode.WORD:
        return History.word(events.split())
    return History.bag_of(_parse_counts(events, line))


def _parse_hconfig(draft: _Draft, entry: _Entry) -> HConfig:
    marking: dict[str, int] = {}
    history = History.empty(draft.log_mode)
    place_word = "state" if draft.kind is ModelKind.AUTOMATON else "marking"
    for part in (p.strip() for p in entry.body.split(";")):
        if not part:
            continue
        head, _, tail = part.partition(" ")
        if head == place_word:
            marking = _parse_counts(tail, entry.line)
        elif head == "history":
            history = _parse_history(tail.strip(), draft.log_mode, entry.line)
        else:
            raise ModelParseError(entry.line, f"expected '{place_word}' or 'history', got '{head}'")
    return HConfig(from_counts(marking), history)


def _build_net(draft: _Draft) -> PetriNetH:
    declared = set(draft.places)
    transitions: list[Transition] = []
    for entry in draft.transitions:
        if any(t.name == entry.name for t in transitions):
            raise ModelParseError(entry.line, f"duplicate transition '{entry.name}'")
        if draft.kind is ModelKind.AUTOMATON:
            match = _AUTOMATON_TRANS_RE.match(entry.body)
            if not match:
                raise ModelParseError(entry.line, "expected 'trans NAME: SOURCE -> DEST [emit EVENT]'")
            pre, post = {match.group(1): 1}, {match.group(2): 1}
        else:
            match = _PETRI_TRANS_RE.match(entry.body)
            if not match:
                raise ModelParseError(entry.line, "expected 'trans NAME: pre ... -> post ... [emit EVENT]'")
            pre = _parse_counts(match.group(1), entry.line)
            post = _parse_counts(match.group(2), entry.line)
        for place in (*pre, *post):
            if place not in declared:
                raise ModelParseError(entry.line, f"undeclared place '{place}'")
        event = match.group(3) or entry.name
        if draft.events and event not in draft.events:
            raise ModelParseError(entry.line, f"undeclared event '{event}'")
        transitions.append(Transition(entry.name, from_counts(pre), from_counts(post), event))

    initial: dict[str, int] = {}
    if len(draft.inits) > 1:
        raise ModelParseError(draft.inits[1].line, "a net has exactly one initial marking")
    if draft.inits:
        initial = _parse_counts(draft.inits[0].body, draft.inits[0].line)
        for place in initial:
            if place not in declared:
                raise ModelParseError(draft.inits[0].line, f"undeclared place '{place}'")

    if draft.kind is ModelKind.AUTOMATON:
        if sum(initial.values()) != 1:
            line = draft.inits[0].line if draft.inits else 1
            raise ModelParseError(line, "an automaton starts in exactly one state")
        return automaton_net(
            draft.places,
            [(t.name, t.pre[0], t.post[0], t.event) for t in transitions],
            next(iter(initial)),
            draft.log_mode,
            draft.events,
        )
    return PetriNetH(
        places=tuple(draft.places),
        transitions=tuple(transitions),
        initial=from_counts(initial),
        log_mode=draft.log_mode,
        events=tuple(draft.events),
    )


# ---------------------------------------------------------------------------
# MSR
# ---------------------------------------------------------------------------


def _raw_atoms(text: str, line: int) -> list[RawAtom]:
    return [_parse_raw_atom(item, line) for item in _split_top(text, line)]


def _build_rule(draft: _Draft, entry: _Entry) -> RawRule:
    match = _RULE_RE.match(entry.body)
    if not match:
        raise ModelParseError(entry.line, "expected 'rule NAME: LHS -> RHS [where CONSTRAINTS]'")
    lhs, counter = _name_anonymous(_raw_atoms(match.group(1), entry.line))
    rhs, _ = _name_anonymous(_raw_atoms(match.group(2), entry.line), counter)
    equalities, gaps = _parse_constraint(match.group(3) or "", entry.line)
    for atom in (*lhs, *rhs):
        for arg in atom.args:
            if _INT_RE.match(arg):
                raise ModelParseError(entry.line, f"identifier constants are not allowed in rules ('{atom.predicate}')")
    mentioned = {a for atom in (*lhs, *rhs) for a in atom.args}
    for a, b in equalities:
        for v in (a, b):
            if v not in mentioned:
                raise ModelParseError(entry.line, f"constraint variable '{v}' does not occur in the rule")
    for x, y, _ in gaps:
        for v in (x, y):
            if v not in mentioned:
                raise ModelParseError(entry.line, f"constraint variable '{v}' does not occur in the rule")
    constraint = IdConstraint.build((), equalities, gaps)
    if not constraint.satisfiable:
        raise ModelParseError(entry.line, "rule constraint is unsatisfiable")
    return RawRule(entry.name, tuple(lhs), tuple(rhs), constraint, entry.line)


def _fold(draft: _Draft, atom: RawAtom, line: int) -> tuple[str, Optional[str]]:
    decl = next((d for d in draft.preds if d.name == atom.predicate), None)
    if decl is None:
        raise ModelParseError(line, f"undeclared predicate '{atom.predicate}'")
    try:
        return fold_atom(atom, decl, draft.enums)
    except ModelError as exc:
        raise ModelParseError(line, str(exc)) from None


def _build_init(draft: _Draft, entry: _Entry) -> Configuration:
    atoms: list[GroundAtom] = []
    for raw in _raw_atoms(entry.body, entry.line):
        name, arg = _fold(draft, raw, entry.line)
        if arg is None:
            atoms.append(GroundAtom(name))
            continue
        if not _INT_RE.match(arg):
            raise ModelParseError(entry.line, f"initial identifiers must be integers, got '{arg}'")
        atoms.append(GroundAtom(name, int(arg)))
    return configuration(atoms)


def _build_msr_target(draft: _Draft, entry: _Entry) -> ConstrainedConfig:
    match = _MSR_TARGET_RE.match(entry.body)
    if not match:
        raise ModelParseError(entry.line, "expected 'target NAME: [ATOMS] : {CONSTRAINTS}'")
    raw, _ = _name_anonymous(_raw_atoms(match.group(1), entry.line))
    atoms: list[Atom] = []
    for r in raw:
        name, arg = _fold(draft, r, entry.line)
        if arg is not None and _INT_RE.match(arg):
            raise ModelParseError(entry.line, "targets use variables, not identifier constants")
        atoms.append(Atom(name, arg))
    equalities, gaps = _parse_constraint(match.group(2) or "", entry.line)
    mentioned = {a.var for a in atoms}
    for v in {v for pair in equalities for v in pair} | {v for x, y, _ in gaps for v in (x, y)}:
        if v not in mentioned:
            raise ModelParseError(entry.line, f"constraint variable '{v}' does not occur in the target")
    config = ConstrainedConfig.build(atoms, IdConstraint.build((), equalities, gaps))
    if config is None:
        raise ModelParseError(entry.line, "target constraint is unsatisfiable")
    return config


def _build_msr(draft: _Draft) -> MsrSystem:
    signature: list[tuple[str, int]] = []
    for decl in draft.preds:
        try:
            signature.extend(monadic_signature([decl], draft.enums))
        except ModelError as exc:
            raise ModelParseError(draft.pred_lines[decl.name], str(exc)) from None
    rules = []
    for entry in draft.rules:
        raw = _build_rule(draft, entry)
        for atom in (*raw.lhs, *raw.rhs):
            if not any(d.name == atom.predicate for d in draft.preds):
                raise ModelParseError(entry.line, f"undeclared predicate '{atom.predicate}'")
        try:
            rules.extend(monadize([raw], draft.preds, draft.enums))
        except ModelError as exc:
            raise ModelParseError(entry.line, str(exc)) from None
    names = [r.name for r in rules]
    duplicates = sorted({n for n in names if names.count(n) > 1})
    if duplicates:
        raise ModelParseError(draft.rules[-1].line, f"duplicate rule name(s): {', '.join(duplicates)}")
    initials = tuple(_build_init(draft, e) for e in draft.inits)
    return MsrSystem(tuple(signature), tuple(rules), initials)


# ---------------------------------------------------------------------------
# Entry points
# ---------------------------------------------------------------------------


def parse_model(text: str) -> ModelFile:
    draft = _read(text)
    targets: list[tuple[str, Target]] = []
    net: Optional[PetriNetH] = None
    msr: Optional[MsrSystem] = None

    if draft.kind is ModelKind.MSR:
        msr = _build_msr(draft)
        for entry in draft.targets:
            targets.append((entry.name, _build_msr_target(draft, entry)))
    else:
        net = _build_net(draft)
        for entry in draft.targets:
            target = _parse_hconfig(draft, entry)
            try:
                net.check_config(target)
            except ModelError as exc:
                raise ModelParseError(entry.line, str(exc)) from None
            targets.append((entry.name, target))

    seen: set[str] = set()
    for entry in draft.targets:
        if entry.name in seen:
            raise ModelParseError(entry.line, f"duplicate target '{entry.name}'")
        seen.add(entry.name)

    expectations: list[tuple[str, bool]] = []
    for entry in draft.expects:
        if entry.name not in seen:
            raise ModelParseError(entry.line, f"expectation for unknown target '{entry.name}'")
        if entry.body not in ("coverable", "safe"):
            raise ModelParseError(entry.line, "expected 'coverable' or 'safe'")
        expectations.append((entry.name, entry.body == "coverable"))

    model = ModelFile(draft.kind, net, msr, tuple(targets), tuple(expectations))
    logger.debug("Parsed %s model with %d target(s)", draft.kind.value, len(targets))
    return model


def _render_counts(marking) -> str:
    return ", ".join(
        symbol if n == 1 else f"{symbol}:{n}" for symbol, n in sorted(counts(marking).items())
    )


def _render_history(history: History) -> str:
    body = history.render()
    return f"history {history.mode.value}" + (f" {body}" if body else "")


def _render_rule_atom(atom: Atom) -> str:
    if atom.var is not None and atom.var.startswith(ANONYMOUS):
        return f"{atom.predicate}({ANONYMOUS})"
    return atom.render()


def render_model(model: ModelFile) -> str:
    lines = [f"system {model.kind.value}"]
    if model.kind is ModelKind.MSR:
        system = model.msr
        lines.append("pred " + " ".join(f"{name}/{arity}" for name, arity in system.predicates))
        for rule in system.rules:
            lhs = ", ".join(_render_rule_atom(a) for a in rule.lhs)
            rhs = ", ".join(_render_rule_atom(a) for a in rule.rhs)
            where = "" if rule.constraint.is_true else f" where {rule.constraint.render()[1:-1]}"
            lines.append(f"rule {rule.name}: {lhs} -> {rhs}{where}".replace(":  ->", ": ->"))
        for initial in system.initials:
            lines.append("init: " + ", ".join(a.render() for a in initial))
        for name, target in model.targets:
            lines.append(f"target {name}: {target.render()}")
    else:
        net = model.net
        automaton = model.kind is ModelKind.AUTOMATON
        lines.append(("states " if automaton else "places ") + " ".join(net.places))
        if net.events:
            lines.append("events " + " ".join(net.events))
        lines.append(f"logmode {net.log_mode.value}")
        for t in net.transitions:
            if automaton:
                lines.append(f"trans {t.name}: {t.pre[0]} -> {t.post[0]} emit {t.event}")
            else:
                lines.append(
                    f"trans {t.name}: pre {_render_counts(t.pre)} -> post {_render_counts(t.post)} emit {t.event}"
                )
        lines.append(f"init: {_render_counts(net.initial)}")
        place_word = "state" if automaton else "marking"
        for name, target in model.targets:
            lines.append(
                f"target {name}: {place_word} {_render_counts(target.marking)} ; {_render_history(target.history)}"
            )
    for name, coverable in model.expectations:
        lines.append(f"expect {name}: {'coverable' if coverable else 'safe'}")
    return "\n".join(lines) + "\n"
