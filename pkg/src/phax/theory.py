"""Core knowledge-base types: terms, literals, rules, premises, theories.

A theory bundles premises (axiom or ordinary, with confidence and jargon
metadata), strict and defeasible rules, and a strict partial preference
order over rule ids and ordinary-premise ids. Theories are value objects:
every transformation returns a new theory.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

AXIOM = "axiom"
ORDINARY = "ordinary"
STRICT = "strict"
DEFEASIBLE = "defeasible"

#: Audience bands a premise may carry display text for.
BANDS = ("lay", "decision_maker", "professional")


def is_identifier(name: str) -> bool:
    return bool(_IDENT_RE.match(name))


@dataclass(frozen=True, order=True)
class Term:
    """A flat term: a constant (lowercase initial) or variable (uppercase)."""

    name: str

    @property
    def is_variable(self) -> bool:
        return self.name[:1].isupper()

    def __str__(self) -> str:
        return self.name


def var(name: str) -> Term:
    t = Term(name)
    if not t.is_variable:
        raise ValueError(f"variable names start uppercase: {name!r}")
    return t


def const(name: str) -> Term:
    t = Term(name)
    if t.is_variable:
        raise ValueError(f"constant names start lowercase: {name!r}")
    return t


@dataclass(frozen=True, order=True)
class Literal:
    """A possibly-negated atom over flat terms.

    Negation is classical contrary: ``l.negate().negate() == l``.
    """

    predicate: str
    args: tuple[Term, ...] = ()
    positive: bool = True

    def negate(self) -> Literal:
        return Literal(self.predicate, self.args, not self.positive)

    @property
    def is_ground(self) -> bool:
        return not any(a.is_variable for a in self.args)

    def variables(self) -> set[str]:
        return {a.name for a in self.args if a.is_variable}

    def substitute(self, binding: dict[str, str]) -> Literal:
        args = tuple(
            Term(binding.get(a.name, a.name)) if a.is_variable else a
            for a in self.args
        )
        return Literal(self.predicate, args, self.positive)

    def __str__(self) -> str:
        sign = "" if self.positive else "~"
        if not self.args:
            return f"{sign}{self.predicate}"
        inner = ", ".join(a.name for a in self.args)
        return f"{sign}{self.predicate}({inner})"


def atom(predicate: str, *args: str, positive: bool = True) -> Literal:
    """Convenience literal constructor from bare name strings."""
    return Literal(predicate, tuple(Term(a) for a in args), positive)


#: Predicate reserved for rule applicability; ``~applicable(r)`` undercuts r.
APPLICABLE = "applicable"


def applicability_atom(rule_id: str, positive: bool = True) -> Literal:
    return Literal(APPLICABLE, (Term(rule_id),), positive)


@dataclass
class Rule:
    """A strict (``->``) or defeasible (``=>``) inference rule.

    Strict rules carry weight exactly 1.0; only defeasible rules may have
    an empty body (presumptions).
    """

    id: str
    kind: str  # STRICT or DEFEASIBLE
    body: tuple[Literal, ...]
    head: Literal
    weight: float = 1.0
    scheme_tag: str | None = None

    def __post_init__(self):
        self.body = tuple(self.body)

    @property
    def is_defeasible(self) -> bool:
        return self.kind == DEFEASIBLE

    def variables(self) -> set[str]:
        names = self.head.variables()
        for lit in self.body:
            names |= lit.variables()
        return names

    @property
    def is_ground(self) -> bool:
        return not self.variables()

    def __str__(self) -> str:
        arrow = "->" if self.kind == STRICT else "=>"
        body = ", ".join(str(b) for b in self.body)
        return f"{self.id}: {body} {arrow} {self.head}".replace(":  ", ": ")


@dataclass
class Premise:
    """An asserted statement: an axiom (certain) or ordinary premise.

    ``display_text`` maps audience bands (see BANDS) to ready-made
    sentences used by the renderer in place of generic templates.
    """

    id: str
    literal: Literal
    kind: str = ORDINARY
    confidence: float = 1.0
    jargon: float = 0.0
    source: str = ""
    display_text: dict[str, str] = field(default_factory=dict)

    @property
    def is_axiom(self) -> bool:
        return self.kind == AXIOM


@dataclass
class Diagnostic:
    """A validation or parse finding, renderable as file:line:col: sev: msg."""

    message: str
    line: int = 0
    col: int = 0
    severity: str = "error"

    def format(self, filename: str = "<theory>") -> str:
        return f"{filename}:{self.line}:{self.col}: {self.severity}: {self.message}"


class Preferences:
    """Strict partial order over rule and ordinary-premise ids.

    Built from base pairs ``(superior, inferior)``; queries go through the
    transitive closure.
    """

    def __init__(self, pairs):
        self.pairs = frozenset((hi, lo) for hi, lo in pairs)
        self._above: dict[str, set[str]] = {}
        for hi, lo in self.pairs:
            self._above.setdefault(lo, set()).add(hi)
        self._closure: dict[str, frozenset[str]] | None = None

    def _all_above(self, item: str) -> frozenset[str]:
        if self._closure is None:
            self._closure = {}
        cached = self._closure.get(item)
        if cached is not None:
            return cached
        seen: set[str] = set()
        stack = list(self._above.get(item, ()))
        while stack:
            cur = stack.pop()
            if cur in seen:
                continue
            seen.add(cur)
            stack.extend(self._above.get(cur, ()))
        result = frozenset(seen)
        self._closure[item] = result
        return result

    def strictly_below(self, a: str, b: str) -> bool:
        """True iff a < b in the transitive closure."""
        return b in self._all_above(a)

    def cycle_members(self) -> set[str]:
        """Ids on at least one preference cycle (empty iff acyclic)."""
        return {x for x in self._above if x in self._all_above(x)}


@dataclass
class Theory:
    """A defeasible knowledge base. Premises and rules are kept sorted by id."""

    name: str = "unnamed"
    constants: frozenset[str] = frozenset()
    premises: tuple[Premise, ...] = ()
    rules: tuple[Rule, ...] = ()
    preferences: frozenset[tuple[str, str]] = frozenset()

    def __post_init__(self):
        self.constants = frozenset(self.constants) | self._collected_constants()
        self.premises = tuple(sorted(self.premises, key=lambda p: p.id))
        self.rules = tuple(sorted(self.rules, key=lambda r: r.id))
        self.preferences = frozenset(tuple(p) for p in self.preferences)

    def _collected_constants(self) -> set[str]:
        names: set[str] = set()
        for p in self.premises:
            names |= {a.name for a in p.literal.args if not a.is_variable}
        for r in self.rules:
            for lit in (*r.body, r.head):
                names |= {a.name for a in lit.args if not a.is_variable}
        return names

    def premise(self, pid: str) -> Premise:
        for p in self.premises:
            if p.id == pid:
                return p
        raise KeyError(pid)

    def rule(self, rid: str) -> Rule:
        for r in self.rules:
            if r.id == rid:
                return r
        raise KeyError(rid)

    def has_id(self, ident: str) -> bool:
        return any(p.id == ident for p in self.premises) or any(
            r.id == ident for r in self.rules
        )

    def preference_order(self) -> Preferences:
        return Preferences(self.preferences)

    def replace(self, **changes) -> Theory:
        fields = {
            "name": self.name,
            "constants": self.constants,
            "premises": self.premises,
            "rules": self.rules,
            "preferences": self.preferences,
        }
        fields.update(changes)
        return Theory(**fields)

    def without_premises(self, ids) -> Theory:
        drop = set(ids)
        keep_ids = {p.id for p in self.premises if p.id not in drop} | {
            r.id for r in self.rules
        }
        prefs = {(hi, lo) for hi, lo in self.preferences if hi in keep_ids and lo in keep_ids}
        return self.replace(
            premises=tuple(p for p in self.premises if p.id not in drop),
            preferences=frozenset(prefs),
        )


def validate_theory(theory: Theory) -> list[Diagnostic]:
    """Check every structural invariant; an empty list means the theory is valid."""
    diags: list[Diagnostic] = []
    seen_ids: dict[str, str] = {}
    arity: dict[str, int] = {}

    def check_arity(lit: Literal, owner: str):
        known = arity.setdefault(lit.predicate, len(lit.args))
        if known != len(lit.args):
            diags.append(
                Diagnostic(
                    f"arity mismatch for predicate '{lit.predicate}' in {owner}: "
                    f"expected {known}, got {len(lit.args)}"
                )
            )

    def check_ident(name: str, what: str):
        if not is_identifier(name):
            diags.append(Diagnostic(f"invalid {what} '{name}'"))

    for p in theory.premises:
        check_ident(p.id, "premise id")
        if p.id in seen_ids:
            diags.append(Diagnostic(f"duplicate id '{p.id}'"))
        seen_ids[p.id] = "premise"
        check_arity(p.literal, f"premise {p.id}")
        if not p.literal.is_ground:
            diags.append(Diagnostic(f"premise {p.id} must be variable-free"))
        if p.kind not in (AXIOM, ORDINARY):
            diags.append(Diagnostic(f"premise {p.id} has unknown kind '{p.kind}'"))
        if p.is_axiom and p.confidence != 1.0:
            diags.append(Diagnostic(f"axiom confidence must be 1.0 (premise {p.id})"))
        if not 0.0 <= p.confidence <= 1.0:
            diags.append(Diagnostic(f"confidence out of [0,1] (premise {p.id})"))
        if not 0.0 <= p.jargon <= 1.0:
            diags.append(Diagnostic(f"jargon out of [0,1] (premise {p.id})"))
        for band in p.display_text:
            if band not in BANDS:
                diags.append(Diagnostic(f"unknown display band '{band}' (premise {p.id})"))

    for r in theory.rules:
        check_ident(r.id, "rule id")
        if r.id in seen_ids:
            diags.append(Diagnostic(f"duplicate id '{r.id}'"))
        seen_ids[r.id] = "rule"
        if r.kind not in (STRICT, DEFEASIBLE):
            diags.append(Diagnostic(f"rule {r.id} has unknown kind '{r.kind}'"))
        if r.kind == STRICT and r.weight != 1.0:
            diags.append(Diagnostic(f"strict weight must be 1.0 (rule {r.id})"))
        if r.kind == STRICT and not r.body:
            diags.append(Diagnostic(f"strict rule {r.id} may not have an empty body"))
        if not 0.0 <= r.weight <= 1.0:
            diags.append(Diagnostic(f"weight out of [0,1] (rule {r.id})"))
        check_arity(r.head, f"rule {r.id}")
        for lit in r.body:
            check_arity(lit, f"rule {r.id}")

    known = set(seen_ids)
    axioms = {p.id for p in theory.premises if p.is_axiom}
    for hi, lo in sorted(theory.preferences):
        for ident in (hi, lo):
            if ident not in known:
                diags.append(Diagnostic(f"preference over unknown id '{ident}'"))
            elif ident in axioms:
                diags.append(Diagnostic(f"preference over axiom premise '{ident}'"))
        if hi == lo:
            diags.append(Diagnostic(f"preference '{hi} > {hi}' is reflexive"))

    cycle = theory.preference_order().cycle_members()
    if cycle:
        members = ",".join(sorted(cycle))
        diags.append(Diagnostic(f"preference cycle {{{members}}}"))

    for name in sorted(theory.constants):
        if not is_identifier(name) or Term(name).is_variable:
            diags.append(Diagnostic(f"invalid constant '{name}'"))

    return diags


def _quote(text: str) -> str:
    escaped = (
        text.replace("\\", "\\\\")
        .replace('"', '\\"')
        .replace("\n", "\\n")
        .replace("\t", "\\t")
    )
    return f'"{escaped}"'


def _format_number(x: float) -> str:
    return repr(float(x))


def _premise_attrs(p: Premise) -> str:
    parts = []
    if not p.is_axiom and p.confidence != 1.0:
        parts.append(f"confidence={_format_number(p.confidence)}")
    if p.jargon != 0.0:
        parts.append(f"jargon={_format_number(p.jargon)}")
    if p.source:
        parts.append(f"source={_quote(p.source)}")
    for band in BANDS:
        if band in p.display_text:
            parts.append(f"text_{band}={_quote(p.display_text[band])}")
    return f" [{', '.join(parts)}]" if parts else ""


def _rule_attrs(r: Rule) -> str:
    parts = []
    if r.kind == DEFEASIBLE and r.weight != 1.0:
        parts.append(f"weight={_format_number(r.weight)}")
    if r.scheme_tag:
        parts.append(f"scheme={r.scheme_tag}")
    return f" [{', '.join(parts)}]" if parts else ""


def serialize_theory(theory: Theory) -> str:
    """Canonical textual form: header, constants, premises, rules, preferences.

    Blocks are sorted by id so that serialization is a normal form:
    ``parse_theory(serialize_theory(t)).theory == t``.
    """
    lines = [f"theory {theory.name}."]
    declared_only = theory.constants - theory._collected_constants()
    if declared_only:
        lines.append(f"const {', '.join(sorted(declared_only))}.")
    for p in theory.premises:
        keyword = "axiom" if p.is_axiom else "premise"
        lines.append(f"{keyword} {p.id}: {p.literal}{_premise_attrs(p)}.")
    for r in theory.rules:
        arrow = "->" if r.kind == STRICT else "=>"
        body = ", ".join(str(b) for b in r.body)
        lhs = f"{body} " if body else ""
        lines.append(f"{r.kind} {r.id}: {lhs}{arrow} {r.head}{_rule_attrs(r)}.")
    for hi, lo in sorted(theory.preferences):
        lines.append(f"pref {hi} > {lo}.")
    return "\n".join(lines) + "\n"


def merge_theories(a: Theory, b: Theory, name: str | None = None) -> Theory:
    """Union of two theories; colliding ids must denote identical elements."""
    premises = {p.id: p for p in a.premises}
    for p in b.premises:
        if p.id in premises and premises[p.id] != p:
            raise ValueError(f"conflicting premise id '{p.id}' in merge")
        premises[p.id] = p
    rules = {r.id: r for r in a.rules}
    for r in b.rules:
        if r.id in rules and rules[r.id] != r:
            raise ValueError(f"conflicting rule id '{r.id}' in merge")
        rules[r.id] = r
    return Theory(
        name=name or a.name,
        constants=a.constants | b.constants,
        premises=tuple(premises.values()),
        rules=tuple(rules.values()),
        preferences=a.preferences | b.preferences,
    )
