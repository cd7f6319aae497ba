"""Variable elimination: expand rules with variables into ground instances.

Grounding is Datalog-style forward chaining over the atoms that can
actually occur: a substitution is emitted only when every body literal,
after substitution, matches a premise atom or the head atom of an
already-emitted instance (polarity is ignored for this reachability
check; argument construction applies the exact-polarity filter later).
Variables that occur only in the head range over all declared constants.

Rules that are already ground pass through untouched, so grounding is the
identity on ground theories.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .errors import GroundingLimitError, TheoryValidationError
from .theory import Diagnostic, Literal, Rule, Theory, validate_theory

DEFAULT_MAX_INSTANCES = 100_000


@dataclass
class GroundTheory(Theory):
    """A theory whose rules are all variable-free.

    ``rule_parents`` maps each rule id to the rule it was instantiated
    from (identity for rules that were ground in the input); undercut
    matching accepts either name.
    """

    rule_parents: dict[str, str] = field(default_factory=dict)

    def parent_rule_id(self, rule_id: str) -> str:
        return self.rule_parents.get(rule_id, rule_id)


def _atom_key(lit: Literal) -> tuple[str, tuple[str, ...]]:
    return lit.predicate, tuple(a.name for a in lit.args)


def _instance_id(rule_id: str, binding: dict[str, str]) -> str:
    suffix = "__".join(f"{v}_{binding[v]}" for v in sorted(binding))
    return f"{rule_id}__{suffix}"


def _match_literal(
    lit: Literal,
    known_by_pred: dict[str, list[tuple[str, ...]]],
    binding: dict[str, str],
):
    """Yield extended bindings unifying lit against known atoms."""
    for args in known_by_pred.get(lit.predicate, ()):
        if len(args) != len(lit.args):
            continue
        extended = dict(binding)
        ok = True
        for term, name in zip(lit.args, args):
            if term.is_variable:
                bound = extended.get(term.name)
                if bound is None:
                    extended[term.name] = name
                elif bound != name:
                    ok = False
                    break
            elif term.name != name:
                ok = False
                break
        if ok:
            yield extended


def _rule_instances(rule: Rule, known_by_pred, constants: list[str]):
    """All bindings whose substituted body lies within the known atoms."""
    bindings = [dict()]
    for lit in rule.body:
        bindings = [
            ext for b in bindings for ext in _match_literal(lit, known_by_pred, b)
        ]
        if not bindings:
            return
    for b in bindings:
        free = sorted(rule.variables() - set(b))
        if not free:
            yield b
            continue
        for combo in product(constants, repeat=len(free)):
            full = dict(b)
            full.update(zip(free, combo))
            yield full


def ground_theory(
    theory: Theory, max_instances: int = DEFAULT_MAX_INSTANCES
) -> GroundTheory:
    """Replace every rule containing variables by its ground instances.

    Raises GroundingLimitError when the instance count would exceed
    ``max_instances`` and TheoryValidationError when the input is invalid.
    """
    diags = validate_theory(theory)
    if diags:
        raise TheoryValidationError(diags)

    constants = sorted(theory.constants)
    known: set[tuple[str, tuple[str, ...]]] = set()
    known_by_pred: dict[str, list[tuple[str, ...]]] = {}

    def add_known(lit: Literal):
        key = _atom_key(lit)
        if key not in known:
            known.add(key)
            known_by_pred.setdefault(key[0], []).append(key[1])

    for p in theory.premises:
        add_known(p.literal)

    ground_rules: list[Rule] = []
    parents: dict[str, str] = {}
    var_rules: list[Rule] = []

    for r in theory.rules:
        if r.is_ground:
            ground_rules.append(r)
            parents[r.id] = r.id
            add_known(r.head)
        else:
            var_rules.append(r)

    instances: dict[str, Rule] = {}
    emitted: set[tuple[str, tuple[tuple[str, str], ...]]] = set()
    changed = True
    while changed:
        changed = False
        for r in var_rules:
            for binding in list(_rule_instances(r, known_by_pred, constants)):
                key = (r.id, tuple(sorted(binding.items())))
                if key in emitted:
                    continue
                emitted.add(key)
                gid = _instance_id(r.id, binding)
                inst = Rule(
                    id=gid,
                    kind=r.kind,
                    body=tuple(lit.substitute(binding) for lit in r.body),
                    head=r.head.substitute(binding),
                    weight=r.weight,
                    scheme_tag=r.scheme_tag,
                )
                if len(ground_rules) + len(instances) + 1 > max_instances:
                    raise GroundingLimitError(
                        f"grounding exceeds {max_instances} rule instances"
                    )
                instances[gid] = inst
                parents[gid] = r.id
                add_known(inst.head)
                changed = True

    all_rules = ground_rules + list(instances.values())
    seen: set[str] = set()
    for r in all_rules:
        if r.id in seen:
            raise TheoryValidationError(
                [Diagnostic(f"ground instance id collision '{r.id}'")]
            )
        seen.add(r.id)

    instances_of: dict[str, list[str]] = {}
    for gid, parent in parents.items():
        instances_of.setdefault(parent, []).append(gid)

    premise_ids = {p.id for p in theory.premises}
    prefs: set[tuple[str, str]] = set()
    for hi, lo in theory.preferences:
        his = instances_of.get(hi, [hi] if hi in premise_ids else [])
        los = instances_of.get(lo, [lo] if lo in premise_ids else [])
        for h in his:
            for l in los:
                prefs.add((h, l))

    return GroundTheory(
        name=theory.name,
        constants=theory.constants,
        premises=theory.premises,
        rules=tuple(all_rules),
        preferences=frozenset(prefs),
        rule_parents=parents,
    )
