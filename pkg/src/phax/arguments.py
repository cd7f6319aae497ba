"""Structured arguments over a ground theory, and their attack/defeat graphs.

Arguments are built as the closure of rule application over premise
arguments, with no rule instance repeated along any root-to-leaf path.
Attacks come in three kinds: rebut (contrary conclusion at a defeasibly
derived subconclusion), undermine (contrary of an ordinary premise), and
undercut (concluding ``~applicable(r)`` for a defeasible rule r in use).
Preferences turn attacks into defeats under last-link elitist ordering;
undercuts always succeed.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from itertools import product

from .af import ArgumentationFramework, GROUNDED, SKEPTICAL, enumerate_labellings
from .errors import ArgumentLimitError, UnknownTargetError
from .grounding import GroundTheory
from .theory import APPLICABLE, Literal, Preferences

DEFAULT_MAX_ARGUMENTS = 50_000

REBUT = "rebut"
UNDERCUT = "undercut"
UNDERMINE = "undermine"


@dataclass(frozen=True)
class Argument:
    """An immutable structured argument; identity is a structural hash."""

    id: str
    conclusion: Literal
    top_rule: str | None
    subarguments: tuple[str, ...]
    premise_ids: frozenset[str]
    ordinary_premise_ids: frozenset[str]
    defeasible_rules: frozenset[str]
    last_defeasible_rules: frozenset[str]
    rules_used: frozenset[str]
    sub_closure: frozenset[str]  # all subargument ids, including self
    weight: float
    scheme_tag: str | None = None
    premise_id: str | None = None

    @property
    def is_premise_argument(self) -> bool:
        return self.top_rule is None


def _premise_argument(premise) -> Argument:
    digest = hashlib.sha1(
        f"P|{premise.id}|{premise.literal}".encode()
    ).hexdigest()[:16]
    arg_id = f"a{digest}"
    ordinary = frozenset() if premise.is_axiom else frozenset({premise.id})
    return Argument(
        id=arg_id,
        conclusion=premise.literal,
        top_rule=None,
        subarguments=(),
        premise_ids=frozenset({premise.id}),
        ordinary_premise_ids=ordinary,
        defeasible_rules=frozenset(),
        last_defeasible_rules=frozenset(),
        rules_used=frozenset(),
        sub_closure=frozenset({arg_id}),
        weight=premise.confidence if not premise.is_axiom else 1.0,
        premise_id=premise.id,
    )


def _rule_argument(rule, subargs: tuple[Argument, ...]) -> Argument:
    digest = hashlib.sha1(
        f"R|{rule.id}|{rule.head}|{','.join(a.id for a in subargs)}".encode()
    ).hexdigest()[:16]
    arg_id = f"a{digest}"
    premise_ids = frozenset().union(*(a.premise_ids for a in subargs)) if subargs else frozenset()
    ordinary = (
        frozenset().union(*(a.ordinary_premise_ids for a in subargs))
        if subargs
        else frozenset()
    )
    defeasible = (
        frozenset().union(*(a.defeasible_rules for a in subargs))
        if subargs
        else frozenset()
    )
    rules_used = (
        frozenset().union(*(a.rules_used for a in subargs)) if subargs else frozenset()
    )
    rules_used = rules_used | {rule.id}
    if rule.is_defeasible:
        defeasible = defeasible | {rule.id}
        last = frozenset({rule.id})
    else:
        last = (
            frozenset().union(*(a.last_defeasible_rules for a in subargs))
            if subargs
            else frozenset()
        )
    weights = [a.weight for a in subargs]
    if rule.is_defeasible:
        weights.append(rule.weight)
    closure = frozenset({arg_id}).union(*(a.sub_closure for a in subargs)) if subargs else frozenset({arg_id})
    return Argument(
        id=arg_id,
        conclusion=rule.head,
        top_rule=rule.id,
        subarguments=tuple(a.id for a in subargs),
        premise_ids=premise_ids,
        ordinary_premise_ids=ordinary,
        defeasible_rules=defeasible,
        last_defeasible_rules=last,
        rules_used=rules_used,
        sub_closure=closure,
        weight=min(weights) if weights else 1.0,
        scheme_tag=rule.scheme_tag,
    )


def construct_arguments(
    gt: GroundTheory, max_arguments: int = DEFAULT_MAX_ARGUMENTS
) -> dict[str, Argument]:
    """Closure of argument construction, deduplicated by structural id."""
    args: dict[str, Argument] = {}
    by_conclusion: dict[Literal, list[Argument]] = {}

    def add(arg: Argument) -> bool:
        if arg.id in args:
            return False
        if len(args) + 1 > max_arguments:
            raise ArgumentLimitError(
                f"argument construction exceeds {max_arguments} arguments"
            )
        args[arg.id] = arg
        by_conclusion.setdefault(arg.conclusion, []).append(arg)
        return True

    for premise in gt.premises:
        add(_premise_argument(premise))

    changed = True
    while changed:
        changed = False
        for rule in gt.rules:
            pools = [by_conclusion.get(lit, []) for lit in rule.body]
            if any(not pool for pool in pools):
                continue
            for combo in product(*[list(pool) for pool in pools]):
                if any(rule.id in sub.rules_used for sub in combo):
                    continue
                if add(_rule_argument(rule, combo)):
                    changed = True
    return args


def argument_weight(argument: Argument, gt: GroundTheory) -> float:
    """Min over ordinary-premise confidences and defeasible-rule weights."""
    values = [gt.premise(pid).confidence for pid in argument.ordinary_premise_ids]
    values += [gt.rule(rid).weight for rid in argument.defeasible_rules]
    return min(values) if values else 1.0


@dataclass(frozen=True)
class Attack:
    attacker: str
    attacked: str
    kind: str  # REBUT, UNDERCUT, or UNDERMINE
    target: str  # subargument of `attacked` where the attack lands


def compute_attacks(
    args: dict[str, Argument], gt: GroundTheory
) -> tuple[Attack, ...]:
    """All rebut, undermine, and undercut attacks among the arguments."""
    by_conclusion: dict[Literal, list[Argument]] = {}
    containers: dict[str, set[str]] = {}
    defeasible_top: dict[str, list[Argument]] = {}
    rules = {r.id: r for r in gt.rules}

    for arg in args.values():
        by_conclusion.setdefault(arg.conclusion, []).append(arg)
        for sub in arg.sub_closure:
            containers.setdefault(sub, set()).add(arg.id)
        if arg.top_rule is not None and rules[arg.top_rule].is_defeasible:
            defeasible_top.setdefault(arg.top_rule, []).append(arg)

    attacks: set[Attack] = set()

    def emit(attacker: Argument, target: Argument, kind: str):
        for container in containers[target.id]:
            attacks.add(Attack(attacker.id, container, kind, target.id))

    for attacker in args.values():
        contrary = attacker.conclusion.negate()
        for target in by_conclusion.get(contrary, []):
            if target.top_rule is not None and rules[target.top_rule].is_defeasible:
                emit(attacker, target, REBUT)
            if target.is_premise_argument and target.ordinary_premise_ids:
                emit(attacker, target, UNDERMINE)
        lit = attacker.conclusion
        if lit.predicate == APPLICABLE and not lit.positive and len(lit.args) == 1:
            named = lit.args[0].name
            for rid, targets in defeasible_top.items():
                if rid == named or gt.parent_rule_id(rid) == named:
                    for target in targets:
                        emit(attacker, target, UNDERCUT)

    return tuple(
        sorted(attacks, key=lambda a: (a.attacker, a.attacked, a.kind, a.target))
    )


def _elitist_less(first: frozenset[str], second: frozenset[str], prefs: Preferences) -> bool:
    """Set ordering: some element of `first` is strictly below all of `second`."""
    if not first:
        return False
    return any(
        all(prefs.strictly_below(s, t) for t in second) for s in first
    )


@dataclass
class DefeatGraph:
    """Arguments plus the successful attacks between them."""

    arguments: dict[str, Argument]
    attacks: tuple[Attack, ...]
    defeats: frozenset[tuple[str, str]]

    def defeaters_of(self, arg_id: str) -> tuple[str, ...]:
        return tuple(sorted(a for a, b in self.defeats if b == arg_id))


def resolve_defeats(
    attacks: tuple[Attack, ...],
    args: dict[str, Argument],
    preferences: Preferences,
) -> DefeatGraph:
    """Undercuts always defeat; rebuts and undermines defeat unless the
    attacker is strictly less preferred than the targeted subargument
    (last-link elitist: rule sets for rebuts, ordinary premises for
    undermines)."""
    defeats: set[tuple[str, str]] = set()
    for attack in attacks:
        attacker = args[attack.attacker]
        target = args[attack.target]
        if attack.kind == UNDERCUT:
            succeeds = True
        elif attack.kind == REBUT:
            succeeds = not _elitist_less(
                attacker.last_defeasible_rules,
                target.last_defeasible_rules,
                preferences,
            )
        else:  # UNDERMINE
            succeeds = not _elitist_less(
                attacker.ordinary_premise_ids,
                target.ordinary_premise_ids,
                preferences,
            )
        if succeeds:
            defeats.add((attack.attacker, attack.attacked))
    return DefeatGraph(arguments=args, attacks=attacks, defeats=frozenset(defeats))


def project_af(dg: DefeatGraph) -> tuple[ArgumentationFramework, dict[str, Argument]]:
    """Abstract view: argument ids as nodes, defeats as attacks."""
    af = ArgumentationFramework(
        args=frozenset(dg.arguments), attacks=frozenset(dg.defeats)
    )
    return af, dict(dg.arguments)


def argument_labels(args: dict[str, Argument]) -> dict[str, str]:
    """Human-readable labels: premise id or top rule id, '#k' on collisions."""
    base = {
        arg.id: (arg.premise_id if arg.is_premise_argument else arg.top_rule) or arg.id
        for arg in args.values()
    }
    labels: dict[str, str] = {}
    grouped: dict[str, list[str]] = {}
    for arg_id in sorted(args, key=lambda i: (base[i], i)):
        grouped.setdefault(base[arg_id], []).append(arg_id)
    for name, members in grouped.items():
        for k, arg_id in enumerate(members):
            labels[arg_id] = name if k == 0 else f"{name}#{k + 1}"
    return labels


def literal_acceptance(
    dg: DefeatGraph,
    literal: Literal,
    semantics: str = GROUNDED,
    mode: str = SKEPTICAL,
) -> bool:
    """Conclusion-level acceptance: does some argument for the literal sit
    IN in all (skeptical) or at least one (credulous) labelling?"""
    af, _ = project_af(dg)
    holders = [a.id for a in dg.arguments.values() if a.conclusion == literal]
    if not holders:
        raise UnknownTargetError(f"no argument concludes {literal}")
    labellings = enumerate_labellings(af, semantics)
    hits = [any(l.label(h) == "IN" for h in holders) for l in labellings]
    if mode == SKEPTICAL:
        return all(hits)
    return any(hits)


def arguments_to_json(args: dict[str, Argument], labels: dict[str, str] | None = None) -> str:
    """Debug export of the argument forest."""
    labels = labels or argument_labels(args)
    rows = [
        {
            "id": arg.id,
            "label": labels[arg.id],
            "conclusion": str(arg.conclusion),
            "subarguments": list(arg.subarguments),
            "weight": arg.weight,
        }
        for arg in sorted(args.values(), key=lambda a: labels[a.id])
    ]
    return json.dumps(rows, indent=2, sort_keys=True)


def defeat_graph_dot(dg: DefeatGraph, labels: dict[str, str] | None = None) -> str:
    """Debug export of the defeat graph as DOT."""
    labels = labels or argument_labels(dg.arguments)
    lines = ["digraph defeats {"]
    for arg in sorted(dg.arguments.values(), key=lambda a: labels[a.id]):
        lines.append(
            f'  "{labels[arg.id]}" [label="{labels[arg.id]}\\n{arg.conclusion}"];'
        )
    for a, b in sorted(dg.defeats, key=lambda p: (labels[p[0]], labels[p[1]])):
        lines.append(f'  "{labels[a]}" -> "{labels[b]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
