"""Named theory sessions and the shared query pipeline.

A session holds one theory plus lazily derived artifacts (ground theory,
arguments, attacks, defeat graph, abstract framework). Derivation is
pure, so caches are only invalidated by mutations (challenge, committed
what-if). The CLI and the HTTP service both route through this module,
which keeps their outputs in lockstep.
"""

from __future__ import annotations

import threading
import time
import uuid
from dataclasses import dataclass
from pathlib import Path

from .af import (
    GROUNDED,
    SEMANTICS,
    ArgumentationFramework,
    Labelling,
    enumerate_labellings,
)
from .arguments import (
    Argument,
    Attack,
    DefeatGraph,
    argument_labels,
    compute_attacks,
    construct_arguments,
    project_af,
    resolve_defeats,
)
from .dispute import (
    DEFAULT_MAX_DEPTH,
    DisputeTree,
    UtilityWeights,
    build_dispute_tree,
    select_explanation,
    sufficiency,
)
from .errors import UnknownTargetError
from .grounding import GroundTheory, ground_theory
from .parser import parse_literal, theory_from_source
from .profiles import UserProfile
from .render import render_explanation
from .schemes import apply_critical_question, scheme_instances
from .theory import Literal, Theory, serialize_theory


@dataclass
class Derived:
    """Everything computable from a theory, in one bundle."""

    gt: GroundTheory
    arguments: dict[str, Argument]
    attacks: tuple[Attack, ...]
    dg: DefeatGraph
    af: ArgumentationFramework
    labels: dict[str, str]


def derive(theory: Theory) -> Derived:
    gt = ground_theory(theory)
    args = construct_arguments(gt)
    attacks = compute_attacks(args, gt)
    dg = resolve_defeats(attacks, args, gt.preference_order())
    af, _ = project_af(dg)
    labels = argument_labels(args)
    return Derived(gt=gt, arguments=args, attacks=attacks, dg=dg, af=af, labels=labels)


def resolve_target(derived: Derived, target: str) -> tuple[str, Literal]:
    """Resolve a literal string, argument id, or argument label to an
    argument. Literals pick the heaviest concluding argument (ties by
    label)."""
    literal = None
    try:
        literal = parse_literal(target)
    except Exception:
        literal = None
    if literal is not None:
        holders = [
            a for a in derived.arguments.values() if a.conclusion == literal
        ]
        if holders:
            holders.sort(key=lambda a: (-a.weight, derived.labels[a.id]))
            return holders[0].id, literal
    if target in derived.arguments:
        return target, derived.arguments[target].conclusion
    for arg_id, label in derived.labels.items():
        if label == target:
            return arg_id, derived.arguments[arg_id].conclusion
    raise UnknownTargetError(f"target '{target}' matches no literal or argument")


def acceptance_flags(derived: Derived, literal: Literal, semantics: str = GROUNDED) -> dict:
    """Conclusion-level skeptical/credulous acceptance of a literal."""
    holders = [a.id for a in derived.arguments.values() if a.conclusion == literal]
    if not holders:
        return {"skeptical": False, "credulous": False, "derivable": False}
    labellings = enumerate_labellings(derived.af, semantics)
    hits = [any(l.label(h) == "IN" for h in holders) for l in labellings]
    return {
        "skeptical": all(hits),
        "credulous": any(hits),
        "derivable": True,
    }


def labelling_report(derived: Derived, labelling: Labelling) -> dict:
    return {
        "in": list(labelling.in_set),
        "out": list(labelling.out_set),
        "undec": list(labelling.undec_set),
    }


def arguments_report(derived: Derived) -> dict:
    rows = []
    for arg in sorted(derived.arguments.values(), key=lambda a: derived.labels[a.id]):
        rows.append(
            {
                "id": arg.id,
                "label": derived.labels[arg.id],
                "conclusion": str(arg.conclusion),
                "premises": sorted(arg.premise_ids),
                "rules": sorted(arg.rules_used),
                "defeasible_rules": sorted(arg.defeasible_rules),
                "top_rule": arg.top_rule,
                "scheme": arg.scheme_tag,
                "weight": arg.weight,
                "subarguments": list(arg.subarguments),
            }
        )
    return {
        "arguments": rows,
        "attacks": [
            {
                "attacker": a.attacker,
                "attacked": a.attacked,
                "kind": a.kind,
                "target": a.target,
            }
            for a in derived.attacks
        ],
        "defeats": [list(pair) for pair in sorted(derived.dg.defeats)],
    }


def extensions_report(derived: Derived, semantics: str) -> dict:
    if semantics not in SEMANTICS:
        raise ValueError(f"unknown semantics '{semantics}'")
    labellings = enumerate_labellings(derived.af, semantics)
    return {
        "semantics": semantics,
        "argument_labels": dict(sorted(derived.labels.items())),
        "labellings": [labelling_report(derived, l) for l in labellings],
    }


def _tree_report(tree: DisputeTree, labels: dict[str, str]) -> dict:
    nodes = []
    for node_id in sorted(tree.nodes):
        node = tree.nodes[node_id]
        nodes.append(
            {
                "id": node.id,
                "role": node.role,
                "argument": node.argument_id,
                "label": labels.get(node.argument_id, node.argument_id),
                "score": node.base_score,
                "scheme": node.scheme_tag,
                "children": list(node.children),
            }
        )
    return {"root": tree.root, "nodes": nodes}


def explain_report(
    derived: Derived,
    target: str,
    profile: UserProfile,
    weights: UtilityWeights | None = None,
    semantics: str = GROUNDED,
    fmt: str = "text",
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> dict:
    """Full explanation pipeline: dispute tree, selection, rendering."""
    weights = weights or UtilityWeights()
    arg_id, literal = resolve_target(derived, target)
    tree = build_dispute_tree(derived.dg, arg_id, max_depth=max_depth, theory=derived.gt)
    selection = select_explanation(tree, profile, weights)
    rendered = render_explanation(selection, profile, derived.gt, fmt)
    return {
        "target": {
            "argument": arg_id,
            "label": derived.labels[arg_id],
            "literal": str(literal),
        },
        "profile": profile.name,
        "band": profile.band,
        "semantics": semantics,
        "sigma": selection.sigma,
        "sigma_full": selection.sigma_full,
        "utility": selection.utility,
        "features": dict(selection.features),
        "tau": weights.tau,
        "epsilon": weights.epsilon,
        "subtree": _tree_report(selection.subtree, derived.labels),
        "rendered": {
            "format": rendered.format,
            "body": rendered.body,
            "claim": rendered.claim,
            "supports": list(rendered.supports),
            "challenges": list(rendered.challenges),
        },
        "acceptance": acceptance_flags(derived, literal, semantics),
    }


class Session:
    """One named theory with derived caches and serialized mutation."""

    def __init__(self, theory: Theory, session_id: str | None = None):
        self.id = session_id or uuid.uuid4().hex[:12]
        self.created_at = time.time()
        self._theory = theory
        self._lock = threading.Lock()
        self._derived: Derived | None = None

    @property
    def theory(self) -> Theory:
        return self._theory

    def derived(self) -> Derived:
        with self._lock:
            if self._derived is None:
                self._derived = derive(self._theory)
            return self._derived

    def mutate(self, new_theory: Theory):
        with self._lock:
            self._theory = new_theory
            self._derived = None

    # -- interactive turns ------------------------------------------------

    def challenge(
        self,
        instance_rule_id: str,
        cq_id: str,
        confidence: float,
        semantics: str = GROUNDED,
    ) -> dict:
        """Pose a critical question: add the undercutter, report the
        acceptance delta for the instance conclusion."""
        instances = {
            inst.rule_id: inst for inst in scheme_instances(self._theory)
        }
        if instance_rule_id not in instances:
            raise UnknownTargetError(
                f"no scheme instance with rule id '{instance_rule_id}'"
            )
        instance = instances[instance_rule_id]
        conclusion = self._theory.rule(instance_rule_id).head
        before = acceptance_flags(self.derived(), conclusion, semantics)
        new_theory = apply_critical_question(
            self._theory, instance, cq_id, confidence
        )
        changed_theory = new_theory is not self._theory
        self.mutate(new_theory)
        after = acceptance_flags(self.derived(), conclusion, semantics)
        return {
            "instance": instance_rule_id,
            "scheme": instance.scheme_id,
            "cq": cq_id,
            "confidence": confidence,
            "premise": f"{instance_rule_id}__cq_{cq_id}",
            "conclusion": str(conclusion),
            "before": before,
            "after": after,
            "changed": before != after or changed_theory,
        }

    def whatif(
        self,
        disable_premises=(),
        add_preferences=(),
        remove_preferences=(),
        target: str | None = None,
        semantics: str = GROUNDED,
        commit: bool = False,
    ) -> dict:
        """Preview (or commit) premise toggles and preference edits."""
        theory = self._theory
        for pid in disable_premises:
            if not any(p.id == pid for p in theory.premises):
                raise UnknownTargetError(f"unknown premise id '{pid}'")
        modified = theory.without_premises(disable_premises)
        prefs = set(modified.preferences)
        prefs -= {tuple(pair) for pair in remove_preferences}
        prefs |= {tuple(pair) for pair in add_preferences}
        modified = modified.replace(preferences=frozenset(prefs))

        before_derived = self.derived()
        after_derived = derive(modified)

        literals = sorted(
            {str(a.conclusion) for a in before_derived.arguments.values()}
            | {str(a.conclusion) for a in after_derived.arguments.values()}
        )

        def report(derived: Derived) -> dict:
            acceptance = {
                text: acceptance_flags(derived, parse_literal(text), semantics)
                for text in literals
            }
            sigma = None
            if target is not None:
                try:
                    arg_id, _ = resolve_target(derived, target)
                    tree = build_dispute_tree(
                        derived.dg, arg_id, theory=derived.gt
                    )
                    sigma = sufficiency(tree)
                except UnknownTargetError:
                    sigma = None
            return {"acceptance": acceptance, "sigma": sigma}

        before = report(before_derived)
        after = report(after_derived)
        changes = [
            text
            for text in literals
            if before["acceptance"][text]["skeptical"]
            != after["acceptance"][text]["skeptical"]
        ]
        if commit:
            self.mutate(modified)
        return {
            "committed": commit,
            "disabled_premises": sorted(disable_premises),
            "added_preferences": [list(p) for p in sorted(map(tuple, add_preferences))],
            "removed_preferences": [
                list(p) for p in sorted(map(tuple, remove_preferences))
            ],
            "before": before,
            "after": after,
            "changes": changes,
        }


class SessionStore:
    """In-memory sessions with optional snapshot-to-file persistence."""

    def __init__(self, state_dir: str | None = None):
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()
        self.state_dir = Path(state_dir) if state_dir else None
        if self.state_dir is not None:
            self.state_dir.mkdir(parents=True, exist_ok=True)
            self._load_snapshots()

    def _load_snapshots(self):
        for path in sorted(self.state_dir.glob("*.phax")):
            try:
                theory = theory_from_source(path.read_text(encoding="utf-8"))
            except Exception:
                continue
            session = Session(theory, session_id=path.stem)
            self._sessions[session.id] = session

    def _snapshot(self, session: Session):
        if self.state_dir is None:
            return
        path = self.state_dir / f"{session.id}.phax"
        path.write_text(serialize_theory(session.theory), encoding="utf-8")

    def create(self, theory: Theory) -> Session:
        session = Session(theory)
        with self._lock:
            self._sessions[session.id] = session
        self._snapshot(session)
        return session

    def get(self, session_id: str) -> Session:
        with self._lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise UnknownTargetError(f"unknown session '{session_id}'")
        return session

    def snapshot(self, session: Session):
        self._snapshot(session)
