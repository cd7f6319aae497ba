"""Dispute trees, semantic sufficiency, utility, and explanation selection.

A dispute tree alternates proponent and opponent roles: each node's
children are the defeaters of its argument not already on the branch.
Sufficiency scores the root by the product-discount recursion

    strength(v) = base(v) * prod over children (1 - strength(child))

so a fully rebutted attacker costs nothing. Selection searches the
ancestor-closed subtrees containing the root for the one maximizing the
profile-weighted utility, subject to a sufficiency threshold tau and a
faithfulness slack epsilon that keeps the chosen subtree's sufficiency
close to the full tree's (pruning attackers inflates sufficiency, so an
unconstrained optimizer would always pick one-sided explanations).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .arguments import Argument, DefeatGraph
from .errors import InsufficientExplanationError, UnknownTargetError
from .profiles import UserProfile
from .theory import Theory

PROPONENT = "proponent"
OPPONENT = "opponent"

DEFAULT_MAX_DEPTH = 6
EXACT_NODE_LIMIT = 20
BEAM_WIDTH = 8


@dataclass(frozen=True)
class DisputeNode:
    id: str
    role: str  # PROPONENT or OPPONENT
    argument_id: str
    base_score: float
    scheme_tag: str | None
    children: tuple[str, ...]
    premise_ids: frozenset[str]


@dataclass
class DisputeTree:
    nodes: dict[str, DisputeNode]
    root: str
    arguments: dict[str, Argument] = field(default_factory=dict)
    premise_jargon: dict[str, float] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.nodes)

    def node(self, node_id: str) -> DisputeNode:
        return self.nodes[node_id]

    def parent_map(self) -> dict[str, str]:
        parents: dict[str, str] = {}
        for node in self.nodes.values():
            for child in node.children:
                parents[child] = node.id
        return parents

    def restricted(self, node_ids: frozenset[str]) -> "DisputeTree":
        """The ancestor-closed subtree induced by the given node ids."""
        nodes = {
            nid: DisputeNode(
                id=n.id,
                role=n.role,
                argument_id=n.argument_id,
                base_score=n.base_score,
                scheme_tag=n.scheme_tag,
                children=tuple(c for c in n.children if c in node_ids),
                premise_ids=n.premise_ids,
            )
            for nid, n in self.nodes.items()
            if nid in node_ids
        }
        return DisputeTree(
            nodes=nodes,
            root=self.root,
            arguments=self.arguments,
            premise_jargon=self.premise_jargon,
        )


def build_dispute_tree(
    dg: DefeatGraph,
    root_argument_id: str,
    max_depth: int = DEFAULT_MAX_DEPTH,
    theory: Theory | None = None,
) -> DisputeTree:
    """Breadth-complete tree of defeaters rooted at a proponent argument.

    Arguments already on the root-to-node branch are cut (loops), and
    nodes at max_depth get no children. Child order follows argument id.
    """
    if root_argument_id not in dg.arguments:
        raise UnknownTargetError(f"unknown argument id '{root_argument_id}'")
    if max_depth < 1:
        raise ValueError("max_depth must be at least 1")

    nodes: dict[str, DisputeNode] = {}

    def rec(arg_id: str, node_id: str, depth: int, branch: frozenset[str]) -> str:
        argument = dg.arguments[arg_id]
        role = PROPONENT if depth % 2 == 1 else OPPONENT
        child_ids: list[str] = []
        if depth < max_depth:
            defeaters = [d for d in dg.defeaters_of(arg_id) if d not in branch]
            for k, defeater in enumerate(defeaters):
                child_ids.append(
                    rec(defeater, f"{node_id}.{k}", depth + 1, branch | {defeater})
                )
        nodes[node_id] = DisputeNode(
            id=node_id,
            role=role,
            argument_id=arg_id,
            base_score=argument.weight,
            scheme_tag=argument.scheme_tag,
            children=tuple(child_ids),
            premise_ids=argument.premise_ids,
        )
        return node_id

    rec(root_argument_id, "0", 1, frozenset({root_argument_id}))

    jargon: dict[str, float] = {}
    if theory is not None:
        premise_ids = set()
        for node in nodes.values():
            premise_ids |= node.premise_ids
        jargon = {pid: theory.premise(pid).jargon for pid in sorted(premise_ids)}

    # Keep the whole forest: rendering walks subarguments of node arguments.
    return DisputeTree(
        nodes=nodes, root="0", arguments=dict(dg.arguments), premise_jargon=jargon
    )


def sufficiency(tree: DisputeTree, include: frozenset[str] | None = None) -> float:
    """Root strength under the product-discount recursion."""

    def strength(node_id: str) -> float:
        node = tree.nodes[node_id]
        value = node.base_score
        for child in node.children:
            if include is not None and child not in include:
                continue
            value *= 1.0 - strength(child)
        return value

    return strength(tree.root)


@dataclass
class UtilityWeights:
    """Weights of the clarity/relevance/lexical-fit sum, the sufficiency
    threshold tau, and the faithfulness slack epsilon."""

    alpha: float = 1.0 / 3.0
    beta: float = 1.0 / 3.0
    gamma: float = 1.0 / 3.0
    tau: float = 0.5
    epsilon: float = 0.05

    def __post_init__(self):
        if self.alpha < 0 or self.beta < 0 or self.gamma < 0:
            raise ValueError("utility weights must be nonnegative")
        if self.alpha + self.beta + self.gamma <= 0:
            raise ValueError("utility weights must not all be zero")
        if not 0.0 <= self.tau <= 1.0:
            raise ValueError(f"tau out of [0,1]: {self.tau}")
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValueError(f"epsilon out of [0,1]: {self.epsilon}")


def node_budget(cognitive_depth: float) -> int:
    return math.ceil(3 + 12 * cognitive_depth)


def utility(
    tree: DisputeTree,
    profile: UserProfile,
    weights: UtilityWeights,
    include: frozenset[str] | None = None,
) -> tuple[float, dict[str, float]]:
    """Weighted sum of Clarity, Relevance, and LexicalFit.

    Clarity penalizes trees larger than the profile's node budget;
    Relevance is the fraction of nodes tagged with a preferred scheme
    (1.0 when nothing is tagged); LexicalFit discounts mean premise
    jargon by the profile's lexical tolerance.
    """
    node_ids = include if include is not None else frozenset(tree.nodes)
    nodes = [tree.nodes[nid] for nid in sorted(node_ids)]

    overflow = max(0, len(nodes) - node_budget(profile.c))
    clarity = 1.0 / (1.0 + overflow)

    tagged = [n for n in nodes if n.scheme_tag is not None]
    if not tagged:
        relevance = 1.0
    else:
        matching = sum(1 for n in nodes if n.scheme_tag in profile.preferred_schemes)
        relevance = matching / len(nodes)

    premise_ids = sorted(set().union(*(n.premise_ids for n in nodes)) if nodes else set())
    jargon_values = [tree.premise_jargon.get(pid, 0.0) for pid in premise_ids]
    mean_jargon = sum(jargon_values) / len(jargon_values) if jargon_values else 0.0
    lexical_fit = 1.0 - (1.0 - profile.l) * mean_jargon

    features = {
        "clarity": clarity,
        "relevance": relevance,
        "lexical_fit": lexical_fit,
    }
    score = (
        weights.alpha * clarity
        + weights.beta * relevance
        + weights.gamma * lexical_fit
    )
    return score, features


@dataclass
class ExplanationSelection:
    """The chosen ancestor-closed subtree with its scores."""

    subtree: DisputeTree
    node_ids: frozenset[str]
    sigma: float
    sigma_full: float
    utility: float
    features: dict[str, float]


def iter_closed_subtrees(tree: DisputeTree):
    """Yield every ancestor-closed node set containing the root."""

    def rec_node(node_id: str):
        node = tree.nodes[node_id]

        def rec_children(i: int):
            if i == len(node.children):
                yield frozenset({node_id})
                return
            for rest in rec_children(i + 1):
                yield rest
                for sub in rec_node(node.children[i]):
                    yield rest | sub

        yield from rec_children(0)

    yield from rec_node(tree.root)


def _selection_key(candidate: tuple[float, frozenset[str]]) -> tuple:
    """Sort key: utility desc, then fewer nodes, then lexicographic ids."""
    score, node_ids = candidate
    return (-score, len(node_ids), tuple(sorted(node_ids)))


def _select_exact(tree, profile, weights, sigma_full):
    best: tuple[float, frozenset[str]] | None = None
    for node_ids in iter_closed_subtrees(tree):
        sigma = sufficiency(tree, node_ids)
        if sigma < weights.tau or abs(sigma - sigma_full) > weights.epsilon:
            continue
        score, _ = utility(tree, profile, weights, node_ids)
        candidate = (score, node_ids)
        if best is None or _selection_key(candidate) < _selection_key(best):
            best = candidate
    return best


def _select_beam(tree, profile, weights, sigma_full, width=BEAM_WIDTH):
    parents = tree.parent_map()
    all_ids = sorted(tree.nodes)

    def evaluate(node_ids: frozenset[str]):
        sigma = sufficiency(tree, node_ids)
        score, _ = utility(tree, profile, weights, node_ids)
        gap = max(0.0, abs(sigma - sigma_full) - weights.epsilon)
        feasible = sigma >= weights.tau and gap == 0.0
        return sigma, score, gap, feasible

    best: tuple[float, frozenset[str]] | None = None
    start = frozenset({tree.root})
    _, score, _, feasible = evaluate(start)
    if feasible:
        best = (score, start)

    beam = [start]
    visited = {start}
    while beam:
        extensions: list[tuple[tuple, frozenset[str]]] = []
        for node_ids in beam:
            for nid in all_ids:
                if nid in node_ids or parents.get(nid) not in node_ids:
                    continue
                extended = node_ids | {nid}
                if extended in visited:
                    continue
                visited.add(extended)
                sigma, score, gap, feasible = evaluate(extended)
                if feasible:
                    candidate = (score, extended)
                    if best is None or _selection_key(candidate) < _selection_key(best):
                        best = candidate
                rank = (gap, -score, len(extended), tuple(sorted(extended)))
                extensions.append((rank, extended))
        extensions.sort(key=lambda pair: pair[0])
        beam = [node_ids for _, node_ids in extensions[:width]]
    return best


def select_explanation(
    full: DisputeTree,
    profile: UserProfile,
    weights: UtilityWeights | None = None,
    method: str = "auto",
) -> ExplanationSelection:
    """Pick the utility-maximal feasible subtree (exact up to
    EXACT_NODE_LIMIT nodes, deterministic beam search beyond).

    Raises InsufficientExplanationError when no ancestor-closed subtree
    meets both the tau threshold and the epsilon faithfulness constraint.
    """
    weights = weights or UtilityWeights()
    sigma_full = sufficiency(full)

    if method == "auto":
        method = "exact" if len(full) <= EXACT_NODE_LIMIT else "beam"
    if method == "exact":
        best = _select_exact(full, profile, weights, sigma_full)
    elif method == "beam":
        best = _select_beam(full, profile, weights, sigma_full)
    else:
        raise ValueError(f"unknown selection method '{method}'")

    if best is None:
        raise InsufficientExplanationError(sigma_full, weights.tau)

    score, node_ids = best
    sigma = sufficiency(full, node_ids)
    _, features = utility(full, profile, weights, node_ids)
    return ExplanationSelection(
        subtree=full.restricted(node_ids),
        node_ids=node_ids,
        sigma=sigma,
        sigma_full=sigma_full,
        utility=score,
        features=features,
    )
