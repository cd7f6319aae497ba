"""Audience-adapted rendering of arguments, explanations, and frameworks.

Premise display text (per band) takes priority over generic templates;
scheme-tagged rules with recoverable bindings use the scheme's audience
phrasing. The lay band never shows confidence or sufficiency numerals;
the professional band always reports sufficiency to two decimals and
annotates ordinary premises with their confidence. Output is built from
sorted inputs only, so identical calls are byte-identical.
"""

from __future__ import annotations

from dataclasses import dataclass

from .af import ArgumentationFramework, Labelling
from .arguments import Argument, argument_labels
from .dispute import OPPONENT, PROPONENT, DisputeTree, ExplanationSelection
from .errors import RenderFormatError
from .profiles import LAY, PROFESSIONAL, UserProfile
from .schemes import _recover_bindings, get_scheme
from .theory import Literal, Theory

TEXT = "text"
MARKDOWN = "markdown"
DOT = "dot"

FORMATS = (TEXT, MARKDOWN, DOT)

_LABEL_FILL = {"IN": "#b7e1cd", "OUT": "#f4c7c3", "UNDEC": "#e8eaed"}


def atom_text(literal: Literal) -> str:
    """Plain phrase for a literal; ``believe(p)`` collapses to ``p``."""
    if literal.predicate == "believe" and len(literal.args) == 1:
        base = literal.args[0].name
    else:
        base = str(Literal(literal.predicate, literal.args, True))
    return base if literal.positive else f"not {base}"


def _scheme_sentence(argument: Argument, theory: Theory, band: str) -> str | None:
    if argument.scheme_tag is None:
        return None
    try:
        scheme = get_scheme(argument.scheme_tag)
    except Exception:
        return None
    if argument.top_rule is None:
        return None
    try:
        rule = theory.rule(argument.top_rule)
    except KeyError:
        return None
    bindings = _recover_bindings(rule, scheme)
    if bindings is None:
        return None
    template = scheme.audience_text_templates.get(band)
    if template is None:
        return None
    return template.format(**bindings)


def render_argument(argument: Argument, profile: UserProfile, theory: Theory) -> str:
    """One sentence for an argument, adapted to the profile's band."""
    band = profile.band
    if argument.is_premise_argument:
        premise = theory.premise(argument.premise_id)
        text = premise.display_text.get(band)
        if text is not None:
            return text
        sentence = f"It is given that: {atom_text(premise.literal)}"
        if band == PROFESSIONAL and not premise.is_axiom:
            sentence += f" (confidence {premise.confidence:.2f})"
        return sentence + "."
    sentence = _scheme_sentence(argument, theory, band)
    if sentence is not None:
        return sentence
    return f"It follows that: {atom_text(argument.conclusion)}."


@dataclass
class RenderedExplanation:
    format: str
    body: str
    claim: str
    supports: tuple[str, ...]
    challenges: tuple[str, ...]


def _support_lines(
    argument: Argument,
    tree: DisputeTree,
    profile: UserProfile,
    theory: Theory,
    depth: int,
    full_chains: bool,
) -> list[str]:
    lines: list[str] = []
    indent = "  " * depth
    for sub_id in argument.subarguments:
        sub = tree.arguments[sub_id]
        lines.append(f"{indent}- {render_argument(sub, profile, theory)}")
        if full_chains and not sub.is_premise_argument:
            lines.extend(
                _support_lines(sub, tree, profile, theory, depth + 1, full_chains)
            )
    if full_chains and argument.top_rule is not None:
        rule = theory.rule(argument.top_rule)
        if rule.is_defeasible:
            lines.append(f"{indent}  [rule {rule.id}, weight {rule.weight:.2f}]")
    return lines


def _challenge_lines(
    node_id: str,
    tree: DisputeTree,
    profile: UserProfile,
    theory: Theory,
    depth: int,
    recurse: bool,
) -> list[str]:
    node = tree.nodes[node_id]
    argument = tree.arguments[node.argument_id]
    indent = "  " * depth
    sentence = render_argument(argument, profile, theory)
    if argument.weight == 0.0:
        sentence += " (negligible)"
    label = "Challenged by" if node.role == OPPONENT else "Countered by"
    lines = [f"{indent}- {label}: {sentence}"]
    if recurse or depth <= 1:
        for child in node.children:
            lines.extend(
                _challenge_lines(child, tree, profile, theory, depth + 1, recurse)
            )
    return lines


def render_explanation(
    selection: ExplanationSelection,
    profile: UserProfile,
    theory: Theory,
    fmt: str = TEXT,
) -> RenderedExplanation:
    """Claim, supports, then challenges with their counters.

    Lay and decision-maker bands summarize (direct supports, one level of
    counters); the professional band shows full premise chains, rule
    weights, and the sufficiency score.
    """
    if fmt not in FORMATS:
        raise RenderFormatError(f"unsupported format '{fmt}'")
    tree = selection.subtree
    root_node = tree.nodes[tree.root]
    root_argument = tree.arguments[root_node.argument_id]
    band = profile.band
    professional = band == PROFESSIONAL

    claim = render_argument(root_argument, profile, theory)
    supports = tuple(
        line.strip()[2:] if line.strip().startswith("- ") else line.strip()
        for line in _support_lines(root_argument, tree, profile, theory, 0, False)
    )
    support_block = _support_lines(
        root_argument, tree, profile, theory, 1, professional
    )
    challenge_block: list[str] = []
    for child in root_node.children:
        challenge_block.extend(
            _challenge_lines(child, tree, profile, theory, 1, professional)
        )
    challenges = tuple(line.strip()[2:] for line in challenge_block)

    if fmt == DOT:
        body = _selection_dot(selection)
        return RenderedExplanation(fmt, body, claim, supports, challenges)

    lines = [f"Claim: {claim}"]
    if professional:
        lines.append(f"Sufficiency: {selection.sigma:.2f}")
    if support_block:
        lines.append("Supported by:")
        lines.extend(support_block)
    if challenge_block:
        lines.append("Challenged by:")
        lines.extend(
            line.replace("- Challenged by: ", "- ", 1) for line in challenge_block
        )
    body = "\n".join(lines) + "\n"

    if fmt == MARKDOWN:
        md = ["# Claim", "", claim, ""]
        if professional:
            md += [f"**Sufficiency:** {selection.sigma:.2f}", ""]
        if support_block:
            md += ["## Supported by", ""]
            md += [line[2:] if line.startswith("  ") else line for line in support_block]
            md += [""]
        if challenge_block:
            md += ["## Challenged by", ""]
            md += [
                line.replace("- Challenged by: ", "- ", 1)[2:]
                if line.startswith("  ")
                else line
                for line in challenge_block
            ]
            md += [""]
        body = "\n".join(md)

    return RenderedExplanation(fmt, body, claim, supports, challenges)


def _selection_dot(selection: ExplanationSelection) -> str:
    tree = selection.subtree
    labels = argument_labels(tree.arguments)
    lines = ["digraph explanation {", "  rankdir=TB;"]
    for node_id in sorted(tree.nodes):
        node = tree.nodes[node_id]
        argument = tree.arguments[node.argument_id]
        fill = "#d5e8d4" if node.role == PROPONENT else "#f8cecc"
        style = "filled,bold" if node_id == tree.root else "filled"
        label = f"{labels[node.argument_id]}: {argument.conclusion}\\n{node.role}"
        lines.append(
            f'  "{node_id}" [shape=box, style="{style}", fillcolor="{fill}", '
            f'label="{label}"];'
        )
    for node_id in sorted(tree.nodes):
        for child in tree.nodes[node_id].children:
            lines.append(f'  "{child}" -> "{node_id}" [label="attacks"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_af_dot(af: ArgumentationFramework, labelling: Labelling) -> str:
    """Framework as DOT with nodes colored by IN/OUT/UNDEC label."""
    missing = set(af.args) - set(labelling.assignment)
    if missing:
        raise ValueError(f"labelling not total: missing {sorted(missing)}")
    lines = ["digraph af {", "  rankdir=LR;"]
    for arg in af.sorted_args():
        label = labelling.label(arg)
        lines.append(
            f'  "{arg}" [style=filled, fillcolor="{_LABEL_FILL[label]}", '
            f'label="{arg} [{label}]"];'
        )
    for attacker, attacked in sorted(af.attacks):
        lines.append(f'  "{attacker}" -> "{attacked}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
