import json
import random

import pytest

from phax.af import GROUNDED
from phax.arguments import (
    REBUT,
    UNDERCUT,
    UNDERMINE,
    argument_labels,
    argument_weight,
    arguments_to_json,
    compute_attacks,
    construct_arguments,
    defeat_graph_dot,
    literal_acceptance,
    project_af,
    resolve_defeats,
)
from phax.errors import ArgumentLimitError, UnknownTargetError
from phax.grounding import ground_theory
from phax.theory import (
    AXIOM,
    DEFEASIBLE,
    ORDINARY,
    STRICT,
    Premise,
    Rule,
    Theory,
    atom,
    applicability_atom,
)

from conftest import axiom_only_theory, simplification_theory
from oracles import brute_argument_signatures, engine_argument_signatures


def build(theory):
    gt = ground_theory(theory)
    args = construct_arguments(gt)
    attacks = compute_attacks(args, gt)
    dg = resolve_defeats(attacks, args, gt.preference_order())
    return gt, args, attacks, dg


def by_conclusion(args, text):
    return [a for a in args.values() if str(a.conclusion) == text]


def test_paper_theory_constructs_five_arguments(paper_theory):
    gt = ground_theory(paper_theory)
    args = construct_arguments(gt)
    assert len(args) == 5
    (arg1,) = by_conclusion(args, "prefer(heart_attack)")
    (arg2,) = by_conclusion(args, "~prefer(heart_attack)")
    assert arg1.top_rule == "r1" and len(arg1.subarguments) == 2
    assert arg2.top_rule == "r2" and len(arg2.subarguments) == 1
    assert arg1.premise_ids == {"p1", "p2"}
    assert arg2.premise_ids == {"p3"}


def test_axiom_only_theory_has_premise_arguments_and_no_attacks():
    gt, args, attacks, dg = build(axiom_only_theory())
    assert len(args) == 2
    assert all(a.is_premise_argument for a in args.values())
    assert attacks == ()
    assert dg.defeats == frozenset()


def test_pico_theory_constructs_five_arguments():
    theory = Theory(
        premises=(
            Premise("q1", atom("population_match", "s1", "adults")),
            Premise("q2", atom("intervention_applied", "s1", "vaccine_x")),
            Premise("q3", atom("outcome_observed", "s1")),
            Premise("q4", atom("credible", "s1"), confidence=0.9),
        ),
        rules=(
            Rule(
                "rec",
                DEFEASIBLE,
                (
                    atom("population_match", "s1", "adults"),
                    atom("intervention_applied", "s1", "vaccine_x"),
                    atom("outcome_observed", "s1"),
                    atom("credible", "s1"),
                ),
                atom("recommend", "vaccine_x", "adults"),
                weight=0.9,
            ),
        ),
    )
    gt = ground_theory(theory)
    args = construct_arguments(gt)
    assert len(args) == 5
    (top,) = by_conclusion(args, "recommend(vaccine_x, adults)")
    assert top.weight == 0.9


def test_argument_weight_examples():
    # axiom premise-argument: weight 1.0
    gt, args, _, _ = build(axiom_only_theory())
    assert all(argument_weight(a, gt) == 1.0 for a in args.values())

    # min over premise confidence 0.9 and rule weight 0.8 -> 0.8
    theory = Theory(
        premises=(Premise("p1", atom("obs", "c"), confidence=0.9),),
        rules=(Rule("r1", DEFEASIBLE, (atom("obs", "c"),), atom("concl", "c"), weight=0.8),),
    )
    gt, args, _, _ = build(theory)
    (arg,) = by_conclusion(args, "concl(c)")
    assert argument_weight(arg, gt) == pytest.approx(0.8)
    assert arg.weight == pytest.approx(0.8)

    # strict top rule over confidences {0.7, 0.95} -> 0.7
    theory = Theory(
        premises=(
            Premise("p1", atom("x", "c"), confidence=0.7),
            Premise("p2", atom("y", "c"), confidence=0.95),
        ),
        rules=(Rule("s1", STRICT, (atom("x", "c"), atom("y", "c")), atom("z", "c")),),
    )
    gt, args, _, _ = build(theory)
    (arg,) = by_conclusion(args, "z(c)")
    assert argument_weight(arg, gt) == pytest.approx(0.7)


def test_mutual_rebut_on_paper_theory(paper_theory):
    gt, args, attacks, dg = build(paper_theory)
    (arg1,) = by_conclusion(args, "prefer(heart_attack)")
    (arg2,) = by_conclusion(args, "~prefer(heart_attack)")
    rebut_pairs = {(a.attacker, a.attacked) for a in attacks if a.kind == REBUT}
    assert (arg1.id, arg2.id) in rebut_pairs
    assert (arg2.id, arg1.id) in rebut_pairs
    # without preferences both rebuts become defeats
    assert (arg1.id, arg2.id) in dg.defeats
    assert (arg2.id, arg1.id) in dg.defeats


def test_preference_makes_single_defeat_and_flips_acceptance():
    theory = simplification_theory(preferences={("r2", "r1")})
    gt, args, attacks, dg = build(theory)
    (arg1,) = by_conclusion(args, "prefer(heart_attack)")
    (arg2,) = by_conclusion(args, "~prefer(heart_attack)")
    assert (arg2.id, arg1.id) in dg.defeats
    assert (arg1.id, arg2.id) not in dg.defeats
    assert literal_acceptance(dg, atom("prefer", "heart_attack", positive=False), GROUNDED, "skeptical")
    assert not literal_acceptance(dg, atom("prefer", "heart_attack"), GROUNDED, "skeptical")

    flipped = simplification_theory(preferences={("r1", "r2")})
    gt, args, attacks, dg = build(flipped)
    assert literal_acceptance(dg, atom("prefer", "heart_attack"), GROUNDED, "skeptical")
    assert not literal_acceptance(dg, atom("prefer", "heart_attack", positive=False), GROUNDED, "skeptical")


def test_undercut_is_unidirectional_and_preference_immune(paper_theory):
    theory = paper_theory.replace(
        premises=paper_theory.premises
        + (Premise("u1", applicability_atom("r1", positive=False), confidence=0.5),),
        # even a preference against the undercutter does not block it
        preferences=frozenset({("r1", "u1")}),
    )
    gt, args, attacks, dg = build(theory)
    undercuts = [a for a in attacks if a.kind == UNDERCUT]
    assert len(undercuts) == 1
    (uc,) = undercuts
    (arg1,) = by_conclusion(args, "prefer(heart_attack)")
    (undercutter,) = by_conclusion(args, "~applicable(r1)")
    assert (uc.attacker, uc.attacked) == (undercutter.id, arg1.id)
    assert (undercutter.id, arg1.id) in dg.defeats
    # no counter-attack from arg1 to the undercutter
    assert not any(a.attacked == undercutter.id for a in attacks)


def test_undercut_matches_ground_instances_by_parent_id():
    theory = Theory(
        premises=(
            Premise("f1", atom("p", "a")),
            Premise("u1", applicability_atom("r1", positive=False)),
        ),
        rules=(Rule("r1", DEFEASIBLE, (atom("p", "X"),), atom("q", "X")),),
    )
    gt, args, attacks, dg = build(theory)
    undercuts = [a for a in attacks if a.kind == UNDERCUT]
    (q_arg,) = by_conclusion(args, "q(a)")
    assert [(a.attacker, a.attacked) for a in undercuts] == [
        (by_conclusion(args, "~applicable(r1)")[0].id, q_arg.id)
    ]


def test_undermine_targets_ordinary_premises_only():
    theory = Theory(
        premises=(
            Premise("o1", atom("claim", "c"), kind=ORDINARY, confidence=0.6),
            Premise("a1", atom("claim", "c", positive=False), kind=AXIOM),
        )
    )
    gt, args, attacks, dg = build(theory)
    kinds = {(a.kind, a.attacker, a.attacked) for a in attacks}
    (ordinary,) = [a for a in args.values() if a.ordinary_premise_ids]
    (axiom,) = [a for a in args.values() if not a.ordinary_premise_ids]
    # the axiom undermines the ordinary premise; nothing touches the axiom
    assert kinds == {(UNDERMINE, axiom.id, ordinary.id)}
    assert (axiom.id, ordinary.id) in dg.defeats


def test_restricted_rebut_strict_conclusions_immune():
    theory = Theory(
        premises=(
            Premise("b1", atom("base", "c"), kind=AXIOM),
            Premise("n1", atom("derived", "c", positive=False), kind=AXIOM),
        ),
        rules=(Rule("s1", STRICT, (atom("base", "c"),), atom("derived", "c")),),
    )
    gt, args, attacks, dg = build(theory)
    # the strict argument's conclusion cannot be rebutted; and the axiom
    # premise-argument cannot be undermined: no attacks at all
    assert attacks == ()


def test_rebut_lands_on_subargument_and_propagates_to_containers():
    theory = Theory(
        premises=(
            Premise("b1", atom("base", "c"), kind=AXIOM),
            Premise("n1", atom("mid", "c", positive=False), kind=AXIOM),
        ),
        rules=(
            Rule("d1", DEFEASIBLE, (atom("base", "c"),), atom("mid", "c")),
            Rule("s1", STRICT, (atom("mid", "c"),), atom("top", "c")),
        ),
    )
    gt, args, attacks, dg = build(theory)
    (mid,) = by_conclusion(args, "mid(c)")
    (top,) = by_conclusion(args, "top(c)")
    (neg,) = by_conclusion(args, "~mid(c)")
    rebuts = {(a.attacker, a.attacked, a.target) for a in attacks if a.kind == REBUT}
    assert (neg.id, mid.id, mid.id) in rebuts
    assert (neg.id, top.id, mid.id) in rebuts  # attack propagates to container
    assert (mid.id, neg.id, neg.id) not in rebuts  # axiom premise-arg immune


def test_no_repeated_rule_on_path_terminates_cycles():
    theory = Theory(
        premises=(Premise("seed", atom("p", "c")),),
        rules=(
            Rule("r1", DEFEASIBLE, (atom("p", "c"),), atom("q", "c")),
            Rule("r2", DEFEASIBLE, (atom("q", "c"),), atom("p", "c")),
        ),
    )
    gt = ground_theory(theory)
    args = construct_arguments(gt)
    # seed, q(c) via r1, p(c) via r2(r1), and nothing further (r1 repeat cut)
    assert len(args) == 3


def test_argument_cap():
    theory = Theory(
        premises=tuple(Premise(f"p{i}", atom("p", f"c{i}")) for i in range(10)),
    )
    with pytest.raises(ArgumentLimitError):
        construct_arguments(ground_theory(theory), max_arguments=5)


def test_closure_soundness_structural(paper_theory):
    gt, args, _, _ = build(paper_theory)
    rules = {r.id: r for r in gt.rules}
    for arg in args.values():
        if arg.is_premise_argument:
            continue
        rule = rules[arg.top_rule]
        sub_conclusions = [args[s].conclusion for s in arg.subarguments]
        assert sub_conclusions == list(rule.body)
        assert arg.conclusion == rule.head


def test_preference_flip_invariance_of_argument_set():
    base = simplification_theory()
    with_pref = simplification_theory(preferences={("r2", "r1")})
    args_a = set(construct_arguments(ground_theory(base)))
    args_b = set(construct_arguments(ground_theory(with_pref)))
    assert args_a == args_b


def test_weight_monotone_under_extension():
    theory = Theory(
        premises=(Premise("p1", atom("a", "c"), confidence=0.9),),
        rules=(
            Rule("r1", DEFEASIBLE, (atom("a", "c"),), atom("b", "c"), weight=0.7),
            Rule("r2", DEFEASIBLE, (atom("b", "c"),), atom("d", "c"), weight=0.95),
        ),
    )
    gt, args, _, _ = build(theory)
    (b_arg,) = by_conclusion(args, "b(c)")
    (d_arg,) = by_conclusion(args, "d(c)")
    assert d_arg.weight <= b_arg.weight


def _random_theory(rng: random.Random) -> Theory:
    n_premises = rng.randint(1, 6)
    predicates = [f"q{i}" for i in range(rng.randint(1, 4))]
    premises = tuple(
        Premise(
            f"p{i}",
            atom(rng.choice(predicates), "c", positive=rng.random() < 0.7),
            kind=AXIOM if rng.random() < 0.3 else ORDINARY,
            confidence=1.0,
        )
        for i in range(n_premises)
    )
    rules = []
    for i in range(rng.randint(0, 4)):
        body = tuple(
            atom(rng.choice(predicates), "c", positive=rng.random() < 0.7)
            for _ in range(rng.randint(0, 2))
        )
        head = atom(rng.choice(predicates + ["h"]), "c", positive=rng.random() < 0.7)
        kind = DEFEASIBLE if (rng.random() < 0.8 or not body) else STRICT
        rules.append(Rule(f"r{i}", kind, body, head))
    return Theory(name="rand", premises=premises, rules=tuple(rules))


def test_argument_sets_match_bruteforce_generator():
    rng = random.Random(23)
    checked = 0
    for _ in range(80):
        theory = _random_theory(rng)
        gt = ground_theory(theory)
        args = construct_arguments(gt)
        assert engine_argument_signatures(args) == brute_argument_signatures(gt)
        for arg in args.values():
            assert arg.weight == argument_weight(arg, gt)
        checked += 1
    assert checked == 80


def test_defeats_are_subset_of_attacks_and_undercuts_always_defeat():
    rng = random.Random(67)
    for _ in range(60):
        theory = _random_theory(rng)
        gt = ground_theory(theory)
        args = construct_arguments(gt)
        attacks = compute_attacks(args, gt)
        dg = resolve_defeats(attacks, args, gt.preference_order())
        attack_pairs = {(a.attacker, a.attacked) for a in attacks}
        assert dg.defeats <= attack_pairs
        undercut_pairs = {
            (a.attacker, a.attacked) for a in attacks if a.kind == UNDERCUT
        }
        assert undercut_pairs <= dg.defeats


def test_labels_disambiguate_collisions():
    theory = Theory(
        premises=(
            Premise("x1", atom("a", "c")),
            Premise("x2", atom("a", "d")),
        ),
        rules=(Rule("r1", DEFEASIBLE, (atom("a", "X"),), atom("b", "X")),),
    )
    gt, args, _, _ = build(theory)
    labels = sorted(argument_labels(args).values())
    assert labels == ["r1__X_c", "r1__X_d", "x1", "x2"]


def test_projection_and_exports(paper_theory_pref):
    gt, args, attacks, dg = build(paper_theory_pref)
    af, id_map = project_af(dg)
    assert af.args == frozenset(args)
    assert af.attacks == dg.defeats
    assert set(id_map) == set(args)
    forest = json.loads(arguments_to_json(args))
    assert len(forest) == 5
    assert {row["label"] for row in forest} == {"p1", "p2", "p3", "r1", "r2"}
    dot = defeat_graph_dot(dg)
    assert dot.count("->") == 1
    assert '"r2" -> "r1"' in dot


def test_literal_acceptance_unknown_literal(paper_theory):
    gt, args, attacks, dg = build(paper_theory)
    with pytest.raises(UnknownTargetError):
        literal_acceptance(dg, atom("ghost", "x"), GROUNDED, "skeptical")
