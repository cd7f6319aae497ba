import random

import pytest

from phax.errors import GroundingLimitError, TheoryValidationError
from phax.grounding import ground_theory
from phax.theory import (
    DEFEASIBLE,
    Premise,
    Rule,
    Theory,
    atom,
    serialize_theory,
    validate_theory,
)

from oracles import naive_ground_instance_keys


def test_grounding_is_identity_on_ground_theory(paper_theory_pref):
    gt = ground_theory(paper_theory_pref)
    assert serialize_theory(gt) == serialize_theory(paper_theory_pref)
    assert gt.rule_parents == {"r1": "r1", "r2": "r2"}


def test_two_variable_rule_over_two_constants_gives_four_instances():
    """p/q atoms cover both constants, so every substitution of {X,Y} over
    {mi, ha} is emitted: 2**2 = 4 instances (hand enumeration)."""
    theory = Theory(
        premises=(
            Premise("f1", atom("p", "mi")),
            Premise("f2", atom("p", "ha")),
            Premise("g1", atom("q", "mi")),
            Premise("g2", atom("q", "ha")),
        ),
        rules=(Rule("r1", DEFEASIBLE, (atom("p", "X"), atom("q", "Y")), atom("r", "X", "Y")),),
    )
    gt = ground_theory(theory)
    instance_ids = [r.id for r in gt.rules]
    assert len(instance_ids) == 4
    assert set(instance_ids) == {
        "r1__X_mi__Y_mi",
        "r1__X_mi__Y_ha",
        "r1__X_ha__Y_mi",
        "r1__X_ha__Y_ha",
    }
    assert all(r.is_ground for r in gt.rules)


def test_practical_reasoning_rule_two_actions_one_goal():
    """goal/action/promotes atoms admit exactly the two (G, A) bindings
    that match the premises (hand enumeration)."""
    theory = Theory(
        premises=(
            Premise("g", atom("goal", "icu_relief")),
            Premise("a1", atom("action", "lockdown")),
            Premise("a2", atom("action", "masking")),
            Premise("m1", atom("promotes", "lockdown", "icu_relief")),
            Premise("m2", atom("promotes", "masking", "icu_relief")),
        ),
        rules=(
            Rule(
                "pr",
                DEFEASIBLE,
                (atom("goal", "G"), atom("action", "A"), atom("promotes", "A", "G")),
                atom("do", "A"),
            ),
        ),
    )
    gt = ground_theory(theory)
    assert len(gt.rules) == 2
    heads = sorted(str(r.head) for r in gt.rules)
    assert heads == ["do(lockdown)", "do(masking)"]


def test_presumption_with_head_variable_ranges_over_constants():
    theory = Theory(
        constants=frozenset({"a", "b", "c"}),
        rules=(Rule("d1", DEFEASIBLE, (), atom("assumed", "X")),),
    )
    gt = ground_theory(theory)
    assert sorted(str(r.head) for r in gt.rules) == [
        "assumed(a)",
        "assumed(b)",
        "assumed(c)",
    ]


def test_chained_variable_rules_reach_fixpoint():
    theory = Theory(
        premises=(Premise("s", atom("base", "a")),),
        rules=(
            Rule("r1", DEFEASIBLE, (atom("base", "X"),), atom("step1", "X")),
            Rule("r2", DEFEASIBLE, (atom("step1", "X"),), atom("step2", "X")),
        ),
    )
    gt = ground_theory(theory)
    assert {str(r.head) for r in gt.rules} == {"step1(a)", "step2(a)"}


def test_grounding_rejects_invalid_theory():
    theory = Theory(premises=(Premise("p1", atom("p", "X")),))
    with pytest.raises(TheoryValidationError):
        ground_theory(theory)


def test_grounding_cap():
    theory = Theory(
        constants=frozenset({f"c{i}" for i in range(30)}),
        rules=(Rule("d1", DEFEASIBLE, (), atom("assumed", "X", "Y")),),
    )
    with pytest.raises(GroundingLimitError):
        ground_theory(theory, max_instances=100)


def test_preferences_expand_to_instances():
    theory = Theory(
        premises=(
            Premise("f1", atom("p", "a")),
            Premise("f2", atom("p", "b")),
            Premise("q1", atom("q", "a")),
        ),
        rules=(
            Rule("r1", DEFEASIBLE, (atom("p", "X"),), atom("s", "X")),
            Rule("r2", DEFEASIBLE, (atom("q", "X"),), atom("s", "X", positive=False)),
        ),
        preferences=frozenset({("r2", "r1")}),
    )
    gt = ground_theory(theory)
    assert gt.preferences == frozenset(
        {("r2__X_a", "r1__X_a"), ("r2__X_a", "r1__X_b")}
    )
    assert validate_theory(gt) == []
    assert gt.parent_rule_id("r1__X_a") == "r1"


def test_preference_to_vanished_rule_is_dropped():
    theory = Theory(
        premises=(Premise("f1", atom("p", "a")),),
        rules=(
            Rule("r1", DEFEASIBLE, (atom("p", "X"),), atom("s", "X")),
            Rule("r2", DEFEASIBLE, (atom("missing", "X"),), atom("t", "X")),
        ),
        preferences=frozenset({("r2", "r1")}),
    )
    gt = ground_theory(theory)
    assert gt.preferences == frozenset()


def _random_groundable_theory(rng: random.Random) -> Theory:
    constants = [f"c{i}" for i in range(rng.randint(1, 4))]
    unary = [f"u{i}" for i in range(rng.randint(1, 3))]
    binary = [f"b{i}" for i in range(rng.randint(0, 2))]
    premises = []
    pid = 0
    for _ in range(rng.randint(1, 6)):
        pid += 1
        if binary and rng.random() < 0.4:
            premises.append(
                Premise(
                    f"p{pid}",
                    atom(rng.choice(binary), rng.choice(constants), rng.choice(constants)),
                )
            )
        else:
            premises.append(Premise(f"p{pid}", atom(rng.choice(unary), rng.choice(constants))))
    rules = []
    variables = ["X", "Y", "Z"]
    for i in range(rng.randint(1, 3)):
        n_vars = rng.randint(1, min(3, len(variables)))
        used = variables[:n_vars]
        body = []
        for _ in range(rng.randint(1, 2)):
            if binary and rng.random() < 0.4:
                body.append(atom(rng.choice(binary), rng.choice(used), rng.choice(used)))
            else:
                body.append(atom(rng.choice(unary), rng.choice(used)))
        head = atom(rng.choice(unary + [f"h{i}"]), rng.choice(used))
        rules.append(Rule(f"r{i}", DEFEASIBLE, tuple(body), head))
    return Theory(
        name="random",
        constants=frozenset(constants),
        premises=tuple(premises),
        rules=tuple(rules),
    )


def test_instance_sets_match_bruteforce_oracle():
    rng = random.Random(7)
    for _ in range(120):
        theory = _random_groundable_theory(rng)
        if validate_theory(theory):
            continue
        gt = ground_theory(theory)
        engine_keys = set()
        for rule in gt.rules:
            parent = gt.rule_parents[rule.id]
            original = theory.rule(parent)
            binding = {}
            for orig_lit, ground_lit in zip(
                (*original.body, original.head), (*rule.body, rule.head)
            ):
                for orig_term, ground_term in zip(orig_lit.args, ground_lit.args):
                    if orig_term.is_variable:
                        binding[orig_term.name] = ground_term.name
            engine_keys.add((parent, tuple(sorted(binding.items()))))
        assert engine_keys == naive_ground_instance_keys(theory)
