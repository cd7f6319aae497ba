import sys
from importlib import resources
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from phax.theory import (
    AXIOM,
    DEFEASIBLE,
    ORDINARY,
    Premise,
    Rule,
    Theory,
    atom,
)


def fixture_text(name: str) -> str:
    return (
        resources.files("phax.fixtures").joinpath(name).read_text(encoding="utf-8")
    )


def simplification_theory(preferences=()) -> Theory:
    """The term-simplification knowledge base: premises p1-p3 and the two
    competing rules about preferring the simpler term."""
    return Theory(
        name="simplification",
        premises=(
            Premise("p1", atom("frequency_gt", "heart_attack", "myocardial_infarction"),
                    kind=ORDINARY, confidence=0.95, jargon=0.2),
            Premise("p2", atom("semantic_match", "myocardial_infarction", "heart_attack"),
                    kind=ORDINARY, confidence=0.9, jargon=0.4),
            Premise("p3", atom("ambiguity", "heart_attack", "clinical"),
                    kind=ORDINARY, confidence=0.8, jargon=0.5),
        ),
        rules=(
            Rule("r1", DEFEASIBLE,
                 (atom("frequency_gt", "heart_attack", "myocardial_infarction"),
                  atom("semantic_match", "myocardial_infarction", "heart_attack")),
                 atom("prefer", "heart_attack")),
            Rule("r2", DEFEASIBLE,
                 (atom("ambiguity", "heart_attack", "clinical"),),
                 atom("prefer", "heart_attack", positive=False), weight=0.9),
        ),
        preferences=frozenset(preferences),
    )


def axiom_only_theory() -> Theory:
    return Theory(
        name="axioms",
        premises=(
            Premise("a1", atom("fact_one", "c"), kind=AXIOM),
            Premise("a2", atom("fact_two", "c"), kind=AXIOM),
        ),
    )


@pytest.fixture
def paper_theory():
    return simplification_theory()


@pytest.fixture
def paper_theory_pref():
    return simplification_theory(preferences={("r2", "r1")})
