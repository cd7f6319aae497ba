"""User profiles: expertise, lexical tolerance, cognitive depth.

The expertise score selects the audience band used by the renderer:
below 0.34 lay, below 0.67 decision_maker, otherwise professional.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

LAY = "lay"
DECISION_MAKER = "decision_maker"
PROFESSIONAL = "professional"


def band_for(expertise: float) -> str:
    if expertise < 0.34:
        return LAY
    if expertise < 0.67:
        return DECISION_MAKER
    return PROFESSIONAL


@dataclass(frozen=True)
class UserProfile:
    name: str
    e: float  # domain expertise
    l: float  # lexical tolerance
    c: float  # cognitive depth
    preferred_schemes: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self):
        for label, value in (("e", self.e), ("l", self.l), ("c", self.c)):
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"profile field {label} out of [0,1]: {value}")
        object.__setattr__(self, "preferred_schemes", frozenset(self.preferred_schemes))

    @property
    def band(self) -> str:
        return band_for(self.e)

    def to_json(self) -> str:
        return json.dumps(
            {
                "name": self.name,
                "e": self.e,
                "l": self.l,
                "c": self.c,
                "preferred_schemes": sorted(self.preferred_schemes),
            },
            indent=2,
        )


def profile_from_json(text: str) -> UserProfile:
    data = json.loads(text)
    return profile_from_dict(data)


def profile_from_dict(data: dict) -> UserProfile:
    return UserProfile(
        name=str(data.get("name", "anonymous")),
        e=float(data["e"]),
        l=float(data["l"]),
        c=float(data["c"]),
        preferred_schemes=frozenset(data.get("preferred_schemes", ())),
    )


BUILTIN_PROFILES = {
    "patient": UserProfile(
        name="patient",
        e=0.1,
        l=0.2,
        c=0.3,
        preferred_schemes=frozenset({"cause_to_effect"}),
    ),
    "clinician": UserProfile(
        name="clinician",
        e=0.9,
        l=0.9,
        c=0.8,
        preferred_schemes=frozenset({"statistical_generalization"}),
    ),
    "policymaker": UserProfile(
        name="policymaker",
        e=0.5,
        l=0.6,
        c=0.5,
        preferred_schemes=frozenset({"practical_reasoning", "ethical_value"}),
    ),
}
