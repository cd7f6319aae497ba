"""Argumentation scheme catalogue, critical questions, and study encoding.

Six built-in schemes cover the common public-health reasoning patterns.
Instantiating a scheme adds its premises and one defeasible rule to a
theory; posing a critical question adds an ordinary premise concluding
``~applicable(rule)``, i.e. an undercutter. Clinical study records are
encoded as small theory fragments whose rule weight and credibility
premise carry the study's credibility score.
"""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass, field

from .errors import UnknownSchemeError
from .theory import (
    DEFEASIBLE,
    ORDINARY,
    Literal,
    Premise,
    Rule,
    Term,
    Theory,
    applicability_atom,
    atom,
    merge_theories,
)

EXPERT_OPINION = "expert_opinion"
CAUSE_TO_EFFECT = "cause_to_effect"
PRACTICAL_REASONING = "practical_reasoning"
ANALOGY = "analogy"
STATISTICAL_GENERALIZATION = "statistical_generalization"
ETHICAL_VALUE = "ethical_value"

SCHEME_IDS = (
    EXPERT_OPINION,
    CAUSE_TO_EFFECT,
    PRACTICAL_REASONING,
    ANALOGY,
    STATISTICAL_GENERALIZATION,
    ETHICAL_VALUE,
)


@dataclass(frozen=True)
class CriticalQuestion:
    """A challenge to a scheme instance; posing it builds an undercutter."""

    id: str
    question_text: str  # template with {Variable} slots

    def question(self, bindings: dict[str, str]) -> str:
        return self.question_text.format(**bindings)

    def build_undercutter(
        self, instance: "SchemeInstance", confidence: float
    ) -> Premise:
        return Premise(
            id=f"{instance.rule_id}__cq_{self.id}",
            literal=applicability_atom(instance.rule_id, positive=False),
            kind=ORDINARY,
            confidence=confidence,
            source=f"critical question: {self.question(instance.binding_map)}",
        )


@dataclass(frozen=True)
class Scheme:
    """A reasoning pattern: premise templates, a conclusion template,
    critical questions, and per-audience phrasing templates."""

    id: str
    variables: tuple[Term, ...]
    premise_templates: tuple[Literal, ...]
    conclusion_template: Literal
    critical_questions: tuple[CriticalQuestion, ...]
    audience_text_templates: dict[str, str] = field(default_factory=dict)

    def critical_question(self, cq_id: str) -> CriticalQuestion:
        for cq in self.critical_questions:
            if cq.id == cq_id:
                return cq
        raise UnknownSchemeError(f"scheme '{self.id}' has no critical question '{cq_id}'")


@dataclass(frozen=True)
class SchemeInstance:
    """A scheme applied to concrete constants inside a theory."""

    scheme_id: str
    bindings: tuple[tuple[str, str], ...]  # (variable, constant), sorted
    premise_ids: tuple[str, ...]
    rule_id: str
    confidence: float

    @property
    def binding_map(self) -> dict[str, str]:
        return dict(self.bindings)


def _scheme(scheme_id, variables, premises, conclusion, cqs, audience):
    return Scheme(
        id=scheme_id,
        variables=tuple(Term(v) for v in variables),
        premise_templates=tuple(premises),
        conclusion_template=conclusion,
        critical_questions=tuple(cqs),
        audience_text_templates=dict(audience),
    )


def builtin_schemes() -> list[Scheme]:
    """The six built-in schemes, in catalogue order."""
    return [
        _scheme(
            EXPERT_OPINION,
            ("E", "D", "P"),
            (atom("is_expert", "E", "D"), atom("asserts", "E", "P"), atom("relevant", "P", "D")),
            atom("believe", "P"),
            (
                CriticalQuestion("expertise", "Is {E} a genuine expert in {D}?"),
                CriticalQuestion("bias", "Is {E} biased or conflicted about {P}?"),
                CriticalQuestion("consensus", "Do other experts in {D} agree that {P}?"),
            ),
            {
                "lay": "Experts like {E} say that {P}.",
                "decision_maker": "{E} advises that {P}.",
                "professional": "{E}, an authority on {D}, asserts that {P}.",
            },
        ),
        _scheme(
            CAUSE_TO_EFFECT,
            ("A", "E"),
            (atom("action", "A"), atom("causes", "A", "E")),
            atom("expect", "E"),
            (
                CriticalQuestion("mechanism", "Does {A} actually cause {E}?"),
                CriticalQuestion("interference", "Could other factors prevent {E} despite {A}?"),
            ),
            {
                "lay": "{A} leads to {E}.",
                "decision_maker": "Expect {E} as a consequence of {A}.",
                "professional": "Given that {A} causes {E}, {E} is to be expected.",
            },
        ),
        _scheme(
            PRACTICAL_REASONING,
            ("G", "A"),
            (atom("goal", "G"), atom("action", "A"), atom("promotes", "A", "G")),
            atom("do", "A"),
            (
                CriticalQuestion("side_effects", "Does {A} have side effects that outweigh {G}?"),
                CriticalQuestion("alternatives", "Is there a better action than {A} to achieve {G}?"),
            ),
            {
                "lay": "Doing {A} helps achieve {G}.",
                "decision_maker": "To achieve {G}, implement {A}.",
                "professional": "Action {A} promotes goal {G}; therefore {A} is indicated.",
            },
        ),
        _scheme(
            ANALOGY,
            ("S", "T", "A"),
            (atom("similar", "S", "T"), atom("worked", "A", "S")),
            atom("works", "A", "T"),
            (
                CriticalQuestion("differences", "Are there relevant differences between {S} and {T}?"),
            ),
            {
                "lay": "{A} worked for {S}, and {T} is similar.",
                "decision_maker": "{A} succeeded in {S}; {T} is comparable.",
                "professional": "By analogy with {S}, {A} is expected to work for {T}.",
            },
        ),
        _scheme(
            STATISTICAL_GENERALIZATION,
            ("S", "P", "O"),
            (atom("sample_of", "S", "P"), atom("observed_in", "O", "S")),
            atom("holds_generally", "O", "P"),
            (
                CriticalQuestion("representative", "Is {S} representative of {P}?"),
            ),
            {
                "lay": "{O} was seen in many cases like {P}.",
                "decision_maker": "{O} holds across {P} on the available data.",
                "professional": "{O} observed in sample {S} generalizes to {P}.",
            },
        ),
        _scheme(
            ETHICAL_VALUE,
            ("V", "A"),
            (atom("value", "V"), atom("action", "A"), atom("upholds", "A", "V")),
            atom("ought", "A"),
            (
                CriticalQuestion("competing_values", "Does {A} conflict with values other than {V}?"),
            ),
            {
                "lay": "{A} is the right thing to do: it protects {V}.",
                "decision_maker": "{A} upholds {V}.",
                "professional": "Action {A} upholds the value {V}; it ought to be taken.",
            },
        ),
    ]


_SCHEMES_BY_ID = {s.id: s for s in builtin_schemes()}


def get_scheme(scheme_id: str) -> Scheme:
    try:
        return _SCHEMES_BY_ID[scheme_id]
    except KeyError:
        raise UnknownSchemeError(f"unknown scheme '{scheme_id}'") from None


def _instance_base_id(scheme: Scheme, bindings: dict[str, str]) -> str:
    values = "__".join(bindings[v.name] for v in scheme.variables)
    return f"{scheme.id}__{values}"


def instantiate_scheme(
    theory: Theory,
    scheme_id: str,
    bindings: dict[str, str],
    confidence: float = 1.0,
) -> tuple[Theory, SchemeInstance]:
    """Extend the theory with the scheme's premises and rule.

    Ids are deterministic in the bindings, so re-instantiating with the
    same bindings is a no-op. The original theory is never mutated.
    """
    scheme = get_scheme(scheme_id)
    missing = [v.name for v in scheme.variables if v.name not in bindings]
    if missing:
        raise UnknownSchemeError(
            f"incomplete bindings for scheme '{scheme_id}': missing {', '.join(missing)}"
        )
    base = _instance_base_id(scheme, bindings)
    premise_ids = tuple(f"{base}__p{k + 1}" for k in range(len(scheme.premise_templates)))
    rule_id = base

    premises = [
        Premise(
            id=pid,
            literal=template.substitute(bindings),
            kind=ORDINARY,
            confidence=confidence,
            source=f"scheme {scheme_id}",
        )
        for pid, template in zip(premise_ids, scheme.premise_templates)
    ]
    rule = Rule(
        id=rule_id,
        kind=DEFEASIBLE,
        body=tuple(template.substitute(bindings) for template in scheme.premise_templates),
        head=scheme.conclusion_template.substitute(bindings),
        weight=1.0,
        scheme_tag=scheme_id,
    )
    fragment = Theory(
        name=theory.name,
        premises=tuple(premises),
        rules=(rule,),
    )
    extended = merge_theories(theory, fragment)
    instance = SchemeInstance(
        scheme_id=scheme_id,
        bindings=tuple(sorted((v.name, bindings[v.name]) for v in scheme.variables)),
        premise_ids=premise_ids,
        rule_id=rule_id,
        confidence=confidence,
    )
    return extended, instance


def _recover_bindings(rule: Rule, scheme: Scheme) -> dict[str, str] | None:
    templates = (*scheme.premise_templates, scheme.conclusion_template)
    actual = (*rule.body, rule.head)
    if len(templates) != len(actual):
        return None
    binding: dict[str, str] = {}
    for tmpl, lit in zip(templates, actual):
        if (
            tmpl.predicate != lit.predicate
            or tmpl.positive != lit.positive
            or len(tmpl.args) != len(lit.args)
        ):
            return None
        for t_arg, l_arg in zip(tmpl.args, lit.args):
            if t_arg.is_variable:
                bound = binding.setdefault(t_arg.name, l_arg.name)
                if bound != l_arg.name:
                    return None
            elif t_arg.name != l_arg.name:
                return None
    return binding


def scheme_instances(theory: Theory) -> list[SchemeInstance]:
    """Recover scheme instances from scheme-tagged rules in the theory."""
    instances = []
    by_literal = {}
    for p in theory.premises:
        by_literal.setdefault(p.literal, p)
    for rule in theory.rules:
        if rule.scheme_tag is None or rule.scheme_tag not in _SCHEMES_BY_ID:
            continue
        scheme = _SCHEMES_BY_ID[rule.scheme_tag]
        bindings = _recover_bindings(rule, scheme)
        if bindings is None:
            continue
        premise_ids = []
        confidences = []
        for template in scheme.premise_templates:
            premise = by_literal.get(template.substitute(bindings))
            if premise is not None:
                premise_ids.append(premise.id)
                confidences.append(premise.confidence)
        instances.append(
            SchemeInstance(
                scheme_id=scheme.id,
                bindings=tuple(sorted(bindings.items())),
                premise_ids=tuple(premise_ids),
                rule_id=rule.id,
                confidence=min(confidences) if confidences else 1.0,
            )
        )
    instances.sort(key=lambda inst: inst.rule_id)
    return instances


def apply_critical_question(
    theory: Theory,
    instance: SchemeInstance,
    cq_id: str,
    evidence_confidence: float,
) -> Theory:
    """Add the undercutter premise for a critical question (idempotent)."""
    if not theory.has_id(instance.rule_id):
        raise UnknownSchemeError(f"instance rule '{instance.rule_id}' not in theory")
    scheme = get_scheme(instance.scheme_id)
    cq = scheme.critical_question(cq_id)
    undercutter = cq.build_undercutter(instance, evidence_confidence)
    if theory.has_id(undercutter.id):
        return theory
    return theory.replace(premises=theory.premises + (undercutter,))


# --- PICO study encoding ---------------------------------------------------


@dataclass(frozen=True)
class StudyRecord:
    """A structured clinical-evidence record (population, intervention,
    comparison, outcome sign, credibility, sample size)."""

    id: str
    population: str
    intervention: str
    comparison: str
    outcome_positive: bool
    credibility: float
    sample_size: int

    def validate(self):
        if not self.id or not self.population or not self.intervention:
            raise ValueError("study id, population, and intervention must be nonempty")
        if not 0.0 <= self.credibility <= 1.0:
            raise ValueError(f"credibility out of [0,1]: {self.credibility}")
        if self.sample_size <= 0:
            raise ValueError(f"sample size must be positive: {self.sample_size}")


def _slug(label: str) -> str:
    text = re.sub(r"[^A-Za-z0-9_]+", "_", label.strip()).strip("_").lower()
    if not text or not text[0].isalpha():
        text = f"x_{text}" if text else "x"
    return text


def study_rule_id(record: StudyRecord) -> str:
    return f"{_slug(record.id)}__rule"


def encode_study(record: StudyRecord) -> Theory:
    """Encode one study as premises P1..P4 plus a defeasible rule.

    Credibility is carried on the P4 premise confidence and on the rule
    weight; a negative outcome flips both the P3 sign and the rule head.
    """
    record.validate()
    sid = _slug(record.id)
    population = _slug(record.population)
    intervention = _slug(record.intervention)
    outcome_lit = atom("outcome_observed", sid, positive=record.outcome_positive)
    head = atom("recommend", intervention, population, positive=record.outcome_positive)
    premises = (
        Premise(
            id=f"{sid}__p1",
            literal=atom("population_match", sid, population),
            source=f"study {record.id}: population {record.population}",
        ),
        Premise(
            id=f"{sid}__p2",
            literal=atom("intervention_applied", sid, intervention),
            source=f"study {record.id}: {record.intervention} vs {record.comparison}",
        ),
        Premise(
            id=f"{sid}__p3",
            literal=outcome_lit,
            source=f"study {record.id}: outcome "
            + ("observed" if record.outcome_positive else "not observed"),
        ),
        Premise(
            id=f"{sid}__p4",
            literal=atom("credible", sid),
            confidence=record.credibility,
            source=f"study {record.id}: credibility {record.credibility}, n={record.sample_size}",
        ),
    )
    rule = Rule(
        id=study_rule_id(record),
        kind=DEFEASIBLE,
        body=tuple(p.literal for p in premises),
        head=head,
        weight=record.credibility,
    )
    return Theory(name=sid, premises=premises, rules=(rule,))


PREFER_FIRST = "first"
PREFER_SECOND = "second"
INCOMPARABLE = "incomparable"


def study_preference(a: StudyRecord, b: StudyRecord) -> str:
    """Lexicographic: higher credibility wins, ties broken by sample size."""
    if a.credibility != b.credibility:
        return PREFER_FIRST if a.credibility > b.credibility else PREFER_SECOND
    if a.sample_size != b.sample_size:
        return PREFER_FIRST if a.sample_size > b.sample_size else PREFER_SECOND
    return INCOMPARABLE


def study_preference_pairs(a: StudyRecord, b: StudyRecord) -> frozenset[tuple[str, str]]:
    """The verdict as theory preference pairs over the generated rules."""
    verdict = study_preference(a, b)
    if verdict == PREFER_FIRST:
        return frozenset({(study_rule_id(a), study_rule_id(b))})
    if verdict == PREFER_SECOND:
        return frozenset({(study_rule_id(b), study_rule_id(a))})
    return frozenset()


def encode_studies(records, name: str = "studies") -> Theory:
    """Merge study fragments and add all pairwise preference verdicts."""
    theory = Theory(name=name)
    for record in records:
        theory = merge_theories(theory, encode_study(record), name=name)
    prefs = set(theory.preferences)
    records = list(records)
    for i, a in enumerate(records):
        for b in records[i + 1 :]:
            prefs |= study_preference_pairs(a, b)
    return theory.replace(preferences=frozenset(prefs))


_POSITIVE = {"positive", "observed", "true", "1", "yes"}
_NEGATIVE = {"negative", "not_observed", "false", "0", "no"}


def _parse_outcome(value: str) -> bool:
    token = value.strip().lower()
    if token in _POSITIVE:
        return True
    if token in _NEGATIVE:
        return False
    raise ValueError(f"unrecognized outcome value: {value!r}")


def studies_from_csv(text: str) -> list[StudyRecord]:
    """Rows: id, population, intervention, comparison, outcome,
    credibility, sample_size (with a header line)."""
    reader = csv.DictReader(io.StringIO(text))
    records = []
    for row in reader:
        record = StudyRecord(
            id=row["id"].strip(),
            population=row["population"].strip(),
            intervention=row["intervention"].strip(),
            comparison=row["comparison"].strip(),
            outcome_positive=_parse_outcome(row["outcome"]),
            credibility=float(row["credibility"]),
            sample_size=int(row["sample_size"]),
        )
        record.validate()
        records.append(record)
    return records


def studies_from_json(text: str) -> list[StudyRecord]:
    """A JSON array of objects with the CSV column names."""
    records = []
    for row in json.loads(text):
        outcome = row["outcome"]
        positive = outcome if isinstance(outcome, bool) else _parse_outcome(str(outcome))
        record = StudyRecord(
            id=str(row["id"]),
            population=str(row["population"]),
            intervention=str(row["intervention"]),
            comparison=str(row.get("comparison", "")),
            outcome_positive=positive,
            credibility=float(row["credibility"]),
            sample_size=int(row["sample_size"]),
        )
        record.validate()
        records.append(record)
    return records
