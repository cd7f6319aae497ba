"""Abstract argumentation: frameworks, labellings, and acceptance.

Semantics are computed on IN/OUT/UNDEC labellings. A labelling is a legal
complete labelling when every argument is IN iff all its attackers are
OUT, and OUT iff some attacker is IN. Grounded semantics is the unique
minimal complete labelling, found by fixpoint iteration; complete,
preferred, and stable labellings are enumerated by backtracking with
constraint pruning. All results are deterministically ordered.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import SizeCapError, UnknownTargetError

IN = "IN"
OUT = "OUT"
UNDEC = "UNDEC"

GROUNDED = "grounded"
COMPLETE = "complete"
PREFERRED = "preferred"
STABLE = "stable"

SEMANTICS = (GROUNDED, COMPLETE, PREFERRED, STABLE)

DEFAULT_ENUMERATION_CAP = 25


@dataclass(frozen=True)
class ArgumentationFramework:
    """A finite set of argument ids with a binary attack relation."""

    args: frozenset[str]
    attacks: frozenset[tuple[str, str]]

    def __post_init__(self):
        object.__setattr__(self, "args", frozenset(self.args))
        object.__setattr__(
            self, "attacks", frozenset(tuple(a) for a in self.attacks)
        )
        for attacker, attacked in self.attacks:
            if attacker not in self.args or attacked not in self.args:
                raise ValueError(
                    f"attack endpoints must be arguments: ({attacker}, {attacked})"
                )

    def attackers_of(self, arg: str) -> tuple[str, ...]:
        return tuple(sorted(a for a, b in self.attacks if b == arg))

    def sorted_args(self) -> tuple[str, ...]:
        return tuple(sorted(self.args))


@dataclass
class Labelling:
    """Total IN/OUT/UNDEC assignment over a framework's arguments."""

    assignment: dict[str, str]

    def label(self, arg: str) -> str:
        return self.assignment[arg]

    def members(self, label: str) -> tuple[str, ...]:
        return tuple(sorted(a for a, l in self.assignment.items() if l == label))

    @property
    def in_set(self) -> tuple[str, ...]:
        return self.members(IN)

    @property
    def out_set(self) -> tuple[str, ...]:
        return self.members(OUT)

    @property
    def undec_set(self) -> tuple[str, ...]:
        return self.members(UNDEC)

    def sort_key(self) -> tuple:
        return (self.in_set, self.out_set)

    def is_legal_complete(self, af: ArgumentationFramework) -> bool:
        if set(self.assignment) != set(af.args):
            return False
        for arg in af.args:
            attackers = [self.assignment[a] for a in af.attackers_of(arg)]
            all_out = all(l == OUT for l in attackers)
            some_in = any(l == IN for l in attackers)
            label = self.assignment[arg]
            if label == IN and not all_out:
                return False
            if label == OUT and not some_in:
                return False
            if label == UNDEC and (all_out or some_in):
                return False
        return True


@dataclass(frozen=True)
class Extension:
    """The IN set of a labelling."""

    members: frozenset[str]


def grounded_labelling(af: ArgumentationFramework) -> Labelling:
    """Fixpoint iteration: unattacked-by-non-OUT arguments become IN,
    arguments with an IN attacker become OUT, the remainder is UNDEC."""
    assignment: dict[str, str] = {}
    attackers = {a: af.attackers_of(a) for a in af.args}
    changed = True
    while changed:
        changed = False
        for arg in af.sorted_args():
            if arg in assignment:
                continue
            labs = [assignment.get(b) for b in attackers[arg]]
            if all(l == OUT for l in labs):
                assignment[arg] = IN
                changed = True
            elif any(l == IN for l in labs):
                assignment[arg] = OUT
                changed = True
    for arg in af.args:
        assignment.setdefault(arg, UNDEC)
    return Labelling(assignment)


def _complete_labellings(af: ArgumentationFramework) -> list[Labelling]:
    """Backtracking enumeration of all legal complete labellings.

    Seeds with the grounded labelling's forced IN/OUT assignments (every
    complete labelling extends them) and branches over the rest with
    partial-consistency pruning; leaves are re-checked for full legality.
    """
    order = af.sorted_args()
    attackers = {a: af.attackers_of(a) for a in order}
    attackees = {a: tuple(sorted(b for x, b in af.attacks if x == a)) for a in order}

    grounded = grounded_labelling(af)
    forced = {a: l for a, l in grounded.assignment.items() if l != UNDEC}
    free = [a for a in order if a not in forced]

    results: list[Labelling] = []
    assignment = dict(forced)

    def consistent(arg: str, label: str) -> bool:
        if label == IN:
            for b in attackers[arg]:
                if assignment.get(b) in (IN, UNDEC):
                    return False
                if b == arg:
                    return False
            for c in attackees[arg]:
                if assignment.get(c) in (IN, UNDEC):
                    return False
        elif label == OUT:
            labs = [assignment.get(b) for b in attackers[arg]]
            if all(l in (OUT, UNDEC) and l is not None for l in labs):
                return False
        else:  # UNDEC
            for b in attackers[arg]:
                if assignment.get(b) == IN:
                    return False
            labs = [assignment.get(b) for b in attackers[arg]]
            if labs and all(l == OUT for l in labs):
                return False
            if not attackers[arg]:
                return False
            for c in attackees[arg]:
                if assignment.get(c) == IN:
                    return False
        return True

    def recurse(i: int):
        if i == len(free):
            candidate = Labelling(dict(assignment))
            if candidate.is_legal_complete(af):
                results.append(candidate)
            return
        arg = free[i]
        for label in (IN, OUT, UNDEC):
            if consistent(arg, label):
                assignment[arg] = label
                recurse(i + 1)
                del assignment[arg]

    recurse(0)
    results.sort(key=lambda l: l.sort_key())
    return results


def enumerate_labellings(
    af: ArgumentationFramework,
    semantics: str,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> list[Labelling]:
    """All labellings of the given semantics, sorted by IN set."""
    if semantics == GROUNDED:
        return [grounded_labelling(af)]
    if semantics not in (COMPLETE, PREFERRED, STABLE):
        raise ValueError(f"unknown semantics '{semantics}'")
    if len(af.args) > cap:
        raise SizeCapError(
            f"exhaustive enumeration capped at {cap} arguments ({len(af.args)} given)"
        )
    complete = _complete_labellings(af)
    if semantics == COMPLETE:
        return complete
    if semantics == STABLE:
        return [l for l in complete if not l.undec_set]
    in_sets = [set(l.in_set) for l in complete]
    preferred = [
        l
        for i, l in enumerate(complete)
        if not any(j != i and in_sets[i] < in_sets[j] for j in range(len(complete)))
    ]
    return preferred


CREDULOUS = "credulous"
SKEPTICAL = "skeptical"


def acceptance(
    af: ArgumentationFramework,
    arg: str,
    semantics: str = GROUNDED,
    mode: str = SKEPTICAL,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> bool:
    """Is the argument IN in some (credulous) or all (skeptical) labellings?

    Skeptical acceptance over an empty labelling set (stable semantics may
    have none) is vacuously true; credulous is false.
    """
    if arg not in af.args:
        raise UnknownTargetError(f"unknown argument id '{arg}'")
    if mode not in (CREDULOUS, SKEPTICAL):
        raise ValueError(f"unknown acceptance mode '{mode}'")
    labellings = enumerate_labellings(af, semantics, cap=cap)
    if mode == CREDULOUS:
        return any(l.label(arg) == IN for l in labellings)
    return all(l.label(arg) == IN for l in labellings)


def to_tgf(af: ArgumentationFramework) -> str:
    """Export as the competition-style trivial format: ``p af <n>`` then
    one ``<attacker> <attacked>`` index pair (1-based) per line."""
    order = af.sorted_args()
    index = {a: i + 1 for i, a in enumerate(order)}
    lines = [f"p af {len(order)}"]
    for attacker, attacked in sorted(af.attacks):
        lines.append(f"{index[attacker]} {index[attacked]}")
    return "\n".join(lines) + "\n"


def from_tgf(text: str) -> ArgumentationFramework:
    """Parse the trivial format; arguments get ids "1".."n"."""
    n = None
    attacks: set[tuple[str, str]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("p af"):
            if n is not None:
                raise ValueError(f"line {lineno}: duplicate header")
            parts = line.split()
            if len(parts) != 3 or not parts[2].isdigit():
                raise ValueError(f"line {lineno}: malformed header")
            n = int(parts[2])
            continue
        parts = line.split()
        if n is None or len(parts) != 2:
            raise ValueError(f"line {lineno}: expected attack pair")
        a, b = parts
        if not (a.isdigit() and b.isdigit() and 1 <= int(a) <= n and 1 <= int(b) <= n):
            raise ValueError(f"line {lineno}: attack endpoints out of range")
        attacks.add((a, b))
    if n is None:
        raise ValueError("missing 'p af <n>' header")
    return ArgumentationFramework(
        args=frozenset(str(i) for i in range(1, n + 1)), attacks=frozenset(attacks)
    )
