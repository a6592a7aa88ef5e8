"""Domain types for probabilistic arguments: formulas, assessments, arguments, intervals."""

from __future__ import annotations

import itertools
import re
from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from config import DEFAULT_CONFIG

# Rationals are plain Fractions: always in lowest terms with a positive denominator.
Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

# Words the argument language reserves; they can never name an atom.
KEYWORDS = frozenset({"not", "and", "or", "true", "false", "in", "exactly_one", "at_most_one"})


class ArgStrengthError(Exception):
    """Base class for every error raised by the library."""
    pass


class VocabularyError(ArgStrengthError):
    """A formula mentions an atom the world does not assign."""
    pass


class MalformedIntervalError(ArgStrengthError, ValueError):
    """Probability bounds outside 0 <= lower <= upper <= 1."""
    pass


def to_rational(value: Rational | int | str) -> Fraction:
    """
    Convert a number or numeric text to an exact Fraction.

    Decimal text is converted exactly ("0.33" -> 33/100); floats are rejected
    because their binary value is not the number the user wrote.
    """
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a string or Fraction instead")
    return Fraction(value)


# --- Formulas ---------------------------------------------------------------


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Top:
    """The tautology."""


@dataclass(frozen=True)
class Bottom:
    """The contradiction."""


@dataclass(frozen=True)
class Not:
    operand: Formula


@dataclass(frozen=True)
class And:
    operands: tuple[Formula, ...]


@dataclass(frozen=True)
class Or:
    operands: tuple[Formula, ...]


@dataclass(frozen=True)
class Implies:
    """Material implication; conditional probability lives in ConditionalEvent."""
    antecedent: Formula
    consequent: Formula


Formula = Union[Atom, Top, Bottom, Not, And, Or, Implies]

TRUE = Top()
FALSE = Bottom()


def conjunction(formulas: Sequence[Formula]) -> Formula:
    """Conjoin formulas, collapsing the empty and singleton cases."""
    if not formulas:
        return TRUE
    if len(formulas) == 1:
        return formulas[0]
    return And(tuple(formulas))


def disjunction(formulas: Sequence[Formula]) -> Formula:
    """Disjoin formulas, collapsing the empty and singleton cases."""
    if not formulas:
        return FALSE
    if len(formulas) == 1:
        return formulas[0]
    return Or(tuple(formulas))


def at_most_one(atoms: Sequence[str]) -> Formula:
    """No two of the atoms hold together."""
    return conjunction([Not(And((Atom(a), Atom(b)))) for a, b in itertools.combinations(atoms, 2)])


def exactly_one(atoms: Sequence[str]) -> Formula:
    """The atoms form a partition: one and only one holds."""
    parts = [disjunction([Atom(a) for a in atoms])]
    parts += [Not(And((Atom(a), Atom(b)))) for a, b in itertools.combinations(atoms, 2)]
    return conjunction(parts)


def atoms_of(formula: Formula) -> set[str]:
    """Collect the atom names a formula mentions."""
    match formula:
        case Atom(name):
            return {name}
        case Top() | Bottom():
            return set()
        case Not(operand):
            return atoms_of(operand)
        case And(operands) | Or(operands):
            return set().union(*(atoms_of(op) for op in operands))
        case Implies(antecedent, consequent):
            return atoms_of(antecedent) | atoms_of(consequent)
    raise TypeError(f"not a formula: {formula!r}")


def evaluate(formula: Formula, world: Mapping[str, bool]) -> bool:
    """Classical truth value of a formula under a truth assignment."""
    match formula:
        case Atom(name):
            try:
                return bool(world[name])
            except KeyError:
                raise VocabularyError(f"atom '{name}' is not assigned by the world") from None
        case Top():
            return True
        case Bottom():
            return False
        case Not(operand):
            return not evaluate(operand, world)
        case And(operands):
            return all(evaluate(op, world) for op in operands)
        case Or(operands):
            return any(evaluate(op, world) for op in operands)
        case Implies(antecedent, consequent):
            return (not evaluate(antecedent, world)) or evaluate(consequent, world)
    raise TypeError(f"not a formula: {formula!r}")


def iter_worlds(atoms: Sequence[str]) -> Iterator[tuple[bool, ...]]:
    """All truth assignments over the atoms, lexicographic with True before False."""
    return itertools.product((True, False), repeat=len(atoms))


# --- Events, assessments, arguments -----------------------------------------


@dataclass(frozen=True)
class ConditionalEvent:
    """E|H; an unconditional event has antecedent TRUE."""
    consequent: Formula
    antecedent: Formula = TRUE

    @property
    def is_conditional(self) -> bool:
        return self.antecedent != TRUE


@dataclass(frozen=True)
class Assessment:
    """A premise: lower <= p(target) <= upper."""
    target: ConditionalEvent
    lower: Fraction
    upper: Fraction

    @classmethod
    def point(cls, target: ConditionalEvent, value: Rational | int | str) -> Assessment:
        value = to_rational(value)
        return cls(target, value, value)

    @property
    def is_point(self) -> bool:
        return self.lower == self.upper


@dataclass(frozen=True)
class Argument:
    atoms: tuple[str, ...]
    constraints: tuple[Formula, ...]
    premises: tuple[Assessment, ...]
    conclusion: ConditionalEvent
    label: str = ""


@dataclass(frozen=True)
class Witness:
    """A probability distribution over the constituents of an argument."""
    atoms: tuple[str, ...]
    worlds: tuple[tuple[bool, ...], ...]
    weights: tuple[Fraction, ...]

    def items(self) -> Iterator[tuple[dict[str, bool], Fraction]]:
        for world, weight in zip(self.worlds, self.weights):
            yield dict(zip(self.atoms, world)), weight

    def probability(self, formula: Formula) -> Fraction:
        return sum((w for world, w in self.items() if evaluate(formula, world)), ZERO)

    def conditional_probability(self, event: ConditionalEvent) -> Fraction | None:
        """p(E|H) under this distribution, or None when p(H) = 0."""
        given = self.probability(event.antecedent)
        if given == 0:
            return None
        return self.probability(And((event.consequent, event.antecedent))) / given

    def satisfies(self, premise: Assessment) -> bool:
        """Check lower*p(H) <= p(E and H) <= upper*p(H) exactly."""
        target = premise.target
        given = self.probability(target.antecedent)
        joint = self.probability(And((target.consequent, target.antecedent)))
        return premise.lower * given <= joint <= premise.upper * given


# Reason tag on a [0, 1] interval produced because p(A) = 0 is forced.
CONDITIONING_EVENT_ZERO = "conditioning event forced to zero"


@dataclass(frozen=True)
class ConclusionInterval:
    """Coherent bounds [z', z''] on a conclusion, with witnesses attaining them."""
    lower: Fraction
    upper: Fraction
    vacuous_reason: str | None = None
    lower_witness: Witness | None = field(default=None, compare=False)
    upper_witness: Witness | None = field(default=None, compare=False)

    def __post_init__(self):
        if not (0 <= self.lower <= self.upper <= 1):
            raise MalformedIntervalError(
                f"interval [{self.lower}, {self.upper}] is not within 0 <= z' <= z'' <= 1"
            )

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    @property
    def midpoint(self) -> Fraction:
        return (self.lower + self.upper) / 2

    @property
    def is_vacuous(self) -> bool:
        return self.lower == 0 and self.upper == 1

    def contains(self, other: ConclusionInterval) -> bool:
        return self.lower <= other.lower and other.upper <= self.upper


# --- Validation --------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    subject: str = "argument"  # "atoms", "label", "constraint", "premise", "conclusion"
    index: int | None = None


def _formula_violations(formula: Formula, vocabulary: set[str], subject: str, index: int | None) -> list[Violation]:
    unknown = sorted(atoms_of(formula) - vocabulary)
    return [
        Violation("unknown-atom", f"unknown atom '{name}'", subject, index)
        for name in unknown
    ]


def validate(argument: Argument, max_atoms: int = DEFAULT_CONFIG["max_atoms"]) -> list[Violation]:
    """
    Structural check of an argument. Returns a list of violations; empty means valid.

    Never raises: the violations are the payload.
    """
    violations: list[Violation] = []
    atoms = list(argument.atoms)

    if not atoms:
        violations.append(Violation("empty-vocabulary", "the atom list is empty", "atoms"))
    seen: set[str] = set()
    for name in atoms:
        if not IDENTIFIER.match(name) or name in KEYWORDS:
            violations.append(Violation("invalid-atom-name", f"'{name}' is not a valid atom name", "atoms"))
        if name in seen:
            violations.append(Violation("duplicate-atom", f"atom '{name}' is declared twice", "atoms"))
        seen.add(name)

    label = argument.label
    if "#" in label or len(label.splitlines()) > 1 or label != label.strip():
        # the label directive is a single comment-free line, stripped on parse
        violations.append(Violation("invalid-label", f"label {label!r} is not a single-line label", "label"))

    vocabulary = set(atoms)
    for i, constraint in enumerate(argument.constraints):
        violations += _formula_violations(constraint, vocabulary, "constraint", i)

    for i, premise in enumerate(argument.premises):
        target = premise.target
        violations += _formula_violations(target.consequent, vocabulary, "premise", i)
        violations += _formula_violations(target.antecedent, vocabulary, "premise", i)
        for bound in (premise.lower, premise.upper):
            if not 0 <= bound <= 1:
                violations.append(Violation("bound-out-of-range", f"bound {bound} out of [0,1]", "premise", i))
        if premise.lower > premise.upper:
            violations.append(Violation(
                "inverted-bounds",
                f"inverted bounds: lower {premise.lower} exceeds upper {premise.upper}",
                "premise", i,
            ))

    conclusion = argument.conclusion
    violations += _formula_violations(conclusion.consequent, vocabulary, "conclusion", None)
    violations += _formula_violations(conclusion.antecedent, vocabulary, "conclusion", None)

    # Semantic checks need a well-formed vocabulary.
    if violations:
        return violations
    if len(atoms) > max_atoms:
        return [Violation("atom-budget-exceeded", f"{len(atoms)} atoms exceed the budget of {max_atoms}")]

    worlds = [
        world for world in (dict(zip(atoms, bits)) for bits in iter_worlds(atoms))
        if all(evaluate(c, world) for c in argument.constraints)
    ]
    if not worlds:
        return [Violation("empty-constituent-space", "empty constituent space: the constraints are contradictory", "constraint")]

    def possible(formula: Formula) -> bool:
        return any(evaluate(formula, world) for world in worlds)

    for i, premise in enumerate(argument.premises):
        if not possible(premise.target.antecedent):
            violations.append(Violation(
                "impossible-conditioning-event",
                "conditioning event is false in every constituent", "premise", i,
            ))
    if not possible(conclusion.antecedent):
        violations.append(Violation(
            "impossible-conditioning-event",
            "conditioning event is false in every constituent", "conclusion",
        ))
    return violations
