"""
Coherence checking and best-possible bound propagation over constituents.

Every question is answered semantically: enumerate the possible worlds allowed
by the background constraints, translate premises into linear rows over one
weight per world, and solve exact linear programs.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property

from config import DEFAULT_CONFIG
from logger import log
from model import (
    CONDITIONING_EVENT_ZERO,
    TRUE,
    And,
    ArgStrengthError,
    Argument,
    Assessment,
    ConclusionInterval,
    ConditionalEvent,
    Formula,
    Witness,
    disjunction,
    evaluate,
    iter_worlds,
)
from simplex import LinearProgram, LPStatus, Relation, Row, Sense, solve_lp

# distributions the grid search may enumerate before refusing
DEFAULT_GRID_CAP = 2_000_000


class AtomBudgetError(ArgStrengthError):
    """More atoms than the configured enumeration budget."""
    pass


class EmptySpaceError(ArgStrengthError):
    """The background constraints admit no world."""
    pass


class GridTooLargeError(ArgStrengthError):
    """The brute-force grid would enumerate too many distributions."""
    pass


class SolverError(ArgStrengthError):
    """An LP came back in a state the programs built here cannot reach."""
    pass


class IncoherentPremisesError(ArgStrengthError):
    """Bounds were requested for premises that admit no coherent extension."""

    def __init__(self, verdict: CoherenceVerdict):
        super().__init__("premise assessments are incoherent")
        self.verdict = verdict


@dataclass(frozen=True)
class ConstituentSpace:
    atoms: tuple[str, ...]
    worlds: tuple[tuple[bool, ...], ...]

    def __len__(self) -> int:
        return len(self.worlds)

    @cached_property
    def assignments(self) -> tuple[dict[str, bool], ...]:
        return tuple(dict(zip(self.atoms, world)) for world in self.worlds)

    def indicator(self, formula: Formula) -> tuple[Fraction, ...]:
        """1 for every world where the formula holds, 0 elsewhere."""
        return tuple(Fraction(int(evaluate(formula, a))) for a in self.assignments)

    def witness(self, weights: Sequence[Fraction]) -> Witness:
        return Witness(self.atoms, self.worlds, tuple(weights))


def enumerate_constituents(
    atoms: Sequence[str],
    constraints: Iterable[Formula],
    max_atoms: int = DEFAULT_CONFIG["max_atoms"],
) -> ConstituentSpace:
    """Truth assignments satisfying every constraint, in lexicographic atom order."""
    atoms = tuple(atoms)
    constraints = tuple(constraints)
    if len(atoms) > max_atoms:
        raise AtomBudgetError(f"{len(atoms)} atoms exceed the budget of {max_atoms}")
    worlds = tuple(
        bits for bits in iter_worlds(atoms)
        if all(evaluate(c, dict(zip(atoms, bits))) for c in constraints)
    )
    if not worlds:
        raise EmptySpaceError("empty space: no truth assignment satisfies the constraints")
    log.debug(f"Enumerated {len(worlds)} constituents over {len(atoms)} atoms")
    return ConstituentSpace(atoms, worlds)


def build_premise_constraints(space: ConstituentSpace, premises: Iterable[Assessment]) -> list[Row]:
    """
    Rows a*p(H) <= p(E and H) <= b*p(H) for each premise p(E|H) in [a, b].

    The rows are homogeneous, so they hold vacuously when p(H) = 0. Sides that
    cannot constrain anything (a = 0, b = 1) are left out.
    """
    rows: list[Row] = []
    for premise in premises:
        target = premise.target
        given = space.indicator(target.antecedent)
        joint = space.indicator(And((target.consequent, target.antecedent)))
        if premise.lower == premise.upper:
            rows.append(Row(tuple(j - premise.lower * g for j, g in zip(joint, given)), Relation.EQ))
            continue
        if premise.lower > 0:
            rows.append(Row(tuple(j - premise.lower * g for j, g in zip(joint, given)), Relation.GE))
        if premise.upper < 1:
            rows.append(Row(tuple(j - premise.upper * g for j, g in zip(joint, given)), Relation.LE))
    return rows


def normalization_row(space: ConstituentSpace, event: Formula) -> Row:
    """p(event) = 1."""
    return Row(space.indicator(event), Relation.EQ, Fraction(1))


# --- Coherence ---------------------------------------------------------------


class Coherence(Enum):
    COHERENT = "coherent"
    INCOHERENT = "incoherent"


@dataclass(frozen=True)
class CoherenceVerdict:
    status: Coherence
    witness: Witness | None = None
    zero_layers: tuple[tuple[Formula, ...], ...] = ()

    @property
    def is_coherent(self) -> bool:
        return self.status is Coherence.COHERENT

    @property
    def zero_layer_report(self) -> tuple[Formula, ...]:
        """Conditioning events forced to probability zero, in layer order."""
        return tuple(dict.fromkeys(event for layer in self.zero_layers for event in layer))


def _dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def _maximize(space: ConstituentSpace, rows: list[Row], objective: tuple[Fraction, ...]):
    result = solve_lp(LinearProgram(len(space), tuple(rows), objective, Sense.MAXIMIZE))
    if result.status is LPStatus.UNBOUNDED:
        raise SolverError("conditioning-event probability is unbounded")
    return result


def check_coherence(space: ConstituentSpace, premises: Iterable[Assessment]) -> CoherenceVerdict:
    """
    Generalized coherence check with zero-layer recursion.

    The first stage asks for a distribution satisfying every premise row. Premises
    whose conditioning event has probability zero in every such distribution
    form the next layer, re-checked on their own with the normalization moved
    to the union of their conditioning events.
    """
    layer = tuple(premises)
    normalization: Formula = TRUE
    zero_layers: list[tuple[Formula, ...]] = []
    witness: Witness | None = None

    while True:
        rows = build_premise_constraints(space, layer) + [normalization_row(space, normalization)]
        indicators = [space.indicator(p.target.antecedent) for p in layer]
        total = tuple(sum(column, Fraction(0)) for column in zip(*indicators)) if indicators else (Fraction(0),) * len(space)

        probe = _maximize(space, rows, total)
        if probe.status is LPStatus.INFEASIBLE:
            log.debug(f"Incoherent at layer {len(zero_layers)}")
            return CoherenceVerdict(Coherence.INCOHERENT, witness, tuple(zero_layers))

        solutions = [probe.solution]
        forced_zero: list[Assessment] = []
        for premise, indicator in zip(layer, indicators):
            if any(_dot(indicator, s) > 0 for s in solutions):
                continue
            best = _maximize(space, rows, indicator)
            if best.value == 0:
                forced_zero.append(premise)
            else:
                solutions.append(best.solution)

        if witness is None:
            # A convex mix of feasible points is feasible and keeps every positive antecedent positive.
            mixed = tuple(sum(column, Fraction(0)) / len(solutions) for column in zip(*solutions))
            witness = space.witness(mixed)

        if not forced_zero:
            return CoherenceVerdict(Coherence.COHERENT, witness, tuple(zero_layers))

        if normalization != TRUE and len(forced_zero) == len(layer):
            raise SolverError("zero layer did not shrink")
        events = tuple(dict.fromkeys(p.target.antecedent for p in forced_zero))
        log.debug(f"Zero layer {len(zero_layers) + 1}: {len(events)} conditioning event(s) forced to zero")
        zero_layers.append(events)
        layer = tuple(forced_zero)
        normalization = disjunction(list(events))


# --- Propagation -------------------------------------------------------------


def _normalized(space: ConstituentSpace, solution: Sequence[Fraction]) -> Witness:
    mass = sum(solution, Fraction(0))
    return space.witness(tuple(x / mass for x in solution))


def _propagate(space: ConstituentSpace, premises: Sequence[Assessment], conclusion: ConditionalEvent) -> ConclusionInterval:
    rows = build_premise_constraints(space, premises)
    # Charnes-Cooper: with homogeneous premise rows, p(C|A) is linear once p(A) is normalized to 1.
    rows.append(normalization_row(space, conclusion.antecedent))
    objective = space.indicator(And((conclusion.consequent, conclusion.antecedent)))

    results = []
    for sense in (Sense.MINIMIZE, Sense.MAXIMIZE):
        result = solve_lp(LinearProgram(len(space), tuple(rows), objective, sense))
        if result.status is LPStatus.UNBOUNDED:
            raise SolverError("conclusion probability is unbounded")
        results.append(result)
    low, high = results

    if low.status is LPStatus.INFEASIBLE or high.status is LPStatus.INFEASIBLE:
        if not conclusion.is_conditional:
            raise SolverError("coherent premises admit no distribution")
        log.info("Conclusion's conditioning event is forced to probability zero; interval is vacuous")
        return ConclusionInterval(Fraction(0), Fraction(1), CONDITIONING_EVENT_ZERO)

    return ConclusionInterval(
        low.value,
        high.value,
        lower_witness=_normalized(space, low.solution),
        upper_witness=_normalized(space, high.solution),
    )


@dataclass(frozen=True)
class Analysis:
    argument: Argument
    space: ConstituentSpace
    verdict: CoherenceVerdict
    interval: ConclusionInterval | None


def analyze(argument: Argument, max_atoms: int = DEFAULT_CONFIG["max_atoms"]) -> Analysis:
    """Enumerate once, check coherence and, when coherent, propagate the bounds."""
    space = enumerate_constituents(argument.atoms, argument.constraints, max_atoms)
    verdict = check_coherence(space, argument.premises)
    interval = _propagate(space, argument.premises, argument.conclusion) if verdict.is_coherent else None
    if interval is not None:
        log.debug(f"Analyzed '{argument.label}': [{interval.lower}, {interval.upper}]")
    else:
        log.debug(f"Analyzed '{argument.label}': incoherent")
    return Analysis(argument, space, verdict, interval)


def propagate_bounds(argument: Argument, max_atoms: int = DEFAULT_CONFIG["max_atoms"]) -> ConclusionInterval:
    """
    Best-possible coherent bounds [z', z''] on the argument's conclusion.

    Raises IncoherentPremisesError when the premises admit no coherent extension.
    """
    analysis = analyze(argument, max_atoms)
    if analysis.interval is None:
        raise IncoherentPremisesError(analysis.verdict)
    return analysis.interval


# --- Brute-force oracle ------------------------------------------------------


@dataclass(frozen=True)
class GridBounds:
    lower: Fraction
    upper: Fraction
    kept: int
    examined: int

    def within(self, interval: ConclusionInterval) -> bool:
        return interval.lower <= self.lower and self.upper <= interval.upper


def _compositions(total: int, parts: int) -> Iterable[tuple[int, ...]]:
    """All ways to write total as an ordered sum of parts non-negative integers."""
    for bars in itertools.combinations(range(total + parts - 1), parts - 1):
        previous = -1
        counts = []
        for bar in bars:
            counts.append(bar - previous - 1)
            previous = bar
        counts.append(total + parts - 2 - previous)
        yield tuple(counts)


def brute_force_bounds(
    argument: Argument,
    grid_denominator: int,
    max_atoms: int = DEFAULT_CONFIG["max_atoms"],
    grid_cap: int = DEFAULT_GRID_CAP,
) -> GridBounds | None:
    """
    Conclusion bounds over every distribution with weights in {0, 1/d, ..., 1}.

    An inner approximation of propagate_bounds, independent of the simplex code.
    Returns None when no grid distribution satisfies the premises (or, for a
    conditional conclusion, none gives its conditioning event positive mass).
    """
    if grid_denominator < 1:
        raise ValueError("grid_denominator must be positive")
    space = enumerate_constituents(argument.atoms, argument.constraints, max_atoms)
    k = len(space)
    count = math.comb(grid_denominator + k - 1, k - 1)
    if count > grid_cap:
        raise GridTooLargeError(f"{count} grid distributions exceed the cap of {grid_cap}")

    def members(formula: Formula) -> tuple[int, ...]:
        return tuple(i for i, a in enumerate(space.assignments) if evaluate(formula, a))

    checks = []
    for premise in argument.premises:
        target = premise.target
        checks.append((
            members(And((target.consequent, target.antecedent))),
            members(target.antecedent),
            premise.lower.numerator, premise.lower.denominator,
            premise.upper.numerator, premise.upper.denominator,
        ))
    conclusion = argument.conclusion
    joint_idx = members(And((conclusion.consequent, conclusion.antecedent)))
    given_idx = members(conclusion.antecedent)

    lower = upper = None
    kept = 0
    for counts in _compositions(grid_denominator, k):
        ok = True
        for joint, given, lo_num, lo_den, hi_num, hi_den in checks:
            s_joint = sum(counts[i] for i in joint)
            s_given = sum(counts[i] for i in given)
            if lo_den * s_joint < lo_num * s_given or hi_den * s_joint > hi_num * s_given:
                ok = False
                break
        if not ok:
            continue
        s_given = sum(counts[i] for i in given_idx)
        if s_given == 0:
            continue
        value = Fraction(sum(counts[i] for i in joint_idx), s_given)
        kept += 1
        if lower is None or value < lower:
            lower = value
        if upper is None or value > upper:
            upper = value

    log.debug(f"Brute force d={grid_denominator}: kept {kept} of {count} distributions")
    if lower is None:
        return None
    return GridBounds(lower, upper, kept, count)
