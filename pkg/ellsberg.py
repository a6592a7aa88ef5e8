"""
The Ellsberg urn as four probabilistic arguments, one per bet.

An urn holds 90 balls: 30 red (R), 60 black (B) or yellow (Y) in unknown
proportion. Each bet wins on a colour event; the argument for a bet has the
urn description as premises and the bet's event as conclusion.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from coherence import propagate_bounds
from dsl import parse_argument
from logger import log
from model import Argument, ConclusionInterval
from strength import StrengthScore, strength


class Variant(Enum):
    DECIMAL = "decimal"
    EXACT = "exact"


PREMISE_VALUES = {
    Variant.DECIMAL: ("0.33", "0.67"),
    Variant.EXACT: ("1/3", "2/3"),
}

# bet -> winning event
BETS = (
    ("Bet 1", "R"),
    ("Bet 2", "B"),
    ("Bet 3", "R or Y"),
    ("Bet 4", "B or Y"),
)

_TEMPLATE = """\
label: {label}
atoms: R, B, Y
constraint: exactly_one(R, B, Y)
premise: P(R) = {red}
premise: P(B or Y) = {black_or_yellow}
conclusion: P({event})
"""


def scenario_text(variant: Variant, index: int) -> str:
    """`.arg` document for argument A{index} (1-based)."""
    red, black_or_yellow = PREMISE_VALUES[variant]
    _, event = BETS[index - 1]
    return _TEMPLATE.format(label=f"A{index}", red=red, black_or_yellow=black_or_yellow, event=event)


@dataclass(frozen=True)
class EllsbergScenario:
    variant: Variant
    arguments: tuple[Argument, Argument, Argument, Argument]


def build_scenario(variant: Variant = Variant.DECIMAL) -> EllsbergScenario:
    arguments = tuple(parse_argument(scenario_text(variant, i)) for i in range(1, 5))
    return EllsbergScenario(variant, arguments)


@dataclass(frozen=True)
class TableRow:
    bet: str
    label: str
    event: str
    interval: ConclusionInterval
    score: StrengthScore


def table1(variant: Variant = Variant.DECIMAL) -> list[TableRow]:
    """Conclusion interval and strength of each bet's argument."""
    scenario = build_scenario(variant)
    rows = []
    for (bet, event), argument in zip(BETS, scenario.arguments):
        interval = propagate_bounds(argument)
        rows.append(TableRow(bet, argument.label, event, interval, strength(interval)))
    log.debug(f"Ellsberg table ({variant.value}): {[str(row.score.value) for row in rows]}")
    return rows


# --- Strategies --------------------------------------------------------------


class Choice(Enum):
    BET1 = "Bet 1"
    BET2 = "Bet 2"
    BET3 = "Bet 3"
    BET4 = "Bet 4"
    TIE = "tie"


class StrategyLabel(Enum):
    E = "E"    # (1, 4) > (2, 3), Ellsberg's prediction
    R = "R"    # (2, 3) > (1, 4), reversed
    I1 = "I1"  # (1, 3) > (2, 4), independence-consistent
    I2 = "I2"  # (2, 4) > (1, 3), independence-consistent
    UNDETERMINED = "Undetermined"


_STRATEGIES = {
    (Choice.BET1, Choice.BET4): StrategyLabel.E,
    (Choice.BET2, Choice.BET3): StrategyLabel.R,
    (Choice.BET1, Choice.BET3): StrategyLabel.I1,
    (Choice.BET2, Choice.BET4): StrategyLabel.I2,
}


def classify_strategy(choice12: Choice, choice34: Choice) -> StrategyLabel:
    if choice12 not in (Choice.BET1, Choice.BET2, Choice.TIE):
        raise ValueError(f"first choice must be Bet 1, Bet 2 or a tie, got {choice12.value}")
    if choice34 not in (Choice.BET3, Choice.BET4, Choice.TIE):
        raise ValueError(f"second choice must be Bet 3, Bet 4 or a tie, got {choice34.value}")
    return _STRATEGIES.get((choice12, choice34), StrategyLabel.UNDETERMINED)


@dataclass(frozen=True)
class Prediction:
    choice12: Choice
    choice34: Choice
    strategy: StrategyLabel


def _prefer(a, b, first: Choice, second: Choice) -> Choice:
    if a > b:
        return first
    if b > a:
        return second
    return Choice.TIE


def predict_from_ratings(r1, r2, r3, r4) -> Prediction:
    """
    A higher-rated argument predicts a preference for its bet; equal ratings
    make no prediction. Ratings are only compared, never combined.
    """
    choice12 = _prefer(r1, r2, Choice.BET1, Choice.BET2)
    choice34 = _prefer(r3, r4, Choice.BET3, Choice.BET4)
    return Prediction(choice12, choice34, classify_strategy(choice12, choice34))


def normative_prediction(variant: Variant = Variant.DECIMAL) -> Prediction:
    """The prediction the strength measure itself makes."""
    return predict_from_ratings(*(row.score.value for row in table1(variant)))


# --- Aggregation over recorded responses --------------------------------------


@dataclass(frozen=True)
class StrategyDistribution:
    counts: dict[StrategyLabel, int]
    total: int

    def percentage(self, label: StrategyLabel) -> Fraction:
        if self.total == 0:
            return Fraction(0)
        return Fraction(100 * self.counts.get(label, 0), self.total)


def strategy_distribution(choices: Iterable[tuple[Choice, Choice]]) -> StrategyDistribution:
    """How often each strategy occurs among recorded pairs of choices."""
    counts = Counter(classify_strategy(c12, c34) for c12, c34 in choices)
    return StrategyDistribution({label: counts.get(label, 0) for label in StrategyLabel}, sum(counts.values()))


@dataclass(frozen=True)
class PredictionTally:
    as_predicted: int = 0
    not_as_predicted: int = 0
    no_prediction: int = 0

    @property
    def total(self) -> int:
        return self.as_predicted + self.not_as_predicted + self.no_prediction

    def percentages(self) -> tuple[Fraction, Fraction, Fraction]:
        if self.total == 0:
            return Fraction(0), Fraction(0), Fraction(0)
        return tuple(Fraction(100 * n, self.total) for n in (self.as_predicted, self.not_as_predicted, self.no_prediction))


def _tally(predicted: Sequence[Choice], observed: Sequence[Choice]) -> PredictionTally:
    hits = misses = none = 0
    for p, o in zip(predicted, observed):
        if p is Choice.TIE:
            none += 1
        elif p is o:
            hits += 1
        else:
            misses += 1
    return PredictionTally(hits, misses, none)


def tally_predictions(
    ratings: Sequence[tuple],
    observed: Sequence[tuple[Choice, Choice]],
) -> tuple[PredictionTally, PredictionTally]:
    """
    Compare each respondent's rating-based prediction with their recorded choices.

    Returns one tally for Bet 1 vs Bet 2 and one for Bet 3 vs Bet 4.
    """
    if len(ratings) != len(observed):
        raise ValueError("ratings and observed choices must describe the same respondents")
    predictions = [predict_from_ratings(*r) for r in ratings]
    return (
        _tally([p.choice12 for p in predictions], [o[0] for o in observed]),
        _tally([p.choice34 for p in predictions], [o[1] for o in observed]),
    )
