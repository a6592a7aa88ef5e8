"""Argument strength: precision of the conclusion interval times its location."""

from __future__ import annotations

import itertools
from collections.abc import Iterable
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from model import ConclusionInterval, MalformedIntervalError


@dataclass(frozen=True)
class StrengthScore:
    value: Fraction
    precision_factor: Fraction
    location_factor: Fraction


class Preference(Enum):
    FIRST = "≻"
    SECOND = "≺"
    INDIFFERENT = "~"


def strength(interval: ConclusionInterval) -> StrengthScore:
    """
    s = (1 - (z'' - z')) * (z' + z'') / 2

    Ranges over [0, 1]: 1 exactly when z' = z'' = 1, 0 for [0, 0] and for the
    vacuous [0, 1].
    """
    lower, upper = interval.lower, interval.upper
    if not (0 <= lower <= upper <= 1):
        raise MalformedIntervalError(f"interval [{lower}, {upper}] is not within 0 <= z' <= z'' <= 1")
    precision = 1 - (upper - lower)
    location = (lower + upper) / 2
    return StrengthScore(precision * location, precision, location)


def compare(a: StrengthScore, b: StrengthScore) -> Preference:
    if a.value > b.value:
        return Preference.FIRST
    if a.value < b.value:
        return Preference.SECOND
    return Preference.INDIFFERENT


@dataclass(frozen=True)
class RankedArgument:
    label: str
    interval: ConclusionInterval
    score: StrengthScore


@dataclass(frozen=True)
class PreferenceOrder:
    """Indifference classes from strongest to weakest."""
    classes: tuple[tuple[RankedArgument, ...], ...]

    def labels(self) -> list[list[str]]:
        return [[member.label for member in group] for group in self.classes]

    def position(self, label: str) -> int:
        for i, group in enumerate(self.classes):
            if any(member.label == label for member in group):
                return i
        raise KeyError(label)

    def relation(self, first: str, second: str) -> Preference:
        a, b = self.position(first), self.position(second)
        if a < b:
            return Preference.FIRST
        if a > b:
            return Preference.SECOND
        return Preference.INDIFFERENT

    def __str__(self) -> str:
        return " ≻ ".join(" ~ ".join(group) for group in self.labels())


def rank(arguments: Iterable[tuple[str, ConclusionInterval]]) -> PreferenceOrder:
    """Total preorder by descending strength; ties become indifference classes in input order."""
    scored = [RankedArgument(label, interval, strength(interval)) for label, interval in arguments]
    if not scored:
        raise ValueError("rank needs at least one argument")
    ordered = sorted(scored, key=lambda ranked: -ranked.score.value)
    return PreferenceOrder(tuple(
        tuple(group) for _, group in itertools.groupby(ordered, key=lambda ranked: ranked.score.value)
    ))
