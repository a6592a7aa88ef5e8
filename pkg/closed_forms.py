"""Known best-possible coherent bounds for elementary argument forms."""

from fractions import Fraction

from model import Argument, Assessment, Atom, ConditionalEvent, And, Or, to_rational


def modus_ponens(x, y) -> tuple[Fraction, Fraction]:
    """p(H|T) = x, p(T) = y, therefore xy <= p(H) <= xy + 1 - y."""
    x, y = to_rational(x), to_rational(y)
    return x * y, x * y + 1 - y


def and_introduction(x, y) -> tuple[Fraction, Fraction]:
    """p(A) = x, p(B) = y, therefore max(0, x + y - 1) <= p(A and B) <= min(x, y)."""
    x, y = to_rational(x), to_rational(y)
    return max(Fraction(0), x + y - 1), min(x, y)


def or_introduction(x, y) -> tuple[Fraction, Fraction]:
    """p(A) = x, p(B) = y, therefore max(x, y) <= p(A or B) <= min(1, x + y)."""
    x, y = to_rational(x), to_rational(y)
    return max(x, y), min(Fraction(1), x + y)


def modus_ponens_argument(x, y, label: str = "modus ponens") -> Argument:
    t, h = Atom("T"), Atom("H")
    return Argument(
        atoms=("T", "H"),
        constraints=(),
        premises=(
            Assessment.point(ConditionalEvent(h, t), x),
            Assessment.point(ConditionalEvent(t), y),
        ),
        conclusion=ConditionalEvent(h),
        label=label,
    )


def _two_event_argument(x, y, conclusion, label: str) -> Argument:
    return Argument(
        atoms=("A", "B"),
        constraints=(),
        premises=(
            Assessment.point(ConditionalEvent(Atom("A")), x),
            Assessment.point(ConditionalEvent(Atom("B")), y),
        ),
        conclusion=ConditionalEvent(conclusion),
        label=label,
    )


def and_introduction_argument(x, y, label: str = "and-introduction") -> Argument:
    return _two_event_argument(x, y, And((Atom("A"), Atom("B"))), label)


def or_introduction_argument(x, y, label: str = "or-introduction") -> Argument:
    return _two_event_argument(x, y, Or((Atom("A"), Atom("B"))), label)


# name -> (closed form, argument builder)
CATALOG = {
    "modus_ponens": (modus_ponens, modus_ponens_argument),
    "and_introduction": (and_introduction, and_introduction_argument),
    "or_introduction": (or_introduction, or_introduction_argument),
}
