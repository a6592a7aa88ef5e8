"""
Reading and writing the line-oriented `.arg` argument format.

    # Ellsberg, bet 2
    label: Bet 2
    atoms: R, B, Y
    constraint: exactly_one(R, B, Y)
    premise: P(R) = 0.33
    premise: P(B or Y) = 0.67
    conclusion: P(B)

Formulas use `not`, `and`, `or`, `->` (material implication), `true`, `false`
and parentheses; `exactly_one(...)` and `at_most_one(...)` expand to plain
formulas. Premises attach a point (`= v`) or an interval (`in [a, b]`) to an
event `P(E)` or a conditional event `P(E | H)`; numbers are decimals or
fractions `a/b`, converted exactly. `#` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

import pyparsing as pp

from config import DEFAULT_CONFIG
from model import (
    FALSE,
    IDENTIFIER,
    KEYWORDS,
    TRUE,
    And,
    ArgStrengthError,
    Argument,
    Assessment,
    Atom,
    Bottom,
    ConditionalEvent,
    Formula,
    Implies,
    Not,
    Or,
    Top,
    at_most_one,
    atoms_of,
    exactly_one,
    validate,
)

pp.ParserElement.enable_packrat()

DIRECTIVES = ("label", "atoms", "constraint", "premise", "conclusion")

_DIRECTIVE = re.compile(r"\s*(?P<name>[A-Za-z_]\w*)\s*:(?P<body>.*)\Z")


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    length: int = 0

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


class ParseError(ArgStrengthError):
    """A document that does not describe a valid argument."""

    def __init__(self, message: str, span: SourceSpan):
        super().__init__(f"{span}: {message}")
        self.message = message
        self.span = span


# --- Grammar -----------------------------------------------------------------


@dataclass(frozen=True)
class _Number:
    value: Fraction
    loc: int
    length: int


def _build_not(tokens):
    return Not(tokens[0][1])


def _build_and(tokens):
    return And(tuple(tokens[0][0::2]))


def _build_or(tokens):
    return Or(tuple(tokens[0][0::2]))


def _build_implies(tokens):
    operands = list(tokens[0][0::2])
    result = operands.pop()
    while operands:
        result = Implies(operands.pop(), result)
    return result


def _expand_sugar(tokens):
    names = [atom.name for atom in tokens[1:]]
    return exactly_one(names) if tokens[0] == "exactly_one" else at_most_one(names)


def _build_event(tokens):
    return ConditionalEvent(tokens[0], tokens[1]) if len(tokens) == 2 else ConditionalEvent(tokens[0])


_LPAR, _RPAR = pp.Suppress("("), pp.Suppress(")")
_KEYWORD = pp.MatchFirst([pp.Keyword(k) for k in sorted(KEYWORDS)])
_ATOM = (~_KEYWORD + pp.Word(pp.alphas + "_", pp.alphanums + "_")).set_parse_action(lambda t: Atom(t[0]))
_CONSTANT = (
    pp.Keyword("true").set_parse_action(lambda: TRUE)
    | pp.Keyword("false").set_parse_action(lambda: FALSE)
)
_SUGAR = (
    (pp.Keyword("exactly_one") | pp.Keyword("at_most_one")) + _LPAR + pp.DelimitedList(_ATOM) + _RPAR
).set_parse_action(_expand_sugar)

FORMULA = pp.infix_notation(
    _SUGAR | _CONSTANT | _ATOM,
    [
        (pp.Keyword("not"), 1, pp.OpAssoc.RIGHT, _build_not),
        (pp.Keyword("and"), 2, pp.OpAssoc.LEFT, _build_and),
        (pp.Keyword("or"), 2, pp.OpAssoc.LEFT, _build_or),
        (pp.Literal("->"), 2, pp.OpAssoc.RIGHT, _build_implies),
    ],
)

_NUMBER = pp.Regex(r"\d+/0*[1-9]\d*|\d*\.\d+|\d+").set_parse_action(
    lambda s, loc, t: _Number(Fraction(t[0]), loc, len(t[0]))
)
_EVENT = (
    pp.Suppress(pp.Keyword("P")) + _LPAR + FORMULA + pp.Opt(pp.Suppress("|") + FORMULA) + _RPAR
).set_parse_action(_build_event)
_VALUE = (pp.Suppress("=") + _NUMBER) | (
    pp.Suppress(pp.Keyword("in")) + pp.Suppress("[") + _NUMBER + pp.Suppress(",") + _NUMBER + pp.Suppress("]")
)

_CONSTRAINT_LINE = FORMULA + pp.StringEnd()
_PREMISE_LINE = _EVENT + _VALUE + pp.StringEnd()
_CONCLUSION_LINE = _EVENT + pp.StringEnd()


def parse_formula(text: str) -> Formula:
    """Parse a single formula; raises ParseError with a span on line 1."""
    try:
        return _CONSTRAINT_LINE.parse_string(text, parse_all=True)[0]
    except pp.ParseBaseException as e:
        raise ParseError(f"syntax error: {e.msg}", SourceSpan(1, e.loc + 1, 1)) from None


# --- Parsing -----------------------------------------------------------------


@dataclass(frozen=True)
class _Entry:
    name: str
    body: str
    line: int
    name_column: int  # 1-based
    body_offset: int  # 0-based index of the body within the line


def _span(entry: _Entry, start: int = 0, length: int | None = None) -> SourceSpan:
    """Span of body[start:start+length] in document coordinates."""
    if length is None:
        length = len(entry.body.strip())
        start = len(entry.body) - len(entry.body.lstrip())
    return SourceSpan(entry.line, entry.body_offset + start + 1, length)


def _parse_body(grammar: pp.ParserElement, entry: _Entry) -> pp.ParseResults:
    try:
        return grammar.parse_string(entry.body, parse_all=True)
    except pp.ParseBaseException as e:
        raise ParseError(f"syntax error: {e.msg}", _span(entry, e.loc, 1)) from None


def _check_vocabulary(formulas: list[Formula], vocabulary: set[str], entry: _Entry) -> None:
    for formula in formulas:
        for name in sorted(atoms_of(formula) - vocabulary):
            found = re.search(rf"(?<![A-Za-z0-9_]){re.escape(name)}(?![A-Za-z0-9_])", entry.body)
            start = found.start() if found else 0
            raise ParseError(f"unknown atom '{name}'", _span(entry, start, len(name)))


def _parse_atoms(entry: _Entry) -> tuple[str, ...]:
    names: list[str] = []
    for piece in re.finditer(r"[^,]+", entry.body):
        name = piece.group().strip()
        if not name:
            continue
        start = piece.start() + piece.group().index(name)
        if not IDENTIFIER.match(name) or name in KEYWORDS:
            raise ParseError(f"invalid atom name '{name}'", _span(entry, start, len(name)))
        if name in names:
            raise ParseError(f"duplicate atom '{name}'", _span(entry, start, len(name)))
        names.append(name)
    if not names:
        raise ParseError("empty atom list", _span(entry, 0, 0))
    return tuple(names)


def _parse_premise(entry: _Entry, vocabulary: set[str]) -> Assessment:
    tokens = _parse_body(_PREMISE_LINE, entry)
    event, numbers = tokens[0], list(tokens[1:])
    _check_vocabulary([event.consequent, event.antecedent], vocabulary, entry)
    for number in numbers:
        if number.value > 1:
            raise ParseError("bound out of [0,1]", _span(entry, number.loc, number.length))
    lower, upper = numbers[0], numbers[-1]
    if lower.value > upper.value:
        raise ParseError(
            f"inverted bounds: lower {lower.value} exceeds upper {upper.value}",
            _span(entry, lower.loc, upper.loc + upper.length - lower.loc),
        )
    return Assessment(event, lower.value, upper.value)


def parse_argument(text: str, max_atoms: int = DEFAULT_CONFIG["max_atoms"]) -> Argument:
    """
    Parse a `.arg` document into a validated Argument.

    Raises ParseError carrying the SourceSpan of the offending text.
    """
    lines = text.splitlines()
    entries: list[_Entry] = []
    for number, raw in enumerate(lines, start=1):
        content = raw.split("#", 1)[0]
        if not content.strip():
            continue
        match = _DIRECTIVE.match(content)
        if not match:
            indent = len(content) - len(content.lstrip())
            raise ParseError("syntax error: expected 'directive: value'", SourceSpan(number, indent + 1, len(content.strip())))
        name = match.group("name")
        if name not in DIRECTIVES:
            raise ParseError(f"unknown directive '{name}'", SourceSpan(number, match.start("name") + 1, len(name)))
        entries.append(_Entry(name, match.group("body"), number, match.start("name") + 1, match.start("body")))

    end = SourceSpan(max(1, len(lines)), 1, 0)

    def directive_span(entry: _Entry) -> SourceSpan:
        return SourceSpan(entry.line, entry.name_column, len(entry.name))

    atom_entries = [e for e in entries if e.name == "atoms"]
    if not atom_entries:
        raise ParseError("missing 'atoms:' directive", end)
    if len(atom_entries) > 1:
        raise ParseError("duplicate 'atoms:' directive", directive_span(atom_entries[1]))
    atoms = _parse_atoms(atom_entries[0])
    vocabulary = set(atoms)

    label = ""
    label_entry: _Entry | None = None
    constraints: list[tuple[Formula, _Entry]] = []
    premises: list[tuple[Assessment, _Entry]] = []
    conclusion: tuple[ConditionalEvent, _Entry] | None = None
    for entry in entries:
        if entry.name == "label":
            if label_entry is not None:
                raise ParseError("duplicate label", directive_span(entry))
            label, label_entry = entry.body.strip(), entry
        elif entry.name == "constraint":
            formula = _parse_body(_CONSTRAINT_LINE, entry)[0]
            _check_vocabulary([formula], vocabulary, entry)
            constraints.append((formula, entry))
        elif entry.name == "premise":
            premises.append((_parse_premise(entry, vocabulary), entry))
        elif entry.name == "conclusion":
            if conclusion is not None:
                raise ParseError("duplicate conclusion", directive_span(entry))
            event = _parse_body(_CONCLUSION_LINE, entry)[0]
            _check_vocabulary([event.consequent, event.antecedent], vocabulary, entry)
            conclusion = (event, entry)
    if conclusion is None:
        raise ParseError("missing conclusion", end)

    argument = Argument(
        atoms=atoms,
        constraints=tuple(f for f, _ in constraints),
        premises=tuple(p for p, _ in premises),
        conclusion=conclusion[0],
        label=label,
    )
    for violation in validate(argument, max_atoms):
        if violation.subject == "constraint" and violation.index is None:
            entry = constraints[0][1] if constraints else atom_entries[0]
        elif violation.subject == "constraint":
            entry = constraints[violation.index][1]
        elif violation.subject == "premise":
            entry = premises[violation.index][1]
        elif violation.subject == "conclusion":
            entry = conclusion[1]
        else:
            entry = atom_entries[0]
        raise ParseError(violation.message, _span(entry))
    return argument


# --- Rendering ---------------------------------------------------------------


def _terminates(denominator: int) -> bool:
    for p in (2, 5):
        while denominator % p == 0:
            denominator //= p
    return denominator == 1


def format_rational(value: Fraction) -> str:
    """Exact text for a rational: decimals for short terminating values, a/b otherwise."""
    if value.denominator == 1:
        return str(value.numerator)
    if value.denominator <= 100 and _terminates(value.denominator):
        places = 0
        while (value * 10 ** places).denominator != 1:
            places += 1
        scaled = abs(value.numerator * 10 ** places // value.denominator)
        sign = "-" if value < 0 else ""
        whole, fraction = divmod(scaled, 10 ** places)
        return f"{sign}{whole}.{fraction:0{places}d}"
    return f"{value.numerator}/{value.denominator}"


def _wrap(formula: Formula) -> str:
    text = render_formula(formula)
    return f"({text})" if isinstance(formula, (And, Or, Implies)) else text


def render_formula(formula: Formula) -> str:
    match formula:
        case Atom(name):
            return name
        case Top():
            return "true"
        case Bottom():
            return "false"
        case Not(operand):
            return f"not {_wrap(operand)}"
        case And(operands):
            return " and ".join(_wrap(op) for op in operands)
        case Or(operands):
            return " or ".join(_wrap(op) for op in operands)
        case Implies(antecedent, consequent):
            return f"{_wrap(antecedent)} -> {_wrap(consequent)}"
    raise TypeError(f"not a formula: {formula!r}")


def render_event(event: ConditionalEvent) -> str:
    if event.antecedent == TRUE:
        return f"P({render_formula(event.consequent)})"
    return f"P({render_formula(event.consequent)} | {render_formula(event.antecedent)})"


def render_assessment(premise: Assessment) -> str:
    if premise.is_point:
        return f"{render_event(premise.target)} = {format_rational(premise.lower)}"
    return f"{render_event(premise.target)} in [{format_rational(premise.lower)}, {format_rational(premise.upper)}]"


def render_argument(argument: Argument) -> str:
    """Canonical `.arg` text; parse_argument(render_argument(a)) == a."""
    lines = []
    if argument.label:
        lines.append(f"label: {argument.label}")
    lines.append(f"atoms: {', '.join(argument.atoms)}")
    lines += [f"constraint: {render_formula(c)}" for c in argument.constraints]
    lines += [f"premise: {render_assessment(p)}" for p in argument.premises]
    lines.append(f"conclusion: {render_event(argument.conclusion)}")
    return "\n".join(lines) + "\n"
