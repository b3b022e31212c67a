"""
Parsing and evaluation of group words.

Grammar (whitespace ignored, ``*`` allowed between terms)::

    word := term+
    term := atom ('^' int)?
    atom := 'x' digits | '(' word ')' | '[' word ',' word ']'

The commutator ``[a,b]`` expands to ``a⁻¹ b⁻¹ a b``.
"""
from typing import List, Sequence

import numpy as np

from src.models.group import INDEX_DTYPE, FiniteGroup
from src.models.word import Word
from src.utils.errors import ParseError, ValidationError


class _WordParser:
    """Recursive descent parser over a single law string."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t*":
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _expect(self, char: str) -> None:
        if self._peek() != char:
            found = repr(self._peek()) if self._peek() else "end of input"
            raise ParseError(f"expected {char!r} but found {found}", self.pos)
        self.pos += 1

    def _digits(self) -> str:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        return self.text[start:self.pos]

    def parse(self) -> Word:
        word = self._word()
        if self._peek():
            raise ParseError(f"unexpected {self._peek()!r}", self.pos)
        return word

    def _word(self) -> Word:
        if self._peek() in ("", ")", "]", ","):
            raise ParseError("expected a variable, '(' or '['", self.pos)
        word = Word()
        while self._peek() not in ("", ")", "]", ","):
            word = word * self._term()
        return word

    def _term(self) -> Word:
        atom = self._atom()
        if self._peek() != "^":
            return atom
        self.pos += 1
        self._skip()
        start = self.pos
        sign = 1
        if self._peek() == "-":
            sign = -1
            self.pos += 1
        digits = self._digits()
        if not digits:
            raise ParseError("expected an integer exponent", start)
        exponent = sign * int(digits)
        if exponent == 0:
            raise ParseError("exponent must be nonzero", start)
        return atom ** exponent

    def _atom(self) -> Word:
        char = self._peek()
        if char == "x":
            self.pos += 1
            start = self.pos
            digits = self._digits()
            if not digits:
                raise ParseError("expected a variable index after 'x'", start)
            index = int(digits)
            if index == 0:
                raise ParseError("variable index must be at least 1", start)
            return Word(syllables=((index, 1),))
        if char == "(":
            self.pos += 1
            inner = self._word()
            self._expect(")")
            return inner
        if char == "[":
            self.pos += 1
            left = self._word()
            self._expect(",")
            right = self._word()
            self._expect("]")
            return Word.commutator(left, right)
        found = repr(char) if char else "end of input"
        raise ParseError(f"expected a variable, '(' or '[' but found {found}", self.pos)


def parse_word(text: str) -> Word:
    """
    Parse a law such as ``"x1^3"`` or ``"[[x1,x2],[x3,x4]]"``.

    Raises:
        ParseError: On a syntax error, a zero exponent or variable index 0
    """
    return _WordParser(text).parse()


def evaluate_columns(group: FiniteGroup, word: Word, columns: Sequence[np.ndarray]) -> np.ndarray:
    """
    Evaluate ``word`` on many assignments at once.

    Args:
        group: Group to evaluate in
        word: The word
        columns: ``columns[i]`` holds the values of ``x_{i+1}``, one per assignment

    Returns:
        Array of word values, one per assignment
    """
    size = len(columns[0]) if columns else 1
    result = np.zeros(size, dtype=INDEX_DTYPE)
    table = group.table
    for variable, exponent in word.syllables:
        result = table[result, group.power_map(exponent)[columns[variable - 1]]]
    return result


def eval_word(group: FiniteGroup, word: Word, values: Sequence[int]) -> int:
    """
    Value of ``word`` with ``x_i`` set to ``values[i-1]``.

    Raises:
        ValidationError: If fewer values than the word's arity are given
    """
    if len(values) < word.arity:
        raise ValidationError(f"word {word} needs {word.arity} values, got {len(values)}")
    for v in values:
        if not 0 <= int(v) < group.order:
            raise ValidationError(f"{v} is not an element index of {group.name}")
    columns: List[np.ndarray] = [np.array([int(v)], dtype=INDEX_DTYPE) for v in values]
    return int(evaluate_columns(group, word, columns)[0])
