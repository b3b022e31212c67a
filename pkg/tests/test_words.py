"""Tests for word parsing and evaluation."""
import pytest

from src.models.word import Word
from src.services.varieties import COMMUTATOR, X1, X2
from src.services.words import eval_word, parse_word
from src.utils.errors import ParseError, ValidationError


@pytest.mark.parametrize(
    "text,syllables",
    [
        ("x1", ((1, 1),)),
        ("x1^3", ((1, 3),)),
        ("x1 x1^2", ((1, 3),)),
        ("x1^2 x2 x2^-1 x1^-2", ()),
        ("x2^-1 x1", ((2, -1), (1, 1))),
        ("x1*x2", ((1, 1), (2, 1))),
        ("(x1 x2)^2", ((1, 1), (2, 1), (1, 1), (2, 1))),
        ("[x1,x2]", ((1, -1), (2, -1), (1, 1), (2, 1))),
    ],
)
def test_parse(text, syllables):
    assert parse_word(text).syllables == syllables


def test_commutator_law_matches_builtin():
    assert parse_word("[x1, x2]") == COMMUTATOR
    assert parse_word("[x1,x2]").is_basic_commutator


def test_nested_commutator_arity():
    word = parse_word("[[x1,x2],[x3,x4]]")
    assert word.arity == 4
    assert len(word.syllables) == 16


@pytest.mark.parametrize(
    "text,position",
    [
        ("x1^0", 3),
        ("x0", 1),
        ("[x1 x2]", 6),
        ("y1", 0),
        ("", 0),
        ("x1)", 2),
    ],
)
def test_parse_errors_carry_position(text, position):
    with pytest.raises(ParseError) as excinfo:
        parse_word(text)
    assert excinfo.value.position == position


def test_word_algebra():
    assert (X1 * X2).inverse().syllables == ((2, -1), (1, -1))
    assert (X1 ** 0).is_empty
    assert (X1 ** 4).power_law_exponent == 4
    assert (X1 ** -3).syllables == ((1, -3),)
    assert ((X1 * X2) ** 2).syllables == ((1, 1), (2, 1), (1, 1), (2, 1))
    assert (X1 * X1.inverse()).is_empty
    with pytest.raises(ValueError):
        Word.of([(0, 1)])


def test_commutator_value_in_s3(s3):
    a, b = s3.index_of("(12)"), s3.index_of("(13)")
    expected = s3.mul(s3.mul(s3.inv(a), s3.inv(b)), s3.mul(a, b))
    assert eval_word(s3, COMMUTATOR, [a, b]) == expected
    assert s3.element_order(expected) == 3


def test_power_word_in_cyclic_group(c4):
    c = c4.index_of("c")
    assert eval_word(c4, parse_word("x1^4"), [c]) == 0
    assert eval_word(c4, parse_word("x1^-1"), [c]) == c4.index_of("c^3")


def test_eval_word_needs_every_variable(s3):
    with pytest.raises(ValidationError):
        eval_word(s3, COMMUTATOR, [1])
