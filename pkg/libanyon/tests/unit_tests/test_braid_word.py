import numpy as np
import pytest

from libanyon.braid_word import (
    BraidError,
    BraidWord,
    BraidWordParseError,
    identity_word,
    parse_braid_word,
    random_braid_word,
)


def test_parse_and_print():
    w = parse_braid_word("s1 s2^-1 s1", 3)
    assert w.letters == ((1, 1), (2, -1), (1, 1))
    assert str(w) == "s1 s2^-1 s1", "Printing should re-emit the grammar"
    assert parse_braid_word(str(w), 3) == w
    assert parse_braid_word("", 4) == identity_word(4)
    assert len(parse_braid_word("", 1)) == 0, "A single strand carries the empty word"


@pytest.mark.parametrize(
    "text, column",
    [
        ("s1 s3", 4),
        ("s1 x2", 4),
        ("s1  s2", 4),
        ("s0", 1),
        ("s1^2", 1),
        (" s1", 1),
    ],
)
def test_parse_errors_report_column(text, column):
    with pytest.raises(BraidWordParseError) as excinfo:
        parse_braid_word(text, 3)
    assert excinfo.value.column == column, f"{text!r}: expected column {column}, got {excinfo.value.column}"
    assert f"at column {column}" in str(excinfo.value)
    assert isinstance(excinfo.value, ValueError)


def test_word_algebra():
    a = parse_braid_word("s1 s2", 3)
    b = parse_braid_word("s2^-1", 3)
    assert str(a * b) == "s1 s2 s2^-1"
    assert str(a.inverse()) == "s2^-1 s1^-1"
    assert str(a.mirror()) == "s1^-1 s2^-1"
    assert str(a**2) == "s1 s2 s1 s2"
    assert a**-1 == a.inverse()
    assert (a * b).writhe == 1
    assert str(a.conjugated_by(b)) == "s2^-1 s1 s2 s2"
    stab = a.stabilized(-1)
    assert stab.n_strands == 4 and str(stab) == "s1 s2 s3^-1"
    with pytest.raises(BraidError):
        a * parse_braid_word("s1", 2)


def test_permutation():
    assert parse_braid_word("s1", 2).permutation() == (1, 0)
    assert parse_braid_word("s1 s2", 3).permutation() == (1, 2, 0)
    assert identity_word(3).permutation() == (0, 1, 2)


def test_invalid_words():
    with pytest.raises(BraidError):
        BraidWord(0)
    with pytest.raises(BraidError):
        BraidWord(2, ((2, 1),))
    with pytest.raises(BraidError):
        BraidWord(3, ((1, 2),))


def test_random_words_are_seeded():
    a = random_braid_word(4, 30, np.random.default_rng(7))
    b = random_braid_word(4, 30, np.random.default_rng(7))
    assert a == b and len(a) == 30, "Same seed should give the same word"
    assert all(1 <= i <= 3 and e in (1, -1) for i, e in a.letters)
    assert len(random_braid_word(1, 10)) == 0


if __name__ == "__main__":
    test_parse_and_print()
    test_word_algebra()
    test_permutation()
    test_invalid_words()
    test_random_words_are_seeded()
