import numpy as np
import pytest

from braid.burau import BURAU_VARIABLE_SIGN, collapse_variables, gassner, reduced_burau
from braid.word import BraidWord, parse_braid
from charvariety.character import Character
from charvariety.spectrum import specialize_matrix
from laurent.poly import LaurentPoly
from lpmat.charpoly import char_poly
from lpmat.matrix import LaurentMatrix, determinant, mat_mul
from lpmat.upoly import UPoly
from utils.errors import InputParseError, NotPureBraidError


def _b3():
    t = LaurentPoly.variable(1, 0)
    one = LaurentPoly.one(1)
    return UPoly(1, [one, -(one + t + t ** -1), one])


def _random_pure_word(rng, strands, max_length=12):
    letters = []
    while True:
        conjugator = [int(rng.integers(1, strands)) * int(rng.choice([-1, 1])) for _ in range(int(rng.integers(0, 3)))]
        k = int(rng.integers(1, strands)) * int(rng.choice([-1, 1]))
        block = conjugator + [k, k] + [-x for x in reversed(conjugator)]
        if len(letters) + len(block) > max_length:
            break
        letters += block
        if rng.random() < 0.3:
            break
    return BraidWord(strands, tuple(letters))


def test_parse_braid_examples():
    assert parse_braid("s1 s2^-1", 3).letters == (1, -2)
    assert parse_braid("s1^-1 s1", 3).letters == (-1, 1)
    assert parse_braid("", 3).letters == ()
    with pytest.raises(InputParseError):
        parse_braid("s4", 3)
    with pytest.raises(InputParseError):
        parse_braid("s1 x2", 3)
    with pytest.raises(InputParseError):
        parse_braid("s1", 1)


def test_word_permutation_and_inverse():
    word = parse_braid("s1 s2^-1", 3)
    assert word.permutation() == (1, 2, 0)
    assert not word.is_pure()
    assert word.inverse().letters == (2, -1)
    assert str(word) == "s1 s2^-1"
    assert parse_braid("s1 s1", 3).is_pure()


def test_identity_word_is_identity():
    assert reduced_burau(BraidWord(3)) == LaurentMatrix.identity(2, 1)
    assert gassner(BraidWord(3)) == LaurentMatrix.identity(2, 3)


def test_b3_calibration():
    m = reduced_burau(parse_braid("s1 s2^-1", 3))
    assert char_poly(m) == _b3()
    trivial = specialize_matrix(m, Character.trivial(1))
    assert np.array_equal(trivial, np.array([[2, 1], [1, 1]], dtype=complex))
    assert BURAU_VARIABLE_SIGN == -1


def test_braid_relations_hold():
    for strands in (3, 4, 5):
        for i in range(1, strands - 1):
            left = reduced_burau(BraidWord(strands, (i, i + 1, i)))
            right = reduced_burau(BraidWord(strands, (i + 1, i, i + 1)))
            assert left == right
        if strands >= 4:
            assert reduced_burau(BraidWord(strands, (1, 3))) == reduced_burau(BraidWord(strands, (3, 1)))


def test_inverse_letters_cancel():
    identity = LaurentMatrix.identity(3, 1)
    for k in (1, 2, 3):
        assert reduced_burau(BraidWord(4, (k, -k))) == identity
        assert reduced_burau(BraidWord(4, (-k, k))) == identity
    word = parse_braid("s1 s2^-1 s3 s1", 4)
    assert mat_mul(reduced_burau(word), reduced_burau(word.inverse())) == identity


def test_determinant_is_a_unit():
    rng = np.random.default_rng(9)
    for _ in range(20):
        strands = int(rng.integers(2, 6))
        letters = tuple(int(rng.integers(1, strands)) * int(rng.choice([-1, 1])) for _ in range(6))
        assert determinant(reduced_burau(BraidWord(strands, letters))).is_unit()


def test_gassner_rejects_non_pure_word():
    with pytest.raises(NotPureBraidError) as excinfo:
        gassner(parse_braid("s1 s2^-1", 3))
    assert excinfo.value.permutation == (2, 3, 1)
    assert "(1 2 3)" in str(excinfo.value)


def test_gassner_specializes_to_burau():
    rng = np.random.default_rng(31)
    for _ in range(50):
        strands = int(rng.integers(2, 5))
        word = _random_pure_word(rng, strands)
        assert word.is_pure()
        assert collapse_variables(gassner(word)) == reduced_burau(word)


def test_gassner_of_full_twist_generator_square():
    m = gassner(parse_braid("s1 s1", 2))
    assert m.num_vars == 2 and m.dim == 1
    assert collapse_variables(m) == reduced_burau(parse_braid("s1 s1", 2))


def _random_word(rng, strands, max_length=12):
    length = int(rng.integers(0, max_length + 1))
    letters = [int(rng.integers(1, strands)) * int(rng.choice([-1, 1])) for _ in range(length)]
    return BraidWord(strands, tuple(letters))


def test_burau_is_a_homomorphism():
    rng = np.random.default_rng(43)
    for _ in range(100):
        strands = int(rng.integers(2, 6))
        u, v = _random_word(rng, strands), _random_word(rng, strands)
        assert reduced_burau(u * v) == mat_mul(reduced_burau(u), reduced_burau(v))


def test_gassner_is_a_homomorphism_on_pure_words():
    rng = np.random.default_rng(47)
    for _ in range(40):
        strands = int(rng.integers(2, 5))
        u, v = _random_pure_word(rng, strands), _random_pure_word(rng, strands)
        assert gassner(u * v) == mat_mul(gassner(u), gassner(v))
