import math

import numpy as np
import pytest

from charvariety.character import torsion_characters
from charvariety.spectrum import specialize_upoly
from fiberpoly.alexander import MAX_SAMPLE_ORDER, check_divisibility, divides_up_to_unit, sample_characters
from fiberpoly.dilatation import dilatation, dilatation_profile, ray, restrict_to_class
from fiberpoly.teichmuller import FiberedFaceData, teichmuller, validate_theta
from laurent.poly import LaurentPoly, UnitMonomial
from lpmat.charpoly import char_poly
from lpmat.matrix import LaurentMatrix, mat_pow
from lpmat.perron import uniform_spread_exponent
from lpmat.upoly import UPoly
from utils.errors import (
    DegenerateDirectionError,
    NotDivisibleError,
    PreconditionError,
    VariableMismatchError,
    ZeroPolynomialError,
)
from utils.settings import Settings


def _t(power=1):
    return LaurentPoly.variable(1, 0, power)


def _one():
    return LaurentPoly.one(1)


def _b3():
    return UPoly(1, [_one(), -(_one() + _t() + _t(-1)), _one()])


def test_teichmuller_examples():
    zero = LaurentPoly.zero(1)
    edge = LaurentMatrix([[zero, _t()], [_t(), zero]], 1)
    vertex = LaurentMatrix([[_t()]], 1)
    assert teichmuller(edge, vertex) == UPoly(1, [_t(), 1])

    triangular = LaurentMatrix([[1, 0], [_one() + _t(), 1]], 1)
    assert teichmuller(triangular, LaurentMatrix([[1]], 1)) == UPoly(1, [-1, 1])

    data = FiberedFaceData.build(edge, vertex)
    assert data.division_holds()


def test_teichmuller_rejects_non_divisible_pair():
    with pytest.raises(NotDivisibleError) as excinfo:
        teichmuller(LaurentMatrix([[2, 1], [1, 1]], 1), LaurentMatrix([[2]], 1))
    assert "not a fibered-face pair" in str(excinfo.value)
    assert excinfo.value.remainder == UPoly(1, [-1])


def test_teichmuller_variable_mismatch():
    with pytest.raises(VariableMismatchError):
        teichmuller(LaurentMatrix.identity(2, 1), LaurentMatrix.identity(1, 2))


def test_divides_examples():
    assert divides_up_to_unit(UPoly(1, [_t(), 1]), UPoly(1, [_t(), 1]))
    assert divides_up_to_unit(UPoly(1, [-1, 1]), UPoly(1, [-1, 0, 1]))
    report = check_divisibility(UPoly(1, [-_t(), 1]), UPoly(1, [1, 0, 1]))
    assert not report.divides
    assert report.quotient is None
    assert "pseudo-remainder" in report.diagnostic
    assert report.corroborated < len(report.corroborations)


def test_divides_up_to_a_unit():
    a = UPoly(1, [_t(), -_t()])  # -t (u - 1)
    report = check_divisibility(a, UPoly(1, [-1, 0, 1]))
    assert report.divides
    assert report.unit == UnitMonomial(-1, (-1,))
    assert report.quotient == UPoly(1, [1, 1])


def test_divides_rejects_zero_divisor():
    with pytest.raises(ZeroPolynomialError):
        check_divisibility(UPoly.zero(1), UPoly(1, [1, 1]))


def test_divisibility_corroboration_passes_on_torsion_samples():
    a = UPoly(1, [-1, 1])
    product = a * UPoly(1, [_t(), 1])
    report = check_divisibility(a, product, settings=Settings())
    assert report.divides
    assert len(report.corroborations) == 25
    assert report.corroborated == 25
    assert all(c.worst_residual <= 1e-8 for c in report.corroborations)


def test_corroboration_schedule_is_seeded():
    first = sample_characters(2, 25, seed=4)
    assert first == sample_characters(2, 25, seed=4)
    assert first != sample_characters(2, 25, seed=5)
    assert all(c.is_torsion and c.order() <= MAX_SAMPLE_ORDER ** 2 for c in first)


def test_parallel_corroboration_matches_serial():
    a = UPoly(1, [-1, 1])
    product = a * UPoly(1, [_t(), 1])
    serial = check_divisibility(a, product, jobs=1, settings=Settings())
    parallel = check_divisibility(a, product, jobs=3, settings=Settings())
    assert [c.to_dict() for c in serial.corroborations] == [c.to_dict() for c in parallel.corroborations]


def test_validate_theta_examples():
    b3 = validate_theta(_b3())
    assert b3.ok
    assert b3.variables[0].max_spread == 2

    constant = validate_theta(UPoly(1, [1, -3, 1]))
    assert not constant.ok
    assert constant.flagged == [0]
    assert constant.to_dict()["flagged"] == [1]

    assert validate_theta(UPoly(1, [-_t(), 1])).ok


def test_validate_theta_ignores_unit_multiples():
    shifted = UPoly(1, [_t(3), -3 * _t(3), _t(3)])
    assert not validate_theta(shifted).ok


def test_dilatation_examples():
    assert dilatation(_b3(), [0.0]) == pytest.approx(2.6180339887, abs=1e-9)
    assert dilatation(_b3(), [math.log(2.0)]) == pytest.approx(3.1861406616, abs=1e-9)
    assert dilatation(UPoly(1, [-_t(), 1]), [1.0]) == pytest.approx(math.e, abs=1e-9)


def test_dilatation_is_monotone_on_b3_ray():
    values = [dilatation(_b3(), [xi]) for xi in np.linspace(0.0, 4.0, 16)]
    assert all(b > a for a, b in zip(values, values[1:]))
    profile = dilatation_profile(_b3(), ray([1.0], [2.0, 4.0, 8.0]))
    assert [xi for xi, _ in profile] == [(2.0,), (4.0,), (8.0,)]
    blowup = [k for _, k in profile]
    assert blowup[0] < blowup[1] < blowup[2]


def test_dilatation_degenerate_inputs():
    with pytest.raises(ZeroPolynomialError):
        dilatation(UPoly.zero(1), [0.0])
    with pytest.raises(DegenerateDirectionError):
        dilatation(UPoly(1, [_one() + _t()]), [0.0])


def test_restrict_to_class():
    s = LaurentPoly.variable(1, 0)
    restricted = restrict_to_class(_b3(), [2])
    assert restricted == UPoly(1, [_one(), -(_one() + s ** 2 + s ** -2), _one()])
    assert validate_theta(restricted).ok

    two = LaurentPoly.variable(2, 0) + LaurentPoly.variable(2, 1, -1)
    assert restrict_to_class(UPoly(2, [two, 1]), [1, 1]) == UPoly(1, [_t() + _t(-1), 1])
    with pytest.raises(PreconditionError):
        restrict_to_class(_b3(), [0])
    with pytest.raises(PreconditionError):
        restrict_to_class(_b3(), [1, 1])


def _random_laurent(rng, num_vars, positive=False):
    terms = {}
    for _ in range(int(rng.integers(1, 4))):
        exps = tuple(int(x) for x in rng.integers(-2, 3, size=num_vars))
        terms[exps] = int(rng.integers(1, 4)) if positive else int(rng.choice([-2, -1, 1, 2]))
    return LaurentPoly(num_vars, terms)


def test_divisibility_witness_specializes_at_torsion_characters():
    rng = np.random.default_rng(53)
    characters = torsion_characters(1, 6)
    for _ in range(30):
        lead = LaurentPoly.monomial((int(rng.integers(-2, 3)),), int(rng.choice([-1, 1])))
        a = UPoly(1, [_random_laurent(rng, 1) for _ in range(int(rng.integers(1, 3)))] + [lead])
        q = UPoly(1, [_random_laurent(rng, 1) for _ in range(int(rng.integers(1, 4)))])
        unit = UnitMonomial(int(rng.choice([-1, 1])), (int(rng.integers(-3, 4)),))
        t = UPoly(1, [unit.as_poly()]) * a * q
        report = check_divisibility(a, t, samples=5)
        assert report.divides
        assert UPoly(1, [report.unit.as_poly()]) * a * report.quotient == t
        for character in characters:
            lhs = specialize_upoly(t, character)
            rhs = report.unit.as_poly().eval_character(character) * np.polymul(
                specialize_upoly(a, character)[::-1], specialize_upoly(report.quotient, character)[::-1]
            )[::-1]
            assert np.allclose(lhs, rhs, atol=1e-9)


def test_validate_theta_flags_nothing_for_uniform_spread_matrices():
    rng = np.random.default_rng(59)
    for _ in range(40):
        num_vars = int(rng.integers(1, 3))
        dim = int(rng.integers(2, 4)) if num_vars == 1 else 2
        rows = [
            [
                LaurentPoly(num_vars, {(0,) * num_vars: int(rng.integers(1, 3)), tuple(int(x) for x in rng.integers(1, 3, size=num_vars)): 1})
                for _ in range(dim)
            ]
            for _ in range(dim)
        ]
        m = LaurentMatrix(rows, num_vars)
        power = max(uniform_spread_exponent(m, var) for var in range(num_vars))
        report = validate_theta(char_poly(mat_pow(m, power)))
        assert report.ok
        assert report.flagged == []
        assert all(v.max_spread >= 1 for v in report.variables)
