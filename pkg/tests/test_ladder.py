import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from prahm.ladder import (LadderState, commutator_check, demote, energy_eigenvalue, number,
                          number_check, promote)

TAUS = np.linspace(-1.0, 1.0, 41)


def test_promote_examples():
    assert promote(LadderState(0, 1.0)) == LadderState(1, 1.0)
    assert promote(LadderState(3, 1.0)) == LadderState(4, 2.0)
    z = promote(LadderState(0, 0.0))
    assert z.M == 1 and z.is_zero


def test_demote_examples():
    assert demote(LadderState(0, 1.0)).is_zero
    assert demote(LadderState(4, 1.0)) == LadderState(3, 2.0)


@given(st.integers(0, 20), st.floats(0.0, 10.0))
def test_ladder_arithmetic(M, c):
    s = LadderState(M, c)
    up = promote(s)
    assert up.M == M + 1 and abs(up.coeff - c * math.sqrt(M + 1)) <= 1e-12 * max(1, c)
    back = demote(up)
    assert back.M == M and abs(back.coeff - c * (M + 1)) <= 1e-12 * max(1, c * (M + 1))
    assert abs(number(s).coeff - c * M) <= 1e-12 * max(1, c * M)
    assert commutator_check(s) <= 1e-12 * max(1, c * (M + 1))


@pytest.mark.parametrize("M", range(21))
def test_energy_eigenvalue(M):
    e = energy_eigenvalue(LadderState(M, 1.0))
    assert abs(e - (M + 0.5)) <= 1e-12
    assert abs(e / energy_eigenvalue(LadderState(0, 1.0)) - (2 * M + 1)) <= 1e-12


def test_commutator_examples():
    assert commutator_check(LadderState(0, 1.0)) == 0.0
    assert commutator_check(LadderState(7, 1.0)) <= 1e-12
    assert commutator_check(LadderState(3, 0.0)) == 0.0


@pytest.mark.parametrize("M", range(6))
def test_number_differential_form(M):
    assert number_check(LadderState(M, 1.0), TAUS) <= 1e-6


def test_number_differential_order():
    s = LadderState(5, 1.0)
    a = number_check(s, TAUS, 1e-4)
    b = number_check(s, TAUS, 5e-5)
    assert 3.0 <= a / b <= 5.0


def test_state_properties():
    s = LadderState(2, 1.0, omega=3.0)
    assert s.helical_frequency == 7.5
    assert s.period == pytest.approx(2 * math.pi / 7.5)
    f = s.field(np.array([0.0, s.period / 4]))
    assert np.allclose(f.x, [1.0, 0.0], atol=1e-15) and np.allclose(f.y, [0.0, 1.0])


def test_state_validation():
    with pytest.raises(ValueError):
        LadderState(-1, 1.0)
    with pytest.raises(ValueError):
        LadderState(1, -1.0)
