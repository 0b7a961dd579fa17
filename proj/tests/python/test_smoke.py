from fractions import Fraction

import pytest

import combnet


def test_topology():
    t = combnet.topology(4, 2)
    assert t["K"] == 6


def test_bounds():
    assert combnet.bound("thm2", 4, 2, 6, 2) == Fraction(7, 17)
    assert combnet.bound("thm3", 4, 2, 6, Fraction(1, 2), b=3) == Fraction(13, 12)
    assert combnet.bound("cutset", 4, 2, 6, 6) == 0


def test_schemes():
    out = combnet.scheme("elim", 4, 2, 6, 1, verify=True)
    assert out["load"] == Fraction(2, 3)
    assert out["decoded"]
    assert combnet.scheme("general", 4, 2, 6, 1)["load"] == Fraction(3, 4)
    assert combnet.elim_closed_form(5, 2) == 1


def test_sweep_sandwich():
    rows = combnet.sweep(3, 2, 3, [0, Fraction(1, 2), 1, 3], ["cutset", "thm1", "scheme_general"])
    assert {m for _, m, _, _ in rows} == {"cutset", "thm1", "scheme_general"}
    at_one = {m: v for M, m, v, _ in rows if M == 1}
    assert at_one["thm1"] <= at_one["scheme_general"]


def test_coding_matrices_and_groups():
    ms = combnet.coding_matrices(6, 3, s=-3)
    assert len(ms) == 2
    assert len(combnet.group_divide(3)["groups"]) == 5


def test_errors():
    with pytest.raises(ValueError):
        combnet.topology(3, 4)
    with pytest.raises(ValueError):
        combnet.low_memory_optimum(4, 2, 6, 2)
