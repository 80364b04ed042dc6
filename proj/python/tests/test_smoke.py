import json

import pytest

import agealg


def test_profile_of_sym3():
    assert agealg.profile("sym:3", 6) == [1, 1, 2, 3, 4, 5, 7]


def test_groupoid_profile_and_series():
    assert agealg.profile("groupoid", 4) == [1, 2, 5, 9, 14]
    h = agealg.hilbert("groupoid")
    assert h["text"] == "(1 - Z + 2Z^2 - Z^3)/(1 - Z)^3"


def test_components_of_wheel_plus_coclique():
    c = agealg.components("wheel_plus_coclique")
    assert len(c["components"]) == 3
    assert c["k"] == 2


def test_template_round_trip():
    t = agealg.template("clique_plus_coclique")
    assert agealg.profile(t, 5) == agealg.profile("clique_plus_coclique", 5)


def test_planar():
    assert [len(agealg.reduced_trees(n)) for n in range(8)] == [1, 1, 1, 3, 11, 45, 197, 903]
    assert agealg.contract([[1], [4, 1], [4, 3]]) == "(o,(o,o))"
    assert agealg.shuffle_constant("o", "o", "(o,o)") == 2


def test_errors():
    with pytest.raises(agealg.InputError):
        agealg.profile("nope", 3)
    with pytest.raises(agealg.InputError):
        agealg.contract([[2]])
    assert agealg.run_cli("hilbert", "-b", "sym:2", "--dim", "1")[0] == 5


def test_cli_in_process():
    code, out, _ = agealg.run_cli("qpoly", "-b", "sym:2")
    assert code == 0
    assert json.loads(out)["quasi_polynomial"]["period"] == 2
    assert agealg.run_cli("frobnicate")[0] == 2
