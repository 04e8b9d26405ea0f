"""Shared fixtures: the four example fields and their completed systems."""

from __future__ import annotations

import pytest

from redint.builtin import airy_field, airy_system, cei_field, cei_system_v1, cei_system_v2
from redint.completion import complete_refined
from redint.diffop import DerivationSpec, build_p
from redint.poly import MonomialOrder, parse_poly
from redint.rules import basic_rules


def tpoly(text, n):
    return parse_poly(text, [], [f"t{i+1}" for i in range(n)])


def xtpoly(text, n):
    return parse_poly(text, [f"x{i+1}" for i in range(n)],
                      [f"t{i+1}" for i in range(n)])


@pytest.fixture(scope="session")
def tan_field():
    deriv = DerivationSpec(
        ["t1", "t2"],
        [(tpoly("1", 2), tpoly("1", 2)), (tpoly("t2^2+1", 2), tpoly("1", 2))])
    op = build_p(deriv, tpoly("t2^2+1", 2))
    return deriv, op, MonomialOrder.lex(2)


@pytest.fixture(scope="session")
def tan_basic(tan_field):
    _, op, order = tan_field
    return basic_rules(op, order)


@pytest.fixture(scope="session")
def tan_complete(tan_basic):
    return complete_refined(tan_basic, 200).system


@pytest.fixture(scope="session")
def tanln_field():
    one = tpoly("1", 3)
    deriv = DerivationSpec(
        ["t1", "t2", "t3"],
        [(one, one), (one, tpoly("t1", 3)), (tpoly("t3^2+1", 3), tpoly("t1", 3))])
    op = build_p(deriv, tpoly("t3^2+1", 3))
    order = MonomialOrder([[0, 0, 1], [0, 1, 0], [1, 0, 0]])
    return deriv, op, order


@pytest.fixture(scope="session")
def tanln_basic(tanln_field):
    _, op, order = tanln_field
    return basic_rules(op, order)


@pytest.fixture(scope="session")
def tanln_complete(tanln_basic):
    return complete_refined(tanln_basic, 200).system


@pytest.fixture(scope="session")
def airy():
    deriv, op, order = airy_field()
    return deriv, op, order, airy_system()


@pytest.fixture(scope="session")
def cei1():
    deriv, op = cei_field()
    system = cei_system_v1()
    return deriv, op, system.order, system


@pytest.fixture(scope="session")
def cei2():
    deriv, op = cei_field()
    system = cei_system_v2()
    return deriv, op, system.order, system
