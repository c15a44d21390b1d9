# ABOUTME: Shared fixtures: the small hand-checkable binomial systems used across the test suite
# ABOUTME: Systems are written as (c0, c1, exponents) triples, one per equation

import json
import math

import pytest

from binomial_roots.core.system import BinomialSystem

LN2 = math.log(2)


def system(*equations) -> BinomialSystem:
    return BinomialSystem.from_equations(list(equations))


@pytest.fixture
def no_root_system() -> BinomialSystem:
    """1 + x^2 = 0."""
    return system((1, 1, [2]))


@pytest.fixture
def sqrt2_system() -> BinomialSystem:
    """x^2 - 2 = 0."""
    return system((-2, 1, [2]))


@pytest.fixture
def worked_system() -> BinomialSystem:
    """x1 x2 = 4 and x1 / x2 = 1, with real roots (2, 2) and (-2, -2)."""
    return system((-4, 1, [1, 1]), (-1, 1, [1, -1]))


@pytest.fixture
def two_root_system() -> BinomialSystem:
    """x1^2 = 1 and x2^3 = 8."""
    return system((-1, 1, [2, 0]), (-8, 1, [0, 3]))


def system_document(*equations) -> dict:
    return {
        "schema_version": 1,
        "equations": [{"c0": c0, "c1": c1, "exponents": list(exponents)} for c0, c1, exponents in equations],
    }


@pytest.fixture
def write_json(tmp_path):
    def write(name: str, document) -> str:
        path = tmp_path / name
        path.write_text(document if isinstance(document, str) else json.dumps(document))
        return str(path)

    return write
