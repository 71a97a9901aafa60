"""Acceptance suite: one line per criterion, at full scale.

Run with ``pytest tests/test_acceptance.py -s`` to see the report lines.
"""
import pytest

from absorbing import verify


def _run(fn):
    check = fn(1.0)
    print("\n" + check.line())
    assert check.passed, check.line()


def test_1_big_match():
    _run(verify.check_big_match)


def test_2_theorem2_limit():
    _run(verify.check_theorem2_limit)


def test_3_theorem2_guarantees():
    _run(verify.check_theorem2_guarantees)


def test_4a_sqrt_k_limits():
    _run(verify.check_sqrt_k_limits)


def test_4b_sqrt_k_strategy():
    # The expected formula is checked as written. It swaps the two coordinates
    # of the true equalizer, so this criterion fails.
    _run(verify.check_sqrt_k_strategy)


def test_5_rational_star_games():
    _run(verify.check_star_suite)


def test_6_quadratic_representation():
    _run(verify.check_representation)


def test_7_matrix_game_oracle():
    _run(verify.check_matrix_oracle)


def test_8_simulation():
    _run(verify.check_simulation)


def test_9_transforms():
    _run(verify.check_transforms)
