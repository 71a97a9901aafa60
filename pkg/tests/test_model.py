from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from absorbing.errors import DimensionError, DomainError
from absorbing.model import (
    AbsorbingGame,
    QuadraticTarget,
    StationaryStrategy,
    affine,
    builtin,
    dual,
    from_star_matrix,
    represent_quadratic,
    validate,
)
from absorbing.solver import build_W

F = Fraction


@st.composite
def games(draw, max_side=3):
    m = draw(st.integers(1, max_side))
    n = draw(st.integers(1, max_side))
    qs = st.sampled_from([F(0), F(1), F(1, 2), F(1, 3), F(2, 5)])
    cell = st.integers(-5, 5)
    q = [[draw(qs) for _ in range(n)] for _ in range(m)]
    g = [[draw(cell) for _ in range(n)] for _ in range(m)]
    w = [[draw(cell) if q[i][j] else 0 for j in range(n)] for i in range(m)]
    return AbsorbingGame(g, q, w)


def test_validate_big_match_ok():
    assert validate(builtin("big-match")) == []


def test_validate_q_out_of_range():
    G = AbsorbingGame([[0, 0]], [[F(3, 2), 0]], [[1, 0]])
    assert validate(G) == ["q out of range at (1,1): 3/2"]


def test_validate_dimension_mismatch():
    G = AbsorbingGame([[0, 0], [0, 0]], [[0, 0, 0], [0, 0, 0]], [[0, 0], [0, 0]])
    problems = validate(G)
    assert len(problems) == 1 and problems[0].startswith("dimension mismatch: q")


def test_from_star_matrix_big_match():
    G = from_star_matrix([[(1, True), (0, True)], [(0, False), (1, False)]])
    assert G.q == ((1, 1), (0, 0))
    assert G.g == ((1, 0), (0, 1))
    assert G.w[0] == G.g[0]
    assert G.is_deterministic()


def test_from_star_matrix_theorem2():
    G = builtin("theorem2")
    assert G.g == ((1, 1, 2), (1, 2, 0), (2, 0, 1))
    assert G.q == ((1, 1, 1), (1, 1, 0), (1, 0, 1))


def test_from_star_matrix_unstarred():
    G = from_star_matrix([[(5, False)]])
    assert G.q == ((0,),) and G.g == ((5,),)


def test_from_star_matrix_errors():
    with pytest.raises(DimensionError):
        from_star_matrix([])
    with pytest.raises(DimensionError):
        from_star_matrix([[(1, True)], [(1, True), (2, False)]])


def test_builtin_sqrt_k():
    G = builtin("sqrt-k", 4)
    assert G.q == ((F(1, 4), 1), (1, 1))
    assert G.w == ((4, 1), (1, 4))
    assert G.g[0][0] == 0
    assert builtin("big-match").shape == (2, 2)


@pytest.mark.parametrize("k", [None, 0, -2, F(3, 2)])
def test_builtin_bad_k(k):
    with pytest.raises(DomainError):
        builtin("sqrt-k", k)


def test_builtin_unknown():
    with pytest.raises(DomainError):
        builtin("prisoners-dilemma")


def test_affine_identity_and_scaling():
    G = builtin("big-match")
    assert affine(G, 1, 0) == G
    T = affine(builtin("theorem2"), 2, 0)
    assert T.g == tuple(tuple(2 * v for v in row) for row in builtin("theorem2").g)
    with pytest.raises(DomainError):
        affine(G, 0, 1)


@given(games(), st.fractions(min_value=F(1, 4), max_value=5, max_denominator=6),
       st.fractions(min_value=-5, max_value=5, max_denominator=6),
       st.fractions(min_value=F(1, 100), max_value=F(99, 100), max_denominator=100),
       st.fractions(min_value=-6, max_value=6, max_denominator=10))
def test_affine_w_matrix_identity(G, a, b, lam, z):
    # W'_lam(a z + b) = a W_lam(z) entrywise
    left = build_W(affine(G, a, b), lam, a * z + b)
    right = build_W(G, lam, z)
    assert left == [[a * v for v in row] for row in right]


@given(games())
def test_dual_involution(G):
    assert dual(dual(G)) == G


def test_dual_shape_and_signs():
    D = dual(builtin("sqrt-k", 3))
    assert D.q == ((F(1, 3), 1), (1, 1))
    assert D.w == ((-3, -1), (-1, -3))


def test_stationary_strategy_validation():
    s = StationaryStrategy(1, (F(1, 3), F(2, 3)))
    assert s.support == (0, 1)
    with pytest.raises(DomainError):
        StationaryStrategy(1, (F(1, 2), F(1, 3)))
    with pytest.raises(DomainError):
        StationaryStrategy(2, (F(3, 2), F(-1, 2)))
    with pytest.raises(DomainError):
        StationaryStrategy(3, (1,))


def test_represent_quadratic_shapes():
    assert represent_quadratic(QuadraticTarget(0, 1, 2)) == builtin("sqrt-k", 2)
    G = represent_quadratic(QuadraticTarget(F(7, 2), 0, 5))
    assert G.shape == (1, 1) and G.w[0][0] == F(7, 2)
    neg = represent_quadratic(QuadraticTarget(0, -1, 3))
    assert neg == dual(builtin("sqrt-k", 3))
    with pytest.raises(DomainError):
        QuadraticTarget(0, 1, 0)


def test_payoff_range_ignores_placeholder_w():
    G = AbsorbingGame([[0, 1]], [[0, 1]], [[1000, 2]])
    assert G.payoff_range() == (0, 2)
