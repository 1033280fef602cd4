import numpy as np
import pytest
from hypothesis import given, strategies as st

from holgerbe.errors import ConditioningError, DomainError, SpanMismatchError
from holgerbe.exterior import DualTopWedge, TopWedge, concat, pair, wedge_ratio

e = np.eye(3, dtype=complex)


def rand_complex(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def test_wedge_ratio_examples(rng):
    B = rand_complex(rng, 4, 2)
    assert wedge_ratio(TopWedge(B, 2), TopWedge(B, 1)) == pytest.approx(2)
    assert wedge_ratio(TopWedge(e[:, [1, 0]]), TopWedge(e[:, [0, 1]])) == pytest.approx(-1)
    T = rand_complex(rng, 2, 2)
    assert wedge_ratio(TopWedge(B @ T), TopWedge(B)) == pytest.approx(np.linalg.det(T))


def test_wedge_ratio_errors():
    with pytest.raises(SpanMismatchError):
        wedge_ratio(TopWedge(e[:, [0]]), TopWedge(e[:, [1]]))
    with pytest.raises(DomainError):
        wedge_ratio(TopWedge(e[:, [0]]), TopWedge(e[:, [0]], 0))
    with pytest.raises(SpanMismatchError):
        wedge_ratio(TopWedge(e[:, [0]]), TopWedge(e[:, [0, 1]]))


def test_concat_examples(rng):
    v = TopWedge(rand_complex(rng, 3, 2), 1.5)
    assert wedge_ratio(concat(TopWedge.scalar(3), v), v) == pytest.approx(1.5 / 1.5)
    u = concat(TopWedge(e[:2, [0]]), TopWedge(e[:2, [1]]))
    assert np.array_equal(u.B, np.eye(2)) and u.c == 1
    with pytest.raises(ConditioningError, match="spans not transverse"):
        concat(TopWedge(e[:, [0]]), TopWedge(e[:, [0]]))


def test_concat_associative_at_representation_level(rng):
    a, b, c = (TopWedge(rand_complex(rng, 5, k), 1 + 1j * k) for k in (1, 2, 1))
    left, right = concat(concat(a, b), c), concat(a, concat(b, c))
    assert np.array_equal(left.B, right.B) and left.c == right.c


def test_pair_examples(rng):
    w = TopWedge(rand_complex(rng, 3, 2), 0.7)
    assert pair(w.dual(), w) == pytest.approx(1)
    assert pair(w.dual(), w.scale(3)) == pytest.approx(3)
    assert pair(TopWedge.scalar(3, 2).dual(), TopWedge.scalar(3, 6)) == pytest.approx(3)
    with pytest.raises(DomainError):
        DualTopWedge(TopWedge(w.B, 0))


def test_dual_scale():
    w = TopWedge(e[:, [0]], 2)
    assert pair(w.dual().scale(5), w) == pytest.approx(5)


@given(st.integers(0, 2**32 - 1), st.integers(1, 5))
def test_representation_independence(seed, k):
    rng = np.random.default_rng(seed)
    B = rand_complex(rng, 6, k)
    T = rand_complex(rng, k, k)
    c = complex(*rng.standard_normal(2))
    assert abs(wedge_ratio(TopWedge(B @ T, c / np.linalg.det(T)), TopWedge(B, c)) - 1) < 1e-10


@given(st.integers(0, 2**32 - 1), st.complex_numbers(min_magnitude=0.1, max_magnitude=10))
def test_concat_scalar_linearity(seed, s):
    rng = np.random.default_rng(seed)
    u, v = TopWedge(rand_complex(rng, 4, 2)), TopWedge(rand_complex(rng, 4, 1))
    assert abs(wedge_ratio(concat(u.scale(s), v), concat(u, v)) - s) < 1e-9 * abs(s)
