import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bshq.config import QuantizationConfig
from bshq.errors import InvalidBoundsError, OutOfRangeError
from bshq.lattice import AxisBounds, action_values, build_lattice, shift_index, window_lattice


def test_half_line_window_dimension():
    lat = build_lattice(1, [AxisBounds(1, math.inf, 1, 4)])
    assert lat.dim == 4


def test_two_axis_dimension():
    assert window_lattice([(0, 2), (0, 1)]).dim == 6


def test_empty_window_rejected():
    with pytest.raises(InvalidBoundsError):
        window_lattice([(2, 1)])


def test_window_outside_physical_bounds_rejected():
    with pytest.raises(InvalidBoundsError):
        AxisBounds(1, math.inf, 0, 3)


def test_clipped_takes_intersection():
    ax = AxisBounds.clipped(1, 10, -5, 20)
    assert (ax.window_lo, ax.window_hi) == (1, 10)


def test_axis_count_must_match():
    with pytest.raises(InvalidBoundsError):
        build_lattice(2, [AxisBounds.window(0, 1)])


def test_row_major_axis0_slowest():
    lat = window_lattice([(0, 2), (5, 6)])
    assert [lat.index_of(j) for j in range(lat.dim)] == [
        (0, 5), (0, 6), (1, 5), (1, 6), (2, 5), (2, 6)
    ]


@pytest.mark.parametrize("hbar, expected", [(1.0, [3.0]), (0.5, [1.5])])
def test_action_values(hbar, expected):
    lat = window_lattice([(0, 5)], QuantizationConfig(hbar=hbar))
    assert action_values(lat, (3,)) == expected


def test_action_values_zero():
    lat = window_lattice([(-1, 1), (0, 1)], QuantizationConfig(hbar=7.0))
    assert action_values(lat, (0, 0)) == [0.0, 0.0]


def test_action_values_out_of_range():
    lat = window_lattice([(0, 5)])
    with pytest.raises(OutOfRangeError):
        action_values(lat, (6,))


def test_shift_index_cases():
    lat = window_lattice([(1, 4)])
    assert shift_index(lat, (2,), 0, -1) == (1,)
    assert shift_index(lat, (1,), 0, -1) is None
    assert shift_index(lat, (4,), 0, +1) is None


windows = st.lists(
    st.tuples(st.integers(-3, 3), st.integers(0, 3)).map(lambda t: (t[0], t[0] + t[1])),
    min_size=1,
    max_size=3,
)


@given(windows)
def test_flat_index_is_bijection(ws):
    lat = window_lattice(ws)
    points = list(itertools.product(*[range(lo, hi + 1) for lo, hi in ws]))
    assert len(points) == lat.dim
    for j, p in enumerate(points):
        assert lat.flat_index(p) == j
        assert lat.index_of(j) == p


@given(windows, st.floats(0.1, 10.0))
def test_action_values_linear_in_hbar(ws, c):
    lat1 = window_lattice(ws, QuantizationConfig(hbar=1.0))
    latc = window_lattice(ws, QuantizationConfig(hbar=c))
    idx = lat1.index_of(lat1.dim // 2)
    assert action_values(latc, idx) == pytest.approx([c * a for a in action_values(lat1, idx)])


@given(windows, st.data())
def test_shift_up_then_down_is_identity(ws, data):
    lat = window_lattice(ws)
    idx = lat.index_of(data.draw(st.integers(0, lat.dim - 1)))
    axis = data.draw(st.integers(0, lat.n - 1))
    up = shift_index(lat, idx, axis, +1)
    if up is not None:
        assert shift_index(lat, up, axis, -1) == idx


def test_shift_targets_match_shift_index():
    lat = window_lattice([(0, 3), (1, 2)])
    tgt = lat.shift_targets((1, -1))
    for j in range(lat.dim):
        expected = lat.index_of(j)
        expected = (expected[0] + 1, expected[1] - 1)
        if lat.contains(expected):
            assert tgt[j] == lat.flat_index(expected)
        else:
            assert tgt[j] == -1
