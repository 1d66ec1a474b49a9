import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from perr.errors import GoalMismatch, IllegalMove, PlanError, StartMismatch, VertexCollision
from perr.graph import Graph
from perr.instances import Instance
from perr.validate import Plan, count_swaps, dumps_plan, parse_plan, validate_plan


def test_single_swap():
    inst = Instance(Graph.path(2), (0, 1), (1, 0))
    m = validate_plan(inst, Plan.from_rows([[0, 1], [1, 0]]))
    assert (m.makespan, m.swaps) == (1, 1)


def test_rotation_is_not_a_swap():
    inst = Instance(Graph.cycle(3), (0, 1, 2), (1, 2, 0))
    m = validate_plan(inst, Plan.from_rows([[0, 1, 2], [1, 2, 0]]))
    assert (m.makespan, m.swaps) == (1, 0)


def test_collision_location():
    inst = Instance(Graph.path(5), (0, 4), (1, 3))
    rows = [[0, 4], [1, 3], [2, 3], [2, 2], [1, 3]]
    with pytest.raises(VertexCollision) as ei:
        validate_plan(inst, Plan.from_rows(rows))
    assert (ei.value.t, ei.value.i, ei.value.j, ei.value.node) == (3, 0, 1, 2)


def test_illegal_move():
    inst = Instance(Graph.path(4), (0,), (3,))
    with pytest.raises(IllegalMove) as ei:
        validate_plan(inst, Plan.from_rows([[0], [1], [3]]))
    assert (ei.value.t, ei.value.i) == (1, 0)


def test_start_and_goal_mismatch():
    inst = Instance(Graph.path(3), (0,), (2,))
    with pytest.raises(StartMismatch):
        validate_plan(inst, Plan.from_rows([[1], [2]]))
    with pytest.raises(GoalMismatch) as ei:
        validate_plan(inst, Plan.from_rows([[0], [1]]))
    assert ei.value.t == 1 and ei.value.robots == [0]


def test_waiting_is_legal_and_zero_makespan():
    inst = Instance(Graph.path(3), (0, 2), (0, 2))
    assert validate_plan(inst, Plan.from_rows([[0, 2]])).makespan == 0


def test_wrong_width():
    inst = Instance(Graph.path(3), (0, 2), (0, 2))
    with pytest.raises(PlanError):
        validate_plan(inst, Plan.from_rows([[0]]))


def test_truncated():
    p = Plan.from_rows([[0], [1], [2], [2], [2]])
    assert p.truncated([2]).makespan == 2
    assert p.truncated([5]) is p


@given(st.lists(st.integers(0, 9), min_size=1, max_size=30))
def test_single_robot_never_swaps(walk):
    assert count_swaps(np.array(walk).reshape(-1, 1)) == 0


def test_swap_count_over_time():
    rows = [[0, 1, 2, 3], [1, 0, 3, 2], [0, 1, 3, 2]]
    assert count_swaps(np.array(rows)) == 3


def test_plan_csv_roundtrip():
    p = Plan.from_rows([[0, 1], [1, 0]])
    text = dumps_plan(p)
    assert text.splitlines()[0] == "t,robot_0,robot_1"
    assert np.array_equal(parse_plan(text).positions, p.positions)


@pytest.mark.parametrize("text", ["", "x,robot_0\n0,1\n", "t,robot_1\n0,1\n", "t,robot_0\n0,1\n2,1\n",
                                  "t,robot_0\n0,a\n", "t,robot_0\n"])
def test_plan_csv_errors(text):
    with pytest.raises(PlanError):
        parse_plan(text)
