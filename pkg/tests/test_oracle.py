import pytest
from hypothesis import given

from perr.errors import StateBudgetExceeded
from perr.graph import Graph
from perr.instances import Instance, gen_linear_array
from perr.oracle import joint_successors, optimal_makespan
from perr.validate import validate_plan

from strategies import instances


def inst(g, starts, goals):
    return Instance(g, tuple(starts), tuple(goals))


def test_examples():
    assert optimal_makespan(inst(Graph.path(2), [0, 1], [1, 0]))[0] == 1
    assert optimal_makespan(inst(Graph.cycle(3), [0, 1, 2], [1, 2, 0]))[0] == 1
    # makespan 2 would put both robots on node 1 at t=1
    assert optimal_makespan(inst(Graph.path(3), [0, 2], [2, 0]))[0] == 3


def test_already_solved():
    t, plan = optimal_makespan(inst(Graph.path(3), [0, 2], [0, 2]))
    assert t == 0 and plan.makespan == 0


def test_successors_allow_swaps_but_not_collisions():
    options = [(0, 1), (1, 0)]
    assert sorted(joint_successors(options, (0, 1))) == [(0, 1), (1, 0)]


def test_budget():
    with pytest.raises(StateBudgetExceeded):
        optimal_makespan(gen_linear_array(8, 3), state_budget=50)


@given(instances(max_nodes=7, max_k=3))
def test_witness_is_valid_and_at_least_longest_distance(instance):
    t, plan = optimal_makespan(instance)
    assert validate_plan(instance, plan).makespan == t
    assert t >= instance.l
