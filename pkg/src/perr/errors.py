"""Exception hierarchy shared by all solvers and tools."""


class PerrError(Exception):
    pass


class Unreachable(PerrError):
    pass


class Disconnected(PerrError):
    pass


class InvalidInstance(PerrError):
    pass


class ParseError(PerrError):
    def __init__(self, line, reason):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class GenerationFailed(PerrError):
    pass


class BadSize(PerrError):
    pass


class PlanError(PerrError):
    """Base class for plan validation failures."""


class StartMismatch(PlanError):
    pass


class GoalMismatch(PlanError):
    def __init__(self, t, robots):
        super().__init__(f"robots {list(robots)} not at goal at final timestep t={t}")
        self.t = t
        self.robots = list(robots)


class VertexCollision(PlanError):
    def __init__(self, t, i, j, node):
        super().__init__(f"robots {i} and {j} both at node {node} at t={t}")
        self.t, self.i, self.j, self.node = t, i, j, node


class IllegalMove(PlanError):
    def __init__(self, t, i, src, dst):
        super().__init__(f"robot {i} moves {src}->{dst} between t={t} and t={t + 1}, not an edge")
        self.t, self.i, self.src, self.dst = t, i, src, dst


class NotShortest(PerrError):
    pass


class StateBudgetExceeded(PerrError):
    pass


class TimestepCapExceeded(PerrError):
    pass


class NoProgress(PerrError):
    pass


class BoundExceeded(PerrError):
    pass


class NotPathGraph(PerrError):
    pass


class NotSquareGrid(PerrError):
    pass


class MonovariantViolation(PerrError):
    """The RIP potential failed to decrease, or started above k^2 + SIC."""
