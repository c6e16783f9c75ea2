"""Exception types shared across the toolkit."""


class LoopEdge(ValueError):
    pass


class VertexOutOfRange(ValueError):
    pass


class GraphOverflow(OverflowError):
    """A construction would exceed the configured vertex budget."""


class SizeMismatch(ValueError):
    pass


class BadParams(ValueError):
    pass


class NotBipartite(ValueError):
    pass


class BadAnchor(ValueError):
    pass


class EdgeOverlap(ValueError):
    pass


class Unsupported(ValueError):
    pass


class BadLayer(ValueError):
    pass


class LengthMismatch(ValueError):
    pass


class NotATree(ValueError):
    pass


class UnsupportedScheme(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """A search ran out of its node/copy budget before reaching a verdict.

    The CLI maps this family to exit status 2.
    """


class NodeBudgetExceeded(BudgetExceeded):
    def __init__(self, budget, where=""):
        self.budget = budget
        super().__init__(f"node budget {budget} exhausted{' in ' + where if where else ''}")


class CopyLimitExceeded(BudgetExceeded):
    def __init__(self, limit, pattern=""):
        self.limit = limit
        super().__init__(f"more than {limit} copies of {pattern or 'pattern'}")


class InsufficientSliceDegree(RuntimeError):
    def __init__(self, vertex, used_directions=(), message=None):
        self.vertex = vertex
        self.used_directions = tuple(used_directions)
        if message is None:
            message = (f"no usable slice through vertex {vertex} "
                       f"outside directions {sorted(self.used_directions)}")
        super().__init__(message)
