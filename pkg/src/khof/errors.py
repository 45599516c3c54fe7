"""Exception types shared across the khof modules."""


class KhofError(Exception):
    """Base class for all khof errors."""


class DiagramError(KhofError):
    """A planar-diagram invariant is violated."""


class DanglingArc(DiagramError):
    """An arc id does not appear exactly once as an in-slot and once as an out-slot."""

    def __init__(self, arc, detail=""):
        self.arc = arc
        super().__init__(f"arc {arc} is dangling{': ' + detail if detail else ''}")


class InconsistentCycle(DiagramError):
    """A component cycle does not follow the crossing in/out adjacency."""

    def __init__(self, component, arc, detail=""):
        self.component = component
        self.arc = arc
        super().__init__(
            f"component {component} breaks at arc {arc}{': ' + detail if detail else ''}"
        )


class BadSign(DiagramError):
    """A crossing sign is not +1 or -1."""

    def __init__(self, crossing, value):
        self.crossing = crossing
        self.value = value
        super().__init__(f"crossing {crossing} has sign {value!r}, expected +1 or -1")


class ComponentOutOfRange(KhofError):
    """A component index does not exist in the diagram."""


class NotAForest(KhofError):
    """The graph contains a cycle, so it cannot define a forest of unknots."""

    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        super().__init__(f"graph contains the cycle {self.cycle}")


class BadParameters(KhofError):
    """Family parameters are outside the allowed range."""


class CrossingBudgetExceeded(KhofError):
    """The diagram has more crossings than the configured budget allows."""

    def __init__(self, crossings, budget):
        self.crossings = crossings
        self.budget = budget
        super().__init__(f"{crossings} crossings exceeds the budget of {budget}")


class BadBasepoint(KhofError):
    """The requested basepoint does not lie on the named component."""


class EmptySelection(KhofError):
    """A sublink selection must contain at least one component."""


class VariableMismatch(KhofError):
    """Arithmetic was attempted between polynomials in different variables."""


class ComponentCountMismatch(KhofError):
    """An operation expected diagrams with a specific number of components."""


class RequiresMAtLeast4(KhofError):
    """The conjugation-equation analysis needs at least 4 generators."""


class NotASolution(KhofError):
    """The pair (u, v) does not solve the conjugation equation."""


class BudgetExceeded(KhofError):
    """An enumeration request is beyond the combinatorial budget."""


class InputError(KhofError):
    """Malformed user input (files, words, parameters)."""
