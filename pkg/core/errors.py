# ===============================================================
#  File: errors.py
#  Description: Exception hierarchy shared by every Combgraft module
#
#  Author: ac.craft8
#  Created: 2025-06-24
#  License: MIT
# ===============================================================

# ================================
#  Base Error
# ================================

class GraftError(Exception):
    """Base class for every error raised by Combgraft"""


# ================================
#  Input Errors
# ================================

class DuplicateLabel(GraftError):
    def __init__(self, label):
        super().__init__(f"duplicate vertex label: {label!r}")
        self.label = label


class UnknownLabel(GraftError):
    def __init__(self, label):
        super().__init__(f"unknown vertex label: {label!r}")
        self.label = label


class InvalidVertex(GraftError):
    def __init__(self, vertex):
        super().__init__(f"invalid vertex id: {vertex!r}")
        self.vertex = vertex


class InvalidEdge(GraftError):
    def __init__(self, edge):
        super().__init__(f"invalid edge id: {edge!r}")
        self.edge = edge


class InvalidWalk(GraftError):
    """Raised when a vertex/edge sequence is not a path or circuit of the graph"""


class OddComponent(GraftError):
    def __init__(self, component):
        self.component = frozenset(component)
        super().__init__(
            f"component {sorted(self.component)} holds an odd number of terminals"
        )


class DocumentError(GraftError):
    """Malformed graft document; carries a position when one is known"""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{where}")


# ================================
#  Engine Limits
# ================================

class CapExceeded(GraftError):
    def __init__(self, quantity, value, cap):
        super().__init__(f"{quantity} = {value} exceeds the configured cap {cap}")
        self.quantity = quantity
        self.value = value
        self.cap = cap


# ================================
#  Precondition Errors
# ================================

class Disconnected(GraftError):
    def __init__(self, x, y):
        super().__init__(f"vertices {x} and {y} lie in different connected components")
        self.x = x
        self.y = y


class NotBipartite(GraftError):
    pass


class NotFactorizable(GraftError):
    pass


class NotComb(GraftError):
    pass


class NotRelated(GraftError):
    def __init__(self, c1, c2):
        super().__init__(f"component {c1} is not strictly below component {c2}")
        self.c1 = c1
        self.c2 = c2


class UnknownComponent(GraftError):
    def __init__(self, component):
        super().__init__(f"unknown factor-component: {component!r}")
        self.component = component


# ================================
#  Invariant Breaches
# ================================

class AntisymmetryViolation(GraftError):
    def __init__(self, c1, c2):
        super().__init__(f"components {c1} and {c2} lie below each other")
        self.c1 = c1
        self.c2 = c2


class InconsistentLabeling(GraftError):
    def __init__(self, component, classes):
        super().__init__(
            f"upper bound {component} receives conflicting attributes {sorted(classes)}"
        )
        self.component = component
        self.classes = tuple(sorted(classes))


# ================================
#  Generator Errors
# ================================

class Exhausted(GraftError):
    def __init__(self, max_tries):
        super().__init__(f"no comb-bipartite instance found in {max_tries} tries")
        self.max_tries = max_tries
