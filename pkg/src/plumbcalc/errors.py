"""Exception hierarchy shared by all plumbcalc modules."""


class PlumbError(Exception):
    """Base class for every error raised by plumbcalc."""


# linear algebra

class Singular(PlumbError):
    pass


# trees

class NotATree(PlumbError):
    pass


class BadOrder(PlumbError):
    pass


class UnknownVertex(PlumbError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


# diagonalizer

class ZeroLeafPresent(PlumbError):
    pass


class NotZeroLeaf(PlumbError):
    pass


class ParentHasNonLeafChildren(PlumbError):
    pass


# moves

class PatternMismatch(PlumbError):
    pass


class StaleId(PlumbError):
    pass


class ReplayFailed(PlumbError):
    def __init__(self, index: int, cause: Exception):
        super().__init__(f"move {index}: {cause}")
        self.index = index
        self.cause = cause


# continued fractions

class NotABranch(PlumbError):
    pass


class NotContractible(PlumbError):
    pass


class SearchExhausted(PlumbError):
    def __init__(self, depth_limit: int):
        super().__init__(f"no certificate within depth {depth_limit}")
        self.depth_limit = depth_limit


# reducer

class NotWeaklyND(PlumbError):
    pass


class WeakNDViolated(PlumbError):
    pass


class NotAPositiveLeaf(PlumbError):
    pass


class SingleVertexTree(PlumbError):
    pass


class NotInteriorPositive(PlumbError):
    pass


class FallbackRequired(PlumbError):
    pass


class FallbackExhausted(PlumbError):
    def __init__(self, depth: int):
        super().__init__(f"fallback search exhausted at depth {depth}")
        self.depth = depth


# text formats

class ParseError(PlumbError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class BadParams(PlumbError):
    pass
