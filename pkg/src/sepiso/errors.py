"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class SepisoError(Exception):
    """Base class for every error raised by sepiso."""


# --- groups -----------------------------------------------------------------


class GroupError(SepisoError, ValueError):
    pass


class NotClosed(GroupError):
    def __init__(self, row: int, col: int, entry: object):
        self.row, self.col, self.entry = row, col, entry
        super().__init__(f"table[{row}][{col}] = {entry!r} is not an element")


class NotAssociative(GroupError):
    def __init__(self, a: int, b: int, c: int):
        self.triple = (a, b, c)
        super().__init__(f"(g{a}*g{b})*g{c} != g{a}*(g{b}*g{c})")


class NoIdentity(GroupError):
    def __init__(self):
        super().__init__("no two-sided identity element")


class MissingInverse(GroupError):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"element {index} has no two-sided inverse")


class GroupTooLarge(GroupError):
    def __init__(self, order: int, limit: int):
        self.order, self.limit = order, limit
        super().__init__(f"group of order {order} exceeds enumeration limit {limit}")


class NotAHomomorphism(GroupError):
    def __init__(self, a: int, b: int):
        self.pair = (a, b)
        super().__init__(f"map does not preserve the product of {a} and {b}")


# --- point sets -------------------------------------------------------------


class ClosureOverflow(SepisoError):
    def __init__(self, reached: int, cap: int):
        self.reached, self.cap = reached, cap
        super().__init__(f"sigma-closure exceeded cap {cap} (reached {reached} sets)")


class NotSeparable(SepisoError):
    def __init__(self, a, b):
        self.a, self.b = a, b
        super().__init__(f"no disjoint pair in the closed family separates {a} from {b}")


class PreconditionViolated(SepisoError, ValueError):
    pass


# --- codes ------------------------------------------------------------------


class SizeOverflow(SepisoError):
    def __init__(self, cap: int):
        self.cap = cap
        super().__init__(f"code has more than {cap} elements")


class CodeMismatch(SepisoError, ValueError):
    pass


# --- homomorphisms ----------------------------------------------------------


class ImageOutsideTarget(SepisoError):
    def __init__(self, values):
        self.values = values
        super().__init__(f"image {values} is not an element of the target code")


class NotWellDefined(SepisoError):
    def __init__(self, element, first, second):
        self.element, self.first, self.second = element, first, second
        super().__init__(f"element {element} derives to both {first} and {second}")


class NotHomomorphic(SepisoError):
    def __init__(self, f, g):
        self.pair = (f, g)
        super().__init__(f"H(f*g) != H(f)*H(g) for f={f}, g={g}")


class NotBijective(SepisoError):
    def __init__(self, reason: str):
        super().__init__(f"map is not a bijection onto the target: {reason}")


# --- representation ---------------------------------------------------------


class NotSeparating(SepisoError):
    def __init__(self, f, g):
        self.pair = (f, g)
        super().__init__(f"H is not separating: witness f={f}, g={g}")


class NullFunctional(SepisoError):
    def __init__(self, y):
        self.y = y
        super().__init__(f"point functional at {y} is null")


class SupportAmbiguous(SepisoError):
    def __init__(self, y, candidates):
        self.y, self.candidates = y, tuple(candidates)
        super().__init__(f"point {y}: singleton supports {list(self.candidates)} (need exactly one)")


class WeightIllDefined(SepisoError):
    def __init__(self, y, g, values):
        self.y, self.g, self.values = y, g, tuple(values)
        super().__init__(f"weight at {y} is ill-defined on {g}: values {list(self.values)}")


class RepresentationFailed(SepisoError):
    def __init__(self, f, y, detail: str = ""):
        self.f, self.y = f, y
        msg = f"Hf(y) != w[y](f(h(y))) for f={f}, y={y}"
        super().__init__(msg + (f" ({detail})" if detail else ""))


class NotEquivalent(SepisoError):
    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(reason)


class SearchBudgetExceeded(SepisoError):
    def __init__(self, cap: int):
        self.cap = cap
        super().__init__(f"equivalence search exceeded budget of {cap} candidates")


class ConsistencyError(SepisoError):
    """A conclusion that must follow from verified hypotheses did not hold."""
