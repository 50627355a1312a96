"""Symbolic mathematical sets used as distribution types, supports, and
parameter supports.

Sets here do three jobs: exact containedness checks for input validation,
canonical display strings for printing, and bounds extraction for the
numeric layer.  General set algebra (intersection, complement, subset
relations) is deliberately out of scope; only what distribution typing
requires is implemented.

All set values are immutable after construction and safe for unrestricted
concurrent reads.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass, field

from .errors import DimensionError

NEG_INF = float("-inf")
POS_INF = float("inf")

# Whole-number doubles such as 3.0 must count as integers so that discrete
# distributions accept them; tested via the fractional part at this tolerance.
INTEGER_TOL = 1e-12

_CLOSURES = ("open", "closed", "left-open", "right-open")


def _is_number(x) -> bool:
    return isinstance(x, numbers.Real) and not isinstance(x, bool)


def _is_integral(x) -> bool:
    return _is_number(x) and math.isfinite(x) and abs(x - round(x)) <= INTEGER_TOL


def _fmt(x) -> str:
    """Canonical rendering of a set element or bound."""
    if isinstance(x, str):
        return x
    if x == POS_INF:
        return "+Inf"
    if x == NEG_INF:
        return "-Inf"
    if _is_integral(x):
        return str(int(round(x)))
    return repr(float(x))


class MathSet:
    """Base class for symbolic sets.

    Concrete variants implement ``_contains_point`` for a single normalized
    point and ``display`` for the canonical string form.
    """

    #: arity of points belonging to the set (1 unless a Power set)
    dim = 1

    def contains(self, points) -> list[bool]:
        """Element-wise membership for a sequence of points.

        Scalars (or, for Power sets, tuples of matching arity) are accepted;
        arity mismatches raise :class:`DimensionError`.
        """
        return [self._contains_point(self._norm_point(p)) for p in points]

    def _norm_point(self, p):
        if isinstance(p, (tuple, list)):
            if self.dim == 1 and len(p) == 1:
                return p[0]
            if len(p) != self.dim:
                raise DimensionError(
                    f"point {p!r} has arity {len(p)}, set {self} has dimension {self.dim}"
                )
            return tuple(p)
        if self.dim != 1:
            raise DimensionError(
                f"point {p!r} is scalar, set {self} has dimension {self.dim}"
            )
        return p

    def _contains_point(self, p) -> bool:
        raise NotImplementedError

    def display(self) -> str:
        raise NotImplementedError

    def __contains__(self, point) -> bool:
        return self._contains_point(self._norm_point(point))

    def __str__(self) -> str:
        return self.display()

    def __repr__(self) -> str:
        return self.display()


@dataclass(frozen=True, repr=False)
class Reals(MathSet):
    """All finite real numbers."""

    def _contains_point(self, p):
        return _is_number(p) and math.isfinite(p)

    def display(self):
        return "R"


@dataclass(frozen=True, repr=False)
class PositiveReals(MathSet):
    include_zero: bool = False

    def _contains_point(self, p):
        if not (_is_number(p) and math.isfinite(p)):
            return False
        return p > 0 or (self.include_zero and p == 0)

    def display(self):
        return "R0+" if self.include_zero else "R+"


@dataclass(frozen=True, repr=False)
class NegativeReals(MathSet):
    include_zero: bool = False

    def _contains_point(self, p):
        if not (_is_number(p) and math.isfinite(p)):
            return False
        return p < 0 or (self.include_zero and p == 0)

    def display(self):
        return "R0-" if self.include_zero else "R-"


@dataclass(frozen=True, repr=False)
class Integers(MathSet):
    def _contains_point(self, p):
        return _is_integral(p)

    def display(self):
        return "Z"


@dataclass(frozen=True, repr=False)
class Naturals(MathSet):
    """Whole numbers >= 1."""

    def _contains_point(self, p):
        return _is_integral(p) and round(p) >= 1

    def display(self):
        return "N"


@dataclass(frozen=True, repr=False)
class Naturals0(MathSet):
    """Whole numbers >= 0."""

    def _contains_point(self, p):
        return _is_integral(p) and round(p) >= 0

    def display(self):
        return "N0"


@dataclass(frozen=True, repr=False)
class Interval(MathSet):
    """Real interval with extended-real bounds.

    ``closure`` is one of ``open``, ``closed``, ``left-open`` (``(a, b]``) or
    ``right-open`` (``[a, b)``).  Infinite endpoints are members only where
    the corresponding end is closed, which never happens in practice because
    equal-bound intervals must be closed and finite use cases dominate.
    """

    lower: float = NEG_INF
    upper: float = POS_INF
    closure: str = "closed"

    def __post_init__(self):
        if self.closure not in _CLOSURES:
            raise ValueError(f"unknown closure {self.closure!r}; expected one of {_CLOSURES}")
        if math.isnan(self.lower) or math.isnan(self.upper):
            raise ValueError("interval bounds cannot be NaN")
        if not self.lower <= self.upper:
            raise ValueError(f"interval lower {self.lower} must be <= upper {self.upper}")
        if self.lower == self.upper and self.closure != "closed":
            raise ValueError("an interval with equal bounds must be closed")

    def _contains_point(self, p):
        if not _is_number(p) or math.isnan(p):
            return False
        if self.lower < p < self.upper:
            return True
        if p == self.lower and self.closure in ("closed", "right-open"):
            return True
        if p == self.upper and self.closure in ("closed", "left-open"):
            return True
        return False

    def display(self):
        left = "[" if self.closure in ("closed", "right-open") else "("
        right = "]" if self.closure in ("closed", "left-open") else ")"
        return f"{left}{_fmt(self.lower)},{_fmt(self.upper)}{right}"


@dataclass(frozen=True, repr=False)
class FiniteSet(MathSet):
    """Finite collection of numbers and/or symbolic tokens.

    Symbolic string tokens exist to support parameters such as mixture
    weights, whose support is ``{uniform} U [0,1]``.
    """

    elements: tuple = field(default=())

    def __init__(self, elements):
        object.__setattr__(self, "elements", tuple(elements))
        for e in self.elements:
            if not (_is_number(e) or isinstance(e, str)):
                raise ValueError(f"finite-set element {e!r} is neither numeric nor a token")
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("finite-set elements must be unique")

    def _contains_point(self, p):
        if isinstance(p, str):
            return p in self.elements
        if not _is_number(p):
            return False
        return any(
            _is_number(e) and math.isclose(e, p, rel_tol=0.0, abs_tol=INTEGER_TOL)
            for e in self.elements
        )

    def display(self):
        parts = [_fmt(e) for e in self.elements]
        if len(parts) > 4:
            return "{" + ", ".join(parts[:2]) + ",...," + ", ".join(parts[-2:]) + "}"
        return "{" + ", ".join(parts) + "}"


@dataclass(frozen=True, repr=False)
class Union(MathSet):
    """Union of member sets; membership is the OR over members."""

    members: tuple = field(default=())

    def __init__(self, members):
        object.__setattr__(self, "members", tuple(members))
        if not self.members:
            raise ValueError("a union needs at least one member")
        dims = {m.dim for m in self.members}
        if len(dims) != 1:
            raise DimensionError("union members must share a dimension")

    @property
    def dim(self):
        return self.members[0].dim

    def _contains_point(self, p):
        return any(m._contains_point(p) for m in self.members)

    def display(self):
        return " U ".join(m.display() for m in self.members)


@dataclass(frozen=True, repr=False)
class Power(MathSet):
    """Cartesian power of a base set; points are tuples of arity ``exponent``.

    ``Power(base, 1)`` is equivalent to ``base`` for containedness.
    """

    base: MathSet
    exponent: int = 1

    def __post_init__(self):
        if not isinstance(self.exponent, int) or self.exponent < 1:
            raise ValueError("power exponent must be an integer >= 1")

    @property
    def dim(self):
        return self.exponent

    def _contains_point(self, p):
        if self.exponent == 1:
            return self.base._contains_point(p)
        return all(self.base._contains_point(c) for c in p)

    def display(self):
        return f"{self.base.display()}^{self.exponent}"


def extended_union(s: MathSet) -> Union:
    """The set joined with ``{-Inf, +Inf}``; used for truncation/huberization
    bound supports."""
    if not isinstance(s, (Reals, Interval)):
        raise ValueError("extended_union is defined for Reals or an Interval only")
    return Union((s, FiniteSet((NEG_INF, POS_INF))))


def bounds(s: MathSet) -> tuple[float, float]:
    """Numeric (lower, upper) envelope of a one-dimensional set."""
    if isinstance(s, Reals) or isinstance(s, Integers):
        return (NEG_INF, POS_INF)
    if isinstance(s, PositiveReals):
        return (0.0, POS_INF)
    if isinstance(s, NegativeReals):
        return (NEG_INF, 0.0)
    if isinstance(s, Naturals):
        return (1.0, POS_INF)
    if isinstance(s, Naturals0):
        return (0.0, POS_INF)
    if isinstance(s, Interval):
        return (s.lower, s.upper)
    if isinstance(s, FiniteSet):
        nums = [float(e) for e in s.elements if _is_number(e)]
        if not nums:
            raise ValueError(f"set {s} has no numeric elements")
        return (min(nums), max(nums))
    if isinstance(s, Union):
        pairs = [bounds(m) for m in s.members]
        return (min(p[0] for p in pairs), max(p[1] for p in pairs))
    raise ValueError(f"bounds are not defined for {s}")


def numeric_mask(s: MathSet, x) -> "np.ndarray":
    """Vectorized membership of a float array in a one-dimensional set.

    The scalar :meth:`MathSet.contains` stays the reference semantics; this
    exists so validation of large point vectors is not a Python-level loop.
    """
    import numpy as np

    x = np.asarray(x, float)
    finite = np.isfinite(x)
    if isinstance(s, Reals):
        return finite
    if isinstance(s, PositiveReals):
        return finite & ((x > 0) | (s.include_zero & (x == 0)))
    if isinstance(s, NegativeReals):
        return finite & ((x < 0) | (s.include_zero & (x == 0)))
    integral = finite & (np.abs(x - np.round(x)) <= INTEGER_TOL)
    if isinstance(s, Integers):
        return integral
    if isinstance(s, Naturals):
        return integral & (np.round(x) >= 1)
    if isinstance(s, Naturals0):
        return integral & (np.round(x) >= 0)
    if isinstance(s, Interval):
        ok = (x > s.lower) & (x < s.upper)
        if s.closure in ("closed", "right-open"):
            ok |= x == s.lower
        if s.closure in ("closed", "left-open"):
            ok |= x == s.upper
        return ok & ~np.isnan(x)
    if isinstance(s, FiniteSet):
        ok = np.zeros(x.shape, bool)
        for e in s.elements:
            if _is_number(e):
                ok |= np.isclose(x, float(e), rtol=0.0, atol=INTEGER_TOL)
        return ok
    if isinstance(s, Union):
        ok = np.zeros(x.shape, bool)
        for m in s.members:
            ok |= numeric_mask(m, x)
        return ok
    if isinstance(s, Power) and s.exponent == 1:
        return numeric_mask(s.base, x)
    raise DimensionError(f"no scalar membership mask for {s}")


def is_discrete_set(s: MathSet) -> bool:
    """Whether the set only holds isolated points (drives trait inference)."""
    if isinstance(s, (Integers, Naturals, Naturals0, FiniteSet)):
        return True
    if isinstance(s, Union):
        return all(is_discrete_set(m) for m in s.members)
    if isinstance(s, Power):
        return is_discrete_set(s.base)
    return False
