"""Compositors: distributions built from other distributions.

Five compositors are provided — truncation, huberization, mixture, product,
and vectorized collections — each producing a distribution that satisfies
the full core interface.  Component distributions are snapshotted (deep
value copy) at composition time, so later mutation of the original object
never affects the composite; parameter access goes through the composite's
prefixed collection instead.

Truncation restricts a distribution to the left-open interval ``(a, b]``
and renormalizes by the interval mass.  Huberization clamps realizations to
``[a, b]``, concentrating tail mass at the bounds; the result is of mixed
type and has no pdf.  Mixtures and products inherit the columnar evaluation
machinery of :class:`VectorDistribution` and reduce across the component
columns (weighted sum and product respectively), which also lets them accept
paired-style multi-vector arguments, reduced row-wise.
"""

from __future__ import annotations

import copy
import math

import numpy as np

from . import numeric as _num
from . import sets as _sets
from .core import Distribution, EvaluationMatrix
from .errors import (
    CapabilityError,
    DegenerateTruncationError,
    DimensionError,
    DomainError,
    ParameterError,
    UnsupportedError,
)
from .params import (
    ParameterDef,
    ParameterSet,
    ParameterSetCollection,
    normalize_weights,
)

_R = _sets.Reals()
_EXT_R = _sets.extended_union(_R)


class CompositeDistribution(Distribution):
    """Base for all compositors: holds component snapshots and labels."""

    def __init__(self, components, labels, **dist_kwargs):
        self._components = list(components)
        self._labels = list(labels)
        super().__init__(**dist_kwargs)

    def wrapped_models(self, name: str | None = None):
        """All component snapshots, or the one with the given label."""
        if name is None:
            return list(self._components)
        try:
            idx = self._labels.index(name)
        except ValueError:
            raise ValueError(
                f"no wrapped model {name!r}; available: {self._labels}"
            ) from None
        return self._components[idx]


def _snapshot(dist: Distribution) -> Distribution:
    return copy.deepcopy(dist)


def _require_univariate(dist: Distribution, what: str):
    if dist.traits.variate_form != "univariate":
        raise UnsupportedError(f"{what} needs univariate components")


def _require_cdf(dist: Distribution, what: str):
    if _num._raw_kernel(dist, "cdf") is None:
        raise CapabilityError(f"{what} needs a component with a usable cdf")


def _bound_check(lower_id: str, upper_id: str):
    def check(values):
        if not values[lower_id] < values[upper_id]:
            raise ParameterError(
                f"{lower_id} ({values[lower_id]}) must be < {upper_id} ({values[upper_id]})"
            )
    return check


# ---------------------------------------------------------------------------
# truncation
# ---------------------------------------------------------------------------

class TruncatedDistribution(CompositeDistribution):
    """Component restricted to the left-open interval ``(a, b]``.

    ``F(x) = (F'(x) - F'(a)) / (F'(b) - F'(a))`` on ``(a, b]``, 0 below and
    1 above; the pdf is renormalized by the interval mass.  Missing bounds
    default to -inf/+inf.
    """

    def __init__(self, distribution, lower=None, upper=None, decorators=None):
        comp = _snapshot(distribution)
        _require_univariate(comp, "truncation")
        _require_cdf(comp, "truncation")
        a = -math.inf if lower is None else float(lower)
        b = math.inf if upper is None else float(upper)
        own = ParameterSet(
            defs=[
                ParameterDef("trunc_lower", a, _EXT_R,
                             description="Lower limit of truncation"),
                ParameterDef("trunc_upper", b, _EXT_R,
                             description="Upper limit of truncation"),
            ],
            check=_bound_check("trunc_lower", "trunc_upper"),
        )
        collection = ParameterSetCollection([
            (comp.short_name, comp.parameters()),
            (None, own),
        ])
        super().__init__(
            components=[comp], labels=[comp.short_name],
            name=f"Truncated {comp.name}", short_name=f"Trunc{comp.short_name}",
            type=_R, support=_R, parameters=collection,
            value_support=comp.traits.value_support, variate_form="univariate",
            description=f"{comp.name} truncated to ({a}, {b}].",
            decorators=decorators,
        )
        self._mass()  # zero interval mass is a construction error

    def _interval(self):
        return self._v("trunc_lower"), self._v("trunc_upper")

    def _mass(self):
        a, b = self._interval()
        comp = self._components[0]
        fa, fb = comp._eval_cdf_raw(np.array([a, b]))
        z = fb - fa
        if z <= 0.0:
            raise DegenerateTruncationError(
                f"truncation interval ({a}, {b}] carries zero probability mass"
            )
        return float(fa), float(fb), float(z)

    def _support_set(self):
        a, b = self._interval()
        comp_sup = self._components[0].support
        if isinstance(comp_sup, _sets.FiniteSet):
            kept = [e for e in comp_sup.elements
                    if not isinstance(e, str) and a < float(e) <= b]
            if kept:
                return _sets.FiniteSet(kept)
        lo, hi = _sets.bounds(comp_sup)
        lo, hi = max(a, lo), min(b, hi)
        if lo == hi:
            return _sets.Interval(lo, hi, "closed")
        return _sets.Interval(lo, hi, "left-open")

    def _cdf(self, x):
        a, b = self._interval()
        fa, _, z = self._mass()
        x = np.atleast_1d(np.asarray(x, float))
        vals = (self._components[0]._eval_cdf_raw(x) - fa) / z
        vals = np.where(x <= a, 0.0, vals)
        vals = np.where(x > b, 1.0, vals)
        return np.clip(vals, 0.0, 1.0)

    def _pdf(self, x):
        a, b = self._interval()
        _, _, z = self._mass()
        x = np.atleast_1d(np.asarray(x, float))
        vals = self._components[0]._eval_pdf_raw(x) / z
        return np.where((x > a) & (x <= b), vals, 0.0)

    def _quantile(self, p):
        fa, _, z = self._mass()
        p = np.atleast_1d(np.asarray(p, float))
        return self._components[0]._eval_quantile_raw(fa + p * z)

    def _rand(self, n, rng):
        return np.asarray(self._quantile(rng.uniform(size=n)), float)


def truncate(distribution, lower=None, upper=None) -> TruncatedDistribution:
    """Truncate a distribution to the left-open interval ``(lower, upper]``."""
    return TruncatedDistribution(distribution, lower, upper)


# ---------------------------------------------------------------------------
# huberization
# ---------------------------------------------------------------------------

class HuberizedDistribution(CompositeDistribution):
    """Component with realizations clamped to ``[a, b]``.

    Tail mass concentrates at the bounds, so the result is of mixed type and
    has no pdf.  Bounds omitted at construction default to the component
    support's extremes.
    """

    _no_pdf_reason = "huberized distributions are of mixed type and have no pdf"

    def __init__(self, distribution, lower=None, upper=None, decorators=None):
        comp = _snapshot(distribution)
        _require_univariate(comp, "huberization")
        _require_cdf(comp, "huberization")
        sup_lo, sup_hi = _sets.bounds(comp.support)
        a = sup_lo if lower is None else float(lower)
        b = sup_hi if upper is None else float(upper)
        if not a < b:
            raise ParameterError(f"huberization bounds must satisfy a < b, got ({a}, {b})")
        own = ParameterSet(
            defs=[
                ParameterDef("hub_lower", a, _EXT_R,
                             description="Lower limit of huberization"),
                ParameterDef("hub_upper", b, _EXT_R,
                             description="Upper limit of huberization"),
            ],
            check=_bound_check("hub_lower", "hub_upper"),
        )
        collection = ParameterSetCollection([
            (comp.short_name, comp.parameters()),
            (None, own),
        ])
        super().__init__(
            components=[comp], labels=[comp.short_name],
            name=f"Huberized {comp.name}", short_name=f"Hub{comp.short_name}",
            type=_R, support=_R, parameters=collection,
            value_support="mixed", variate_form="univariate",
            description=f"{comp.name} huberized to [{a}, {b}].",
            decorators=decorators,
        )

    def _interval(self):
        return self._v("hub_lower"), self._v("hub_upper")

    def _support_set(self):
        a, b = self._interval()
        lo, hi = _sets.bounds(self._components[0].support)
        lo, hi = max(a, lo), min(b, hi)
        return _sets.Interval(lo, hi, "closed")

    def _cdf(self, x):
        a, b = self._interval()
        x = np.atleast_1d(np.asarray(x, float))
        vals = self._components[0]._eval_cdf_raw(x)
        vals = np.where(x < a, 0.0, vals)
        vals = np.where(x >= b, 1.0, vals)
        return np.clip(vals, 0.0, 1.0)

    def _quantile(self, p):
        a, b = self._interval()
        p = np.atleast_1d(np.asarray(p, float))
        return np.clip(self._components[0]._eval_quantile_raw(p), a, b)

    def _rand(self, n, rng):
        a, b = self._interval()
        return np.clip(self._components[0].rand(n, rng), a, b)

    def _expectation_hook(self, f, options):
        # E[f(clamp(X))] evaluates through the component, which keeps
        # generalized expectations usable despite the mixed type
        a, b = self._interval()
        return _num.expectation(self._components[0],
                                lambda x: np.asarray(f(np.clip(x, a, b)), float),
                                options)


def huberize(distribution, lower=None, upper=None) -> HuberizedDistribution:
    """Clamp a distribution's realizations to ``[lower, upper]``."""
    return HuberizedDistribution(distribution, lower, upper)


# ---------------------------------------------------------------------------
# vectorized collections
# ---------------------------------------------------------------------------

def _rows_from_params(params) -> list[dict]:
    if isinstance(params, dict):
        lengths = {len(v) for v in params.values()
                   if isinstance(v, (list, tuple, np.ndarray))}
        if len(lengths) > 1:
            raise DimensionError("parametric columns must share a length")
        n = lengths.pop() if lengths else 1
        rows = []
        for i in range(n):
            row = {}
            for key, v in params.items():
                row[key] = v[i] if isinstance(v, (list, tuple, np.ndarray)) else v
            rows.append(row)
        return rows
    return [dict(r) for r in params]


def _resolve_constructor(distribution):
    if callable(distribution):
        return distribution
    from .catalog import CATALOG, CONSTRUCTORS
    name = str(distribution)
    if name in CONSTRUCTORS:
        return CONSTRUCTORS[name]
    for entry in CATALOG:
        if entry.short_name == name:
            return entry.constructor
    raise ValueError(f"unknown distribution class {distribution!r}")


def _common_value_support(comps) -> str:
    kinds = {c.traits.value_support for c in comps}
    return kinds.pop() if len(kinds) == 1 else "mixed"


class VectorDistribution(CompositeDistribution):
    """A vector of component distributions with columnar evaluation.

    Construct either from a ``distlist`` (heterogeneous objects, snapshotted)
    or parametrically from one catalog class plus a parameter table (one row
    per component), which is the fast path for large homogeneous vectors.

    ``pdf``/``cdf``/``quantile`` take either ONE argument vector (product
    mode: every component evaluated at the same points, an N-column matrix)
    or exactly N vectors of common length (paired mode: component i evaluated
    at vector i).
    """

    _requires_kernel = False

    def __init__(self, components=None, distribution=None, params=None,
                 decorators=None, name=None, short_name=None, **extra):
        if (components is None) == (distribution is None):
            raise ValueError("construct from either a component list or a "
                             "distribution class with a parameter table")
        if components is not None:
            comps = [_snapshot(c) for c in components]
        else:
            ctor = _resolve_constructor(distribution)
            comps = [ctor(**row) for row in _rows_from_params(params or [{}])]
        if not comps:
            raise ValueError("at least one component is required")
        for c in comps:
            _require_univariate(c, "vectorized composition")
        labels = [f"{c.short_name}{i + 1}" for i, c in enumerate(comps)]

        own = self._own_parameter_set(comps)
        self._own_params = own
        entries = []
        for comp, label in zip(comps, labels):
            if isinstance(comp, CompositeDistribution):
                entries.append((None, comp.parameters()))
            else:
                entries.append((label, comp.parameters()))
        if own is not None:
            entries.append((None, own))
        try:
            inner = ParameterSetCollection(entries)
        except ParameterError:
            # spliced composite ids collided; fall back to labelling everyone
            entries = [(label, comp.parameters()) for comp, label in zip(comps, labels)]
            if own is not None:
                entries.append((None, own))
            inner = ParameterSetCollection(entries)
        prefix = self._kind_prefix()
        collection = inner if prefix is None else ParameterSetCollection([(prefix, inner)])

        n = len(comps)
        defaults = dict(
            name=name or f"Vector of {n} distributions",
            short_name=short_name or "Vec",
            type=_sets.Power(_R, n) if n > 1 else _R,
            support=_sets.Power(_R, n) if n > 1 else comps[0].support,
            parameters=collection,
            value_support=_common_value_support(comps),
            variate_form="multivariate" if n > 1 else "univariate",
            description=f"Vector of {n} component distributions.",
            decorators=decorators,
        )
        defaults.update(extra)
        super().__init__(components=comps, labels=labels, **defaults)

    # subclass hooks --------------------------------------------------------

    def _own_parameter_set(self, comps):
        return None

    def _kind_prefix(self):
        return None

    # columnar evaluation -----------------------------------------------------

    def _argument_vectors(self, args) -> list[np.ndarray]:
        n = len(self._components)
        if len(args) == 1:
            vec = np.atleast_1d(np.asarray(args[0], float))
            vectors = [vec] * n
        elif len(args) == n:
            vectors = [np.atleast_1d(np.asarray(a, float)) for a in args]
            if len({v.shape[0] for v in vectors}) != 1:
                raise DimensionError("paired argument vectors must share a length")
        else:
            raise DimensionError(
                f"expected one shared vector or {n} paired vectors, got {len(args)}"
            )
        for v in vectors:
            if v.ndim != 1:
                raise DimensionError("argument vectors must be one-dimensional")
            if v.size and not np.all(np.isfinite(v)):
                raise DomainError("evaluation points must be finite reals")
        return vectors

    def _columns(self, fun: str, vectors) -> np.ndarray:
        cols = []
        for comp, vec in zip(self._components, vectors):
            if fun == "pdf":
                cols.append(comp._eval_pdf_raw(vec))
            elif fun == "cdf":
                cols.append(comp._eval_cdf_raw(vec))
            else:
                cols.append(comp._eval_quantile_raw(vec))
        return np.column_stack(cols) if cols else np.empty((0, 0))

    def _vector_eval(self, fun: str, args) -> np.ndarray:
        return self._columns(fun, self._argument_vectors(args))

    # public surface ------------------------------------------------------------

    def pdf(self, *args, log=False, simplify=True):
        """Columnar pdf evaluation; returns an N-column matrix."""
        mat = self._vector_eval("pdf", args)
        if log:
            with np.errstate(divide="ignore"):
                mat = np.log(mat)
        return EvaluationMatrix(self._labels, mat)

    def cdf(self, *args, lower_tail=True, log=False, simplify=True):
        """Columnar cdf evaluation; returns an N-column matrix."""
        mat = self._vector_eval("cdf", args)
        if not lower_tail:
            mat = 1.0 - mat
        if log:
            with np.errstate(divide="ignore"):
                mat = np.log(mat)
        return EvaluationMatrix(self._labels, mat)

    def quantile(self, *args, lower_tail=True, log=False, simplify=True):
        """Columnar quantile evaluation; returns an N-column matrix."""
        n = len(self._components)
        if len(args) not in (1, n):
            raise DimensionError(
                f"expected one shared vector or {n} paired vectors, got {len(args)}"
            )
        vectors = []
        for a in (args if len(args) == n else [args[0]] * n):
            p = np.atleast_1d(np.asarray(a, float))
            if log:
                p = np.exp(p)
            if not lower_tail:
                p = 1.0 - p
            if p.size and (np.any(~np.isfinite(p)) or np.any(p < 0) or np.any(p > 1)):
                raise DomainError("probabilities must lie in [0, 1] after transforms")
            vectors.append(p)
        if len({v.shape[0] for v in vectors}) != 1:
            raise DimensionError("paired argument vectors must share a length")
        mat = self._columns("quantile", vectors)
        return EvaluationMatrix(self._labels, mat)

    def _rand(self, n, rng):
        return np.column_stack([c.rand(n, rng) for c in self._components])


def vector(components=None, distribution=None, params=None) -> VectorDistribution:
    """Vectorize distributions: a distlist or one class plus a parameter table."""
    return VectorDistribution(components=components, distribution=distribution,
                              params=params)


# ---------------------------------------------------------------------------
# mixture
# ---------------------------------------------------------------------------

class MixtureDistribution(VectorDistribution):
    """Weighted mixture: ``F(x) = sum_i w_i F_i(x)``.

    Weights are either the symbolic ``"uniform"`` (w_i = 1/n) or a numeric
    vector renormalized to sum to one.  Inherits the columnar evaluation
    machinery, so multi-vector paired arguments are accepted and reduced
    row-wise.
    """

    def __init__(self, components=None, weights="uniform", distribution=None,
                 params=None, decorators=None):
        self._init_weights = weights
        super().__init__(
            components=components, distribution=distribution, params=params,
            decorators=decorators,
            name="Mixture", short_name="Mix",
            # a mixture keeps its components' dimension: univariate here
            type=_R, variate_form="univariate",
        )
        n = len(self._components)
        self.name = f"Mixture of {n} distributions"
        self.description = f"Weighted mixture of {n} component distributions."

    def _support_set(self):
        supports = []
        for c in self._components:
            if all(c.support.display() != s.display() for s in supports):
                supports.append(c.support)
        return supports[0] if len(supports) == 1 else _sets.Union(tuple(supports))

    def _own_parameter_set(self, comps):
        n = len(comps)
        weights = self._init_weights
        support = _sets.Union((_sets.FiniteSet(("uniform",)), _sets.Interval(0.0, 1.0)))
        return ParameterSet([
            ParameterDef("weights", weights, support,
                         description="Mixture weights",
                         normalize=lambda v, n=n: normalize_weights(v, n)),
        ])

    def _kind_prefix(self):
        return "mix"

    def _weights(self) -> np.ndarray:
        w = self._own_params.get_value("weights")
        n = len(self._components)
        if isinstance(w, str):
            return np.full(n, 1.0 / n)
        return np.asarray(w, float)

    def _reduce(self, mat: np.ndarray) -> np.ndarray:
        return mat @ self._weights()

    def pdf(self, *args, log=False, simplify=True):
        """``sum_i w_i f_i(x)`` (requires every component to have a pdf)."""
        mat = self._vector_eval("pdf", args)
        vals = self._reduce(mat)
        if log:
            with np.errstate(divide="ignore"):
                vals = np.log(vals)
        return self._simplified(vals, simplify)

    def cdf(self, *args, lower_tail=True, log=False, simplify=True):
        """``sum_i w_i F_i(x)``."""
        mat = self._vector_eval("cdf", args)
        vals = self._reduce(mat)
        if not lower_tail:
            vals = 1.0 - vals
        if log:
            with np.errstate(divide="ignore"):
                vals = np.log(vals)
        return self._simplified(vals, simplify)

    quantile = Distribution.quantile
    median = Distribution.median

    def _eval_pdf_raw(self, x):
        if self._no_pdf_reason is not None:
            raise UnsupportedError(self._no_pdf_reason)
        return self._reduce(self._columns("pdf", [np.atleast_1d(np.asarray(x, float))]
                                          * len(self._components)))

    def _eval_cdf_raw(self, x):
        vec = np.atleast_1d(np.asarray(x, float))
        return np.clip(self._reduce(self._columns("cdf", [vec] * len(self._components))),
                       0.0, 1.0)

    def _rand(self, n, rng):
        w = self._weights()
        idx = rng.choice(len(self._components), size=n, p=w)
        out = np.empty(n)
        for i, comp in enumerate(self._components):
            take = np.nonzero(idx == i)[0]
            if take.size:
                out[take] = comp.rand(take.size, rng)
        return out

    def _expectation_hook(self, f, options):
        w = self._weights()
        return float(sum(
            wi * _num.expectation(comp, f, options)
            for wi, comp in zip(w, self._components)
        ))


def mixture(components=None, weights="uniform", distribution=None,
            params=None) -> MixtureDistribution:
    """Mix distributions with the given weights (default uniform)."""
    return MixtureDistribution(components=components, weights=weights,
                               distribution=distribution, params=params)


# ---------------------------------------------------------------------------
# product
# ---------------------------------------------------------------------------

class ProductDistribution(VectorDistribution):
    """Independent product: ``F(x) = prod_i F_i(x)`` evaluated columnwise.

    The joint cdf/pdf is evaluated at shared scalar points (or paired
    vectors, reduced row-wise), matching the columnar evaluation semantics.
    """

    def __init__(self, components=None, distribution=None, params=None,
                 decorators=None):
        super().__init__(
            components=components, distribution=distribution, params=params,
            decorators=decorators,
            name="Product", short_name="Prod",
        )
        n = len(self._components)
        self.name = f"Product of {n} distributions"
        self.description = f"Product of {n} independent component distributions."

    def _reduce(self, mat: np.ndarray) -> np.ndarray:
        return mat.prod(axis=1)

    def pdf(self, *args, log=False, simplify=True):
        """``prod_i f_i(x)`` (requires every component to have a pdf)."""
        mat = self._vector_eval("pdf", args)
        vals = self._reduce(mat)
        if log:
            with np.errstate(divide="ignore"):
                vals = np.log(vals)
        return self._simplified(vals, simplify)

    def cdf(self, *args, lower_tail=True, log=False, simplify=True):
        """``prod_i F_i(x)``."""
        mat = self._vector_eval("cdf", args)
        vals = self._reduce(mat)
        if not lower_tail:
            vals = 1.0 - vals
        if log:
            with np.errstate(divide="ignore"):
                vals = np.log(vals)
        return self._simplified(vals, simplify)

    quantile = Distribution.quantile
    median = Distribution.median

    def _eval_pdf_raw(self, x):
        vec = np.atleast_1d(np.asarray(x, float))
        return self._reduce(self._columns("pdf", [vec] * len(self._components)))

    def _eval_cdf_raw(self, x):
        vec = np.atleast_1d(np.asarray(x, float))
        return np.clip(self._reduce(self._columns("cdf", [vec] * len(self._components))),
                       0.0, 1.0)


def product(components=None, distribution=None, params=None) -> ProductDistribution:
    """Product of independent distributions."""
    return ProductDistribution(components=components, distribution=distribution,
                               params=params)


#: compositor registry for the inspection principle and the CLI
COMPOSITORS = (
    ("truncate", "restrict to the left-open interval (a, b] and renormalize"),
    ("huberize", "clamp realizations to [a, b] (mixed type, no pdf)"),
    ("mix", "weighted mixture of components"),
    ("product", "product of independent components"),
    ("vector", "vectorized collection with columnar evaluation"),
)
