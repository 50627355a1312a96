"""The unified distribution interface.

Every distribution — catalog, custom, decorated, or composite — exposes the
same operation set: validated ``pdf``/``cdf``/``quantile``/``rand`` wrapping
private kernels, statistics accessors, representation methods, and parameter
access.  Implemented distributions carry analytic kernels and statistics only
where closed forms exist; numeric behaviour is added explicitly through the
decorators in :mod:`probdist.numeric`, keeping analytic and numeric results
separated and inspectable.

Public dpqr methods first validate every point against the distribution's
mathematical type and only then call the kernel, so all distributions handle
out-of-domain input identically.  Points inside the type but outside the
support evaluate to a pdf of zero.

Evaluation is pure with respect to distribution state and safe for concurrent
calls; parameter mutation follows the params module's single-writer contract.
``rand`` takes its seed explicitly (or a generator), never hidden global RNG
state.
"""

from __future__ import annotations

import csv
import inspect
import io
import math
from dataclasses import dataclass

import numpy as np

from . import numeric as _num
from . import sets as _sets
from .errors import (
    CapabilityError,
    DimensionError,
    DomainError,
    NumericError,
    UnsupportedError,
)
from .params import ParameterSet, ParameterSetCollection

#: tolerance for classifying kurtosis/skewness as zero
CLASSIFY_TOL = 1e-9


@dataclass(frozen=True)
class DistributionTraits:
    """Parameterization-independent facts about a distribution class."""

    value_support: str  # "discrete" | "continuous" | "mixed"
    variate_form: str   # "univariate" | "multivariate"
    type: _sets.MathSet


@dataclass(frozen=True)
class DistributionProperties:
    """Parameterization-dependent facts; classes are absent when the
    underlying statistic is unavailable."""

    support: _sets.MathSet
    symmetry: str  # "symmetric" | "asymmetric"
    kurtosis_class: str | None = None
    skewness_class: str | None = None


def classify_kurtosis(excess: float) -> str | None:
    if excess is None or not math.isfinite(excess):
        return None
    if excess < -CLASSIFY_TOL:
        return "platykurtic"
    if excess > CLASSIFY_TOL:
        return "leptokurtic"
    return "mesokurtic"


def classify_skewness(skew: float) -> str | None:
    if skew is None or not math.isfinite(skew):
        return None
    if skew < -CLASSIFY_TOL:
        return "negative skew"
    if skew > CLASSIFY_TOL:
        return "positive skew"
    return "no skew"


class EvaluationMatrix:
    """Labelled evaluation table: one column per distribution, one row per
    evaluation point."""

    def __init__(self, columns, values):
        self.columns = [str(c) for c in columns]
        vals = np.asarray(values, float)
        if vals.ndim == 1:
            vals = vals.reshape(-1, 1)
        if vals.shape[1] != len(self.columns):
            raise DimensionError(
                f"{len(self.columns)} column labels for {vals.shape[1]} value columns"
            )
        self.values = vals

    @property
    def shape(self):
        return self.values.shape

    def __len__(self):
        return self.values.shape[0]

    def column(self, label: str) -> np.ndarray:
        try:
            idx = self.columns.index(label)
        except ValueError:
            raise KeyError(f"no column {label!r}; have {self.columns}") from None
        return self.values[:, idx]

    def __getitem__(self, label: str) -> np.ndarray:
        return self.column(label)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)

    def to_rows(self) -> list[dict]:
        return [dict(zip(self.columns, row)) for row in self.values.tolist()]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(self.columns)
        for row in self.values:
            writer.writerow([format(v, ".10g") for v in row])
        return buf.getvalue()

    def __repr__(self):
        head = "  ".join(f"{c:>12}" for c in self.columns)
        body = "\n".join(
            "  ".join(f"{v:>12.7g}" for v in row) for row in self.values[:12]
        )
        more = "" if len(self) <= 12 else f"\n... ({len(self)} rows)"
        return f"{head}\n{body}{more}"


def _wrap_user_rand(fn):
    """Adapt a user ``rand`` callable to the internal ``(n, rng)`` signature."""
    try:
        n_params = len(inspect.signature(fn).parameters)
    except (TypeError, ValueError):
        n_params = 1
    if n_params >= 2:
        return fn
    return lambda n, rng: fn(n)


class Distribution:
    """A probability distribution as a first-class object.

    Constructing this class directly creates a custom distribution: at a
    minimum supply ``name``, ``type`` and either ``pdf`` or ``cdf``; traits
    are inferred from the type and support when not given, and any requested
    decorators are applied immediately.  Implemented distributions subclass
    this and provide analytic kernels as ``_pdf``/``_cdf``/``_quantile``/
    ``_rand`` methods plus analytic statistics hooks.
    """

    # analytic kernel/statistic hooks; subclasses override with methods
    _pdf = None
    _cdf = None
    _quantile = None
    _rand = None
    _mean = None
    _variance = None
    _skewness = None
    _kurtosis_excess = None
    _entropy_nats = None
    _mgf = None
    _cf = None
    _pgf = None

    #: composites may reroute generalized expectations through components
    _expectation_hook = None
    #: set to a message when the pdf does not exist at all (mixed composites)
    _no_pdf_reason = None
    #: vector composites evaluate columnwise and carry no scalar kernel
    _requires_kernel = True

    def __init__(self, name=None, short_name=None, type=None, support=None,
                 symmetric=False, pdf=None, cdf=None, quantile=None, rand=None,
                 parameters=None, decorators=None, value_support=None,
                 variate_form=None, description=None):
        if not name:
            raise ValueError("a distribution needs a name")
        self.name = str(name)
        self.short_name = str(short_name) if short_name else "".join(self.name.split())
        if " " in self.short_name:
            raise ValueError("short_name must not contain spaces")
        self.description = description or f"{self.name} distribution."

        if type is None:
            raise ValueError("a distribution needs a type (its mathematical domain)")
        self._type = type
        self._declared_support = support if support is not None else type
        self._symmetric = bool(symmetric)

        self._user_kernels = {}
        if pdf is not None:
            self._user_kernels["pdf"] = pdf
        if cdf is not None:
            self._user_kernels["cdf"] = cdf
        if quantile is not None:
            self._user_kernels["quantile"] = quantile
        if rand is not None:
            self._user_kernels["rand"] = _wrap_user_rand(rand)

        cls = self.__class__
        if self._requires_kernel and not self._user_kernels.get("pdf") \
                and not self._user_kernels.get("cdf") \
                and cls._pdf is None and cls._cdf is None:
            raise ValueError("at least one of pdf or cdf must be supplied")

        self._params = parameters if parameters is not None else ParameterSet([])

        if value_support is None:
            value_support = "discrete" if _sets.is_discrete_set(self._declared_support) \
                else "continuous"
        if variate_form is None:
            t = self._type
            variate_form = "multivariate" if isinstance(t, _sets.Power) and t.exponent > 1 \
                else "univariate"
        self._value_support = value_support
        self._variate_form = variate_form

        self.decorators: list[str] = []
        self._numeric_options = None
        self._imputed_cache = None
        if decorators:
            _num.decorate(self, decorators)

    # -- identity, traits, properties -------------------------------------

    @property
    def traits(self) -> DistributionTraits:
        return DistributionTraits(self._value_support, self._variate_form, self._type)

    @property
    def support(self) -> _sets.MathSet:
        return self._support_set()

    def _support_set(self) -> _sets.MathSet:
        return self._declared_support

    @property
    def properties(self) -> DistributionProperties:
        stats = self._quiet_statistics()
        return DistributionProperties(
            support=self.support,
            symmetry="symmetric" if self._symmetric else "asymmetric",
            kurtosis_class=classify_kurtosis(stats.get("excess_kurtosis")),
            skewness_class=classify_skewness(stats.get("skewness")),
        )

    def parameters(self):
        """The internal parameter set (a prefixed collection for composites)."""
        return self._params

    def get_parameter_value(self, name: str):
        return self._params.get_value(name)

    def _v(self, name: str):
        # kernel-side shorthand for the current parameter value
        return self._params.get_value(name)

    def set_parameter_value(self, values=None, **kwargs):
        self._params.set_values(values, **kwargs)

    # -- kernel resolution --------------------------------------------------

    def _analytic_kernel(self, name: str):
        fn = self._user_kernels.get(name)
        if fn is not None:
            return fn
        if getattr(self.__class__, "_" + name) is not None:
            return getattr(self, "_" + name)
        return None

    def _imputed_kernels(self, rebuild: bool = False) -> dict:
        if "FunctionImputation" not in self.decorators:
            return {}
        if getattr(self, "_imputing", False):
            return {}  # re-entrant call while the cache is being built
        fp = self._params.fingerprint()
        if rebuild or self._imputed_cache is None or self._imputed_cache[0] != fp:
            self._imputing = True
            try:
                kernels = _num.build_imputed_kernels(self, _num.dist_options(self))
            finally:
                self._imputing = False
            self._imputed_cache = (fp, kernels)
        return self._imputed_cache[1]

    def _eval_pdf_raw(self, x) -> np.ndarray:
        """Kernel pdf with no type validation; zero outside the support."""
        if self._no_pdf_reason is not None:
            raise UnsupportedError(self._no_pdf_reason)
        kernel = _num.require_kernel(self, "pdf")
        pts = self._coerce_points(x)
        mask = self._mask(self.support, pts)
        out = np.zeros(len(pts))
        if mask.any():
            out[mask] = np.asarray(kernel(pts[mask]), float).reshape(-1)
        return out

    def _eval_cdf_raw(self, x) -> np.ndarray:
        kernel = _num.require_kernel(self, "cdf")
        pts = self._coerce_points(x)
        return np.clip(np.asarray(kernel(pts), float).reshape(-1), 0.0, 1.0)

    def _eval_quantile_raw(self, p) -> np.ndarray:
        kernel = _num.require_kernel(self, "quantile")
        return np.asarray(kernel(np.atleast_1d(np.asarray(p, float))), float).reshape(-1)

    # -- point validation ---------------------------------------------------

    def _coerce_points(self, points) -> np.ndarray:
        arr = np.asarray(points, float)
        if self._variate_form == "multivariate":
            arr = np.atleast_2d(arr)
            k = self._type.dim
            if arr.ndim != 2 or arr.shape[1] != k:
                raise DimensionError(
                    f"points for a {k}-variate distribution must be rows of arity {k}"
                )
            return arr
        arr = np.atleast_1d(arr)
        if arr.ndim != 1:
            raise DimensionError("points must form a flat vector for a univariate distribution")
        return arr

    def _mask(self, s: _sets.MathSet, pts: np.ndarray) -> np.ndarray:
        if pts.ndim == 2:
            base = s.base if isinstance(s, _sets.Power) else s
            flat = _sets.numeric_mask(base, pts.ravel())
            return flat.reshape(pts.shape).all(axis=1)
        return _sets.numeric_mask(s, pts)

    def _validated_points(self, args, op: str) -> np.ndarray:
        if len(args) != 1:
            raise DimensionError(f"{op} takes exactly one vector of points")
        pts = self._coerce_points(args[0])
        ok = self._mask(self._type, pts)
        if not np.all(ok):
            bad = pts[~ok]
            shown = ", ".join(_sets._fmt(float(v)) for v in np.atleast_1d(bad).ravel()[:8])
            raise DomainError(
                f"points {{{shown}}} are outside the distribution domain "
                f"({self._type.display()})"
            )
        return pts

    def _simplified(self, vals: np.ndarray, simplify: bool):
        if simplify:
            return vals
        return EvaluationMatrix([self.short_name], vals.reshape(-1, 1))

    # -- public dpqr ----------------------------------------------------------

    def pdf(self, *args, log=False, simplify=True):
        """Density/mass at the given points (one unified method for both).

        Points must lie in the distribution type; points outside the support
        evaluate to 0 (``-inf`` under ``log``).
        """
        pts = self._validated_points(args, "pdf")
        vals = self._eval_pdf_raw(pts)
        if log:
            with np.errstate(divide="ignore"):
                vals = np.log(vals)
        return self._simplified(vals, simplify)

    def cdf(self, *args, lower_tail=True, log=False, simplify=True):
        """``F(x) = P(X <= x)``; ``lower_tail=False`` gives ``1 - F(x)``
        (applied before ``log``)."""
        pts = self._validated_points(args, "cdf")
        vals = self._eval_cdf_raw(pts)
        if not lower_tail:
            vals = 1.0 - vals
        if log:
            with np.errstate(divide="ignore"):
                vals = np.log(vals)
        return self._simplified(vals, simplify)

    def quantile(self, *args, lower_tail=True, log=False, simplify=True):
        """Generalized inverse: the smallest support point with ``F(x) >= p``.

        ``log``/``lower_tail`` transform the probabilities first.
        """
        if len(args) != 1:
            raise DimensionError("quantile takes exactly one vector of probabilities")
        p = np.atleast_1d(np.asarray(args[0], float))
        if log:
            p = np.exp(p)
        if not lower_tail:
            p = 1.0 - p
        if p.size and (np.any(~np.isfinite(p)) or np.any(p < 0.0) or np.any(p > 1.0)):
            raise DomainError("probabilities must lie in [0, 1] after tail/log transforms")
        vals = self._eval_quantile_raw(p)
        return self._simplified(vals, simplify)

    def rand(self, n: int, seed=None) -> np.ndarray:
        """``n`` pseudo-random draws; an identical seed yields an identical
        sequence.  ``seed`` may be an int or a ``numpy.random.Generator``."""
        if int(n) != n or n < 1:
            raise ValueError("the number of draws must be a positive integer")
        n = int(n)
        rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
        kernel = self._analytic_kernel("rand")
        if kernel is not None:
            return np.asarray(kernel(n, rng))
        quantile = self._analytic_kernel("quantile")
        if quantile is not None:
            return np.asarray(quantile(rng.uniform(size=n)), float)
        imputed = self._imputed_kernels().get("rand")
        if imputed is not None:
            return np.asarray(imputed(n, rng))
        raise CapabilityError(
            "no rand kernel and no quantile path; apply FunctionImputation"
        )

    def prob_interval(self, a: float, b: float) -> float:
        """``P((a, b]) = F(b) - F(a)`` for the left-open interval."""
        if self._variate_form != "univariate":
            raise UnsupportedError("interval probabilities are univariate-only")
        if not a <= b:
            raise DomainError(f"interval bounds must satisfy a <= b, got ({a}, {b})")
        fa, fb = self._eval_cdf_raw(np.array([a, b]))
        return float(np.clip(fb - fa, 0.0, 1.0))

    # -- statistics -------------------------------------------------------------

    def _numeric_stat(self, fn, *args, **kwargs):
        if "CoreStatistics" not in self.decorators:
            raise CapabilityError(
                "no analytic form is implemented; apply the CoreStatistics "
                "decorator for a numeric value"
            )
        return fn(self, *args, **kwargs)

    def mean(self) -> float:
        if self._mean is not None:
            return self._mean()
        return self._numeric_stat(_num.numeric_mean)

    def variance(self) -> float:
        if self._variance is not None:
            return self._variance()
        return self._numeric_stat(_num.numeric_variance)

    def stdev(self) -> float:
        return math.sqrt(self.variance())

    def skewness(self) -> float:
        if self._skewness is not None:
            return self._skewness()
        return self._numeric_stat(_num.numeric_skewness)

    def kurtosis(self, excess: bool = True) -> float:
        if self._kurtosis_excess is not None:
            k = self._kurtosis_excess()
            return k if excess else k + 3.0
        return self._numeric_stat(_num.numeric_kurtosis, excess)

    def entropy(self, base: float = 2.0) -> float:
        if self._entropy_nats is not None:
            return self._entropy_nats() / math.log(base)
        return self._numeric_stat(_num.numeric_entropy, base)

    def mgf(self, t: float) -> float:
        if self._mgf is not None:
            return self._mgf(t)
        return self._numeric_stat(_num.numeric_mgf, t)

    def cf(self, t: float) -> complex:
        if self._cf is not None:
            return self._cf(t)
        return self._numeric_stat(_num.numeric_cf, t)

    def pgf(self, z: float) -> float:
        if self._value_support != "discrete":
            raise UnsupportedError(
                "the probability generating function needs a discrete distribution"
            )
        if self._pgf is not None:
            return self._pgf(z)
        return self._numeric_stat(_num.numeric_pgf, z)

    def median(self) -> float:
        return float(self.quantile([0.5])[0])

    # -- CoreStatistics methods --------------------------------------------------

    def expect(self, f) -> float:
        """Generalized expectation ``E[f(X)]``; ``f`` receives an ndarray."""
        _num.require_decorator(self, "CoreStatistics")
        return _num.expectation(self, f)

    def kth_moment(self, k: int, kind: str = "central") -> float:
        """Raw/central/standardised k-th moment (numeric)."""
        _num.require_decorator(self, "CoreStatistics")
        return _num.kth_moment(self, k, kind)

    # -- ExoticStatistics methods --------------------------------------------------

    def survival(self, *args, log=False):
        """``S(x) = 1 - F(x)``."""
        _num.require_decorator(self, "ExoticStatistics")
        pts = self._validated_points(args, "survival")
        s = _num.survival_values(self, pts)
        if log:
            with np.errstate(divide="ignore"):
                s = np.log(s)
        return s

    def hazard(self, *args, log=False):
        """``h(x) = f(x) / S(x)``; +inf where the survival is zero."""
        _num.require_decorator(self, "ExoticStatistics")
        pts = self._validated_points(args, "hazard")
        h = _num.hazard_values(self, pts)
        if log:
            with np.errstate(divide="ignore"):
                h = np.log(h)
        return h

    def cumulative_hazard(self, *args, log=False):
        """``H(x) = -ln S(x)``."""
        _num.require_decorator(self, "ExoticStatistics")
        pts = self._validated_points(args, "cumulative hazard")
        h = _num.cum_hazard_values(self, pts)
        if log:
            with np.errstate(divide="ignore"):
                h = np.log(h)
        return h

    def pnorm(self, fn: str = "pdf", p: float = 2.0, lower=None, upper=None) -> float:
        """p-norm of the pdf, cdf, or survival function over a finite range."""
        _num.require_decorator(self, "ExoticStatistics")
        return _num.pnorm(self, fn, p, lower, upper)

    def antiderivative(self, fn: str = "cdf", lower=None, upper=None) -> float:
        """Integral of the cdf or survival function over ``[lower, upper]``."""
        _num.require_decorator(self, "ExoticStatistics")
        return _num.antiderivative(self, fn, lower, upper)

    # -- representation -----------------------------------------------------------

    def _quiet_statistics(self) -> dict:
        out = {}
        pairs = (
            ("mean", self.mean),
            ("variance", self.variance),
            ("skewness", self.skewness),
            ("excess_kurtosis", self.kurtosis),
        )
        for label, fn in pairs:
            try:
                out[label] = float(fn())
            except (CapabilityError, UnsupportedError, NumericError):
                continue
        return out

    def describe(self) -> dict:
        """Structured summary: identity, parameter table, traits, properties,
        quick statistics (where available), applied decorators."""
        stats = self._quiet_statistics()
        return {
            "name": self.name,
            "short_name": self.short_name,
            "description": self.description,
            "parameters": self._params.as_table(),
            "traits": {
                "value_support": self._value_support,
                "variate_form": self._variate_form,
                "type": self._type.display(),
            },
            "properties": {
                "support": self.support.display(),
                "symmetry": "symmetric" if self._symmetric else "asymmetric",
                "kurtosis_class": classify_kurtosis(stats.get("excess_kurtosis")),
                "skewness_class": classify_skewness(stats.get("skewness")),
            },
            "statistics": stats,
            "decorators": list(self.decorators),
        }

    def summary(self) -> str:
        """Fixed text block: quick statistics, support/type, traits,
        properties, decorators."""
        d = self.describe()
        lines = [self.name, ""]
        stats = d["statistics"]
        if stats:
            lines.append("  Quick Statistics")
            shown = (("Mean", "mean"), ("Variance", "variance"),
                     ("Skewness", "skewness"), ("Ex. Kurtosis", "excess_kurtosis"))
            for label, key in shown:
                if key in stats:
                    lines.append(f"\t{label}:\t{_fmt_stat(stats[key])}")
            lines.append("")
        lines.append(f" Support: {d['properties']['support']} "
                     f"\tScientific Type: {d['traits']['type']}")
        lines.append("")
        lines.append(f" Traits:\t{d['traits']['value_support']}; "
                     f"{d['traits']['variate_form']}")
        props = [d["properties"]["symmetry"]]
        if d["properties"]["kurtosis_class"]:
            props.append(d["properties"]["kurtosis_class"])
        if d["properties"]["skewness_class"]:
            props.append(d["properties"]["skewness_class"])
        lines.append(f" Properties:\t{'; '.join(props)}")
        if self.decorators:
            lines.append("")
            lines.append(f" Decorated with: {', '.join(self.decorators)}")
        return "\n".join(lines)

    def __repr__(self):
        rows = self._params.as_table()
        if 0 < len(rows) <= 8:
            inner = ", ".join(f"{r['id']} = {_fmt_value(r['value'])}" for r in rows)
        else:
            inner = ""
        return f"{self.short_name}({inner})"


def _fmt_stat(v: float) -> str:
    if abs(v) < 1e-9:
        v = 0.0
    return format(v, ".7g")


def _fmt_value(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, (list, tuple)):
        if len(v) > 4:
            return "[" + ", ".join(_fmt_value(x) for x in v[:3]) + ", ...]"
        return "[" + ", ".join(_fmt_value(x) for x in v) + "]"
    if isinstance(v, float) and v == int(v) and math.isfinite(v):
        return str(int(v))
    return format(v, ".6g") if isinstance(v, float) else str(v)
