"""Concrete analytic distributions.

Each class supplies closed-form kernels and statistics only where closed
forms exist; anything else stays absent so the decorator layer can impute it
on request.  Distributions with several common parameterizations expose all
of them through parameterization groups (normal variance/sd/precision,
gamma and exponential rate/scale, binomial prob/qprob), so any one can be
given at construction and all stay mutually consistent afterwards.

Kernel evaluation leans on scipy.stats / scipy.special for the standard
special-function work; everything structural (parameter propagation, traits,
supports, validation) lives in this package.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy import special, stats

from .core import Distribution
from .errors import ParameterError
from .params import ParameterDef, ParameterizationGroup, ParameterSet, normalize_weights
from .sets import (
    FiniteSet,
    Integers,
    Interval,
    Naturals,
    Naturals0,
    Power,
    PositiveReals,
    Reals,
)

_R = Reals()
_RPOS = PositiveReals()
_RPOS0 = PositiveReals(include_zero=True)
_UNIT = Interval(0.0, 1.0)


def _given(**kwargs) -> dict:
    """Only the arguments the caller actually supplied (drops None)."""
    return {k: v for k, v in kwargs.items() if v is not None}


def _ordered(strict: bool):
    def check(values):
        lo, hi = values["lower"], values["upper"]
        if strict and not lo < hi:
            raise ParameterError(f"lower ({lo}) must be < upper ({hi})")
        if not strict and not lo <= hi:
            raise ParameterError(f"lower ({lo}) must be <= upper ({hi})")
    return check


def _lookup_pmf(values: np.ndarray, probs: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Probability mass of points matched (to tolerance) against a sorted
    value grid; zero for non-support points."""
    x = np.atleast_1d(np.asarray(x, float))
    idx = np.clip(np.searchsorted(values, x), 0, len(values) - 1)
    out = np.where(np.isclose(values[idx], x, rtol=0.0, atol=1e-9), probs[idx], 0.0)
    prev = np.clip(idx - 1, 0, len(values) - 1)
    miss = out == 0.0
    out = np.where(miss & np.isclose(values[prev], x, rtol=0.0, atol=1e-9),
                   probs[prev], out)
    return out


# ---------------------------------------------------------------------------
# continuous families
# ---------------------------------------------------------------------------

class Normal(Distribution):
    """Normal distribution; parameterize via variance, sd, or precision."""

    def __init__(self, mean=0.0, var=None, sd=None, prec=None, decorators=None):
        params = ParameterSet(
            defs=[
                ParameterDef("mean", 0.0, _R, description="Mean"),
                ParameterDef("var", 1.0, _RPOS, description="Variance"),
                ParameterDef("sd", 1.0, _RPOS, description="Standard Deviation"),
                ParameterDef("prec", 1.0, _RPOS, description="Precision"),
            ],
            groups=[ParameterizationGroup(
                ("var", "sd", "prec"), "var",
                to_canonical={"sd": lambda s: s * s, "prec": lambda p: 1.0 / p},
                from_canonical={"sd": math.sqrt, "prec": lambda v: 1.0 / v},
            )],
            values=_given(mean=mean, var=var, sd=sd, prec=prec),
        )
        super().__init__(
            name="Normal", short_name="Norm", type=_R, support=_R, symmetric=True,
            parameters=params, value_support="continuous", variate_form="univariate",
            description="Normal (Gaussian) distribution.", decorators=decorators,
        )

    def _pdf(self, x):
        return stats.norm.pdf(x, self._v("mean"), self._v("sd"))

    def _cdf(self, x):
        return stats.norm.cdf(x, self._v("mean"), self._v("sd"))

    def _quantile(self, p):
        return stats.norm.ppf(p, self._v("mean"), self._v("sd"))

    def _rand(self, n, rng):
        return rng.normal(self._v("mean"), self._v("sd"), size=n)

    def _mean(self):
        return self._v("mean")

    def _variance(self):
        return self._v("var")

    def _skewness(self):
        return 0.0

    def _kurtosis_excess(self):
        return 0.0

    def _entropy_nats(self):
        return 0.5 * math.log(2.0 * math.pi * math.e * self._v("var"))

    def _mgf(self, t):
        return math.exp(self._v("mean") * t + 0.5 * self._v("var") * t * t)

    def _cf(self, t):
        return cmath.exp(1j * self._v("mean") * t - 0.5 * self._v("var") * t * t)


class Exponential(Distribution):
    """Exponential distribution; rate and scale are interchangeable."""

    def __init__(self, rate=None, scale=None, decorators=None):
        params = ParameterSet(
            defs=[
                ParameterDef("rate", 1.0, _RPOS, description="Arrival Rate"),
                ParameterDef("scale", 1.0, _RPOS, description="Scale"),
            ],
            groups=[ParameterizationGroup(
                ("rate", "scale"), "rate",
                to_canonical={"scale": lambda s: 1.0 / s},
                from_canonical={"scale": lambda r: 1.0 / r},
            )],
            values=_given(rate=rate, scale=scale),
        )
        super().__init__(
            name="Exponential", short_name="Exp", type=_R, support=_RPOS0,
            parameters=params, value_support="continuous", variate_form="univariate",
            description="Exponential distribution.", decorators=decorators,
        )

    def _pdf(self, x):
        return stats.expon.pdf(x, scale=self._v("scale"))

    def _cdf(self, x):
        return stats.expon.cdf(x, scale=self._v("scale"))

    def _quantile(self, p):
        return stats.expon.ppf(p, scale=self._v("scale"))

    def _rand(self, n, rng):
        return rng.exponential(self._v("scale"), size=n)

    def _mean(self):
        return self._v("scale")

    def _variance(self):
        return self._v("scale") ** 2

    def _skewness(self):
        return 2.0

    def _kurtosis_excess(self):
        return 6.0

    def _entropy_nats(self):
        return 1.0 - math.log(self._v("rate"))

    def _mgf(self, t):
        rate = self._v("rate")
        return rate / (rate - t) if t < rate else math.inf

    def _cf(self, t):
        rate = self._v("rate")
        return rate / complex(rate, -t)


class Gamma(Distribution):
    """Gamma distribution with shape and a rate/scale group."""

    def __init__(self, shape=None, rate=None, scale=None, decorators=None):
        params = ParameterSet(
            defs=[
                ParameterDef("shape", 1.0, _RPOS, description="Shape"),
                ParameterDef("rate", 1.0, _RPOS, description="Rate"),
                ParameterDef("scale", 1.0, _RPOS, description="Scale"),
            ],
            groups=[ParameterizationGroup(
                ("rate", "scale"), "rate",
                to_canonical={"scale": lambda s: 1.0 / s},
                from_canonical={"scale": lambda r: 1.0 / r},
            )],
            values=_given(shape=shape, rate=rate, scale=scale),
        )
        super().__init__(
            name="Gamma", short_name="Gamma", type=_R, support=_RPOS,
            parameters=params, value_support="continuous", variate_form="univariate",
            description="Gamma distribution.", decorators=decorators,
        )

    def _pdf(self, x):
        return stats.gamma.pdf(x, self._v("shape"), scale=self._v("scale"))

    def _cdf(self, x):
        return stats.gamma.cdf(x, self._v("shape"), scale=self._v("scale"))

    def _quantile(self, p):
        return stats.gamma.ppf(p, self._v("shape"), scale=self._v("scale"))

    def _rand(self, n, rng):
        return rng.gamma(self._v("shape"), self._v("scale"), size=n)

    def _mean(self):
        return self._v("shape") * self._v("scale")

    def _variance(self):
        return self._v("shape") * self._v("scale") ** 2

    def _skewness(self):
        return 2.0 / math.sqrt(self._v("shape"))

    def _kurtosis_excess(self):
        return 6.0 / self._v("shape")

    def _entropy_nats(self):
        k, rate = self._v("shape"), self._v("rate")
        return k - math.log(rate) + math.lgamma(k) + (1.0 - k) * special.digamma(k)

    def _mgf(self, t):
        rate = self._v("rate")
        return (1.0 - t / rate) ** (-self._v("shape")) if t < rate else math.inf

    def _cf(self, t):
        rate = self._v("rate")
        return complex(1.0, -t / rate) ** (-self._v("shape"))


class StudentT(Distribution):
    """Student's t distribution with real degrees of freedom."""

    def __init__(self, df=None, decorators=None):
        params = ParameterSet(
            defs=[ParameterDef("df", 1.0, _RPOS, description="Degrees of Freedom")],
            values=_given(df=df),
        )
        super().__init__(
            name="StudentT", short_name="T", type=_R, support=_R, symmetric=True,
            parameters=params, value_support="continuous", variate_form="univariate",
            description="Student's t distribution.", decorators=decorators,
        )

    def _pdf(self, x):
        return stats.t.pdf(x, self._v("df"))

    def _cdf(self, x):
        return stats.t.cdf(x, self._v("df"))

    def _quantile(self, p):
        return stats.t.ppf(p, self._v("df"))

    def _rand(self, n, rng):
        return rng.standard_t(self._v("df"), size=n)

    def _mean(self):
        return 0.0 if self._v("df") > 1 else math.nan

    def _variance(self):
        df = self._v("df")
        if df > 2:
            return df / (df - 2.0)
        return math.inf if df > 1 else math.nan

    def _skewness(self):
        return 0.0 if self._v("df") > 3 else math.nan

    def _kurtosis_excess(self):
        df = self._v("df")
        if df > 4:
            return 6.0 / (df - 4.0)
        return math.inf if df > 2 else math.nan

    def _entropy_nats(self):
        df = self._v("df")
        return ((df + 1.0) / 2.0 * (special.digamma((df + 1.0) / 2.0) - special.digamma(df / 2.0))
                + 0.5 * math.log(df) + special.betaln(df / 2.0, 0.5))


class Uniform(Distribution):
    """Continuous uniform distribution on [lower, upper]."""

    def __init__(self, lower=None, upper=None, decorators=None):
        params = ParameterSet(
            defs=[
                ParameterDef("lower", 0.0, _R, description="Lower Bound"),
                ParameterDef("upper", 1.0, _R, description="Upper Bound"),
            ],
            values=_given(lower=lower, upper=upper),
            check=_ordered(strict=True),
        )
        super().__init__(
            name="Uniform", short_name="Unif", type=_R,
            support=Interval(params.get_value("lower"), params.get_value("upper")),
            symmetric=True, parameters=params, value_support="continuous",
            variate_form="univariate", description="Continuous uniform distribution.",
            decorators=decorators,
        )

    def _support_set(self):
        return Interval(self._v("lower"), self._v("upper"))

    def _width(self):
        return self._v("upper") - self._v("lower")

    def _pdf(self, x):
        return stats.uniform.pdf(x, self._v("lower"), self._width())

    def _cdf(self, x):
        return stats.uniform.cdf(x, self._v("lower"), self._width())

    def _quantile(self, p):
        return stats.uniform.ppf(p, self._v("lower"), self._width())

    def _rand(self, n, rng):
        return rng.uniform(self._v("lower"), self._v("upper"), size=n)

    def _mean(self):
        return 0.5 * (self._v("lower") + self._v("upper"))

    def _variance(self):
        return self._width() ** 2 / 12.0

    def _skewness(self):
        return 0.0

    def _kurtosis_excess(self):
        return -1.2

    def _entropy_nats(self):
        return math.log(self._width())

    def _mgf(self, t):
        if t == 0:
            return 1.0
        a, b = self._v("lower"), self._v("upper")
        return (math.exp(t * b) - math.exp(t * a)) / (t * (b - a))

    def _cf(self, t):
        if t == 0:
            return complex(1.0, 0.0)
        a, b = self._v("lower"), self._v("upper")
        return (cmath.exp(1j * t * b) - cmath.exp(1j * t * a)) / (1j * t * (b - a))


class Arcsine(Distribution):
    """Arcsine distribution on [lower, upper]."""

    def __init__(self, lower=None, upper=None, decorators=None):
        params = ParameterSet(
            defs=[
                ParameterDef("lower", 0.0, _R, description="Lower Bound"),
                ParameterDef("upper", 1.0, _R, description="Upper Bound"),
            ],
            values=_given(lower=lower, upper=upper),
            check=_ordered(strict=True),
        )
        super().__init__(
            name="Arcsine", short_name="Arc", type=_R,
            support=Interval(params.get_value("lower"), params.get_value("upper")),
            symmetric=True, parameters=params, value_support="continuous",
            variate_form="univariate", description="Arcsine distribution.",
            decorators=decorators,
        )

    def _support_set(self):
        return Interval(self._v("lower"), self._v("upper"))

    def _width(self):
        return self._v("upper") - self._v("lower")

    def _pdf(self, x):
        return stats.arcsine.pdf(x, self._v("lower"), self._width())

    def _cdf(self, x):
        return stats.arcsine.cdf(x, self._v("lower"), self._width())

    def _quantile(self, p):
        p = np.asarray(p, float)
        return self._v("lower") + self._width() * np.sin(0.5 * math.pi * p) ** 2

    def _rand(self, n, rng):
        return np.asarray(self._quantile(rng.uniform(size=n)), float)

    def _mean(self):
        return 0.5 * (self._v("lower") + self._v("upper"))

    def _variance(self):
        return self._width() ** 2 / 8.0

    def _skewness(self):
        return 0.0

    def _kurtosis_excess(self):
        return -1.5

    def _entropy_nats(self):
        return math.log(math.pi * self._width() / 4.0)


# ---------------------------------------------------------------------------
# discrete families
# ---------------------------------------------------------------------------

class Binomial(Distribution):
    """Binomial distribution; prob and qprob = 1 - prob form a group."""

    def __init__(self, size=None, prob=None, qprob=None, decorators=None):
        params = ParameterSet(
            defs=[
                ParameterDef("size", 10, Naturals(), description="Number of Trials"),
                ParameterDef("prob", 0.5, _UNIT, description="Success Probability"),
                ParameterDef("qprob", 0.5, _UNIT, description="Failure Probability"),
            ],
            groups=[ParameterizationGroup(
                ("prob", "qprob"), "prob",
                to_canonical={"qprob": lambda q: 1.0 - q},
                from_canonical={"qprob": lambda p: 1.0 - p},
            )],
            values=_given(size=size, prob=prob, qprob=qprob),
        )
        super().__init__(
            name="Binomial", short_name="Binom", type=Naturals0(),
            support=FiniteSet(range(int(params.get_value("size")) + 1)),
            parameters=params, value_support="discrete", variate_form="univariate",
            description="Binomial distribution.", decorators=decorators,
        )

    def _support_set(self):
        return FiniteSet(range(int(self._v("size")) + 1))

    def _pdf(self, x):
        return stats.binom.pmf(x, int(self._v("size")), self._v("prob"))

    def _cdf(self, x):
        return stats.binom.cdf(x, int(self._v("size")), self._v("prob"))

    def _quantile(self, p):
        return stats.binom.ppf(p, int(self._v("size")), self._v("prob"))

    def _rand(self, n, rng):
        return rng.binomial(int(self._v("size")), self._v("prob"), size=n)

    def _mean(self):
        return self._v("size") * self._v("prob")

    def _variance(self):
        return self._v("size") * self._v("prob") * self._v("qprob")

    def _skewness(self):
        var = self._variance()
        if var == 0:
            return math.nan
        return (self._v("qprob") - self._v("prob")) / math.sqrt(var)

    def _kurtosis_excess(self):
        var = self._variance()
        if var == 0:
            return math.nan
        return (1.0 - 6.0 * self._v("prob") * self._v("qprob")) / var

    def _entropy_nats(self):
        ks = np.arange(int(self._v("size")) + 1)
        pmf = stats.binom.pmf(ks, int(self._v("size")), self._v("prob"))
        return float(-np.sum(special.xlogy(pmf, pmf)))

    def _mgf(self, t):
        return (self._v("qprob") + self._v("prob") * math.exp(t)) ** self._v("size")

    def _cf(self, t):
        return (self._v("qprob") + self._v("prob") * cmath.exp(1j * t)) ** self._v("size")

    def _pgf(self, z):
        return (self._v("qprob") + self._v("prob") * z) ** self._v("size")


class Poisson(Distribution):
    """Poisson distribution."""

    def __init__(self, rate=None, decorators=None):
        params = ParameterSet(
            defs=[ParameterDef("rate", 1.0, _RPOS, description="Rate")],
            values=_given(rate=rate),
        )
        super().__init__(
            name="Poisson", short_name="Pois", type=Naturals0(), support=Naturals0(),
            parameters=params, value_support="discrete", variate_form="univariate",
            description="Poisson distribution.", decorators=decorators,
        )

    def _pdf(self, x):
        return stats.poisson.pmf(x, self._v("rate"))

    def _cdf(self, x):
        return stats.poisson.cdf(x, self._v("rate"))

    def _quantile(self, p):
        return stats.poisson.ppf(p, self._v("rate"))

    def _rand(self, n, rng):
        return rng.poisson(self._v("rate"), size=n)

    def _mean(self):
        return self._v("rate")

    def _variance(self):
        return self._v("rate")

    def _skewness(self):
        return 1.0 / math.sqrt(self._v("rate"))

    def _kurtosis_excess(self):
        return 1.0 / self._v("rate")

    def _mgf(self, t):
        return math.exp(self._v("rate") * (math.exp(t) - 1.0))

    def _cf(self, t):
        return cmath.exp(self._v("rate") * (cmath.exp(1j * t) - 1.0))

    def _pgf(self, z):
        return math.exp(self._v("rate") * (z - 1.0))


class DiscreteUniform(Distribution):
    """Uniform distribution on the integers lower..upper."""

    def __init__(self, lower=None, upper=None, decorators=None):
        params = ParameterSet(
            defs=[
                ParameterDef("lower", 1, Integers(), description="Lower Bound"),
                ParameterDef("upper", 6, Integers(), description="Upper Bound"),
            ],
            values=_given(lower=lower, upper=upper),
            check=_ordered(strict=False),
        )
        super().__init__(
            name="DiscreteUniform", short_name="DUnif", type=Integers(),
            support=FiniteSet(range(int(params.get_value("lower")),
                                    int(params.get_value("upper")) + 1)),
            symmetric=True, parameters=params, value_support="discrete",
            variate_form="univariate", description="Discrete uniform distribution.",
            decorators=decorators,
        )

    def _support_set(self):
        return FiniteSet(range(int(self._v("lower")), int(self._v("upper")) + 1))

    def _n(self):
        return int(self._v("upper")) - int(self._v("lower")) + 1

    def _pdf(self, x):
        return stats.randint.pmf(x, int(self._v("lower")), int(self._v("upper")) + 1)

    def _cdf(self, x):
        return stats.randint.cdf(x, int(self._v("lower")), int(self._v("upper")) + 1)

    def _quantile(self, p):
        return stats.randint.ppf(p, int(self._v("lower")), int(self._v("upper")) + 1)

    def _rand(self, n, rng):
        return rng.integers(int(self._v("lower")), int(self._v("upper")) + 1, size=n).astype(float)

    def _mean(self):
        return 0.5 * (self._v("lower") + self._v("upper"))

    def _variance(self):
        n = self._n()
        return (n * n - 1.0) / 12.0

    def _skewness(self):
        return 0.0

    def _kurtosis_excess(self):
        n = self._n()
        if n == 1:
            return math.nan
        return -6.0 * (n * n + 1.0) / (5.0 * (n * n - 1.0))

    def _entropy_nats(self):
        return math.log(self._n())

    def _mgf(self, t):
        if t == 0:
            return 1.0
        a, b, n = self._v("lower"), self._v("upper"), self._n()
        return (math.exp(a * t) - math.exp((b + 1.0) * t)) / (n * (1.0 - math.exp(t)))

    def _cf(self, t):
        if t == 0:
            return complex(1.0, 0.0)
        a, b, n = self._v("lower"), self._v("upper"), self._n()
        return (cmath.exp(1j * a * t) - cmath.exp(1j * (b + 1.0) * t)) / (n * (1.0 - cmath.exp(1j * t)))

    def _pgf(self, z):
        if z == 1:
            return 1.0
        a, b, n = self._v("lower"), self._v("upper"), self._n()
        return (z ** a - z ** (b + 1.0)) / (n * (1.0 - z))


class Degenerate(Distribution):
    """Point mass; the pdf is the probability mass 1 at the atom."""

    def __init__(self, mean=None, decorators=None):
        params = ParameterSet(
            defs=[ParameterDef("mean", 0.0, _R, description="Location of Mass")],
            values=_given(mean=mean),
        )
        super().__init__(
            name="Degenerate", short_name="Degen", type=_R,
            support=FiniteSet((params.get_value("mean"),)), symmetric=True,
            parameters=params, value_support="discrete", variate_form="univariate",
            description="Degenerate (point-mass) distribution.", decorators=decorators,
        )

    def _support_set(self):
        return FiniteSet((self._v("mean"),))

    def _pdf(self, x):
        x = np.atleast_1d(np.asarray(x, float))
        return np.where(np.isclose(x, self._v("mean"), rtol=0.0, atol=1e-12), 1.0, 0.0)

    def _cdf(self, x):
        x = np.atleast_1d(np.asarray(x, float))
        return np.where(x >= self._v("mean") - 1e-12, 1.0, 0.0)

    def _quantile(self, p):
        p = np.atleast_1d(np.asarray(p, float))
        return np.full(p.shape, float(self._v("mean")))

    def _rand(self, n, rng):
        return np.full(n, float(self._v("mean")))

    def _mean(self):
        return self._v("mean")

    def _variance(self):
        return 0.0

    def _skewness(self):
        return math.nan

    def _kurtosis_excess(self):
        return math.nan

    def _entropy_nats(self):
        return 0.0

    def _mgf(self, t):
        return math.exp(self._v("mean") * t)

    def _cf(self, t):
        return cmath.exp(1j * self._v("mean") * t)

    def _pgf(self, z):
        return float(z) ** self._v("mean")


# ---------------------------------------------------------------------------
# empirical families
# ---------------------------------------------------------------------------

class Empirical(Distribution):
    """Empirical distribution of observed samples.

    The pmf is the relative frequency, the cdf the right-continuous step
    ecdf, and the quantile the order-statistic (type-1) generalized inverse;
    moments are computed from the data exactly.
    """

    def __init__(self, samples, decorators=None):
        data = np.sort(np.asarray(list(samples), float).ravel())
        if data.size == 0:
            raise ValueError("an empirical distribution needs at least one sample")
        self._data = data
        self._values, counts = np.unique(data, return_counts=True)
        self._probs = counts / data.size
        super().__init__(
            name="Empirical", short_name="Emp", type=_R,
            support=FiniteSet(self._values.tolist()),
            parameters=ParameterSet([]), value_support="discrete",
            variate_form="univariate",
            description="Empirical distribution of observed samples.",
            decorators=decorators,
        )

    @property
    def samples(self) -> np.ndarray:
        return self._data.copy()

    def _pdf(self, x):
        return _lookup_pmf(self._values, self._probs, x)

    def _cdf(self, x):
        x = np.atleast_1d(np.asarray(x, float))
        shift = 1e-9 * np.maximum(1.0, np.abs(x))
        return np.searchsorted(self._data, x + shift, side="right") / self._data.size

    def _quantile(self, p):
        p = np.atleast_1d(np.asarray(p, float))
        n = self._data.size
        idx = np.clip(np.ceil(p * n - 1e-12).astype(int) - 1, 0, n - 1)
        return self._data[idx]

    def _rand(self, n, rng):
        return rng.choice(self._data, size=n, replace=True)

    def _mean(self):
        return float(np.mean(self._data))

    def _variance(self):
        return float(np.var(self._data))

    def _skewness(self):
        sd = math.sqrt(self._variance())
        if sd == 0:
            return math.nan
        return float(np.mean((self._data - self._mean()) ** 3) / sd ** 3)

    def _kurtosis_excess(self):
        var = self._variance()
        if var == 0:
            return math.nan
        return float(np.mean((self._data - self._mean()) ** 4) / var ** 2 - 3.0)

    def _entropy_nats(self):
        return float(-np.sum(special.xlogy(self._probs, self._probs)))

    def _mgf(self, t):
        return float(np.dot(self._probs, np.exp(t * self._values)))

    def _cf(self, t):
        return complex(
            float(np.dot(self._probs, np.cos(t * self._values))),
            float(np.dot(self._probs, np.sin(t * self._values))),
        )

    def _pgf(self, z):
        return float(np.dot(self._probs, np.power(float(z), self._values)))


class WeightedDiscrete(Distribution):
    """Discrete distribution on given points with given probability weights."""

    def __init__(self, x, weights, decorators=None):
        xs = np.asarray(list(x), float).ravel()
        if xs.size == 0:
            raise ValueError("a weighted discrete distribution needs at least one point")
        w = normalize_weights(list(weights), n=xs.size)
        order = np.argsort(xs)
        self._values = xs[order]
        self._probs = np.asarray(w, float)[order]
        if np.unique(self._values).size != self._values.size:
            raise ValueError("support points must be unique")
        super().__init__(
            name="WeightedDiscrete", short_name="WDisc", type=_R,
            support=FiniteSet(self._values.tolist()),
            parameters=ParameterSet([]), value_support="discrete",
            variate_form="univariate",
            description="Discrete distribution with explicit weights.",
            decorators=decorators,
        )

    def _pdf(self, x):
        return _lookup_pmf(self._values, self._probs, x)

    def _cdf(self, x):
        x = np.atleast_1d(np.asarray(x, float))
        shift = 1e-9 * np.maximum(1.0, np.abs(x))
        idx = np.searchsorted(self._values, x + shift, side="right")
        cums = np.concatenate(([0.0], np.cumsum(self._probs)))
        return cums[idx]

    def _quantile(self, p):
        p = np.atleast_1d(np.asarray(p, float))
        cums = np.cumsum(self._probs)
        idx = np.clip(np.searchsorted(cums, p - 1e-12, side="left"), 0, len(self._values) - 1)
        return self._values[idx]

    def _rand(self, n, rng):
        return rng.choice(self._values, size=n, replace=True, p=self._probs)

    def _mean(self):
        return float(np.dot(self._probs, self._values))

    def _variance(self):
        mu = self._mean()
        return float(np.dot(self._probs, (self._values - mu) ** 2))

    def _skewness(self):
        sd = math.sqrt(self._variance())
        if sd == 0:
            return math.nan
        return float(np.dot(self._probs, (self._values - self._mean()) ** 3) / sd ** 3)

    def _kurtosis_excess(self):
        var = self._variance()
        if var == 0:
            return math.nan
        return float(np.dot(self._probs, (self._values - self._mean()) ** 4) / var ** 2 - 3.0)

    def _entropy_nats(self):
        return float(-np.sum(special.xlogy(self._probs, self._probs)))

    def _mgf(self, t):
        return float(np.dot(self._probs, np.exp(t * self._values)))

    def _cf(self, t):
        return complex(
            float(np.dot(self._probs, np.cos(t * self._values))),
            float(np.dot(self._probs, np.sin(t * self._values))),
        )

    def _pgf(self, z):
        return float(np.dot(self._probs, np.power(float(z), self._values)))


class EmpiricalMV(Distribution):
    """Multivariate empirical distribution over observed rows.

    The cdf at a point is the fraction of rows elementwise <= that point;
    the pdf is the exact-row relative frequency.  Mean and variance return
    per-column vectors.
    """

    def __init__(self, data, decorators=None):
        rows = np.atleast_2d(np.asarray(data, float))
        if rows.size == 0:
            raise ValueError("a multivariate empirical distribution needs data")
        if rows.shape[1] < 2:
            raise ValueError("use Empirical for one-column data")
        self._rows = rows
        super().__init__(
            name="EmpiricalMV", short_name="EmpMV",
            type=Power(_R, rows.shape[1]), support=Power(_R, rows.shape[1]),
            parameters=ParameterSet([]), value_support="discrete",
            variate_form="multivariate",
            description="Multivariate empirical distribution.",
            decorators=decorators,
        )

    @property
    def data(self) -> np.ndarray:
        return self._rows.copy()

    def _pdf(self, x):
        pts = np.atleast_2d(np.asarray(x, float))
        hits = np.isclose(self._rows[None, :, :], pts[:, None, :],
                          rtol=0.0, atol=1e-9).all(axis=2)
        return hits.mean(axis=1)

    def _cdf(self, x):
        pts = np.atleast_2d(np.asarray(x, float))
        below = (self._rows[None, :, :] <= pts[:, None, :] + 1e-12).all(axis=2)
        return below.mean(axis=1)

    def _rand(self, n, rng):
        idx = rng.integers(0, self._rows.shape[0], size=n)
        return self._rows[idx]

    def _mean(self):
        return self._rows.mean(axis=0)

    def _variance(self):
        return self._rows.var(axis=0)


# ---------------------------------------------------------------------------
# probability kernels
# ---------------------------------------------------------------------------

class Kernel(Distribution):
    """Base for probability kernels: continuous, symmetric, mean zero.

    The stored variance is each kernel's true analytic variance (no
    rescaling of the [-1, 1] support is performed).
    """

    def __init__(self, name, short_name, decorators=None):
        if type(self) is Kernel:
            raise TypeError("Kernel is abstract; construct a concrete kernel "
                            "(Epanechnikov, Triangular) or use kernel(kind=...)")
        super().__init__(
            name=name, short_name=short_name, type=_R,
            support=Interval(-1.0, 1.0), symmetric=True,
            parameters=ParameterSet([]), value_support="continuous",
            variate_form="univariate", description=f"{name} probability kernel.",
            decorators=decorators,
        )

    def _rand(self, n, rng):
        return np.asarray(self._quantile(rng.uniform(size=n)), float)

    def _mean(self):
        return 0.0

    def _skewness(self):
        return 0.0


class Epanechnikov(Kernel):
    """Epanechnikov kernel 3/4 (1 - x^2) on [-1, 1]."""

    def __init__(self, decorators=None):
        super().__init__("Epanechnikov", "Epan", decorators=decorators)

    def _pdf(self, x):
        x = np.atleast_1d(np.asarray(x, float))
        return np.where(np.abs(x) <= 1.0, 0.75 * (1.0 - x * x), 0.0)

    def _cdf(self, x):
        x = np.clip(np.atleast_1d(np.asarray(x, float)), -1.0, 1.0)
        return 0.25 * (3.0 * x - x ** 3 + 2.0)

    def _quantile(self, p):
        p = np.atleast_1d(np.asarray(p, float))
        return 2.0 * np.sin(np.arcsin(2.0 * p - 1.0) / 3.0)

    def _variance(self):
        return 0.2

    def _kurtosis_excess(self):
        return 15.0 / 7.0 - 3.0


class Triangular(Kernel):
    """Triangular kernel 1 - |x| on [-1, 1]."""

    def __init__(self, decorators=None):
        super().__init__("Triangular", "Tri", decorators=decorators)

    def _pdf(self, x):
        x = np.atleast_1d(np.asarray(x, float))
        return np.maximum(1.0 - np.abs(x), 0.0)

    def _cdf(self, x):
        x = np.clip(np.atleast_1d(np.asarray(x, float)), -1.0, 1.0)
        return np.where(x <= 0.0, 0.5 * (1.0 + x) ** 2, 1.0 - 0.5 * (1.0 - x) ** 2)

    def _quantile(self, p):
        p = np.atleast_1d(np.asarray(p, float))
        return np.where(p <= 0.5, np.sqrt(2.0 * p) - 1.0, 1.0 - np.sqrt(2.0 * (1.0 - p)))

    def _variance(self):
        return 1.0 / 6.0

    def _kurtosis_excess(self):
        return 2.4 - 3.0


_KERNEL_KINDS = {"epanechnikov": Epanechnikov, "triangular": Triangular}


def kernel(kind: str = "epanechnikov", decorators=None) -> Kernel:
    """Construct a probability kernel by kind."""
    k = str(kind).lower()
    if k not in _KERNEL_KINDS:
        raise ValueError(f"unknown kernel kind {kind!r}; expected one of "
                         f"{sorted(_KERNEL_KINDS)}")
    return _KERNEL_KINDS[k](decorators=decorators)


# ---------------------------------------------------------------------------
# catalog registry
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    short_name: str
    name: str
    constructor: object
    value_support: str
    variate_form: str
    parameter_ids: tuple
    defaults: str


CATALOG: tuple[CatalogEntry, ...] = (
    CatalogEntry("Norm", "Normal", Normal, "continuous", "univariate",
                 ("mean", "var", "sd", "prec"), "mean=0, var=1"),
    CatalogEntry("Binom", "Binomial", Binomial, "discrete", "univariate",
                 ("size", "prob", "qprob"), "size=10, prob=0.5"),
    CatalogEntry("Exp", "Exponential", Exponential, "continuous", "univariate",
                 ("rate", "scale"), "rate=1"),
    CatalogEntry("Gamma", "Gamma", Gamma, "continuous", "univariate",
                 ("shape", "rate", "scale"), "shape=1, rate=1"),
    CatalogEntry("T", "StudentT", StudentT, "continuous", "univariate",
                 ("df",), "df=1"),
    CatalogEntry("Unif", "Uniform", Uniform, "continuous", "univariate",
                 ("lower", "upper"), "lower=0, upper=1"),
    CatalogEntry("DUnif", "DiscreteUniform", DiscreteUniform, "discrete", "univariate",
                 ("lower", "upper"), "lower=1, upper=6"),
    CatalogEntry("Degen", "Degenerate", Degenerate, "discrete", "univariate",
                 ("mean",), "mean=0"),
    CatalogEntry("Arc", "Arcsine", Arcsine, "continuous", "univariate",
                 ("lower", "upper"), "lower=0, upper=1"),
    CatalogEntry("Pois", "Poisson", Poisson, "discrete", "univariate",
                 ("rate",), "rate=1"),
    CatalogEntry("Emp", "Empirical", Empirical, "discrete", "univariate",
                 (), "samples=<data>"),
    CatalogEntry("EmpMV", "EmpiricalMV", EmpiricalMV, "discrete", "multivariate",
                 (), "data=<rows>"),
    CatalogEntry("WDisc", "WeightedDiscrete", WeightedDiscrete, "discrete", "univariate",
                 (), "x=<points>, weights=<weights>"),
    CatalogEntry("Kern", "Kernel", kernel, "continuous", "univariate",
                 (), "kind=epanechnikov"),
)

CONSTRUCTORS = {e.name: e.constructor for e in CATALOG}


def list_catalog(value_support: str | None = None,
                 variate_form: str | None = None) -> list[CatalogEntry]:
    """Implemented distributions in deterministic order, optionally filtered
    by trait."""
    out = []
    for e in CATALOG:
        if value_support is not None and e.value_support != value_support:
            continue
        if variate_form is not None and e.variate_form != variate_form:
            continue
        out.append(e)
    return out
