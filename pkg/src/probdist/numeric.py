"""Numeric capability layers and the shared quadrature/summation engine.

Three decorators can be applied to any distribution:

* ``CoreStatistics`` — numeric moments and generating functions through the
  generalized expectation ``E[f(X)]``.
* ``ExoticStatistics`` — survival, hazard and cumulative hazard functions,
  p-norms and anti-derivatives of distribution functions.
* ``FunctionImputation`` — numeric imputation of missing pdf/cdf/quantile/rand
  kernels from whichever defining function is available.

Decorators are capability flags plus method tables attached to the object,
never subclasses, so the distribution's public interface is unchanged by
decoration.  Analytic methods are never overridden: numeric paths engage only
where no closed form exists.

The quadrature is a batched adaptive Simpson scheme with Richardson
extrapolation; any adaptive scheme meeting the relative-tolerance contract
would be conformant.  Infinite supports are truncated at quantiles of the
tail-probability cutoff, which keeps the truncation scale-free.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace

import numpy as np
from scipy.special import xlogy

from . import sets
from .errors import (
    CapabilityError,
    DecoratorWarning,
    NumericError,
    UnsupportedError,
)

#: the three decorator kinds, in canonical listing order
DECORATOR_KINDS = ("CoreStatistics", "ExoticStatistics", "FunctionImputation")


@dataclass(frozen=True)
class NumericOptions:
    """Tunable knobs for every numeric routine.

    ``infinite_cutoff_prob`` is the tail mass ignored when truncating an
    infinite support; ``discrete_cutoff`` caps how many support points an
    unbounded discrete distribution may enumerate.
    """

    quad_rel_tol: float = 1e-8
    quad_max_subdiv: int = 200
    infinite_cutoff_prob: float = 1e-10
    discrete_cutoff: int = 10**6
    root_tol: float = 1e-10
    root_max_iter: int = 200

    def __post_init__(self):
        for name in ("quad_rel_tol", "quad_max_subdiv", "infinite_cutoff_prob",
                     "discrete_cutoff", "root_tol", "root_max_iter"):
            if getattr(self, name) <= 0:
                raise ValueError(f"numeric option {name!r} must be positive")

    def updated(self, **kwargs) -> "NumericOptions":
        return replace(self, **kwargs)


DEFAULT_OPTIONS = NumericOptions()

_SIMPSON_POS = np.array([0.0, 0.25, 0.5, 0.75, 1.0])
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(12)


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------

def gauss_segments(f, a, b) -> np.ndarray:
    """12-point Gauss-Legendre integral(s) of vectorized ``f`` over ``[a, b]``.

    ``a`` and ``b`` may be arrays of matching shape; one batched call to
    ``f`` evaluates every node.  Nodes are strictly interior, so integrable
    endpoint singularities do not poison the result.
    """
    a = np.atleast_1d(np.asarray(a, float))
    b = np.atleast_1d(np.asarray(b, float))
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    x = mid[:, None] + half[:, None] * _GL_NODES[None, :]
    y = np.asarray(f(x.ravel()), float).reshape(x.shape)
    return half * (y * _GL_WEIGHTS[None, :]).sum(axis=1)


def integrate(f, a, b, options: NumericOptions | None = None, breakpoints=None):
    """Adaptive Simpson integral of vectorized ``f`` over finite ``[a, b]``.

    Returns ``(value, error_bound)``.  Non-convergence within the subdivision
    budget raises :class:`NumericError` carrying the running estimate and
    bound.  ``breakpoints`` seed the initial segmentation (quantile-spaced
    nodes make heavy-tailed integrands tractable).
    """
    options = options or DEFAULT_OPTIONS
    if not (math.isfinite(a) and math.isfinite(b)):
        raise NumericError(f"cannot integrate over infinite range [{a}, {b}]")
    if a == b:
        return 0.0, 0.0
    if a > b:
        v, e = integrate(f, b, a, options, breakpoints)
        return -v, e

    if breakpoints is not None:
        inner = [x for x in breakpoints if a < x < b and math.isfinite(x)]
        edges = np.unique(np.concatenate(([a], inner, [b])))
        if len(edges) < 9:  # keep a minimal resolution even with few breaks
            extra = np.linspace(a, b, 9)
            edges = np.unique(np.concatenate((edges, extra)))
    else:
        edges = np.linspace(a, b, 17)

    los = edges[:-1]
    his = edges[1:]
    xs = (los[:, None] + (his - los)[:, None] * _SIMPSON_POS[None, :]).ravel()
    ys = np.asarray(f(xs), float).reshape(len(los), 5)
    if not np.all(np.isfinite(ys)):
        raise NumericError("integrand returned a non-finite value")
    share = 1.0 / len(los)
    segs = [(los[i], his[i], ys[i], share) for i in range(len(los))]

    accepted = 0.0
    accepted_err = 0.0
    splits = 0
    scale = max(abs(a), abs(b), 1.0)

    for _ in range(128):
        s1 = np.array([(hi - lo) / 6.0 * (y[0] + 4.0 * y[2] + y[4]) for lo, hi, y, _ in segs])
        s2 = np.array([
            (hi - lo) / 12.0 * (y[0] + 4.0 * y[1] + 2.0 * y[2] + 4.0 * y[3] + y[4])
            for lo, hi, y, _ in segs
        ])
        errs = np.abs(s2 - s1) / 15.0
        est_total = accepted + float(s2.sum())
        eps = options.quad_rel_tol * max(abs(est_total), 1e-12)

        to_split = []
        for i, (lo, hi, y, shr) in enumerate(segs):
            tiny = (hi - lo) <= 1e-14 * scale
            if errs[i] <= eps * shr or tiny:
                accepted += s2[i] + (s2[i] - s1[i]) / 15.0
                accepted_err += errs[i]
            else:
                to_split.append((lo, hi, y, shr, errs[i], s2[i]))
        if not to_split:
            return accepted, accepted_err

        splits += len(to_split)
        if splits > options.quad_max_subdiv:
            estimate = accepted + sum(t[5] for t in to_split)
            bound = accepted_err + sum(t[4] for t in to_split)
            raise NumericError(
                f"quadrature did not converge within {options.quad_max_subdiv} subdivisions",
                estimate=estimate,
                error_bound=bound,
            )

        # each split needs four new nodes: the quarter points of both halves
        new_x = []
        for lo, hi, y, shr, _, _ in to_split:
            w = hi - lo
            new_x.extend([lo + w / 8.0, lo + 3.0 * w / 8.0, lo + 5.0 * w / 8.0, lo + 7.0 * w / 8.0])
        new_y = np.asarray(f(np.array(new_x)), float)
        if not np.all(np.isfinite(new_y)):
            raise NumericError("integrand returned a non-finite value")

        nxt = []
        for j, (lo, hi, y, shr, _, _) in enumerate(to_split):
            mid = 0.5 * (lo + hi)
            ny = new_y[4 * j:4 * j + 4]
            left = np.array([y[0], ny[0], y[1], ny[1], y[2]])
            right = np.array([y[2], ny[2], y[3], ny[3], y[4]])
            nxt.append((lo, mid, left, shr / 2.0))
            nxt.append((mid, hi, right, shr / 2.0))
        segs = nxt

    raise NumericError("quadrature exceeded the round limit", estimate=accepted,
                       error_bound=accepted_err)


def invert_monotone(f, targets, lo: float, hi: float,
                    options: NumericOptions | None = None) -> np.ndarray:
    """Solve ``f(x) = t`` for a vectorized nondecreasing ``f`` by lock-step
    bisection; all targets are refined simultaneously."""
    options = options or DEFAULT_OPTIONS
    t = np.atleast_1d(np.asarray(targets, float))
    los = np.full(t.shape, float(lo))
    his = np.full(t.shape, float(hi))
    for _ in range(options.root_max_iter):
        mids = 0.5 * (los + his)
        fm = np.asarray(f(mids), float)
        go_right = fm < t
        los = np.where(go_right, mids, los)
        his = np.where(go_right, his, mids)
        if np.all(his - los <= options.root_tol * np.maximum(1.0, np.abs(mids))):
            break
    return 0.5 * (los + his)


# ---------------------------------------------------------------------------
# support handling
# ---------------------------------------------------------------------------

def support_points(dist, options: NumericOptions | None = None) -> np.ndarray:
    """Enumerated support of a discrete distribution, ascending.

    Finite sets enumerate directly.  Unbounded integer supports enumerate
    until the cumulative mass reaches ``1 - infinite_cutoff_prob``, capped at
    ``discrete_cutoff`` points.
    """
    options = options or dist_options(dist)
    sup = dist.support
    if isinstance(sup, sets.FiniteSet):
        vals = sorted(float(e) for e in sup.elements if not isinstance(e, str))
        return np.array(vals)

    lo, hi = sets.bounds(sup)
    if isinstance(sup, sets.Interval):
        lo_int = math.floor(lo) + 1 if sup.closure in ("open", "left-open") or not _near_int(lo) else round(lo)
        hi_int = math.ceil(hi) - 1 if sup.closure in ("open", "right-open") or not _near_int(hi) else round(hi)
    else:
        lo_int = lo if lo == -math.inf else round(math.ceil(lo - 1e-9))
        hi_int = hi if hi == math.inf else round(math.floor(hi + 1e-9))

    c = options.infinite_cutoff_prob
    if lo_int == -math.inf:
        q = _analytic_quantile(dist)
        if q is None:
            raise NumericError("cannot enumerate a discrete support unbounded below "
                               "without a quantile function")
        lo_int = math.floor(float(np.asarray(q(np.array([c])))[0]))
    if hi_int == math.inf:
        q = _analytic_quantile(dist)
        if q is not None:
            hi_int = math.ceil(float(np.asarray(q(np.array([1.0 - c])))[0]))
        else:
            hi_int = _enumerate_by_mass(dist, lo_int, c, options)
    n = hi_int - lo_int + 1
    if n > options.discrete_cutoff:
        hi_int = lo_int + options.discrete_cutoff - 1
    return np.arange(lo_int, hi_int + 1, dtype=float)


def _near_int(x) -> bool:
    return math.isfinite(x) and abs(x - round(x)) <= 1e-9


def _enumerate_by_mass(dist, lo_int, cutoff, options) -> int:
    """Largest support point needed so the enumerated mass reaches 1 - cutoff."""
    pdf = _raw_kernel(dist, "pdf")
    if pdf is None:
        raise CapabilityError("enumerating an unbounded discrete support needs a pdf")
    acc = 0.0
    x = float(lo_int)
    chunk = 4096
    count = 0
    while count < options.discrete_cutoff:
        xs = np.arange(x, x + chunk)
        run = acc + np.cumsum(np.asarray(pdf(xs), float))
        hitting = np.nonzero(run >= 1.0 - cutoff)[0]
        if hitting.size:
            return int(xs[hitting[0]])
        acc = float(run[-1])
        x += chunk
        count += chunk
    return int(lo_int + options.discrete_cutoff - 1)


def effective_bounds(dist, options: NumericOptions | None = None,
                     allow_imputed_cdf: bool = True) -> tuple[float, float]:
    """Finite evaluation range covering all but the cutoff tail mass."""
    options = options or dist_options(dist)
    lo, hi = sets.bounds(dist.support)
    if math.isfinite(lo) and math.isfinite(hi):
        return lo, hi
    c = options.infinite_cutoff_prob
    q = _analytic_quantile(dist)
    if q is not None:
        qlo = float(np.asarray(q(np.array([c])))[0]) if not math.isfinite(lo) else lo
        qhi = float(np.asarray(q(np.array([1.0 - c])))[0]) if not math.isfinite(hi) else hi
        if math.isfinite(qlo) and math.isfinite(qhi):
            return qlo, qhi
        lo2 = qlo if math.isfinite(qlo) else lo
        hi2 = qhi if math.isfinite(qhi) else hi
        lo, hi = lo2, hi2
        if math.isfinite(lo) and math.isfinite(hi):
            return lo, hi
    cdf = _analytic_kernel(dist, "cdf")
    if cdf is None and allow_imputed_cdf:
        cdf = _imputed_kernel(dist, "cdf")
    if cdf is not None:
        return _expand_by_cdf(cdf, lo, hi, c)
    pdf = _raw_kernel(dist, "pdf")
    if pdf is not None:
        L, R, _ = _expand_by_strip_mass(pdf, lo, hi, c)
        return L, R
    raise CapabilityError("cannot bound an infinite support without a quantile, cdf, or pdf")


def _expand_by_cdf(cdf, lo, hi, c) -> tuple[float, float]:
    center = 0.0
    if math.isfinite(lo):
        center = lo
    elif math.isfinite(hi):
        center = hi
    L = lo if math.isfinite(lo) else center - 1.0
    R = hi if math.isfinite(hi) else center + 1.0
    step = max(R - L, 1.0)
    for _ in range(200):
        grew = False
        if not math.isfinite(lo) and float(np.asarray(cdf(np.array([L])))[0]) > c:
            L -= step
            grew = True
        if not math.isfinite(hi) and float(np.asarray(cdf(np.array([R])))[0]) < 1.0 - c:
            R += step
            grew = True
        if not grew:
            return L, R
        step *= 2.0
    return L, R


def _expand_by_strip_mass(pdf, lo, hi, c):
    """Grow finite bounds outward by doubling strips until the strip mass is
    negligible; returns ``(L, R, shells)`` where shells are the strip
    boundaries (natural mass-decaying breakpoints for later segmentation)."""
    center = 0.0
    if math.isfinite(lo):
        center = lo
    elif math.isfinite(hi):
        center = hi
    L = lo if math.isfinite(lo) else center - 1.0
    R = hi if math.isfinite(hi) else center + 1.0
    shells = {L, R}
    step = max(R - L, 1.0)
    for _ in range(120):
        grew = False
        if not math.isfinite(lo):
            strip = float(gauss_segments(pdf, L - step, L)[0])
            if strip > c / 4.0:
                L -= step
                shells.add(L)
                grew = True
        if not math.isfinite(hi):
            strip = float(gauss_segments(pdf, R, R + step)[0])
            if strip > c / 4.0:
                R += step
                shells.add(R)
                grew = True
        if not grew:
            break
        step *= 2.0
    return L, R, sorted(shells)


def quantile_breaks(dist, lo: float, hi: float,
                    options: NumericOptions | None = None):
    """Quantile-spaced interior breakpoints for mass-balanced segmentation.

    The extreme percentiles matter: they keep adaptive quadrature honest for
    heavy tails and integrable endpoint singularities.
    """
    q = _analytic_quantile(dist)
    if q is None:
        return None
    ps = np.array([1e-8, 1e-6, 1e-4, 1e-3, 1e-2, 0.05, 0.1, 0.25, 0.5,
                   0.75, 0.9, 0.95, 0.99, 1 - 1e-3, 1 - 1e-4, 1 - 1e-6, 1 - 1e-8])
    xs = np.asarray(q(ps), float)
    xs = xs[np.isfinite(xs)]
    return [float(x) for x in xs if lo < x < hi]


# ---------------------------------------------------------------------------
# kernel resolution helpers (duck-typed against core.Distribution)
# ---------------------------------------------------------------------------

def dist_options(dist) -> NumericOptions:
    return getattr(dist, "_numeric_options", None) or DEFAULT_OPTIONS


def _analytic_kernel(dist, name):
    return dist._analytic_kernel(name)


def _analytic_quantile(dist):
    return _analytic_kernel(dist, "quantile")


def _imputed_kernel(dist, name):
    if "FunctionImputation" not in dist.decorators:
        return None
    return dist._imputed_kernels().get(name)


def _raw_kernel(dist, name):
    """Analytic kernel if present, else the imputed one, else ``None``."""
    return _analytic_kernel(dist, name) or _imputed_kernel(dist, name)


def require_kernel(dist, name):
    k = _raw_kernel(dist, name)
    if k is None:
        hint = "" if "FunctionImputation" in dist.decorators else \
            "; apply the FunctionImputation decorator to impute it"
        raise CapabilityError(f"distribution {dist.short_name!r} has no {name} kernel{hint}")
    return k


# ---------------------------------------------------------------------------
# FunctionImputation
# ---------------------------------------------------------------------------

class _PrefixCdf:
    """Continuous cdf imputed from a pdf.

    Node placement is mass-balanced: seed breakpoints (quantiles or the
    strip-expansion shells) split the range, each span gets nodes in
    proportion to its estimated mass, and spans whose endpoint pdf is not
    finite (integrable singularities) receive geometric refinement toward
    that endpoint.  Prefix integrals are cached at the nodes; a query adds a
    short interior Gauss-Legendre integral from the nearest node, so accuracy
    is set by the quadrature, not grid interpolation (which would be too
    coarse in the tails for quantile imputation).
    """

    TARGET = 1024

    def __init__(self, pdf, lo: float, hi: float, seeds=None):
        self.pdf = pdf
        width = hi - lo
        edges = {lo, hi}
        for s in (seeds or ()):
            if lo < s < hi:
                edges.add(float(s))
        probe = np.asarray(pdf(np.array([lo, hi])), float)
        if not np.isfinite(probe[0]) or abs(probe[0]) > 1e12:
            edges.update(lo + width * 0.25 ** k for k in range(1, 21))
        if not np.isfinite(probe[1]) or abs(probe[1]) > 1e12:
            edges.update(hi - width * 0.25 ** k for k in range(1, 21))
        edges = np.array(sorted(edges))

        masses = np.clip(gauss_segments(pdf, edges[:-1], edges[1:]), 0.0, None)
        total = float(masses.sum()) or 1.0
        alloc = np.maximum(2, np.round(self.TARGET * masses / total).astype(int))
        alloc = np.minimum(alloc, 600)
        pieces = [np.linspace(edges[i], edges[i + 1], alloc[i] + 1)
                  for i in range(len(edges) - 1)]
        self.nodes = np.unique(np.concatenate(pieces))
        seg = np.clip(gauss_segments(pdf, self.nodes[:-1], self.nodes[1:]), 0.0, None)
        self.prefix = np.concatenate(([0.0], np.cumsum(seg)))

    def __call__(self, x) -> np.ndarray:
        x = np.atleast_1d(np.asarray(x, float))
        lo, hi = self.nodes[0], self.nodes[-1]
        xc = np.clip(x, lo, hi)
        idx = np.clip(np.searchsorted(self.nodes, xc, side="right") - 1,
                      0, len(self.nodes) - 2)
        local = gauss_segments(self.pdf, self.nodes[idx], xc)
        out = self.prefix[idx] + local
        out = np.where(x <= lo, 0.0, out)
        out = np.where(x >= hi, self.prefix[-1], out)
        return np.clip(out, 0.0, 1.0)


def build_imputed_kernels(dist, options: NumericOptions) -> dict:
    """Numeric stand-ins for whichever dpqr kernels are missing.

    Requires at least one of pdf/cdf.  Discrete kernels run over the
    enumerated support; continuous ones use cached quadrature, bisection of a
    monotone cdf, and central finite differences.
    """
    have_pdf = _analytic_kernel(dist, "pdf") is not None
    have_cdf = _analytic_kernel(dist, "cdf") is not None
    if not (have_pdf or have_cdf):
        raise CapabilityError("function imputation needs at least one of pdf or cdf")

    discrete = dist.traits.value_support == "discrete"
    out: dict = {}

    if discrete:
        xs = support_points(dist, options)
        if have_pdf:
            pmf = np.asarray(_analytic_kernel(dist, "pdf")(xs), float)
        else:
            cdf = _analytic_kernel(dist, "cdf")
            cums_at = np.asarray(cdf(xs), float)
            pmf = np.diff(np.concatenate(([0.0], cums_at)))
        cums = np.cumsum(pmf)

        if not have_cdf:
            def imputed_cdf(x, xs=xs, cums=cums):
                x = np.atleast_1d(np.asarray(x, float))
                shift = 1e-9 * np.maximum(1.0, np.abs(x))
                idx = np.searchsorted(xs, x + shift, side="right")
                return np.where(idx == 0, 0.0, cums[np.clip(idx - 1, 0, len(xs) - 1)])
            out["cdf"] = imputed_cdf

        if not have_pdf:
            def imputed_pdf(x, xs=xs, pmf=pmf):
                x = np.atleast_1d(np.asarray(x, float))
                idx = np.clip(np.searchsorted(xs, x), 0, len(xs) - 1)
                near = np.isclose(xs[idx], x, rtol=0.0, atol=1e-9)
                prev = np.clip(idx - 1, 0, len(xs) - 1)
                near_prev = ~near & np.isclose(xs[prev], x, rtol=0.0, atol=1e-9)
                vals = np.where(near, pmf[idx], np.where(near_prev, pmf[prev], 0.0))
                return vals
            out["pdf"] = imputed_pdf

        if _analytic_kernel(dist, "quantile") is None:
            def imputed_quantile(p, xs=xs, cums=cums):
                p = np.atleast_1d(np.asarray(p, float))
                idx = np.clip(np.searchsorted(cums, p - 1e-12, side="left"), 0, len(xs) - 1)
                return xs[idx]
            out["quantile"] = imputed_quantile
    else:
        cdf_eff = _analytic_kernel(dist, "cdf")
        if cdf_eff is None:
            pdf_k = _analytic_kernel(dist, "pdf")
            s_lo, s_hi = sets.bounds(dist.support)
            seeds = None
            q = _analytic_quantile(dist)
            if math.isfinite(s_lo) and math.isfinite(s_hi):
                lo, hi = s_lo, s_hi
            elif q is not None:
                lo, hi = effective_bounds(dist, options, allow_imputed_cdf=False)
                seeds = quantile_breaks(dist, lo, hi, options)
            else:
                lo, hi, seeds = _expand_by_strip_mass(
                    pdf_k, s_lo, s_hi, options.infinite_cutoff_prob)
            cdf_eff = _PrefixCdf(pdf_k, lo, hi, seeds)
            out["cdf"] = cdf_eff

        if not have_pdf:
            def imputed_pdf(x, cdf=cdf_eff):
                x = np.atleast_1d(np.asarray(x, float))
                h = np.maximum(1e-6, np.abs(x) * 1e-8)
                return np.maximum(
                    (np.asarray(cdf(x + h), float) - np.asarray(cdf(x - h), float)) / (2.0 * h),
                    0.0,
                )
            out["pdf"] = imputed_pdf

        if _analytic_kernel(dist, "quantile") is None:
            if "cdf" in out:
                lo_q, hi_q = float(cdf_eff.nodes[0]), float(cdf_eff.nodes[-1])
            else:
                s_lo, s_hi = sets.bounds(dist.support)
                if math.isfinite(s_lo) and math.isfinite(s_hi):
                    lo_q, hi_q = s_lo, s_hi
                else:
                    lo_q, hi_q = _expand_by_cdf(cdf_eff, s_lo, s_hi,
                                                options.infinite_cutoff_prob)

            def imputed_quantile(p, cdf=cdf_eff, lo=lo_q, hi=hi_q, options=options):
                p = np.atleast_1d(np.asarray(p, float))
                return invert_monotone(cdf, p, lo, hi, options)
            out["quantile"] = imputed_quantile

    if _analytic_kernel(dist, "rand") is None:
        quantile = _analytic_kernel(dist, "quantile") or out.get("quantile")
        if quantile is not None:
            def imputed_rand(n, rng, quantile=quantile):
                return np.asarray(quantile(rng.uniform(size=n)), float)
            out["rand"] = imputed_rand

    return out


# ---------------------------------------------------------------------------
# decoration
# ---------------------------------------------------------------------------

def decorate(dist, kinds, options: NumericOptions | None = None):
    """Attach the listed capability layers to ``dist`` (mutating it).

    Re-applying an existing kind warns and leaves the distribution unchanged;
    analytic methods are never overridden.  Returns the distribution.
    """
    if isinstance(kinds, str):
        kinds = [kinds]
    kinds = list(kinds)
    for k in kinds:
        if k not in DECORATOR_KINDS:
            raise ValueError(f"unknown decorator {k!r}; expected one of {DECORATOR_KINDS}")
    if options is not None:
        dist._numeric_options = options
    for k in kinds:
        if k in dist.decorators:
            warnings.warn(f"decorator {k!r} is already applied; ignoring", DecoratorWarning,
                          stacklevel=2)
            continue
        dist.decorators.append(k)
        if k == "FunctionImputation":
            dist._imputed_kernels(rebuild=True)
    return dist


def require_decorator(dist, kind: str):
    if kind not in dist.decorators:
        raise CapabilityError(
            f"{kind} decorator is required for this method; "
            f"decorate the distribution first"
        )


# ---------------------------------------------------------------------------
# CoreStatistics
# ---------------------------------------------------------------------------

def expectation(dist, f, options: NumericOptions | None = None) -> float:
    """Generalized expectation ``E[f(X)]`` for a univariate distribution.

    ``f`` must accept an ndarray.  Discrete distributions sum over the
    enumerated support; continuous ones integrate ``f * pdf`` over the
    truncated support.  Composites may reroute through their components via
    the ``_expectation_hook`` protocol.
    """
    options = options or dist_options(dist)
    hook = getattr(dist, "_expectation_hook", None)
    if hook is not None:
        return hook(f, options)
    if dist.traits.variate_form != "univariate":
        raise UnsupportedError("generalized expectation is defined for univariate distributions")
    vs = dist.traits.value_support
    if vs == "discrete":
        xs = support_points(dist, options)
        pmf = np.asarray(require_kernel(dist, "pdf")(xs), float)
        return float(np.dot(np.asarray(f(xs), float), pmf))
    if vs == "continuous":
        pdf = require_kernel(dist, "pdf")
        lo, hi = _nudged_bounds(dist, options)
        breaks = quantile_breaks(dist, lo, hi, options)
        value, _ = integrate(lambda x: np.asarray(f(x), float) * np.asarray(pdf(x), float),
                             lo, hi, options, breakpoints=breaks)
        return value
    raise UnsupportedError("generalized expectation is not defined for mixed distributions")


def _nudged_bounds(dist, options) -> tuple[float, float]:
    # pull integration bounds a hair inside the support so integrable
    # endpoint singularities (e.g. an arcsine pdf) are never evaluated
    lo, hi = effective_bounds(dist, options)
    eps = 1e-14 * max(hi - lo, 1.0)
    return lo + eps, hi - eps


def kth_moment(dist, k: int, kind: str = "central",
               options: NumericOptions | None = None) -> float:
    """Raw, central, or standardised k-th moment via generalized expectation."""
    kind = {"standardized": "standardised"}.get(kind, kind)
    if kind not in ("raw", "central", "standardised"):
        raise ValueError(f"unknown moment kind {kind!r}")
    if k < 1 or int(k) != k:
        raise ValueError("moment order must be a positive integer")
    options = options or dist_options(dist)
    if kind == "raw":
        return expectation(dist, lambda x: x ** k, options)
    mu = dist.mean()
    central = expectation(dist, lambda x: (x - mu) ** k, options)
    if kind == "central":
        return central
    return central / dist.stdev() ** k


def numeric_mean(dist, options=None):
    return expectation(dist, lambda x: x, options)


def numeric_variance(dist, options=None):
    return kth_moment(dist, 2, "central", options)


def numeric_skewness(dist, options=None):
    return kth_moment(dist, 3, "standardised", options)


def numeric_kurtosis(dist, excess: bool = True, options=None):
    k4 = kth_moment(dist, 4, "standardised", options)
    return k4 - 3.0 if excess else k4


def numeric_entropy(dist, base: float = 2.0, options=None):
    options = options or dist_options(dist)
    log_base = math.log(base)
    vs = dist.traits.value_support
    if vs == "discrete":
        xs = support_points(dist, options)
        pmf = np.asarray(require_kernel(dist, "pdf")(xs), float)
        return float(-np.sum(xlogy(pmf, pmf)) / log_base)
    if vs == "continuous":
        pdf = require_kernel(dist, "pdf")
        lo, hi = _nudged_bounds(dist, options)
        breaks = quantile_breaks(dist, lo, hi, options)

        def integrand(x):
            p = np.asarray(pdf(x), float)
            return -xlogy(p, p) / log_base

        value, _ = integrate(integrand, lo, hi, options, breakpoints=breaks)
        return value
    raise UnsupportedError("entropy is not defined for mixed distributions here")


def numeric_mgf(dist, t: float, options=None):
    return expectation(dist, lambda x: np.exp(t * x), options)


def numeric_cf(dist, t: float, options=None) -> complex:
    re = expectation(dist, lambda x: np.cos(t * x), options)
    im = expectation(dist, lambda x: np.sin(t * x), options)
    return complex(re, im)


def numeric_pgf(dist, z: float, options=None):
    if dist.traits.value_support != "discrete":
        raise UnsupportedError("the probability generating function needs a discrete distribution")
    return expectation(dist, lambda x: np.power(float(z), x), options)


# ---------------------------------------------------------------------------
# ExoticStatistics
# ---------------------------------------------------------------------------

def survival_values(dist, x, options=None) -> np.ndarray:
    """``S(x) = 1 - F(x)``, preferring an available cdf, else integrating the
    pdf over the right tail."""
    options = options or dist_options(dist)
    x = np.atleast_1d(np.asarray(x, float))
    cdf = _raw_kernel(dist, "cdf")
    if cdf is not None:
        return np.clip(1.0 - np.asarray(cdf(x), float), 0.0, 1.0)
    pdf = require_kernel(dist, "pdf")
    if dist.traits.value_support == "discrete":
        xs = support_points(dist, options)
        pmf = np.asarray(pdf(xs), float)
        out = np.empty(x.shape)
        for i, xi in enumerate(x):
            out[i] = float(np.sum(pmf[xs > xi + 1e-9]))
        return np.clip(out, 0.0, 1.0)
    lo, hi = effective_bounds(dist, options)
    out = np.empty(x.shape)
    for i, xi in enumerate(x):
        if xi >= hi:
            out[i] = 0.0
        else:
            v, _ = integrate(pdf, max(xi, lo), hi, options)
            out[i] = v
    return np.clip(out, 0.0, 1.0)


def hazard_values(dist, x, options=None) -> np.ndarray:
    """``h(x) = f(x) / S(x)``; returns +inf where the survival is zero."""
    options = options or dist_options(dist)
    x = np.atleast_1d(np.asarray(x, float))
    f = dist._eval_pdf_raw(x)
    s = survival_values(dist, x, options)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(s > 0.0, f / s, np.inf)
    return out


def cum_hazard_values(dist, x, options=None) -> np.ndarray:
    s = survival_values(dist, x, options)
    with np.errstate(divide="ignore"):
        return -np.log(s)


def _function_of(dist, name: str, options):
    if name == "pdf":
        return lambda x: dist._eval_pdf_raw(x)
    if name == "cdf":
        return lambda x: dist._eval_cdf_raw(x)
    if name == "survival":
        return lambda x: survival_values(dist, x, options)
    raise ValueError(f"unknown function {name!r}; expected pdf, cdf, or survival")


def _step_integral(dist, g, a: float, b: float, options) -> float:
    """Exact integral of a right-continuous step function of the distribution
    (cdf/survival of a discrete distribution) over ``[a, b]``."""
    xs = support_points(dist, options)
    inner = xs[(xs > a) & (xs < b)]
    edges = np.concatenate(([a], inner, [b]))
    starts = edges[:-1]
    widths = np.diff(edges)
    vals = np.asarray(g(starts), float)
    return float(np.dot(vals, widths))


def pnorm(dist, fn: str = "pdf", p: float = 2.0, lower=None, upper=None,
          options=None) -> float:
    """p-norm ``(∫ |fn(x)|^p dx)^(1/p)`` of a distribution function."""
    if p < 1:
        raise ValueError("the norm order p must be >= 1")
    options = options or dist_options(dist)
    g = _function_of(dist, fn, options)
    lo, hi = _integration_range(dist, lower, upper, options)
    if dist.traits.value_support == "discrete":
        val = _step_integral(dist, lambda x: np.abs(np.asarray(g(x), float)) ** p, lo, hi, options)
    else:
        val, _ = integrate(lambda x: np.abs(np.asarray(g(x), float)) ** p, lo, hi, options)
    return val ** (1.0 / p)


def antiderivative(dist, fn: str = "cdf", lower=None, upper=None, options=None) -> float:
    """``∫_a^b fn(x) dx`` for fn in {cdf, survival}."""
    if fn not in ("cdf", "survival"):
        raise ValueError("antiderivative is defined for the cdf or survival function")
    options = options or dist_options(dist)
    g = _function_of(dist, fn, options)
    lo, hi = _integration_range(dist, lower, upper, options)
    if dist.traits.value_support == "discrete":
        return _step_integral(dist, g, lo, hi, options)
    val, _ = integrate(lambda x: np.asarray(g(x), float), lo, hi, options)
    return val


def _integration_range(dist, lower, upper, options) -> tuple[float, float]:
    lo, hi = effective_bounds(dist, options)
    if lower is not None and math.isfinite(lower):
        lo = float(lower)
    if upper is not None and math.isfinite(upper):
        hi = float(upper)
    if lo > hi:
        raise ValueError(f"empty integration range [{lo}, {hi}]")
    return lo, hi
