"""Composable probability distributions.

Distributions are first-class objects with traits, properties,
multi-parameterization parameter sets, and evaluable defining functions.
Compositors (truncate, huberize, mixture, product, vector) and numeric
capability decorators extend any distribution through one unified interface.
"""

from .core import (
    Distribution,
    DistributionProperties,
    DistributionTraits,
    EvaluationMatrix,
)
from .catalog import (
    Arcsine,
    Binomial,
    CatalogEntry,
    Degenerate,
    DiscreteUniform,
    Empirical,
    EmpiricalMV,
    Epanechnikov,
    Exponential,
    Gamma,
    Kernel,
    Normal,
    Poisson,
    StudentT,
    Triangular,
    Uniform,
    WeightedDiscrete,
    kernel,
    list_catalog,
)
from .compose import (
    COMPOSITORS,
    CompositeDistribution,
    HuberizedDistribution,
    MixtureDistribution,
    ProductDistribution,
    TruncatedDistribution,
    VectorDistribution,
    huberize,
    mixture,
    product,
    truncate,
    vector,
)
from .numeric import DECORATOR_KINDS, DEFAULT_OPTIONS, NumericOptions, decorate
from .params import (
    ParameterDef,
    ParameterizationGroup,
    ParameterSet,
    ParameterSetCollection,
    collect,
)
from .expr import build_distribution, parse_expr, render
from . import errors, sets

__version__ = "0.1.0"

__all__ = [
    "Arcsine", "Binomial", "CatalogEntry", "CompositeDistribution",
    "COMPOSITORS", "DECORATOR_KINDS", "DEFAULT_OPTIONS", "Degenerate",
    "DiscreteUniform", "Distribution", "DistributionProperties",
    "DistributionTraits", "Empirical", "EmpiricalMV", "Epanechnikov",
    "EvaluationMatrix", "Exponential", "Gamma", "HuberizedDistribution",
    "Kernel", "MixtureDistribution", "Normal", "NumericOptions",
    "ParameterDef", "ParameterSet", "ParameterSetCollection",
    "ParameterizationGroup", "Poisson", "ProductDistribution", "StudentT",
    "Triangular", "TruncatedDistribution", "Uniform", "VectorDistribution",
    "WeightedDiscrete", "build_distribution", "collect", "decorate",
    "errors", "huberize", "kernel", "list_catalog", "mixture", "parse_expr",
    "product", "render", "sets", "truncate", "vector",
]
