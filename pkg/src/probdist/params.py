"""Parameter storage with supports, multi-parameterization groups, and
prefixed aggregation for composite distributions.

A :class:`ParameterSet` owns an ordered collection of parameter definitions.
Parameters may belong to a :class:`ParameterizationGroup` (e.g. the normal
variance/standard deviation/precision trio): setting any member recomputes
its siblings through the group's canonical member, so the set stays mutually
consistent at all times.

Mutation follows a single-writer contract: concurrent reads are safe only in
the absence of a writer; no internal locking is performed.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from .errors import (
    ParameterConflictError,
    ParameterError,
    ParameterWarning,
    SupportViolationError,
    UnknownParameterError,
)
from .sets import MathSet


@dataclass
class ParameterDef:
    """One named parameter: current value, support set, and metadata.

    ``normalize``, when given, is applied to incoming values before support
    validation (used e.g. to renormalize mixture weights).
    """

    id: str
    value: object
    support: MathSet
    settable: bool = True
    description: str = ""
    normalize: Callable | None = None

    def copy(self) -> "ParameterDef":
        value = list(self.value) if isinstance(self.value, (list, tuple, np.ndarray)) else self.value
        return ParameterDef(self.id, value, self.support, self.settable,
                            self.description, self.normalize)


@dataclass(frozen=True)
class ParameterizationGroup:
    """Interchangeable parameters linked through a canonical member.

    ``to_canonical[m]`` maps member ``m``'s value to the canonical value;
    ``from_canonical[m]`` maps back.  The canonical member itself needs no
    entries (identity is implied).
    """

    members: tuple
    canonical: str
    to_canonical: Mapping[str, Callable] = field(default_factory=dict)
    from_canonical: Mapping[str, Callable] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        if self.canonical not in self.members:
            raise ParameterError(f"canonical member {self.canonical!r} not in group {self.members}")
        for m in self.members:
            if m == self.canonical:
                continue
            if m not in self.to_canonical or m not in self.from_canonical:
                raise ParameterError(f"group member {m!r} is missing a conversion link")

    def canonical_value(self, member: str, value):
        return value if member == self.canonical else self.to_canonical[member](value)

    def member_value(self, member: str, canonical_value):
        return canonical_value if member == self.canonical else self.from_canonical[member](canonical_value)


def _value_in_support(value, support: MathSet) -> bool:
    if isinstance(value, (list, tuple, np.ndarray)):
        return all(bool(b) for b in support.contains(list(value)))
    return value in support


class ParameterSet:
    """Ordered parameter definitions plus parameterization groups.

    Construction arguments are validated against supports; giving two
    parameters from the same group at once is a conflict error.  ``check``,
    when supplied, receives the prospective id->value mapping after every
    mutation and may raise to veto it (used for cross-parameter constraints
    such as ``lower < upper``).
    """

    def __init__(self, defs, groups=(), values=None, check: Callable | None = None):
        self._defs: dict[str, ParameterDef] = {}
        for d in defs:
            if d.id in self._defs:
                raise ParameterError(f"duplicate parameter id {d.id!r}")
            self._defs[d.id] = d.copy()
        self._groups = list(groups)
        self._group_of: dict[str, ParameterizationGroup] = {}
        for g in self._groups:
            for m in g.members:
                if m not in self._defs:
                    raise ParameterError(f"group member {m!r} has no definition")
                if m in self._group_of:
                    raise ParameterError(f"parameter {m!r} belongs to two groups")
                self._group_of[m] = g
        self._check = check

        values = dict(values or {})
        for name in values:
            if name not in self._defs:
                raise UnknownParameterError(f"unknown parameter {name!r}")
        # construction-time conflict detection, order-independent
        for g in self._groups:
            given = [m for m in g.members if m in values]
            if len(given) > 1:
                members = "{" + ", ".join(g.members) + "}"
                raise ParameterConflictError(
                    f"conflicting parameterisation: at most one of {members} can be given"
                )
        if values:
            staged = self._stage(values, require_settable=False)
            self._commit(staged)
        self._run_check(self.values())

    # -- staging / committing -------------------------------------------------

    def _stage(self, values: dict, require_settable: bool) -> dict:
        """Resolve group propagation and validate; returns the full id->value
        delta without mutating anything."""
        staged: dict[str, object] = {}
        group_writes: dict[int, str] = {}
        for name, value in values.items():
            d = self._defs.get(name)
            if d is None:
                raise UnknownParameterError(f"unknown parameter {name!r}")
            if require_settable and not d.settable:
                raise ParameterError(f"parameter {name!r} is not settable")
            if d.normalize is not None:
                value = d.normalize(value)
            g = self._group_of.get(name)
            if g is not None:
                key = id(g)
                if key in group_writes:
                    members = "{" + ", ".join(g.members) + "}"
                    warnings.warn(
                        f"multiple values for group {members} in one call; "
                        f"the last one ({name!r}) wins",
                        ParameterWarning,
                        stacklevel=3,
                    )
                    staged.pop(group_writes[key], None)
                    for m in g.members:
                        staged.pop(m, None)
                group_writes[key] = name
                canonical = g.canonical_value(name, value)
                for m in g.members:
                    staged[m] = g.member_value(m, canonical)
                staged[name] = value  # keep the given member exact
            else:
                staged[name] = value
        for name, value in staged.items():
            d = self._defs[name]
            if not _value_in_support(value, d.support):
                raise SupportViolationError(
                    f"parameter {name!r}: value {value!r} is not in its support {d.support}"
                )
        return staged

    def _commit(self, staged: dict):
        for name, value in staged.items():
            self._defs[name].value = value

    def _run_check(self, prospective: dict):
        if self._check is not None:
            self._check(prospective)

    # -- public surface --------------------------------------------------------

    def ids(self) -> list[str]:
        return list(self._defs)

    def __contains__(self, name: str) -> bool:
        return name in self._defs

    def __len__(self) -> int:
        return len(self._defs)

    def definition(self, name: str) -> ParameterDef:
        if name not in self._defs:
            raise UnknownParameterError(f"unknown parameter {name!r}")
        return self._defs[name]

    def get_value(self, name: str):
        d = self.definition(name)
        if isinstance(d.value, (list, tuple, np.ndarray)):
            return list(d.value)
        return d.value

    def values(self) -> dict:
        return {name: self.get_value(name) for name in self._defs}

    def set_values(self, values=None, **kwargs):
        """Set one or more parameters; group siblings are recomputed.

        Validation happens before any mutation, so a support violation leaves
        the set untouched.
        """
        merged = dict(values or {})
        merged.update(kwargs)
        if not merged:
            return
        staged = self._stage(merged, require_settable=True)
        prospective = self.values()
        prospective.update(staged)
        self._run_check(prospective)
        self._commit(staged)

    def as_table(self) -> list[dict]:
        """Rows of (id, value, support display, description) in definition order."""
        return [
            {
                "id": name,
                "value": self.get_value(name),
                "support": d.support.display(),
                "description": d.description,
            }
            for name, d in self._defs.items()
        ]

    def fingerprint(self) -> tuple:
        """Hashable snapshot of current values (used to key numeric caches)."""
        out = []
        for name in self._defs:
            v = self.get_value(name)
            out.append((name, tuple(v) if isinstance(v, list) else v))
        return tuple(out)

    def __repr__(self):
        inner = ", ".join(f"{k} = {v!r}" for k, v in self.values().items())
        return f"ParameterSet({inner})"


class ParameterSetCollection:
    """Flat, prefixed view over several parameter sets (or nested collections).

    Entries are ``(prefix, set_or_collection)`` pairs; a ``None`` prefix
    splices the inner ids through unchanged.  Flat ids are
    ``prefix + "_" + inner_id`` and must be globally unique.  Get/set
    delegate to the owning inner set, so group propagation rules stay intact.
    """

    def __init__(self, entries):
        self._entries = [(prefix, inner) for prefix, inner in entries]
        prefixes = [p for p, _ in self._entries if p is not None]
        if len(set(prefixes)) != len(prefixes):
            raise ParameterError("duplicate prefix in parameter collection")
        self._route: dict[str, tuple[ParameterSet, str]] = {}
        for prefix, inner in self._entries:
            for flat_id, owner, inner_id in _flat_entries(inner):
                full = flat_id if prefix is None else f"{prefix}_{flat_id}"
                if full in self._route:
                    raise ParameterError(f"duplicate parameter id {full!r} in collection")
                self._route[full] = (owner, inner_id)

    @property
    def entries(self):
        return list(self._entries)

    def ids(self) -> list[str]:
        return list(self._route)

    def __contains__(self, name: str) -> bool:
        return name in self._route

    def __len__(self) -> int:
        return len(self._route)

    def _resolve(self, name: str) -> tuple[ParameterSet, str]:
        if name not in self._route:
            raise UnknownParameterError(f"unknown parameter {name!r}")
        return self._route[name]

    def get_value(self, name: str):
        owner, inner_id = self._resolve(name)
        return owner.get_value(inner_id)

    def values(self) -> dict:
        return {name: self.get_value(name) for name in self._route}

    def set_values(self, values=None, **kwargs):
        merged = dict(values or {})
        merged.update(kwargs)
        if not merged:
            return
        per_set: dict[int, tuple[ParameterSet, dict]] = {}
        for name, value in merged.items():
            owner, inner_id = self._resolve(name)
            per_set.setdefault(id(owner), (owner, {}))[1][inner_id] = value
        staged = []
        for owner, sub in per_set.values():
            delta = owner._stage(sub, require_settable=True)
            prospective = owner.values()
            prospective.update(delta)
            owner._run_check(prospective)
            staged.append((owner, delta))
        for owner, delta in staged:
            owner._commit(delta)

    def as_table(self) -> list[dict]:
        rows = []
        for prefix, inner in self._entries:
            for row in inner.as_table():
                row = dict(row)
                if prefix is not None:
                    row["id"] = f"{prefix}_{row['id']}"
                rows.append(row)
        return rows

    def fingerprint(self) -> tuple:
        return tuple((p, inner.fingerprint()) for p, inner in self._entries)

    def __repr__(self):
        return f"ParameterSetCollection({', '.join(self.ids())})"


def _flat_entries(inner):
    """Yield (flat_id, owning ParameterSet, inner_id) triples recursively."""
    if isinstance(inner, ParameterSet):
        for name in inner.ids():
            yield name, inner, name
    elif isinstance(inner, ParameterSetCollection):
        for name, (owner, inner_id) in inner._route.items():
            yield name, owner, inner_id
    else:
        raise TypeError(f"collection entries must hold parameter sets, got {type(inner)!r}")


def collect(entries) -> ParameterSetCollection:
    """Build a prefixed collection from ``(prefix, ParameterSet)`` pairs."""
    return ParameterSetCollection(entries)


def normalize_weights(value, n: int | None = None):
    """Validate/normalize a mixture-weights value.

    ``"uniform"`` passes through; numeric vectors must be non-negative and
    are renormalized to sum to one (with a warning if the sum is off by more
    than 1e-9).
    """
    if isinstance(value, str):
        if value != "uniform":
            raise SupportViolationError(f"unknown symbolic weights {value!r}")
        return value
    w = [float(x) for x in (value if isinstance(value, (list, tuple, np.ndarray)) else [value])]
    if n is not None and len(w) != n:
        raise ParameterError(f"expected {n} weights, got {len(w)}")
    if any(x < 0 for x in w):
        raise SupportViolationError("weights must be non-negative")
    total = math.fsum(w)
    if total <= 0:
        raise SupportViolationError("weights must not all be zero")
    if abs(total - 1.0) > 1e-9:
        warnings.warn(
            f"weights sum to {total:.12g}; renormalizing to 1", ParameterWarning, stacklevel=2
        )
    return [x / total for x in w]
