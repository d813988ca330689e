"""Multi-indices, lower sets and their borders.

A multi-index is a tuple of nonnegative integers (an exponent vector).
A lower set is a finite, downward-closed collection of multi-indices kept
in graded lexicographic order: sort by total degree first, ties broken so
that a larger first coordinate comes earlier.  This fixed order gives every
matrix built on top of an index set a deterministic row/column layout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import LowerSetError, SizeLimitError

MultiIndex = tuple[int, ...]

DEFAULT_SIZE_CAP = 10_000


def grlex_key(alpha: MultiIndex):
    """Sort key for graded lex order with the first coordinate dominant."""
    return (sum(alpha), tuple(-a for a in alpha))


def total_degree(alpha: MultiIndex) -> int:
    return sum(alpha)


def add_unit(alpha: MultiIndex, i: int) -> MultiIndex:
    """alpha + e_i (0-based coordinate)."""
    return alpha[:i] + (alpha[i] + 1,) + alpha[i + 1:]


def sub_unit(alpha: MultiIndex, i: int) -> MultiIndex:
    """alpha - e_i (0-based coordinate); caller ensures alpha[i] > 0."""
    return alpha[:i] + (alpha[i] - 1,) + alpha[i + 1:]


@dataclass
class LowerSet:
    """A downward-closed set of multi-indices in canonical (graded lex) order."""

    dimension: int
    members: list[MultiIndex]
    position: dict[MultiIndex, int] = field(repr=False)

    def __len__(self):
        return len(self.members)

    def __contains__(self, alpha):
        return tuple(alpha) in self.position

    def __iter__(self):
        return iter(self.members)

    def __eq__(self, other):
        if not isinstance(other, LowerSet):
            return NotImplemented
        return self.dimension == other.dimension and self.members == other.members

    def max_degree(self) -> int:
        return max(total_degree(a) for a in self.members)

    def is_total_degree(self) -> bool:
        """True when the set equals {alpha : |alpha| <= m} for its max degree m."""
        m = self.max_degree()
        return len(self) == math.comb(self.dimension + m, self.dimension)

    def to_json(self) -> dict:
        if self.is_total_degree():
            return {"type": "total_degree", "n": self.dimension, "m": self.max_degree()}
        return {
            "type": "explicit",
            "n": self.dimension,
            "indices": [list(a) for a in self.members],
        }


@dataclass
class BorderSet:
    """Indices one step outside a lower set, with one recorded generator each.

    generators maps each border index alpha to a pair (beta, i) with
    alpha = beta + e_i and beta in the parent lower set.
    """

    members: list[MultiIndex]
    generators: dict[MultiIndex, tuple[MultiIndex, int]]

    def __len__(self):
        return len(self.members)

    def __contains__(self, alpha):
        return tuple(alpha) in self.generators

    def __iter__(self):
        return iter(self.members)


def _degree_slices(n, total):
    """Yield all multi-indices of length n with entries summing to total."""
    if n == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _degree_slices(n - 1, total - first):
            yield (first,) + rest


def total_degree_set(n: int, m: int, size_cap: int = DEFAULT_SIZE_CAP) -> LowerSet:
    """All multi-indices alpha in Z_+^n with |alpha| <= m, in canonical order.

    Cardinality is binomial(n+m, n); exceeding size_cap raises SizeLimitError
    before any enumeration happens.
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if m < 0:
        raise ValueError("degree must be >= 0")
    count = math.comb(n + m, n)
    if count > size_cap:
        raise SizeLimitError(
            f"total-degree set (n={n}, m={m}) has {count} elements, cap is {size_cap}"
        )
    members = [a for d in range(m + 1) for a in _degree_slices(n, d)]
    members.sort(key=grlex_key)
    return LowerSet(n, members, {a: k for k, a in enumerate(members)})


def validate_lower_set(candidates, n: int, size_cap: int = DEFAULT_SIZE_CAP) -> LowerSet:
    """Check downward closure and build a LowerSet in canonical order.

    Raises LowerSetError on a duplicate or on a missing predecessor
    alpha - e_i, naming the offending indices.
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    seen = set()
    members = []
    for cand in candidates:
        alpha = tuple(int(a) for a in cand)
        if len(alpha) != n:
            raise LowerSetError(f"index {alpha} has length {len(alpha)}, expected {n}")
        if any(a < 0 for a in alpha):
            raise LowerSetError(f"index {alpha} has a negative entry")
        if alpha in seen:
            raise LowerSetError(f"duplicate index {alpha}")
        seen.add(alpha)
        members.append(alpha)
    if len(members) > size_cap:
        raise SizeLimitError(f"{len(members)} elements exceed cap {size_cap}")
    for alpha in members:
        for i in reversed(range(n)):
            if alpha[i] > 0 and sub_unit(alpha, i) not in seen:
                raise LowerSetError(
                    f"not downward closed: {alpha} present but {sub_unit(alpha, i)} missing"
                )
    members.sort(key=grlex_key)
    return LowerSet(n, members, {a: k for k, a in enumerate(members)})


def border(I: LowerSet, size_cap: int = DEFAULT_SIZE_CAP) -> BorderSet:
    """The border {beta + e_i : beta in I, beta + e_i not in I}.

    For a total-degree set of degree m this is exactly {alpha : |alpha| = m+1}.
    One generating pair (beta, i) is recorded per border element: the first
    one encountered when scanning I in canonical order, coordinates ascending.
    """
    if len(I) == 0:
        raise ValueError("lower set is empty")
    generators: dict[MultiIndex, tuple[MultiIndex, int]] = {}
    for beta in I.members:
        for i in range(I.dimension):
            alpha = add_unit(beta, i)
            if alpha not in I and alpha not in generators:
                generators[alpha] = (beta, i)
    if len(generators) > size_cap:
        raise SizeLimitError(f"border has {len(generators)} elements, cap is {size_cap}")
    members = sorted(generators, key=grlex_key)
    return BorderSet(members, generators)


def random_lower_set(n: int, steps: int, rng) -> LowerSet:
    """Grow a random lower set from {0} by repeatedly absorbing a border element.

    Only border elements with every predecessor already present are
    eligible, so closure holds by construction; used for randomized
    property tests.
    """
    current = total_degree_set(n, 0)
    for _ in range(steps):
        b = border(current)
        eligible = [
            alpha
            for alpha in b.members
            if all(alpha[i] == 0 or sub_unit(alpha, i) in current for i in range(n))
        ]
        pick = eligible[rng.integers(len(eligible))]
        members = current.members + [pick]
        members.sort(key=grlex_key)
        current = LowerSet(n, members, {a: k for k, a in enumerate(members)})
    return current


def index_set_from_json(obj, size_cap: int = DEFAULT_SIZE_CAP) -> LowerSet:
    """Build a LowerSet from its JSON description.

    Accepts {"type": "total_degree", "n": ..., "m": ...} or
    {"type": "explicit", "n": ..., "indices": [[...], ...]}.
    """
    from .errors import SchemaError

    if not isinstance(obj, dict):
        raise SchemaError("index set must be an object", "index_set")
    kind = obj.get("type")
    if kind == "total_degree":
        try:
            n, m = int(obj["n"]), int(obj["m"])
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"bad total_degree spec: {exc}", "index_set") from exc
        return total_degree_set(n, m, size_cap)
    if kind == "explicit":
        try:
            n = int(obj["n"])
            indices = obj["indices"]
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"bad explicit spec: {exc}", "index_set") from exc
        try:
            return validate_lower_set(indices, n, size_cap)
        except LowerSetError as exc:
            raise SchemaError(str(exc), "index_set.indices") from exc
    raise SchemaError(f"unknown index set type {kind!r}", "index_set.type")
