"""Certified component skipping via the Jacobian of the map.

When the Jacobian columns indexed by a support set S are independent over
the coefficient field, no kernel element is supported on S, so the whole
component can be dropped without solving it. Independence is tested at a
seeded random point over GF(p): evaluation can only lower rank, so a full
rank answer is a certificate, while a deficient one merely costs the exact
solve we would have done anyway.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass, field
from typing import Sequence

from .linalg import rank_mod_p
from .polyring import RingMap


@dataclass
class EvaluatedJacobian:
    """d(image_j)/d(t_i) evaluated at `point` over GF(prime); shape m x n."""

    entries: list[list[int]]
    point: list[int]
    prime: int


@dataclass
class SkipCache:
    """Memoized skip decisions keyed by support set.

    Concurrent duplicate computation is harmless: the cached value is a pure
    function of the support set and the evaluated Jacobian.
    """

    decisions: dict[tuple[int, ...], bool] = field(default_factory=dict)
    lock: threading.Lock = field(default_factory=threading.Lock)

    def get(self, key):
        return self.decisions.get(key)

    def put(self, key, value: bool):
        with self.lock:
            self.decisions[key] = value


def build_jacobian(phi: RingMap, prime: int, seed: int) -> EvaluatedJacobian:
    """Evaluate all symbolic partials at a seeded uniform point of GF(p)^m."""
    rng = random.Random(seed)
    point = [rng.randrange(prime) for _ in range(phi.m)]
    entries = [[0] * phi.n for _ in range(phi.m)]
    for j, image in enumerate(phi.images):
        for i in range(phi.m):
            entries[i][j] = image.partial_derivative(i).eval_mod_p(point, prime)
    return EvaluatedJacobian(entries, point, prime)


def can_skip(
    jacobian: EvaluatedJacobian,
    support: Sequence[int],
    cache: SkipCache | None = None,
) -> bool:
    """True iff the Jacobian columns on `support` have rank |support|."""
    key = tuple(sorted(support))
    if cache is not None:
        hit = cache.get(key)
        if hit is not None:
            return hit
    if not key:
        result = True
    else:
        sub = [[row[j] for j in key] for row in jacobian.entries]
        result = rank_mod_p(sub, jacobian.prime) == len(key)
    if cache is not None:
        cache.put(key, result)
    return result
