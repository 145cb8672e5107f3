"""Is a bi-degree sequence realizable by a simple digraph?

A sequence ``(m, d)`` of in-degrees ``m`` and out-degrees ``d`` is graphical
iff the sums agree and, for every set ``A`` of nodes,

    sum_i min(d_i, |A - {v_i}|) >= sum_{i in A} m_i.

``is_graphical_bruteforce`` checks that literally over all ``2**n`` subsets.
``is_graphical`` uses the sorted reduction: for ``|A| = k`` the worst case is
the ``k`` nodes with the largest in-degree (ties broken by larger
out-degree), which turns the check into ``n`` prefix inequalities.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from .bidegree import BiDegreeSequence
from .errors import SizeGuard

BRUTEFORCE_MAX_N = 22


def _as_arrays(seq):
    if isinstance(seq, BiDegreeSequence):
        return seq.in_degrees, seq.out_degrees
    m, d = seq
    return np.asarray(m, dtype=np.int64), np.asarray(d, dtype=np.int64)


@lru_cache(maxsize=None)
def _subset_masks(n: int) -> np.ndarray:
    codes = np.arange(1 << n, dtype=np.int64)
    return ((codes[:, None] >> np.arange(n)) & 1).astype(np.int64)


def is_graphical_bruteforce(seq) -> bool:
    """Subset-by-subset check of the criterion; exponential, guarded at n <= 22."""
    m, d = _as_arrays(seq)
    n = m.size
    if n > BRUTEFORCE_MAX_N:
        raise SizeGuard(f"subset enumeration limited to n <= {BRUTEFORCE_MAX_N}, got n={n}")
    if m.sum() != d.sum():
        return False
    if n == 0:
        return True
    member = _subset_masks(n)
    size = member.sum(axis=1, keepdims=True)
    # |A - {v_i}| is |A| minus one when v_i is in A
    capacity = np.minimum(d[None, :], size - member).sum(axis=1)
    demand = member @ m
    return bool(np.all(capacity >= demand))


def is_graphical(seq) -> bool:
    """O(n log n) graphicality check."""
    m, d = _as_arrays(seq)
    n = m.size
    if m.sum() != d.sum():
        return False
    if n == 0 or m.sum() == 0:
        return True
    if m.max() > n - 1 or d.max() > n - 1:
        return False

    order = np.lexsort((-d, -m))
    ms = m[order]
    ds = d[order]

    # ge[k] = #{i : d_i >= k}, so sum_i min(d_i, k) = sum_{j=1..k} ge[j]
    counts = np.bincount(d, minlength=n + 1)
    ge = counts[::-1].cumsum()[::-1]
    min_sum = np.concatenate(([0], ge[1:].cumsum()))

    prefix_eq = np.zeros(n + 1, dtype=np.int64)  # prefix nodes with d == v
    prefix_ge = 0  # prefix nodes with d >= k
    lhs = 0
    for k in range(1, n + 1):
        dk = int(ds[k - 1])
        lhs += int(ms[k - 1])
        # roll "d >= k-1" forward to "d >= k" over the first k-1 nodes, then add node k
        prefix_ge -= int(prefix_eq[k - 1])
        prefix_eq[dk] += 1
        if dk >= k:
            prefix_ge += 1
        # prefix nodes count min(d, k-1): one less than min(d, k) exactly when d >= k
        rhs = int(min_sum[k]) - prefix_ge
        if lhs > rhs:
            return False
    return True


def realizable_sequences(n: int) -> frozenset:
    """All ``(m, d)`` tuples realized by some simple digraph on ``n`` nodes.

    Exhaustive over the ``2**(n*(n-1))`` edge sets; only sensible for n <= 4.
    """
    if n > 4:
        raise SizeGuard(f"exhaustive realization search limited to n <= 4, got n={n}")
    return _realizable(n)


@lru_cache(maxsize=None)
def _realizable(n: int) -> frozenset:
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    found = set()
    for bits in itertools.product((0, 1), repeat=len(pairs)):
        m = [0] * n
        d = [0] * n
        for (u, v), b in zip(pairs, bits):
            if b:
                d[u] += 1
                m[v] += 1
        found.add((tuple(m), tuple(d)))
    return frozenset(found)


def has_realization(seq) -> bool:
    m, d = _as_arrays(seq)
    return (tuple(int(x) for x in m), tuple(int(x) for x in d)) in realizable_sequences(m.size)
