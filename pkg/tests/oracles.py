"""Slow, independent reimplementations used to pin down the fast code.

Nothing here imports the package internals; everything works on plain
tuples and sets so a shared bug cannot hide on both sides.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations, permutations, product


def active_order(n, L=()):
    return [x for x in range(1, n + 1) if x not in set(L)]


def runs(n, L, J):
    """Maximal cyclic runs of ``J`` in the gapped order, by walking every start."""
    order = active_order(n, L)
    J = set(J)
    if J == set(order):
        return [tuple(order)]
    m = len(order)
    out = []
    for t, x in enumerate(order):
        if x in J and order[t - 1] not in J:
            block = []
            s = t
            while order[s % m] in J:
                block.append(order[s % m])
                s += 1
            out.append(tuple(block))
    out.sort(key=lambda b: order.index(b[0]))
    return out


def frozen(n, L, J):
    return len(runs(n, L, J)) <= 1


def ws_by_quadruples(n, L, I, J):
    """No cyclically ordered ``a < b < c < d`` alternating between ``I - J`` and ``J - I``."""
    order = active_order(n, L)
    A, B = set(I) - set(J), set(J) - set(I)
    for a, b, c, d in combinations(order, 4):
        if {a, c} <= A and {b, d} <= B:
            return False
        if {a, c} <= B and {b, d} <= A:
            return False
    return True


def bfs_distance(n, J, I):
    """Shortest path from ``e_J`` to ``e_I`` with steps ``e_i - e_{i+1}`` (indices mod n)."""
    start, goal = frozenset(J), frozenset(I)
    seen = {start: 0}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        if cur == goal:
            return seen[cur]
        for i in range(1, n + 1):
            nxt = i % n + 1
            # adding e_i - e_{i+1} moves the element i+1 down to i
            if nxt in cur and i not in cur:
                new = (cur - {nxt}) | {i}
                if new not in seen:
                    seen[new] = seen[cur] + 1
                    queue.append(new)
    raise AssertionError("hypersimplex graph is connected")


def rho_oracle(n, J, I):
    return -bfs_distance(n, J, I)


def boundary_symbol(n, L, J, j):
    """The single term of ``d_j beta^(L)_J`` as ``(L', J')`` or ``None``."""
    if j in L:
        return None
    order = active_order(n, L)
    if j in J:
        ell = j
    else:
        t = order.index(j)
        ell = next(order[(t + s) % len(order)] for s in range(1, len(order)) if order[(t + s) % len(order)] in J)
    L2 = tuple(sorted(set(L) | {j}))
    J2 = tuple(sorted(set(J) - {ell}))
    if frozen(n, L2, J2):
        return None
    return L2, J2


def boundary(n, terms, js=None):
    """``terms`` maps ``(L, J)`` to a coefficient; applies every ``d_j`` in ``js``."""
    out = {}
    for (L, J), c in terms.items():
        for j in (js or range(1, n + 1)):
            key = boundary_symbol(n, L, J, j)
            if key is not None:
                out[key] = out.get(key, 0) + c
    return {k: v for k, v in out.items() if v}


def eulerian(m, d):
    return sum(1 for p in permutations(range(m)) if sum(p[i] > p[i + 1] for i in range(m - 1)) == d)


def ordered_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    # assign each item a block label, then order the labels
    for labels in product(range(len(items)), repeat=len(items)):
        used = sorted(set(labels))
        if used != list(range(len(used))):
            continue
        yield [tuple(x for x, l in zip(items, labels) if l == b) for b in used]


def dosp_classes(k, n):
    """Hypersimplicial DOSPs of ``{1..n}`` with weights summing to ``k``, up to rotation."""
    seen = set()
    for blocks in ordered_partitions(range(1, n + 1)):
        ranges = [range(1, len(b)) for b in blocks]
        for w in product(*ranges):
            if sum(w) != k:
                continue
            pairs = list(zip(blocks, w))
            canon = min(tuple((tuple(sorted(b)), s) for b, s in pairs[t:] + pairs[:t]) for t in range(len(pairs)))
            seen.add(canon)
    return seen
