"""Partitions, (l, m)-Dyck paths and parking functions.

Partitions are plain tuples of nonnegative integers in weakly decreasing
order.  Area partitions of Dyck paths keep their trailing zeros, since their
length (the path size) matters for ``mult`` and for the grevlex order.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

Partition = tuple[int, ...]


def strip(lam: Sequence[int]) -> Partition:
    """Drop trailing zero parts."""
    parts = list(lam)
    while parts and parts[-1] == 0:
        parts.pop()
    return tuple(parts)


def pad(lam: Sequence[int], length: int) -> Partition:
    if len(lam) > length:
        if any(lam[length:]):
            raise ValueError(f"{tuple(lam)} has more than {length} nonzero parts")
        return tuple(lam[:length])
    return tuple(lam) + (0,) * (length - len(lam))


def is_partition(lam: Sequence[int]) -> bool:
    return all(p >= 0 for p in lam) and all(a >= b for a, b in zip(lam, lam[1:]))


def mult_partition(lam: Sequence[int]) -> Partition:
    """Multiplicities of the distinct part values, sorted decreasingly.

    Zero parts count as a part value: ``mult((4,4,3,3,3,1,0,0)) == (3,2,2,1)``.
    """
    return tuple(sorted(Counter(lam).values(), reverse=True))


def grevlex_key(lam: Sequence[int]) -> tuple:
    return (sum(lam), tuple(-p for p in reversed(lam)))


def grevlex_less(lam: Sequence[int], mu: Sequence[int]) -> bool:
    """Strict grevlex comparison of two equal-length vectors.

    ``lam < mu`` when ``|lam| < |mu|``, or the sizes agree and the last nonzero
    entry of ``lam - mu`` is positive.
    """
    if len(lam) != len(mu):
        raise ValueError(f"length mismatch: {len(lam)} != {len(mu)}")
    return grevlex_key(lam) < grevlex_key(mu)


def young_contains(lam: Sequence[int], mu: Sequence[int]) -> bool:
    """True iff the diagram of ``lam`` fits inside the diagram of ``mu``."""
    size = max(len(lam), len(mu))
    return all(a <= b for a, b in zip(pad(strip(lam), size), pad(strip(mu), size)))


def dominates(lam: Sequence[int], mu: Sequence[int]) -> bool:
    """Dominance order ``lam >= mu`` on partitions of the same size."""
    a = b = 0
    size = max(len(lam), len(mu))
    for x, y in zip(pad(strip(lam), size), pad(strip(mu), size)):
        a += x
        b += y
        if a < b:
            return False
    return a == b


@lru_cache(maxsize=None)
def _partitions(n: int, largest: int) -> tuple[Partition, ...]:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def enum_partitions(n: int) -> list[Partition]:
    """All partitions of ``n`` (no zero parts), grevlex-decreasing.

    The order is grevlex on the zero-padded length-``n`` vectors, largest
    first, so ``(n,)`` leads and ``(1,)*n`` comes last.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    return sorted(_partitions(n, n), key=lambda p: grevlex_key(pad(p, n)), reverse=True)


def staircase(n: int, ell: int = 1, m: int = 1) -> Partition:
    """The (l, m)-staircase ``(l-1+m(n-1), ..., l-1+m, l-1)``."""
    return tuple(ell - 1 + m * (n - i) for i in range(1, n + 1))


def sub_staircase_partitions(n: int, ell: int = 1, m: int = 1) -> list[Partition]:
    """Length-``n`` partitions inside the (l, m)-staircase, grevlex-increasing."""
    _check_params(n, ell, m)
    bound = staircase(n, ell, m)
    out: list[Partition] = []

    def rec(i: int, cap: int, acc: list[int]) -> None:
        if i == n:
            out.append(tuple(acc))
            return
        for part in range(min(cap, bound[i]) + 1):
            acc.append(part)
            rec(i + 1, part, acc)
            acc.pop()

    rec(0, bound[0], [])
    out.sort(key=grevlex_key)
    return out


def count_sub_staircase_monomials(n: int, ell: int = 1, m: int = 1) -> int:
    """Number of exponent vectors that rearrange a sub-(l, m)-staircase partition."""
    from math import factorial, prod

    return sum(
        factorial(n) // prod(factorial(c) for c in mult_partition(lam))
        for lam in sub_staircase_partitions(n, ell, m)
    )


def _check_params(n: int, ell: int, m: int) -> None:
    if n < 1 or ell < 1 or m < 1:
        raise ValueError(f"n, ell, m must be positive (got {n}, {ell}, {m})")


@dataclass(frozen=True)
class DyckPath:
    """An (l, m)-Dyck path of size ``n``, stored as its area partition.

    Row ``i`` (counted from the top) holds ``mu[i-1]`` shaded boxes; the path's
    vertical step in that row sits ``mu[i-1]`` units right of the left edge of
    the bounding rectangle.
    """

    n: int
    mu: Partition
    ell: int = 1
    m: int = 1

    def __post_init__(self) -> None:
        _check_params(self.n, self.ell, self.m)
        if len(self.mu) != self.n or not is_partition(self.mu):
            raise ValueError(f"{self.mu} is not a partition of length {self.n}")
        if not all(a <= b for a, b in zip(self.mu, staircase(self.n, self.ell, self.m))):
            raise ValueError(f"{self.mu} leaves the ({self.ell},{self.m})-staircase")

    @property
    def area(self) -> int:
        return sum(self.mu)

    @property
    def run_partition(self) -> Partition:
        """The vertical run partition: rows sharing an x-coordinate form one run."""
        return mult_partition(self.mu)

    def runs(self) -> list[tuple[int, int]]:
        """Vertical runs bottom to top, as ``(x_offset, length)`` pairs."""
        counts = Counter(self.mu)
        return [(x, counts[x]) for x in sorted(counts)]

    def steps(self) -> str:
        """The step word from the start point: ``N`` vertical, ``E`` horizontal."""
        word = []
        x = 0
        for part in reversed(self.mu):
            word.append("E" * (part - x))
            word.append("N")
            x = part
        word.append("E" * (self.ell - 1 + self.m * self.n - x))
        return "".join(word)


def enum_dyck_paths(n: int, ell: int = 1, m: int = 1) -> list[DyckPath]:
    """All (l, m)-Dyck paths of size ``n``, ordered by grevlex on area partitions."""
    return [DyckPath(n, mu, ell, m) for mu in sub_staircase_partitions(n, ell, m)]


def path_stats(path: DyckPath) -> tuple[Partition, int]:
    return path.run_partition, path.area


def is_parking_function(prefs: Sequence[int]) -> bool:
    return all(b <= i for i, b in enumerate(sorted(prefs), start=1)) and all(
        a >= 1 for a in prefs
    )


def enum_parking_functions(n: int) -> list[tuple[int, ...]]:
    """All parking functions of size ``n`` in lexicographic order."""
    out: list[tuple[int, ...]] = []

    # Build the sorted version, then emit all distinct rearrangements.
    from itertools import permutations

    for mu in sub_staircase_partitions(n):
        base = sorted(p + 1 for p in mu)
        out.extend(set(permutations(base)))
    out.sort()
    return out


def act_on_sequence(w: Sequence[int], seq: Sequence[int]) -> tuple[int, ...]:
    """Left action ``w.(a_1..a_n) = (a_{w(1)}, ..., a_{w(n)})``; ``w`` is 1-based one-line."""
    return tuple(seq[w[i] - 1] for i in range(len(seq)))


def labeled_path_to_parking(path: DyckPath, labels: Iterable[Iterable[int]]) -> tuple[int, ...]:
    """Send a labeled classical Dyck path to its parking function.

    ``labels`` gives one label set per vertical run, bottom run first (the
    order of :meth:`DyckPath.runs`).  Car ``i`` prefers one more than the
    x-coordinate of the run carrying label ``i``.
    """
    if path.ell != 1 or path.m != 1:
        raise ValueError("labeled paths are defined for classical Dyck paths only")
    blocks = [frozenset(b) for b in labels]
    runs = path.runs()
    if len(blocks) != len(runs):
        raise ValueError(f"expected {len(runs)} label sets, got {len(blocks)}")
    prefs: dict[int, int] = {}
    for (x, length), block in zip(runs, blocks):
        if len(block) != length:
            raise ValueError(f"run at x={x} has length {length}, labels {sorted(block)}")
        for label in block:
            if label in prefs:
                raise ValueError(f"label {label} used twice")
            prefs[label] = x + 1
    if sorted(prefs) != list(range(1, path.n + 1)):
        raise ValueError(f"labels must be exactly 1..{path.n}")
    return tuple(prefs[i] for i in range(1, path.n + 1))


def parking_to_labeled_path(prefs: Sequence[int]) -> tuple[DyckPath, list[frozenset[int]]]:
    """Inverse of :func:`labeled_path_to_parking`."""
    n = len(prefs)
    if not is_parking_function(prefs):
        raise ValueError(f"{tuple(prefs)} is not a parking function")
    mu = tuple(sorted((a - 1 for a in prefs), reverse=True))
    path = DyckPath(n, mu)
    blocks = [frozenset(i + 1 for i, a in enumerate(prefs) if a - 1 == x) for x, _ in path.runs()]
    return path, blocks


def catalan(n: int) -> int:
    from math import comb

    return comb(2 * n, n) // (n + 1)
