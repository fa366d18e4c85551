"""Does an S_n character extend to S_N?

A character extends when it is the restriction of a genuine S_N-module, i.e.
its irreducible multiplicities are a nonnegative integer combination of the
rows of the restriction matrix.  The coset variant asks the same question for
sums of permutation modules ``M^lam``.  Both are decided by an exhaustive
depth-first search, so an infeasible verdict is a proof.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, Sequence

from .characters import ClassFunction, coset_decomposition, irreducible_character, inner_product
from .combinatorics import Partition, enum_partitions, grevlex_key, pad, strip

DEFAULT_NODE_BUDGET = 10**8
MAX_N = 11
BUDGET_ENV = "PARKEXT_NODE_BUDGET"


class SearchBudgetExceeded(RuntimeError):
    """The search hit its node budget before reaching a verdict."""

    def __init__(self, nodes: int):
        super().__init__(f"inconclusive: node budget exhausted after {nodes} nodes")
        self.nodes_explored = nodes


@dataclass
class FeasibilityResult:
    feasible: bool
    witness: dict[Partition, int] | None
    nodes_explored: int
    mode: str = "irreducible"

    def __post_init__(self) -> None:
        if self.feasible != (self.witness is not None):
            raise ValueError("a witness is present exactly when the target is feasible")


@dataclass(frozen=True)
class RestrictionMatrix:
    """``entries[lam][mu]``: multiplicity of the ``mu`` piece in the restriction of ``lam``."""

    N: int
    n: int
    rows: tuple[Partition, ...]
    cols: tuple[Partition, ...]
    entries: Mapping[Partition, Mapping[Partition, int]] = field(repr=False)

    def __getitem__(self, key: tuple[Partition, Partition]) -> int:
        lam, mu = key
        return self.entries[tuple(lam)].get(tuple(mu), 0)

    def row(self, lam: Partition) -> tuple[int, ...]:
        return tuple(self.entries[lam].get(mu, 0) for mu in self.cols)


def default_budget() -> int:
    value = os.environ.get(BUDGET_ENV)
    return int(value) if value else DEFAULT_NODE_BUDGET


def _check_sizes(N: int, n: int, max_N: int) -> None:
    if not 1 <= n <= N:
        raise ValueError(f"need 1 <= n <= N (got n={n}, N={N})")
    if N > max_N:
        raise ValueError(f"N={N} exceeds the guard max_N={max_N}")


@lru_cache(maxsize=None)
def _remove_box(lam: Partition) -> tuple[Partition, ...]:
    """Partitions obtained by deleting one removable box."""
    out = []
    for i, part in enumerate(lam):
        if part and (i + 1 == len(lam) or lam[i + 1] < part):
            out.append(strip(lam[:i] + (part - 1,) + lam[i + 1 :]))
    return tuple(out)


@lru_cache(maxsize=None)
def _branch(lam: Partition, n: int) -> dict[Partition, int]:
    """Iterated branching rule from ``|lam|`` down to ``n``."""
    if sum(lam) == n:
        return {lam: 1}
    out: dict[Partition, int] = {}
    for smaller in _remove_box(lam):
        for mu, c in _branch(smaller, n).items():
            out[mu] = out.get(mu, 0) + c
    return out


@lru_cache(maxsize=None)
def _coset_branch(lam: Partition, n: int) -> dict[Partition, int]:
    """``Res M^lam`` in the ``M`` basis: subtract 1 from one nonzero part, each part in turn."""
    if sum(lam) == n:
        return {lam: 1}
    out: dict[Partition, int] = {}
    for i in range(len(lam)):
        smaller = strip(tuple(sorted(lam[:i] + (lam[i] - 1,) + lam[i + 1 :], reverse=True)))
        for mu, c in _coset_branch(smaller, n).items():
            out[mu] = out.get(mu, 0) + c
    return out


def restriction_matrix(N: int, n: int, *, max_N: int = MAX_N) -> RestrictionMatrix:
    _check_sizes(N, n, max_N)
    rows = tuple(enum_partitions(N))
    return RestrictionMatrix(N, n, rows, tuple(enum_partitions(n)), {lam: _branch(lam, n) for lam in rows})


def coset_restriction_matrix(N: int, n: int, *, max_N: int = MAX_N) -> RestrictionMatrix:
    _check_sizes(N, n, max_N)
    rows = tuple(enum_partitions(N))
    return RestrictionMatrix(
        N, n, rows, tuple(enum_partitions(n)), {lam: _coset_branch(lam, n) for lam in rows}
    )


def irreducible_multiplicities(chi: ClassFunction) -> dict[Partition, int]:
    """``<chi, chi^mu>`` for every ``mu``; raises unless all are nonnegative integers."""
    out = {}
    for mu in enum_partitions(chi.n):
        c = inner_product(chi, irreducible_character(mu))
        if c.denominator != 1 or c < 0:
            raise ValueError(f"not a character: multiplicity {c} at {mu}")
        out[mu] = int(c)
    return out


def _search(
    matrix: RestrictionMatrix,
    target: Mapping[Partition, int],
    weight: Mapping[Partition, int],
    budget: int,
) -> tuple[dict[Partition, int] | None, int]:
    """Find ``x >= 0`` with ``sum_lam x_lam * row(lam) == target``.

    Variables are tried by decreasing ``weight`` (ties grevlex-decreasing);
    values are tried from their upper bound downward.
    """
    cols = matrix.cols
    goal = tuple(int(target.get(mu, 0)) for mu in cols)
    if any(v < 0 for v in goal):
        return None, 0
    order = sorted(matrix.rows, key=lambda lam: (weight[lam], grevlex_key(pad(lam, matrix.N))), reverse=True)
    rows = [matrix.row(lam) for lam in order]
    support = [tuple(j for j, v in enumerate(r) if v) for r in rows]
    # covered[i]: columns some variable at index >= i can still reduce
    covered = [frozenset()] * (len(rows) + 1)
    for i in range(len(rows) - 1, -1, -1):
        covered[i] = covered[i + 1] | frozenset(support[i])
    dead: set[tuple[int, tuple[int, ...]]] = set()
    nodes = 0
    choice = [0] * len(rows)

    def rec(i: int, res: tuple[int, ...]) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise SearchBudgetExceeded(nodes)
        if not any(res):
            for k in range(i, len(rows)):
                choice[k] = 0
            return True
        if i == len(rows) or any(v and j not in covered[i] for j, v in enumerate(res)):
            return False
        if (i, res) in dead:
            return False
        row = rows[i]
        if support[i]:
            top = min(res[j] // row[j] for j in support[i])
        else:
            top = 0
        for x in range(top, -1, -1):
            choice[i] = x
            nxt = tuple(r - x * b for r, b in zip(res, row)) if x else res
            if rec(i + 1, nxt):
                return True
        if len(dead) < 5_000_000:
            dead.add((i, res))
        return False

    if rec(0, goal):
        witness = {lam: x for lam, x in zip(order, choice) if x}
        return witness, nodes
    return None, nodes


def _verify(matrix: RestrictionMatrix, witness: Mapping[Partition, int], target: Mapping[Partition, int]) -> None:
    for mu in matrix.cols:
        got = sum(x * matrix[lam, mu] for lam, x in witness.items())
        if got != target.get(mu, 0):
            raise AssertionError(f"witness does not reproduce the target at {mu}")


def _irrep_dim(lam: Partition) -> int:
    return int(irreducible_character(lam)((1,) * sum(lam)))


def extends_to(
    chi: ClassFunction | Mapping[Partition, int],
    N: int,
    *,
    budget: int | None = None,
    max_N: int = MAX_N,
) -> FeasibilityResult:
    """Is ``chi`` (an S_n character, or its irreducible multiplicities) restricted from S_N?"""
    if isinstance(chi, ClassFunction):
        n, target = chi.n, irreducible_multiplicities(chi)
    else:
        target = {strip(tuple(k)): int(v) for k, v in chi.items()}
        n = _size_of(target)
        if any(v < 0 for v in target.values()):
            raise ValueError("irreducible multiplicities must be nonnegative")
    matrix = restriction_matrix(N, n, max_N=max_N)
    weight = {lam: _irrep_dim(lam) for lam in matrix.rows}
    witness, nodes = _search(matrix, target, weight, default_budget() if budget is None else budget)
    if witness is not None:
        _verify(matrix, witness, target)
    return FeasibilityResult(witness is not None, witness, nodes)


def extends_as_coset_sum(
    target: ClassFunction | Mapping[Partition, int],
    N: int,
    *,
    budget: int | None = None,
    max_N: int = MAX_N,
) -> FeasibilityResult:
    """Is the target a restriction of an N-combination of coset modules ``M^lam``, ``lam |- N``?

    ``target`` is a character or its (unique) expansion in the ``M`` basis.
    """
    if isinstance(target, ClassFunction):
        n = target.n
        decomposition = coset_decomposition(target)
        if any(c.denominator != 1 for c in decomposition.values()):
            raise ValueError("target is not an integer combination of coset characters")
        coeffs = {lam: int(c) for lam, c in decomposition.items() if c}
    else:
        coeffs = {strip(tuple(k)): int(v) for k, v in target.items() if v}
        n = _size_of(coeffs)
    matrix = coset_restriction_matrix(N, n, max_N=max_N)
    weight = {lam: sum(matrix.row(lam)) for lam in matrix.rows}
    witness, nodes = _search(matrix, coeffs, weight, default_budget() if budget is None else budget)
    if witness is not None:
        _verify(matrix, witness, coeffs)
    return FeasibilityResult(witness is not None, witness, nodes, mode="coset")


def _size_of(target: Mapping[Partition, int]) -> int:
    sizes = {sum(lam) for lam in target}
    if len(sizes) != 1:
        raise ValueError(f"target partitions must share one size, got {sorted(sizes)}")
    return sizes.pop()


def near_rectangle(lam: Sequence[int]) -> bool:
    """Is ``lam`` an ``a x b`` rectangle (``ab = |lam| + 1``) minus its corner box?"""
    lam = strip(tuple(lam))
    total = sum(lam) + 1
    for a in range(1, total + 1):
        if total % a == 0:
            b = total // a
            if strip((b,) * (a - 1) + (b - 1,)) == lam:
                return True
    return False
