"""Exact character theory of the symmetric groups.

Class functions are stored as their values on cycle types.  All arithmetic is
over :class:`fractions.Fraction`; nothing here touches floating point.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial, gcd, prod
from typing import Iterable, Mapping, Sequence

from .combinatorics import Partition, catalan, enum_dyck_paths, enum_partitions, strip

__all__ = [
    "ClassFunction",
    "SymFunc",
    "GradedSymFunc",
    "z",
    "class_size",
    "irreducible_character",
    "coset_character",
    "inner_product",
    "frobenius",
    "frob_h",
    "convert",
    "induction_product",
    "restrict",
    "sym_power",
    "lie_character",
    "named_character",
    "park_grfrob",
    "park_character_direct",
    "coset_decomposition",
]


def _cycle_type(tau: Sequence[int]) -> Partition:
    return tuple(sorted((p for p in tau if p), reverse=True))


def z(tau: Sequence[int]) -> int:
    """Order of the centralizer of a permutation of cycle type ``tau``."""
    return prod(i**k * factorial(k) for i, k in Counter(strip(tau)).items())


def class_size(tau: Sequence[int]) -> int:
    return factorial(sum(tau)) // z(tau)


@dataclass(frozen=True)
class ClassFunction:
    """A rational-valued class function on ``S_n``."""

    n: int
    values: Mapping[Partition, Fraction]

    def __post_init__(self) -> None:
        vals = {_cycle_type(k): Fraction(v) for k, v in self.values.items()}
        missing = set(enum_partitions(self.n)) - set(vals)
        if missing:
            raise ValueError(f"class function on S_{self.n} missing classes {sorted(missing)}")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_function(cls, n: int, fn) -> ClassFunction:
        return cls(n, {tau: fn(tau) for tau in enum_partitions(n)})

    def __call__(self, tau: Sequence[int]) -> Fraction:
        return self.values[_cycle_type(tau)]

    @property
    def degree(self) -> Fraction:
        return self.values[(1,) * self.n] if self.n else self.values[()]

    def as_tuple(self) -> tuple[Fraction, ...]:
        return tuple(self.values[tau] for tau in enum_partitions(self.n))

    def _same(self, other: ClassFunction) -> None:
        if not isinstance(other, ClassFunction) or other.n != self.n:
            raise ValueError("class functions live on different groups")

    def __add__(self, other: ClassFunction) -> ClassFunction:
        self._same(other)
        return ClassFunction(self.n, {t: v + other.values[t] for t, v in self.values.items()})

    def __sub__(self, other: ClassFunction) -> ClassFunction:
        self._same(other)
        return ClassFunction(self.n, {t: v - other.values[t] for t, v in self.values.items()})

    def __neg__(self) -> ClassFunction:
        return ClassFunction(self.n, {t: -v for t, v in self.values.items()})

    def __mul__(self, other) -> ClassFunction:
        """Pointwise product (inner tensor product) or scaling."""
        if isinstance(other, ClassFunction):
            self._same(other)
            return ClassFunction(self.n, {t: v * other.values[t] for t, v in self.values.items()})
        return ClassFunction(self.n, {t: v * other for t, v in self.values.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return self.n == other.n and self.values == other.values

    def __hash__(self) -> int:
        return hash((self.n, self.as_tuple()))

    def __repr__(self) -> str:
        vals = ", ".join(f"{_fmt_part(t)}: {v}" for t, v in zip(enum_partitions(self.n), self.as_tuple()))
        return f"ClassFunction(S_{self.n}; {vals})"


def _fmt_part(lam: Sequence[int]) -> str:
    return "(" + ",".join(map(str, lam)) + ")"


def zero_character(n: int) -> ClassFunction:
    return ClassFunction(n, {t: 0 for t in enum_partitions(n)})


# -- irreducibles (Murnaghan-Nakayama on beta-sets) ---------------------------


@lru_cache(maxsize=None)
def _mn(beta: frozenset[int], rho: Partition) -> int:
    if not rho:
        return 1
    r, rest = rho[0], rho[1:]
    total = 0
    for b in beta:
        c = b - r
        if c < 0 or c in beta:
            continue
        height = sum(1 for x in beta if c < x < b)
        total += (-1) ** height * _mn((beta - {b}) | {c}, rest)
    return total


def mn_value(lam: Sequence[int], tau: Sequence[int]) -> int:
    """``chi^lam`` at cycle type ``tau`` by border-strip removal."""
    lam = strip(lam)
    k = len(lam)
    beta = frozenset(p + k - 1 - i for i, p in enumerate(lam))
    return _mn(beta, _cycle_type(tau))


@lru_cache(maxsize=None)
def irreducible_character(lam: Partition) -> ClassFunction:
    lam = strip(lam)
    n = sum(lam)
    return ClassFunction.from_function(n, lambda tau: mn_value(lam, tau))


# -- coset modules -------------------------------------------------------------


def _distributions(cycles: Sequence[int], blocks: Sequence[int]) -> int:
    """Ways to drop distinguishable cycles into blocks so block sums are exact."""

    @lru_cache(maxsize=None)
    def rec(i: int, remaining: tuple[int, ...]) -> int:
        if i == len(cycles):
            return int(not any(remaining))
        c = cycles[i]
        total = 0
        for j, cap in enumerate(remaining):
            if cap >= c:
                total += rec(i + 1, remaining[:j] + (cap - c,) + remaining[j + 1 :])
        return total

    return rec(0, tuple(blocks))


@lru_cache(maxsize=None)
def coset_character(lam: Partition) -> ClassFunction:
    """Character of ``M^lam``: number of tabloids fixed by each class."""
    lam = strip(lam)
    n = sum(lam)
    return ClassFunction.from_function(n, lambda tau: _distributions(tau, lam))


def inner_product(chi: ClassFunction, psi: ClassFunction) -> Fraction:
    chi._same(psi)
    total = sum(Fraction(v * psi.values[t], z(t)) for t, v in chi.values.items())
    return Fraction(total)


# -- symmetric functions ---------------------------------------------------------


@dataclass(frozen=True)
class SymFunc:
    """A homogeneous symmetric function of degree ``n`` in the Schur or h basis."""

    n: int
    basis: str
    coeffs: Mapping[Partition, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.basis not in ("s", "h"):
            raise ValueError(f"unknown basis {self.basis!r}")
        clean = {}
        for lam, c in self.coeffs.items():
            lam = strip(lam)
            if sum(lam) != self.n:
                raise ValueError(f"{lam} is not a partition of {self.n}")
            if c:
                clean[lam] = clean.get(lam, 0) + c
        object.__setattr__(self, "coeffs", {k: v for k, v in clean.items() if v})

    def __getitem__(self, lam: Sequence[int]) -> int:
        return self.coeffs.get(strip(lam), 0)

    def terms(self) -> list[tuple[Partition, int]]:
        return [(lam, self.coeffs[lam]) for lam in enum_partitions(self.n) if lam in self.coeffs]

    def to_character(self) -> ClassFunction:
        build = irreducible_character if self.basis == "s" else coset_character
        out = zero_character(self.n)
        for lam, c in self.coeffs.items():
            out = out + build(lam) * c
        return out

    def convert(self, basis: str) -> SymFunc:
        return convert(self, basis)

    def __add__(self, other: SymFunc) -> SymFunc:
        if other.n != self.n:
            raise ValueError("degree mismatch")
        if other.basis != self.basis:
            other = convert(other, self.basis)
        merged = Counter(self.coeffs)
        merged.update(other.coeffs)
        return SymFunc(self.n, self.basis, dict(merged))

    def __mul__(self, other) -> SymFunc:
        if isinstance(other, SymFunc):
            a, b = convert(self, "h"), convert(other, "h")
            prodc: Counter = Counter()
            for (lam, c), (mu, d) in product(a.coeffs.items(), b.coeffs.items()):
                prodc[tuple(sorted(lam + mu, reverse=True))] += c * d
            return convert(SymFunc(self.n + other.n, "h", dict(prodc)), self.basis)
        return SymFunc(self.n, self.basis, {k: v * other for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymFunc):
            return NotImplemented
        if other.basis != self.basis:
            other = convert(other, self.basis)
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.n, self.basis, tuple(self.terms())))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        out = []
        for lam, c in self.terms():
            sym = f"{self.basis}_{_fmt_part(lam)}"
            mag = "" if abs(c) == 1 else f"{abs(c)}"
            sign = "-" if c < 0 else "+"
            out.append((sign, mag + sym))
        text = " ".join(f"{s} {t}" for s, t in out)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


@dataclass
class GradedSymFunc:
    """Graded Frobenius character: degree ``k`` component is ``pieces[k]``."""

    pieces: list[SymFunc]

    def __post_init__(self) -> None:
        if len({p.n for p in self.pieces}) > 1:
            raise ValueError("graded pieces must share n")

    @property
    def n(self) -> int:
        return self.pieces[0].n

    def at_one(self) -> SymFunc:
        out = SymFunc(self.n, self.pieces[0].basis)
        for piece in self.pieces:
            out = out + piece
        return out

    def convert(self, basis: str) -> GradedSymFunc:
        return GradedSymFunc([convert(p, basis) for p in self.pieces])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedSymFunc):
            return NotImplemented
        a, b = _trim(self.pieces), _trim(other.pieces)
        return len(a) == len(b) and all(x == y for x, y in zip(a, b))

    def __str__(self) -> str:
        parts = []
        for k, piece in enumerate(self.pieces):
            if not piece.coeffs:
                continue
            body = str(piece)
            if len(piece.coeffs) > 1 or next(iter(piece.coeffs.values())) < 0:
                body = f"({body})"
            parts.append(body if k == 0 else f"{body} q^{k}")
        return " + ".join(parts) if parts else "0"


def _trim(pieces: list[SymFunc]) -> list[SymFunc]:
    out = list(pieces)
    while out and not out[-1].coeffs:
        out.pop()
    return out


def _as_integer(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise ValueError(f"{what} is {x}, not an integer: input is not a virtual character")
    return x.numerator


def frobenius(chi: ClassFunction) -> SymFunc:
    """Schur expansion of a virtual character."""
    coeffs = {
        lam: _as_integer(inner_product(chi, irreducible_character(lam)), f"multiplicity of {lam}")
        for lam in enum_partitions(chi.n)
    }
    return SymFunc(chi.n, "s", coeffs)


def frob_h(n: int, multiplicities: Mapping[Partition, int]) -> SymFunc:
    return SymFunc(n, "h", dict(multiplicities))


@lru_cache(maxsize=None)
def kostka_column(lam: Partition) -> dict[Partition, int]:
    """Schur expansion of ``h_lam`` (the Kostka numbers ``K_{mu, lam}``)."""
    return dict(frobenius(coset_character(lam)).coeffs)


def convert(f: SymFunc, basis: str, *, strict: bool = True) -> SymFunc:
    """Change basis between ``s`` and ``h``.

    The s-to-h direction solves the (unitriangular) Kostka system exactly;
    with ``strict`` a non-integral result raises.
    """
    if basis == f.basis:
        return f
    if basis == "s":
        out: Counter = Counter()
        for lam, c in f.coeffs.items():
            for mu, k in kostka_column(lam).items():
                out[mu] += c * k
        return SymFunc(f.n, "s", dict(out))
    if basis != "h":
        raise ValueError(f"unknown basis {basis!r}")
    parts = enum_partitions(f.n)
    # K_{mu,lam} vanishes unless mu dominates lam, and grevlex-increasing order
    # extends dominance, so substitute upward from (1^n).
    remaining = {lam: Fraction(f[lam]) for lam in parts}
    out_h: dict[Partition, int] = {}
    for lam in reversed(parts):
        c = remaining[lam]
        if c == 0:
            continue
        if strict:
            c = Fraction(_as_integer(c, f"h-coefficient of {lam}"))
        out_h[lam] = c
        for mu, k in kostka_column(lam).items():
            remaining[mu] -= c * k
    if any(remaining.values()):
        raise ArithmeticError("Kostka back-substitution did not terminate cleanly")
    return SymFunc(f.n, "h", {k: int(v) if v.denominator == 1 else v for k, v in out_h.items()})


def coset_decomposition(chi: ClassFunction) -> dict[Partition, Fraction]:
    """Coefficients of ``chi`` in the basis of coset characters ``M^lam``."""
    s = frobenius(chi)
    h = convert(s, "h")
    return {lam: Fraction(c) for lam, c in h.coeffs.items()}


# -- induction, restriction, plethystic operations -------------------------------


def _splittings(tau: Partition, a: int) -> Iterable[tuple[Partition, Partition]]:
    counts = sorted(Counter(tau).items(), reverse=True)

    def rec(i: int, left: int, first: list[int], second: list[int]):
        if i == len(counts):
            if left == 0:
                yield (tuple(sorted(first, reverse=True)), tuple(sorted(second, reverse=True)))
            return
        size, k = counts[i]
        for j in range(min(k, left // size) + 1):
            yield from rec(i + 1, left - j * size, first + [size] * j, second + [size] * (k - j))

    yield from rec(0, a, [], [])


def induction_product(chi: ClassFunction, psi: ClassFunction) -> ClassFunction:
    """Character of ``Ind_{S_a x S_b}^{S_{a+b}} (chi x psi)``."""
    a, b = chi.n, psi.n

    def value(tau: Partition) -> Fraction:
        total = Fraction(0)
        for t1, t2 in _splittings(tau, a):
            total += Fraction(z(tau), z(t1) * z(t2)) * chi(t1) * psi(t2)
        return total

    return ClassFunction.from_function(a + b, value)


def restrict(chi: ClassFunction, n: int) -> ClassFunction:
    """Restrict from ``S_N`` to ``S_n`` acting on the first ``n`` letters."""
    if n > chi.n or n < 0:
        raise ValueError(f"cannot restrict S_{chi.n} to S_{n}")
    ones = (1,) * (chi.n - n)
    return ClassFunction.from_function(n, lambda tau: chi(tuple(tau) + ones))


def power_cycle_type(tau: Sequence[int], i: int) -> Partition:
    """Cycle type of ``g**i`` for ``g`` of type ``tau``."""
    out = []
    for d in tau:
        g = gcd(d, i)
        out.extend([d // g] * g)
    return _cycle_type(out)


def sym_power(chi: ClassFunction, k: int) -> ClassFunction:
    """Character of ``Sym^k`` via the Newton recurrence on power maps."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    n = chi.n
    table = [named_character("trivial", n)]
    for j in range(1, k + 1):
        vals = {}
        for tau in enum_partitions(n):
            acc = sum(chi(power_cycle_type(tau, i)) * table[j - i](tau) for i in range(1, j + 1))
            vals[tau] = Fraction(acc, j)
        table.append(ClassFunction(n, vals))
    result = table[k]
    for tau, v in result.values.items():
        _as_integer(v, f"Sym^{k} value at {tau}")
    return result


def mobius(d: int) -> int:
    result, p = 1, 2
    while p * p <= d:
        if d % p == 0:
            d //= p
            if d % p == 0:
                return 0
            result = -result
        p += 1
    return -result if d > 1 else result


def lie_character(n: int) -> ClassFunction:
    """Character of ``Ind_{C_{n+1}}^{S_{n+1}}`` of a faithful linear character."""
    if n < 1:
        raise ValueError("n must be positive")
    big = n + 1

    def value(tau: Partition) -> Fraction:
        d = tau[0]
        if any(p != d for p in tau):
            return Fraction(0)
        return Fraction(mobius(d) * z(tau), big)

    return ClassFunction.from_function(big, value)


def named_character(kind: str, n: int) -> ClassFunction:
    """Trivial, sign, reflection (permutation minus trivial) or regular character of ``S_n``."""
    if kind == "trivial":
        return ClassFunction.from_function(n, lambda tau: 1)
    if kind == "sign":
        return ClassFunction.from_function(n, lambda tau: (-1) ** (n - len(tau)))
    if kind == "permutation":
        return ClassFunction.from_function(n, lambda tau: tau.count(1))
    if kind == "reflection":
        return ClassFunction.from_function(n, lambda tau: tau.count(1) - 1)
    if kind == "regular":
        return ClassFunction.from_function(n, lambda tau: factorial(n) if tau == (1,) * n else 0)
    raise ValueError(f"unknown character {kind!r}")


# -- parking representations -------------------------------------------------------


def park_grfrob(n: int, ell: int = 1, m: int = 1) -> GradedSymFunc:
    """``sum_D q^area(D) h_lambda(D)`` over (l, m)-Dyck paths of size ``n``."""
    buckets: dict[int, Counter] = {}
    for path in enum_dyck_paths(n, ell, m):
        buckets.setdefault(path.area, Counter())[path.run_partition] += 1
    top = max(buckets)
    return GradedSymFunc([SymFunc(n, "h", dict(buckets.get(k, {}))) for k in range(top + 1)])


def _parking_fixed_points(tau: Partition) -> int:
    # A parking function fixed by a permutation is constant on its cycles.
    n = sum(tau)
    count = 0
    for values in product(range(1, n + 1), repeat=len(tau)):
        prefs = sorted(v for v, size in zip(values, tau) for _ in range(size))
        if all(b <= i for i, b in enumerate(prefs, start=1)):
            count += 1
    return count


def park_character_direct(n: int, *, max_n: int = 7) -> ClassFunction:
    """Permutation character of ``S_n`` on parking functions, by fixed-point counts."""
    if n > max_n:
        raise ValueError(f"n={n} exceeds the guard max_n={max_n}")
    return ClassFunction.from_function(n, _parking_fixed_points)


def catalan_check(n: int) -> bool:
    return len(enum_dyck_paths(n)) == catalan(n)
