"""Named verification routines behind ``parkext verify``.

Each routine returns ``(name, verdict)`` pairs with stable names.
"""

from __future__ import annotations

from functools import lru_cache
from math import factorial, prod

from .characters import (
    ClassFunction,
    lie_character,
    named_character,
    park_grfrob,
    restrict,
    sym_power,
    zero_character,
)
from .combinatorics import (
    catalan,
    enum_dyck_paths,
    enum_parking_functions,
    labeled_path_to_parking,
    mult_partition,
    parking_to_labeled_path,
)
from .graphs import Multigraph, initial_coefficients_check, tutte_hilbert
from .polyengine import (
    DEFAULT_MAX_SUBGRAPHS,
    GradedSpan,
    build_span,
    check_triangularity,
    degree_character,
    phi_is_isomorphism,
)

Verdict = tuple[str, bool]


@lru_cache(maxsize=None)
def cached_span(n: int, ell: int = 1, m: int = 1, max_subgraphs: int = DEFAULT_MAX_SUBGRAPHS) -> GradedSpan:
    return build_span(n, ell, m, max_subgraphs=max_subgraphs)


def restricted_character(span: GradedSpan, k: int) -> ClassFunction:
    """S_n character of the degree-``k`` piece; via S_{n+1} and restriction when ``l == m``."""
    if span.ell == span.m:
        return restrict(degree_character(span, k, "S_n+1"), span.n)
    return degree_character(span, k, "S_n")


def span_matches_path_sum(n: int, ell: int = 1, m: int = 1, **guards) -> list[Verdict]:
    """Per-degree equality of the span's S_n character with the Dyck-path coset sum."""
    span = cached_span(n, ell, m, **guards)
    expected = park_grfrob(n, ell, m).pieces
    top = max(span.top_degree, len(expected) - 1)
    zero = zero_character(n)
    out = []
    for k in range(top + 1):
        got = restricted_character(span, k) if k in span.pieces else zero
        want = expected[k].to_character() if k < len(expected) else zero
        out.append((f"main.n{n}.l{ell}.m{m}.degree{k}", got == want))
    out.append((f"main.n{n}.l{ell}.m{m}.dim", span.dim == ell * (m * n + ell) ** (n - 1)))
    return out


def sign_power(n: int, ell: int) -> ClassFunction:
    return named_character("sign" if ell % 2 else "trivial", n)


def extremes(n: int, ell: int = 1, **guards) -> list[Verdict]:
    """Trivial bottom, reflection in degree one, symmetric powers below ``n``, Lie on top."""
    if n < 2:
        raise ValueError("the extreme-degree checks need n >= 2")
    span = cached_span(n, ell, ell, **guards)
    tag = f"extremes.n{n}.l{ell}"
    N = n + 1

    def char(k: int) -> ClassFunction:
        return degree_character(span, k, "S_n+1")

    linear = char(1)
    out = [
        (f"{tag}.degree0_trivial", char(0) == named_character("trivial", N)),
        (f"{tag}.degree1_reflection", linear == named_character("reflection", N)),
    ]
    for k in range(2, n):
        out.append((f"{tag}.degree{k}_sym_power", char(k) == sym_power(linear, k)))
    if ell == 1:
        # the range k < n is sharp for the classical span
        at_n = char(n) if n in span.pieces else zero_character(N)
        out.append((f"{tag}.degree{n}_sym_power_fails", at_n != sym_power(linear, n)))
    top = span.top_degree
    want = lie_character(n) * sign_power(N, ell)
    out.append((f"{tag}.top_lie_twist", char(top) == want))
    return out


def triangularity(n: int, ell: int = 1, m: int = 1) -> list[Verdict]:
    paths = enum_dyck_paths(n, ell, m)
    return [(f"triangularity.n{n}.l{ell}.m{m}", all(check_triangularity(D)[0] for D in paths))]


def phi_bijective(n: int, ell: int = 1, m: int = 1, **guards) -> list[Verdict]:
    return [(f"phi.n{n}.l{ell}.m{m}", phi_is_isomorphism(n, ell, m, span=cached_span(n, ell, m, **guards)))]


def tutte(n: int, ell: int = 1, m: int = 1, **guards) -> list[Verdict]:
    span = cached_span(n, ell, m, **guards)
    K = Multigraph.complete_lm(n, ell, m)
    return [
        (f"tutte.n{n}.l{ell}.m{m}.hilbert", span.hilbert() == tutte_hilbert(K)),
        (f"tutte.n{n}.l{ell}.m{m}.initial_coefficients", initial_coefficients_check(K)),
    ]


def bijection(n: int) -> list[Verdict]:
    """Labeled Dyck paths versus parking functions, plus the counts they imply."""
    prefs = enum_parking_functions(n)
    round_trip = all(labeled_path_to_parking(*parking_to_labeled_path(p)) == p for p in prefs)
    images = {parking_to_labeled_path(p)[0].mu for p in prefs}
    paths = enum_dyck_paths(n)
    by_labels = sum(factorial(n) // prod(factorial(c) for c in D.run_partition) for D in paths)
    runs_ok = all(
        D.run_partition == tuple(sorted((length for _, length in D.runs()), reverse=True))
        == mult_partition(D.mu)
        for D in paths
    )
    return [
        (f"bijection.n{n}.count", len(prefs) == (n + 1) ** (n - 1)),
        (f"bijection.n{n}.round_trip", round_trip),
        (f"bijection.n{n}.paths", len(images) == len(paths) == catalan(n)),
        (f"bijection.n{n}.labelings", by_labels == len(prefs)),
        (f"bijection.n{n}.runs", runs_ok),
    ]


SUITES = ("main", "extremes", "triangularity", "tutte", "bijection")


def run_suite(suite: str, max_n: int, ell: int = 1, m: int = 1, **guards) -> list[Verdict]:
    if suite == "all":
        return [v for name in SUITES for v in run_suite(name, max_n, ell, m, **guards)]
    out: list[Verdict] = []
    if suite == "main":
        for n in range(1, max_n + 1):
            out += span_matches_path_sum(n, ell, m, **guards)
    elif suite == "extremes":
        if ell != m:
            raise ValueError("the extreme-degree checks need ell == m")
        for n in range(2, max_n + 1):
            out += extremes(n, ell, **guards)
    elif suite == "triangularity":
        for n in range(1, max_n + 1):
            out += triangularity(n, ell, m)
    elif suite == "tutte":
        for n in range(1, max_n + 1):
            out += tutte(n, ell, m, **guards)
            out += phi_bijective(n, ell, m, **guards)
    elif suite == "bijection":
        for n in range(1, max_n + 1):
            out += bijection(n)
    else:
        raise ValueError(f"unknown suite {suite!r}")
    return out
