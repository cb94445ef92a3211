"""Kronecker coefficients for symmetric group characters.

Two independent routes are implemented and kept separate on purpose.

The *two-row formula* computes g(lam, mu, (n-k, k)) as a_k - a_{k-1},
where a_k(lam, mu) sums c^lam_{alpha,beta} * c^mu_{alpha,beta} over all
alpha of size k and beta of size n-k, with a_{-1} = 0.  Only two-row
third arguments are reachable this way.

The *character oracle* evaluates

    g(lam, mu, nu) = (1/n!) * sum_rho |C_rho| chi^lam(rho) chi^mu(rho) chi^nu(rho)

with irreducible characters computed by the border strip recursion
(remove a strip whose size is the largest remaining cycle length, with
sign (-1)^(height-1), and recurse).  Strips are located through beta
numbers: first-column hook lengths b_i = lam_i + (L-1-i); removing a
strip of size t replaces some b_i by b_i - t, and the sign counts the
beta numbers crossed on the way down.  Character values are memoized
globally, class sizes come from the centralizer order formula
|C_rho| = n! / prod(i^{m_i} m_i!).

For rectangles the two routes are tied together by exact identities:
g(m^ell, m^ell, (n-k, k)) equals the difference p_k - p_{k-1} of
Gaussian binomial coefficients, which ``lemma12_check`` confirms box by
box, and ``routes_check`` confirms the two routes agree on general
pairs.  ``semigroup_check`` samples pairs of positive triples and
confirms g is positive and monotone under part-wise addition.
"""

from __future__ import annotations

import enum
import random
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import factorial

from .lr import LRQuery, lr
from .partitions import Partition, add, partitions_of
from .qbinomial import gaussian

# Largest n for which the character oracle will build rows; the full
# class list for S_18 is still comfortable, and every shipped check
# stays at or below it.
DEFAULT_ORACLE_BOUND = 18


class InternalConsistencyError(RuntimeError):
    """A mathematically guaranteed invariant failed inside a computation.

    Raised when exact arithmetic contradicts something that must hold
    (a negative two-row difference, a character sum not divisible by
    n!).  Reaching this means a bug, not a bad input.
    """


class Route(enum.Enum):
    TwoRowFormula = "TwoRowFormula"
    CharacterOracle = "CharacterOracle"


@dataclass(frozen=True)
class KroneckerValue:
    lam: Partition
    mu: Partition
    nu: Partition
    value: int
    route: Route


@dataclass(frozen=True)
class CharacterTable:
    """Full character table of S_n: values[(lam, rho)] and class sizes."""

    n: int
    values: "dict[tuple[Partition, Partition], int]"
    class_sizes: "dict[Partition, int]"

    def chi(self, lam: Partition, rho: Partition) -> int:
        return self.values[(lam, rho)]


def _strip_removals(shape: tuple[int, ...], t: int) -> list[tuple[tuple[int, ...], int]]:
    """All ways to remove a border strip of size t: (smaller shape, sign)."""
    length = len(shape)
    if length == 0:
        return []
    beta = [shape[i] + (length - 1 - i) for i in range(length)]
    bset = set(beta)
    out = []
    for b in beta:
        nb = b - t
        if nb < 0 or nb in bset:
            continue
        crossed = sum(1 for x in beta if nb < x < b)
        nbeta = sorted((x for x in beta if x != b), reverse=True)
        nbeta.append(nb)
        nbeta.sort(reverse=True)
        smaller = []
        for i, x in enumerate(nbeta):
            part = x - (length - 1 - i)
            if part:
                smaller.append(part)
        out.append((tuple(smaller), -1 if crossed % 2 else 1))
    return out


@lru_cache(maxsize=None)
def _char(shape: tuple[int, ...], cycles: tuple[int, ...]) -> int:
    if not cycles:
        return 1
    t = cycles[0]
    rest = cycles[1:]
    return sum(sign * _char(smaller, rest) for smaller, sign in _strip_removals(shape, t))


def _character(lam: Partition, rho: Partition) -> int:
    return _char(lam.parts, rho.parts)


def _class_size(rho: Partition, n: int) -> int:
    z = 1
    for part, mult in Counter(rho.parts).items():
        z *= part**mult * factorial(mult)
    return factorial(n) // z


def character_table(n: int, *, bound: int = DEFAULT_ORACLE_BOUND) -> CharacterTable:
    """The full character table of S_n (n <= bound)."""
    if n < 0:
        raise ValueError(f"need n >= 0: got {n}")
    if n > bound:
        raise ValueError(f"character table limited to n <= {bound}: got {n}")
    shapes = partitions_of(n)
    values = {
        (lam, rho): _character(lam, rho) for lam in shapes for rho in shapes
    }
    sizes = {rho: _class_size(rho, n) for rho in shapes}
    return CharacterTable(n=n, values=values, class_sizes=sizes)


def g_oracle(
    lam: Partition, mu: Partition, nu: Partition, *, bound: int = DEFAULT_ORACLE_BOUND
) -> int:
    """Kronecker coefficient by the character sum; exact or an error."""
    n = lam.size
    if mu.size != n or nu.size != n:
        raise ValueError(
            f"size mismatch: |{lam}| = {lam.size}, |{mu}| = {mu.size}, |{nu}| = {nu.size}"
        )
    if n > bound:
        raise ValueError(f"character oracle limited to n <= {bound}: got {n}")
    total = 0
    for rho in partitions_of(n):
        cl = _class_size(rho, n)
        total += cl * _character(lam, rho) * _character(mu, rho) * _character(nu, rho)
    value, rem = divmod(total, factorial(n))
    if rem:
        raise InternalConsistencyError(
            f"character sum for g({lam},{mu},{nu}) is not divisible by {n}!"
        )
    if value < 0:
        raise InternalConsistencyError(f"negative g({lam},{mu},{nu}) = {value}")
    return value


def _shape_min(lam: Partition, mu: Partition) -> tuple[int, ...]:
    return tuple(a if a < b else b for a, b in zip(lam.parts, mu.parts))


def _partitions_under(k: int, cap: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Partitions of k with part i at most cap[i] (so at most len(cap) parts)."""
    out: list[tuple[int, ...]] = []
    prefix: list[int] = []

    def rec(remaining: int, row: int, max_part: int) -> None:
        if remaining == 0:
            out.append(tuple(prefix))
            return
        if row == len(cap):
            return
        top = min(max_part, cap[row], remaining)
        for part in range(top, 0, -1):
            prefix.append(part)
            rec(remaining - part, row + 1, part)
            prefix.pop()

    rec(k, 0, k if k else 1)
    return out


def a_k(lam: Partition, mu: Partition, k: int) -> int:
    """sum over |alpha| = k, |beta| = n - k of c^lam_{alpha,beta} c^mu_{alpha,beta}."""
    n = lam.size
    if mu.size != n:
        raise ValueError(f"size mismatch: |{lam}| = {lam.size}, |{mu}| = {mu.size}")
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= {n}: got {k}")
    cap = _shape_min(lam, mu)
    total = 0
    for alpha_parts in _partitions_under(k, cap):
        alpha = Partition(alpha_parts)
        for beta_parts in _partitions_under(n - k, cap):
            beta = Partition(beta_parts)
            c1 = lr(LRQuery(lam, alpha, beta))
            if c1 == 0:
                continue
            c2 = lr(LRQuery(mu, alpha, beta))
            if c2:
                total += c1 * c2
    return total


def two_row(n: int, k: int) -> Partition:
    """The two-row partition (n-k, k); requires 0 <= k <= n/2."""
    if not 0 <= 2 * k <= n:
        raise ValueError(f"need 0 <= k <= n/2 = {n / 2}: got k={k}")
    return Partition((n - k, k))


def g_two_row(lam: Partition, mu: Partition, k: int) -> int:
    """Kronecker coefficient g(lam, mu, (n-k, k)) = a_k - a_{k-1}."""
    n = lam.size
    if mu.size != n:
        raise ValueError(f"size mismatch: |{lam}| = {lam.size}, |{mu}| = {mu.size}")
    if not 0 <= 2 * k <= n:
        raise ValueError(f"need 0 <= k <= n/2 = {n / 2}: got k={k}")
    value = a_k(lam, mu, k) - (a_k(lam, mu, k - 1) if k else 0)
    if value < 0:
        raise InternalConsistencyError(
            f"negative two-row difference g({lam},{mu},(n-{k},{k})) = {value}"
        )
    return value


@dataclass(frozen=True)
class Lemma12Result:
    """Outcome of the rectangle difference identity check for one box."""

    ell: int
    m: int
    ok: bool
    failed_k: int | None

    def __bool__(self) -> bool:
        return self.ok


def lemma12_check(ell: int, m: int, *, bound: int = DEFAULT_ORACLE_BOUND) -> Lemma12Result:
    """Check g(m^ell, m^ell, (n-k, k)) == p_k - p_{k-1} for all 0 <= k <= n/2."""
    if ell < 1 or m < 1:
        raise ValueError(f"need ell, m >= 1: got ell={ell} m={m}")
    n = ell * m
    if n > bound:
        raise ValueError(f"identity check limited to ell*m <= {bound}: got {n}")
    rect = Partition((m,) * ell)
    poly = gaussian(ell, m)
    for k in range(n // 2 + 1):
        expected = poly.coefficient(k) - poly.coefficient(k - 1)
        if g_oracle(rect, rect, two_row(n, k), bound=bound) != expected:
            return Lemma12Result(ell=ell, m=m, ok=False, failed_k=k)
    return Lemma12Result(ell=ell, m=m, ok=True, failed_k=None)


def routes_check(max_n: int = 10) -> list[tuple[Partition, Partition, int, int, int]]:
    """Compare the two-row formula against the character oracle.

    Runs over every unordered pair lam, mu of partitions of each
    n <= max_n and every 0 <= k <= n/2; returns the mismatches as
    (lam, mu, k, two_row_value, oracle_value).  Expected empty.
    """
    mismatches = []
    for n in range(1, max_n + 1):
        shapes = partitions_of(n)
        for i, lam in enumerate(shapes):
            for mu in shapes[i:]:
                for k in range(n // 2 + 1):
                    via_lr = g_two_row(lam, mu, k)
                    via_chars = g_oracle(lam, mu, two_row(n, k))
                    if via_lr != via_chars:
                        mismatches.append((lam, mu, k, via_lr, via_chars))
    return mismatches


@dataclass(frozen=True)
class SemigroupViolation:
    first: tuple[Partition, Partition, Partition]
    second: tuple[Partition, Partition, Partition]
    g_first: int
    g_second: int
    g_sum: int


def semigroup_check(
    samples: int = 1000,
    seed: int = 0,
    max_total_size: int = 18,
) -> list[SemigroupViolation]:
    """Sample pairs of triples with positive Kronecker coefficient and
    check positivity and monotonicity of the part-wise sum triple.

    A sample is a pair of triples (lam, mu, nu) and (alpha, beta, gamma)
    with g > 0 for both and combined size at most ``max_total_size``.
    For each, g(lam+alpha, mu+beta, nu+gamma) must be at least
    max(g1, g2), in particular positive.  Returns violations; expected
    empty.
    """
    if samples < 0:
        raise ValueError(f"need samples >= 0: got {samples}")
    if max_total_size < 2:
        raise ValueError(f"need max_total_size >= 2: got {max_total_size}")
    rng = random.Random(seed)
    violations: list[SemigroupViolation] = []
    accepted = 0
    attempts = 0
    max_attempts = max(1, samples) * 400
    while accepted < samples:
        attempts += 1
        if attempts > max_attempts:
            raise RuntimeError(
                f"sampling stalled: {accepted} accepted in {attempts} attempts"
            )
        n1 = rng.randint(1, max_total_size - 1)
        n2 = rng.randint(1, max_total_size - n1)
        pool1 = partitions_of(n1)
        pool2 = partitions_of(n2)
        first = tuple(rng.choice(pool1) for _ in range(3))
        second = tuple(rng.choice(pool2) for _ in range(3))
        g1 = g_oracle(*first, bound=max_total_size)
        if g1 == 0:
            continue
        g2 = g_oracle(*second, bound=max_total_size)
        if g2 == 0:
            continue
        accepted += 1
        summed = tuple(add(a, b) for a, b in zip(first, second))
        gs = g_oracle(*summed, bound=max_total_size)
        if gs <= 0 or gs < max(g1, g2):
            violations.append(
                SemigroupViolation(
                    first=first, second=second, g_first=g1, g_second=g2, g_sum=gs
                )
            )
    return violations
