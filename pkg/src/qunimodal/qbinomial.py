"""Exact expansion of Gaussian binomial coefficients.

``gaussian(ell, m)`` returns the coefficient vector of the q-binomial
coefficient binom(m+ell, m)_q; coefficient k counts the partitions of k
that fit in an ell x m box.  The computation runs the q-Pascal
recurrence

    G(i, j) = G(i, j-1) + q^j * G(i-1, j)

row by row.  Each intermediate polynomial is packed into one big integer
with fixed-width limbs, so a recurrence step is a single shift-and-add
on native ints.  Every coefficient of every intermediate G(i, j) is at
most comb(ell+m, ell), hence a limb width of at least
comb(ell+m, ell).bit_length() bits can never overflow into a neighbour.

The independent oracle ``gaussian_by_enumeration`` counts box partitions
one by one and shares no arithmetic with the packed recurrence.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

from .partitions import Box, enumerate_in_box

# gaussian_by_enumeration refuses boxes with more cells than this: the
# oracle exists for cross-checks, not for production work.
ENUMERATION_GUARD = 64


class QPolynomial:
    """Dense polynomial in q with non-negative integer coefficients.

    ``coeffs[k]`` is the coefficient of q^k.  The vector never carries a
    trailing zero beyond the declared degree (the constant polynomial is
    the single exception, as a vector of length one).
    """

    __slots__ = ("coeffs",)

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: "tuple[int, ...] | list[int]"):
        cs = tuple(int(c) for c in coeffs)
        if not cs:
            raise ValueError("a polynomial needs at least its constant coefficient")
        if any(c < 0 for c in cs):
            raise ValueError("coefficients must be non-negative")
        if len(cs) > 1 and cs[-1] == 0:
            raise ValueError("trailing zero beyond the declared degree")
        self.coeffs = cs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, k: int) -> int:
        """Coefficient of q^k, zero outside 0..degree (so k = -1 gives 0)."""
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def difference_profile(self) -> tuple[int, ...]:
        """Consecutive differences coeff(k) - coeff(k-1) for k = 0..degree."""
        cs = self.coeffs
        return tuple(cs[k] - (cs[k - 1] if k else 0) for k in range(len(cs)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __repr__(self) -> str:
        return f"QPolynomial({list(self.coeffs)})"


def _packed_coeffs(ell: int, m: int) -> tuple[int, ...]:
    """Coefficient vector of binom(m+ell, m)_q via the packed recurrence."""
    bound = comb(ell + m, ell)
    limb = max(8, ((bound.bit_length() + 7) // 8) * 8)  # byte-aligned limbs
    prev = [1] * (m + 1)  # G(0, j) = 1 for every j
    for _ in range(ell):
        cur = [1]  # G(i, 0) = 1
        for j in range(1, m + 1):
            cur.append(cur[j - 1] + (prev[j] << (limb * j)))
        prev = cur
    nbytes = limb // 8
    raw = prev[m].to_bytes(nbytes * (ell * m + 1), "little")
    return tuple(
        int.from_bytes(raw[o : o + nbytes], "little") for o in range(0, len(raw), nbytes)
    )


@lru_cache(maxsize=1024)
def gaussian(ell: int, m: int) -> QPolynomial:
    """Gaussian binomial binom(m+ell, m)_q as a QPolynomial of degree ell*m.

    ``ell`` and ``m`` are the box sides; either may be 0, in which case
    the result is the constant 1.
    """
    if ell < 0 or m < 0:
        raise ValueError(f"box sides must be non-negative: ell={ell} m={m}")
    if ell == 0 or m == 0:
        return QPolynomial((1,))
    return QPolynomial(_packed_coeffs(ell, m))


def gaussian_by_enumeration(ell: int, m: int) -> QPolynomial:
    """Same vector as :func:`gaussian`, by counting box partitions directly.

    Exists solely as an independent oracle; guarded to ell*m <= 64.
    """
    if ell < 0 or m < 0:
        raise ValueError(f"box sides must be non-negative: ell={ell} m={m}")
    if ell == 0 or m == 0:
        return QPolynomial((1,))
    if ell * m > ENUMERATION_GUARD:
        raise ValueError(
            f"enumeration oracle is limited to ell*m <= {ENUMERATION_GUARD}: got {ell * m}"
        )
    box = Box(ell, m)
    return QPolynomial(tuple(len(enumerate_in_box(box, k)) for k in range(ell * m + 1)))
