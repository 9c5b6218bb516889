"""Formal K-theory classes on toric varieties and the limits built from them.

A :class:`FormalClass` is a finite integer combination of divisorial sheaves
``[O(D)]``.  Capping with ``c1(L)`` for a Cartier ``L`` is
``alpha - alpha (x) O(-L)``, which on divisorial sheaves is the shift
``O(D) -> O(D - L)``.  Euler characteristics come from the graded toric
oracle, so the limits below are independent of any intersection form.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DimensionMismatch, NonStabilizing, NSIError, QuasiPolynomialMismatch
from .toric import Fan, cartier_index, chi, require_cartier, validate_fan


@dataclass(frozen=True)
class FormalClass:
    """sum n_D [O(D)], stored as sorted (divisor, multiplicity) pairs."""

    terms: tuple

    def __init__(self, terms: dict | Iterable = ()):
        items = terms.items() if isinstance(terms, dict) else terms
        acc: Counter = Counter()
        for D, n in items:
            acc[tuple(int(x) for x in D)] += int(n)
        object.__setattr__(self, "terms", tuple(sorted((D, n) for D, n in acc.items() if n)))

    @classmethod
    def sheaf(cls, D: Sequence[int]) -> "FormalClass":
        return cls({tuple(D): 1})

    def __add__(self, other: "FormalClass") -> "FormalClass":
        return FormalClass(list(self.terms) + list(other.terms))

    def __neg__(self) -> "FormalClass":
        return FormalClass((D, -n) for D, n in self.terms)

    def __sub__(self, other: "FormalClass") -> "FormalClass":
        return self + (-other)

    def __rmul__(self, k: int) -> "FormalClass":
        return FormalClass((D, k * n) for D, n in self.terms)

    def shift(self, L: Sequence[int]) -> "FormalClass":
        """alpha (x) O(L)."""
        return FormalClass((tuple(a + b for a, b in zip(D, L)), n) for D, n in self.terms)


def structure_sheaf(num_rays: int) -> FormalClass:
    return FormalClass.sheaf((0,) * num_rays)


def o_D(D: Sequence[int]) -> FormalClass:
    """[O_D] = [O] - [O(-D)], the class of the (reduced) Weil divisor D."""
    D = tuple(int(x) for x in D)
    return FormalClass.sheaf((0,) * len(D)) - FormalClass.sheaf(tuple(-x for x in D))


def c1_apply(fan: Fan, alpha: FormalClass, L: Sequence[int]) -> FormalClass:
    """c1(L) . alpha = alpha - alpha (x) O(-L); L must be Cartier."""
    L = require_cartier(fan, L)
    return alpha - alpha.shift(tuple(-x for x in L))


def c1_chain(fan: Fan, alpha: FormalClass, Ls: Sequence[Sequence[int]]) -> FormalClass:
    for L in Ls:
        alpha = c1_apply(fan, alpha, L)
    return alpha


def chi_formal(fan: Fan, alpha: FormalClass) -> int:
    return sum(n * chi(fan, D).chi for D, n in alpha.terms)


def cartier_product(fan: Fan, divisors: Sequence[Sequence[int]]) -> int:
    """chi(c1(D_1) ... c1(D_n) . [O]) for Cartier D_i, n = dim X."""
    validate_fan(fan)
    if len(divisors) != fan.lattice_rank:
        raise DimensionMismatch(f"need {fan.lattice_rank} divisors, got {len(divisors)}")
    return chi_formal(fan, c1_chain(fan, structure_sheaf(len(fan.rays)), divisors))


# ----------------------------------------------------------------- fitting

def _lagrange_quadratic(points: Sequence[tuple[int, Fraction]]) -> tuple[Fraction, Fraction, Fraction]:
    """Coefficients (a0, a1, a2) of the quadratic through three points."""
    (x0, y0), (x1, y1), (x2, y2) = [(Fraction(x), Fraction(y)) for x, y in points]
    d01 = (y1 - y0) / (x1 - x0)
    d12 = (y2 - y1) / (x2 - x1)
    a2 = (d12 - d01) / (x2 - x0)
    a1 = d01 - a2 * (x0 + x1)
    a0 = y0 - a1 * x0 - a2 * x0 * x0
    return a0, a1, a2


def _eval(coeffs, x) -> Fraction:
    a0, a1, a2 = coeffs
    return a0 + a1 * x + a2 * x * x


@dataclass(frozen=True)
class LimitResult:
    value: Fraction
    period_used: int
    samples: tuple  # (m, chi) pairs
    residue_leading_coefficients: tuple

    def convergents(self) -> list[tuple[int, int, Fraction]]:
        """(m, chi_m, 2 chi_m / m^2) for every sample."""
        return [(m, c, Fraction(2 * c, m * m)) for m, c in self.samples]


def _check_ls(fan: Fan, Ls) -> list[tuple]:
    validate_fan(fan)
    Ls = [tuple(L) for L in (Ls or [])]
    if len(Ls) != fan.lattice_rank - 2:
        raise DimensionMismatch(f"rank-{fan.lattice_rank} fan needs {fan.lattice_rank - 2} Cartier divisors, got {len(Ls)}")
    return [require_cartier(fan, L) for L in Ls]


def self_pair_sequence(fan: Fan, D: Sequence[int], Ls, ms: Iterable[int]) -> list[tuple[int, int]]:
    """(m, chi(c1(L_1)...c1(L_{n-2}) . [O(mD)])) for each m."""
    Ls = _check_ls(fan, Ls)
    base = c1_chain(fan, structure_sheaf(len(fan.rays)), Ls)
    return [(m, chi_formal(fan, base.shift(tuple(m * x for x in D)))) for m in ms]


def self_pair_limit(fan: Fan, D: Sequence[int], Ls=None, period: int | None = None,
                    held_out: int = 3) -> LimitResult:
    """D.D (or D.D.L_1...L_{n-2}) as 2 lim chi(c1(L)...[O(mD)]) / m^2.

    The sequence is a quadratic quasi-polynomial in m whose period divides
    the Cartier index of D.  One quadratic is fitted per residue class from
    three samples each; ``held_out`` further samples and the agreement of
    the leading coefficients are checked, else QuasiPolynomialMismatch.
    """
    D = tuple(int(x) for x in D)
    Ls = tuple(tuple(int(x) for x in L) for L in (Ls or ()))
    return _self_pair_limit(fan, D, Ls, period, held_out)


@lru_cache(maxsize=1 << 14)
def _self_pair_limit(fan: Fan, D: tuple, Ls: tuple, period, held_out: int) -> LimitResult:
    if len(D) != len(fan.rays):
        raise DimensionMismatch(f"divisor has {len(D)} coefficients for {len(fan.rays)} rays")
    P = period if period is not None else cartier_index(fan, D)
    if P < 1:
        raise DimensionMismatch("period must be positive")
    samples = self_pair_sequence(fan, D, Ls, range(1, 3 * P + held_out + 1))
    fits = {}
    for r in range(P):
        pts = [(m, c) for m, c in samples[:3 * P] if m % P == r]
        fits[r] = _lagrange_quadratic(pts)
    for m, c in samples[3 * P:]:
        if _eval(fits[m % P], m) != c:
            raise QuasiPolynomialMismatch(f"held-out sample m={m} is off the fitted quadratic (period {P})")
    leading = tuple(fits[r][2] for r in range(P))
    if len(set(leading)) != 1:
        raise QuasiPolynomialMismatch(f"leading coefficients differ across residues: {[str(x) for x in leading]}")
    return LimitResult(2 * leading[0], P, tuple(samples), leading)


def pair_limit(fan: Fan, D1: Sequence[int], D2: Sequence[int], Ls=None) -> Fraction:
    """Bilinear form from the quadratic one by polarization."""
    s = tuple(a + b for a, b in zip(D1, D2))
    return (self_pair_limit(fan, s, Ls).value - self_pair_limit(fan, D1, Ls).value
            - self_pair_limit(fan, D2, Ls).value) / 2


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % k for k in range(2, int(p ** 0.5) + 1))


def frobenius_ch2_limit(fan: Fan, D: Sequence[int], p: int, Ls=None, period: int | None = None,
                        max_steps: int = 40) -> Fraction:
    """lim chi(c1(L)... [O(p^m D)]) / p^{2m} along Frobenius powers.

    A quadratic per residue class mod P (P the Cartier index) is fitted on
    n = 1..3P; the oracle values at n = p^m beyond that window must then
    match the prediction exactly for two consecutive m.  The limit is the
    leading coefficient of the class those powers fall in.  Raises
    NonStabilizing when a Frobenius sample is off the prediction or
    ``max_steps`` powers do not produce two checked samples.
    """
    if not _is_prime(p):
        raise NSIError(f"p = {p} is not prime")
    D = tuple(int(x) for x in D)
    Ls = _check_ls(fan, Ls)
    P = period if period is not None else cartier_index(fan, D)
    window = self_pair_sequence(fan, D, Ls, range(1, 3 * P + 1))
    fits = {r: _lagrange_quadratic([(m, c) for m, c in window if m % P == r]) for r in range(P)}
    checked = []
    for m in range(1, max_steps + 1):
        n = p ** m
        if n <= 3 * P:
            continue
        (_, c), = self_pair_sequence(fan, D, Ls, [n])
        fit = fits[n % P]
        if _eval(fit, n) != c:
            raise NonStabilizing(f"chi at n = {p}^{m} is off the period-{P} prediction")
        checked.append(fit[2])
        if len(checked) == 2:
            if checked[0] != checked[1]:
                raise QuasiPolynomialMismatch("Frobenius residue classes disagree on the leading term")
            return checked[1]
    raise NonStabilizing(f"fewer than two Frobenius samples within {max_steps} steps (p={p}, period {P})")
