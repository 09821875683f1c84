"""Virasoro characters of degenerate minimal-model representations.

Coefficients are generated with an alternating double-sided lattice sum over
null vectors, truncated at the requested level; all arithmetic is exact
(integers and fractions), floats appear only at comparison boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


@lru_cache(maxsize=None)
def _euler_inverse(n_max: int) -> tuple[int, ...]:
    """Coefficients of 1 / prod_{k>=1} (1 - q^k) up to q^n_max (partition numbers)."""
    p = [0] * (n_max + 1)
    p[0] = 1
    for k in range(1, n_max + 1):
        for n in range(k, n_max + 1):
            p[n] += p[n - k]
    return tuple(p)


def minimal_central_charge(p_minus: int, p_plus: int) -> Fraction:
    d = p_plus - p_minus
    return 1 - Fraction(6 * d * d, p_minus * p_plus)


def kac_weight(p_minus: int, p_plus: int, r: int, s: int) -> Fraction:
    num = (p_plus * r - p_minus * s) ** 2 - (p_plus - p_minus) ** 2
    return Fraction(num, 4 * p_minus * p_plus)


def character_series(p_minus: int, p_plus: int, r: int, s: int, n_max: int) -> list[int]:
    """Level degeneracies c(n) of the irreducible character of (r, s).

    chi_{r,s}(q) = q^{h - c/24} * sum_n c(n) q^n with c(0) = 1.
    """
    if not (1 <= r < p_minus and 1 <= s < p_plus):
        raise ValueError(f"Kac label ({r},{s}) outside the grid of M({p_minus},{p_plus})")
    pp = p_minus * p_plus
    a = p_plus * r - p_minus * s
    b = p_plus * r + p_minus * s
    sign = [0] * (n_max + 1)
    n = 0
    while True:
        # exponents relative to the leading term h - c/24
        e_plus = pp * n * n + n * a
        e_minus = pp * n * n + n * b + r * s
        done = True
        for e, sgn in ((e_plus, 1), (e_minus, -1)):
            if 0 <= e <= n_max:
                sign[e] += sgn
                done = False
        if n > 0:
            e_plus = pp * n * n - n * a
            e_minus = pp * n * n - n * b + r * s
            for e, sgn in ((e_plus, 1), (e_minus, -1)):
                if 0 <= e <= n_max:
                    sign[e] += sgn
                    done = False
        if n > 0 and done and pp * n * n - n * b > n_max:
            break
        n += 1
    part = _euler_inverse(n_max)
    coeffs = [0] * (n_max + 1)
    for shift, sgn in enumerate(sign):
        if sgn == 0:
            continue
        for m in range(shift, n_max + 1):
            coeffs[m] += sgn * part[m - shift]
    return coeffs


@dataclass(frozen=True)
class CharacterTable:
    """Character data of one minimal model: weights and level degeneracies."""

    model: str
    central_charge: Fraction
    primaries: tuple[tuple[str, Fraction], ...]  # (label, h)
    kac_labels: dict
    p_minus: int
    p_plus: int
    n_max: int

    def weight(self, primary: str) -> Fraction:
        for label, h in self.primaries:
            if label == primary:
                return h
        raise KeyError(f"unknown primary {primary!r}")

    def labels(self) -> list[str]:
        return [label for label, _ in self.primaries]

    def coeffs(self, primary: str, n_max: int | None = None) -> list[int]:
        n = self.n_max if n_max is None else n_max
        r, s = self.kac_labels[primary]
        return character_series(self.p_minus, self.p_plus, r, s, n)

    def effective_central_charge(self) -> Fraction:
        h_min = min(h for _, h in self.primaries)
        return self.central_charge - 24 * h_min

    def min_weight_primary(self) -> str:
        return min(self.primaries, key=lambda t: t[1])[0]


_TABLES: dict[str, CharacterTable] = {}


def _register(model, p_minus, p_plus, fields, n_max=40):
    prims = tuple((label, kac_weight(p_minus, p_plus, r, s)) for label, (r, s) in fields)
    _TABLES[model] = CharacterTable(
        model=model,
        central_charge=minimal_central_charge(p_minus, p_plus),
        primaries=prims,
        kac_labels={label: rs for label, rs in fields},
        p_minus=p_minus,
        p_plus=p_plus,
        n_max=n_max,
    )


_register("ising", 3, 4, [("1", (1, 1)), ("sigma", (2, 2)), ("psi", (2, 1))])
_register("yanglee", 2, 5, [("1", (1, 1)), ("tau", (1, 2))])
_register(
    "tci",
    5,
    6,
    [
        ("0", (1, 1)),
        ("1/8", (1, 2)),
        ("2/3", (1, 3)),
        ("13/8", (1, 4)),
        ("3", (4, 1)),
        ("2/5", (2, 1)),
        ("1/40", (2, 2)),
        ("1/15", (2, 3)),
        ("21/40", (2, 4)),
        ("7/5", (3, 1)),
    ],
)


def character_table(model: str) -> CharacterTable:
    key = "tci" if model == "potts" else model
    try:
        return _TABLES[key]
    except KeyError:
        raise KeyError(f"no character table for model {model!r}") from None


def character_coeffs(model: str, primary: str, n_max: int) -> list[int]:
    """Integer level degeneracies c(0..n_max) of one primary's character."""
    return character_table(model).coeffs(primary, n_max)
