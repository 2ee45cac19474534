"""Compactly supported Euler characteristics over the multiplicity stratification.

chi_c is additive over decompositions into closed and open pieces, so the
value on Sym_k(M) is the sum over strata, and each stratum, a quotient of a
configuration space of m distinct points by the permutations of equal parts,
contributes a falling factorial divided by those symmetries.

The ``twisted`` variants describe the sign-twisted groups used for odd d:
there every stratum with a part of size at least 2 contributes nothing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .partitions import Partition, add_ones, all_collapses, partitions_of


def falling_factorial(x: int, m: int) -> int:
    out = 1
    for t in range(m):
        out *= x - t
    return out


def chi_c_stratum(lam: Partition, chi: int, twisted: bool = False) -> int:
    """chi (chi-1) ... (chi-m+1) / prod_l n(l)!  with m the number of parts."""
    if twisted and not lam.is_all_ones:
        return 0
    denom = 1
    for n in lam.multiplicities.values():
        denom *= factorial(n)
    value = Fraction(falling_factorial(chi, lam.r), denom)
    if value.denominator != 1:
        raise ArithmeticError(f"chi_c of the {lam} stratum came out as {value}")
    return int(value)


def chi_c_sym(chi: int, k: int, twisted: bool = False) -> int:
    """Coefficient of s^k in (1 - s)^(-chi), or in (1 + s)^chi when twisted."""
    if k < 0:
        return 0
    if twisted:
        return falling_factorial(chi, k) // factorial(k)
    return falling_factorial(chi + k - 1, k) // factorial(k)


@dataclass(frozen=True)
class EulerPieces:
    chi_D: int
    chi_W: int
    chi_Sym: int
    degenerate: bool = False


def chi_c_pieces(lam: Partition, j: int, chi: int, twisted: bool = False) -> EulerPieces:
    """chi_c of D_{1^j lam}, of its complement W and of Sym_{k+j}."""
    big = add_ones(lam, j)
    chi_D = sum(chi_c_stratum(mu, chi, twisted) for mu in all_collapses(big))
    chi_Sym = chi_c_sym(chi, big.k, twisted)
    return EulerPieces(chi_D, chi_Sym - chi_D, chi_Sym, degenerate=lam.is_all_ones)


@dataclass
class EulerLedger:
    """Per-stratum chi_c values of Sym_{k+j}(M) and the totals they add up to."""

    chi_M: int
    lam: Partition
    j: int
    twisted: bool
    strata: dict[Partition, int] = field(default_factory=dict)
    in_D: set[Partition] = field(default_factory=set)
    chi_Sym: int = 0
    chi_D: int = 0
    chi_W: int = 0

    @property
    def degenerate(self) -> bool:
        return self.lam.is_all_ones

    def rows(self) -> list[dict]:
        return [
            {"partition": str(mu), "chi_c": v, "in_D": mu in self.in_D}
            for mu, v in sorted(self.strata.items(), reverse=True)
        ]

    def to_json(self) -> dict:
        return {
            "chi_M": self.chi_M,
            "lambda": str(self.lam),
            "j": self.j,
            "twisted": self.twisted,
            "strata": self.rows(),
            "totals": {"Sym": self.chi_Sym, "D": self.chi_D, "W": self.chi_W},
        }


def euler_ledger(lam: Partition, j: int, chi: int, twisted: bool = False) -> EulerLedger:
    big = add_ones(lam, j)
    ledger = EulerLedger(chi, lam, j, twisted)
    ledger.in_D = all_collapses(big)
    for mu in partitions_of(big.k):
        ledger.strata[mu] = chi_c_stratum(mu, chi, twisted)
    total = sum(ledger.strata.values())
    ledger.chi_Sym = chi_c_sym(chi, big.k, twisted)
    if total != ledger.chi_Sym:
        raise ArithmeticError(f"strata of Sym_{big.k} sum to {total}, expected {ledger.chi_Sym}")
    ledger.chi_D = sum(ledger.strata[mu] for mu in ledger.in_D)
    ledger.chi_W = ledger.chi_Sym - ledger.chi_D
    return ledger
