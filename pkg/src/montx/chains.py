"""Euclidean differential addition chains: 2-D EUCLID and the 1-D PRAC wrapper.

Only the binary transformations are used (no pseudo-tripling).  These
routines branch on the scalars and are for public scalars only.
"""

from __future__ import annotations

import csv
import math
import random
from dataclasses import dataclass
from typing import Callable, Iterable

from .curve import MontgomeryCurve
from .ladder import x_ladder
from .modarith import OpCount
from .xline import XZPoint, x_infinity, xadd_extended, xdbl


def golden_split(k: int) -> int:
    """floor(k / phi) = floor(k (sqrt5 - 1) / 2), in exact integer arithmetic."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    # isqrt(5k^2) = floor(k sqrt5) and k sqrt5 is irrational for k > 0
    return (math.isqrt(5 * k * k) - k) // 2


def euclid(E: MontgomeryCurve, m: int, n: int, xP: XZPoint, xQ: XZPoint, xQmP: XZPoint,
           ctr: OpCount | None = None,
           observer: Callable[[str, int, int, XZPoint, XZPoint, XZPoint], None] | None = None) -> XZPoint:
    """x([m]P + [n]Q) from x(P), x(Q), x(Q - P).

    ``observer(branch, s0, s1, x0, x1, xd)`` is called after every step of
    the main loop, for invariant checking.
    """
    if m < 0 or n < 0 or (m == 0 and n == 0):
        raise ValueError("need m, n >= 0, not both zero")

    def xadd(a, b, d):
        return xadd_extended(a, b, d, E, ctr)

    s0, s1 = m, n
    x0, x1, xd = xP, xQ, xQmP
    while s0 != 0:
        if s1 < s0:
            s0, s1, x0, x1 = s1, s0, x1, x0
        if s1 <= 4 * s0:
            branch = "fibonacci"
            s0, s1 = s0, s1 - s0
            x0, x1, xd = xadd(x1, x0, xd), x1, x0
        elif s0 % 2 == s1 % 2:
            branch = "same-parity"
            s0, s1 = s0, (s1 - s0) // 2
            x0, x1 = xadd(x1, x0, xd), xdbl(x1, E, ctr)
        elif s1 % 2 == 0:
            branch = "s1-even"
            s1 //= 2
            x1, xd = xdbl(x1, E, ctr), xadd(x1, xd, x0)
        else:
            branch = "s0-even"
            s0 //= 2
            x0, xd = xdbl(x0, E, ctr), xadd(x0, xd, x1)
        if observer is not None:
            observer(branch, s0, s1, x0, x1, xd)
    while s1 % 2 == 0:
        s1 //= 2
        x1 = xdbl(x1, E, ctr)
    if s1 > 1:
        x1 = x_ladder(E, s1, x1, ctr, extended=True).xk
    return x1


def prac(E: MontgomeryCurve, k: int, xP: XZPoint, ctr: OpCount | None = None) -> XZPoint:
    """x([k]P) by halving out powers of two, then EUCLID on (r, s - r), r = s/phi."""
    if k < 1:
        raise ValueError("prac needs k >= 1")
    s, x = k, xP
    while s % 2 == 0:
        s //= 2
        x = xdbl(x, E, ctr)
    r = golden_split(s)
    return euclid(E, r, s - r, x, x, x_infinity(xP.modulus), ctr)


# -- chain-length statistics ---------------------------------------------------

def log2_size(k: int) -> int:
    """ceil(log2 k): the size in bits used for per-bit ratios (2^t has size t)."""
    return max((k - 1).bit_length(), 1)


@dataclass(frozen=True)
class ChainStats:
    bitlen: int
    xadd_count: int
    xdbl_count: int

    @property
    def total(self) -> int:
        return self.xadd_count + self.xdbl_count

    @property
    def ratio(self) -> float:
        return self.total / self.bitlen


def _measure(run, bitlen: int) -> ChainStats:
    ctr = OpCount()
    run(ctr)
    return ChainStats(bitlen, ctr.calls["xadd"], ctr.calls["xdbl"])


def chain_stats(E: MontgomeryCurve, k: int, xP: XZPoint, algorithm: str = "prac",
                bitlen: int | None = None) -> ChainStats:
    """Count xADD and xDBL calls for x([k]P) with ``algorithm`` in {"prac", "ladder"}."""
    size = log2_size(k) if bitlen is None else bitlen
    if algorithm == "prac":
        return _measure(lambda c: prac(E, k, xP, c), size)
    if algorithm == "ladder":
        return _measure(lambda c: x_ladder(E, k, xP, c), size)
    raise ValueError(f"unknown algorithm {algorithm!r}")


@dataclass(frozen=True)
class CampaignRow:
    bitlen: int
    algorithm: str
    sample_index: int
    scalar: int
    xadd: int
    xdbl: int

    @property
    def total(self) -> int:
        return self.xadd + self.xdbl

    @property
    def ratio(self) -> float:
        return self.total / self.bitlen


@dataclass(frozen=True)
class CampaignSummary:
    bitlen: int
    samples: int
    rows: list
    mean_ratio: dict
    min_ratio: dict
    max_ratio: dict


def campaign_scalars(bitlen: int, samples: int, seed) -> list[int]:
    """Random odd scalars with exactly ``bitlen`` bits."""
    rng = random.Random(seed)
    top = 1 << (bitlen - 1)
    return [top | rng.getrandbits(bitlen - 1) | 1 for _ in range(samples)]


ALGORITHMS = ("ladder", "prac")


def stats_campaign(E: MontgomeryCurve, xP: XZPoint, bitlen: int, samples: int, seed=0) -> CampaignSummary:
    if bitlen < 8:
        raise ValueError("bitlen must be at least 8")
    if samples < 1:
        raise ValueError("samples must be at least 1")
    rows = []
    for i, k in enumerate(campaign_scalars(bitlen, samples, seed)):
        for alg in ALGORITHMS:
            st = chain_stats(E, k, xP, alg, bitlen)
            rows.append(CampaignRow(bitlen, alg, i, k, st.xadd_count, st.xdbl_count))
    ratios = {alg: [r.ratio for r in rows if r.algorithm == alg] for alg in ALGORITHMS}
    return CampaignSummary(
        bitlen, samples, rows,
        mean_ratio={a: sum(v) / len(v) for a, v in ratios.items()},
        min_ratio={a: min(v) for a, v in ratios.items()},
        max_ratio={a: max(v) for a, v in ratios.items()},
    )


CSV_COLUMNS = ["bitlen", "algorithm", "sample_index", "scalar_hex", "xadd", "xdbl", "total", "ratio"]


def write_campaign_csv(summary: CampaignSummary, out) -> None:
    """Write the rows, then one ``#`` comment line with the mean ratios."""
    w = csv.writer(out, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in summary.rows:
        w.writerow([r.bitlen, r.algorithm, r.sample_index, f"{r.scalar:x}", r.xadd, r.xdbl,
                    r.total, f"{r.ratio:.6f}"])
    means = " ".join(f"{a}={summary.mean_ratio[a]:.6f}" for a in ALGORITHMS)
    out.write(f"# mean_ratio {means} bitlen={summary.bitlen} samples={summary.samples}\n")


def read_campaign_csv(lines: Iterable[str]) -> list[dict]:
    return list(csv.DictReader(line for line in lines if not line.startswith("#")))
