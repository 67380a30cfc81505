"""Frobenius pushforward splitting of toric line bundles.

For the multiplication-by-p torus endomorphism pi_p of a smooth complete
toric variety, the dual pushforward (pi_p)_* O(D) splits into line bundles,
one summand O(D_v) per residue vector v in P_p = {0,...,p-1}^n.  Thomsen's
algorithm computes D_v per maximal cone by an exact divide-with-remainder
step: with A_i the ray-row matrix of cone sigma_i, B_i its inverse and
C_li = A_i B_l relative to a base cone sigma_l,

    C_li v + u_li = p * h_i + r_i,   0 <= r_i < p componentwise,

and the coefficient of Z_j in D_v is -<B_k h_k, v_j> for any maximal cone
sigma_k containing ray j (the choice does not matter).  For p large enough
the set of distinct summand classes stops depending on p; stable_summands
demands agreement across at least two primes before reporting a set.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import NotStabilized, RayNotCovered
from .fan import Fan, cone_matrix, cone_inverse
from .lattice import IntMatrix
from .picard import ClassVector, DivisorVector, PicContext, to_class

# int64 is plenty for every catalog fan; the guard switches to Python ints
# for adversarial inputs rather than risking silent overflow.
_INT64_SAFE = 2**60


def worker_count() -> int:
    """Worker cap from TORIC_EXC_THREADS (default: all cores).

    Results never depend on this value; it only partitions the residue
    enumeration.
    """
    raw = os.environ.get("TORIC_EXC_THREADS", "")
    try:
        value = int(raw)
    except ValueError:
        value = 0
    if value <= 0:
        value = os.cpu_count() or 1
    return max(1, value)


@dataclass(frozen=True)
class ConeFrame:
    """Per-cone matrices of Thomsen's algorithm for a fixed base cone."""

    fan: Fan
    base_cone: int
    cones: tuple[tuple[int, ...], ...]
    A: tuple[IntMatrix, ...]
    B: tuple[IntMatrix, ...]
    C: tuple[IntMatrix, ...]          # C[i] = C_{l i} = A_i @ B_l
    ray_cone: tuple[int, ...]         # chosen covering maximal cone per ray


@lru_cache(maxsize=None)
def cone_frame(fan: Fan, base_cone: int = 0) -> ConeFrame:
    cones = fan.max_cones
    if not 0 <= base_cone < len(cones):
        raise ValueError(f"base cone index {base_cone} out of range")
    A = tuple(cone_matrix(fan, c) for c in cones)
    B = tuple(cone_inverse(fan, c) for c in cones)
    C = tuple(a @ B[base_cone] for a in A)
    ray_cone = []
    for ray in range(fan.n_rays):
        k = next((i for i, c in enumerate(cones) if ray in c), None)
        if k is None:
            raise RayNotCovered(f"ray {ray} lies in no maximal cone")
        ray_cone.append(k)
    return ConeFrame(fan, base_cone, cones, A, B, C, tuple(ray_cone))


def divide_step(C: IntMatrix, w: Sequence[int], v: Sequence[int], p: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Unique h, r with C v + w == p*h + r and 0 <= r < p componentwise."""
    t = C.mul_vec(v)
    h = tuple((a + b) // p for a, b in zip(t, w))
    r = tuple((a + b) - p * hh for a, b, hh in zip(t, w, h))
    assert all(0 <= x < p for x in r)
    return h, r


def cartier_shifts(frame: ConeFrame, divisor: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """The vectors u_li = u_i - C_li u_l for the Cartier data of a divisor.

    u_i holds the exponents of the local equation of D on U_i in the cone's
    own coordinate ring: since the chart coordinates cut out exactly the
    cone's ray divisors, u_i is the coefficient vector of D restricted to
    those rays.  (Equivalently, the local character m_i = B_i u_i satisfies
    <m_i, v_rho> = a_rho on the cone; the projection formula and the
    pushforward of global sections both confirm this orientation.)
    """
    us = [tuple(divisor[i] for i in cone) for cone in frame.cones]
    base = us[frame.base_cone]
    return tuple(
        tuple(u - cv for u, cv in zip(ui, Ci.mul_vec(base)))
        for ui, Ci in zip(us, frame.C)
    )


def summand_divisor(
    frame: ConeFrame,
    v: Sequence[int],
    p: int,
    shifts: Optional[tuple[tuple[int, ...], ...]] = None,
) -> DivisorVector:
    """The divisor D_v attached to one residue vector (shifts=None: trivial bundle)."""
    fan = frame.fan
    if shifts is None:
        shifts = ((0,) * fan.dim,) * len(frame.cones)
    lcov = []
    for C, B, w in zip(frame.C, frame.B, shifts):
        h, _ = divide_step(C, w, v, p)
        lcov.append(B.mul_vec(h))
    coeffs = []
    for j in range(fan.n_rays):
        k = frame.ray_cone[j]
        coeffs.append(-sum(a * b for a, b in zip(lcov[k], fan.rays[j])))
    return tuple(coeffs)


@dataclass(frozen=True)
class FrobeniusDecomposition:
    """Multiset of summand classes of (pi_p)_* O(D) dual."""

    prime: int
    divisor_class: ClassVector
    summands: tuple[tuple[ClassVector, int], ...]  # (class, multiplicity), sorted

    @property
    def classes(self) -> frozenset[ClassVector]:
        return frozenset(c for c, _ in self.summands)

    @property
    def total_multiplicity(self) -> int:
        return sum(mult for _, mult in self.summands)

    def multiplicity(self, cls: ClassVector) -> int:
        return dict(self.summands).get(tuple(cls), 0)


def _residue_grid(p: int, n: int, lo: int, hi: int, dtype) -> np.ndarray:
    """Rows lo..hi of the lexicographic enumeration of {0..p-1}^n."""
    idx = np.arange(lo, hi, dtype=np.int64)
    cols = []
    for j in range(n - 1, -1, -1):
        cols.append(idx % p)
        idx = idx // p
    grid = np.stack(cols[::-1], axis=1)
    return grid.astype(dtype, copy=False)


def _np_matrix(M: IntMatrix, dtype) -> np.ndarray:
    return np.array(M.entries, dtype=dtype)


def _decompose_chunk(frame, ctx, shifts, p, lo, hi, dtype) -> Counter:
    fan = frame.fan
    n = fan.dim
    V = _residue_grid(p, n, lo, hi, dtype)
    betas = np.empty((hi - lo, fan.n_rays), dtype=dtype)
    lcov_by_cone: dict[int, np.ndarray] = {}
    for k in set(frame.ray_cone):
        C = _np_matrix(frame.C[k], dtype)
        B = _np_matrix(frame.B[k], dtype)
        w = np.array(shifts[k], dtype=dtype)
        H = (V @ C.T + w) // p
        lcov_by_cone[k] = H @ B.T
    for j in range(fan.n_rays):
        ray = np.array(fan.rays[j], dtype=dtype)
        betas[:, j] = -(lcov_by_cone[frame.ray_cone[j]] @ ray)
    class_map = _np_matrix(ctx.class_map, dtype)
    classes = betas @ class_map.T
    return Counter(map(tuple, classes.tolist()))


def decompose(
    fan: Fan,
    ctx: PicContext,
    divisor: Sequence[int],
    p: int,
    base_cone: int = 0,
) -> FrobeniusDecomposition:
    """Full splitting of (pi_p)_* O(D) dual into line bundle classes.

    Enumerates all p^n residue vectors; the enumeration is partitioned
    across workers and merged as a multiset, so the result is independent
    of the schedule and of TORIC_EXC_THREADS.
    """
    if p < 2:
        raise ValueError("p must be at least 2")
    frame = cone_frame(fan, base_cone)
    divisor = tuple(int(a) for a in divisor)
    shifts = cartier_shifts(frame, divisor)

    bound = max(
        (abs(x) for M in frame.C for row in M.entries for x in row), default=1
    ) * p * fan.dim + max((abs(x) for u in shifts for x in u), default=0)
    dtype = np.int64 if bound < _INT64_SAFE else object

    total = p ** fan.dim
    workers = worker_count()
    chunk = max(1, -(-total // max(workers, 1)))
    ranges = [(lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]

    if len(ranges) == 1:
        counts = _decompose_chunk(frame, ctx, shifts, p, 0, total, dtype)
    else:
        from concurrent.futures import ThreadPoolExecutor

        counts = Counter()
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_decompose_chunk, frame, ctx, shifts, p, lo, hi, dtype) for lo, hi in ranges]
            for fut in futures:
                counts.update(fut.result())

    assert sum(counts.values()) == total
    summands = tuple(sorted((tuple(int(x) for x in c), int(mult)) for c, mult in counts.items()))
    return FrobeniusDecomposition(p, to_class(ctx, divisor), summands)


def stable_summands(
    fan: Fan,
    ctx: PicContext,
    divisor: Sequence[int],
    primes: Iterable[int] = (31, 37),
    base_cone: int = 0,
) -> tuple[ClassVector, ...]:
    """Distinct summand class set, required to agree across all given primes.

    Raises NotStabilized (with the per-prime sets) when they differ, which
    signals that the primes are too small for this fan.
    """
    primes = tuple(primes)
    if len(primes) < 2:
        raise ValueError("need at least two primes to certify stabilization")
    sets: dict[int, frozenset[ClassVector]] = {}
    for p in primes:
        sets[p] = decompose(fan, ctx, divisor, p, base_cone).classes
    distinct = set(sets.values())
    if len(distinct) != 1:
        raise NotStabilized(sets)
    return tuple(sorted(next(iter(distinct))))


def first_chern_sum(decomposition: FrobeniusDecomposition) -> ClassVector:
    """Sum of all summand classes with multiplicity (the c_1 of the bundle)."""
    if not decomposition.summands:
        return ()
    width = len(decomposition.summands[0][0])
    total = [0] * width
    for cls, mult in decomposition.summands:
        for i, x in enumerate(cls):
            total[i] += mult * x
    return tuple(total)
