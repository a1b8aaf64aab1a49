"""Generators for structured and random learning targets.

Variable blocks occupy consecutive bit positions, block 1 starting at the
least significant bit, so witnesses and serialized goldens are byte-stable.
"""

from __future__ import annotations

import itertools
import random
from typing import Sequence

from .boolfn import ComposedTarget, MonotoneDNF, XorHypothesis, strict_decompose
from .errors import GenerationError
from .lattice import CubeLattice


def parity_table(d: int) -> int:
    """Truth table of d-input XOR, one bit per packed input tuple."""
    table = 0
    for k in range(1 << d):
        if k.bit_count() & 1:
            table |= 1 << k
    return table


def _block_layout(sizes: Sequence[int]) -> list[list[int]]:
    """Bit positions per block, packed consecutively from bit 0."""
    blocks = []
    start = 0
    for s in sizes:
        blocks.append(list(range(start, start + s)))
        start += s
    return blocks


def tightness_family(d: int, t: int) -> ComposedTarget:
    """XOR of d disjoint t-wide variable blocks on the cube of n = d*t.

    The strict decomposition of this target blows up to exactly
    (t+1)^d - 1 minterms while the composed representation has d*t.
    """
    if d < 1 or t < 1:
        raise ValueError("tightness family needs d >= 1 and t >= 1")
    lat = CubeLattice(d * t)
    blocks = _block_layout([t] * d)
    inner = tuple(
        MonotoneDNF(lat, tuple(1 << b for b in blk)) for blk in blocks
    )
    return ComposedTarget(lat, parity_table(d), inner)


def takimoto_family(d: int, t: int, uneven: bool = False) -> ComposedTarget:
    """XOR of nested unions of t-wide blocks on the cube of n = d(d+1)t/2.

    g_i is the union of blocks i..d, so the g_i form a strictly shrinking
    chain that shares minterms between consecutive levels; the strict
    decomposition of the target differs from [g_1..g_d] and its last level
    alone has at least t^d minterms.  ``uneven`` switches block i to
    max(1, n // (i*d)) variables, a variant with a slightly stronger
    blowup; the equal-block construction is the default.
    """
    if d < 2:
        raise ValueError("the nested family needs d >= 2")
    if t < 1:
        raise ValueError("block width must be at least 1")
    n = d * (d + 1) * t // 2
    lat = CubeLattice(n)
    if uneven:
        sizes = [max(1, n // ((i + 1) * d)) for i in range(d)]
        if sum(sizes) > n:
            raise ValueError("uneven blocks do not fit the cube")
    else:
        sizes = [t] * d
    blocks = _block_layout(sizes)
    inner = tuple(
        MonotoneDNF(
            lat, tuple(1 << b for blk in blocks[i:] for b in blk)
        )
        for i in range(d)
    )
    return ComposedTarget(lat, parity_table(d), inner)


def prefix_levels(d: int, t: int) -> XorHypothesis:
    """Expected strict decomposition of the tightness family.

    Level k fires when at least k blocks are active; its minimal elements
    are the joins of one variable from each of k distinct blocks, so it has
    C(d,k) * t^k minterms.
    """
    if d < 1 or t < 1:
        raise ValueError("prefix levels need d >= 1 and t >= 1")
    lat = CubeLattice(d * t)
    levels = []
    for k in range(1, d + 1):
        minimals = []
        for combo in itertools.combinations(range(d), k):
            for choice in itertools.product(range(t), repeat=k):
                x = 0
                for blk, j in zip(combo, choice):
                    x |= 1 << (blk * t + j)
                minimals.append(x)
        levels.append(MonotoneDNF(lat, tuple(minimals)))
    return XorHypothesis(lat, tuple(levels))


def _blocks_of(target: ComposedTarget) -> list[list[int]]:
    """Recover per-block bit positions from nested single-variable minterms."""
    per = []
    for g in target.inner:
        bits = set()
        for a in g.minimals:
            if a.bit_count() != 1:
                raise ValueError("target minterms are not single variables")
            bits.add(a.bit_length() - 1)
        per.append(bits)
    per.append(set())
    blocks = []
    for i in range(len(per) - 1):
        blk = sorted(per[i] - per[i + 1])
        if not blk:
            raise ValueError("target blocks are not nested")
        blocks.append(blk)
    return blocks


def chain_witness_check(
    target: ComposedTarget,
    indices: Sequence[int],
    levels: XorHypothesis | None = None,
) -> bool:
    """Check that the chain picked by one column per block hits every level.

    ``indices[i]`` chooses a column (0-based) inside block i+1; the chain's
    k-th element sets the chosen bit of blocks 1..k and must be a minimal
    element of the k-th strict-decomposition level.  ``levels`` accepts a
    precomputed decomposition of the target.
    """
    blocks = _blocks_of(target)
    if len(indices) != len(blocks):
        raise ValueError(f"need exactly {len(blocks)} column indices")
    for j, blk in zip(indices, blocks):
        if not 0 <= j < len(blk):
            raise IndexError(f"column {j} out of range for a block of {len(blk)}")
    if levels is None:
        levels = strict_decompose(target)
    x = 0
    for k, (j, blk) in enumerate(zip(indices, blocks)):
        x |= 1 << blk[j]
        if k >= len(levels.levels) or x not in levels.levels[k].minimals:
            return False
    return True


def random_composed(
    d: int, sizes: Sequence[int], n: int, seed: int
) -> ComposedTarget:
    """Deterministic-from-seed random target with a 0 at the origin tuple.

    Each inner function is a uniform antichain of the requested size,
    produced by rejection: sample that many distinct nonzero points, keep
    their minimal elements, retry until the count matches.
    """
    if len(sizes) != d:
        raise ValueError("need one size per inner function")
    if n < 1:
        raise ValueError("cube dimension must be at least 1")
    rng = random.Random(seed)
    lat = CubeLattice(n)
    inner = tuple(
        MonotoneDNF(lat, _random_antichain(rng, lat, s)) for s in sizes
    )
    outer = rng.getrandbits(1 << d) & ~1
    return ComposedTarget(lat, outer, inner)


_RETRY_BUDGET = 1000


def _random_antichain(rng: random.Random, lat: CubeLattice, size: int) -> tuple[int, ...]:
    if size == 0:
        return ()
    if size > lat.size - 1:
        raise GenerationError(
            f"cannot place {size} incomparable points in {lat.describe()}"
        )
    for _ in range(_RETRY_BUDGET):
        picks = rng.sample(range(1, lat.size), size)
        mins = lat.min_antichain(picks)
        if len(mins) == size:
            return tuple(mins)
    raise GenerationError(
        f"no antichain of {size} points found in {lat.describe()} "
        f"after {_RETRY_BUDGET} attempts"
    )
