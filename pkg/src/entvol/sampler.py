"""Hit-and-run Markov chain over the convex body of a state family.

Each accepted step picks a uniform random direction on the unit sphere of
the family's coordinate space, then draws a point uniformly on the chord
through the current point: a uniform proposal on [-r, r] is redrawn on the
shrunken subinterval (still containing 0) whenever it falls outside the
body, which terminates almost surely because the body is convex.  The
resulting walk is asymptotically uniform over the body.

The chord half-length r = 2 sqrt(n-1)/sqrt(n) is twice the circumradius of
the full state body of the ambient n-dimensional system, so it bounds the
chords of every subfamily as well.

Chains are deterministic functions of their seed (PCG64 via
``numpy.random.default_rng``); per-chain seeds for ensembles are derived by
hashing (seed, chain index) through ``numpy.random.SeedSequence``.

The membership test in the inner loop is a Hermitian eigenvalue
computation.  ``sample_lockstep`` advances several chains in lockstep so
those tests run as one stacked ``eigvalsh`` call per round, which is about
three times faster than per-chain calls at the matrix sizes involved; the
emitted streams are bit-identical to running ``sample`` on each chain
separately.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .states import PSD_TOL, BlochVector, StateFamily


class ShrinkLimitError(RuntimeError):
    """Interval shrinking failed to find an inside point.

    This indicates a numerical pathology (e.g. a chain state outside the
    body); it cannot occur for interior points under normal operation.
    """


@dataclass(frozen=True)
class HrConfig:
    """Configuration of a single hit-and-run chain."""

    family: StateFamily
    seed: int
    burn_in: int = 0
    thinning: int = 1
    max_shrink_iterations: int = 10_000

    def __post_init__(self) -> None:
        if self.seed < 0:
            raise ValueError("seed must be a non-negative integer")
        if self.burn_in < 0:
            raise ValueError("burn_in must be >= 0")
        if self.thinning < 1:
            raise ValueError("thinning must be >= 1")
        if self.max_shrink_iterations < 1:
            raise ValueError("max_shrink_iterations must be >= 1")


class HrChain:
    """Mutable walk state; create via `new_chain`.

    Not thread-safe: a chain may be sent between threads but not shared.
    """

    __slots__ = ("config", "rng", "coords", "steps_taken", "_mat", "_burn_remaining")

    def __init__(self, config: HrConfig):
        self.config = config
        self.rng = np.random.default_rng(config.seed)
        coords = np.zeros(config.family.dim)
        coords.setflags(write=False)
        self.coords = coords
        self.steps_taken = 0
        self._mat = config.family._eye_flat.copy()
        self._burn_remaining = config.burn_in


def chord_radius(family: StateFamily) -> float:
    """Chord bound r = 2 sqrt(n-1)/sqrt(n) for the ambient dimension n."""
    n = family.ambient_dim
    return 2.0 * np.sqrt(n - 1) / np.sqrt(n)


def chain_seed(seed: int, index: int) -> int:
    """Derived 64-bit seed for chain `index` of an ensemble."""
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(index,))
    return int(ss.generate_state(1, np.uint64)[0])


def new_chain(config: HrConfig) -> HrChain:
    """Fresh chain at the zero Bloch vector (the maximally mixed state)."""
    return HrChain(config)


def random_direction(chain: HrChain) -> np.ndarray:
    """Uniform unit vector on the sphere of the chain's coordinate space,
    via normalized independent standard Gaussians."""
    direction = chain.rng.standard_normal(chain.config.family.dim)
    norm = np.linalg.norm(direction)
    while norm == 0.0:  # probability zero, keeps the normalization total
        direction = chain.rng.standard_normal(chain.config.family.dim)
        norm = np.linalg.norm(direction)
    return direction / norm


def _advance(chain: HrChain) -> np.ndarray:
    """One accepted hit-and-run step; returns the new coordinate array."""
    family = chain.config.family
    rng = chain.rng
    n = family.ambient_dim
    direction = random_direction(chain)
    dirmat = direction @ family._dirs_flat
    radius = chord_radius(family)
    lo, hi = -radius, radius
    for _ in range(chain.config.max_shrink_iterations):
        lam = rng.uniform(lo, hi)
        candidate = chain._mat + lam * dirmat
        if np.linalg.eigvalsh(candidate.reshape(n, n))[0] >= -PSD_TOL:
            coords = chain.coords + lam * direction
            coords.setflags(write=False)
            chain.coords = coords
            # rebuild instead of keeping `candidate`: the cached matrix stays
            # an exact function of coords, so checkpoint/resume and lockstep
            # runs see identical floats
            chain._mat = coords @ family._dirs_flat + family._eye_flat
            chain.steps_taken += 1
            return coords
        if lam > 0.0:
            hi = lam
        else:
            lo = lam
    raise ShrinkLimitError(
        f"no inside point after {chain.config.max_shrink_iterations} interval "
        f"shrinks (family {family.label}, step {chain.steps_taken})"
    )


def step(chain: HrChain) -> BlochVector:
    """Advance the chain by one accepted step and return the new point."""
    return BlochVector(chain.config.family, _advance(chain))


def sample(chain: HrChain, count: int) -> Iterator[BlochVector]:
    """Emit `count` samples: after the one-time burn-in, every thinning-th
    accepted step."""
    if count < 1:
        raise ValueError("count must be >= 1")
    family = chain.config.family
    for _ in range(count):
        while chain._burn_remaining > 0:
            _advance(chain)
            chain._burn_remaining -= 1
        for _ in range(chain.config.thinning):
            coords = _advance(chain)
        yield BlochVector(family, coords)


def sample_coords(chain: HrChain, count: int) -> np.ndarray:
    """Like `sample`, collected into a (count, d) coordinate array."""
    out = np.empty((count, chain.config.family.dim))
    for i, v in enumerate(sample(chain, count)):
        out[i] = v.coords
    return out


def sample_lockstep(chains: list[HrChain], counts: list[int]) -> list[np.ndarray]:
    """Advance several chains of one family in lockstep.

    Returns one (counts[i], d) coordinate array per chain.  Each chain
    consumes its own random stream exactly as `sample` would, so the output
    equals per-chain sequential sampling; only the membership eigenvalue
    tests are batched across chains.
    """
    if len(chains) != len(counts):
        raise ValueError("need one sample count per chain")
    if not chains:
        return []
    family = chains[0].config.family
    if any(c.config.family is not family for c in chains[1:]):
        raise ValueError("lockstep chains must share one family")
    n = family.ambient_dim
    dirs_flat, eye_flat = family._dirs_flat, family._eye_flat
    radius = chord_radius(family)

    num = len(chains)
    remaining = np.array(counts, dtype=int)
    if (remaining < 0).any():
        raise ValueError("sample counts must be >= 0")
    # per-chain walk state, stacked so proposals batch into one eigvalsh
    mats = np.stack([c._mat for c in chains])
    dirmats = np.zeros_like(mats)
    directions = np.zeros((num, family.dim))
    lo = np.full(num, -radius)
    hi = np.full(num, radius)
    shrinks = np.zeros(num, dtype=int)
    needs_direction = np.ones(num, dtype=bool)
    # accepted steps until the next emission (burn-in folds into the first)
    pending = np.array(
        [c._burn_remaining + c.config.thinning for c in chains], dtype=int
    )
    out = [np.empty((k, family.dim)) for k in remaining]
    filled = np.zeros(num, dtype=int)

    active = [i for i in range(num) if remaining[i] > 0]
    while active:
        lam = np.empty(num)
        for i in active:
            chain = chains[i]
            if needs_direction[i]:
                directions[i] = random_direction(chain)
                dirmats[i] = directions[i] @ dirs_flat
                lo[i], hi[i] = -radius, radius
                shrinks[i] = 0
                needs_direction[i] = False
            lam[i] = chain.rng.uniform(lo[i], hi[i])
        idx = np.array(active)
        candidates = mats[idx] + lam[idx, None] * dirmats[idx]
        min_eigs = np.linalg.eigvalsh(candidates.reshape(-1, n, n))[:, 0]
        for pos, i in enumerate(active):
            chain = chains[i]
            if min_eigs[pos] >= -PSD_TOL:
                coords = chain.coords + lam[i] * directions[i]
                coords.setflags(write=False)
                chain.coords = coords
                chain._mat = coords @ dirs_flat + eye_flat
                mats[i] = chain._mat
                chain.steps_taken += 1
                if chain._burn_remaining > 0:
                    chain._burn_remaining -= 1
                needs_direction[i] = True
                pending[i] -= 1
                if pending[i] == 0:
                    out[i][filled[i]] = coords
                    filled[i] += 1
                    remaining[i] -= 1
                    pending[i] = chain.config.thinning
            else:
                shrinks[i] += 1
                if shrinks[i] >= chain.config.max_shrink_iterations:
                    raise ShrinkLimitError(
                        f"no inside point after {shrinks[i]} interval shrinks "
                        f"(family {family.label}, chain {i})"
                    )
                if lam[i] > 0.0:
                    hi[i] = lam[i]
                else:
                    lo[i] = lam[i]
        active = [i for i in active if remaining[i] > 0]
    return out
