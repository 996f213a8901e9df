"""Volume-ratio estimation from ensembles of hit-and-run chains.

An experiment runs several independently seeded chains, classifies every
emitted sample with all criteria, and reports per-criterion ratios
R = fulfilled/total.  The quoted standard error is the spread of the
per-chain ratios divided by sqrt(chains) (chain-level batch means), which
stays honest under residual autocorrelation of the walk; the naive
binomial error is reported alongside.  When no violating state was
sampled at all, R = 1 is flagged inconclusive and the rule-of-three bound
3/N stands in for the error.
"""

from __future__ import annotations

import json
import math
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from statistics import stdev

import numpy as np

from .criteria import evaluate_block
from .sampler import HrChain, HrConfig, chain_seed, new_chain, sample_lockstep
from .states import StateFamily

DEFAULT_ALPHAS = (1.0, 2.0, 3.0, 5.0, 10.0, math.inf)

# emitted samples per chain per lockstep round; bounds both checkpoint
# granularity and the working-set size of the stacked criteria evaluation
BLOCK_SIZE = 8192

CHECKPOINT_SCHEMA = "entvol-checkpoint/1"


@dataclass(frozen=True)
class ExperimentConfig:
    """Defines a volume-ratio experiment for one state family."""

    family: StateFamily
    total_samples: int
    chains: int = 16
    seed: int = 0
    alphas: tuple[float, ...] = DEFAULT_ALPHAS
    burn_in: int = 0
    thinning: int = 1

    def __post_init__(self) -> None:
        if self.chains < 1:
            raise ValueError("need at least one chain")
        if self.total_samples < self.chains:
            raise ValueError(
                f"total_samples ({self.total_samples}) must be >= chains ({self.chains})"
            )
        object.__setattr__(self, "alphas", tuple(float(a) for a in self.alphas))
        for alpha in self.alphas:
            if not alpha > 0:
                raise ValueError(f"Renyi order must be positive, got {alpha}")

    @property
    def dims(self) -> str:
        return f"{self.family.n_a}x{self.family.n_b}"

    def criterion_keys(self) -> list[tuple[str, float | None]]:
        keys: list[tuple[str, float | None]] = [
            ("ppt", None),
            ("reduction", None),
            ("majorization", None),
        ]
        keys += [("renyi", alpha) for alpha in self.alphas]
        return keys


def chain_sample_counts(total: int, chains: int) -> list[int]:
    """Even split of samples over chains, remainder to the last chain."""
    base = total // chains
    counts = [base] * chains
    counts[-1] += total - base * chains
    return counts


@dataclass(frozen=True)
class RatioEstimate:
    """Volume-ratio estimate for one criterion."""

    criterion: str
    alpha: float | None
    family_label: str
    dims: str
    count_fulfilled: int
    total: int
    per_chain_ratios: tuple[float, ...]

    @property
    def ratio(self) -> float:
        return self.count_fulfilled / self.total

    @property
    def inconclusive(self) -> bool:
        """True when no violating state was sampled."""
        return self.count_fulfilled == self.total

    @property
    def binomial_std_error(self) -> float:
        r = self.ratio
        return math.sqrt(r * (1.0 - r) / self.total)

    @property
    def std_error(self) -> float:
        if self.inconclusive:
            return 3.0 / self.total  # one-sided rule-of-three proxy
        if len(self.per_chain_ratios) > 1:
            return stdev(self.per_chain_ratios) / math.sqrt(len(self.per_chain_ratios))
        return self.binomial_std_error

    @property
    def key(self) -> tuple[str, float | None]:
        return (self.criterion, self.alpha)


def merge(estimates: list[RatioEstimate]) -> RatioEstimate:
    """Combine estimates of the same criterion from compatible runs."""
    if not estimates:
        raise ValueError("nothing to merge")
    first = estimates[0]
    for other in estimates[1:]:
        same = (
            other.criterion == first.criterion
            and other.alpha == first.alpha
            and other.family_label == first.family_label
            and other.dims == first.dims
        )
        if not same:
            raise ValueError(
                f"cannot merge {other.criterion}/{other.alpha} on {other.family_label} "
                f"into {first.criterion}/{first.alpha} on {first.family_label}"
            )
    return RatioEstimate(
        criterion=first.criterion,
        alpha=first.alpha,
        family_label=first.family_label,
        dims=first.dims,
        count_fulfilled=sum(e.count_fulfilled for e in estimates),
        total=sum(e.total for e in estimates),
        per_chain_ratios=tuple(r for e in estimates for r in e.per_chain_ratios),
    )


@dataclass
class _ChainAccumulator:
    """Running per-chain fulfilled counts plus walk state."""

    chain: HrChain
    target: int
    emitted: int = 0
    counts: dict[tuple[str, float | None], int] = field(default_factory=dict)


def _accumulate(acc: _ChainAccumulator, coords_block: np.ndarray, config: ExperimentConfig) -> None:
    family = config.family
    verdicts = evaluate_block(
        family.matrices_from_coords(coords_block), family.n_a, family.n_b, config.alphas
    )
    acc.counts[("ppt", None)] = acc.counts.get(("ppt", None), 0) + int(verdicts.ppt.sum())
    acc.counts[("reduction", None)] = (
        acc.counts.get(("reduction", None), 0) + int(verdicts.reduction.sum())
    )
    acc.counts[("majorization", None)] = (
        acc.counts.get(("majorization", None), 0) + int(verdicts.majorization.sum())
    )
    for alpha in config.alphas:
        key = ("renyi", alpha)
        acc.counts[key] = acc.counts.get(key, 0) + int(verdicts.renyi[alpha].sum())
    acc.emitted += len(coords_block)


def _estimates_from_counts(
    config: ExperimentConfig, results: list[tuple[int, dict]]
) -> list[RatioEstimate]:
    estimates = []
    for key in config.criterion_keys():
        per_chain = tuple(counts.get(key, 0) / emitted for emitted, counts in results)
        estimates.append(
            RatioEstimate(
                criterion=key[0],
                alpha=key[1],
                family_label=config.family.label,
                dims=config.dims,
                count_fulfilled=sum(counts.get(key, 0) for _, counts in results),
                total=sum(emitted for emitted, _ in results),
                per_chain_ratios=per_chain,
            )
        )
    return estimates


def _alpha_str(alpha: float | None) -> str:
    if alpha is None:
        return ""
    return "inf" if alpha == math.inf else repr(alpha)


def _checkpoint_payload(config: ExperimentConfig, accs: list[_ChainAccumulator]) -> dict:
    return {
        "schema": CHECKPOINT_SCHEMA,
        "family": config.family.kind,
        "dims": config.dims,
        "seed": config.seed,
        "chains": config.chains,
        "total_samples": config.total_samples,
        "alphas": [_alpha_str(a) for a in config.alphas],
        "burn_in": config.burn_in,
        "thinning": config.thinning,
        "chain_states": [
            {
                "target": acc.target,
                "emitted": acc.emitted,
                "counts": {
                    f"{k[0]}:{_alpha_str(k[1])}": v for k, v in acc.counts.items()
                },
                "coords": list(acc.chain.coords),
                "steps_taken": acc.chain.steps_taken,
                "burn_remaining": acc.chain._burn_remaining,
                "rng_state": acc.chain.rng.bit_generator.state,
            }
            for acc in accs
        ],
    }


def _write_checkpoint(path: Path, payload: dict) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(payload))
    os.replace(tmp, path)


def _restore_accumulators(
    config: ExperimentConfig, accs: list[_ChainAccumulator], payload: dict
) -> None:
    expected = _checkpoint_payload(config, accs)
    for field_name in (
        "schema", "family", "dims", "seed", "chains",
        "total_samples", "alphas", "burn_in", "thinning",
    ):
        if payload.get(field_name) != expected[field_name]:
            raise ValueError(
                f"checkpoint does not match experiment: field {field_name!r} is "
                f"{payload.get(field_name)!r}, expected {expected[field_name]!r}"
            )
    alpha_by_str = {_alpha_str(a): a for a in config.alphas}
    for acc, state in zip(accs, payload["chain_states"]):
        acc.emitted = state["emitted"]
        acc.counts = {}
        for key_str, value in state["counts"].items():
            name, _, alpha_s = key_str.partition(":")
            acc.counts[(name, alpha_by_str.get(alpha_s))] = value
        chain = acc.chain
        coords = np.array(state["coords"])
        coords.setflags(write=False)
        chain.coords = coords
        chain._mat = (
            coords @ config.family._dirs_flat + config.family._eye_flat
        )
        chain.steps_taken = state["steps_taken"]
        chain._burn_remaining = state["burn_remaining"]
        chain.rng.bit_generator.state = state["rng_state"]


def _run_chain_group(
    config: ExperimentConfig, seeds: tuple[int, ...], targets: tuple[int, ...]
) -> list[tuple[int, dict]]:
    """Worker body: run a subset of chains to completion, return counts."""
    accs = [
        _ChainAccumulator(
            chain=new_chain(
                HrConfig(
                    family=config.family,
                    seed=seed,
                    burn_in=config.burn_in,
                    thinning=config.thinning,
                )
            ),
            target=target,
        )
        for seed, target in zip(seeds, targets)
    ]
    while True:
        round_counts = [min(BLOCK_SIZE, acc.target - acc.emitted) for acc in accs]
        if not any(round_counts):
            break
        blocks = sample_lockstep([acc.chain for acc in accs], round_counts)
        for acc, block in zip(accs, blocks):
            if len(block):
                _accumulate(acc, block, config)
    return [(acc.emitted, acc.counts) for acc in accs]


def run_experiment(
    config: ExperimentConfig,
    *,
    chain_seeds: tuple[int, ...] | None = None,
    checkpoint: str | Path | None = None,
    progress: bool = False,
    workers: int = 1,
) -> list[RatioEstimate]:
    """Run the configured chains and return one estimate per criterion.

    `chain_seeds` overrides the derived per-chain seeds (mainly for tests
    that reproduce individual chains).  When `checkpoint` names a file, the
    run state is written there after every block round and a matching
    existing file is resumed instead of restarting.  `workers` > 1 spreads
    whole chains over a process pool; per-chain seeding makes the result
    independent of the split.
    """
    if chain_seeds is None:
        chain_seeds = tuple(chain_seed(config.seed, i) for i in range(config.chains))
    if len(chain_seeds) != config.chains:
        raise ValueError("need one seed per chain")
    targets = chain_sample_counts(config.total_samples, config.chains)

    if workers > 1:
        if checkpoint is not None:
            raise ValueError("checkpointing is only supported with workers=1")
        from concurrent.futures import ProcessPoolExecutor

        workers = min(workers, config.chains)
        bounds = np.linspace(0, config.chains, workers + 1).astype(int)
        groups = [
            (config, chain_seeds[a:b], tuple(targets[a:b]))
            for a, b in zip(bounds[:-1], bounds[1:])
            if b > a
        ]
        with ProcessPoolExecutor(max_workers=len(groups)) as pool:
            group_results = list(pool.map(_run_chain_group, *zip(*groups)))
        return _estimates_from_counts(
            config, [pair for group in group_results for pair in group]
        )
    accs = [
        _ChainAccumulator(
            chain=new_chain(
                HrConfig(
                    family=config.family,
                    seed=seed,
                    burn_in=config.burn_in,
                    thinning=config.thinning,
                )
            ),
            target=target,
        )
        for seed, target in zip(chain_seeds, targets)
    ]
    checkpoint_path = Path(checkpoint) if checkpoint is not None else None
    if checkpoint_path is not None and checkpoint_path.exists():
        _restore_accumulators(config, accs, json.loads(checkpoint_path.read_text()))

    started = time.perf_counter()
    while True:
        round_counts = [min(BLOCK_SIZE, acc.target - acc.emitted) for acc in accs]
        if not any(round_counts):
            break
        blocks = sample_lockstep([acc.chain for acc in accs], round_counts)
        for acc, block in zip(accs, blocks):
            if len(block):
                _accumulate(acc, block, config)
        if checkpoint_path is not None:
            _write_checkpoint(checkpoint_path, _checkpoint_payload(config, accs))
        if progress:
            done = sum(acc.emitted for acc in accs)
            steps = sum(acc.chain.steps_taken for acc in accs)
            elapsed = time.perf_counter() - started
            print(
                f"entvol: {done}/{config.total_samples} samples, "
                f"{steps / elapsed:,.0f} accepted steps/s",
                file=sys.stderr,
            )
    return _estimates_from_counts(config, [(acc.emitted, acc.counts) for acc in accs])
