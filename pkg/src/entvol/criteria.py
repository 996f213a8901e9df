"""Entanglement detection criteria: PPT, reduction, majorization, Renyi.

Every check returns a verdict together with a signed margin; a criterion
counts as fulfilled when its margin is >= -PSD_TOL, one tolerance
convention for all criteria so that the implication lattice

    ppt => reduction => majorization => S_inf
    reduction => S_alpha and majorization => S_alpha for every alpha > 0

holds per state without tolerance mismatches.  Orderings between Renyi
orders themselves (fulfilling S_alpha implying the criterion for smaller
orders) are typical but NOT guaranteed: bipartite states exist whose
entropy-difference margin changes sign non-monotonically in alpha.
Margins are kept so that near-boundary behaviour can be inspected.

`evaluate_all` shares one eigendecomposition of the state and its two
reductions across all criteria; `evaluate_block` is its batched form,
used by the estimator to classify whole sample blocks with stacked
`eigvalsh` calls.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .states import PSD_TOL, partial_trace, partial_transpose


class CheckResult(NamedTuple):
    fulfilled: bool
    margin: float


@dataclass(frozen=True)
class CriterionVerdict:
    """Per-state outcome of all configured criteria."""

    ppt: CheckResult
    reduction: CheckResult
    majorization: CheckResult
    renyi: dict[float, CheckResult]


def _min_eig(m: np.ndarray) -> float:
    return float(np.linalg.eigvalsh(m)[0])


def check_ppt(rho: np.ndarray, n_a: int, n_b: int) -> CheckResult:
    """Positive partial transpose; margin is the minimum eigenvalue of the
    partially transposed matrix (subsystem choice does not matter)."""
    margin = _min_eig(partial_transpose(rho, n_a, n_b, "A"))
    return CheckResult(margin >= -PSD_TOL, margin)


def check_reduction(rho: np.ndarray, n_a: int, n_b: int) -> CheckResult:
    """Reduction criterion: rho_A (x) I - rho >= 0 and I (x) rho_B - rho >= 0.

    Margin is the smaller of the two minimum eigenvalues.
    """
    rho_a = partial_trace(rho, n_a, n_b, "B")
    rho_b = partial_trace(rho, n_a, n_b, "A")
    margin_a = _min_eig(np.kron(rho_a, np.eye(n_b)) - rho)
    margin_b = _min_eig(np.kron(np.eye(n_a), rho_b) - rho)
    margin = min(margin_a, margin_b)
    return CheckResult(margin >= -PSD_TOL, margin)


def check_majorization(rho: np.ndarray, n_a: int, n_b: int) -> CheckResult:
    """Majorization of the state's spectrum by both reduced spectra.

    The reduced spectra are zero-padded to the full dimension n; only the
    first n-1 descending prefix sums can differ, and the margin is their
    smallest surplus.  The n-th sums are equal traces by construction,
    which is asserted as a guard against padding bugs.
    """
    n = n_a * n_b
    spec = np.sort(np.linalg.eigvalsh(rho))[::-1]
    spec_a = np.sort(np.linalg.eigvalsh(partial_trace(rho, n_a, n_b, "B")))[::-1]
    spec_b = np.sort(np.linalg.eigvalsh(partial_trace(rho, n_a, n_b, "A")))[::-1]
    cum = np.cumsum(spec)
    cum_a = np.cumsum(np.concatenate([spec_a, np.zeros(n - n_a)]))
    cum_b = np.cumsum(np.concatenate([spec_b, np.zeros(n - n_b)]))
    assert abs(cum_a[-1] - cum[-1]) < 1e-9 and abs(cum_b[-1] - cum[-1]) < 1e-9
    margin = float(min((cum_a - cum)[: n - 1].min(), (cum_b - cum)[: n - 1].min()))
    return CheckResult(margin >= -PSD_TOL, margin)


def _renyi_from_spectrum(spectrum: np.ndarray, alpha: float) -> float:
    lam = np.clip(spectrum, 0.0, 1.0)
    if alpha == math.inf:
        value = -np.log(lam.max())
    elif alpha == 1.0:
        positive = lam[lam > 0]
        value = -(positive * np.log(positive)).sum()
    else:
        value = np.log((lam**alpha).sum()) / (1.0 - alpha)
    return max(float(value), 0.0)


def renyi_entropy(m: np.ndarray, alpha: float) -> float:
    """Renyi entropy (1/(1-alpha)) ln Tr m^alpha in nats.

    alpha = 1 is the von Neumann limit -Tr m ln m (with 0 ln 0 = 0) and
    alpha = inf gives -ln lambda_max.  Eigenvalues are clamped to [0, 1]
    to absorb PSD-tolerance-scale negatives before taking logarithms.
    """
    if not alpha > 0:
        raise ValueError(f"Renyi order must be positive, got {alpha}")
    return _renyi_from_spectrum(np.linalg.eigvalsh(m), alpha)


def check_renyi(rho: np.ndarray, n_a: int, n_b: int, alpha: float) -> CheckResult:
    """Entropic criterion S_alpha(rho_A) <= S_alpha(rho) >= S_alpha(rho_B);
    margin is S_alpha(rho) - max of the two reduced entropies."""
    s_ab = renyi_entropy(rho, alpha)
    s_a = renyi_entropy(partial_trace(rho, n_a, n_b, "B"), alpha)
    s_b = renyi_entropy(partial_trace(rho, n_a, n_b, "A"), alpha)
    margin = s_ab - max(s_a, s_b)
    return CheckResult(margin >= -PSD_TOL, margin)


@dataclass(frozen=True)
class BlockVerdicts:
    """Vectorized verdicts for a block of states (all arrays length B)."""

    ppt: np.ndarray
    ppt_margin: np.ndarray
    reduction: np.ndarray
    reduction_margin: np.ndarray
    majorization: np.ndarray
    majorization_margin: np.ndarray
    renyi: dict[float, np.ndarray]
    renyi_margin: dict[float, np.ndarray]

    def __len__(self) -> int:
        return len(self.ppt)

    def verdict(self, i: int) -> CriterionVerdict:
        return CriterionVerdict(
            ppt=CheckResult(bool(self.ppt[i]), float(self.ppt_margin[i])),
            reduction=CheckResult(bool(self.reduction[i]), float(self.reduction_margin[i])),
            majorization=CheckResult(
                bool(self.majorization[i]), float(self.majorization_margin[i])
            ),
            renyi={
                a: CheckResult(bool(ok[i]), float(self.renyi_margin[a][i]))
                for a, ok in self.renyi.items()
            },
        )


def _block_entropies(spectra: np.ndarray, alpha: float) -> np.ndarray:
    lam = np.clip(spectra, 0.0, 1.0)
    if alpha == math.inf:
        s = -np.log(lam.max(axis=1))
    elif alpha == 1.0:
        terms = np.where(lam > 0, -lam * np.log(np.where(lam > 0, lam, 1.0)), 0.0)
        s = terms.sum(axis=1)
    else:
        s = np.log((lam**alpha).sum(axis=1)) / (1.0 - alpha)
    return np.maximum(s, 0.0)


def evaluate_block(
    mats: np.ndarray, n_a: int, n_b: int, alphas: tuple[float, ...]
) -> BlockVerdicts:
    """Evaluate all criteria on a (B, n, n) stack of density matrices."""
    for alpha in alphas:
        if not alpha > 0:
            raise ValueError(f"Renyi order must be positive, got {alpha}")
    mats = np.asarray(mats, dtype=complex)
    batch = mats.shape[0]
    n = n_a * n_b
    m4 = mats.reshape(batch, n_a, n_b, n_a, n_b)

    pt = m4.transpose(0, 3, 2, 1, 4).reshape(batch, n, n)
    ppt_margin = np.linalg.eigvalsh(pt)[:, 0]

    rho_a = np.einsum("bijkj->bik", m4)
    rho_b = np.einsum("bijil->bjl", m4)
    red_a = np.einsum("bik,jl->bijkl", rho_a, np.eye(n_b)).reshape(batch, n, n) - mats
    red_b = np.einsum("bjl,ik->bijkl", rho_b, np.eye(n_a)).reshape(batch, n, n) - mats
    reduction_margin = np.minimum(
        np.linalg.eigvalsh(red_a)[:, 0], np.linalg.eigvalsh(red_b)[:, 0]
    )

    spec = np.linalg.eigvalsh(mats)  # ascending
    spec_a = np.linalg.eigvalsh(rho_a)
    spec_b = np.linalg.eigvalsh(rho_b)

    cum = np.cumsum(spec[:, ::-1], axis=1)
    pad_a = np.concatenate([spec_a[:, ::-1], np.zeros((batch, n - n_a))], axis=1)
    pad_b = np.concatenate([spec_b[:, ::-1], np.zeros((batch, n - n_b))], axis=1)
    cum_a = np.cumsum(pad_a, axis=1)
    cum_b = np.cumsum(pad_b, axis=1)
    assert np.abs(cum_a[:, -1] - cum[:, -1]).max() < 1e-9
    assert np.abs(cum_b[:, -1] - cum[:, -1]).max() < 1e-9
    majorization_margin = np.minimum(
        (cum_a - cum)[:, : n - 1].min(axis=1), (cum_b - cum)[:, : n - 1].min(axis=1)
    )

    renyi_ok: dict[float, np.ndarray] = {}
    renyi_margin: dict[float, np.ndarray] = {}
    for alpha in alphas:
        s_ab = _block_entropies(spec, alpha)
        s_a = _block_entropies(spec_a, alpha)
        s_b = _block_entropies(spec_b, alpha)
        margin = s_ab - np.maximum(s_a, s_b)
        renyi_ok[alpha] = margin >= -PSD_TOL
        renyi_margin[alpha] = margin

    return BlockVerdicts(
        ppt=ppt_margin >= -PSD_TOL,
        ppt_margin=ppt_margin,
        reduction=reduction_margin >= -PSD_TOL,
        reduction_margin=reduction_margin,
        majorization=majorization_margin >= -PSD_TOL,
        majorization_margin=majorization_margin,
        renyi=renyi_ok,
        renyi_margin=renyi_margin,
    )


def evaluate_all(
    rho: np.ndarray, n_a: int, n_b: int, alphas: tuple[float, ...] = (1.0, math.inf)
) -> CriterionVerdict:
    """All criteria for one state, sharing eigendecompositions of the state,
    its partial transpose and its two reductions."""
    return evaluate_block(np.asarray(rho)[None, :, :], n_a, n_b, tuple(alphas)).verdict(0)
