"""Acceptance suite: desk-scale reproduction of the published volume ratios.

Each check prints one ``[PASS]``/``[FAIL]`` line (visible with ``-s``).
The heavy sampling runs are shared module-scoped fixtures; the whole suite
samples a few million states and takes some minutes on a laptop-class CPU.
"""

import math
from dataclasses import dataclass, field
from itertools import product

import numpy as np
import pytest

from entvol import criteria, states
from entvol.estimator import chain_sample_counts
from entvol.sampler import HrConfig, chain_seed, new_chain, sample_lockstep

INF = math.inf
ALPHA_GRID = (1.0, 1.5, 2.0, 5.0, 10.0, INF)
BLOCK = 8192
CHAINS = 32


def check(name, ok, detail):
    print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    assert ok, f"{name}: {detail}"


def in_band(name, value, center, half_width):
    check(
        name,
        center - half_width <= value <= center + half_width,
        f"{value:.5f} vs {center} +/- {half_width}",
    )


@dataclass
class FamilyStats:
    """Counts accumulated over one family's sampling run."""

    total: int = 0
    counts: dict = field(default_factory=dict)
    proven_link_violations: dict = field(default_factory=dict)
    conjectured_link_violations: dict = field(default_factory=dict)
    four_way_agreements: int = 0  # ppt == reduction == majorization == S_inf
    ppt_iff_reduction: int = 0

    def ratio(self, key):
        return self.counts[key] / self.total


def collect(family, total, seed, chains=CHAINS, alphas=ALPHA_GRID):
    """Sample `total` states with estimator-style seeding and accumulate
    per-criterion counts plus per-state implication bookkeeping."""
    chain_list = [
        new_chain(HrConfig(family=family, seed=chain_seed(seed, i)))
        for i in range(chains)
    ]
    remaining = chain_sample_counts(total, chains)
    stats = FamilyStats()
    ordered = sorted(alphas, reverse=True)
    while any(remaining):
        round_counts = [min(BLOCK, r) for r in remaining]
        for block in sample_lockstep(chain_list, round_counts):
            if not len(block):
                continue
            v = criteria.evaluate_block(
                family.matrices_from_coords(block), family.n_a, family.n_b, alphas
            )
            stats.total += len(block)
            keyed = [("ppt", v.ppt), ("reduction", v.reduction),
                     ("majorization", v.majorization)]
            keyed += [(("renyi", a), v.renyi[a]) for a in alphas]
            for key, arr in keyed:
                stats.counts[key] = stats.counts.get(key, 0) + int(arr.sum())
            proven = [
                ("ppt->reduction", v.ppt, v.reduction),
                ("reduction->majorization", v.reduction, v.majorization),
                ("majorization->S_inf", v.majorization, v.renyi[INF]),
            ]
            proven += [(f"reduction->S_{a}", v.reduction, v.renyi[a]) for a in alphas]
            proven += [(f"majorization->S_{a}", v.majorization, v.renyi[a]) for a in alphas]
            for name, strong, weak in proven:
                bad = int((strong & ~weak).sum())
                stats.proven_link_violations[name] = (
                    stats.proven_link_violations.get(name, 0) + bad
                )
            # orderings between Renyi orders are conjectural, tracked apart
            for hi, lo in zip(ordered, ordered[1:]):
                bad = int((v.renyi[hi] & ~v.renyi[lo]).sum())
                stats.conjectured_link_violations[f"S_{hi}->S_{lo}"] = (
                    stats.conjectured_link_violations.get(f"S_{hi}->S_{lo}", 0) + bad
                )
            four = (
                (v.ppt == v.reduction)
                & (v.reduction == v.majorization)
                & (v.majorization == v.renyi[INF])
            )
            stats.four_way_agreements += int(four.sum())
            stats.ppt_iff_reduction += int((v.ppt == v.reduction).sum())
        remaining = [r - c for r, c in zip(remaining, round_counts)]
    return stats


@pytest.fixture(scope="module")
def bd_run():
    return collect(states.bell_diagonal(), 1_000_000, seed=101)


@pytest.fixture(scope="module")
def gen22_run():
    return collect(states.general(2, 2), 1_000_000, seed=102)


@pytest.fixture(scope="module")
def rebit_run():
    return collect(states.rebit_rebit(), 1_000_000, seed=103)


@pytest.fixture(scope="module")
def xstate_run():
    return collect(states.x_state(), 1_000_000, seed=104)


@pytest.fixture(scope="module")
def gen23_run():
    return collect(states.general(2, 3), 1_000_000, seed=105)


@pytest.fixture(scope="module")
def qbqt_run():
    return collect(states.qubit_qutrit_i(), 300_000, seed=106)


@pytest.fixture(scope="module")
def gen33_run():
    return collect(states.general(3, 3), 100_000, seed=107)


def test_bell_diagonal_ratios(bd_run):
    """Four equivalent criteria at R = 0.5000 +/- 0.005, agreeing per state."""
    for key, label in [
        ("ppt", "R_ppt"), ("reduction", "R_reduction"),
        ("majorization", "R_majorization"), (("renyi", INF), "R_S_inf"),
    ]:
        in_band(f"bell-diagonal {label}", bd_run.ratio(key), 0.5000, 0.005)
    check(
        "bell-diagonal four-criteria per-state agreement",
        bd_run.four_way_agreements == bd_run.total,
        f"{bd_run.four_way_agreements}/{bd_run.total} agree",
    )


def test_general_2x2_ratios(gen22_run):
    in_band("general 2x2 R_ppt", gen22_run.ratio("ppt"), 0.2424, 0.004)
    in_band("general 2x2 R_majorization", gen22_run.ratio("majorization"), 0.7846, 0.005)
    in_band("general 2x2 R_S1", gen22_run.ratio(("renyi", 1.0)), 0.9953, 0.002)


def test_rebit_rebit_ratio(rebit_run):
    in_band("rebit-rebit R_ppt vs analytic 29/64", rebit_run.ratio("ppt"), 29 / 64, 0.005)


def test_x_state_ratios(xstate_run):
    in_band("x-state R_ppt", xstate_run.ratio("ppt"), 0.3999, 0.005)
    in_band("x-state R_majorization", xstate_run.ratio("majorization"), 0.6469, 0.005)
    in_band("x-state R_S_inf", xstate_run.ratio(("renyi", INF)), 0.6469, 0.005)


def test_general_2x3_ratios(gen23_run):
    in_band("general 2x3 R_ppt", gen23_run.ratio("ppt"), 0.0267, 0.003)
    check(
        "general 2x3 ppt <=> reduction per-state (2xN equivalence)",
        gen23_run.ppt_iff_reduction == gen23_run.total,
        f"{gen23_run.ppt_iff_reduction}/{gen23_run.total} agree",
    )


def test_qubit_qutrit_i_ratios(qbqt_run):
    in_band("qubit-qutrit (i) R_ppt", qbqt_run.ratio("ppt"), 0.194, 0.006)
    check(
        "qubit-qutrit (i) four-criteria per-state agreement",
        qbqt_run.four_way_agreements == qbqt_run.total,
        f"{qbqt_run.four_way_agreements}/{qbqt_run.total} agree",
    )


def test_proven_implication_lattice(gen22_run, gen23_run, gen33_run):
    """The theorem-backed lattice: ppt => reduction => majorization => S_inf,
    reduction => S_alpha and majorization => S_alpha for every order."""
    for label, run in [("2x2", gen22_run), ("2x3", gen23_run), ("3x3", gen33_run)]:
        check(
            f"proven implication lattice on {label}",
            all(v == 0 for v in run.proven_link_violations.values()),
            f"violations over {run.total} states: "
            f"{ {k: v for k, v in run.proven_link_violations.items() if v} or 'none' }",
        )


def _check_full_chain(label, run):
    assert run.total >= 100_000
    violations = dict(run.proven_link_violations)
    violations.update(run.conjectured_link_violations)
    check(
        f"implication chain incl. Renyi-order links on {label}",
        all(v == 0 for v in violations.values()),
        f"violations over {run.total} states: "
        f"{ {k: v for k, v in violations.items() if v} or 'none' }",
    )


def test_implication_chain_2x2(gen22_run):
    _check_full_chain("2x2", gen22_run)


def test_implication_chain_2x3(gen23_run):
    # Known red: the links between Renyi orders (S_inf => S_alpha and
    # S_alpha => S_beta for alpha >= beta) are not theorems, and general
    # 2x3 states violating them exist at measure ~4e-4 with margins far
    # above numerical tolerance.  Every theorem-backed link passes above.
    _check_full_chain("2x3", gen23_run)


def test_implication_chain_3x3(gen33_run):
    _check_full_chain("3x3", gen33_run)


def test_3x3_ppt_is_rare(gen33_run):
    r = gen33_run.ratio("ppt")
    check("general 3x3 R_ppt < 0.01 at 1e5 samples", r < 0.01, f"R_ppt = {r:.5f}")


def bd_slice_state(x):
    fam = states.bell_diagonal()
    return states.to_matrix(states.BlochVector(fam, np.array([x, -x, 1.0 / 3.0])))


def bisect_flip(predicate, lo, hi, tol=1e-12):
    """Bisection on a predicate that is True at lo and False at hi."""
    assert predicate(lo) and not predicate(hi)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if predicate(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def test_bd_slice_four_criteria_flip_at_one_twelfth():
    predicates = {
        "ppt": lambda x: criteria.check_ppt(bd_slice_state(x), 2, 2).fulfilled,
        "reduction": lambda x: criteria.check_reduction(bd_slice_state(x), 2, 2).fulfilled,
        "majorization": lambda x: criteria.check_majorization(bd_slice_state(x), 2, 2).fulfilled,
        "S_inf": lambda x: criteria.check_renyi(bd_slice_state(x), 2, 2, INF).fulfilled,
    }
    for name, predicate in predicates.items():
        for sign in (1.0, -1.0):
            flip = bisect_flip(lambda x: predicate(sign * x), 0.0, 0.2)
            check(
                f"BD slice {name} flip at |x| = 1/12 (sign {sign:+.0f})",
                abs(flip - 1.0 / 12.0) <= 1e-9,
                f"flip at {flip:.12f}, 1/12 = {1 / 12:.12f}",
            )


def test_bd_slice_von_neumann_flip_location():
    predicate = lambda x: criteria.check_renyi(bd_slice_state(x), 2, 2, 1.0).fulfilled
    for sign in (1.0, -1.0):
        flip = bisect_flip(lambda x: predicate(sign * x), 0.3, 0.41)
        check(
            f"BD slice S_1 flip inside (0.3872, 0.3874) (sign {sign:+.0f})",
            0.3872 < flip < 0.3874,
            f"flip at {flip:.6f}",
        )


def test_ppt_matches_brute_force_oracle():
    """check_ppt vs an independent index-definition oracle on 1e3 states."""
    family = states.general(2, 2)
    chain = new_chain(HrConfig(family=family, seed=chain_seed(108, 0)))
    coords = np.concatenate(sample_lockstep([chain], [1000]))
    agreements = 0
    for rho in family.matrices_from_coords(coords):
        pt = np.zeros((4, 4), dtype=complex)
        for i, j, k, l in product(range(2), repeat=4):
            pt[2 * i + j, 2 * k + l] = rho[2 * k + j, 2 * i + l]
        oracle_ok = np.linalg.eigvalsh(pt)[0] >= -1e-12
        agreements += oracle_ok == criteria.check_ppt(rho, 2, 2).fulfilled
    check(
        "check_ppt vs brute-force partial-transpose oracle",
        agreements == 1000,
        f"{agreements}/1000 agree",
    )
