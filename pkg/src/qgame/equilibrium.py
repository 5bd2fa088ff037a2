"""Grid-certified best replies and epsilon-Nash profiles over the strategy space.

The search always runs on the simulation path (payoff tables built by state
evolution), so it works for arbitrary 2x2 bimatrices, not only Battle of the
Sexes. Certificates are exact for the grid: eps_cert is the largest payoff any
player could gain by a unilateral on-grid deviation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .closedform import _general
from .scheme import (
    PHI_RANGES,
    GameMatrix,
    PayoffPair,
    SchemeParams,
    StrategyParams,
    initial_state,
    measurement_basis,
    payoffs_oracle,
    strategy_op,
)

TIE_TOL = 1e-12


@dataclass(frozen=True)
class StrategyGrid:
    """Evenly spaced (theta, phi) points, endpoints included.

    theta runs over [0, pi]. phi runs over the configured range: "narrow" is
    the closed interval [0, pi/2]; "full" covers [0, 2*pi) without the
    duplicate endpoint. A single step degenerates to the lower endpoint, which
    gives the classical pure-strategy grids.
    """

    theta_steps: int
    phi_steps: int
    phi_range: str = "narrow"

    def __post_init__(self) -> None:
        for name, steps in (("theta_steps", self.theta_steps), ("phi_steps", self.phi_steps)):
            if not isinstance(steps, int) or steps < 1:
                raise ValueError(f"{name} must be a positive integer, got {steps!r}")
        if self.phi_range not in PHI_RANGES:
            raise ValueError(
                f"phi_range must be one of {sorted(PHI_RANGES)}, got {self.phi_range!r}"
            )

    @property
    def theta_interval(self) -> tuple[float, float]:
        return (0.0, math.pi)

    @property
    def phi_interval(self) -> tuple[float, float]:
        return PHI_RANGES[self.phi_range]

    def theta_values(self) -> np.ndarray:
        return np.linspace(0.0, math.pi, self.theta_steps)

    def phi_values(self) -> np.ndarray:
        lo, hi = self.phi_interval
        # the full range is periodic, so its upper endpoint is excluded
        return np.linspace(lo, hi, self.phi_steps, endpoint=self.phi_range != "full")

    def points(self) -> list[StrategyParams]:
        """All grid strategies, theta-major (lexicographic by grid index)."""
        return [StrategyParams(float(t), float(p))
                for t in self.theta_values() for p in self.phi_values()]


@dataclass(frozen=True)
class ProfileResult:
    """A strategy profile with payoffs and its on-grid deviation certificate."""

    s1: StrategyParams
    s2: StrategyParams
    payoffs: PayoffPair
    eps_cert: float


@dataclass(frozen=True)
class SweepRow:
    """Per-(gamma, delta) summary: equilibria found and formula agreement."""

    gamma: float
    delta: float
    equilibria: int
    best: PayoffPair | None
    max_formula_dev: float | None


def probability_tables(scheme: SchemeParams, grid: StrategyGrid) -> np.ndarray:
    """Outcome probabilities for every grid profile, shape (4, n, n).

    Axis 0 is the outcome (OO, OT, TO, TT); entry [:, a, b] pairs Alice's
    grid point a with Bob's grid point b, both in points() order. Same math
    as payoffs_oracle, batched."""
    ops = np.stack([strategy_op(p) for p in grid.points()])
    psi0 = initial_state(scheme.gamma).reshape(2, 2)
    amps = np.einsum("aik,bjl,kl->abij", ops, ops, psi0)
    basis = measurement_basis(scheme.delta)
    probs = []
    for direction in basis.states():
        overlap = np.einsum("ij,abij->ab", direction.conj().reshape(2, 2), amps)
        probs.append(overlap.real ** 2 + overlap.imag ** 2)
    return np.stack(probs)


def payoff_tables(game: GameMatrix, scheme: SchemeParams,
                  grid: StrategyGrid) -> tuple[np.ndarray, np.ndarray]:
    """Simulated payoffs for every profile; entry [a, b] pairs Alice's grid
    point a with Bob's grid point b, both in points() order."""
    probs = probability_tables(scheme, grid)
    alice = np.einsum("o,oab->ab", game.alice_by_outcome(), probs)
    bob = np.einsum("o,oab->ab", game.bob_by_outcome(), probs)
    return alice, bob


def _certificates(alice: np.ndarray, bob: np.ndarray) -> np.ndarray:
    best_reply_a = alice.max(axis=0)  # Alice's best against each Bob point
    best_reply_b = bob.max(axis=1)    # Bob's best against each Alice point
    return np.maximum(best_reply_a[np.newaxis, :] - alice,
                      best_reply_b[:, np.newaxis] - bob)


def best_response(game: GameMatrix, scheme: SchemeParams, opponent: StrategyParams,
                  responder: str, grid: StrategyGrid) -> tuple[float, list[StrategyParams]]:
    """Exhaustive on-grid best reply for one player, the other held fixed.

    Returns the maximum payoff and every grid point within TIE_TOL of it;
    phase symmetries make genuine ties common, so the whole tie set is kept.
    """
    if responder not in ("alice", "bob"):
        raise ValueError(f"responder must be 'alice' or 'bob', got {responder!r}")
    points = grid.points()
    if responder == "alice":
        values = [payoffs_oracle(game, scheme, p, opponent).alice for p in points]
    else:
        values = [payoffs_oracle(game, scheme, opponent, p).bob for p in points]
    top = max(values)
    ties = [p for p, v in zip(points, values) if v >= top - TIE_TOL]
    return top, ties


def epsilon_nash(game: GameMatrix, scheme: SchemeParams, grid: StrategyGrid,
                 eps: float) -> list[ProfileResult]:
    """Every grid profile no player can improve by more than eps on-grid.

    Results are ordered lexicographically by grid indices (Alice's point
    first), so runs are reproducible. An empty list is a valid outcome.
    """
    if not (math.isfinite(eps) and eps >= 0):
        raise ValueError(f"eps must be nonnegative, got {eps!r}")
    alice, bob = payoff_tables(game, scheme, grid)
    cert = _certificates(alice, bob)
    points = grid.points()
    results = []
    for a, b in np.argwhere(cert <= eps):
        results.append(ProfileResult(
            s1=points[a],
            s2=points[b],
            payoffs=PayoffPair(float(alice[a, b]), float(bob[a, b])),
            eps_cert=float(cert[a, b]),
        ))
    return results


def _pair_up(gamma_values, delta_values) -> list[tuple[float, float]]:
    gammas = [float(g) for g in gamma_values]
    deltas = [float(d) for d in delta_values]
    if len(gammas) == 1 and len(deltas) > 1:
        gammas = gammas * len(deltas)
    if len(deltas) == 1 and len(gammas) > 1:
        deltas = deltas * len(gammas)
    if len(gammas) != len(deltas):
        raise ValueError(
            f"gamma and delta lists must pair up elementwise, got lengths "
            f"{len(gammas)} and {len(deltas)}"
        )
    return list(zip(gammas, deltas))


def sweep(game: GameMatrix, gamma_values, delta_values, grid: StrategyGrid,
          eps: float) -> list[SweepRow]:
    """Summaries for each (gamma, delta) pair, in input order.

    gamma_values and delta_values are paired elementwise (a singleton
    broadcasts against the other list). Each row records the equilibrium
    count, the payoff pair of the most egalitarian equilibrium (largest
    min(alice, bob), then largest sum, then first in grid order), and the
    worst observed |simulation - closed form| when the game has the
    battle-of-sexes structure.
    """
    points = grid.points()
    thetas = np.array([p.theta for p in points])
    phis = np.array([p.phi for p in points])
    rows = []
    for gamma, delta in _pair_up(gamma_values, delta_values):
        scheme = SchemeParams(gamma, delta)
        alice, bob = payoff_tables(game, scheme, grid)
        cert = _certificates(alice, bob)
        hits = np.argwhere(cert <= eps)
        best: PayoffPair | None = None
        best_key: tuple[float, float] | None = None
        for a, b in hits:
            pair = (float(alice[a, b]), float(bob[a, b]))
            key = (min(pair), pair[0] + pair[1])
            if best_key is None or key > best_key:
                best_key = key
                best = PayoffPair(*pair)
        dev: float | None = None
        if game.bos is not None:
            al, bo = _general(*game.bos, gamma, delta,
                              thetas[:, np.newaxis], phis[:, np.newaxis],
                              thetas[np.newaxis, :], phis[np.newaxis, :])
            dev = float(max(np.abs(al - alice).max(), np.abs(bo - bob).max()))
        rows.append(SweepRow(gamma=gamma, delta=delta, equilibria=int(len(hits)),
                             best=best, max_formula_dev=dev))
    return rows
