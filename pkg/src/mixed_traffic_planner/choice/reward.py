"""Reward model and individual choice behavior over menus (no I/O).

Reward of option i for a user with weight θ:

    r_i = −ω₁·ℓ_i − ω₂·p_i,   ω = (1 − θ, θ)

Deterministic users pick the highest reward, ties going to the lowest index
(the fastest road, given the sorted network). Noisy users pick with softmax
probabilities exp(r_i / β) / Σ_j exp(r_j / β).
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np
from scipy import special

from mixed_traffic_planner.choice.models import (
    REWARD_TIE_TOLERANCE,
    ChoiceDistribution,
    ChoiceInterval,
    ChoiceNoise,
    Menu,
    MenuOption,
    WeightVector,
)

if TYPE_CHECKING:
    from collections.abc import Sequence


def reward(w: WeightVector, opt: MenuOption) -> float:
    """Linear reward −ω₁·ℓ − ω₂·p of one option."""
    return -w.omega_latency * opt.ell - w.omega_price * opt.price


def rewards(w: WeightVector, menu: Menu) -> np.ndarray:
    """Reward of every option on the menu."""
    ell = np.asarray(menu.latencies)
    price = np.asarray(menu.prices)
    return -w.omega_latency * ell - w.omega_price * price


def dominated_set(menu: Menu) -> frozenset[int]:
    """Indices of options that some other option beats or matches in both coordinates.

    Option i is dominated when another option j is no slower and no pricier
    and strictly better in one of the two. Among exact duplicates, the
    lowest-indexed copy survives and the others count as dominated.
    """
    dominated: set[int] = set()
    options = menu.options
    for i, oi in enumerate(options):
        for j, oj in enumerate(options):
            if i == j:
                continue
            no_worse = oj.ell <= oi.ell and oj.price <= oi.price
            strictly_better = oj.ell < oi.ell or oj.price < oi.price
            duplicate = oj.ell == oi.ell and oj.price == oi.price and j < i
            if (no_worse and strictly_better) or duplicate:
                dominated.add(i)
                break
    return frozenset(dominated)


def _first_best(values: np.ndarray) -> int:
    best = values.max()
    return int(np.argmax(values >= best - REWARD_TIE_TOLERANCE))


def choice_argmax(w: WeightVector, menu: Menu) -> int:
    """Index of the reward-maximizing option (lowest index among ties)."""
    return _first_best(rewards(w, menu))


def choice_softmax(w: WeightVector, menu: Menu, noise: ChoiceNoise) -> ChoiceDistribution:
    """Softmax choice probabilities at temperature ``noise.beta``."""
    if not noise.beta > 0:
        msg = f"Softmax choice needs beta > 0, got {noise.beta}"
        raise ValueError(msg)
    probs = special.softmax(rewards(w, menu) / noise.beta)
    return ChoiceDistribution(q=tuple(float(x) for x in probs / probs.sum()))


def indifference_points(menu: Menu) -> list[float]:
    """Sorted θ values in (0, 1) where some pair of options has equal reward.

    For options i, j the reward gap is (1 − θ)(ℓ_j − ℓ_i) − θ(p_i − p_j), which
    vanishes at θ = (ℓ_j − ℓ_i) / ((ℓ_j − ℓ_i) + (p_i − p_j)).
    """
    points: set[float] = set()
    options = menu.options
    for i in range(len(options)):
        for j in range(i + 1, len(options)):
            d_ell = options[j].ell - options[i].ell
            d_price = options[i].price - options[j].price
            denom = d_ell + d_price
            if denom == 0:
                continue
            theta = d_ell / denom
            if 0.0 < theta < 1.0:
                points.add(theta)
    return sorted(points)


def choice_intervals(menu: Menu) -> list[ChoiceInterval]:
    """Partition [0, 1] into maximal θ-intervals with a constant argmax choice.

    Walks the alternating sequence of indifference points and the open gaps
    between them, evaluates the deterministic choice on each piece and merges
    neighbours that pick the same option.
    """
    breaks = [0.0, *indifference_points(menu), 1.0]
    # Each piece: (lo, hi, option, is_point)
    pieces: list[tuple[float, float, int, bool]] = []
    for idx, b in enumerate(breaks):
        pieces.append((b, b, choice_argmax(WeightVector(b), menu), True))
        if idx + 1 < len(breaks):
            nxt = breaks[idx + 1]
            mid = 0.5 * (b + nxt)
            pieces.append((b, nxt, choice_argmax(WeightVector(mid), menu), False))

    intervals: list[ChoiceInterval] = []
    start = 0
    for idx in range(1, len(pieces) + 1):
        if idx < len(pieces) and pieces[idx][2] == pieces[start][2]:
            continue
        first, last = pieces[start], pieces[idx - 1]
        intervals.append(
            ChoiceInterval(
                lo=first[0],
                hi=last[1],
                option=first[2],
                lo_closed=first[3],
                hi_closed=last[3],
            )
        )
        start = idx
    return intervals


def option_at(intervals: Sequence[ChoiceInterval], theta: float) -> int:
    """Look up the option chosen at θ in a ``choice_intervals`` partition."""
    for interval in intervals:
        if interval.contains(theta):
            return interval.option
    msg = f"theta {theta} not covered by the interval partition"
    raise ValueError(msg)


def choose_many(
    thetas: np.ndarray, menu: Menu, noise: ChoiceNoise, rng: np.random.Generator
) -> np.ndarray:
    """Vectorised choices for many users (same rules as ``sample_user_choice``)."""
    thetas = np.asarray(thetas, dtype=float)
    ell = np.asarray(menu.latencies)
    price = np.asarray(menu.prices)
    table = -(1.0 - thetas)[:, None] * ell[None, :] - thetas[:, None] * price[None, :]
    if not noise.is_noisy:
        best = table.max(axis=1, keepdims=True)
        return np.argmax(table >= best - REWARD_TIE_TOLERANCE, axis=1)
    probs = special.softmax(table / noise.beta, axis=1)
    cumulative = np.cumsum(probs, axis=1)
    draws = rng.random(len(thetas))[:, None]
    picks = (cumulative < draws).sum(axis=1)
    return np.minimum(picks, len(menu) - 1)


def sample_user_choice(w: WeightVector, menu: Menu, noise: ChoiceNoise, rng_seed: int) -> int:
    """One user's choice; deterministic mode ignores the seed."""
    if not noise.is_noisy:
        return choice_argmax(w, menu)
    rng = np.random.default_rng(rng_seed)
    probs = np.asarray(choice_softmax(w, menu, noise).q)
    return int(rng.choice(len(menu), p=probs))
