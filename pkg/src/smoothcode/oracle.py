"""Exhaustive and randomized ground truth for small instances.

Nothing here shares logic with the constructive modules: the code search
enumerates raw prefix codes and the smoothing search samples the ball
directly, so their results can referee the closed-form implementations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .codes import assign_canonical_codewords
from .distributions import Distribution
from .errors import Infeasible, TooLarge, check_alpha, check_eps, check_lambda


@dataclass(frozen=True)
class OracleResult:
    """Best deterministic code found by exhaustive search."""

    best_moment: float
    encoder: tuple[str, ...]
    decoder: dict[str, int]
    search_space_size: int


def enumerate_kraft_length_multisets(
    k: int, max_len: int, *, max_k: int = 8, max_len_cap: int = 8
) -> list[tuple[int, ...]]:
    """All nondecreasing tuples of k codeword lengths satisfying Kraft.

    Checked in exact integer arithmetic (each length l consumes 2**(max_len-l)
    leaves of the depth-max_len tree). A one-word code may use the empty word,
    so k == 1 also yields (0,).
    """
    if k > max_k or max_len > max_len_cap:
        raise TooLarge(f"search limited to k <= {max_k}, max_len <= {max_len_cap}")
    if k < 1 or max_len < 1:
        raise ValueError("need k >= 1 and max_len >= 1")
    out: list[tuple[int, ...]] = []
    if k == 1:
        out.append((0,))
    scale = 1 << max_len
    def rec(prefix: list[int], lo: int, used: int) -> None:
        if len(prefix) == k:
            out.append(tuple(prefix))
            return
        for l in range(lo, max_len + 1):
            cost = scale >> l
            if used + cost <= scale:
                prefix.append(l)
                rec(prefix, l, used + cost)
                prefix.pop()
    rec([], 1, 0)
    return out


def optimal_code_bruteforce(
    dist: Distribution,
    eps: float,
    lam: float,
    max_len: int = 5,
    *,
    max_support: int = 5,
) -> OracleResult:
    """Minimum moment over all deterministic prefix codes within the error budget.

    Enumerates the number of codewords, every Kraft-feasible length multiset
    up to max_len, the canonical word set for each, and every surjective
    symbol-to-word assignment. Decoding maps each word to its most probable
    preimage, which is the error-minimizing decoder; a code is admissible when
    that credited error is at most eps (with 1e-12 float slack).
    """
    check_eps(eps)
    check_lambda(lam)
    probs = dist.probabilities()
    s = len(probs)
    if s > max_support:
        raise TooLarge(f"brute force limited to support {max_support}, got {s}")
    total = math.fsum(probs)

    best_moment = math.inf
    best_assign: tuple[int, ...] | None = None
    best_words: tuple[str, ...] | None = None
    space = 0
    for c in range(1, s + 1):
        for lengths in enumerate_kraft_length_multisets(c, max_len, max_k=max_support):
            words = assign_canonical_codewords(lengths).codewords
            weight = [2.0 ** (lam * l) for l in lengths]
            for assign in product(range(c), repeat=s):
                if len(set(assign)) != c:
                    continue  # every codeword must be used
                space += 1
                survivors = [0.0] * c
                for i, a in enumerate(assign):
                    if probs[i] > survivors[a]:
                        survivors[a] = probs[i]
                error = total - math.fsum(survivors)
                if error > eps + 1e-12:
                    continue
                moment = math.fsum(probs[i] * weight[a] for i, a in enumerate(assign))
                if moment < best_moment:
                    best_moment = moment
                    best_assign = assign
                    best_words = words
    if best_assign is None:
        raise Infeasible(f"no code with at most {max_len}-bit words meets eps={eps}")

    encoder = tuple(best_words[a] for a in best_assign)
    decoder: dict[str, int] = {}
    for j, w in enumerate(best_words):
        group = [i for i, a in enumerate(best_assign) if a == j]
        decoder[w] = max(group, key=lambda i: probs[i])
    return OracleResult(
        best_moment=best_moment,
        encoder=encoder,
        decoder=decoder,
        search_space_size=space,
    )


def smoothing_feasible_search(
    dist: Distribution,
    alpha: float,
    eps: float,
    trials: int = 1000,
    seed: int = 0,
    *,
    max_support: int = 16,
) -> float:
    """Minimum of sum(Q**alpha) over random members of the smoothing ball.

    Each trial removes a uniformly drawn total amount of mass (at most eps),
    split across symbols by random proportions and clipped at zero, so every
    draw is feasible by construction. eps = 0 returns sum(P**alpha) exactly.
    """
    check_alpha(alpha)
    check_eps(eps)
    probs = np.asarray(dist.probabilities(), dtype=float)
    if probs.size > max_support:
        raise TooLarge(f"random search limited to support {max_support}")
    best = float(np.sum(probs**alpha))  # Q = P is always in the ball
    if trials < 1 or eps == 0.0:
        return best
    rng = np.random.default_rng(seed)
    removed = rng.uniform(0.0, eps, size=trials)
    shares = rng.random((trials, probs.size))
    shares /= shares.sum(axis=1, keepdims=True)
    q = np.maximum(probs[None, :] - removed[:, None] * shares, 0.0)
    return min(best, float(np.sum(q**alpha, axis=1).min()))
