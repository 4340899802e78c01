"""Prefix-code construction around a smoothed source.

The flag-bit construction codes the support of the smoothing truncation Q:
a tilted copy of Q fixes integer codeword lengths, canonical assignment turns
lengths into binary words, and each symbol x is accepted with probability
Q(x)/P(x). Accepted symbols emit '0' followed by their inner word, everything
else emits the single-bit reject word '1'.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .distributions import Distribution, WeightedAtom
from .errors import KraftViolated, check_lambda
from .logspace import LN2, logsumexp
from .smooth_renyi import SubDistribution, optimal_smoothing

# -log2(q) this close to an integer snaps to it instead of rounding up, so
# exact powers of two are not bumped a full bit by float noise
LENGTH_SNAP = 1e-9


@dataclass(frozen=True)
class TiltedDistribution:
    """Power-tilted and renormalized copy of a sub-distribution's support.

    Atoms mirror the source atoms (same multiplicities and order); log_prob
    holds the tilted probability of a single symbol at that level.
    """

    atoms: tuple[WeightedAtom, ...]
    lam: float

    @property
    def support_size(self) -> int:
        return sum(a.multiplicity for a in self.atoms)


def _tilt_atoms(atoms: Sequence[WeightedAtom], lam: float) -> TiltedDistribution:
    beta = 1.0 / (1.0 + lam)
    norm = logsumexp(math.log(a.multiplicity) + beta * a.log_prob for a in atoms)
    tilted = tuple(
        WeightedAtom(beta * a.log_prob - norm, a.multiplicity, a.tag) for a in atoms
    )
    return TiltedDistribution(tilted, lam)


def tilted_distribution(sub: SubDistribution, lam: float) -> TiltedDistribution:
    """Normalize Q**(1/(1+lam)) over the support of the sub-distribution Q."""
    check_lambda(lam)
    return _tilt_atoms(sub.atoms, lam)


def _length_bits(log_qt: float) -> int:
    x = -log_qt / LN2
    nearest = round(x)
    if abs(x - nearest) <= LENGTH_SNAP:
        return max(int(nearest), 0)
    return max(math.ceil(x), 0)


def shannon_lengths(tilted: TiltedDistribution) -> list[int]:
    """Per-symbol codeword lengths in bits: -log2 of the tilted probability, rounded up."""
    out: list[int] = []
    for a in tilted.atoms:
        out.extend([_length_bits(a.log_prob)] * a.multiplicity)
    return out


def ideal_real_lengths(sub: SubDistribution, lam: float) -> list[float]:
    """Real-valued lengths in nats that minimize the tilted average length.

    These are -log of the tilted probabilities, so they satisfy the Kraft
    condition with equality: sum(exp(-length)) == 1.
    """
    check_lambda(lam)
    tilted = _tilt_atoms(sub.atoms, lam)
    out: list[float] = []
    for a in tilted.atoms:
        out.extend([-a.log_prob] * a.multiplicity)
    return out


@dataclass(frozen=True)
class PrefixCode:
    """Binary codewords, one per symbol, no word a prefix of another."""

    codewords: tuple[str, ...]

    @property
    def lengths_bits(self) -> tuple[int, ...]:
        return tuple(len(w) for w in self.codewords)

    def kraft_sum(self) -> float:
        return math.fsum(2.0 ** -len(w) for w in self.codewords)

    def is_prefix_free(self) -> bool:
        words = sorted(self.codewords)
        return not any(b.startswith(a) for a, b in zip(words, words[1:]))


def assign_canonical_codewords(lengths_bits: Sequence[int]) -> PrefixCode:
    """First-fit codeword assignment in nondecreasing length order.

    Sorting the requested lengths ascending, each word is the numerically
    smallest string of its length that extends no earlier word; ties keep the
    input order. Raises KraftViolated when the lengths do not fit, detected
    exactly in integer arithmetic. A single length-0 request yields the empty
    word.
    """
    lengths = list(lengths_bits)
    if any(l < 0 or int(l) != l for l in lengths):
        raise ValueError("codeword lengths must be nonnegative integers")
    order = sorted(range(len(lengths)), key=lambda i: lengths[i])
    words: list[str] = [""] * len(lengths)
    value = 0
    prev_len: int | None = None
    for i in order:
        l = lengths[i]
        if prev_len is not None:
            value = (value + 1) << (l - prev_len)
        if value >= (1 << l):
            raise KraftViolated(f"lengths {sorted(lengths)} overfill the binary tree")
        words[i] = format(value, f"0{l}b") if l > 0 else ""
        prev_len = l
    return PrefixCode(tuple(words))


@dataclass(frozen=True)
class StochasticCode:
    """Flag-bit code: accepted symbols emit '0' + inner word, rejects emit '1'.

    Symbol i (in the distribution's sorted order) is accepted with probability
    gamma[i]; only the leading len(inner) symbols can be accepted and carry an
    inner codeword. The reject word decodes to decoder_for_reject, the symbol
    whose rejected mass is largest.
    """

    gamma: tuple[float, ...]
    inner: PrefixCode
    decoder_for_reject: int
    reject: str = "1"

    @property
    def num_symbols(self) -> int:
        return len(self.gamma)

    @property
    def is_deterministic(self) -> bool:
        return all(g in (0.0, 1.0) for g in self.gamma)

    def accept_word(self, i: int) -> str | None:
        if 0 <= i < len(self.inner.codewords):
            return "0" + self.inner.codewords[i]
        return None

    def accept_length_bits(self, i: int) -> int | None:
        if 0 <= i < len(self.inner.codewords):
            return 1 + len(self.inner.codewords[i])
        return None

    def decode(self, word: str) -> int:
        if word == self.reject:
            return self.decoder_for_reject
        if word.startswith("0"):
            inner = word[1:]
            if inner in self.inner.codewords:
                return self.inner.codewords.index(inner)
        raise ValueError(f"not a codeword: {word!r}")


@dataclass(frozen=True)
class DeterministicCode(StochasticCode):
    """Flag-bit code whose acceptance probabilities are all 0 or 1."""


def _assemble(
    cls,
    probs: list[float],
    atoms: Sequence[WeightedAtom],
    gamma: list[float],
    lam: float,
) -> StochasticCode:
    if atoms:
        tilted = _tilt_atoms(atoms, lam)
        lengths = shannon_lengths(tilted)
        inner = assign_canonical_codewords(lengths)
    else:
        inner = PrefixCode(())
    decoder = 0
    best = probs[0] * (1.0 - gamma[0])
    for i, (p, g) in enumerate(zip(probs, gamma)):
        rejected = p * (1.0 - g)
        if rejected > best:
            best = rejected
            decoder = i
    return cls(gamma=tuple(gamma), inner=inner, decoder_for_reject=decoder)


def build_stochastic_code(
    dist: Distribution, eps: float, lam: float, cap: int | None = None
) -> StochasticCode:
    """Flag-bit code for the smoothing truncation at budget eps.

    The k_star - 1 most probable symbols are always accepted, the boundary
    symbol is accepted with probability gamma_eps / P(boundary), and the rest
    always reject. Credited error probability stays within eps.
    """
    check_lambda(lam)
    sub = optimal_smoothing(dist, eps)
    probs = dist.probabilities(cap)
    boundary_p = probs[sub.k_star - 1]
    gamma_b = 1.0 if boundary_p == 0.0 else min(sub.gamma_eps / boundary_p, 1.0)
    gamma = [1.0] * (sub.k_star - 1) + [gamma_b] + [0.0] * (len(probs) - sub.k_star)
    return _assemble(StochasticCode, probs, sub.atoms, gamma, lam)


def build_deterministic_code(
    dist: Distribution, eps: float, lam: float, cap: int | None = None
) -> DeterministicCode:
    """All-or-nothing variant: only the k_star - 1 most probable symbols are coded.

    Dropping the boundary symbol entirely raises the error probability to
    exactly eps + gamma_eps of the smoothing truncation at budget eps.
    """
    check_lambda(lam)
    sub = optimal_smoothing(dist, eps)
    probs = dist.probabilities(cap)
    kept = sub.atoms[:-1]  # everything except the clipped boundary symbol
    gamma = [1.0] * (sub.k_star - 1) + [0.0] * (len(probs) - sub.k_star + 1)
    return _assemble(DeterministicCode, probs, kept, gamma, lam)


def codebook_to_json(code: StochasticCode) -> dict:
    """Wire format: reject word, decode target, and per-symbol codeword + gamma."""
    entries = []
    for i, g in enumerate(code.gamma):
        entries.append({"codeword": code.accept_word(i), "gamma": g})
    return {
        "reject": code.reject,
        "decoder_for_reject": code.decoder_for_reject,
        "entries": entries,
    }


def codebook_from_json(obj: dict) -> StochasticCode:
    """Rebuild a code from its wire format, revalidating the prefix property."""
    entries = obj["entries"]
    if not entries:
        raise ValueError("codebook has no entries")
    reject = str(obj["reject"])
    gamma = []
    inner_words = []
    for i, e in enumerate(entries):
        g = float(e["gamma"])
        if not 0.0 <= g <= 1.0:
            raise ValueError(f"gamma out of [0, 1] at entry {i}")
        word = e["codeword"]
        if word is None:
            if g > 0.0:
                raise ValueError(f"entry {i} can be accepted but has no codeword")
        else:
            if len(inner_words) != i:
                raise ValueError("coded symbols must form a leading block of the entries")
            if not word.startswith("0"):
                raise ValueError(f"accept codeword must start with the flag bit '0': {word!r}")
            inner_words.append(word[1:])
        gamma.append(g)
    inner = PrefixCode(tuple(inner_words))
    full = PrefixCode(tuple("0" + w for w in inner_words) + (reject,))
    if not full.is_prefix_free():
        raise KraftViolated("codebook words are not prefix-free")
    decoder = int(obj.get("decoder_for_reject", 0))
    if not 0 <= decoder < len(entries):
        raise ValueError("decoder_for_reject out of range")
    cls = DeterministicCode if all(g in (0.0, 1.0) for g in gamma) else StochasticCode
    return cls(gamma=tuple(gamma), inner=inner, decoder_for_reject=decoder, reject=reject)
