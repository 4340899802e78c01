"""Finite distributions stored as weighted atoms in the log domain.

An atom groups every symbol that shares one probability: it keeps the
natural-log probability of a single symbol together with the exact count of
symbols at that level. Product and mixture extensions of a base alphabet stay
compact this way, because all sequences in a type class have the same
probability and the class collapses to one atom whose multiplicity is an
exact multinomial count.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import BadMixture, EmptyDistribution, NotNormalized, TooLarge
from .logspace import logsumexp

MASS_TOL = 1e-9
# two probability levels merge into one atom iff their log-probs are this close
MERGE_TOL = 1e-12
DEFAULT_ATOM_CAP = 2_000_000


def atom_cap() -> int:
    """Size cap for expansions and type-class enumerations.

    Reads the SMOOTHCODE_CAP environment variable, falling back to 2_000_000.
    """
    raw = os.environ.get("SMOOTHCODE_CAP")
    if raw is None:
        return DEFAULT_ATOM_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ValueError(f"SMOOTHCODE_CAP must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise ValueError("SMOOTHCODE_CAP must be >= 1")
    return cap


@dataclass(frozen=True)
class WeightedAtom:
    """One probability level: log-prob of a single symbol and how many symbols share it."""

    log_prob: float
    multiplicity: int
    tag: int | None = None

    def log_mass(self) -> float:
        return math.log(self.multiplicity) + self.log_prob

    def mass(self) -> float:
        return math.exp(self.log_mass())


@dataclass(frozen=True)
class Distribution:
    """A finite distribution as atoms sorted by strictly decreasing log-prob.

    `n` is the blocklength the distribution lives on (1 for a single letter).
    """

    atoms: tuple[WeightedAtom, ...]
    n: int = 1

    def __post_init__(self) -> None:
        if not self.atoms:
            raise EmptyDistribution("distribution needs at least one atom")
        for a, b in zip(self.atoms, self.atoms[1:]):
            if not a.log_prob > b.log_prob:
                raise NotNormalized("atoms must be sorted by strictly decreasing log-prob")
        for a in self.atoms:
            if a.multiplicity < 1:
                raise NotNormalized("atom multiplicities must be >= 1")

    @property
    def support_size(self) -> int:
        return sum(a.multiplicity for a in self.atoms)

    def log_total_mass(self) -> float:
        return logsumexp(a.log_mass() for a in self.atoms)

    def total_mass(self) -> float:
        return math.exp(self.log_total_mass())

    def probabilities(self, cap: int | None = None) -> list[float]:
        """Expand to one probability per symbol, largest first."""
        cap = atom_cap() if cap is None else cap
        if self.support_size > cap:
            raise TooLarge(f"support of size {self.support_size} exceeds cap {cap}")
        out: list[float] = []
        for a in self.atoms:
            out.extend([math.exp(a.log_prob)] * a.multiplicity)
        return out


def _normalize_atoms(entries: Sequence[tuple[float, int, int | None]]) -> tuple[WeightedAtom, ...]:
    """Sort (log_prob, multiplicity, tag) triples descending and merge equal levels.

    Ties across merged levels keep the smallest tag (enumeration order) as the
    representative, so rebuilding from the same inputs is deterministic.
    """
    keyed = sorted(
        enumerate(entries),
        key=lambda item: (-item[1][0], item[1][2] if item[1][2] is not None else item[0]),
    )
    merged: list[list] = []
    for _, (lp, mult, tag) in keyed:
        if merged and abs(lp - merged[-1][0]) <= MERGE_TOL:
            merged[-1][1] += mult
        else:
            merged.append([lp, mult, tag])
    return tuple(WeightedAtom(lp, mult, tag) for lp, mult, tag in merged)


def _check_mass(dist: Distribution) -> Distribution:
    total = dist.total_mass()
    if abs(total - 1.0) > MASS_TOL:
        raise NotNormalized(f"total mass is {total!r}, expected 1 within {MASS_TOL}")
    return dist


def new_distribution(probs: Sequence[float]) -> Distribution:
    """Build a single-letter distribution from raw probabilities.

    Zero entries are dropped, equal probabilities merge into one atom, and
    atoms come out sorted with the largest probability first.
    """
    probs = [float(p) for p in probs]
    if any(p < 0.0 for p in probs):
        raise NotNormalized("negative probability entry")
    entries = [(math.log(p), 1, None) for p in probs if p > 0.0]
    if not entries:
        raise EmptyDistribution("no strictly positive probability entry")
    total = math.fsum(probs)
    if abs(total - 1.0) > MASS_TOL:
        raise NotNormalized(f"probabilities sum to {total!r}, expected 1")
    return Distribution(_normalize_atoms(entries), n=1)


def distribution_from_atoms(pairs: Sequence[tuple[float, int]], n: int = 1) -> Distribution:
    """Build a distribution from (log_prob, multiplicity) pairs, validating total mass."""
    entries: list[tuple[float, int, int | None]] = []
    for lp, mult in pairs:
        lp = float(lp)
        if not math.isfinite(lp) or lp > 0.0:
            raise NotNormalized(f"log-probabilities must be finite and <= 0, got {lp!r}")
        if int(mult) != mult or mult < 1:
            raise NotNormalized(f"multiplicities must be positive integers, got {mult!r}")
        entries.append((lp, int(mult), None))
    if not entries:
        raise EmptyDistribution("no atoms supplied")
    return _check_mass(Distribution(_normalize_atoms(entries), n=n))


def shannon_entropy(probs: Sequence[float]) -> float:
    """Shannon entropy in nats, with 0 log(1/0) read as 0."""
    probs = [float(p) for p in probs]
    if any(p < 0.0 for p in probs):
        raise NotNormalized("negative probability entry")
    total = math.fsum(probs)
    if abs(total - 1.0) > MASS_TOL:
        raise NotNormalized(f"probabilities sum to {total!r}, expected 1")
    return -math.fsum(p * math.log(p) for p in probs if p > 0.0)


@dataclass(frozen=True)
class MixtureComponent:
    weight: float
    probs: tuple[float, ...]


@dataclass(frozen=True)
class MixtureSpec:
    """Mixture of memoryless components over one shared finite alphabet.

    Components must be listed with strictly decreasing Shannon entropy; the
    limit theory for the mixture reads off intervals of cumulative weight, and
    that bookkeeping needs the order fixed up front.
    """

    components: tuple[MixtureComponent, ...]

    def __post_init__(self) -> None:
        if not self.components:
            raise BadMixture("mixture needs at least one component")
        k = len(self.components[0].probs)
        for comp in self.components:
            if len(comp.probs) != k:
                raise BadMixture("all components must share one alphabet size")
            if not 0.0 < comp.weight <= 1.0:
                raise BadMixture("component weights must lie in (0, 1]")
            if any(p < 0.0 for p in comp.probs):
                raise BadMixture("negative component probability")
            if abs(math.fsum(comp.probs) - 1.0) > 1e-12:
                raise BadMixture("component probabilities must sum to 1 within 1e-12")
        if abs(math.fsum(c.weight for c in self.components) - 1.0) > 1e-12:
            raise BadMixture("component weights must sum to 1 within 1e-12")
        ents = self.component_entropies()
        for a, b in zip(ents, ents[1:]):
            if not a > b:
                raise BadMixture("component entropies must be strictly decreasing")

    @property
    def alphabet_size(self) -> int:
        return len(self.components[0].probs)

    def component_entropies(self) -> list[float]:
        """Shannon entropy of each component, in nats."""
        return [shannon_entropy(c.probs) for c in self.components]

    def cumulative_weights(self) -> list[float]:
        """Prefix sums of the weights: first entry 0, last entry exactly 1."""
        acc = [0.0]
        for c in self.components:
            acc.append(acc[-1] + c.weight)
        acc[-1] = 1.0
        return acc


def mixture_spec(pairs: Sequence[tuple[float, Sequence[float]]]) -> MixtureSpec:
    """Build a MixtureSpec from (weight, probs) pairs."""
    return MixtureSpec(
        tuple(MixtureComponent(float(w), tuple(float(p) for p in ps)) for w, ps in pairs)
    )


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All ways to split `total` into `parts` nonnegative ordered counts."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def _multinomial(n: int, counts: Sequence[int]) -> int:
    """Exact number of length-n sequences with the given per-bin counts."""
    coef = 1
    rem = n
    for c in counts:
        coef *= math.comb(rem, c)
        rem -= c
    return coef


def _guard_class_count(n: int, bins: int, cap: int | None) -> int:
    cap = atom_cap() if cap is None else cap
    n_classes = math.comb(n + bins - 1, bins - 1)
    if n_classes > cap:
        raise TooLarge(f"{n_classes} type classes at blocklength {n} exceed cap {cap}")
    return cap


def iid_extension(base: Distribution, n: int, cap: int | None = None) -> Distribution:
    """n-fold product of a single-letter distribution, one atom per type class.

    A type class records how many of the n positions land in each probability
    level of the base; every sequence in a class has the same probability, and
    the class size is an exact product of a multinomial coefficient with the
    level multiplicities.
    """
    if base.n != 1:
        raise ValueError("base distribution must live on a single letter (n = 1)")
    if n < 1:
        raise ValueError("blocklength must be >= 1")
    if n == 1:
        return base
    levels = base.atoms
    _guard_class_count(n, len(levels), cap)
    entries: list[tuple[float, int, int | None]] = []
    for idx, counts in enumerate(_compositions(n, len(levels))):
        lp = math.fsum(c * a.log_prob for c, a in zip(counts, levels))
        mult = _multinomial(n, counts)
        for c, a in zip(counts, levels):
            if a.multiplicity > 1:
                mult *= a.multiplicity**c
        entries.append((lp, mult, idx))
    return _check_mass(Distribution(_normalize_atoms(entries), n=n))


def mixture_extension(spec: MixtureSpec, n: int, cap: int | None = None) -> Distribution:
    """Blocklength-n distribution of a mixture of memoryless components.

    The probability of a sequence depends only on its symbol counts, so one
    atom per type class over the shared alphabet; classes whose mixture
    probabilities coincide merge into a single atom.
    """
    if n < 1:
        raise ValueError("blocklength must be >= 1")
    k = spec.alphabet_size
    _guard_class_count(n, k, cap)
    log_w = [math.log(c.weight) for c in spec.components]
    log_p = [
        [math.log(p) if p > 0.0 else -math.inf for p in c.probs] for c in spec.components
    ]
    entries: list[tuple[float, int, int | None]] = []
    for idx, counts in enumerate(_compositions(n, k)):
        per_comp = []
        for lw, lps in zip(log_w, log_p):
            s = 0.0
            for c, lq in zip(counts, lps):
                if c == 0:
                    continue
                if lq == -math.inf:
                    s = -math.inf
                    break
                s += c * lq
            if s != -math.inf:
                per_comp.append(lw + s)
        if not per_comp:
            continue  # zero probability under every component
        entries.append((logsumexp(per_comp), _multinomial(n, counts), idx))
    if not entries:
        raise EmptyDistribution("mixture extension has empty support")
    return _check_mass(Distribution(_normalize_atoms(entries), n=n))


def distribution_from_json(obj: dict) -> Distribution:
    """Read either {"probs": [...]} or {"atoms": [{"log_prob": r, "multiplicity": k}, ...]}."""
    if "probs" in obj:
        return new_distribution(obj["probs"])
    if "atoms" in obj:
        pairs = [(a["log_prob"], a["multiplicity"]) for a in obj["atoms"]]
        return distribution_from_atoms(pairs, n=int(obj.get("n", 1)))
    raise NotNormalized("distribution JSON needs a 'probs' or 'atoms' key")


def mixture_from_json(obj: dict) -> MixtureSpec:
    """Read {"components": [{"weight": w, "probs": [...]}, ...]}."""
    comps = obj.get("components")
    if not comps:
        raise BadMixture("mixture JSON needs a nonempty 'components' list")
    return mixture_spec([(c["weight"], c["probs"]) for c in comps])
