"""One-shot information functionals evaluated at fixed inputs.

Coherent information Ic(rho, N) = S(N(rho)) - S(N^c(rho)); Holevo
information I(X:B) of a classical-quantum ensemble; private information
I(X:B) - I(X:E). For flagged channels every functional is the
probability-weighted average over branches: the classical flag is copied
to both outputs, so its entropy H({p_i}) cancels between the B and E
terms.

Values may be negative; no clamping happens here (the max{.,0} in
capacity formulas lives in the bounds layer).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import channels as chn
from .channels import Channel, FlaggedChannel, StinespringChannel
from .qmat import von_neumann_entropy


@dataclass(frozen=True)
class Ensemble:
    """Classical-quantum input {(p_x, rho_x)} with a common dimension."""

    probs: tuple[float, ...]
    states: tuple[np.ndarray, ...]

    def __post_init__(self):
        if not self.states:
            raise ValueError("ensemble needs at least one member")
        if len(self.probs) != len(self.states):
            raise ValueError("probability/state count mismatch")
        if any(p <= 0 for p in self.probs):
            raise ValueError("ensemble probabilities must be positive")
        if abs(math.fsum(self.probs) - 1.0) > 1e-12:
            raise ValueError("ensemble probabilities must sum to 1")
        d = self.states[0].shape[0]
        for s in self.states:
            if s.shape != (d, d):
                raise ValueError("ensemble members must share one dimension")

    @property
    def dim(self) -> int:
        return self.states[0].shape[0]

    def average(self) -> np.ndarray:
        return sum(p * s for p, s in zip(self.probs, self.states))


def coherent_information(ch: StinespringChannel, rho: np.ndarray) -> float:
    """S(B) - S(E) in bits at the fixed input rho."""
    if rho.shape != (ch.da, ch.da):
        raise ValueError(f"input shape {rho.shape} does not match dA={ch.da}")
    sb = von_neumann_entropy(chn.apply(ch, rho))
    se = von_neumann_entropy(chn.apply_complement(ch, rho))
    return sb - se


def coherent_information_flagged(fch: FlaggedChannel, rho: np.ndarray) -> float:
    """Flag-averaged coherent information sum_i p_i [S(N_i rho) - S(N_i^c rho)]."""
    return math.fsum(
        p * coherent_information(b, rho) for p, b in zip(fch.probs, fch.branches)
    )


def coherent_information_any(ch: Channel, rho: np.ndarray) -> float:
    if isinstance(ch, FlaggedChannel):
        return coherent_information_flagged(ch, rho)
    return coherent_information(ch, rho)


def holevo_information(ch: Channel, ens: Ensemble) -> float:
    """I(X:B) = S(N(rho_bar)) - sum_x p_x S(N(rho_x)); flag-averaged for
    flagged channels."""
    if isinstance(ch, FlaggedChannel):
        return math.fsum(
            p * holevo_information(b, ens) for p, b in zip(ch.probs, ch.branches)
        )
    if ens.dim != ch.da:
        raise ValueError(f"ensemble dimension {ens.dim} does not match dA={ch.da}")
    avg = von_neumann_entropy(chn.apply(ch, ens.average()))
    members = math.fsum(
        p * von_neumann_entropy(chn.apply(ch, s))
        for p, s in zip(ens.probs, ens.states)
    )
    return avg - members


def private_information_value(ch: Channel, ens: Ensemble) -> float:
    """I(X:B) - I(X:E) at the fixed ensemble; may be negative."""
    return holevo_information(ch, ens) - holevo_information(chn.complement(ch), ens)


def q1_max_tot(val_n: float, val_nc: float) -> tuple[float, float]:
    """(max, sum) of a quantity on a channel and its complement."""
    return max(val_n, val_nc), val_n + val_nc
