"""Channels as Stinespring isometries: constructors and combinators.

A channel is stored as its isometry V: H_A -> H_B (x) H_E with the row
index convention b*dE + e (B-major). The complementary channel is a
pure bookkeeping operation: swap the roles of B and E in the row index.

A :class:`FlaggedChannel` is a finite probability-weighted family of
Stinespring channels whose classical branch label is delivered to both
the receiver and the environment (used for the rocket channel's random
local unitaries).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import qmat

ISO_TOL = 1e-12


@dataclass(frozen=True)
class StinespringChannel:
    isometry: np.ndarray  # shape (db*de, da), row index b*de + e
    da: int
    db: int
    de: int
    label: str = ""

    def __post_init__(self):
        v = self.isometry
        if v.shape != (self.db * self.de, self.da):
            raise ValueError(
                f"isometry shape {v.shape} does not match dims "
                f"({self.db}*{self.de}, {self.da})"
            )
        gram = v.conj().T @ v
        if np.abs(gram - np.eye(self.da)).max() > ISO_TOL:
            raise ValueError("V^dag V != I within 1e-12; not an isometry")

    @property
    def v3(self) -> np.ndarray:
        """Isometry reshaped to (db, de, da)."""
        return self.isometry.reshape(self.db, self.de, self.da)


@dataclass(frozen=True)
class FlaggedChannel:
    probs: tuple[float, ...]
    branches: tuple[StinespringChannel, ...]

    def __post_init__(self):
        if not self.branches:
            raise ValueError("flagged channel needs at least one branch")
        if len(self.probs) != len(self.branches):
            raise ValueError("probability/branch count mismatch")
        if any(p <= 0 for p in self.probs):
            raise ValueError("branch probabilities must be positive")
        if abs(math.fsum(self.probs) - 1.0) > 1e-12:
            raise ValueError("branch probabilities must sum to 1")
        b0 = self.branches[0]
        for b in self.branches[1:]:
            if (b.da, b.db, b.de) != (b0.da, b0.db, b0.de):
                raise ValueError("all branches must share the same dimensions")

    @property
    def da(self) -> int:
        return self.branches[0].da

    @property
    def db(self) -> int:
        return self.branches[0].db

    @property
    def de(self) -> int:
        return self.branches[0].de


Channel = StinespringChannel | FlaggedChannel


# ---------------------------------------------------------------------------
# constructors

def make_erasure(p: float, d: int) -> StinespringChannel:
    """Erasure channel E_{p,d}: input kept with probability 1-p, else
    replaced by the flag state |e> = |d> orthogonal to the input space.

    Dilation: V|psi> = sqrt(1-p)|psi>_B|e>_E + sqrt(p)|e>_B|psi>_E, which
    makes the complement literally the erasure channel with p -> 1-p.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"erasure probability {p} outside [0,1]")
    if d < 2:
        raise ValueError("erasure needs d >= 2")
    dd = d + 1
    qmat.check_cap(d, dd)
    v3 = np.zeros((dd, dd, d), dtype=complex)
    for a in range(d):
        v3[a, d, a] = math.sqrt(1.0 - p)
        v3[d, a, a] = math.sqrt(p)
    return StinespringChannel(v3.reshape(dd * dd, d), d, dd, dd, f"erasure(p={p},d={d})")


def make_platypus(d: int) -> StinespringChannel:
    """Platypus channel M_d on a d-dimensional input:
    V|0> = (d-1)^{-1/2} sum_j |j>_B|j>_E (j < d-1), V|i> = |d-1>_B|i-1>_E.
    """
    if d < 2:
        raise ValueError("platypus needs d >= 2")
    qmat.check_cap(d)
    v3 = np.zeros((d, d - 1, d), dtype=complex)
    for j in range(d - 1):
        v3[j, j, 0] = 1.0 / math.sqrt(d - 1)
    for i in range(1, d):
        v3[d - 1, i - 1, i] = 1.0
    return StinespringChannel(v3.reshape(d * (d - 1), d), d, d, d - 1, f"platypus(d={d})")


def _check_unitary(u: np.ndarray, d: int) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    if u.shape != (d, d) or np.abs(u @ u.conj().T - np.eye(d)).max() > 1e-12:
        raise ValueError("not a d x d unitary within 1e-12")
    return u


def make_rocket_instance(d: int, u: np.ndarray, v: np.ndarray) -> StinespringChannel:
    """One instance of the rocket channel at fixed local unitaries (u, v).

    Inputs A1 (x) A2 are scrambled by u (x) v, coupled by the controlled
    phase P = sum_{ij} w^{ij} |i><i| (x) |j><j| with w = exp(i 2 pi / d),
    then A1 is routed to B and A2 to E. The classical (u, v) label is not
    stored here; see make_rocket_flagged.
    """
    u = _check_unitary(u, d)
    v = _check_unitary(v, d)
    qmat.check_cap(d * d)
    omega = cmath.exp(2j * math.pi / d)
    phases = np.array(
        [omega ** (i * j) for i in range(d) for j in range(d)], dtype=complex
    )
    w = phases[:, None] * np.kron(u, v)
    # rows of w are already (i*d + j) = b*de + e with b = A1, e = A2
    return StinespringChannel(w, d * d, d, d, f"rocket(d={d})")


def make_rocket_flagged(
    d: int, unitaries: list[tuple[np.ndarray, np.ndarray]]
) -> FlaggedChannel:
    """Rocket channel as a uniform flagged family over (u, v) pairs."""
    if not unitaries:
        raise ValueError("rocket needs a nonempty list of unitary pairs")
    n = len(unitaries)
    branches = tuple(make_rocket_instance(d, u, v) for u, v in unitaries)
    return FlaggedChannel(tuple(1.0 / n for _ in range(n)), branches)


# ---------------------------------------------------------------------------
# combinators

def complement(ch: Channel) -> Channel:
    """Swap the B and E output roles. Exact involution on the stored array."""
    if isinstance(ch, FlaggedChannel):
        return FlaggedChannel(ch.probs, tuple(complement(b) for b in ch.branches))
    v3 = ch.v3.swapaxes(0, 1)
    label = ch.label[5:-1] if ch.label.startswith("comp(") else f"comp({ch.label})"
    return StinespringChannel(
        v3.reshape(ch.de * ch.db, ch.da), ch.da, ch.de, ch.db, label
    )


def tensor(ch1: Channel, ch2: Channel) -> Channel:
    """Parallel composition; outputs reordered to (B1 B2)(E1 E2)."""
    if isinstance(ch1, FlaggedChannel) or isinstance(ch2, FlaggedChannel):
        return _combine_flagged(ch1, ch2, tensor)
    qmat.check_cap(ch1.da * ch2.da, ch1.db * ch2.db, ch1.de * ch2.de)
    v = np.kron(ch1.isometry, ch2.isometry)
    v = v.reshape(ch1.db, ch1.de, ch2.db, ch2.de, ch1.da * ch2.da)
    v = v.transpose(0, 2, 1, 3, 4)
    db, de = ch1.db * ch2.db, ch1.de * ch2.de
    return StinespringChannel(
        v.reshape(db * de, ch1.da * ch2.da),
        ch1.da * ch2.da,
        db,
        de,
        f"tensor({ch1.label},{ch2.label})",
    )


def direct_sum(ch1: Channel, ch2: Channel) -> Channel:
    """Block-diagonal combination; off-diagonal input blocks are zeroed."""
    if isinstance(ch1, FlaggedChannel) or isinstance(ch2, FlaggedChannel):
        return _combine_flagged(ch1, ch2, direct_sum)
    da, db, de = ch1.da + ch2.da, ch1.db + ch2.db, ch1.de + ch2.de
    qmat.check_cap(da, db, de)
    v3 = np.zeros((db, de, da), dtype=complex)
    v3[: ch1.db, : ch1.de, : ch1.da] = ch1.v3
    v3[ch1.db :, ch1.de :, ch1.da :] = ch2.v3
    return StinespringChannel(
        v3.reshape(db * de, da), da, db, de, f"dsum({ch1.label},{ch2.label})"
    )


def _as_flagged(ch: Channel) -> FlaggedChannel:
    if isinstance(ch, FlaggedChannel):
        return ch
    return FlaggedChannel((1.0,), (ch,))


def _combine_flagged(ch1: Channel, ch2: Channel, op) -> FlaggedChannel:
    # the classical flag is input-independent, so combinators distribute
    # over branches (product distribution for two flagged factors)
    f1, f2 = _as_flagged(ch1), _as_flagged(ch2)
    probs = []
    branches = []
    for p1, b1 in zip(f1.probs, f1.branches):
        for p2, b2 in zip(f2.probs, f2.branches):
            probs.append(p1 * p2)
            branches.append(op(b1, b2))
    return FlaggedChannel(tuple(probs), tuple(branches))


# ---------------------------------------------------------------------------
# action

def apply(ch: Channel, x: np.ndarray) -> np.ndarray:
    """N(X) = Tr_E(V X V^dag). Accepts any operator on H_A."""
    if isinstance(ch, FlaggedChannel):
        return apply_flagged(ch, x)
    x = np.asarray(x, dtype=complex)
    if x.shape != (ch.da, ch.da):
        raise ValueError(f"input shape {x.shape} does not match dA={ch.da}")
    t = (ch.isometry @ x).reshape(ch.db, ch.de, ch.da)
    return np.tensordot(t, ch.v3.conj(), axes=([1, 2], [1, 2]))


def apply_complement(ch: Channel, x: np.ndarray) -> np.ndarray:
    """N^c(X) = Tr_B(V X V^dag)."""
    return apply(complement(ch), x)


def apply_flagged(fch: FlaggedChannel, x: np.ndarray) -> np.ndarray:
    """Block-diagonal (flag-indexed) mixture sum_i p_i |i><i| (x) N_i(X)."""
    nb = len(fch.branches)
    db = fch.db
    qmat.check_cap(nb * db)
    out = np.zeros((nb * db, nb * db), dtype=complex)
    for i, (p, b) in enumerate(zip(fch.probs, fch.branches)):
        out[i * db : (i + 1) * db, i * db : (i + 1) * db] = p * apply(b, x)
    return out


def choi(ch: StinespringChannel) -> np.ndarray:
    """Trace-normalized Choi state (id (x) N)(|Phi_dA><Phi_dA|).

    Index convention: row = a*dB + b (input factor first).
    """
    k = ch.v3.transpose(2, 0, 1).reshape(ch.da * ch.db, ch.de)
    return (k @ k.conj().T) / ch.da


def channels_close(ch1: StinespringChannel, ch2: StinespringChannel, tol=1e-12) -> bool:
    """Channel equality as Choi-state equality."""
    if (ch1.da, ch1.db) != (ch2.da, ch2.db):
        return False
    return bool(np.abs(choi(ch1) - choi(ch2)).max() <= tol)
