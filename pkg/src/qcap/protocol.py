"""Entanglement-assisted rocket protocol simulation and the rocket+erasure
coherent-information experiment.

The decoder is derived from the transpose identity
(M (x) I)|Phi> = (I (x) M^T)|Phi>: the receiver first rotates their
pre-shared half so it mirrors the discarded register, then cancels the
controlled-phase coupling (which is diagonal, so partially transposing
it leaves it unchanged), then undoes the remaining local unitary. The
fidelity-1 invariant over random unitary pairs validates the derivation.
"""
from __future__ import annotations

import json
import math
import statistics
from dataclasses import dataclass, field

import numpy as np

from . import channels as chn
from . import qmat
from .info import coherent_information

_H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
_S = np.array([[1, 0], [0, 1j]], dtype=complex)


def _canonical_phase(u: np.ndarray) -> np.ndarray:
    """Fix the global phase: first nonzero entry (row-major) real positive."""
    flat = u.reshape(-1)
    idx = np.argmax(np.abs(flat) > 1e-9)
    return u * (abs(flat[idx]) / flat[idx])


def clifford_group(d: int = 2) -> list[np.ndarray]:
    """The 24 single-qubit Clifford unitaries modulo global phase, generated
    by closure over {H, S}."""
    if d != 2:
        raise ValueError("exact Clifford enumeration is implemented for d = 2 only")
    seen: dict[tuple, np.ndarray] = {}
    frontier = [np.eye(2, dtype=complex)]
    while frontier:
        nxt = []
        for u in frontier:
            u = _canonical_phase(u)
            key = tuple(np.round(u.reshape(-1), 9).tolist())
            if key in seen:
                continue
            seen[key] = u
            nxt.extend([g @ u for g in (_H, _S)])
        frontier = nxt
    return list(seen.values())


def clifford_pairs(d: int = 2) -> list[tuple[np.ndarray, np.ndarray]]:
    """All ordered (u, v) pairs from the Clifford group (24^2 = 576 at d=2)."""
    group = clifford_group(d)
    return [(u, v) for u in group for v in group]


def haar_pairs(d: int, samples: int, seed: int) -> list[tuple[np.ndarray, np.ndarray]]:
    rng = np.random.default_rng(seed)
    return [(qmat.random_unitary(d, rng), qmat.random_unitary(d, rng)) for _ in range(samples)]


def unitary_pairs(d: int, mode: str, samples: int = 200, seed: int = 0):
    if mode == "clifford":
        return clifford_pairs(d)
    if mode == "haar":
        return haar_pairs(d, samples, seed)
    raise ValueError(f"unknown unitary mode {mode!r}")


@dataclass
class ProtocolRun:
    d: int
    variant: str  # "direct" | "complement"
    u: np.ndarray
    v: np.ndarray
    fidelity: float
    register_trace: list[tuple[str, int]] = field(default_factory=list)


def _apply_on(psi: np.ndarray, dims: list[int], op: np.ndarray, targets: list[int]) -> np.ndarray:
    """Apply a unitary on the listed tensor factors of a state vector."""
    n = len(dims)
    t = psi.reshape(dims)
    rest = [i for i in range(n) if i not in targets]
    perm = targets + rest
    t = np.transpose(t, perm)
    dt = math.prod(dims[i] for i in targets)
    t = t.reshape(dt, -1)
    t = op @ t
    t = t.reshape([dims[i] for i in perm])
    t = np.transpose(t, np.argsort(perm))
    return t.reshape(-1)


def _phase_gate(d: int) -> np.ndarray:
    omega = np.exp(2j * math.pi / d)
    return np.diag(np.array([omega ** (i * j) for i in range(d) for j in range(d)]))


def run_rocket_protocol(d: int, u: np.ndarray, v: np.ndarray, variant: str) -> ProtocolRun:
    """Simulate the no-erasure branch of the entanglement-assisted protocol
    and return the fidelity of the decoded pair with |Phi_d>."""
    if variant not in ("direct", "complement"):
        raise ValueError(f"unknown variant {variant!r}")
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    for m in (u, v):
        if m.shape != (d, d) or np.abs(m @ m.conj().T - np.eye(d)).max() > 1e-12:
            raise ValueError("u and v must be d x d unitaries")

    dims = [d, d, d, d]  # registers: ref, A1->B, A2->E, bob
    phi = qmat.max_entangled(d)
    if variant == "direct":
        # purple pair ref-A1, pre-shared pair A2-bob
        psi = np.einsum("rx,yb->rxyb", phi.reshape(d, d), phi.reshape(d, d)).reshape(-1)
    else:
        # mirrored wiring: pre-shared pair A1-bob, purple pair ref-A2
        psi = np.einsum("ry,xb->rxyb", phi.reshape(d, d), phi.reshape(d, d)).reshape(-1)

    w = _phase_gate(d) @ np.kron(u, v)
    psi = _apply_on(psi, dims, w, [1, 2])

    p_dag = _phase_gate(d).conj()
    if variant == "direct":
        # decoder: conj(v) on bob, P^dag on (B, bob), u^dag on B
        corrections = [
            (v.conj(), [3]),
            (p_dag, [1, 3]),
            (u.conj().T, [1]),
        ]
        pair = (0, 1)
    else:
        # decoder: conj(u) on bob, P^dag on (bob, E), v^dag on E
        corrections = [
            (u.conj(), [3]),
            (p_dag, [3, 2]),
            (v.conj().T, [2]),
        ]
        pair = (0, 2)
    for op, targets in corrections:
        psi = _apply_on(psi, dims, op, targets)
        if abs(np.vdot(psi, psi).real - 1.0) > 1e-12:
            raise AssertionError("correction failed to preserve the state norm")

    rho_pair = qmat.partial_trace(np.outer(psi, psi.conj()), dims, keep=pair)
    fidelity = qmat.fidelity_with_pure(phi, rho_pair)
    names = ["ref", "B", "E", "bob"]
    return ProtocolRun(
        d=d,
        variant=variant,
        u=u,
        v=v,
        fidelity=fidelity,
        register_trace=[(nm, d) for nm in names],
    )


def protocol_input_state(d: int, variant: str = "direct") -> tuple[np.ndarray, np.ndarray]:
    """Input to rocket (x) erasure: reference R entangled with one rocket
    register, the other rocket register entangled with the erasure input.

    Returns (rho, psi): the d^3-dimensional marginal on (A1 A2 A3) and the
    purifying global vector on R A1 A2 A3.
    """
    qmat.check_cap(d**3)
    phi = qmat.max_entangled(d).reshape(d, d)
    if variant == "direct":
        # R-A1 purple pair, A2-A3 pair feeding the erasure leg
        psi = np.einsum("ra,bc->rabc", phi, phi).reshape(-1)
    elif variant == "complement":
        psi = np.einsum("rb,ac->rabc", phi, phi).reshape(-1)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    rho = qmat.partial_trace(np.outer(psi, psi.conj()), [d, d, d, d], keep=[1, 2, 3])
    return rho, psi


def evaluate_eq7(
    d: int,
    p: float,
    unitary_mode: str = "clifford",
    samples: int = 200,
    seed: int = 0,
    variant: str = "direct",
    pairs: list[tuple[np.ndarray, np.ndarray]] | None = None,
) -> dict:
    """Flag-averaged coherent information of rocket (x) erasure at the
    protocol input state, reported against the (1-p) log2 d target.

    An explicit list of (u, v) pairs overrides the sampling mode.
    """
    if pairs is None:
        pairs = unitary_pairs(d, unitary_mode, samples, seed)
    erasure = chn.make_erasure(p, d)
    rho, _ = protocol_input_state(d, variant)
    values = []
    for u, v in pairs:
        rocket = chn.make_rocket_instance(d, u, v)
        if variant == "complement":
            rocket = chn.complement(rocket)
        branch = chn.tensor(rocket, erasure)
        values.append(coherent_information(branch, rho))
    n_flags = len(values)
    value = math.fsum(values) / n_flags
    stderr = statistics.pstdev(values) / math.sqrt(n_flags) if n_flags > 1 else 0.0
    return {
        "d": d,
        "p": p,
        "variant": variant,
        "mode": unitary_mode,
        "n_flags": n_flags,
        "value_bits": value,
        "target_bits": (1.0 - p) * math.log2(d),
        "stderr_bits": stderr,
        "seed": seed,
    }


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True)
