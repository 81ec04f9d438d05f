"""Gradient-ascent maximization of one-shot information quantities.

Inputs are parameterized as rho = G G^dag / tr(G G^dag) with G an
unconstrained complex dA x rank factor, so the PSD cone never needs a
projection. Ensembles add softmax logits over the member weights.

Every reported value is re-evaluated through the plain info-module
functional at the returned argmax, so results are always genuine lower
bounds on the suprema they approximate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import channels as chn
from .channels import Channel, FlaggedChannel, StinespringChannel
from .info import Ensemble, coherent_information_any, private_information_value

ARMIJO_C = 1e-4
ARMIJO_SHRINK = 0.5
MIN_STEP = 1e-14
PATIENCE = 25
LOG_FLOOR = 1e-30


@dataclass(frozen=True)
class OptimizerConfig:
    restarts: int = 20
    max_iters: int = 2000
    tol: float = 1e-7
    seed: int = 0
    rank: int | None = None  # None = full rank
    ensemble_size: int | None = None  # None = 2 * dA


@dataclass
class OptimizeResult:
    value: float
    argmax: object  # density matrix (ndarray) or Ensemble
    restarts_summary: list[float] = field(default_factory=list)
    iterations_used: int = 0
    converged: bool = False


def _branches(ch: Channel) -> list[tuple[float, StinespringChannel]]:
    if isinstance(ch, FlaggedChannel):
        return list(zip(ch.probs, ch.branches))
    return [(1.0, ch)]


def _entropy_and_log(sigma: np.ndarray) -> tuple[float, np.ndarray]:
    """Entropy in bits plus the matrix log2 used by the entropy gradient.

    d tr(g(sigma)) = tr(g'(sigma) d sigma) holds exactly for trace
    functions even at degenerate spectra, so no special-casing is needed.
    """
    vals, vecs = np.linalg.eigh(sigma)
    clipped = np.clip(vals, 0.0, None)
    s = clipped.sum()
    probs = clipped / s
    nz = probs[probs > 0]
    entropy = float(-np.sum(nz * np.log2(nz)))
    logvals = np.log2(np.maximum(vals, LOG_FLOOR))
    logm = (vecs * logvals) @ vecs.conj().T
    return entropy, logm


def _adjoint_b(ch: StinespringChannel, y: np.ndarray) -> np.ndarray:
    """N^dag(Y) = V^dag (Y (x) I_E) V."""
    t = np.tensordot(y, ch.v3, axes=(1, 0))  # (b, e, a)
    return np.tensordot(ch.v3.conj(), t, axes=([0, 1], [0, 1]))


def _adjoint_e(ch: StinespringChannel, z: np.ndarray) -> np.ndarray:
    """(N^c)^dag(Z) = V^dag (I_B (x) Z) V."""
    t = np.tensordot(z, ch.v3, axes=(1, 1)).transpose(1, 0, 2)  # (b, e, a)
    return np.tensordot(ch.v3.conj(), t, axes=([0, 1], [0, 1]))


def _ic_and_deriv(
    branches: list[tuple[float, StinespringChannel]], rho: np.ndarray
) -> tuple[float, np.ndarray]:
    """Flag-averaged coherent information and its derivative dIc/drho.

    The derivative is the Hermitian matrix F with dIc = tr(F drho) for
    traceless drho (the 1/ln2 identity terms of the two entropy
    gradients cancel between B and E).
    """
    val = 0.0
    f = np.zeros_like(rho)
    for p, b in branches:
        sb = chn.apply(b, rho)
        se = chn.apply_complement(b, rho)
        ent_b, log_b = _entropy_and_log(sb)
        ent_e, log_e = _entropy_and_log(se)
        val += p * (ent_b - ent_e)
        f += p * (_adjoint_e(b, log_e) - _adjoint_b(b, log_b))
    return val, (f + f.conj().T) / 2


def _rho_of(g: np.ndarray) -> tuple[np.ndarray, float]:
    t = float(np.sum(np.abs(g) ** 2))
    return (g @ g.conj().T) / t, t


def _ci_value(branches, g: np.ndarray) -> float:
    rho, _ = _rho_of(g)
    val = 0.0
    for p, b in branches:
        vals_b = np.linalg.eigvalsh(chn.apply(b, rho))
        vals_e = np.linalg.eigvalsh(chn.apply_complement(b, rho))
        val += p * (_spectrum_entropy(vals_b) - _spectrum_entropy(vals_e))
    return val


def _spectrum_entropy(vals: np.ndarray) -> float:
    clipped = np.clip(vals, 0.0, None)
    probs = clipped / clipped.sum()
    nz = probs[probs > 0]
    return float(-np.sum(nz * np.log2(nz)))


def _ci_value_grad(branches, g: np.ndarray) -> tuple[float, np.ndarray]:
    """Objective and Wirtinger gradient dJ/dG* for the coherent objective."""
    rho, t = _rho_of(g)
    val, f = _ic_and_deriv(branches, rho)
    c = float(np.real(np.trace(f @ rho)))
    grad = (f @ g - c * g) / t
    return val, grad


def _init_factor(da: int, rank: int, restart: int, rng: np.random.Generator) -> np.ndarray:
    if restart == 0:
        # maximally mixed (on the rank-support)
        return np.eye(da, rank, dtype=complex)
    g = rng.standard_normal((da, rank)) + 1j * rng.standard_normal((da, rank))
    if restart == 1:
        psi = rng.standard_normal(da) + 1j * rng.standard_normal(da)
        psi /= np.linalg.norm(psi)
        pure = np.zeros((da, rank), dtype=complex)
        pure[:, 0] = psi
        return pure + 1e-4 * g
    return g


def _ascend(value_fn, value_grad_fn, x0, cfg: OptimizerConfig):
    """Gradient ascent with Armijo backtracking on a flat parameter array.

    x0 is a complex array; the objective is real. Returns (x, value,
    iterations, converged).
    """
    x = x0
    converged = False
    no_improve = 0
    it = 0
    step = 1.0
    for it in range(1, cfg.max_iters + 1):
        val, grad = value_grad_fn(x)
        slope = 2.0 * float(np.sum(np.abs(grad) ** 2))
        if slope < 1e-18:
            converged = True
            break
        s = step
        new_val = val
        accepted = False
        while s > MIN_STEP:
            cand = x + s * grad
            new_val = value_fn(cand)
            if new_val >= val + ARMIJO_C * s * slope:
                accepted = True
                break
            s *= ARMIJO_SHRINK
        if not accepted:
            converged = True
            break
        x = cand
        step = min(s * 2.0, 1e6)
        if new_val - val < cfg.tol:
            no_improve += 1
            if no_improve >= PATIENCE:
                converged = True
                break
        else:
            no_improve = 0
    return x, it, converged


def maximize_coherent_information(ch: Channel, cfg: OptimizerConfig | None = None) -> OptimizeResult:
    """Lower-bound Q^(1) of a channel (flag-averaged for flagged channels)."""
    cfg = cfg or OptimizerConfig()
    branches = _branches(ch)
    da = branches[0][1].da
    rank = cfg.rank or da

    best_g = None
    best_val = -math.inf
    best_meta = (0, False)
    summary = []
    for r in range(cfg.restarts):
        rng = np.random.default_rng(cfg.seed ^ r)
        g0 = _init_factor(da, rank, r, rng)
        g, iters, conv = _ascend(
            lambda x: _ci_value(branches, x),
            lambda x: _ci_value_grad(branches, x),
            g0,
            cfg,
        )
        val = _ci_value(branches, g)
        summary.append(val)
        if val > best_val + 1e-12:
            best_val = val
            best_g = g
            best_meta = (iters, conv)

    rho, _ = _rho_of(best_g)
    rho = (rho + rho.conj().T) / 2
    value = coherent_information_any(ch, rho)  # mandatory re-evaluation
    return OptimizeResult(
        value=value,
        argmax=rho,
        restarts_summary=summary,
        iterations_used=best_meta[0],
        converged=best_meta[1],
    )


# ---------------------------------------------------------------------------
# private information over ensembles


def _softmax(theta: np.ndarray) -> np.ndarray:
    z = np.exp(theta - theta.max())
    return z / z.sum()


class _EnsembleParams:
    """Flat complex packing of (logits, member factors) for the ascent loop.

    Logits are stored in the real part of the first row block.
    """

    def __init__(self, m: int, da: int, rank: int):
        self.m, self.da, self.rank = m, da, rank

    def pack(self, theta: np.ndarray, gs: list[np.ndarray]) -> np.ndarray:
        flat = np.concatenate([theta.astype(complex)] + [g.reshape(-1) for g in gs])
        return flat

    def unpack(self, x: np.ndarray):
        theta = x[: self.m].real
        gs = []
        off = self.m
        n = self.da * self.rank
        for _ in range(self.m):
            gs.append(x[off : off + n].reshape(self.da, self.rank))
            off += n
        return theta, gs

    def ensemble(self, x: np.ndarray) -> Ensemble:
        theta, gs = self.unpack(x)
        probs = _softmax(theta)
        states = []
        for g in gs:
            rho, _ = _rho_of(g)
            states.append((rho + rho.conj().T) / 2)
        return Ensemble(tuple(probs), tuple(states))


def _pi_value(branches, packer: _EnsembleParams, x: np.ndarray) -> float:
    theta, gs = packer.unpack(x)
    probs = _softmax(theta)
    rhos = [_rho_of(g)[0] for g in gs]
    rho_bar = sum(p * r for p, r in zip(probs, rhos))
    val = _flag_ic(branches, rho_bar)
    for p, r in zip(probs, rhos):
        val -= p * _flag_ic(branches, r)
    return val


def _flag_ic(branches, rho: np.ndarray) -> float:
    val = 0.0
    for p, b in branches:
        vb = np.linalg.eigvalsh(chn.apply(b, rho))
        ve = np.linalg.eigvalsh(chn.apply_complement(b, rho))
        val += p * (_spectrum_entropy(vb) - _spectrum_entropy(ve))
    return val


def _pi_value_grad(branches, packer: _EnsembleParams, x: np.ndarray):
    # private information = Ic(rho_bar) - sum_x p_x Ic(rho_x): the Holevo
    # terms of channel and complement regroup into coherent-information
    # evaluations, so the state gradients reuse the Ic derivative.
    theta, gs = packer.unpack(x)
    probs = _softmax(theta)
    rhos_t = [_rho_of(g) for g in gs]
    rho_bar = sum(p * r for p, (r, _) in zip(probs, rhos_t))

    val_bar, f_bar = _ic_and_deriv(branches, rho_bar)
    val = val_bar
    grad_gs = []
    dp = np.zeros(packer.m)
    for i, (p, (rho, t)) in enumerate(zip(probs, rhos_t)):
        val_i, f_i = _ic_and_deriv(branches, rho)
        val -= p * val_i
        a = p * (f_bar - f_i)
        c = float(np.real(np.trace(a @ rho)))
        grad_gs.append((a @ gs[i] - c * gs[i]) / t)
        dp[i] = float(np.real(np.trace(f_bar @ rho))) - val_i
    grad_theta = probs * (dp - float(np.dot(probs, dp)))
    grad = np.concatenate(
        [grad_theta.astype(complex) / 2.0] + [g.reshape(-1) for g in grad_gs]
    )
    # the /2 on the logit block compensates the 2x Wirtinger slope used by
    # the shared line search (logits are real parameters)
    return val, grad


def maximize_private_information(ch: Channel, cfg: OptimizerConfig | None = None) -> OptimizeResult:
    """Lower-bound P^(1) over ensembles of cfg.ensemble_size members."""
    cfg = cfg or OptimizerConfig()
    branches = _branches(ch)
    da = branches[0][1].da
    rank = cfg.rank or da
    m = cfg.ensemble_size or 2 * da
    packer = _EnsembleParams(m, da, rank)

    best_x = None
    best_val = -math.inf
    best_meta = (0, False)
    summary = []
    for r in range(cfg.restarts):
        rng = np.random.default_rng(cfg.seed ^ r)
        theta0 = np.zeros(m)
        if r == 0:
            # basis-aligned pure members: known optimal for erasure-type channels
            gs0 = []
            for i in range(m):
                g = np.zeros((da, rank), dtype=complex)
                g[i % da, 0] = 1.0
                gs0.append(
                    g
                    + 1e-3
                    * (rng.standard_normal((da, rank)) + 1j * rng.standard_normal((da, rank)))
                )
        elif r == 1:
            gs0 = []
            for _ in range(m):
                psi = rng.standard_normal(da) + 1j * rng.standard_normal(da)
                psi /= np.linalg.norm(psi)
                g = np.zeros((da, rank), dtype=complex)
                g[:, 0] = psi
                gs0.append(
                    g
                    + 1e-4
                    * (rng.standard_normal((da, rank)) + 1j * rng.standard_normal((da, rank)))
                )
        else:
            theta0 = rng.standard_normal(m)
            gs0 = [
                rng.standard_normal((da, rank)) + 1j * rng.standard_normal((da, rank))
                for _ in range(m)
            ]
        x0 = packer.pack(theta0, gs0)
        x, iters, conv = _ascend(
            lambda y: _pi_value(branches, packer, y),
            lambda y: _pi_value_grad(branches, packer, y),
            x0,
            cfg,
        )
        val = _pi_value(branches, packer, x)
        summary.append(val)
        if val > best_val + 1e-12:
            best_val = val
            best_x = x
            best_meta = (iters, conv)

    ens = packer.ensemble(best_x)
    value = private_information_value(ch, ens)  # mandatory re-evaluation
    return OptimizeResult(
        value=value,
        argmax=ens,
        restarts_summary=summary,
        iterations_used=best_meta[0],
        converged=best_meta[1],
    )


# ---------------------------------------------------------------------------
# gradient self-check


@dataclass
class GradientReport:
    per_point: list[float]
    max_rel_error: float


def gradient_selfcheck(
    ch: Channel,
    rho_seed: int = 0,
    cfg: OptimizerConfig | None = None,
    points: int = 5,
    fd_step: float = 1e-5,
) -> GradientReport:
    """Compare the analytic coherent-information gradient against central
    finite differences at random interior factors."""
    cfg = cfg or OptimizerConfig()
    branches = _branches(ch)
    da = branches[0][1].da
    rank = cfg.rank or da
    rng = np.random.default_rng(rho_seed)
    errors = []
    for _ in range(points):
        g = rng.standard_normal((da, rank)) + 1j * rng.standard_normal((da, rank))
        _, grad = _ci_value_grad(branches, g)
        fd = np.zeros_like(g)
        for i in range(da):
            for j in range(rank):
                for im, delta in ((0, fd_step), (1, 1j * fd_step)):
                    gp = g.copy()
                    gp[i, j] += delta
                    gm = g.copy()
                    gm[i, j] -= delta
                    d = (_ci_value(branches, gp) - _ci_value(branches, gm)) / (2 * fd_step)
                    if im == 0:
                        fd[i, j] += d / 2.0
                    else:
                        fd[i, j] += 1j * d / 2.0
        # fd approximates (dJ/dRe + i dJ/dIm)/2 = Wirtinger dJ/dG*
        num = float(np.linalg.norm(fd - grad))
        den = max(float(np.linalg.norm(fd)), 1e-12)
        errors.append(num / den)
    return GradientReport(per_point=errors, max_rel_error=max(errors))
