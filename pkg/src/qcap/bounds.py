"""Closed-form capacity bounds, theorem predicates, and figure tables.

All arithmetic lives in the log2 (bits) domain: the channel dimension is
2^(n^alpha) and never needs to be materialized, only its logarithm
n^alpha. Exponents are computed with Python integers (exact) and
converted to float64 for the bound formulas.
"""
from __future__ import annotations

import io
import math
from dataclasses import dataclass


class BoundValidityError(ValueError):
    """A theorem precondition does not hold; carries the predicate name."""

    def __init__(self, predicate: str, message: str):
        super().__init__(f"{predicate}: {message}")
        self.predicate = predicate


@dataclass(frozen=True)
class BoundParams:
    n: int
    p: float
    alpha: int

    def __post_init__(self):
        if self.n < 1 or self.alpha < 1:
            raise ValueError("n and alpha must be positive integers")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("p must be a probability")

    @property
    def log2_d(self) -> float:
        """n^alpha: the channel dimension in bits."""
        return float(self.n**self.alpha)

    @property
    def na1(self) -> float:
        """n^(alpha-1)."""
        return float(self.n ** (self.alpha - 1))

    @property
    def thm1_ok(self) -> bool:
        return self.p == 0.5 and self.n ** (self.alpha - 2) > 8

    @property
    def thm2_ok(self) -> bool:
        return (
            1 / 3 < self.p <= 0.5 - 1.0 / self.na1
            and self.n ** (self.alpha - 2) > 12
        )

    @property
    def lemmaB_ok(self) -> bool:
        return 4.0 / self.na1 <= self.p <= 0.5 - 1.0 / self.na1


@dataclass(frozen=True)
class BoundTable:
    """Named bound values at one k, in bits. Fields outside their theorem
    ranges are None."""

    k: int
    U: float  # upper bound on P^(k)(N), k > k0 branch form
    L: float  # lower bound on Q^(k)(N)
    Uc: float  # upper bound on P^(k)(N^c)
    Lc: float  # lower bound on Q^(k)(N^c)
    Up: float  # U': upper bound on P^(k)_tot, k <= k0
    Upp: float  # U'': upper bound on P^(k)_tot, k > k0
    f: float | None
    fc: float | None
    p_upper: float  # branch-resolved upper bound on P^(k)(N)
    q_lower_next: float  # lower bound on Q^(k+1)(N), valid for k <= n
    qc_lower_next: float  # lower bound on Q^(k+1)(N^c), valid for k <= n


def k0(params: BoundParams) -> float:
    """k0 = (1 - p - 2/n^(alpha-1)) / p."""
    if params.p == 0:
        raise BoundValidityError("p_positive", "k0 undefined at p = 0")
    return (1.0 - params.p - 2.0 / params.na1) / params.p


def upper_U(params: BoundParams, k: int) -> float:
    return 2.0 * params.n / k + (k - 1) / k * (1.0 - params.p) * params.log2_d


def upper_Uc(params: BoundParams, k: int) -> float:
    return 2.0 * params.n / k + (k - 1) / k * params.p * params.log2_d


def lower_L(params: BoundParams, j: int) -> float:
    """Lower bound on Q^(j)(N): ((j-1)/j)(1-p) n^alpha."""
    return (j - 1) / j * (1.0 - params.p) * params.log2_d


def lower_Lc(params: BoundParams, j: int) -> float:
    return (j - 1) / j * params.p * params.log2_d


def upper_Uprime(params: BoundParams, k: int) -> float:
    """U'(k) = (1-2p) n^alpha + 2n/k + ((k-1)/k) p n^alpha (k <= k0)."""
    return (1.0 - 2.0 * params.p) * params.log2_d + upper_Uc(params, k)


def upper_Udprime(params: BoundParams, k: int) -> float:
    """U''(k) = 4n/k + ((k-1)/k) n^alpha (k > k0)."""
    return 4.0 * params.n / k + (k - 1) / k * params.log2_d


def lemma_b1(params: BoundParams, k: int) -> BoundTable:
    """All named bound values at k (the k-indexed row of Lemma-style bounds)."""
    if not params.lemmaB_ok:
        raise BoundValidityError(
            "lemmaB_ok", f"requires 4/n^(a-1) <= p <= 1/2 - 1/n^(a-1), got p={params.p}"
        )
    if k < 1:
        raise BoundValidityError("k_range", "k must be >= 1")
    kk0 = k0(params)
    p_up = (1.0 - 2.0 * params.p) * params.log2_d if k <= kk0 else upper_U(params, k)
    f, fc = None, None
    if params.thm2_ok:
        if 2 <= k <= params.n:
            f = theorem2_gaps(params, k)[0]
        if 1 <= k <= params.n:
            fc = theorem2_gaps(params, k)[1]
    return BoundTable(
        k=k,
        U=upper_U(params, k),
        L=lower_L(params, k),
        Uc=upper_Uc(params, k),
        Lc=lower_Lc(params, k),
        Up=upper_Uprime(params, k),
        Upp=upper_Udprime(params, k),
        f=f,
        fc=fc,
        p_upper=p_up,
        q_lower_next=lower_L(params, k + 1) if k <= params.n else math.nan,
        qc_lower_next=lower_Lc(params, k + 1) if k <= params.n else math.nan,
    )


def theorem1_gap(n: int, alpha: int, k: int) -> float:
    """(n^alpha - 4n(k+1)) / (2k(k+1)); positive whenever n^(alpha-2) > 8
    and 1 <= k <= n."""
    if n ** (alpha - 2) <= 8:
        raise BoundValidityError("thm1_ok", f"requires n^(alpha-2) > 8, got n={n}, alpha={alpha}")
    if not 1 <= k <= n:
        raise BoundValidityError("k_range", f"requires 1 <= k <= n, got k={k}")
    na = float(n**alpha)
    return (na - 4.0 * n * (k + 1)) / (2.0 * k * (k + 1))


def theorem2_gaps(params: BoundParams, k: int) -> tuple[float, float]:
    """(f, fc): lower bounds on the direct and complement superadditivity
    gaps; f valid for 2 <= k <= n, fc for 1 <= k <= n."""
    if not params.thm2_ok:
        raise BoundValidityError(
            "thm2_ok",
            f"requires 1/3 < p <= 1/2 - 1/n^(a-1) and n^(a-2) > 12, got {params}",
        )
    if not 1 <= k <= params.n:
        raise BoundValidityError("k_range", f"requires 1 <= k <= n, got k={k}")
    na = params.log2_d
    fc = (na * params.p - 2.0 * params.n * (k + 1)) / (k * (k + 1))
    if k < 2:
        return math.nan, fc
    f = (na * (1.0 - params.p) - 2.0 * params.n * (k + 1)) / (k * (k + 1))
    return f, fc


def thm2_k1_predicate(params: BoundParams) -> tuple[bool, float, float]:
    """The dangling k=1 clause of the second theorem: Q^(2)(N) >
    P^(1)_max(N), checked as L(2) > k=1 upper bound on P_max."""
    lhs = lower_L(params, 2)
    rhs = lemma_b1(params, 1).p_upper
    return lhs > rhs, lhs, rhs


def eq24_min_k(params: BoundParams) -> int | None:
    """Smallest k <= n with (k-1)/k >= (2 + n^alpha p)/((1-p)(n+1)n^(alpha-1)),
    or None if no such k exists."""
    if not params.thm2_ok:
        raise BoundValidityError("thm2_ok", "eq24 threshold needs the thm2 regime")
    rhs = (2.0 + params.log2_d * params.p) / ((1.0 - params.p) * (params.n + 1) * params.na1)
    if rhs >= 1.0:
        return None
    for k in range(1, params.n + 1):
        if (k - 1) / k >= rhs:
            return k
    return None


def theorem3_c(params: BoundParams, k: int) -> float:
    """c(k) = (1-p) k / (p - 2/n^(alpha-1)): uses j > c(k) beat the
    k-letter total private information."""
    denom = params.p - 2.0 / params.na1
    if denom <= 0:
        raise BoundValidityError("p_domain", "requires p > 2/n^(alpha-1)")
    if not params.lemmaB_ok:
        raise BoundValidityError("lemmaB_ok", "theorem3 needs the lemma regime")
    if k > k0(params):
        raise BoundValidityError("k_range", f"requires k <= k0 = {k0(params)}")
    return (1.0 - params.p) * k / denom


def theorem3_max_k(params: BoundParams, j_max: int | None = None) -> int | None:
    """Largest k <= k0 with c(k) < j_max (default j_max = n+1)."""
    if j_max is None:
        j_max = params.n + 1
    best = None
    kk0 = k0(params)
    k = 1
    while k <= kk0:
        if theorem3_c(params, k) < j_max:
            best = k
        k += 1
    return best


# ---------------------------------------------------------------------------
# figure tables


def figure1_rows(params: BoundParams, k_max: int) -> list[tuple[int, float | None, float | None]]:
    """Rows (k, log2 f, log2 fc) for k = 1..k_max; entries are None where a
    gap is undefined or non-positive."""
    rows = []
    for k in range(1, k_max + 1):
        f, fc = theorem2_gaps(params, k)
        lf = math.log2(f) if not math.isnan(f) and f > 0 else None
        lfc = math.log2(fc) if fc > 0 else None
        rows.append((k, lf, lfc))
    return rows


def figure2_rows(params: BoundParams) -> list[tuple[int, float, float]]:
    """Rows (k, U_k, Qmax) for k = 1..n, with U_k = U'(k) if k <= k0 else
    U''(k) and Qmax = L(n+1) constant."""
    if not params.lemmaB_ok:
        raise BoundValidityError("lemmaB_ok", "figure2 needs the lemma regime")
    kk0 = k0(params)
    qmax = lower_L(params, params.n + 1)
    rows = []
    for k in range(1, params.n + 1):
        uk = upper_Uprime(params, k) if k <= kk0 else upper_Udprime(params, k)
        rows.append((k, uk, qmax))
    return rows


def _fmt(x: float | None) -> str:
    return "" if x is None else f"{x:.12g}"


def figure1_csv(params: BoundParams, k_max: int) -> str:
    buf = io.StringIO()
    buf.write("k,log2_f,log2_fc\n")
    for k, lf, lfc in figure1_rows(params, k_max):
        buf.write(f"{k},{_fmt(lf)},{_fmt(lfc)}\n")
    return buf.getvalue()


def figure2_csv(params: BoundParams) -> str:
    buf = io.StringIO()
    buf.write("k,U_k,Qmax\n")
    for k, uk, qmax in figure2_rows(params):
        buf.write(f"{k},{_fmt(uk)},{_fmt(qmax)}\n")
    return buf.getvalue()
