"""Parameter bundles for the blow-up overlay construction.

All logarithms are natural. Derived mode evaluates the asymptotic formulas

    N = round(n / ln(n)^2)      base graph order
    p = beta * sqrt(ln(n) / n)  base edge probability
    k = ceil(kappa * sqrt(n ln n))  independence target

together with the size cutoffs t1 = sqrt(n ln n)/ln(ln n), t2 = n^(1/4+eps),
t3 = n^(2 eps) used to stratify closed-pair diagnostics.  Explicit mode takes
(n, N, p, k) verbatim for desk-scale experiments where the formulas degenerate.

Conventions pinned here (recorded in every serialized record): eps1 = eps^3,
eps2 = eps^6; N rounds to nearest, k rounds up.

Note on N^2 >= n: the injection of n vertices into the N x N cell grid exists
only when N^2 >= n.  Derived mode returns the formula values even when the
grid is too small (at n = 100 the formulas give N = 5), and the build step is
where the requirement is enforced; explicit mode rejects N^2 < n up front.
Use feasible_params for a buildable bundle at any n >= 100.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict

__all__ = [
    "Params",
    "derive_params",
    "explicit_params",
    "feasible_params",
    "C_CONST",
]

# constant in the pairwise-intersection bounds of the concentration report
C_CONST = 3.0 * math.sqrt(20.0)

EPS1_RULE = "eps1 = epsilon**3"
EPS2_RULE = "eps2 = epsilon**6"
ROUNDING_RULE = "N = round(n/ln(n)^2), k = ceil(kappa*sqrt(n*ln(n)))"


@dataclass(frozen=True)
class Params:
    """Immutable parameter bundle shared by every pipeline stage."""

    n: int          # final vertex count
    N: int          # base graph order (one blow-up side)
    p: float        # base edge probability
    k: int          # independent-set size under test
    epsilon: float  # slack parameter
    eps1: float     # coarse slack, eps^3 by convention
    eps2: float     # fine slack, eps^6 by convention
    beta: float     # p = beta * sqrt(ln n / n); implied value in explicit mode
    kappa: float    # k = ceil(kappa * sqrt(n ln n)); implied in explicit mode
    t1: float       # huge/large size cutoff
    t2: float       # large/medium cutoff
    t3: float       # medium/small cutoff
    C: float = C_CONST
    mode: str = "derived"

    @property
    def cells(self) -> int:
        return self.N * self.N

    @property
    def injectable(self) -> bool:
        """Whether n vertices fit injectively into the N x N grid."""
        return self.N * self.N >= self.n

    @property
    def pn(self) -> float:
        return self.p * self.n

    @property
    def pN(self) -> float:
        return self.p * self.N

    @property
    def log2n(self) -> float:
        return math.log(self.n) ** 2

    def require_injectable(self) -> None:
        if not self.injectable:
            raise ValueError(
                f"grid too small for injection: N^2 = {self.N * self.N} < n = {self.n}"
            )

    def to_dict(self) -> dict:
        """Flat record, suitable for JSON sidecars and CSV provenance."""
        d = asdict(self)
        d["convention_eps"] = f"{EPS1_RULE}; {EPS2_RULE}"
        d["convention_rounding"] = ROUNDING_RULE
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Params":
        fields = {k: d[k] for k in (
            "n", "N", "p", "k", "epsilon", "eps1", "eps2",
            "beta", "kappa", "t1", "t2", "t3", "C", "mode")}
        # records come from files: re-check everything except grid capacity
        # (derived records are allowed to describe non-injectable bundles)
        return _validate(cls(**fields), require_grid=False)


def _validate(par: Params, require_grid: bool) -> Params:
    if par.n < 1:
        raise ValueError(f"n = {par.n} must be positive")
    if par.N < 2:
        raise ValueError(f"N = {par.N} < 2")
    # p = 0 is a legitimate explicit degenerate case (empty base graphs);
    # the derived formula is always strictly positive.
    if not (0.0 <= par.p <= 1.0):
        raise ValueError(f"p = {par.p} outside [0, 1]")
    if par.mode != "explicit" and par.p <= 0.0:
        raise ValueError(f"p = {par.p} must be positive in {par.mode} mode")
    if not (1 <= par.k <= par.n):
        raise ValueError(f"k = {par.k} outside [1, n = {par.n}]")
    if not (0.0 < par.eps2 < par.eps1 < par.epsilon < 1.0):
        raise ValueError(
            f"slack chain violated: need 0 < eps2 < eps1 < epsilon < 1, "
            f"got ({par.eps2}, {par.eps1}, {par.epsilon})")
    if not (par.t3 < par.t2 < par.t1 < par.k):
        raise ValueError(
            f"cutoff chain violated: need t3 < t2 < t1 < k, "
            f"got ({par.t3}, {par.t2}, {par.t1}, {par.k})")
    if require_grid:
        par.require_injectable()
    return par


def derive_params(n: int, epsilon: float = 0.1, beta: float = 0.5,
                  kappa: float | None = None) -> Params:
    """Evaluate the asymptotic formulas at n.

    kappa defaults to 1 + epsilon.  Requires n >= 100 so that ln(ln n) is
    comfortably positive; smaller experiments should use explicit_params.
    """
    if n < 100:
        raise ValueError(f"derived mode needs n >= 100, got {n}")
    if not (0.0 < epsilon < 1.0):
        raise ValueError(f"epsilon = {epsilon} outside (0, 1)")
    if not (0.0 < beta < 1.0):
        raise ValueError(f"beta = {beta} outside (0, 1)")
    if kappa is None:
        kappa = 1.0 + epsilon
    if kappa < 1.0:
        raise ValueError(f"kappa = {kappa} must be >= 1")
    ln = math.log(n)
    par = Params(
        n=n,
        N=round(n / ln ** 2),
        p=beta * math.sqrt(ln / n),
        k=math.ceil(kappa * math.sqrt(n * ln)),
        epsilon=epsilon,
        eps1=epsilon ** 3,
        eps2=epsilon ** 6,
        beta=beta,
        kappa=kappa,
        t1=math.sqrt(n * ln) / math.log(ln),
        t2=n ** (0.25 + epsilon),
        t3=n ** (2.0 * epsilon),
        mode="derived",
    )
    return _validate(par, require_grid=False)


def explicit_params(n: int, N: int, p: float, k: int, epsilon: float = 0.1,
                    eps1: float | None = None, eps2: float | None = None,
                    t1: float | None = None, t2: float | None = None,
                    t3: float | None = None) -> Params:
    """Take (n, N, p, k) verbatim; for desk-scale instances.

    Cutoffs default to (3/4, 1/2, 1/4) * k because the asymptotic formulas
    break the chain t1 < k at small n.  beta and kappa are back-solved from
    p and k for provenance (NaN when n is too small to define them).
    """
    if eps1 is None:
        eps1 = epsilon ** 3
    if eps2 is None:
        eps2 = epsilon ** 6
    ln = math.log(n) if n >= 2 else 0.0
    beta = p * math.sqrt(n / ln) if ln > 0 else math.nan
    kappa = k / math.sqrt(n * ln) if ln > 0 else math.nan
    par = Params(
        n=n, N=N, p=p, k=k,
        epsilon=epsilon, eps1=eps1, eps2=eps2,
        beta=beta, kappa=kappa,
        t1=0.75 * k if t1 is None else t1,
        t2=0.50 * k if t2 is None else t2,
        t3=0.25 * k if t3 is None else t3,
        mode="explicit",
    )
    return _validate(par, require_grid=True)


def feasible_params(n: int, epsilon: float = 0.1, beta: float = 0.5,
                    kappa: float | None = None) -> Params:
    """Derived formulas with N raised to ceil(sqrt(n)) when the grid is short.

    round(n/ln^2 n)^2 < n for n below roughly 5.5e3, so plain derived bundles
    cannot host the injection there.  This keeps p, k and the cutoffs on the
    formulas and only lifts N to the minimum feasible order, recording
    mode="clamped".  At n where the formulas are already feasible the result
    equals derive_params(n, ...).
    """
    par = derive_params(n, epsilon=epsilon, beta=beta, kappa=kappa)
    if par.injectable:
        return par
    N = math.ceil(math.sqrt(n))
    clamped = Params(
        n=n, N=N, p=par.p, k=par.k,
        epsilon=par.epsilon, eps1=par.eps1, eps2=par.eps2,
        beta=par.beta, kappa=par.kappa,
        t1=par.t1, t2=par.t2, t3=par.t3,
        mode="clamped",
    )
    return _validate(clamped, require_grid=True)
