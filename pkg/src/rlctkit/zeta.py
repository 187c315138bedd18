"""Monte-Carlo oracle for volume asymptotics and integrability.

Estimates the decay exponent lambda in V(eps) = vol{x in region : |f(x)| < eps}
~ C * eps^lambda * |log eps|^(theta-1) from a dyadic ladder eps_k = 2^-k,
and classifies local integrability of |g| * |f|^-alpha from dyadic shell
integrals.  lambda is the numeric counterpart of the exact engine's rlct:
for a region whose indicator weight is positive at a point minimizing the
vanishing order, the largest pole of the associated zeta integral sits at
-lambda.

Determinism contract: every estimate is a pure function of (inputs, seed).
Sampling is split into a fixed number of logical blocks, each seeded by
numpy's SeedSequence spawn keys; shard count only sets the worker pool, so
results are bit-identical across shard counts and across runs.

Fit contract (pinned so tolerances are reproducible): ladder base 2,
default depth 12, levels with fewer than 100 hits discarded, weighted
least squares of log V on [1, log eps, log |log eps|] with binomial
inverse-variance weights.  The log-correction exponent is fitted rather
than assumed zero because the pole may have order above one; it is
reported but no accuracy is claimed for it.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .errors import DimensionMismatchError
from .polynomials import SparsePolynomial
from .rationals import Threshold
from .resolution import ResolutionModel, lct, rlct

DEFAULT_SEED = 7
SEED_ENV_VAR = "RLCTKIT_SEED"

# Logical sampling blocks; fixed so the block -> seed map never depends on
# the worker count.
N_BLOCKS = 32

# Ladder levels below this hit count are dropped from the fit; shells below
# the shell floor are dropped from the integrability window.  The shell floor
# is set so that a window shell's relative error stays near 2.5% for mildly
# varying integrands, which puts the 0.9 decay cutoff about three combined
# standard errors away from a flat (divergent) shell profile.
MIN_LEVEL_HITS = 100
MIN_SHELL_HITS = 2000

# Geometric decay of the last four usable shells certifying integrability.
DECAY_CUTOFF = 0.9

_CTX_VOLUME = 0
_CTX_LADDER = 1
_CTX_SHELLS = 2


def default_seed() -> int:
    """Seed from the environment, or the built-in default."""
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{SEED_ENV_VAR} must be an integer, got {raw!r}") from None


@dataclass(frozen=True)
class SampleRegion:
    """Compact sampling region: a ball or an axis-aligned box."""

    kind: str
    center: tuple[float, ...]
    radius_or_halfwidth: float

    def __post_init__(self):
        if self.kind not in ("ball", "box"):
            raise ValueError(f"region kind must be 'ball' or 'box', got {self.kind!r}")
        if not self.center:
            raise ValueError("region center must have at least one coordinate")
        if not self.radius_or_halfwidth > 0:
            raise ValueError("region radius/halfwidth must be positive")
        object.__setattr__(self, "center", tuple(float(c) for c in self.center))

    @classmethod
    def ball(cls, n: int, radius: float = 1.0, center: Sequence[float] | None = None) -> "SampleRegion":
        return cls("ball", tuple(center) if center is not None else (0.0,) * n, radius)

    @classmethod
    def box(cls, n: int, halfwidth: float = 1.0, center: Sequence[float] | None = None) -> "SampleRegion":
        return cls("box", tuple(center) if center is not None else (0.0,) * n, halfwidth)

    @property
    def dimension(self) -> int:
        return len(self.center)

    def volume(self) -> float:
        n, r = self.dimension, self.radius_or_halfwidth
        if self.kind == "box":
            return (2.0 * r) ** n
        return math.pi ** (n / 2) * r**n / math.gamma(n / 2 + 1)

    def sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        """(count, n) array of points uniform in the region."""
        n = self.dimension
        c = np.asarray(self.center)
        if self.kind == "box":
            h = self.radius_or_halfwidth
            return rng.uniform(-h, h, size=(count, n)) + c
        d = rng.standard_normal((count, n))
        d /= np.linalg.norm(d, axis=1, keepdims=True)
        r = self.radius_or_halfwidth * rng.random(count) ** (1.0 / n)
        return d * r[:, None] + c


@dataclass(frozen=True)
class SampleConfig:
    """Knobs pinning one deterministic estimation run."""

    samples_per_level: int = 10**6
    seed: int = field(default_factory=default_seed)
    ladder_depth: int = 12
    shards: int = 4

    def __post_init__(self):
        if self.samples_per_level < 1:
            raise ValueError("samples_per_level must be positive")
        if self.ladder_depth < 1:
            raise ValueError("ladder_depth must be positive")
        if self.shards < 1:
            raise ValueError("shards must be positive")


@dataclass(frozen=True)
class McEstimate:
    """Fitted decay exponent, with the fit's own quality figures.

    ``conclusive`` is False when fewer than 3 ladder levels survived the
    hit floor (lambda_hat is NaN then) or when no sample ever landed in a
    sublevel set; ``warning`` says which.
    """

    lambda_hat: float
    log_exponent_hat: float
    stderr: float
    levels_used: int
    r_squared: float
    seed: int
    conclusive: bool = True
    warning: str = ""

    def to_json_dict(self) -> dict:
        return {
            "lambda_hat": self.lambda_hat,
            "log_exponent_hat": self.log_exponent_hat,
            "stderr": self.stderr,
            "levels_used": self.levels_used,
            "r_squared": self.r_squared,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class IntegrabilityVerdict:
    """Shell-integral classification of |g| * |f|^-alpha near the region.

    ``shell_contributions`` lists the estimated integral over every dyadic
    shell 2^-(k+1) <= |f| < 2^-k for k = 1..depth; ``decay_ratio`` compares
    the last usable shell against the one three steps earlier (NaN when
    fewer than four shells were usable).
    """

    status: str
    shell_contributions: tuple[float, ...]
    decay_ratio: float


@dataclass(frozen=True)
class ChainCheck:
    """Numeric estimate laid against both exact thresholds."""

    p_hat: float
    rlct_exact: Threshold
    lct_exact: Fraction
    chain_ok: bool
    tol: float
    estimate: McEstimate


ValuesFn = Callable[[np.ndarray], np.ndarray]


def _block_sizes(total: int) -> list[int]:
    base, rem = divmod(total, N_BLOCKS)
    return [base + (1 if b < rem else 0) for b in range(N_BLOCKS)]


def _map_blocks(work, shards: int) -> list:
    """Run one task per logical block; reduce in block order."""
    if shards == 1:
        return [work(b) for b in range(N_BLOCKS)]
    with ThreadPoolExecutor(max_workers=shards) as pool:
        return list(pool.map(work, range(N_BLOCKS)))


def _count_hits(
    values_fn: ValuesFn,
    region: SampleRegion,
    eps: float,
    config: SampleConfig,
    spawn_key: tuple[int, ...],
) -> int:
    sizes = _block_sizes(config.samples_per_level)

    def work(block: int) -> int:
        if sizes[block] == 0:
            return 0
        seq = np.random.SeedSequence(config.seed, spawn_key=spawn_key + (block,))
        pts = region.sample(np.random.Generator(np.random.PCG64(seq)), sizes[block])
        return int(np.count_nonzero(np.abs(values_fn(pts)) < eps))

    return sum(_map_blocks(work, config.shards))


def mc_volume(
    f: SparsePolynomial,
    region: SampleRegion,
    eps: float,
    config: SampleConfig | None = None,
) -> tuple[float, float]:
    """Estimate vol{x in region : |f(x)| < eps} with its binomial stderr."""
    config = config or SampleConfig()
    if region.dimension != f.n:
        raise DimensionMismatchError(
            f"region dimension {region.dimension} != polynomial dimension {f.n}"
        )
    if not eps > 0:
        raise ValueError("eps must be positive")
    n_total = config.samples_per_level
    hits = _count_hits(f.values, region, eps, config, (_CTX_VOLUME,))
    p = hits / n_total
    vol = region.volume()
    return p * vol, vol * math.sqrt(p * (1.0 - p) / n_total)


def _fit_ladder(
    eps: np.ndarray, p_hat: np.ndarray, n_samples: int
) -> tuple[float, float, float, float]:
    """WLS of log V on [1, log eps, log|log eps|] -> (lambda, theta-1, se, r2)."""
    y = np.log(p_hat)
    X = np.column_stack([np.ones_like(eps), np.log(eps), np.log(-np.log(eps))])
    p_clip = np.clip(p_hat, 0.5 / n_samples, 1.0 - 0.5 / n_samples)
    var = (1.0 - p_clip) / (n_samples * p_clip)
    w = 1.0 / var
    xtwx = X.T @ (w[:, None] * X)
    cov = np.linalg.inv(xtwx)
    beta = cov @ (X.T @ (w * y))
    resid = y - X @ beta
    ss_res = float(w @ resid**2)
    ss_tot = float(w @ (y - np.average(y, weights=w)) ** 2)
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 0.0
    return float(beta[1]), float(beta[2]), float(math.sqrt(cov[1, 1])), r2


def estimate_decay_exponent(
    values_fn: ValuesFn,
    n: int,
    region: SampleRegion,
    config: SampleConfig | None = None,
) -> McEstimate:
    """Ladder fit for any vectorized nonnegative-size function of n variables.

    This is the engine behind :func:`estimate_rlct`; it exists separately
    so non-polynomial size functions (an ideal's generator sum |f_1|+...,
    say) can be estimated with the identical ladder and fit.
    """
    config = config or SampleConfig()
    if region.dimension != n:
        raise DimensionMismatchError(
            f"region dimension {region.dimension} != expected dimension {n}"
        )
    n_total = config.samples_per_level
    levels = []
    for k in range(1, config.ladder_depth + 1):
        eps = 2.0**-k
        hits = _count_hits(values_fn, region, eps, config, (_CTX_LADDER, k))
        levels.append((eps, hits))
    kept = [(eps, hits) for eps, hits in levels if hits >= MIN_LEVEL_HITS]
    if not any(hits for _, hits in levels):
        return McEstimate(
            lambda_hat=math.nan,
            log_exponent_hat=math.nan,
            stderr=math.nan,
            levels_used=0,
            r_squared=0.0,
            seed=config.seed,
            conclusive=False,
            warning="no sample hit any sublevel set; f may not vanish in the region",
        )
    if len(kept) < 3:
        return McEstimate(
            lambda_hat=math.nan,
            log_exponent_hat=math.nan,
            stderr=math.nan,
            levels_used=len(kept),
            r_squared=0.0,
            seed=config.seed,
            conclusive=False,
            warning=(
                f"only {len(kept)} ladder level(s) kept at least {MIN_LEVEL_HITS} hits; "
                "need 3 for a fit"
            ),
        )
    eps = np.array([e for e, _ in kept])
    p_hat = np.array([h / n_total for _, h in kept])
    lam, theta_m1, se, r2 = _fit_ladder(eps, p_hat, n_total)
    return McEstimate(
        lambda_hat=lam,
        log_exponent_hat=theta_m1,
        stderr=se,
        levels_used=len(kept),
        r_squared=r2,
        seed=config.seed,
    )


def estimate_rlct(
    f: SparsePolynomial,
    region: SampleRegion,
    config: SampleConfig | None = None,
) -> McEstimate:
    """Fit the sublevel-volume decay exponent of |f| over the dyadic ladder.

    Targets the threshold exponent: lambda matches the exact engine's rlct
    whenever the region covers a point of minimal vanishing order.
    """
    return estimate_decay_exponent(f.values, f.n, region, config)


def check_integrability(
    g: SparsePolynomial,
    f: SparsePolynomial,
    alpha: Fraction | float,
    region: SampleRegion,
    config: SampleConfig | None = None,
) -> IntegrabilityVerdict:
    """Classify local integrability of |g| * |f|^-alpha by shell integrals.

    Estimates c_k = integral of |g| |f|^-alpha over the shell
    2^-(k+1) <= |f| < 2^-k by plain Monte-Carlo, then reads the tail of
    the usable shells (at least ``MIN_SHELL_HITS`` sample hits each):
    geometric decay below ``DECAY_CUTOFF`` over the last four certifies a
    convergent tail; contributions non-decreasing to within three combined
    standard errors indicate divergence; anything else, or fewer than four
    usable shells, is Inconclusive.  MC cannot certify divergence, so the
    Divergent verdict is evidence, not proof.
    """
    config = config or SampleConfig()
    alpha = float(alpha)
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if g.n != f.n:
        raise DimensionMismatchError(f"g has {g.n} variables, f has {f.n}")
    if region.dimension != f.n:
        raise DimensionMismatchError(
            f"region dimension {region.dimension} != polynomial dimension {f.n}"
        )
    n_total = config.samples_per_level
    vol = region.volume()
    sizes = _block_sizes(n_total)
    contribs: list[float] = []
    stderrs: list[float] = []
    counts: list[int] = []
    for k in range(1, config.ladder_depth + 1):
        lo, hi = 2.0 ** -(k + 1), 2.0**-k

        def work(block: int) -> tuple[float, float, int]:
            if sizes[block] == 0:
                return 0.0, 0.0, 0
            seq = np.random.SeedSequence(config.seed, spawn_key=(_CTX_SHELLS, k, block))
            pts = region.sample(np.random.Generator(np.random.PCG64(seq)), sizes[block])
            af = np.abs(f.values(pts))
            mask = (af >= lo) & (af < hi)
            vals = np.abs(g.values(pts[mask])) * af[mask] ** -alpha
            return float(vals.sum()), float((vals**2).sum()), int(mask.sum())

        parts = _map_blocks(work, config.shards)
        s1 = sum(p[0] for p in parts)
        s2 = sum(p[1] for p in parts)
        hits = sum(p[2] for p in parts)
        mean = s1 / n_total
        var = max(s2 / n_total - mean * mean, 0.0) / n_total
        contribs.append(vol * mean)
        stderrs.append(vol * math.sqrt(var))
        counts.append(hits)

    usable = [i for i in range(len(contribs)) if counts[i] >= MIN_SHELL_HITS]
    if len(usable) < 4:
        return IntegrabilityVerdict(
            status="Inconclusive",
            shell_contributions=tuple(contribs),
            decay_ratio=math.nan,
        )
    window = usable[-4:]
    c = [contribs[i] for i in window]
    se = [stderrs[i] for i in window]
    ratio = c[-1] / c[0] if c[0] > 0 else math.inf
    if ratio < DECAY_CUTOFF:
        status = "Integrable"
    elif all(
        c[i + 1] >= c[i] - 3.0 * math.hypot(se[i], se[i + 1]) for i in range(3)
    ):
        status = "Divergent"
    else:
        status = "Inconclusive"
    return IntegrabilityVerdict(
        status=status,
        shell_contributions=tuple(contribs),
        decay_ratio=ratio,
    )


def verify_threshold_chain(
    f: SparsePolynomial,
    model: ResolutionModel,
    region: SampleRegion,
    config: SampleConfig | None = None,
) -> ChainCheck:
    """Numeric estimate vs the exact chain p_hat >= rlct >= lct.

    The model is trusted to describe f (fixtures guarantee this; arbitrary
    pairs are the caller's risk).  With tol = max(0.1, 3 * stderr), the
    check passes iff p_hat >= rlct - tol, rlct >= lct exactly, and, since
    the region's indicator weight is positive at the origin, also
    |p_hat - rlct| <= tol.  An inconclusive estimate never passes.
    """
    config = config or SampleConfig()
    estimate = estimate_rlct(f, region, config)
    r = rlct(model)
    c = lct(model)
    if not estimate.conclusive or r == math.inf:
        return ChainCheck(
            p_hat=estimate.lambda_hat,
            rlct_exact=r,
            lct_exact=c,
            chain_ok=False,
            tol=math.nan,
            estimate=estimate,
        )
    tol = max(0.1, 3.0 * estimate.stderr)
    p_hat = estimate.lambda_hat
    ok = p_hat >= float(r) - tol and r >= c and abs(p_hat - float(r)) <= tol
    return ChainCheck(
        p_hat=p_hat,
        rlct_exact=r,
        lct_exact=c,
        chain_ok=ok,
        tol=tol,
        estimate=estimate,
    )
