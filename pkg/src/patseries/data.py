"""Deterministic data sources and transforms for experiments.

Generators are reproducible from their arguments: the Mackey-Glass
integrator contains no randomness at all, and the random generators are
seeded.  CSV files hold one decimal value per line with an optional
``value`` header; ``#`` lines are comments.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .validation import check_positive, check_positive_int, check_series

DIVERGENCE_LIMIT = 1e6


def mackey_glass(
    n: int,
    *,
    a: float = 0.1,
    b: float = 0.2,
    tau: float = 17.0,
    dt: float = 0.1,
    x0: float = 1.2,
    burn_in: int = 10000,
) -> np.ndarray:
    """Integrate the delay equation dx/dt = -a*x + b*x_tau / (1 + x_tau^10).

    Plain Euler steps of size ``dt`` with constant pre-history ``x0``; the
    first ``burn_in`` steps are discarded and the next ``n`` values
    emitted (one per integration step).  ``tau/dt`` must be an integer.
    The defaults are the standard chaotic setting; swapping ``a`` and
    ``b`` (a=0.2, b=0.1) makes the decay term dominate and the trajectory
    dies out toward zero.
    """
    check_positive_int(n, "n")
    check_positive(a, "a")
    check_positive(b, "b")
    check_positive(tau, "tau")
    check_positive(dt, "dt")
    if burn_in < 0:
        raise ValueError(f"burn_in must be nonnegative, got {burn_in}")
    ratio = tau / dt
    m = int(round(ratio))
    if m < 1 or abs(ratio - m) > 1e-9:
        raise ValueError(f"tau/dt must be a positive integer, got {ratio}")

    hist = [float(x0)] * m  # ring buffer of the last m values
    x = float(x0)
    out = np.empty(n)
    total = burn_in + n
    for k in range(total):
        if k >= burn_in:
            out[k - burn_in] = x
        slot = k % m
        xd = hist[slot]
        # x_tau^10 by squaring: keeps the arithmetic to IEEE +,*,/ only,
        # so identical inputs give bit-identical trajectories.
        xd2 = xd * xd
        xd4 = xd2 * xd2
        xd10 = xd4 * xd4 * xd2
        x_new = x + dt * (-a * x + b * xd / (1.0 + xd10))
        if abs(x_new) > DIVERGENCE_LIMIT:
            raise ArithmeticError(f"integration diverged at step {k} (|x| > {DIVERGENCE_LIMIT:g})")
        hist[slot] = x
        x = x_new
    return out


def random_walk(
    n: int,
    *,
    mu: float = 0.0,
    sigma: float = 1.0,
    seed: int = 0,
    up_prob: float | None = None,
) -> np.ndarray:
    """Random walk started at ``mu`` with Gaussian step sizes.

    With ``up_prob`` set, each step moves by ``|N(0, sigma^2)|`` upward
    with that probability and downward otherwise, giving a directionally
    biased walk; otherwise steps are plain N(0, sigma^2) increments.
    """
    check_positive_int(n, "n")
    check_positive(sigma, "sigma")
    rng = np.random.default_rng(seed)
    draws = rng.normal(0.0, sigma, n - 1) if n > 1 else np.empty(0)
    if up_prob is not None:
        if not 0.0 <= up_prob <= 1.0:
            raise ValueError(f"up_prob must be in [0, 1], got {up_prob}")
        signs = np.where(rng.random(draws.size) < up_prob, 1.0, -1.0)
        draws = np.abs(draws) * signs
    out = np.empty(n)
    out[0] = mu
    if n > 1:
        out[1:] = mu + np.cumsum(draws)
    return out


def iid_gaussian(n: int, *, mu: float = 0.0, sigma: float = 1.0, seed: int = 0) -> np.ndarray:
    """Independent N(mu, sigma^2) samples from a seeded generator."""
    check_positive_int(n, "n")
    check_positive(sigma, "sigma")
    rng = np.random.default_rng(seed)
    return mu + sigma * rng.standard_normal(n)


def downsample(series, factor: int) -> np.ndarray:
    """Keep every ``factor``-th sample starting at index 0 (1 = identity)."""
    x = check_series(series)
    check_positive_int(factor, "factor")
    return x[::factor].copy()


def save_csv(series, path) -> None:
    """Write one value per line with a ``value`` header, 17 significant digits."""
    x = check_series(series)
    lines = ["value"]
    lines.extend(format(v, ".17g") for v in x)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_csv(path) -> np.ndarray:
    """Read a one-column series; skips ``#`` comments, blanks, and a ``value`` header."""
    text = Path(path).read_text(encoding="utf-8")
    values: list[float] = []
    header_allowed = True
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header_allowed and line.lower() == "value":
            header_allowed = False
            continue
        header_allowed = False
        try:
            values.append(float(line))
        except ValueError:
            raise ValueError(f"{path}: cannot parse line {lineno}: {raw!r}") from None
    if not values:
        raise ValueError(f"{path}: no data values found")
    return check_series(values, name=str(path))
