"""Figures written next to the CSV reports."""

import matplotlib as mpl

mpl.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .perm import format_perm  # noqa: E402


def plot_permutation(pi, path, title=None):
    """Permutation plot on a unit grid, one dot per entry."""
    n = len(pi)
    size = max(3.0, min(10.0, 0.35 * n))
    fig, ax = plt.subplots(figsize=(size, size))
    ax.scatter(range(1, n + 1), pi, s=max(12, 400 / n), color="black", zorder=3)
    ax.set_xlim(0.5, n + 0.5)
    ax.set_ylim(0.5, n + 0.5)
    ax.set_xticks(range(1, n + 1))
    ax.set_yticks(range(1, n + 1))
    ax.grid(True, color="0.85", zorder=0)
    ax.set_aspect("equal")
    if n > 12:
        ax.tick_params(labelsize=6)
    ax.set_title(title or format_perm(pi), fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_sweep(maxima, bound, path):
    """Max |μ| per length against the exponential lower bound.

    ``maxima`` and ``bound`` map length -> value.
    """
    ns = sorted(maxima)
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.plot(ns, [maxima[n] for n in ns], "o-", color="black", label="max |mu| (exhaustive)")
    ax.step(ns, [bound[n] for n in ns], where="mid", color="tab:red", label="2^(floor(n/4)-1)")
    ax.set_yscale("log", base=2)
    ax.set_xlabel("n")
    ax.set_ylabel("|mu|")
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
