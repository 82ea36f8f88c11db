"""Figure rendering for the CLI report paths.

Each renderer takes the already-computed rows (or table) and writes one
PNG next to the delimited output.  matplotlib is imported lazily with
the Agg backend so that library users never pay for it.
"""

from __future__ import annotations


def _pyplot():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def render_eos(rows, path):
    """Equations of state (and contact value) against packing fraction."""
    plt = _pyplot()
    eta = [r[0] for r in rows]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.6))
    for idx, lab in ((1, "compressibility"), (2, "virial"),
                     (3, "Carnahan-Starling")):
        ax1.plot(eta, [r[idx] for r in rows], marker="o", ms=3, label=lab)
    ax1.set_xlabel(r"$\eta$")
    ax1.set_ylabel(r"$P/\rho k_BT$")
    ax1.legend(fontsize=8)
    ax2.plot(eta, [r[4] for r in rows], marker="o", ms=3, color="k")
    ax2.set_xlabel(r"$\eta$")
    ax2.set_ylabel(r"$g(R^+)$")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_mix(rows, path):
    """Hard-sphere activity coefficients per species (or vs eta)."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(5.5, 3.6))
    etas = sorted({r[3] for r in rows})
    if len(etas) > 1:
        species = sorted({int(r[0]) for r in rows})
        for s in species:
            pts = [(r[3], r[6]) for r in rows if int(r[0]) == s]
            ax.plot(*zip(*pts), marker="o", ms=3, label=f"species {s}")
        ax.set_xlabel(r"$\eta$")
        ax.legend(fontsize=8)
    else:
        ax.bar([str(int(r[0])) for r in rows], [r[6] for r in rows])
        ax.set_xlabel("species")
    ax.set_ylabel(r"$\ln\gamma_i^{HS}$")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_msa(rows, path):
    """Screening parameter and total activity coefficients."""
    plt = _pyplot()
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.6))
    coupling = sorted({r[4] for r in rows})
    if len(coupling) > 1:
        gam = [(a, next(r[5] for r in rows if r[4] == a)) for a in coupling]
        ax1.plot(*zip(*gam), marker="o", ms=3, color="k")
        ax1.set_xscale("log")
        ax1.set_xlabel(r"$\alpha^2$")
        species = sorted({int(r[0]) for r in rows})
        for s in species:
            pts = [(r[4], r[14]) for r in rows if int(r[0]) == s]
            ax2.plot(*zip(*pts), marker="o", ms=3, label=f"species {s}")
        ax2.set_xscale("log")
        ax2.set_xlabel(r"$\alpha^2$")
        ax2.legend(fontsize=8)
    else:
        ax1.bar(["system"], [rows[0][5]], color="k")
        ax2.bar([str(int(r[0])) for r in rows], [r[14] for r in rows])
        ax2.set_xlabel("species")
    ax1.set_ylabel(r"$\Gamma$")
    ax2.set_ylabel(r"$\ln\gamma_i$")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_oz_sweep(rows, path):
    """Numeric vs analytic contact values across a packing sweep."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(5.5, 3.6))
    eta = [r[0] for r in rows]
    ax.plot(eta, [r[6] for r in rows], color="0.6", lw=1, label="analytic")
    ax.plot(eta, [r[5] for r in rows], "ko", ms=4, label="grid solver")
    ax.set_xlabel(r"$\eta$")
    ax.set_ylabel(r"$g(R^+)$")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_correlation(table, path):
    """g(r) and c(r) from a converged correlation table."""
    plt = _pyplot()
    r = table.grid.r
    R = table.diameter
    view = r <= 6.0 * R
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.6))
    ax1.plot(r[view] / R, table.g[view], color="k", lw=1)
    ax1.axhline(1.0, color="0.7", lw=0.8, zorder=0)
    ax1.set_xlabel("r/R")
    ax1.set_ylabel("g(r)")
    ax2.plot(r[view] / R, table.c[view], color="C3", lw=1)
    ax2.set_xlabel("r/R")
    ax2.set_ylabel("c(r)")
    fig.suptitle(f"PY hard spheres, eta = {table.eta:g}", fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
