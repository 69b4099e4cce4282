"""Figure rendering for verification reports.

Figures are diagnostics only: margins are converted to floats for plotting,
while the JSON records keep the exact rationals.
"""

from __future__ import annotations

from fractions import Fraction


def render_margin_figure(records, path, title=None):
    """Render margin diagnostics for a corpus run to an image file.

    Left panel: histogram of margins. Right panel: margin per pair in run
    order, violations (negative margins) highlighted. Errored records are
    skipped. Returns the number of plotted records.
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    margins = []
    hold_flags = []
    for r in records:
        if "error" in r:
            continue
        margins.append(float(Fraction(r["margin"])))
        hold_flags.append(bool(r["holds"]))
    fig, (ax_hist, ax_seq) = plt.subplots(1, 2, figsize=(10, 4))
    if margins:
        ax_hist.hist(margins, bins=min(40, max(10, len(set(margins)))), color="#2b6cb0")
    ax_hist.set_xlabel("margin  t_H(G) - t_K2(G)^e")
    ax_hist.set_ylabel("pairs")
    ax_hist.set_title("margin distribution")
    idx = range(len(margins))
    ok = [i for i in idx if hold_flags[i]]
    bad = [i for i in idx if not hold_flags[i]]
    ax_seq.plot(ok, [margins[i] for i in ok], ".", ms=4, color="#2b6cb0", label="holds")
    if bad:
        ax_seq.plot(bad, [margins[i] for i in bad], "x", ms=6, color="#c53030",
                    label="violated")
        ax_seq.legend(loc="best", fontsize=8)
    ax_seq.axhline(0.0, color="#c53030", lw=0.8)
    ax_seq.set_xlabel("pair index")
    ax_seq.set_ylabel("margin")
    ax_seq.set_title("margins in run order")
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return len(margins)
