"""
Verblunsky Sequence Plot

|α_n| and arg α_n against n, with the Schur-algorithm parameters overlaid
when given.
"""

import os

import matplotlib.pyplot as plt
import numpy as np
from matplotlib.ticker import MaxNLocator

from . import AXIS_LABEL_SIZE, get_index_label, setup_legend, setup_plot_fonts


def plot(
    alpha,
    schur=None,
    label="",
    output_dir="plots",
    output_format=".svg",
    verbose=False,
):
    """
    Create the two-panel Verblunsky coefficient plot.

    Args:
        alpha: SchurParamSeq (or array) of Verblunsky coefficients
        schur: Optional second sequence from the Schur algorithm
        label: Text appended to the figure title (e.g. the divisor)
        output_dir: Output directory for the plot
        output_format: File suffix (.png, .pdf, .svg)

    Returns:
        Path to the saved plot file
    """
    a = np.asarray(getattr(alpha, "params", alpha), dtype=complex)
    n = np.arange(len(a))

    fig, (ax_abs, ax_arg) = plt.subplots(2, 1, figsize=(8, 8), sharex=True)
    setup_plot_fonts(ax_abs)
    setup_plot_fonts(ax_arg)

    ax_abs.plot(n, np.abs(a), "ko-", lw=1.5, ms=4, label="OPUC recursion")
    ax_arg.plot(n, np.angle(a), "ko-", lw=1.5, ms=4, label="OPUC recursion")
    if schur is not None:
        s = np.asarray(getattr(schur, "params", schur), dtype=complex)
        m = np.arange(len(s))
        ax_abs.plot(m, np.abs(s), "r--", lw=1.5, label="Schur algorithm")
        ax_arg.plot(m, np.angle(s), "r--", lw=1.5, label="Schur algorithm")

    ax_abs.set_ylabel(r"$|\alpha_n|$", fontsize=AXIS_LABEL_SIZE)
    ax_abs.set_ylim(0.0, 1.0)
    ax_arg.set_ylabel(r"arg $\alpha_n$", fontsize=AXIS_LABEL_SIZE)
    ax_arg.set_ylim(-np.pi - 0.1, np.pi + 0.1)
    ax_arg.set_xlabel(get_index_label(), fontsize=AXIS_LABEL_SIZE)
    ax_arg.xaxis.set_major_locator(MaxNLocator(integer=True))
    if label:
        ax_abs.set_title(label, fontsize=AXIS_LABEL_SIZE)
    setup_legend(ax_abs, loc="upper right")

    os.makedirs(output_dir, exist_ok=True)
    output_path = os.path.join(output_dir, f"VerblunskySequence{output_format}")
    if verbose:
        print(f"Saving Verblunsky sequence plot to: {output_path}")
    plt.savefig(output_path)
    plt.close()

    return output_path
