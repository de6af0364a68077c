"""
Measure Plot

Density of the absolutely continuous part on E and the gap atoms as stems.
"""

import os

import matplotlib.pyplot as plt
import numpy as np

from . import (
    AXIS_LABEL_SIZE,
    IN_FIGURE_TEXT_SIZE,
    get_angle_label,
    setup_legend,
    setup_plot_fonts,
)


def plot(
    mu,
    density_fn,
    arcset,
    points_per_arc=400,
    output_dir="plots",
    output_format=".svg",
    verbose=False,
):
    """
    Create the measure plot.

    Args:
        mu: QuadratureMeasure with its atoms
        density_fn: Callable φ ↦ density on E
        arcset: The ArcSet carrying the density
        points_per_arc: Plot resolution on each arc

    Returns:
        Path to the saved plot file
    """
    fig, ax = plt.subplots(figsize=(8, 6))
    setup_plot_fonts(ax)

    for k, arc in enumerate(arcset.arcs):
        # Stay off the endpoints, where the density has an inverse square-root blowup
        edge = 1e-3 * arc.length
        phi = arc.start_angle + np.linspace(edge, arc.length - edge, points_per_arc)
        ax.plot(phi, density_fn(phi), "b-", lw=2, label="density" if k == 0 else None)
        ax.axvspan(arc.start_angle, arc.start_angle + arc.length, color="0.9", zorder=0)

    if mu.atoms:
        angles = np.mod(np.angle(mu.atom_locations), 2.0 * np.pi)
        stems = ax.stem(angles, mu.atom_weights, linefmt="r-", markerfmt="ro", basefmt=" ",
                        label="atoms")
        stems.baseline.set_visible(False)

    ax.set_xlabel(get_angle_label(), fontsize=AXIS_LABEL_SIZE)
    ax.set_ylabel("density / mass", fontsize=AXIS_LABEL_SIZE)
    ax.set_ylim(bottom=0.0)
    ax.text(0.02, 0.95, f"total mass {mu.total_mass:.10f}", transform=ax.transAxes,
            fontsize=IN_FIGURE_TEXT_SIZE, verticalalignment="top")
    setup_legend(ax, loc="upper right")

    os.makedirs(output_dir, exist_ok=True)
    output_path = os.path.join(output_dir, f"MeasureDensity{output_format}")
    if verbose:
        print(f"Saving measure plot to: {output_path}")
    plt.savefig(output_path)
    plt.close()

    return output_path
