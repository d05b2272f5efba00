#  Copyright 2022 Christopher Eltschka
#
#  Licensed under the Apache License, Version 2.0 (the "License");
#  you may not use this file except in compliance with the License.
#  You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
#  Unless required by applicable law or agreed to in writing, software
#  distributed under the License is distributed on an "AS IS" BASIS,
#  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#  See the License for the specific language governing permissions and
#  limitations under the License.


"""
SVG figures: parameter heatmaps, best-error trajectories, SP1 against
the dimension and run-length ECDFs.

Figures are rendered with the non-interactive Agg backend. The SVG
date is omitted and the id salt fixed so that identical results give
identical files.
"""

import pathlib
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt  # pylint: disable=wrong-import-position

from . import settings
from . import resources
from .metrics import EcdfCurve, Histogram2D, RunRecord

matplotlib.rcParams["svg.hashsalt"] = settings.plot["hashsalt"]


def new_figure():
    """
    A figure with one axes in the configured size
    """
    return plt.subplots(figsize=(settings.plot["width"], settings.plot["height"]))


def save_figure(fig, path: pathlib.Path, title: str,
                metadata: Dict[str, str]) -> pathlib.Path:
    """
    Save as SVG, carrying the metadata in the description, and close
    the figure
    """
    description = "; ".join(f"{key}: {metadata[key]}" for key in sorted(metadata))
    fig.tight_layout()
    fig.savefig(path, format="svg",
                metadata={ "Title": title, "Description": description,
                           "Date": None })
    plt.close(fig)
    return path


def plot_heatmap(path: pathlib.Path, histogram: Histogram2D, title: str,
                 metadata: Dict[str, str]) -> pathlib.Path:
    """
    The (F, CR) counts as a grid, F along x and CR along y
    """
    fig, axes = new_figure()
    edges = histogram.edges()
    mesh = axes.pcolormesh(edges, edges, histogram.counts.T,
                           cmap=settings.plot["colormap"], shading="flat")
    fig.colorbar(mesh, ax=axes, label="count")
    axes.set_xlabel("F")
    axes.set_ylabel("CR")
    axes.set_title(title)
    axes.set_aspect("equal")
    return save_figure(fig, path, title, metadata)


def plot_trajectories(path: pathlib.Path, records: Sequence[RunRecord],
                      method: str, metadata: Dict[str, str]) -> pathlib.Path:
    """
    Best-so-far error against counted evaluations, one line per run
    """
    fig, axes = new_figure()
    colour = resources.get_colour(method)
    for record in records:
        if not record.best_error_trajectory:
            continue
        fevals, errors = zip(*record.best_error_trajectory)
        # zero errors cannot be shown on the log scale
        errors = np.maximum(np.array(errors, dtype=float), np.finfo(float).tiny)
        axes.step(fevals, errors, where="post", color=colour, alpha=0.4,
                  linewidth=0.8)
    axes.set_xscale("log")
    axes.set_yscale("log")
    axes.set_xlabel("function evaluations")
    axes.set_ylabel("best error")
    axes.set_title(method)
    axes.grid(True, which="both", color=resources.get_colour("grid"))
    return save_figure(fig, path, f"trajectories {method}", metadata)


def plot_sp1(path: pathlib.Path, function: str,
             table: Dict[Tuple[str, int], Dict[str, Optional[float]]],
             methods: Sequence[str], metadata: Dict[str, str]) -> pathlib.Path:
    """
    SP1 against the dimension for one function; missing entries are
    left out of the lines
    """
    fig, axes = new_figure()
    dimensions = sorted(dimension for name, dimension in table if name == function)
    for method in methods:
        points = [ (dimension, table[(function, dimension)].get(method))
                   for dimension in dimensions ]
        points = [ (dimension, value) for dimension, value in points
                   if value is not None ]
        if not points:
            continue
        xs, ys = zip(*points)
        axes.plot(xs, np.array(ys) / np.array(xs), marker="o",
                  color=resources.get_colour(method), label=method)
    axes.set_yscale("log")
    axes.set_xlabel("dimension")
    axes.set_ylabel("SP1 / D")
    axes.set_title(function)
    axes.grid(True, which="both", color=resources.get_colour("grid"))
    if axes.get_legend_handles_labels()[0]:
        axes.legend()
    return save_figure(fig, path, f"SP1 {function}", metadata)


def plot_ecdf(path: pathlib.Path, curves: Dict[str, EcdfCurve],
              metadata: Dict[str, str]) -> pathlib.Path:
    """
    One ECDF step line per method over FEvals / D on a log axis
    """
    fig, axes = new_figure()
    for method, curve in curves.items():
        axes.step(curve.fevals_per_dimension, curve.fractions, where="post",
                  color=resources.get_colour(method), label=method)
    axes.set_xscale("log")
    axes.set_ylim(0.0, 1.0)
    axes.set_xlabel("function evaluations / D")
    axes.set_ylabel("fraction of (run, target) pairs")
    axes.grid(True, which="both", color=resources.get_colour("grid"))
    if curves:
        axes.legend(loc="upper left")
    return save_figure(fig, path, "run-length ECDF", metadata)
