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
Result files: per-run CSV, summary CSV, heatmap CSV, the sweep table,
ECDF curves and the metadata file.

Every file starts with '#' comment lines carrying the configuration
and the decisions that affect the numbers. Floats are written with
repr so that identical runs give byte-identical files.
"""

import csv
import pathlib
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import settings
from .metrics import (RunRecord, EcdfCurve, Histogram2D, median_fevals_to_success,
                      sp1, sp1_as_written, success_rate, successful_fevals)


def format_value(value) -> str:
    """
    Text for a CSV cell: empty for missing values, repr for floats
    """
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def metadata_lines(metadata: Dict[str, str]) -> List[str]:
    """
    The metadata as '# key: value' lines, sorted by key
    """
    header = f"# {settings.lab_info['name']} {settings.lab_info['version']}"
    return [header] + [ f"# {key}: {metadata[key]}" for key in sorted(metadata) ]


def write_table(path: pathlib.Path, metadata: Dict[str, str],
                header: Sequence[str], rows: Iterable[Sequence]) -> pathlib.Path:
    """
    Write a CSV file preceded by the metadata comment lines
    """
    with open(path, "w", encoding="utf8", newline="") as csvfile:
        for line in metadata_lines(metadata):
            csvfile.write(line + "\n")
        writer = csv.writer(csvfile, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([ format_value(value) for value in row ])
    return path


def write_runs_csv(path: pathlib.Path, records: Sequence[RunRecord],
                   metadata: Dict[str, str]) -> pathlib.Path:
    """
    One row per run, ordered by run index
    """
    header = [ "run", "success", "fevals_to_success", "fevals", "final_error",
               "oracle_evals", "theta_length" ]
    rows = ( (record.run_index, record.success, record.fevals_to_success,
              record.fevals, record.final_error(), record.oracle_evals,
              len(record.theta_trace))
             for record in sorted(records, key=lambda record: record.run_index) )
    return write_table(path, metadata, header, rows)


def summarize(method: str, records: Sequence[RunRecord]) -> Dict[str, str]:
    """
    The summary statistics of an experiment, formatted for output
    """
    fevals = successful_fevals(records)
    summary = {
        "method": method,
        "runs": len(records),
        "successes": len(fevals),
        "success_rate": success_rate(records),
        "sp1": sp1(records),
        "sp1_as_written": sp1_as_written(records),
        "median_fevals_to_success": median_fevals_to_success(records),
        "min_fevals_to_success": min(fevals) if fevals else None,
        "mean_fevals": float(np.mean([ record.fevals for record in records ])),
        "oracle_evals": sum(record.oracle_evals for record in records)
        }
    return { key: format_value(value) for key, value in summary.items() }


def write_summary_csv(path: pathlib.Path, summary: Dict[str, str],
                      metadata: Dict[str, str]) -> pathlib.Path:
    """
    The summary as key,value rows
    """
    return write_table(path, metadata, ["key", "value"], summary.items())


def write_heatmap_csv(path: pathlib.Path, histogram: Histogram2D,
                      run_index: Optional[int],
                      metadata: Dict[str, str]) -> pathlib.Path:
    """
    The counts matrix with one row per F bin and one column per CR bin,
    each labelled by its lower edge
    """
    metadata = dict(metadata)
    metadata["heatmap_run"] = format_value(run_index)
    metadata["heatmap_total"] = str(histogram.total())
    edges = histogram.edges()[:-1]
    header = ["F\\CR"] + [ format_value(edge) for edge in edges ]
    rows = ( [edge] + [ int(count) for count in histogram.counts[row] ]
             for row, edge in enumerate(edges) )
    return write_table(path, metadata, header, rows)


def write_meta(path: pathlib.Path, metadata: Dict[str, str]) -> pathlib.Path:
    """
    The metadata as a plain key: value file
    """
    with open(path, "w", encoding="utf8") as metafile:
        for key in sorted(metadata):
            metafile.write(f"{key}: {metadata[key]}\n")
    return path


def write_sp1_table(path: pathlib.Path,
                    table: Dict[Tuple[str, int], Dict[str, Optional[float]]],
                    methods: Sequence[str],
                    metadata: Dict[str, str]) -> pathlib.Path:
    """
    One row per (function, dimension), one column per method; cells
    without a successful run stay empty
    """
    header = ["function", "dimension"] + list(methods)
    rows = ( [function, dimension] + [ table[(function, dimension)].get(method)
                                       for method in methods ]
             for function, dimension in sorted(table) )
    return write_table(path, metadata, header, rows)


def write_ecdf_csv(path: pathlib.Path, curve: EcdfCurve,
                   metadata: Dict[str, str]) -> pathlib.Path:
    """
    The ECDF as (budget, budget / D, fraction) rows
    """
    rows = zip(curve.budgets, curve.fevals_per_dimension, curve.fractions)
    return write_table(path, metadata, ["fevals", "fevals_per_dimension",
                                        "fraction"], rows)
