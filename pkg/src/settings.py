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
Settings for the gaolab experiments
"""

from typing import Dict, List, Tuple, Union, Any

# Information about the lab (also used to locate the result directory)
lab_info: Dict[str, str] = {
    "name": "gaolab",
    "title": "GAO-DE laboratory",
    "version": "0.1",
    "author": "celtschk"
    }

# environment variable overriding the output root
output_env_var: str = "GAOLAB_OUTPUT"

# sub directory of the user data directory used when nothing else is given
results_dir: str = "results"

# The experimental protocol. Budget and population size are None
# because they depend on the dimension; see experiment.py
protocol: Dict[str, Any] = {
    "runs": 51,
    "budget": None,
    "budget_per_dimension": 100000,
    "population_size": None,
    "threshold": 1e-8,
    "seed": 1,
    "generator": "pcg64",
    "workers": 0,
    "success_criterion": "conventional",
    "instance_seed": 12345
    }

# population size for small dimensions; larger ones use 5*D
small_population: Dict[int, int] = {
    2: 20,
    3: 20,
    4: 20
    }

population_factor: int = 5

# bit generators accepted for the random streams
generators: Tuple[str, ...] = ("pcg64", "philox", "sfc64", "mt19937")

success_criteria: Tuple[str, ...] = ("conventional", "strict")

# Meta-parameters of the adaptation methods
methods: Dict[str, Dict[str, Any]] = {
    "jde": {
        "tau_f": 0.1,
        "tau_cr": 0.1,
        "f_lower": 0.1,
        "f_upper": 0.9,
        "f_init": 0.5,
        "cr_init": 0.9
        },
    "epsde": {
        "f_pool": (0.4, 0.5, 0.6, 0.7, 0.8, 0.9),
        "cr_pool": (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9),
        # memory capacity as a multiple of the population size
        "memory_factor": 1
        },
    "jade": {
        "c": 0.1,
        "mu_f": 0.5,
        "mu_cr": 0.5,
        "scale_f": 0.1,
        "scale_cr": 0.1
        },
    "mde": {
        "f_m": 0.5,
        "cr_m": 0.6,
        "exponent": 1.5,
        "w_f": { "min": 0.8, "max": 1.0 },
        "w_cr": { "min": 0.9, "max": 1.0 },
        "scale_f": 0.1,
        "scale_cr": 0.1
        },
    "shade": {
        "memory_size": 10,
        "memory_init": 0.5,
        "scale_f": 0.1,
        "scale_cr": 0.1
        },
    "random": {
        "f_min": 0.0,
        "f_max": 1.0,
        "cr_min": 0.0,
        "cr_max": 1.0
        }
    }

# cap on Cauchy re-draws before falling back to the location parameter
cauchy_max_draws: int = 1000

# The oracle. "preset" is one of the keys of oracle_presets or one of
# oracle_modes. A preset fixes f_min; "custom" takes all ranges as given.
oracle: Dict[str, Any] = {
    "lambda": 200,
    "preset": "composite",
    "f_min": 0.0,
    "f_max": 1.0,
    "cr_min": 0.0,
    "cr_max": 1.0,
    "repeats": 1
    }

oracle_presets: Dict[str, Dict[str, float]] = {
    "gaode00": { "f_min": 0.0 },
    "gaode04": { "f_min": 0.4 }
    }

# composite: the better of gaode00 and gaode04 per run
oracle_modes: Tuple[str, ...] = ("composite", "custom")

# All method tokens, in the column order of the comparison tables
method_tokens: List[str] = [ "gao", "jde", "epsde", "jade", "mde", "shade",
                             "random" ]

# Benchmark functions: search box and optimum location
benchmarks: Dict[str, Dict[str, float]] = {
    "sphere": { "lower": -5.0, "upper": 5.0, "optimum": 0.0 },
    "ellipsoid": { "lower": -5.0, "upper": 5.0, "optimum": 0.0 },
    "rot-ellipsoid": { "lower": -5.0, "upper": 5.0, "optimum": 0.0 },
    "rosenbrock": { "lower": -5.0, "upper": 10.0, "optimum": 1.0 },
    "ackley": { "lower": -32.0, "upper": 32.0, "optimum": 0.0 },
    "rastrigin": { "lower": -5.12, "upper": 5.12, "optimum": 0.0 }
    }

# conditioning of the (rotated) ellipsoid
ellipsoid_condition: float = 1e6

# default sweep: everything the comparison figure shows
sweep: Dict[str, List[Any]] = {
    "methods": [ "gao", "jde", "epsde", "jade", "mde", "shade" ],
    "functions": list(benchmarks),
    "dimensions": [ 2, 3, 5, 10, 20 ]
    }

# the ECDF experiment
ecdf: Dict[str, Any] = {
    "methods": [ "gao", "jde", "epsde", "jade", "mde", "shade" ],
    "functions": list(benchmarks),
    "dimension": 5,
    "budget_per_dimension": 10000,
    "target_count": 50,
    "target_high": 2.0,
    "target_low": -8.0,
    "grid_points": 100,
    "gao_repeats": 3
    }

# heatmap and plot layout
plot: Dict[str, Any] = {
    "heatmap_bins": 10,
    "width": 6.4,
    "height": 4.8,
    "hashsalt": "gaolab",
    "colormap": "Blues"
    }

# colours used in the plots; a string that is itself a key is looked up
# again, anything else is handed to matplotlib
colours: Dict[str, Union[str, Tuple[float, float, float]]] = {
    "gao": "black",
    "jde": "tab:blue",
    "epsde": "tab:orange",
    "jade": "tab:green",
    "mde": "tab:red",
    "shade": "tab:purple",
    "random": "tab:gray",
    "oracle": "gao",
    "grid": (0.85, 0.85, 0.85)
    }

# decisions that affect the numbers; they go into every output file
decisions: Dict[str, str] = {
    "operator": "rand/1/bin",
    "draw_order": "r1,r2,r3 then j_r then D mask uniforms",
    "bound_repair": "midpoint between parent and violated bound",
    "selection_tie": "trial survives on equal objective value",
    "oracle_tie": "lowest candidate index",
    "jade": "no archive, mu adaptation only",
    "mde": "power mean n=1.5, F_m=0.5, CR_m=0.6, w_CR=0.9+0.1*rand",
    "shade_cr_mean": "weighted Lehmer mean",
    "epsde_memory": "capacity N, oldest evicted, coin flip on failure",
    "population_d4_d5": "N=20 for D=4, N=5D for D=5",
    "sp1": "mean successful FEvals / success rate",
    "bounds": "sphere/ellipsoid [-5,5], rosenbrock [-5,10], "
              "ackley [-32,32], rastrigin [-5.12,5.12]"
    }

# output file names
files: Dict[str, str] = {
    "runs": "runs.csv",
    "summary": "summary.csv",
    "heatmap": "heatmap_{method}.csv",
    "heatmap_plot": "heatmap_{method}.svg",
    "trajectory_plot": "trajectory.svg",
    "meta": "meta.txt",
    "sp1_table": "sp1_table.csv",
    "sp1_plot": "sp1_{function}.svg",
    "ecdf": "ecdf_{method}.csv",
    "ecdf_plot": "ecdf.svg"
    }
