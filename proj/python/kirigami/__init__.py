"""Kirigami cut-lattice design space: geometry, samplers, analysis and evaluation."""

import json as _json

from ._core import (
    DatasetError,
    admissible_path,
    base_angle,
    count_intersections,
    euclidean_distance,
    generate_dataset,
    is_admissible,
    nonadmissible_fraction,
    pair_intersects,
    path_crossing_probability,
    read_dataset,
    uniform_set,
    wrap_angle,
    write_dataset,
)
from ._core import evaluate as _evaluate


def evaluate(path, reference="", baseline_samples=0, seed=0):
    """Evaluate a KGS1 file and return the report as a dict."""
    return _json.loads(_evaluate(path, reference, baseline_samples, seed))


__all__ = [
    "DatasetError",
    "admissible_path",
    "base_angle",
    "count_intersections",
    "euclidean_distance",
    "evaluate",
    "generate_dataset",
    "is_admissible",
    "nonadmissible_fraction",
    "pair_intersects",
    "path_crossing_probability",
    "read_dataset",
    "uniform_set",
    "wrap_angle",
    "write_dataset",
]
