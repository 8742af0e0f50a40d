"""
Repository for experiment result files
"""

import glob
import os
from typing import Dict, List, Optional

import numpy as np
import pandas as pd

from src.core.exceptions import StorageError
from src.database.storage import CSVStorage, JSONStorage
from src.models.experiment import AggregateTable, Manifest, ResultsBundle
from src.models.observables import LemmaReport

SUMMARY_COLUMNS = [
    "jt", "k_mean", "k_var", "c_krylov_mean", "c_krylov_var",
    "c_string_mean", "c_string_var", "norm_mean",
]
DIMENSION_COLUMNS = ["mu", "mk_mean", "mk_var", "n_success", "n_excluded"]
COEFFICIENT_COLUMNS = ["n", "re_a", "im_a", "b", "c"]
SIZE_COLUMNS = ["jt", "size_mean", "size_var"]


def mu_tag(mu: float) -> str:
    return f"mu{mu:.4f}"


def coefficient_key(mu: float, realization: int) -> str:
    return f"{mu_tag(mu)}_r{realization:04d}"


class ResultsRepository:
    """Reads and writes the result files under one outputs directory"""

    def __init__(self, root: str):
        self.root = root

    def _path(self, *parts: str) -> str:
        return os.path.join(self.root, *parts)

    def summary_frame(self, table: AggregateTable) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "jt": table.times,
                "k_mean": table.means["K"],
                "k_var": table.variances["K"],
                "c_krylov_mean": table.means["C_krylov"],
                "c_krylov_var": table.variances["C_krylov"],
                "c_string_mean": table.means["C_string"],
                "c_string_var": table.variances["C_string"],
                "norm_mean": table.means["norm"],
            },
            columns=SUMMARY_COLUMNS,
        )

    def emit(self, bundle: ResultsBundle) -> List[str]:
        """Write every artifact of a bundle; returns the written paths"""
        written = []

        if bundle.tables:
            for table in bundle.tables:
                summary = CSVStorage(self._path(f"summary_{mu_tag(table.mu)}.csv"))
                summary.save(self.summary_frame(table))
                sizes = CSVStorage(self._path(f"sizes_{mu_tag(table.mu)}.csv"))
                sizes.save(
                    pd.DataFrame(
                        {
                            "jt": table.times,
                            "size_mean": table.means["mean_size"],
                            "size_var": table.variances["mean_size"],
                        },
                        columns=SIZE_COLUMNS,
                    )
                )
                written += [summary.file_path, sizes.file_path]

            dimensions = CSVStorage(self._path("dimensions.csv"))
            dimensions.save(
                pd.DataFrame(
                    [
                        [t.mu, t.mk_mean, t.mk_var, t.n_success, t.n_excluded]
                        for t in bundle.tables
                    ],
                    columns=DIMENSION_COLUMNS,
                )
            )
            written.append(dimensions.file_path)

        self._clear_coefficients()
        for key in sorted(bundle.coefficients):
            storage = CSVStorage(self._path("coefficients", f"{key}.csv"))
            frame = pd.DataFrame(bundle.coefficients[key], columns=COEFFICIENT_COLUMNS)
            frame["n"] = frame["n"].astype(int)
            storage.save(frame)
            written.append(storage.file_path)

        manifest = JSONStorage(self._path("manifest.json"))
        manifest.save(bundle.manifest.model_dump(mode="json"))
        written.append(manifest.file_path)
        return written

    def _clear_coefficients(self) -> None:
        """Removes coefficient tables left by an earlier emit"""
        for path in glob.glob(self._path("coefficients", "*.csv")):
            try:
                os.remove(path)
            except OSError as exc:
                raise StorageError(f"cannot remove ({exc.strerror})", path) from exc

    def load_manifest(self) -> Optional[Manifest]:
        data = JSONStorage(self._path("manifest.json")).load()
        if data is None:
            return None
        return Manifest(**data)

    def load_summary(self, mu: float) -> Optional[pd.DataFrame]:
        return CSVStorage(self._path(f"summary_{mu_tag(mu)}.csv")).load()

    def load_dimensions(self) -> Optional[pd.DataFrame]:
        return CSVStorage(self._path("dimensions.csv")).load()

    def load_coefficients(self, mu: float, realization: int) -> Optional[pd.DataFrame]:
        key = coefficient_key(mu, realization)
        return CSVStorage(self._path("coefficients", f"{key}.csv")).load()

    def save_lemma(self, reports: List[LemmaReport]) -> str:
        storage = JSONStorage(self._path("lemma.json"))
        payload: Dict[str, object] = {
            "passed": all(r.passed for r in reports),
            "reports": [
                {**r.model_dump(mode="json"), "slopes_ok": r.slopes_ok, "minimal": r.minimal}
                for r in reports
            ],
        }
        storage.save(payload)
        return storage.file_path


def coefficient_table(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Rows (n, Re aₙ, Im aₙ, bₙ, Re cₙ)"""
    n = np.arange(a.shape[0], dtype=float)
    return np.column_stack([n, a.real, a.imag, b, np.real(c)])
