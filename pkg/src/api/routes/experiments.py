"""
Experiment routes
"""

from typing import Dict, List, Optional

from fastapi import APIRouter, HTTPException, Query

from src.api.errors import not_found, to_http
from src.core.exceptions import KrylovError
from src.models.experiment import ExperimentConfig, Manifest
from src.services.experiment_service import experiment_service

router = APIRouter()


@router.post("/", response_model=Manifest)
async def run_experiment(config: ExperimentConfig, workers: Optional[int] = Query(default=None, ge=1)):
    """
    Runs an experiment synchronously and writes its result files.

    - **config**: every experiment configuration key
    - **workers**: number of worker processes

    Returns the manifest. Aborted runs give 422.
    """
    try:
        return experiment_service.run_and_emit(config, workers)
    except KrylovError as exc:
        raise to_http(exc) from exc


@router.get("/manifest", response_model=Manifest)
async def get_manifest(outputs: str = "results"):
    """Manifest of a finished run"""
    try:
        manifest = experiment_service.get_manifest(outputs)
    except KrylovError as exc:
        raise to_http(exc) from exc
    if manifest is None:
        raise not_found("manifest", outputs)
    return manifest


@router.get("/summary", response_model=List[Dict[str, Optional[float]]])
async def get_summary(mu: float, outputs: str = "results"):
    """
    Per-time means and variances for one dissipation strength.

    - **mu**: μ/J as listed in the configuration
    """
    try:
        rows = experiment_service.get_summary(outputs, mu)
    except KrylovError as exc:
        raise to_http(exc) from exc
    if rows is None:
        raise not_found(f"summary for mu={mu}", outputs)
    return rows


@router.get("/dimensions", response_model=List[Dict[str, Optional[float]]])
async def get_dimensions(outputs: str = "results"):
    """Mean Krylov dimension per dissipation strength"""
    try:
        rows = experiment_service.get_dimensions(outputs)
    except KrylovError as exc:
        raise to_http(exc) from exc
    if rows is None:
        raise not_found("dimension table", outputs)
    return rows
