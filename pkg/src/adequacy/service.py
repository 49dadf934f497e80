"""JSON-over-HTTP service for interactive what-if exploration.

Endpoints (all JSON):

    POST /api/scenarios                       submit or reuse a scenario job
    GET  /api/scenarios/{id}                  job status
    GET  /api/scenarios/{id}/metrics          headline metrics + CVaR curve
    GET  /api/scenarios/{id}/distributions/{metric}
    POST /api/scenarios/{id}/whatif           CONE/VOLL procurement re-solve
    GET  /api/health

Identical requests (deep-equal after canonicalization, same seed) map to the
same content-addressed job id, and completed results are immutable: repeated
reads return identical payloads. What-if solves reuse the job's cached
analytic risk curves, so they never re-run the Monte Carlo simulation.
Configuration comes from environment variables when served standalone:
ADEQUACY_LISTEN (host:port), ADEQUACY_DATA_DIR, ADEQUACY_WORKERS.
"""

from __future__ import annotations

import json
import threading
from concurrent.futures import ThreadPoolExecutor
from io import StringIO
from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field, field_validator

from .errors import BoundarySolutionError, CalibrationInfeasibleError, ValidationError
from .experiments import (
    DISTRIBUTION_METRICS,
    METRIC_UNITS,
    calibrate_level,
    distributions_by_level,
)
from .fleet import load_fleet
from .indices import risk_indices, year_contributions
from .metrics import cvar_curve, histogram, var_alpha
from .procurement import ProcurementProblem, RiskCurves, optimize_procurement
from .runconfig import DEFAULT_ALPHAS, RunConfig
from .sequential import eu_distribution, simulate
from .store import ResultStore, canonical_request_hash
from .weather import load_dataset

__all__ = ["create_app", "ScenarioRequest"]


class ScenarioRequest(BaseModel):
    """Validated subset of the run configuration a client may vary."""

    wind_gw: float = Field(ge=0.0)
    target_eeu_mwh: float | None = Field(default=None, gt=0.0)
    alphas: list[float] = Field(default_factory=lambda: list(DEFAULT_ALPHAS))
    n_replications: int = Field(default=1000, ge=1, le=200_000)
    seed: int = 0
    excluded_years: list[str] = Field(default_factory=list)

    @field_validator("alphas")
    @classmethod
    def _alphas_in_range(cls, v):
        for a in v:
            if not 0.0 <= a < 1.0:
                raise ValueError(f"alpha {a} outside [0, 1)")
        return v

    def canonical(self) -> dict:
        doc = self.model_dump()
        doc["alphas"] = sorted(set(float(a) for a in doc["alphas"]))
        doc["excluded_years"] = sorted(set(doc["excluded_years"]))
        return doc


class WhatIfRequest(BaseModel):
    cone_per_mw_year: float = Field(gt=0.0)
    voll_per_mwh: float = Field(gt=0.0)


class _Job:
    def __init__(self, job_id: str, request: dict):
        self.id = job_id
        self.request = request
        self.status = "queued"
        self.error: str | None = None
        self.lock = threading.Lock()
        self.curves: RiskCurves | None = None


class _Engine:
    """Owns the system data, the job registry and the worker pool."""

    def __init__(self, cfg: RunConfig, data_dir: str, n_workers: int):
        cfg.require_paths()
        self.cfg = cfg
        self.fleet = load_fleet(cfg.fleet_path)
        self.dataset = load_dataset(cfg.demand_path, cfg.wind_path)
        self.store = ResultStore(data_dir)
        self.jobs: dict[str, _Job] = {}
        self.registry_lock = threading.Lock()
        self.pool = ThreadPoolExecutor(max_workers=max(1, n_workers))

    # -- job lifecycle ------------------------------------------------------

    def submit(self, request: ScenarioRequest) -> _Job:
        canonical = request.canonical()
        job_id = canonical_request_hash(canonical)
        with self.registry_lock:
            job = self.jobs.get(job_id)
            if job is None:
                job = _Job(job_id, canonical)
                if self.store.is_complete(job_id):
                    job.status = "done"
                self.jobs[job_id] = job
                if job.status != "done":
                    job.status = "queued"
                    self.pool.submit(self._run, job)
        return job

    def get(self, job_id: str) -> _Job:
        with self.registry_lock:
            job = self.jobs.get(job_id)
        if job is None:
            if self.store.is_complete(job_id):
                # completed in a previous process; resurrect a done job
                request = self.store.read_json(job_id, "request.json")
                job = _Job(job_id, request)
                job.status = "done"
                with self.registry_lock:
                    job = self.jobs.setdefault(job_id, job)
                return job
            raise HTTPException(status_code=404, detail=f"unknown job id {job_id!r}")
        return job

    def _scenario_pieces(self, request: dict):
        dataset = self.dataset
        for year in request["excluded_years"]:
            dataset = dataset.without(year)
        return dataset, self._base(request["wind_gw"])

    def _base(self, wind_gw: float):
        from .weather import ScenarioConfig

        cfg = self.cfg
        return ScenarioConfig(
            target_acs_peak_mw=cfg.target_acs_peak_mw,
            wind_total_gw=wind_gw,
            season_hours=cfg.season_hours,
            onshore_fraction=cfg.onshore_fraction,
            demand_shift_mw=cfg.demand_shift_mw,
        )

    def _run(self, job: _Job) -> None:
        job.status = "running"
        try:
            files = self._compute(job.request)
            self.store.write_result(job.id, files)
            job.status = "done"
        except Exception as exc:  # surfaced through the status endpoint
            job.error = str(exc)
            job.status = "failed"

    def _compute(self, request: dict) -> dict[str, str]:
        dataset, scenario = self._scenario_pieces(request)
        resolution = self.cfg.resolution_mw
        calibration = None
        if request["target_eeu_mwh"] is not None:
            level = calibrate_level(
                self.fleet, dataset, scenario, request["wind_gw"],
                request["target_eeu_mwh"], resolution,
            )
            scenario = level.scenario
            curves = level.curves
            calibration = {
                "shift_mw": level.calibration.shift_mw,
                "eeu_mwh": level.calibration.eeu_mwh,
            }
        else:
            curves = RiskCurves(self.fleet, dataset, scenario, resolution)

        idx = risk_indices(self.fleet, dataset, scenario, capdist=curves.capdist)
        outcome = simulate(
            self.fleet, dataset, scenario, request["n_replications"], request["seed"]
        )
        eu = eu_distribution(outcome)
        curve = cvar_curve(eu, request["alphas"])
        metrics = {
            "lole_hours": float(
                sum(r.lold_hours for r in outcome.replications) / outcome.n_replications
            ),
            "eeu_mwh": eu.mean(),
            "analytic": {
                "lole_hours": idx.lole_hours_per_period,
                "eeu_mwh": idx.eeu_mwh_per_period,
            },
            "calibration": calibration,
            "cvar_curve": [{"alpha": a, "cvar_eu_mwh": c} for a, c in curve],
            "per_year_contributions": [
                {"year": year, "fraction": frac}
                for year, frac in year_contributions(idx).items()
            ],
            "scenario": {
                "wind_gw": request["wind_gw"],
                "demand_shift_mw": scenario.demand_shift_mw,
                "n_replications": request["n_replications"],
                "seed": request["seed"],
                "excluded_years": request["excluded_years"],
            },
        }

        distributions = {}
        for metric, dist in distributions_by_level({0.0: outcome})[0.0].items():
            edges, counts = histogram(dist)
            distributions[metric] = {
                "metric": metric,
                "unit": METRIC_UNITS[metric],
                "bin_edges": [float(e) for e in edges],
                "counts": [int(round(c)) for c in counts],
                "n_samples": dist.n_samples,
                "quantiles": {
                    str(q): var_alpha(dist, q) for q in (0.5, 0.9, 0.95, 0.99)
                },
                "mean": dist.mean(),
            }

        outcome_buf, days_buf = StringIO(), StringIO()
        # reuse the CSV writers through temp files kept in memory
        import csv as _csv

        w = _csv.writer(outcome_buf)
        w.writerow(["replication", "weather_year", "lold_hours", "eu_mwh", "shortfall_days"])
        for i, r in enumerate(outcome.replications):
            w.writerow([i, r.weather_year, r.lold_hours, repr(r.eu_mwh), r.shortfall_days])
        w = _csv.writer(days_buf)
        w.writerow(["replication", "day_index", "eu_mwh"])
        for i, r in enumerate(outcome.replications):
            for d, eu_day in enumerate(r.eu_per_shortfall_day):
                w.writerow([i, d, repr(eu_day)])

        return {
            "request.json": json.dumps(request, indent=2, sort_keys=True) + "\n",
            "metrics.json": json.dumps(metrics, indent=2, sort_keys=True) + "\n",
            "distributions.json": json.dumps(distributions, indent=2, sort_keys=True) + "\n",
            "outcome.csv": outcome_buf.getvalue(),
            "days.csv": days_buf.getvalue(),
        }

    # -- read-side helpers ----------------------------------------------------

    def require_done(self, job_id: str) -> _Job:
        job = self.get(job_id)
        if job.status != "done":
            raise HTTPException(
                status_code=409,
                detail={"status": job.status, "error": job.error},
            )
        return job

    def whatif(self, job: _Job, cone: float, voll: float) -> dict:
        dataset, scenario = self._scenario_pieces(job.request)
        with job.lock:
            if job.curves is None:
                job.curves = RiskCurves(
                    self.fleet, dataset, scenario, self.cfg.resolution_mw
                )
            curves = job.curves
        problem = ProcurementProblem(
            cone_per_mw_year=cone,
            voll_per_mwh=voll,
            fleet=self.fleet,
            dataset=dataset,
            scenario=scenario,
            resolution_mw=self.cfg.resolution_mw,
        )
        solution = optimize_procurement(problem, curves)
        return {
            "cone_per_mw_year": cone,
            "voll_per_mwh": voll,
            "target_lole_hours": cone / voll,
            "r_star_mw": solution.r_star_mw,
            "lole_at_r_star_hours": solution.lole_at_r_star,
            "eeu_at_r_star_mwh": solution.eeu_at_r_star,
            "total_cost": solution.total_cost,
        }


def create_app(
    cfg: RunConfig,
    data_dir: str,
    n_workers: int = 2,
    static_dir: str | None = None,
) -> FastAPI:
    engine = _Engine(cfg, data_dir, n_workers)
    app = FastAPI(title="adequacy decision service")
    app.state.engine = engine

    @app.get("/api/health")
    def health():
        return {"status": "ok"}

    @app.post("/api/scenarios", status_code=202)
    def create_scenario(request: ScenarioRequest):
        try:
            job = engine.submit(request)
        except ValidationError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from None
        return {"id": job.id, "status": job.status}

    @app.get("/api/scenarios/{job_id}")
    def scenario_status(job_id: str):
        job = engine.get(job_id)
        return {
            "id": job.id,
            "status": job.status,
            "error": job.error,
            "request": job.request,
        }

    @app.get("/api/scenarios/{job_id}/metrics")
    def scenario_metrics(job_id: str):
        job = engine.require_done(job_id)
        return engine.store.read_json(job.id, "metrics.json")

    @app.get("/api/scenarios/{job_id}/distributions/{metric}")
    def scenario_distribution(job_id: str, metric: str):
        if metric not in DISTRIBUTION_METRICS:
            raise HTTPException(
                status_code=404,
                detail=f"unknown metric {metric!r}; have {list(DISTRIBUTION_METRICS)}",
            )
        job = engine.require_done(job_id)
        distributions = engine.store.read_json(job.id, "distributions.json")
        if metric not in distributions:
            raise HTTPException(
                status_code=409, detail=f"metric {metric!r} has no samples for this job"
            )
        return distributions[metric]

    @app.post("/api/scenarios/{job_id}/whatif")
    def scenario_whatif(job_id: str, request: WhatIfRequest):
        job = engine.require_done(job_id)
        try:
            return engine.whatif(job, request.cone_per_mw_year, request.voll_per_mwh)
        except (BoundarySolutionError, CalibrationInfeasibleError) as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from None

    if static_dir and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="dashboard")

    return app
