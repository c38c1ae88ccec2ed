from typing import List

from fastapi import FastAPI, HTTPException
from fastapi.concurrency import run_in_threadpool
from fastapi.middleware.cors import CORSMiddleware

from app import __version__
from app.config import settings
from app.exceptions import ConfigurationError, FeederError, NetworkFileNotFoundError, SimulationError
from app.harness.enumeration import enumerate_all
from app.models import (
    Algorithm,
    EnumerateRequest,
    EnumerateResponse,
    EvaluateRequest,
    EvaluateResponse,
    FrontierEntryRecord,
    ModuleViolation,
    NetworkInfo,
    OptimizeRequest,
    OptimizeResponse,
)
from app.network_loader import NetworkLoader, list_bundled_networks
from app.optimizer.mads import run_mads
from app.optimizer.random_search import run_random_search
from app.optimizer.results import RunConfig, parse_bits
from app.simulation.evaluator import FeederEvaluator, evaluate_detailed

# Create FastAPI app
app = FastAPI(
    title="Feeder Reconfiguration API",
    description="Bi-objective (loss, violation) feeder reconfiguration with MADS and a Pareto frontier filter",
    version=__version__
)

# Add CORS middleware
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],  # Configure appropriately for production
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


def _http_error(error: FeederError) -> HTTPException:
    """Map the package error hierarchy onto status codes"""
    if isinstance(error, NetworkFileNotFoundError):
        return HTTPException(status_code=404, detail=str(error))
    if isinstance(error, ConfigurationError):
        return HTTPException(status_code=400, detail=str(error))
    if isinstance(error, SimulationError):
        return HTTPException(status_code=500, detail=f"Simulation failure: {error}")
    return HTTPException(status_code=500, detail=str(error))


@app.get("/")
async def root():
    """Root endpoint with API information"""
    return {
        "message": "Feeder Reconfiguration API",
        "version": __version__,
        "endpoints": {
            "networks": "/networks",
            "evaluate": "/evaluate",
            "optimize": "/optimize",
            "enumerate": "/enumerate",
            "health": "/health"
        }
    }


@app.get("/health")
async def health_check():
    """Health check endpoint"""
    return {"status": "healthy", "service": "Feeder Reconfiguration"}


@app.get("/networks", response_model=List[NetworkInfo])
async def list_networks():
    """Bundled networks with their bus, branch and switch counts"""
    try:
        infos = []
        for name in list_bundled_networks():
            network = await NetworkLoader.load_async(name)
            infos.append(NetworkInfo(
                name=name,
                buses=len(network.buses),
                branches=len(network.branches),
                switchable=network.n_switches,
            ))
        return infos
    except FeederError as e:
        raise _http_error(e)
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Error listing networks: {str(e)}")


@app.post("/evaluate", response_model=EvaluateResponse)
async def evaluate_configuration(request: EvaluateRequest):
    """
    Evaluate one switch configuration

    Returns the (f, h) pair together with the topology report and, for
    radial configurations, the per-module violations.
    """
    try:
        network = await NetworkLoader.load_async(request.network)
        x = parse_bits(request.bits, network.n_switches)
        report = evaluate_detailed(network, x)

        solution = report.power_flow
        return EvaluateResponse(
            network=request.network,
            bits=request.bits,
            f_kw=report.metrics.f,
            h=report.metrics.h,
            radial=report.topology.radial,
            connected=report.topology.connected,
            n_islands=report.topology.n_islands,
            n_loops=report.topology.n_loops,
            converged=solution.converged if solution else None,
            iterations=solution.iterations if solution else None,
            min_voltage_pu=solution.min_voltage() if solution and solution.converged else None,
            max_voltage_pu=solution.max_voltage() if solution and solution.converged else None,
            violations=[ModuleViolation(module=name, violation=value) for name, value in report.module_violations],
        )

    except FeederError as e:
        raise _http_error(e)
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Error evaluating configuration: {str(e)}")


@app.post("/optimize", response_model=OptimizeResponse)
async def optimize(request: OptimizeRequest):
    """
    Run MADS or the random-search baseline

    The run executes in the thread pool; identical requests return identical frontiers.
    """
    try:
        network = await NetworkLoader.load_async(request.network)
        config = RunConfig(
            dimension=network.n_switches,
            budget=request.budget,
            seed=request.seed,
            poll_order=request.poll_order,
            incumbent_policy=request.incumbent_policy,
            mesh_adaptive=request.mesh_adaptive,
            mesh_radius_cap=settings.MESH_RADIUS_CAP,
        )
        runner = run_mads if request.algorithm is Algorithm.MADS else run_random_search
        result = await run_in_threadpool(runner, config, FeederEvaluator(network))

        return OptimizeResponse(
            network=request.network,
            algorithm=request.algorithm,
            evaluations_used=result.evaluations_used,
            stop_reason=result.stop_reason.value,
            best_feasible_f_kw=result.best_feasible_f(),
            frontier=[FrontierEntryRecord.from_entry(e) for e in result.frontier.sorted_by_loss()],
            summary=result.summary(),
        )

    except FeederError as e:
        raise _http_error(e)
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Error running optimizer: {str(e)}")


@app.post("/enumerate", response_model=EnumerateResponse)
async def enumerate_configurations(request: EnumerateRequest):
    """Evaluate every configuration and return the exact frontier"""
    try:
        network = await NetworkLoader.load_async(request.network)
        result = await run_in_threadpool(enumerate_all, network)

        return EnumerateResponse(
            network=request.network,
            evaluations=result.evaluations,
            feasible_count=len(result.feasible()),
            frontier=[
                FrontierEntryRecord(bits="".join(str(b) for b in x), f_kw=m.f, h=m.h)
                for x, m in result.frontier
            ],
        )

    except FeederError as e:
        raise _http_error(e)
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Error enumerating configurations: {str(e)}")


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(app, host="0.0.0.0", port=8000)
