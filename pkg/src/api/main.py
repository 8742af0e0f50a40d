"""
FastAPI application exposing experiment runs and results
"""

from fastapi import FastAPI

from src import __version__
from src.api.routes import experiments_router, health_router, verification_router

app = FastAPI(
    title="Krylov Spread API",
    description="Krylov and spread complexity of operator growth in the open SYK model",
    version=__version__,
)


@app.get("/", response_model=dict)
async def read_root():
    """API entry point"""
    return {"message": "Krylov spread simulator. See /docs for the endpoints."}


app.include_router(experiments_router, prefix="/experiments", tags=["Experiments"])
app.include_router(verification_router, prefix="/verify", tags=["Verification"])
app.include_router(health_router, prefix="/health", tags=["Health"])
