"""
Verification routes
"""

from fastapi import APIRouter

from src.models.experiment import VerificationReport
from src.services.verification_service import verification_service

router = APIRouter()


@router.post("/", response_model=VerificationReport)
async def run_verification():
    """Runs the oracle suite; a failing check is reported, not raised"""
    return verification_service.run()
