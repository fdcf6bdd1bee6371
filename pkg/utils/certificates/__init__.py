"""
File-driven front end: jobs in, verified certificates out.
"""
from .models import Certificate, Job, JobKind, JobParameters
from .parser import load_job, parse_job, parse_job_payload
from .runner import run
from .verifier import verify_certificate
from .cli import main

__all__ = [
    'Certificate', 'Job', 'JobKind', 'JobParameters',
    'parse_job', 'parse_job_payload', 'load_job', 'run', 'verify_certificate', 'main',
]
