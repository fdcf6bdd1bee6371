"""
Command-line interface for sb-kit.

    sb-kit <kind> --left FILE --right FILE [--epsilon R] [--tower-height N]
                  [--schedule FILE] [--cluster-tol X] --out CERT
    sb-kit run --job FILE --out CERT
    sb-kit verify --cert FILE --job FILE

Exit codes: 0 for a positive verdict (or a certificate that verifies),
1 for a negative verdict (or a certificate that does not), 2 for errors.
"""
import argparse
import json
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

import pydantic

from utils.structures.common import get_logger
from utils.structures.errors import ParseError, SbKitError
from .models import Certificate, JobKind
from .parser import load_job, parse_job_payload, read_json
from .runner import run
from .verifier import verify_certificate

logger = get_logger(__name__)

EXIT_POSITIVE = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sb-kit",
        description="Decide Schröder-Bernstein questions for finite structures and emit checkable certificates",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    for kind in JobKind:
        sub = subparsers.add_parser(kind.value, help=f"compare two {kind.value}")
        sub.add_argument("--left", "-l", required=True, type=Path, help="Left structure payload (JSON)")
        sub.add_argument("--right", "-r", required=True, type=Path, help="Right structure payload (JSON)")
        sub.add_argument("--out", "-o", required=True, type=Path, help="Where to write the certificate")
        sub.add_argument("--epsilon", "-e", help="Tolerance as a decimal or 'p/q'")
        sub.add_argument("--cluster-tol", type=float, help="Eigenvalue clustering tolerance")
        if kind is JobKind.AUTOMORPHISMS:
            sub.add_argument("--tower-height", "-n", type=int, help="Tower height n")
            sub.add_argument("--schedule", type=Path, help="JSON list of [n, epsilon] steps")
        if kind is JobKind.RANDOMIZATIONS:
            sub.add_argument("--catalog", type=Path, help="Catalog shared by both profiles (JSON)")

    run_parser = subparsers.add_parser("run", help="run a job file")
    run_parser.add_argument("--job", "-j", required=True, type=Path, help="Job file (JSON)")
    run_parser.add_argument("--out", "-o", required=True, type=Path, help="Where to write the certificate")

    verify_parser = subparsers.add_parser("verify", help="re-check a certificate against its job")
    verify_parser.add_argument("--cert", "-c", required=True, type=Path, help="Certificate file (JSON)")
    verify_parser.add_argument("--job", "-j", required=True, type=Path, help="Job file (JSON)")
    return parser


def job_payload_from_args(args: argparse.Namespace) -> dict[str, Any]:
    """Assemble a job payload from the per-kind subcommand arguments."""
    payload: dict[str, Any] = {
        "kind": args.command,
        "left": read_json(args.left, "left"),
        "right": read_json(args.right, "right"),
    }
    parameters: dict[str, Any] = {}
    if args.epsilon is not None:
        parameters["epsilon"] = args.epsilon
    if args.cluster_tol is not None:
        parameters["cluster_tol"] = args.cluster_tol
    if getattr(args, "tower_height", None) is not None:
        parameters["tower_height"] = args.tower_height
    if getattr(args, "schedule", None) is not None:
        parameters["schedule"] = read_json(args.schedule, "parameters.schedule")
    if getattr(args, "catalog", None) is not None:
        payload["catalog"] = read_json(args.catalog, "catalog")
    payload["parameters"] = parameters
    return payload


def write_certificate(certificate: Certificate, out: Path) -> None:
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(certificate.model_dump(mode='json'), indent=2), encoding='utf-8')


def _load_certificate(path: Path) -> Certificate:
    try:
        return Certificate.model_validate(read_json(path, str(path)))
    except pydantic.ValidationError as e:
        first = e.errors()[0]
        raise ParseError(".".join(str(part) for part in first["loc"]) or "$", first["msg"]) from e


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse arguments and run the requested command.

    Returns:
        int: Exit code (0 positive, 1 negative, 2 error)
    """
    args = build_parser().parse_args(argv)

    try:
        if args.command == "verify":
            certificate = _load_certificate(args.cert)
            job = load_job(args.job)
            if verify_certificate(certificate, job):
                print(f"✅ Certificate verified: {certificate.verdict.value}")
                return EXIT_POSITIVE
            print("❌ Certificate does not verify; see the log for the failed checks")
            return EXIT_NEGATIVE

        if args.command == "run":
            job = load_job(args.job)
        else:
            job = parse_job_payload(job_payload_from_args(args))

        certificate = run(job)
        write_certificate(certificate, args.out)
        marker = "✅" if certificate.exit_code == EXIT_POSITIVE else "⚠️"
        print(f"{marker} {job.kind.value}: {certificate.verdict.value}")
        print(f"   Certificate saved to: {args.out}")
        return certificate.exit_code

    except (SbKitError, pydantic.ValidationError, OSError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"❌ {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
