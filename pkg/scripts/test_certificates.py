#!/usr/bin/env python3
"""
Tests for job parsing, certificate emission, independent verification and
the command-line exit codes.
"""
import json
from pathlib import Path

import pytest

from utils.certificates import Certificate, JobKind, load_job, parse_job, run, verify_certificate
from utils.certificates.cli import main
from utils.structures.common import Verdict
from utils.structures.errors import ParseError, ValidationError

FIXTURE_NAMES = [
    "operators_job.json",
    "descriptions_job.json",
    "algebras_job.json",
    "algebras_equal_job.json",
    "automorphisms_job.json",
    "automorphisms_schedule_job.json",
    "randomizations_job.json",
    "randomizations_chain_job.json",
]


def _payload(fixtures_dir: Path, name: str) -> dict:
    return json.loads((fixtures_dir / name).read_text(encoding='utf-8'))


def _tampered(cert: Certificate, edit) -> Certificate:
    data = cert.model_dump(mode='json')
    edit(data)
    return Certificate.model_validate(data)


# Parsing

def test_parse_operators_job(fixtures_dir):
    job = load_job(fixtures_dir / "operators_job.json")
    assert job.kind is JobKind.OPERATORS
    assert job.left.dim == 2
    assert float(job.epsilon) == pytest.approx(1e-6)


def test_parse_rejects_asymmetric_matrix(fixtures_dir):
    data = _payload(fixtures_dir, "operators_job.json")
    data["left"]["rows"] = [[1.0, 2.0], [0.0, 1.0]]
    with pytest.raises(ValidationError) as excinfo:
        parse_job(json.dumps(data))
    assert excinfo.value.invariant == "symmetry"
    assert excinfo.value.path.startswith("left")


def test_parse_rejects_partial_density(fixtures_dir):
    data = _payload(fixtures_dir, "randomizations_job.json")
    data["left"]["rho"] = {"M1": "3/4"}
    with pytest.raises(ValidationError) as excinfo:
        parse_job(json.dumps(data))
    assert excinfo.value.invariant == "unit mass"


def test_parse_rejects_partial_invariant(fixtures_dir):
    data = _payload(fixtures_dir, "algebras_job.json")
    data["right"]["blocks"] = [["3/4", 1]]
    with pytest.raises(ValidationError) as excinfo:
        parse_job(json.dumps(data))
    assert excinfo.value.invariant == "unit mass"


def test_parse_rejects_non_preorder(fixtures_dir):
    data = _payload(fixtures_dir, "randomizations_job.json")
    data["catalog"]["embeds"] = [[True, True], [False, False]]
    with pytest.raises(ValidationError) as excinfo:
        parse_job(json.dumps(data))
    assert excinfo.value.invariant == "preorder"


def test_parse_rejects_zero_operator_epsilon(fixtures_dir):
    data = _payload(fixtures_dir, "operators_job.json")
    data["parameters"]["epsilon"] = "0"
    with pytest.raises(ValidationError) as excinfo:
        parse_job(json.dumps(data))
    assert excinfo.value.invariant == "parameters"


def test_parse_errors_name_the_path(fixtures_dir):
    with pytest.raises(ParseError):
        parse_job("{not json")
    with pytest.raises(ParseError) as excinfo:
        parse_job(json.dumps({"kind": "groups", "left": {}, "right": {}}))
    assert excinfo.value.path == "kind"

    data = _payload(fixtures_dir, "algebras_job.json")
    del data["right"]
    with pytest.raises(ParseError) as excinfo:
        parse_job(json.dumps(data))
    assert excinfo.value.path == "right"

    data = _payload(fixtures_dir, "automorphisms_job.json")
    data["parameters"]["height"] = 4
    with pytest.raises(ParseError) as excinfo:
        parse_job(json.dumps(data))
    assert excinfo.value.path.startswith("parameters")


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_payload_survives_serialization(fixtures_dir, name):
    job = load_job(fixtures_dir / name)
    again = parse_job(json.dumps(job.to_payload()))
    assert again.to_payload() == job.to_payload()


# Running and verifying

def test_run_operators(fixtures_dir):
    job = load_job(fixtures_dir / "operators_job.json")
    cert = run(job)
    assert cert.verdict is Verdict.APPROXIMATELY_UNITARILY_EQUIVALENT
    assert cert.exit_code == 0
    assert float(cert.bound("residual")) < 1e-6
    # Only the cells holding the eigenvalues 1 and 2 are recorded
    assert [rank for _, _, rank in cert.witness["cells"]] == [1, 1]
    assert all(hi - lo < 1e-6 for lo, hi, _ in cert.witness["cells"])


def test_run_descriptions(fixtures_dir):
    cert = run(load_job(fixtures_dir / "descriptions_job.json"))
    assert cert.verdict is Verdict.EMBEDS_ONLY_FORWARD
    assert cert.exit_code == 1


def test_run_algebras_one_direction(fixtures_dir):
    cert = run(load_job(fixtures_dir / "algebras_job.json"))
    assert cert.verdict is Verdict.EMBEDS_ONLY_FORWARD
    assert cert.exit_code == 1
    assert "forward_plan" in cert.witness
    assert cert.details["first_discrepancy"] == {"index": 0, "case": "kappa"}


def test_run_algebras_equal(fixtures_dir):
    cert = run(load_job(fixtures_dir / "algebras_equal_job.json"))
    assert cert.verdict is Verdict.ISOMORPHIC
    assert cert.exit_code == 0


def test_run_automorphisms(fixtures_dir):
    cert = run(load_job(fixtures_dir / "automorphisms_schedule_job.json"))
    assert cert.verdict is Verdict.APPROXIMATELY_ISOMORPHIC
    assert [cert.bound(f"bound[{k}]") for k in range(3)] == ["3/4", "3/8", "3/16"]


def test_run_randomizations_dlo(fixtures_dir):
    cert = run(load_job(fixtures_dir / "randomizations_job.json"))
    assert cert.verdict is Verdict.SB_FAILURE_WITNESS
    assert cert.exit_code == 1
    assert cert.details["is_partial_order"] is False


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_fresh_certificates_verify(fixtures_dir, name):
    job = load_job(fixtures_dir / name)
    cert = run(job)
    assert verify_certificate(cert, job)
    # A certificate read back from its file still verifies
    assert verify_certificate(Certificate.model_validate(json.loads(cert.model_dump_json())), job)


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_tampered_verdict_fails(fixtures_dir, name):
    job = load_job(fixtures_dir / name)
    cert = run(job)
    other = Verdict.INCOMPARABLE if cert.verdict is not Verdict.INCOMPARABLE else Verdict.ISOMORPHIC

    def edit(data):
        data["verdict"] = other.value

    assert not verify_certificate(_tampered(cert, edit), job)


def test_swapped_phi_entries_fail(fixtures_dir):
    job = load_job(fixtures_dir / "automorphisms_job.json")
    cert = run(job)

    def edit(data):
        phi = data["witness"]["conjugacies"][0]["phi"]
        phi[0], phi[1] = phi[1], phi[0]

    assert not verify_certificate(_tampered(cert, edit), job)


def test_lowered_distance_claim_fails(fixtures_dir):
    job = load_job(fixtures_dir / "automorphisms_job.json")
    cert = run(job)
    assert cert.bound("distance[0]") != "0"

    def edit(data):
        data["bounds"] = [[claim, "0" if claim == "distance[0]" else value] for claim, value in data["bounds"]]

    assert not verify_certificate(_tampered(cert, edit), job)


def test_tampered_tail_claim_fails(fixtures_dir):
    job = load_job(fixtures_dir / "algebras_job.json")
    cert = run(job)

    def edit(data):
        data["bounds"][0][1] = "1/3"

    assert not verify_certificate(_tampered(cert, edit), job)


def test_tampered_plan_fails(fixtures_dir):
    job = load_job(fixtures_dir / "randomizations_chain_job.json")
    cert = run(job)

    def edit(data):
        data["witness"]["forward_plan"]["entries"][0]["amount"] = "1/7"

    assert not verify_certificate(_tampered(cert, edit), job)


def test_tampered_orthogonal_map_fails(fixtures_dir):
    job = load_job(fixtures_dir / "operators_job.json")
    cert = run(job)

    def edit(data):
        data["witness"]["orthogonal_map"]["rows"] = [[1.0, 0.0], [0.0, 1.0]]

    assert not verify_certificate(_tampered(cert, edit), job)


def test_certificate_for_other_job_fails(fixtures_dir):
    cert = run(load_job(fixtures_dir / "algebras_job.json"))
    assert not verify_certificate(cert, load_job(fixtures_dir / "randomizations_job.json"))


# Command line

def _write_sides(tmp_path: Path, data: dict) -> tuple[Path, Path]:
    left, right = tmp_path / "left.json", tmp_path / "right.json"
    left.write_text(json.dumps(data["left"]), encoding='utf-8')
    right.write_text(json.dumps(data["right"]), encoding='utf-8')
    return left, right


def test_cli_operators_exit_zero(fixtures_dir, tmp_path):
    left, right = _write_sides(tmp_path, _payload(fixtures_dir, "operators_job.json"))
    out = tmp_path / "cert.json"
    code = main(["operators", "--left", str(left), "--right", str(right), "--epsilon", "1e-6", "--out", str(out)])
    assert code == 0
    assert json.loads(out.read_text())["version"] == "v1"


def test_cli_algebras_exit_one_and_verify(fixtures_dir, tmp_path):
    left, right = _write_sides(tmp_path, _payload(fixtures_dir, "algebras_job.json"))
    out = tmp_path / "cert.json"
    assert main(["algebras", "-l", str(left), "-r", str(right), "-o", str(out)]) == 1
    cert = json.loads(out.read_text())
    assert cert["kind"] == "algebras"
    assert cert["verdict"] == "EmbedsOnlyForward"
    assert main(["verify", "--cert", str(out), "--job", str(fixtures_dir / "algebras_job.json")]) == 0


def test_cli_automorphisms_with_schedule(fixtures_dir, tmp_path):
    data = _payload(fixtures_dir, "automorphisms_schedule_job.json")
    left, right = _write_sides(tmp_path, data)
    schedule = tmp_path / "schedule.json"
    schedule.write_text(json.dumps(data["parameters"]["schedule"]), encoding='utf-8')
    out = tmp_path / "cert.json"
    args = ["automorphisms", "-l", str(left), "-r", str(right), "--schedule", str(schedule), "-o", str(out)]
    assert main(args) == 0


def test_cli_randomizations_with_catalog(fixtures_dir, tmp_path):
    data = _payload(fixtures_dir, "randomizations_job.json")
    left, right = _write_sides(tmp_path, data)
    catalog = tmp_path / "catalog.json"
    catalog.write_text(json.dumps(data["catalog"]), encoding='utf-8')
    out = tmp_path / "cert.json"
    args = ["randomizations", "-l", str(left), "-r", str(right), "--catalog", str(catalog), "-o", str(out)]
    assert main(args) == 1
    assert json.loads(out.read_text())["verdict"] == "SBFailureWitness"


def test_cli_run_job(fixtures_dir, tmp_path):
    out = tmp_path / "cert.json"
    assert main(["run", "--job", str(fixtures_dir / "algebras_equal_job.json"), "--out", str(out)]) == 0


def test_cli_verify_rejects_tampered_file(fixtures_dir, tmp_path):
    job_path = fixtures_dir / "automorphisms_job.json"
    out = tmp_path / "cert.json"
    assert main(["run", "--job", str(job_path), "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    data["bounds"] = [[claim, "0" if claim == "distance[0]" else value] for claim, value in data["bounds"]]
    out.write_text(json.dumps(data))
    assert main(["verify", "--cert", str(out), "--job", str(job_path)]) == 1


def test_cli_malformed_file_exit_two(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding='utf-8')
    assert main(["run", "--job", str(bad), "--out", str(tmp_path / "cert.json")]) == 2
    assert main(["run", "--job", str(tmp_path / "missing.json"), "--out", str(tmp_path / "cert.json")]) == 2


def test_cli_module_error_exit_two(fixtures_dir, tmp_path):
    data = _payload(fixtures_dir, "automorphisms_job.json")
    data["parameters"] = {"tower_height": 3, "epsilon": "0"}
    job_path = tmp_path / "job.json"
    job_path.write_text(json.dumps(data), encoding='utf-8')
    # An 8-cycle has no full-coverage tower of height 3
    assert main(["run", "--job", str(job_path), "--out", str(tmp_path / "cert.json")]) == 2
