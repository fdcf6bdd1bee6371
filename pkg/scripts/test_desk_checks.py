#!/usr/bin/env python3
"""
Tests for the desk-check workflow on reduced instance counts.
"""
from functools import partial

import pytest

from workflows.desk_checks import FAMILIES, run_desk_checks
from workflows.desk_checks.analyzers import RandomizationAnalyzer, SpectralAnalyzer, TowerAnalyzer
from workflows.desk_checks.report_generator import MarkdownReportGenerator
from workflows.desk_checks.reporters import ConsoleReporter


def _criteria(results: dict) -> dict:
    return {c['criterion']: c for c in results['criteria']}


def test_spectral_analyzer_small_run():
    results = SpectralAnalyzer(seed=3, instances=10).analyze()
    criteria = _criteria(results)
    assert results['family'] == "spectral"
    assert criteria["1"]['instances'] == 20
    assert criteria["2"]['instances'] == 30
    assert criteria["3"]['instances'] > 0
    assert results['all_passed'], results['criteria']


def test_tower_analyzer_small_run():
    results = TowerAnalyzer(seed=5, instances=3, metric_pairs=10).analyze()
    criteria = _criteria(results)
    assert criteria["5"]['instances'] == 3
    assert criteria["6"]['instances'] == 10
    assert results['all_passed'], results['criteria']


def test_randomization_analyzer_small_run():
    results = RandomizationAnalyzer(seed=0, max_ids=2).analyze()
    criteria = _criteria(results)
    # 1 preorder on one id, 3 on two ids up to relabeling
    assert criteria["7a"]['instances'] == 5 ** 2 + 2 * 5 ** 2 + 1
    # The mutual pair plus the DLO reproduction
    assert criteria["8"]['instances'] == 2
    assert results['all_passed'], results['criteria']


def test_analyzers_are_reproducible():
    first = TowerAnalyzer(seed=11, instances=2, metric_pairs=5)
    second = TowerAnalyzer(seed=11, instances=2, metric_pairs=5)
    first.analyze()
    second.analyze()
    def key(records):
        return [(r["criterion"], r["instance"], r["passed"]) for r in records]

    assert key(first.records) == key(second.records)


def test_failures_are_reported(capsys):
    analyzer = SpectralAnalyzer(seed=0, instances=1)
    analyzer.records = []
    analyzer.run_checks = lambda: analyzer.record("1", "pair 0", False, "residual 1.0")
    results = analyzer.analyze()
    assert not results['all_passed']
    assert _criteria(results)["1"]['examples'] == [{'instance': "pair 0", 'detail': "residual 1.0"}]

    ConsoleReporter().report_family(results)
    out = capsys.readouterr().out
    assert "1 of 1 instances failed" in out
    assert "pair 0" in out


def test_markdown_report(tmp_path):
    results = {"towers": TowerAnalyzer(seed=1, instances=1, metric_pairs=3).analyze()}
    generator = MarkdownReportGenerator(results, seed=1)
    generator.generate_family_section("towers", "Tower Conjugacies and Metrics")
    generator.generate_family_section("maharam", "Probability Algebras")
    report = generator.generate_report()
    assert "## Tower Conjugacies and Metrics" in report
    assert "Probability Algebras" not in report
    path = tmp_path / "report.md"
    generator.save_report(path)
    assert path.read_text(encoding='utf-8') == report


def test_run_desk_checks_writes_report(tmp_path, monkeypatch):
    monkeypatch.setitem(FAMILIES, 'randomization', (partial(RandomizationAnalyzer, max_ids=2), "Randomizations"))
    code = run_desk_checks(seed=0, families=['randomization'], report_dir=tmp_path)
    assert code == 0
    reports = list(tmp_path.glob("report_desk_checks_*.md"))
    assert len(reports) == 1
    assert "Randomizations" in reports[0].read_text(encoding='utf-8')


def test_run_desk_checks_rejects_unknown_family(tmp_path):
    assert run_desk_checks(seed=0, families=['groups'], report_dir=tmp_path) == 1


@pytest.mark.slow
def test_maharam_sweep_passes():
    from workflows.desk_checks.analyzers import MaharamAnalyzer
    results = MaharamAnalyzer(seed=0).analyze()
    assert _criteria(results)["4a"]['instances'] == 165 ** 2
    assert results['all_passed']
