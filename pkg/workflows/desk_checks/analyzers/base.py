# workflows/desk_checks/analyzers/base.py
import time
from abc import ABC, abstractmethod
from typing import Any, Dict

import numpy as np
import pandas as pd


class BaseAnalyzer(ABC):
    """Base class for all desk-check analyzers."""

    family: str = ""
    # criterion id -> one-line description
    criteria: Dict[str, str] = {}

    def __init__(self, seed: int):
        """Initialize analyzer with the sweep seed."""
        self.seed = seed
        self.rng = np.random.default_rng(seed)
        self.records: list[dict] = []
        self.results: Dict[str, Any] = {}

    @abstractmethod
    def run_checks(self) -> None:
        """Run every instance, calling record() once per check."""
        pass

    def record(self, criterion: str, instance: str, passed: bool, detail: str = "") -> None:
        self.records.append({
            'criterion': criterion,
            'instance': instance,
            'passed': bool(passed),
            'detail': detail,
        })

    def analyze(self) -> dict:
        """Run the checks and summarize them per criterion."""
        start = time.perf_counter()
        self.run_checks()
        runtime = time.perf_counter() - start

        df = pd.DataFrame(self.records, columns=['criterion', 'instance', 'passed', 'detail'])
        summary = []
        for criterion, description in self.criteria.items():
            rows = df[df['criterion'] == criterion]
            failures = rows[~rows['passed'].astype(bool)]
            summary.append({
                'criterion': criterion,
                'description': description,
                'instances': int(len(rows)),
                'failures': int(len(failures)),
                'examples': failures.head(5)[['instance', 'detail']].to_dict('records'),
            })

        self.results = {
            'family': self.family,
            'seed': self.seed,
            'runtime_s': runtime,
            'criteria': summary,
            'all_passed': all(c['failures'] == 0 and c['instances'] > 0 for c in summary),
        }
        return self.results

    def get_results(self) -> Dict[str, Any]:
        """Return the analysis results."""
        if not isinstance(self.results, dict):
            return {}
        return self.results
