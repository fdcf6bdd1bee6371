# workflows/desk_checks/analyzers/tower_analyzer.py
import time

from utils.structures.apra import sup_distance, tower_conjugacy, uniform_distance
from utils.structures.errors import SbKitError
from ..utils.families import random_small_pair, random_tower_instance
from .base import BaseAnalyzer

# Seconds allowed per tower conjugacy instance
INSTANCE_BUDGET = 5.0


class TowerAnalyzer(BaseAnalyzer):
    """Tower conjugacy bounds and the d ≤ d_u metric comparison."""

    family = "towers"
    criteria = {
        "5": "tower_conjugacy distance ≤ 1/n + ε within the time budget",
        "6": "sup_distance ≤ uniform_distance by subset enumeration (N ≤ 12)",
    }

    def __init__(self, seed: int, instances: int = 200, metric_pairs: int = 100):
        super().__init__(seed)
        self.instances = instances
        self.metric_pairs = metric_pairs

    def run_checks(self) -> None:
        for k in range(self.instances):
            T, S, n, epsilon = random_tower_instance(self.rng)
            name = f"instance {k} (N {T.N}, blocks {len(T.blocks)}, n {n}, eps {epsilon})"
            start = time.perf_counter()
            try:
                cert = tower_conjugacy(T, S, n, epsilon)
            except SbKitError as e:
                self.record("5", name, False, f"{type(e).__name__}: {e}")
                continue
            elapsed = time.perf_counter() - start
            self.record(
                "5", name, cert.measured_distance <= cert.bound and elapsed < INSTANCE_BUDGET,
                f"distance {cert.measured_distance} bound {cert.bound} in {elapsed:.2f}s",
            )

        for k in range(self.metric_pairs):
            T, S = random_small_pair(self.rng)
            sup = sup_distance(T, S)
            uniform = uniform_distance(T, S)
            self.record("6", f"pair {k} (N {T.N})", sup.exact and sup.high <= uniform, f"d {sup.high} d_u {uniform}")
