# workflows/desk_checks/analyzers/spectral_analyzer.py
import numpy as np

from utils.structures.errors import CellRankMismatch
from utils.structures.symspec import (
    RiemannPartition, SelfAdjointOperator, approximate_unitary, description_embeddable,
    operator_norm, positive_projection, positive_sqrt, spectral_riemann_sum,
    spectrally_equivalent, unitary_residual,
)
from ..utils.families import conjugate_pair, random_orthogonal, random_psd, small_descriptions
from .base import BaseAnalyzer

CALCULUS_TOL = 1e-9


def _min_eigenvalue(matrix: np.ndarray) -> float:
    return float(np.linalg.eigvalsh((matrix + matrix.T) / 2)[0])


class SpectralAnalyzer(BaseAnalyzer):
    """Approximate unitaries, functional calculus and the description lemma."""

    family = "spectral"
    criteria = {
        "1": "approximate_unitary on (A, QAQᵀ) has residual < ε for ε in {1e-2, 1e-6}",
        "2": "positive_sqrt, E₊ and Riemann sums stay within their tolerances",
        "3": "bi-embeddable small descriptions are spectrally equivalent",
    }

    def __init__(self, seed: int, instances: int = 100):
        super().__init__(seed)
        self.instances = instances

    def run_checks(self) -> None:
        self._check_approximate_unitary()
        self._check_calculus()
        self._check_descriptions()

    def _check_approximate_unitary(self) -> None:
        for k in range(self.instances):
            dim = int(self.rng.integers(1, 9))
            A, B = conjugate_pair(self.rng, dim)
            for epsilon in (1e-2, 1e-6):
                name = f"pair {k} (dim {dim}, eps {epsilon:g})"
                try:
                    residual = unitary_residual(A, B, approximate_unitary(A, B, epsilon))
                except CellRankMismatch as e:
                    self.record("1", name, False, str(e))
                    continue
                self.record("1", name, residual < epsilon, f"residual {residual:.3e}")

    def _check_calculus(self) -> None:
        for k in range(self.instances):
            dim = int(self.rng.integers(1, 9))
            kernel = int(self.rng.integers(0, min(2, dim) + 1))

            P = random_psd(self.rng, dim, kernel)
            scale = max(1.0, operator_norm(P))
            S = positive_sqrt(P)
            residual = float(np.linalg.norm(S.entries @ S.entries - P.entries, 2))
            self.record("2", f"sqrt {k}", residual <= 1e-8 * scale, f"‖S²−A‖ = {residual:.3e}")

            values = self.rng.uniform(-3.0, 3.0, dim)
            values[:kernel] = 0.0
            Q = random_orthogonal(self.rng, dim)
            A = SelfAdjointOperator.symmetrized(Q @ np.diag(values) @ Q.T)
            self._check_positive_projection(k, A, Q[:, :kernel])

            eigenvalues = np.linalg.eigvalsh(A.entries)
            n_cells = int(self.rng.integers(1, 21))
            partition = RiemannPartition.uniform(float(eigenvalues[0]), float(eigenvalues[-1]) + 0.5, n_cells)
            _, error = spectral_riemann_sum(A, partition)
            self.record("2", f"riemann {k}", error <= partition.mesh, f"error {error:.3e}, mesh {partition.mesh:.3e}")

    def _check_positive_projection(self, k: int, A: SelfAdjointOperator, kernel_vectors: np.ndarray) -> None:
        E = positive_projection(A).entries
        a = A.entries
        identity = np.eye(A.dim)
        tol = CALCULUS_TOL * max(1.0, operator_norm(A))
        problems = []
        if np.linalg.norm(E @ a - a @ E, 2) > tol:
            problems.append("does not commute with A")
        if np.linalg.norm(E @ a @ a - a @ a @ E, 2) > tol * max(1.0, operator_norm(A)):
            problems.append("does not commute with A²")
        if _min_eigenvalue(a @ E) < -tol:
            problems.append("A·E₊ is not positive")
        if -_min_eigenvalue(-(a @ (identity - E))) > tol:
            problems.append("A·(I−E₊) is not negative")
        if kernel_vectors.size and np.linalg.norm(E @ kernel_vectors - kernel_vectors, 2) > CALCULUS_TOL:
            problems.append("kernel of A not fixed by E₊")
        self.record("2", f"E+ {k}", not problems, "; ".join(problems))

    def _check_descriptions(self) -> None:
        descriptions = list(small_descriptions())
        for i, d1 in enumerate(descriptions):
            for j, d2 in enumerate(descriptions):
                if description_embeddable(d1, d2) and description_embeddable(d2, d1):
                    self.record("3", f"descriptions {i}/{j}", spectrally_equivalent(d1, d2),
                                f"{d1.to_payload()} vs {d2.to_payload()}")
