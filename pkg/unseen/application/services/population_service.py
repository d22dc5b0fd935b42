"""
Population generation and multinomial sampling for the simulation harness.
"""

import math

import numpy as np

from unseen.domain.models.distribution import ProbabilityVector
from unseen.domain.models.frequency import FrequencyVector
from unseen.domain.models.simulation import LabeledSample, PopulationKind, PopulationSpec


class PopulationService:
    """Draws true probability vectors and samples from them."""

    def gen_population(
        self, spec: PopulationSpec, rng: np.random.Generator
    ) -> ProbabilityVector:
        """
        Generate a true probability vector.

        Dirichlet draws are normalized gamma variates, floored at the smallest
        positive double so every coordinate stays strictly positive. Zipf is
        deterministic and consumes no randomness.

        Args:
            spec: Population specification
            rng: Random stream owned by the caller

        Returns:
            ProbabilityVector of length spec.K
        """
        if spec.kind is PopulationKind.ZIPF:
            ranks = np.arange(1, spec.K + 1, dtype=np.float64)
            return ProbabilityVector.from_weights(ranks ** (-spec.s))

        if spec.kind is PopulationKind.DIRICHLET_SYMMETRIC:
            shapes = np.full(spec.K, spec.a, dtype=np.float64)
        else:
            low = math.ceil(spec.K / 2)
            shapes = np.concatenate(
                [np.full(low, spec.a_low), np.full(spec.K - low, spec.a_high)]
            ).astype(np.float64)

        draws = np.maximum(rng.standard_gamma(shapes), np.finfo(np.float64).tiny)
        return ProbabilityVector.from_weights(draws)

    def sample_labeled(
        self, p: ProbabilityVector, N: int, rng: np.random.Generator
    ) -> LabeledSample:
        """
        Draw N iid observations from p and keep the species labels.

        Args:
            p: True probability vector
            N: Sample size
            rng: Random stream owned by the caller

        Returns:
            LabeledSample with per-species counts aligned to p
        """
        if N < 1:
            raise ValueError(f"Sample size must be >= 1, got {N}")
        counts = rng.multinomial(N, p.probs)
        counts.setflags(write=False)
        frequencies = FrequencyVector(counts[counts > 0])
        return LabeledSample(population=p, counts=counts, frequencies=frequencies)

    def sample_counts(
        self, p: ProbabilityVector, N: int, rng: np.random.Generator
    ) -> FrequencyVector:
        """
        Draw N iid observations from p.

        Args:
            p: True probability vector
            N: Sample size
            rng: Random stream owned by the caller

        Returns:
            Unlabeled positive counts summing to N
        """
        return self.sample_labeled(p, N, rng).frequencies
