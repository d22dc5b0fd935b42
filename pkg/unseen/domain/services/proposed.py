"""Pitman-Yor entropy estimator: selected hyperparameters plugged into the DPYM entropy."""

import logging
from typing import Optional

from unseen.domain.models.estimate import EntropyEstimate, EstimatorMethod
from unseen.domain.models.frequency import FrequencyVector
from unseen.domain.models.selection import SelectionConfig
from unseen.domain.services.dpym import DpymModel
from unseen.domain.services.marginal_pyp import DEFAULT_TRUNCATION_N
from unseen.domain.services.selection import HyperparameterSelector

logger = logging.getLogger(__name__)


class ProposedEstimator:
    """
    Entropy estimator for samples with an unknown, possibly large, number of species.

    Deterministic given y and the configuration.
    """

    def __init__(
        self,
        selector: Optional[HyperparameterSelector] = None,
        dpym: Optional[DpymModel] = None,
    ):
        """
        Initialize the estimator.

        Args:
            selector: Hyperparameter selector
            dpym: DPYM entropy evaluator
        """
        self.selector = selector or HyperparameterSelector()
        self.dpym = dpym or DpymModel()

    def proposed_entropy(
        self,
        y: FrequencyVector,
        cfg: Optional[SelectionConfig] = None,
        truncation_n: int = DEFAULT_TRUNCATION_N,
        extend_to_asymptotic: bool = True,
    ) -> EntropyEstimate:
        """
        Select (d, alpha) for y and return the DPYM entropy at that pair.

        Args:
            y: Observed frequencies
            cfg: Selection settings
            truncation_n: Truncation index of the tail entropy
            extend_to_asymptotic: Let the tail evaluator grow the truncation index

        Returns:
            EntropyEstimate tagged proposed, with selection diagnostics
        """
        params, diagnostics = self.selector.select_params(y, cfg)
        fixed = self.dpym.entropy(
            y, params, truncation_n=truncation_n, extend_to_asymptotic=extend_to_asymptotic
        )
        logger.debug(
            f"Proposed entropy {fixed.value:.12g} at d={params.d:g} alpha={params.alpha:g}"
        )
        return EntropyEstimate(
            value=fixed.value,
            method=EstimatorMethod.PROPOSED,
            params_used=params,
            truncation_n=fixed.truncation_n,
            remainder_bound=fixed.remainder_bound,
            selection_diagnostics=diagnostics,
        )
