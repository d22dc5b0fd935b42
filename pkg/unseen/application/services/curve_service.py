"""
KL divergence and upper-bound curves over a concentration grid.

For a labeled sample the true unseen masses are known, so the exact upper
bound f(d, alpha) can be set against the KL divergence between the true
distribution and the DPYM predictive at each grid point.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np
from scipy.special import entr

from unseen.domain.models.params import PyParams
from unseen.domain.models.simulation import LabeledSample
from unseen.domain.services.dpym import DpymModel
from unseen.domain.services.selection import HyperparameterSelector

logger = logging.getLogger(__name__)

DEFAULT_GRID_POINTS = 200
DEFAULT_ALPHA_MAX = 1000.0
_GRID_START = 1e-3


@dataclass(frozen=True)
class CurvePoint:
    """
    One grid point of the curves.

    Attributes:
        alpha: Concentration
        kl: KL(p || q) against the aligned true distribution
        bound_gap: f(d, alpha) - H(p) with the true C0, C1 and K
    """

    alpha: float
    kl: float
    bound_gap: float


def default_alpha_grid(
    d: float, points: int = DEFAULT_GRID_POINTS, alpha_max: float = DEFAULT_ALPHA_MAX
) -> np.ndarray:
    """
    Geometric grid over (-d, alpha_max].

    Args:
        d: Discount
        points: Number of grid points
        alpha_max: Largest concentration

    Returns:
        Increasing concentrations, all greater than -d
    """
    if points < 1:
        raise ValueError(f"Grid needs at least one point, got {points}")
    return -d + np.geomspace(_GRID_START, alpha_max + d, points)


class CurveService:
    """Evaluates KL(p || q) and the exact upper bound along an alpha grid."""

    def __init__(
        self,
        dpym: Optional[DpymModel] = None,
        selector: Optional[HyperparameterSelector] = None,
    ):
        """
        Initialize the service.

        Args:
            dpym: DPYM predictive evaluator
            selector: Provider of the upper bound function
        """
        self.dpym = dpym or DpymModel()
        self.selector = selector or HyperparameterSelector()

    def curve_sweep(
        self, sample: LabeledSample, d: float, alpha_grid: Sequence[float]
    ) -> List[CurvePoint]:
        """
        Compute both curves at every grid point.

        The first K entries of q are compared with p permuted into the
        sample's aligned order (observed species first, unobserved species by
        decreasing mass). log q is evaluated directly so far-tail entries
        never underflow to zero.

        Args:
            sample: Labeled sample drawn from the true distribution
            d: Discount held fixed along the grid
            alpha_grid: Concentrations, each greater than -d

        Returns:
            One CurvePoint per grid value, in grid order
        """
        y = sample.frequencies
        p = sample.aligned_probs()
        neg_entropy = -float(np.sum(entr(p)))
        entropy = -neg_entropy
        c0, c1 = sample.true_c0, sample.true_c1
        unseen_ranks = np.arange(1, sample.K - y.T + 1)

        points = []
        for alpha in alpha_grid:
            params = PyParams(d, float(alpha))
            pred = self.dpym.predictive(y, params)
            log_q = np.log(pred.head)
            if unseen_ranks.size:
                log_tail = math.log(pred.tail_weight) + self.dpym.marginal.log_pmf_array(
                    pred.tail_params, unseen_ranks
                )
                log_q = np.concatenate([log_q, log_tail])

            kl = max(neg_entropy - float(np.dot(p, log_q)), 0.0)
            bound = self.selector.upper_bound_f(d, params.alpha, y.N, y.T, c0, c1, sample.K)
            points.append(CurvePoint(alpha=params.alpha, kl=kl, bound_gap=bound - entropy))

        logger.info(
            f"Swept {len(points)} concentrations at d={d:g} (K={sample.K}, N={y.N}, T={y.T})"
        )
        return points
