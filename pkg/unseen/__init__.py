"""
unseen: Shannon entropy estimation for samples with unseen species.

The main entry points are the estimators on a frequency vector:

    from unseen import FrequencyVector, ProposedEstimator

    y = FrequencyVector.from_counts([2, 1, 1])
    ProposedEstimator().proposed_entropy(y).value
"""

__version__ = "0.1.0"

from unseen.domain.models.distribution import ExtendedProbabilityVector, ProbabilityVector
from unseen.domain.models.estimate import EntropyEstimate, EstimatorMethod
from unseen.domain.models.frequency import CoverageEstimates, FrequencyVector
from unseen.domain.models.params import PyParams
from unseen.domain.services.classical import ClassicalEstimators
from unseen.domain.services.dpym import DpymModel
from unseen.domain.services.information import InformationService
from unseen.domain.services.marginal_pyp import MarginalPitmanYor
from unseen.domain.services.proposed import ProposedEstimator
from unseen.domain.services.selection import HyperparameterSelector

__all__ = [
    "__version__",
    "ClassicalEstimators",
    "CoverageEstimates",
    "DpymModel",
    "EntropyEstimate",
    "EstimatorMethod",
    "ExtendedProbabilityVector",
    "FrequencyVector",
    "HyperparameterSelector",
    "InformationService",
    "MarginalPitmanYor",
    "ProbabilityVector",
    "ProposedEstimator",
    "PyParams",
]
