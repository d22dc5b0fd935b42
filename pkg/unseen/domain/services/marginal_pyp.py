"""
Marginal Pitman-Yor law.

The marginal law of one draw from a PY(d, alpha) random vector: geometric
when d = 0 and Waring (a discrete power law with index 1 + 1/d) when d > 0.

    P(1)   = (1 - d) / (alpha + 1)
    P(k+1) = P(k) * (alpha + k d) / (alpha + k d + 1)

With A = alpha/d and B = (alpha + 1)/d the product has the gamma form
P(k) = ((1 - d)/d) * G(A + k)/G(A + 1) * G(B)/G(B + k), which reduces to the
beta ratio B(A + k, 1/d) / B(A + 1, 1/d - 1), evaluated as a difference of
log-beta values for k up to 10^9. Contiguous ranges k = 1..n use the cumulative
product of the factors above instead, which stays accurate when alpha/d is large.
"""

import logging
import math
from typing import List, Tuple, Union

import numpy as np
from scipy.special import betaln, entr, gammaln

from unseen.domain.exceptions import InvalidParamsError, SamplerError, TruncationError
from unseen.domain.models.params import MpyEntropyResult, PyParams

logger = logging.getLogger(__name__)

DEFAULT_TRUNCATION_N = 10_000
MIN_TRUNCATION_N = 10

# Adaptive truncation: grow n until it dwarfs A + B or the tail is negligible
ASYMPTOTIC_FACTOR = 64
NEGLIGIBLE_TAIL = 1e-15
MAX_TRUNCATION_N = 2**20

MAX_STICK_ATOMS = 10_000_000
_FIRST_BLOCK = 64
_MAX_BLOCK = 65_536

IntArray = Union[np.ndarray, List[int]]


def tail_correction(d: float, m: float) -> float:
    """
    Integral approximation of sum_{k >= m} k^(-1/d) * (-(1/d) log k).

    Equals m^((d-1)/d) * (log m / (d - 1) - d / (d - 1)^2).

    Args:
        d: Discount in (0, 1)
        m: First index of the tail (n + 1)

    Returns:
        Tail value (negative)
    """
    scale = m ** ((d - 1.0) / d)
    return scale * (math.log(m) / (d - 1.0) - d / (d - 1.0) ** 2)


class MarginalPitmanYor:
    """Pmf, survival, sampler and entropy of the marginal Pitman-Yor law."""

    def log_pmf(self, params: PyParams, k: int) -> float:
        """
        Log-probability of Z = k.

        Args:
            params: Hyperparameters
            k: Positive integer (no underflow up to 10^9)

        Returns:
            log P(Z = k)

        Raises:
            InvalidParamsError: If k < 1
        """
        self._check_index(k)
        return float(self.log_pmf_array(params, np.array([k]))[0])

    def pmf(self, params: PyParams, k: int) -> float:
        """Probability of Z = k, as exp(log_pmf)."""
        return math.exp(self.log_pmf(params, k))

    def log_pmf_array(self, params: PyParams, ks: IntArray) -> np.ndarray:
        """
        Vectorized log-pmf for arbitrary positive indices.

        Args:
            params: Hyperparameters
            ks: Positive integers

        Returns:
            Array of log P(Z = k)
        """
        k = np.asarray(ks, dtype=np.float64)
        if k.size and (np.any(k < 1) or np.any(k != np.floor(k))):
            raise InvalidParamsError("pmf indices must be positive integers")

        d, alpha = params.d, params.alpha
        if params.is_geometric:
            return -math.log1p(alpha) - (k - 1.0) * math.log1p(1.0 / alpha)

        a = alpha / d
        return betaln(a + k, 1.0 / d) - betaln(a + 1.0, 1.0 / d - 1.0)

    def pmf_array(self, params: PyParams, ks: IntArray) -> np.ndarray:
        """Vectorized pmf for arbitrary positive indices."""
        return np.exp(self.log_pmf_array(params, ks))

    def log_pmf_range(self, params: PyParams, n: int) -> np.ndarray:
        """
        Log-pmf for k = 1..n by cumulative sums of the ratio factors.

        Args:
            params: Hyperparameters
            n: Last index

        Returns:
            Array of length n
        """
        self._check_index(n)
        d, alpha = params.d, params.alpha
        j = np.arange(1, n, dtype=np.float64)
        steps = np.log1p(-1.0 / (alpha + 1.0 + j * d))
        head = math.log1p(-d) - math.log1p(alpha)
        return np.concatenate(([head], head + np.cumsum(steps)))

    def pmf_range(self, params: PyParams, n: int) -> np.ndarray:
        """Pmf for k = 1..n."""
        return np.exp(self.log_pmf_range(params, n))

    def pmf_table(self, params: PyParams, k_max: int) -> List[Tuple[int, float]]:
        """
        Rows (k, pmf(k)) for k = 1..k_max.

        Args:
            params: Hyperparameters
            k_max: Last index

        Returns:
            List of (k, probability)
        """
        probs = self.pmf_range(params, k_max)
        return [(k, float(p)) for k, p in enumerate(probs, start=1)]

    def survival(self, params: PyParams, k: int) -> float:
        """
        Tail mass P(Z > k).

        Uses P(Z > k) = P(Z = k + 1) * (alpha + 1 + k d) / (1 - d).

        Args:
            params: Hyperparameters
            k: Nonnegative integer

        Returns:
            Probability that Z exceeds k
        """
        if k < 0:
            raise InvalidParamsError(f"Survival index must be >= 0, got {k}")
        if k == 0:
            return 1.0
        if params.is_geometric:
            return math.exp(-k * math.log1p(1.0 / params.alpha))
        ratio = (params.alpha + 1.0 + k * params.d) / (1.0 - params.d)
        return math.exp(self.log_pmf(params, k + 1) + math.log(ratio))

    def stick_breaking_sample(
        self,
        params: PyParams,
        rng: np.random.Generator,
        mass_tol: float,
        min_atoms: int = 1,
    ) -> np.ndarray:
        """
        Draw the weights of a PY(d, alpha) random vector by stick-breaking.

        V_i ~ Beta(1 - d, alpha + i d) and pi_i = V_i * prod_{j<i} (1 - V_j).
        Stops at the first atom after which the unassigned mass is below
        mass_tol and at least min_atoms weights exist.

        Args:
            params: Hyperparameters
            rng: Random stream owned by the caller
            mass_tol: Residual mass tolerance in (0, 1)
            min_atoms: Minimum number of weights to return

        Returns:
            Weights summing to at least 1 - mass_tol

        Raises:
            InvalidParamsError: If mass_tol is outside (0, 1)
            SamplerError: If 10^7 atoms are drawn before reaching the tolerance
        """
        if not 0.0 < mass_tol < 1.0:
            raise InvalidParamsError(f"mass_tol must be in (0, 1), got {mass_tol!r}")

        blocks: List[np.ndarray] = []
        residual = 1.0
        drawn = 0
        block = max(_FIRST_BLOCK, min_atoms)

        while drawn < MAX_STICK_ATOMS:
            size = min(block, MAX_STICK_ATOMS - drawn)
            index = np.arange(drawn + 1, drawn + size + 1, dtype=np.float64)
            v = rng.beta(1.0 - params.d, params.alpha + index * params.d)

            remaining = residual * np.cumprod(1.0 - v)
            before = np.concatenate(([residual], remaining[:-1]))
            pieces = before * v

            done = (remaining < mass_tol) & (index >= min_atoms)
            if done.any():
                stop = int(np.argmax(done))
                blocks.append(pieces[: stop + 1])
                return np.concatenate(blocks)

            blocks.append(pieces)
            residual = float(remaining[-1])
            drawn += size
            block = min(2 * block, _MAX_BLOCK)

        raise SamplerError(
            f"Stick-breaking reached {MAX_STICK_ATOMS} atoms with residual mass {residual:.3g} "
            f"(mass_tol={mass_tol}, d={params.d}, alpha={params.alpha})"
        )

    def entropy(
        self,
        params: PyParams,
        truncation_n: int = DEFAULT_TRUNCATION_N,
        extend_to_asymptotic: bool = False,
    ) -> MpyEntropyResult:
        """
        Shannon entropy of the marginal law.

        d = 0 uses the closed form (1 + a) log(1 + a) - a log a. For d > 0 the
        terms k <= n are summed exactly and the tail k > n is replaced by its
        power-law approximation; the neglected remainder is O(n^(-1/d) log n).

        Args:
            params: Hyperparameters
            truncation_n: Number of exactly summed terms (ignored for d = 0)
            extend_to_asymptotic: Double n until the tail approximation applies

        Returns:
            MpyEntropyResult with the truncation index actually used

        Raises:
            InvalidParamsError: If truncation_n < 1
            TruncationError: If d > 0 and truncation_n < 10
        """
        if truncation_n < 1:
            raise InvalidParamsError(f"truncation_n must be >= 1, got {truncation_n}")

        d, alpha = params.d, params.alpha
        if params.is_geometric:
            value = math.log1p(alpha) + alpha * math.log1p(1.0 / alpha)
            return MpyEntropyResult(value=value, truncation_n=truncation_n, remainder_bound=0.0)

        if truncation_n < MIN_TRUNCATION_N:
            raise TruncationError(
                f"truncation_n={truncation_n} is below {MIN_TRUNCATION_N}; "
                "the tail approximation does not apply"
            )

        n = truncation_n
        if extend_to_asymptotic:
            n = self._asymptotic_truncation(params, n)

        a = alpha / d
        const = gammaln(1.0 / d) - betaln(a + 1.0, 1.0 / d - 1.0)

        log_probs = self.log_pmf_range(params, n)
        probs = np.exp(log_probs)
        head = float(np.sum(entr(probs)))
        tail_mass = self.survival(params, n)

        # -sum_{k>n} P(k) (c + r_k) with r_k ~ -(1/d) log k
        value = head - const * tail_mass - math.exp(const) * tail_correction(d, n + 1.0)

        last_term = abs(probs[-1] * log_probs[-1])
        remainder = 2.0 * last_term * n * n ** (-1.0 / d) * math.log(n)

        logger.debug(
            f"MPY entropy d={d:g} alpha={alpha:g}: n={n} value={value:.12g} "
            f"tail_mass={tail_mass:.3g} remainder~{remainder:.3g}"
        )
        return MpyEntropyResult(value=max(0.0, value), truncation_n=n, remainder_bound=remainder)

    def tail_ratio(self, params: PyParams, t: float, lam: float) -> float:
        """
        Ratio f(lam * t) / f(t) of the step-function extension f(t) = P(ceil(t)).

        The pmf is regularly varying with index -1/d, so the ratio tends to
        lam^(-1/d) as t grows.

        Args:
            params: Hyperparameters with d > 0
            t: Point, t >= 1
            lam: Scale factor, lam > 0

        Returns:
            The ratio
        """
        if params.d <= 0:
            raise InvalidParamsError("tail_ratio needs d > 0")
        if t < 1 or lam <= 0:
            raise InvalidParamsError(f"tail_ratio needs t >= 1 and lam > 0, got t={t}, lam={lam}")
        k_t = math.ceil(t)
        k_scaled = max(1, math.ceil(lam * t))
        return math.exp(self.log_pmf(params, k_scaled) - self.log_pmf(params, k_t))

    def alpha_for_first_mass(self, d: float, target: float) -> float:
        """
        Concentration for which P(Z = 1) equals target.

        Any target in (0, 1) yields alpha > -d.

        Args:
            d: Discount in [0, 1)
            target: Desired first mass in (0, 1)

        Returns:
            alpha = (1 - d) / target - 1

        Raises:
            InvalidParamsError: If target is outside (0, 1) or d outside [0, 1)
        """
        if not 0.0 <= d < 1.0:
            raise InvalidParamsError(f"Discount d must satisfy 0 <= d < 1, got {d!r}")
        if not 0.0 < target < 1.0:
            raise InvalidParamsError(f"First mass must be in (0, 1), got {target!r}")
        return (1.0 - d) / target - 1.0

    def _asymptotic_truncation(self, params: PyParams, n: int) -> int:
        d, alpha = params.d, params.alpha
        regime = ASYMPTOTIC_FACTOR * (2.0 * alpha + 1.0) / d
        while n < regime and n < MAX_TRUNCATION_N:
            if self.survival(params, n) < NEGLIGIBLE_TAIL:
                return n
            n = min(2 * n, MAX_TRUNCATION_N)
        if n < regime and self.survival(params, n) >= NEGLIGIBLE_TAIL:
            logger.warning(
                f"Truncation capped at n={n} before the asymptotic regime "
                f"(d={d:g}, alpha={alpha:g}); tail approximation is coarse"
            )
        return n

    def _check_index(self, k: int) -> None:
        if k < 1 or int(k) != k:
            raise InvalidParamsError(f"pmf index must be a positive integer, got {k!r}")
