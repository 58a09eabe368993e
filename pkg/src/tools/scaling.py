import logging
import time
from dataclasses import dataclass
from typing import Callable, List, Sequence

import numpy as np

logger = logging.getLogger(__name__)

SLOPE_THRESHOLD = 2.0


@dataclass(frozen=True)
class ScalingFit:
    sizes: List[int]
    seconds: List[float]
    slope: float
    threshold: float = SLOPE_THRESHOLD

    @property
    def within(self) -> bool:
        return self.slope <= self.threshold


def time_call(fn: Callable[[], object], repeat: int = 1) -> float:
    """Best wall-clock time of ``repeat`` calls."""
    best = float("inf")
    for _ in range(max(1, repeat)):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def fit_slope(sizes: Sequence[int], seconds: Sequence[float]) -> float:
    """Exponent k of the best fit seconds ~ size**k."""
    x = np.log(np.asarray(sizes, dtype=float))
    y = np.log(np.maximum(np.asarray(seconds, dtype=float), 1e-9))
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)


def measure(sizes: Sequence[int], make: Callable[[int], object], run: Callable[[object], object],
            threshold: float = SLOPE_THRESHOLD, repeat: int = 1) -> ScalingFit:
    """Time ``run`` on ``make(n)`` for every size and fit a log-log slope; a steep slope is only logged."""
    if len(sizes) < 2:
        raise ValueError("need at least two sizes to fit a slope")
    seconds = []
    for n in sizes:
        subject = make(n)
        seconds.append(time_call(lambda: run(subject), repeat))
        logger.info("size %d: %.4fs", n, seconds[-1])
    fit = ScalingFit(list(sizes), seconds, fit_slope(sizes, seconds), threshold)
    if not fit.within:
        logger.warning("runtime grows like n^%.2f, above the expected n^%.2f", fit.slope, threshold)
    return fit
