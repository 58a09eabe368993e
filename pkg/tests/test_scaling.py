import logging
import math
import time

import pytest

from checker.contribution import full_contribution
from checker.labeling import check
from logic.parser import parse_formula, parse_goal
from tools.generate import independent_agents_somas, ring_somas
from tools.scaling import SLOPE_THRESHOLD, ScalingFit, fit_slope, measure, time_call

logger = logging.getLogger(__name__)


def test_fit_slope():
    sizes = [10, 100, 1000]
    assert fit_slope(sizes, [n * 1e-6 for n in sizes]) == pytest.approx(1.0)
    assert fit_slope(sizes, [n**2 * 1e-9 for n in sizes]) == pytest.approx(2.0)


def test_fit_within_threshold():
    assert ScalingFit([1, 2], [0.1, 0.2], 1.0).within
    assert not ScalingFit([1, 2], [0.1, 0.8], SLOPE_THRESHOLD + 1).within
    assert not ScalingFit([1, 2], [0.1, 0.2], 1.0, threshold=0.5).within


def test_measure_keeps_its_threshold():
    fit = measure([1, 2], lambda n: n, lambda subject: None, threshold=0.25)
    assert fit.threshold == 0.25
    assert fit.within == (fit.slope <= 0.25)


def test_measure_needs_two_sizes():
    with pytest.raises(ValueError):
        measure([10], lambda n: n, lambda subject: None)


def test_time_call_runs_every_repeat():
    calls = []
    assert time_call(lambda: calls.append(1), repeat=3) >= 0
    assert len(calls) == 3


@pytest.mark.slow
def test_checking_scales_with_model_size():
    formula = parse_formula("<a,b> F p")
    fit = measure([100, 1000, 10000], ring_somas, lambda somas: check(somas, 0, formula))
    assert math.isfinite(fit.slope)
    logger.info("ring check slope %.2f (within=%s)", fit.slope, fit.within)


@pytest.mark.slow
def test_full_contribution_of_twelve_agents():
    somas = independent_agents_somas(12)
    start = time.perf_counter()
    verdict = full_contribution(somas, somas.all_agents, 0, parse_goal("F p"))
    assert time.perf_counter() - start < 30.0
    assert verdict.full


@pytest.mark.slow
def test_chained_agents_prune_subsets():
    somas = independent_agents_somas(12, chained=True)
    start = time.perf_counter()
    assert full_contribution(somas, somas.all_agents, 0, parse_goal("F p")).full
    assert time.perf_counter() - start < 30.0
