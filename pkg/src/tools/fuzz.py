import json
import logging
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional

from tqdm import tqdm

from checker.labeling import check
from checker.oracle import BRUTE_FORCE_LIMIT, brute_force_check
from core.validation import validate
from logic.formulas import render_formula
from tools.generate import random_formula, random_somas
from tools.loader import dump_somas

logger = logging.getLogger(__name__)


@dataclass
class Mismatch:
    seed: int
    state: str
    formula: str
    labeling: bool
    brute_force: bool


@dataclass
class FuzzSummary:
    models: int = 0
    queries: int = 0
    invalid_models: int = 0
    mismatches: List[Mismatch] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.invalid_models


class Fuzzer:
    """Compares the labeling checker with path enumeration on random models."""

    def __init__(self, seed: int, count: int, formulas: int = 5, out_dir: Optional[str] = None,
                 brute_force_limit: int = BRUTE_FORCE_LIMIT, progress: bool = True):
        self.seed = seed
        self.count = count
        self.formulas = formulas
        self.out_dir = Path(out_dir) if out_dir else None
        self.brute_force_limit = brute_force_limit
        self.progress = progress
        self.summary = FuzzSummary()

    def run_one(self, model_seed: int) -> None:
        rng = random.Random(model_seed)
        somas = random_somas(rng, max_states=min(6, self.brute_force_limit), name=f"fuzz_{model_seed}")
        self.summary.models += 1
        violations = validate(somas)
        if violations:
            # The generator should never produce these.
            logger.error("seed %d produced an invalid model: %s", model_seed, violations[0])
            self.summary.invalid_models += 1
            self.dump(model_seed, somas, [])
            return

        found = []
        for _ in range(self.formulas):
            formula = random_formula(rng, somas)
            q = rng.randrange(len(somas.states))
            fast = check(somas, q, formula)
            slow = brute_force_check(somas, q, formula, self.brute_force_limit)
            self.summary.queries += 1
            if fast != slow:
                mismatch = Mismatch(model_seed, somas.state_name(q), render_formula(formula), fast, slow)
                logger.warning("mismatch on seed %d: %s at %s", model_seed, mismatch.formula, mismatch.state)
                found.append(mismatch)
        if found:
            self.summary.mismatches.extend(found)
            self.dump(model_seed, somas, found)

    def dump(self, model_seed: int, somas, mismatches: List[Mismatch]) -> None:
        if self.out_dir is None:
            return
        self.out_dir.mkdir(parents=True, exist_ok=True)
        record: Dict = {"seed": model_seed, "model": dump_somas(somas), "mismatches": [vars(m) for m in mismatches]}
        (self.out_dir / f"counterexample_{model_seed}.json").write_text(json.dumps(record, indent=2) + "\n")

    def run(self) -> FuzzSummary:
        master = random.Random(self.seed)
        seeds = [master.randrange(2**32) for _ in range(self.count)]
        for model_seed in tqdm(seeds, desc="Fuzzing", disable=not self.progress):
            self.run_one(model_seed)
        logger.info(
            "fuzzed %d models, %d queries, %d mismatches",
            self.summary.models, self.summary.queries, len(self.summary.mismatches),
        )
        return self.summary
