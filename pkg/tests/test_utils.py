"""
Tests for seed derivation, phase timing and logging setup.
"""

import logging
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from grnevo.evolution.population import STREAM_NAMES
from grnevo.logging import configure_logging
from grnevo.utils import PhaseTimer, derive_seed, stream_seeds


class TestSeeding:
    def test_stable(self):
        assert derive_seed(1, "crossover", 3) == derive_seed(1, "crossover", 3)

    def test_depends_on_every_part(self):
        base = derive_seed(1, "crossover", 3)
        assert derive_seed(2, "crossover", 3) != base
        assert derive_seed(1, "elitism", 3) != base
        assert derive_seed(1, "crossover", 4) != base

    def test_sixty_four_bits(self):
        for k in range(100):
            assert 0 <= derive_seed(0, k) < 2**64

    def test_streams_distinct(self):
        seeds = stream_seeds(42, STREAM_NAMES)
        assert set(seeds) == set(STREAM_NAMES)
        assert len(set(seeds.values())) == len(STREAM_NAMES)


class TestPhaseTimer:
    def test_accumulates(self):
        timer = PhaseTimer()
        with timer.phase("evolve"):
            pass
        with timer.phase("evolve"):
            pass
        with timer.phase("init"):
            pass
        assert list(timer.rounded()) == ["evolve", "init"]
        assert timer.total >= 0.0

    def test_records_on_error(self):
        timer = PhaseTimer()
        try:
            with timer.phase("evolve"):
                raise RuntimeError("boom")
        except RuntimeError:
            pass
        assert "evolve" in timer.totals


class TestLoggingSetup:
    def test_file_lines_carry_process_and_logger(self, tmp_path):
        logger = configure_logging(tmp_path, logging.DEBUG)
        logging.getLogger("grnevo.harness.experiment").debug("trial %d done", 3)
        for handler in logger.handlers:
            handler.flush()
        text = (tmp_path / "grnevo.log").read_text(encoding="utf-8")
        assert "MainProcess grnevo.harness.experiment: trial 3 done" in text
        configure_logging()

    def test_reconfigure_replaces_handlers(self, tmp_path):
        configure_logging(tmp_path)
        logger = configure_logging()
        assert len(logger.handlers) == 1
        assert not logger.propagate
