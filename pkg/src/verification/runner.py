import random
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional
import structlog
from core.models import (
    CheckStatus,
    Fixture,
    FixtureResult,
    PropertyResult,
    Suite,
    VerificationReport,
)
from verification.oracle import evaluate_fixture, load_fixtures
from verification.properties import property_plan


logger = structlog.get_logger()


class VerificationRunner:
    """Runs fixtures and property suites on a worker pool, reporting in declaration order"""

    def __init__(self, settings, workers: Optional[int] = None, seed: Optional[int] = None):
        """Initialize runner"""
        self.settings = settings
        self.workers = max(1, workers or settings.verify_workers)
        self.seed = settings.random_seed if seed is None else seed

        # Statistics
        self.stats = {
            "total_items": 0,
            "processed": 0,
            "passed": 0,
            "failed": 0,
            "start_time": None,
            "end_time": None,
        }

        # Progress callback
        self.progress_callback: Optional[Callable] = None

    def set_progress_callback(self, callback: Callable[[Dict[str, Any]], None]) -> None:
        """Set callback for progress updates"""
        self.progress_callback = callback

    def run(self, suite: Suite = Suite.ALL, fixtures_file: Optional[Path] = None) -> VerificationReport:
        """Run the requested suites and collect a report"""
        self.stats["start_time"] = time.time()
        report = VerificationReport(suite=suite, seed=self.seed)

        if suite in (Suite.APPENDIX, Suite.ALL):
            fixtures = load_fixtures(fixtures_file or self.settings.fixtures_file)
            report.fixtures = self.run_fixtures(fixtures)
        if suite in (Suite.PROPERTIES, Suite.ALL):
            report.properties = self.run_properties()

        self.stats["end_time"] = time.time()
        report.total_time = self.stats["end_time"] - self.stats["start_time"]
        logger.info(f"Verification completed in {report.total_time:.2f}s")
        return report

    def run_fixtures(self, fixtures: List[Fixture]) -> List[FixtureResult]:
        """Evaluate fixtures in parallel; results keep declaration order"""
        self.stats["total_items"] += len(fixtures)
        logger.info(f"Checking {len(fixtures)} fixtures with {self.workers} workers")

        results: List[FixtureResult] = []
        with ThreadPoolExecutor(max_workers=self.workers) as executor:
            for fixture_results in executor.map(evaluate_fixture, fixtures):
                results.extend(fixture_results)
                self._record(all(r.passed for r in fixture_results))
        return results

    def run_properties(self) -> List[PropertyResult]:
        """Run every property suite with its own seeded generator"""
        plan = property_plan(self.settings)
        self.stats["total_items"] += len(plan)
        logger.info(f"Running {len(plan)} property suites with seed {self.seed}")

        def run_one(entry) -> PropertyResult:
            name, check, size = entry
            rng = random.Random(f"{self.seed}:{name}")
            start_time = time.time()
            try:
                result = check(rng, size)
            except Exception as e:
                logger.error(f"Property suite {name} raised: {e}")
                result = PropertyResult(name=name, status=CheckStatus.ERROR, error_message=str(e))
            result.processing_time = time.time() - start_time
            logger.info(f"Property {name}: {result.status.value} ({result.cases} checks, {result.processing_time:.2f}s)")
            return result

        results: List[PropertyResult] = []
        with ThreadPoolExecutor(max_workers=self.workers) as executor:
            for result in executor.map(run_one, plan):
                results.append(result)
                self._record(result.passed)
        return results

    def _record(self, passed: bool) -> None:
        self.stats["processed"] += 1
        self.stats["passed" if passed else "failed"] += 1
        self._update_progress()

    def _update_progress(self) -> None:
        """Update and broadcast progress"""
        total = self.stats["total_items"]
        processed = self.stats["processed"]

        progress_data = {
            "total": total,
            "processed": processed,
            "passed": self.stats["passed"],
            "failed": self.stats["failed"],
            "progress_percent": (processed / total * 100) if total > 0 else 0,
        }

        if self.progress_callback:
            self.progress_callback(progress_data)

    def get_statistics(self) -> Dict[str, Any]:
        """Get runner statistics"""
        elapsed_time = (self.stats["end_time"] or time.time()) - (self.stats["start_time"] or time.time())
        return {
            **self.stats,
            "elapsed_time": elapsed_time,
            "workers": self.workers,
            "seed": self.seed,
        }
