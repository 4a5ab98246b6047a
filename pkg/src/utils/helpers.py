import re
import time
from contextlib import contextmanager
from typing import Iterator, List, Tuple


_VECTOR = re.compile(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)(?:_T)?")


@contextmanager
def stopwatch() -> Iterator[List[float]]:
    """Yields a one-element list that holds the elapsed seconds on exit"""
    elapsed = [0.0]
    start_time = time.time()
    try:
        yield elapsed
    finally:
        elapsed[0] = time.time() - start_time


def format_duration(seconds: float) -> str:
    """Format duration in seconds to human-readable string"""
    if seconds < 1:
        return f"{seconds * 1000:.0f}ms"
    if seconds < 60:
        return f"{seconds:.1f}s"
    minutes = int(seconds // 60)
    return f"{minutes}m {seconds % 60:.1f}s"


def parse_vectors(text: str) -> List[Tuple[int, int]]:
    """All '(p,q)' literals in text, in order"""
    return [(int(p), int(q)) for p, q in _VECTOR.findall(text)]
