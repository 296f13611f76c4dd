"""Ordered sweep execution shared by the *_sweep operations."""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, Tuple, TypeVar

log = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def run_points(
    func: Callable[[T], R],
    grid: Iterable[T],
    workers: int = 1,
) -> List[Tuple[T, Optional[R], Optional[str]]]:
    """Evaluate *func* at every grid value.

    Returns ``(value, result, error)`` triples in grid order whatever the
    execution order. A failing point yields ``(value, None, message)`` and
    the sweep continues.
    """
    values = list(grid)
    if not values:
        raise ValueError("sweep grid is empty")

    def _guarded(value: T) -> Tuple[T, Optional[R], Optional[str]]:
        try:
            return value, func(value), None
        except (ValueError, ArithmeticError) as e:
            log.warning("Sweep point %r failed: %s", value, e)
            return value, None, str(e)

    if workers <= 1 or len(values) == 1:
        return [_guarded(v) for v in values]

    # Executor.map yields in submission order
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_guarded, values))
