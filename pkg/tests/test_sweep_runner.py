import threading
import time

import pytest

from src.application.services.sweep_runner import SweepRunner


def test_results_follow_grid_order() -> None:
    def slow_square(x: int) -> int:
        # les premiers points finissent en dernier
        time.sleep(0.01 * (5 - x))
        return x * x

    assert SweepRunner(max_workers=4).map(slow_square, range(6)) == [0, 1, 4, 9, 16, 25]


def test_sequential_runner_stays_on_calling_thread() -> None:
    main = threading.get_ident()
    threads = SweepRunner(max_workers=1).map(lambda _: threading.get_ident(), [1, 2, 3])
    assert set(threads) == {main}


def test_empty_grid() -> None:
    assert SweepRunner(max_workers=3).map(lambda x: x, []) == []


def test_worker_count_is_at_least_one() -> None:
    assert SweepRunner(max_workers=0).max_workers == 1


def test_failure_on_one_point_aborts_the_sweep() -> None:
    def fragile(x: int) -> int:
        if x == 2:
            raise ArithmeticError("point 2")
        return x

    with pytest.raises(ArithmeticError, match="point 2"):
        SweepRunner(max_workers=3).map(fragile, range(5))
