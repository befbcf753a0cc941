from collections.abc import Generator, Iterable
from typing import Any, Callable, Literal

# mpire is lazy imported
from loguru import logger

from polycomplete.common.logging_utils import log_info
from polycomplete.common.validation import safely_count_iterable


def capture_result_and_exception(func):
    """Decorator to capture result and exception from a function call."""

    def wrapper(*args, **kwargs):  # pragma: no cover
        try:
            res = func(*args, **kwargs)
            return res, None
        except Exception as e:
            return None, e

    return wrapper


def run_in_batch(
    func: Callable,
    iterable_of_args: Iterable,
    iterable_name: str,
    n_jobs: int | None = None,
    show_progress: bool = False,
    on_errors: Literal["raise", "skip", "break"] = "raise",
    verbose: bool = False,
) -> Generator[Any, None, None]:
    """
    Evaluates `func` on every item of `iterable_of_args` with a worker pool.

    Results are yielded in input order so that callers can merge them
    deterministically. With `n_jobs=1` the items are evaluated in-process,
    without spawning workers.

    Args:
        func: The function to call for each argument.
        iterable_of_args: An iterable of inputs to process.
        iterable_name: Name of the iterable, used for logging and error messages.
        n_jobs: Number of parallel workers to use.
            If None, uses all available CPUs. Must be >= 1 if specified.
        show_progress: Whether to display a progress bar.
        on_errors: How to handle errors during processing. Defaults to "raise".
        verbose: Whether to enable verbose logging.

    Yields:
        The value returned by `func` for each item.
    """
    total, iterable_of_args = safely_count_iterable(iterable_name, iterable_of_args)

    log_info(verbose, "Starting batch evaluation of {} {}.", total, iterable_name)

    if total == 0:
        log_info(verbose, "Input {} is empty. Returning empty iterator.", iterable_name)
        return

    failed = [0]
    try:
        if n_jobs == 1:
            task_iter = map(capture_result_and_exception(func), iterable_of_args)
            yield from _drain(task_iter, iterable_name, on_errors, failed)
            return

        from mpire import WorkerPool

        with WorkerPool(n_jobs=n_jobs) as pool:
            progress_bar_options = {
                "bar_format": "{l_bar}{bar}| {n_fmt}/{total_fmt} [{elapsed}, {rate_fmt}]",
                "desc": "Enumerating ...",
            }

            task_iter = pool.imap(
                capture_result_and_exception(func),
                iterable_of_args,
                iterable_len=total,
                progress_bar=show_progress,
                progress_bar_options=progress_bar_options,
            )
            yield from _drain(task_iter, iterable_name, on_errors, failed)

    finally:
        log_info(
            verbose,
            "Batch evaluation completed. {}/{} {} processed successfully.",
            total - failed[0],
            total,
            iterable_name,
        )


def _drain(task_iter, iterable_name: str, on_errors: str, failed: list[int]):
    for res, error in task_iter:
        if error:
            failed[0] += 1
            if on_errors == "raise":
                raise error
            elif on_errors == "break":
                logger.error(
                    "A task for {} failed. Returning partial results.\nReason: {}",
                    iterable_name,
                    error,
                )
                break

            #  Else: skip
            logger.warning("Skipping a failed task.\nReason: {}", error)
            continue

        yield res
