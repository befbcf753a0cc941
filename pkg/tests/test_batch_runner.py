import pytest

from polycomplete import InvalidInputError
from polycomplete.common.batch_runner import run_in_batch


def reciprocal(k: int) -> float:
    return 1 / k


def test_results_keep_input_order():
    assert list(run_in_batch(reciprocal, [1, 2, 4], "slices", n_jobs=1)) == [1.0, 0.5, 0.25]


def test_empty_input():
    assert list(run_in_batch(reciprocal, [], "slices", n_jobs=1)) == []


def test_errors_raise_by_default():
    with pytest.raises(ZeroDivisionError):
        list(run_in_batch(reciprocal, [1, 0, 2], "slices", n_jobs=1))


def test_errors_skipped(mocker):
    mock_logger = mocker.patch("polycomplete.common.batch_runner.logger")
    results = list(run_in_batch(reciprocal, [1, 0, 2], "slices", n_jobs=1, on_errors="skip"))
    assert results == [1.0, 0.5]
    mock_logger.warning.assert_called_once()


def test_errors_break(mocker):
    mock_logger = mocker.patch("polycomplete.common.batch_runner.logger")
    results = list(run_in_batch(reciprocal, [1, 0, 2], "slices", n_jobs=1, on_errors="break"))
    assert results == [1.0]
    mock_logger.error.assert_called_once()


def test_unsized_input_is_rejected():
    with pytest.raises(InvalidInputError, match="'slices' must be a sized iterable"):
        list(run_in_batch(reciprocal, 42, "slices", n_jobs=1))
