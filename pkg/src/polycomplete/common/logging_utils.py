import sys

from loguru import logger


def log_info(verbose: bool, *args, **kwargs) -> None:
    """Log an info message if verbose is enabled.

    Keeps long-running entry points (eigenstructure extraction, oracle runs,
    sweeps) quiet unless the caller asks for progress.

    Args:
        verbose: If True, logs the message; if False, does nothing.
        *args: Positional arguments passed to logger.info().
        **kwargs: Keyword arguments passed to logger.info().

    Example:
        >>> log_info(False, "This will not be logged")
    """
    if verbose:
        logger.info(*args, **kwargs)


def configure_cli_logging(verbose: bool) -> None:
    """Route loguru to stderr at INFO when verbose, WARNING otherwise."""
    logger.remove()
    logger.add(sys.stderr, level="INFO" if verbose else "WARNING")
