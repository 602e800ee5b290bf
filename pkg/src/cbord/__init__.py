"""
cbord - Link invariants and C-boundary obstructions

Exact HOMFLY polynomials, Seifert forms and plumbing-tree calculus for
closed braids and even arborescent links, plus checkable certificates for
the concordance and spc-C-boundary obstructions built on them.
"""

__version__ = '0.3.0'

# Configure shared logging format
import logging
import sys
from pathlib import Path

# Standard logging format to be used across all modules
DEFAULT_LOG_FORMAT = '%(asctime)s - %(levelname)s - [%(module)s] %(message)s'


def setup_logging(log_file=None, log_level=logging.INFO):
    """
    Configure logging with console and optionally file output.

    Args:
        log_file: Optional path of a log file to write in addition to stderr.
        log_level: The logging level to use.

    Returns:
        The path to the log file if created, None otherwise.
    """
    root_logger = logging.getLogger()
    root_logger.setLevel(log_level)

    # Clear any existing handlers
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    # Console output goes to stderr so stdout stays machine readable
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(log_level)
    console_handler.setFormatter(logging.Formatter(DEFAULT_LOG_FORMAT))
    root_logger.addHandler(console_handler)

    log_file_path = None
    if log_file:
        log_file_path = Path(log_file)
        log_file_path.parent.mkdir(parents=True, exist_ok=True)

        file_handler = logging.FileHandler(log_file_path, encoding='utf-8')
        file_handler.setLevel(log_level)
        file_handler.setFormatter(logging.Formatter(DEFAULT_LOG_FORMAT))
        root_logger.addHandler(file_handler)

        logging.info(f"Log file created at: {log_file_path}")

    return log_file_path


def handle_exception(exc_type, exc_value, exc_traceback):
    """
    Global exception handler to log unhandled exceptions.
    """
    if issubclass(exc_type, KeyboardInterrupt):
        # Don't log keyboard interrupt
        sys.__excepthook__(exc_type, exc_value, exc_traceback)
        return

    logger = logging.getLogger(__name__)
    logger.critical("Unhandled exception", exc_info=(exc_type, exc_value, exc_traceback))

    sys.__excepthook__(exc_type, exc_value, exc_traceback)
