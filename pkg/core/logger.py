import logging
import os

from pythonjsonlogger import jsonlogger

from core import settings


# Setup logging
def setup_logging() -> logging.Logger:
    """
    Set up logging configuration.

    :return: Configured logger
    """
    log_level = logging.DEBUG if settings.run.debug else logging.INFO
    fmt = '%(asctime)s %(name)s %(levelname)s %(message)s %(filename)s:%(lineno)d'

    # Stream handler for console output (stderr, stdout stays machine-readable)
    stream_handler = logging.StreamHandler()
    if settings.run.log_json:
        stream_formatter = jsonlogger.JsonFormatter(fmt=fmt, datefmt='%Y-%m-%d %H:%M:%S')
    else:
        stream_formatter = logging.Formatter(fmt=fmt, datefmt='%Y-%m-%d %H:%M:%S')
    stream_handler.setFormatter(stream_formatter)

    new_logger = logging.getLogger("ROOMSIM")
    new_logger.setLevel(log_level)
    if not new_logger.handlers:
        new_logger.addHandler(stream_handler)
    new_logger.propagate = False

    return new_logger


logger = setup_logging()


# Worker count WARNING
if settings.simulation.workers > (os.cpu_count() or 1):
    logger.warning("MC_WORKERS=%s exceeds the %s available CPUs",
                   settings.simulation.workers, os.cpu_count())
