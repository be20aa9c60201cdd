import logging
import os

from services.shared.bh_logging_lib.bh_logger import configure_logging
from services.shared.bh_utilities.settings import load_settings


class LoggerFactory:
    """Creates service loggers with the level and directory from bers_config.yml.

    BERS_HORIZON_LOG_LEVEL and BERS_HORIZON_LOG_DIR take precedence over the file.
    """

    @staticmethod
    def create_logger_for(logger_name: str):
        """Create logger automatically based on passed name"""
        settings = load_settings().logging
        level_name = os.getenv("BERS_HORIZON_LOG_LEVEL", settings.level)
        level = logging.getLevelName(level_name.upper())
        if not isinstance(level, int):
            level = logging.INFO
        base_dir = os.getenv("BERS_HORIZON_LOG_DIR", settings.base_dir)
        return configure_logging(logger_name=logger_name, log_level=level, logs_base_dir=base_dir)
