"""
Strukturovaný logger pro idla
"""
import logging
import sys
from pathlib import Path
from typing import Optional

import structlog

_HANDLER_TAG = "_idla_handler"


def setup_logger(log_level: str = "INFO", log_file: Optional[Path] = None):
    """
    Nastavení strukturovaného loggeru.

    Logy jdou na stderr (stdout patří datovým výstupům CLI) a volitelně do souboru.
    Opakované volání nepřidává duplicitní handlery.
    """
    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.stdlib.PositionalArgumentsFormatter(),
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.processors.UnicodeDecoder(),
            structlog.processors.JSONRenderer(ensure_ascii=False)
        ],
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=False,
    )

    level = getattr(logging, log_level.upper(), logging.INFO)
    root_logger = logging.getLogger()
    root_logger.setLevel(level)

    # Odstraň handlery z předchozího nastavení
    for handler in list(root_logger.handlers):
        if getattr(handler, _HANDLER_TAG, False):
            root_logger.removeHandler(handler)
            handler.close()

    # Console handler (stderr)
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level)
    setattr(console_handler, _HANDLER_TAG, True)
    root_logger.addHandler(console_handler)

    # File handler
    if log_file is not None:
        log_file = Path(log_file)
        log_file.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_file, encoding='utf-8')
        file_handler.setLevel(level)
        setattr(file_handler, _HANDLER_TAG, True)
        root_logger.addHandler(file_handler)

    return structlog.get_logger()


def get_logger(module: str):
    """Vrátí logger navázaný na jméno modulu."""
    return structlog.get_logger().bind(module=module)
