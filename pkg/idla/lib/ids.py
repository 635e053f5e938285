"""
ID generátory pro běhy idla.

run_id je ULID (time-sortable); adresář běhu je <output_dir>/runs/<run_id>/.
"""

import re
from datetime import datetime
from pathlib import Path
from typing import Union

import ulid

# Crockford Base32: 0-9, A-Z (bez I, L, O, U)
_RUN_ID_PATTERN = re.compile(r'^[0-9A-HJKMNP-TV-Z]{26}$')


def new_ulid() -> str:
    """
    Generuje nový ULID.

    Returns:
        str: 26-znakový ULID v Crockford Base32 formátu
    """
    return str(ulid.new())


def new_run_id() -> str:
    """Alias pro new_ulid() - run ID pro jeden běh CLI příkazu."""
    return new_ulid()


def is_valid_run_id(s: str) -> bool:
    """
    Validuje formát run_id (ULID).

    Args:
        s: String k validaci

    Returns:
        bool: True pokud je formát validní
    """
    if not s or not isinstance(s, str):
        return False
    return bool(_RUN_ID_PATTERN.match(s))


def timestamp_from_run_id(run_id: str) -> datetime:
    """
    Čas vytvoření běhu zakódovaný v ULID.

    Raises:
        ValueError: Pokud run_id není validní
    """
    if not is_valid_run_id(run_id):
        raise ValueError(f"Nevalidní run_id: {run_id}")
    return ulid.parse(run_id).timestamp().datetime


def run_dir(output_dir: Union[str, Path], run_id: str) -> Path:
    """
    Cesta k adresáři běhu.

    Raises:
        ValueError: Pokud run_id není validní
    """
    if not is_valid_run_id(run_id):
        raise ValueError(f"Nevalidní run_id: {run_id}")
    return Path(output_dir) / "runs" / run_id
