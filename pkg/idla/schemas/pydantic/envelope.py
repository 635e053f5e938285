"""
Pydantic model výstupní obálky CLI.
"""

import re
from typing import Any, Dict, List, Union

from pydantic import BaseModel, Field, field_validator

FORMAT_VERSION = "1.0.0"

# Hodnota buňky: racionální číslo "a/b", float aproximace, int, bool, text nebo prázdná
CellValue = Union[bool, int, float, str, None]


class OutputEnvelope(BaseModel):
    """
    Výstup jednoho CLI příkazu.

    Neobsahuje run_id, časy ani počet workerů; stejný vstup dává bajtově stejnou obálku.
    """

    command: str
    parameters: Dict[str, Any] = Field(default_factory=dict)
    rows: List[Dict[str, CellValue]] = Field(default_factory=list)
    format_version: str = FORMAT_VERSION

    @field_validator('format_version')
    @classmethod
    def validate_format_version(cls, v):
        if not re.match(r'^\d+\.\d+\.\d+$', v):
            raise ValueError(f"format_version musí být ve formátu semver (X.Y.Z): {v}")
        return v

    @field_validator('rows')
    @classmethod
    def validate_columns(cls, v):
        """Všechny řádky mají stejné sloupce ve stejném pořadí."""
        if v:
            columns = list(v[0])
            for i, row in enumerate(v):
                if list(row) != columns:
                    raise ValueError(f"Řádek {i} má sloupce {list(row)}, očekáváno {columns}")
        return v

    @property
    def columns(self) -> List[str]:
        return list(self.rows[0]) if self.rows else []
