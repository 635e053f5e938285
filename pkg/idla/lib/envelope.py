"""
Serializace výstupní obálky do CSV a JSON.

Racionální čísla jdou ven jako "a/b" a vedle nich float sloupec *_approx.
Výstup je deterministický: stejná obálka dává stejné bajty.
"""

import csv
import io
import json
from fractions import Fraction
from typing import Any, Dict, Iterable, List

from ..schemas.pydantic.envelope import CellValue, OutputEnvelope
from .algebra import format_rational

FORMATS = ("csv", "json")


def rational_cells(name: str, value: Fraction) -> Dict[str, CellValue]:
    """{name: "a/b", name_approx: float}."""
    return {name: format_rational(value), f"{name}_approx": float(value)}


def optional_rational_cells(name: str, value) -> Dict[str, CellValue]:
    if value is None:
        return {name: None, f"{name}_approx": None}
    return rational_cells(name, value)


def _parameter_value(value: Any) -> Any:
    if isinstance(value, Fraction):
        return format_rational(value)
    return value


def build_envelope(command: str, parameters: Dict[str, Any], rows: Iterable[Dict[str, CellValue]]) -> OutputEnvelope:
    """Obálka s parametry převedenými na JSON hodnoty."""
    return OutputEnvelope(
        command=command,
        parameters={key: _parameter_value(value) for key, value in parameters.items()},
        rows=list(rows),
    )


def csv_cell(value: CellValue) -> str:
    """Textová podoba buňky: bool jako true/false, None prázdně."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def encode_csv(envelope: OutputEnvelope) -> str:
    """Hlavička + řádky; parametry se do CSV nezapisují."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    columns = envelope.columns
    writer.writerow(columns)
    for row in envelope.rows:
        writer.writerow([csv_cell(row[column]) for column in columns])
    return buffer.getvalue()


def encode_json(envelope: OutputEnvelope) -> str:
    return json.dumps(envelope.model_dump(), indent=2, ensure_ascii=False) + "\n"


def encode(envelope: OutputEnvelope, fmt: str) -> str:
    """
    Raises:
        ValueError: Pokud formát není csv ani json
    """
    if fmt == "csv":
        return encode_csv(envelope)
    if fmt == "json":
        return encode_json(envelope)
    raise ValueError(f"Neznámý formát výstupu: {fmt} (povoleno: {', '.join(FORMATS)})")


def decode_csv(text: str) -> List[Dict[str, str]]:
    """Načte CSV výstup zpět jako seznam dictů textových hodnot."""
    return list(csv.DictReader(io.StringIO(text)))
