"""
Unit testy pro idla/lib/envelope.py a schéma výstupní obálky
"""

import json
from fractions import Fraction

import pytest
from pydantic import ValidationError

from idla.lib.envelope import (
    build_envelope, csv_cell, decode_csv, encode, encode_csv, encode_json, optional_rational_cells, rational_cells
)
from idla.schemas.pydantic.envelope import FORMAT_VERSION, OutputEnvelope


@pytest.fixture
def envelope():
    rows = [
        {"k": 0, **rational_cells("probability", Fraction(1, 6)), "ok": True},
        {"k": 1, **rational_cells("probability", Fraction(2, 3)), "ok": False},
    ]
    return build_envelope("exact-dist", {"n": 3, "bias": Fraction(1, 2)}, rows)


class TestCells:
    """Testy pro buňky výstupu."""

    def test_rational_cells(self):
        """Testuje dvojici "a/b" a float."""
        assert rational_cells("p", Fraction(2, 3)) == {"p": "2/3", "p_approx": 2 / 3}
        assert rational_cells("p", Fraction(4)) == {"p": "4/1", "p_approx": 4.0}

    def test_optional_rational_cells(self):
        """Testuje prázdnou racionální hodnotu."""
        assert optional_rational_cells("c", None) == {"c": None, "c_approx": None}
        assert optional_rational_cells("c", Fraction(1, 2))["c"] == "1/2"

    @pytest.mark.parametrize("value,expected", [
        (None, ""), (True, "true"), (False, "false"), (3, "3"), (0.1, "0.1"), ("1/2", "1/2"),
    ])
    def test_csv_cell(self, value, expected):
        """Testuje textovou podobu buňky."""
        assert csv_cell(value) == expected


class TestEnvelopeModel:
    """Testy pro model obálky."""

    def test_fraction_parameters_become_text(self, envelope):
        """Testuje převod zlomků v parametrech na text."""
        assert envelope.parameters == {"n": 3, "bias": "1/2"}
        assert envelope.format_version == FORMAT_VERSION
        assert envelope.columns == ["k", "probability", "probability_approx", "ok"]

    def test_inconsistent_columns_rejected(self):
        """Testuje odmítnutí různých sloupců."""
        with pytest.raises(ValidationError):
            OutputEnvelope(command="x", rows=[{"a": 1}, {"b": 2}])

    def test_column_order_matters(self):
        """Testuje, že záleží na pořadí sloupců."""
        with pytest.raises(ValidationError):
            OutputEnvelope(command="x", rows=[{"a": 1, "b": 2}, {"b": 2, "a": 1}])

    def test_invalid_format_version(self):
        """Testuje neplatnou format_version."""
        with pytest.raises(ValidationError):
            OutputEnvelope(command="x", format_version="1.0")

    def test_empty_rows(self):
        """Testuje obálku bez řádků."""
        assert OutputEnvelope(command="x").columns == []


class TestEncoding:
    """Testy pro CSV a JSON kódování."""

    def test_csv(self, envelope):
        """Testuje CSV výstup."""
        text = encode_csv(envelope)
        lines = text.splitlines()
        assert lines[0] == "k,probability,probability_approx,ok"
        assert lines[1].startswith("0,1/6,")
        assert lines[1].endswith(",true")
        assert lines[2].endswith(",false")
        assert text.endswith("\n")

    def test_csv_readback(self, envelope):
        """Testuje zpětné načtení CSV."""
        rows = decode_csv(encode_csv(envelope))
        assert [Fraction(row["probability"]) for row in rows] == [Fraction(1, 6), Fraction(2, 3)]

    def test_json(self, envelope):
        """Testuje JSON výstup."""
        data = json.loads(encode_json(envelope))
        assert data["command"] == "exact-dist"
        assert data["parameters"]["bias"] == "1/2"
        assert data["rows"][1]["probability"] == "2/3"
        assert data["rows"][0]["ok"] is True

    def test_deterministic(self, envelope):
        """Testuje deterministický výstup."""
        assert encode(envelope, "json") == encode(envelope.model_copy(deep=True), "json")
        assert encode(envelope, "csv") == encode_csv(envelope)

    def test_unknown_format(self, envelope):
        """Testuje neznámý formát."""
        with pytest.raises(ValueError, match="Neznámý formát"):
            encode(envelope, "xml")
