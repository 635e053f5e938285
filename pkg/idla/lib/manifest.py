"""
Manifest builder pro běhy idla CLI.

Fluent API pro vytvoření, plnění a validaci manifest.json v adresáři běhu.
"""

import getpass
import json
import platform
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Optional, Union

from .ids import new_run_id

MANIFEST_SCHEMA = "idla.v1.run"
MANIFEST_SCHEMA_VERSION = "1.0.0"

_KEY_ORDER = ['schema', 'schema_version', 'command', 'run_id', 'producer',
              'started_at_utc', 'finished_at_utc', 'status', 'parameters',
              'outputs', 'counts', 'metrics', 'errors', 'notes']


def _utc_now() -> str:
    return datetime.now(timezone.utc).strftime('%Y-%m-%dT%H:%M:%SZ')


class Manifest:
    """
    Builder pro manifest soubory.

    Po finalizaci je manifest neměnný a lze ho zapsat.
    """

    def __init__(self):
        self._data: Dict[str, Any] = {}
        self._finalized = False

    @classmethod
    def new(cls, *, command: str, run_id: str,
            schema: str = MANIFEST_SCHEMA, schema_version: str = MANIFEST_SCHEMA_VERSION) -> "Manifest":
        """
        Vytvoří nový manifest s povinnými poli.

        Args:
            command: CLI příkaz (např. "simulate")
            run_id: ULID běhu
            schema: Schema identifier
            schema_version: Semantic version
        """
        manifest = cls()
        manifest._data.update({
            'schema': schema,
            'schema_version': schema_version,
            'command': command,
            'run_id': run_id,
            'started_at_utc': _utc_now(),
            'finished_at_utc': None,
            'status': 'running',  # Dočasný status
            'parameters': {},
            'outputs': {},
            'counts': {},
            'metrics': {},
            'errors': [],
            'notes': None,
        })
        manifest._data['producer'] = {
            'git_sha': manifest._get_git_sha(),
            'host': platform.node(),
            'user': getpass.getuser(),
            'package_version': manifest._get_package_version(),
        }
        return manifest

    def _check_open(self) -> None:
        if self._finalized:
            raise RuntimeError("Manifest je již finalizován")

    def set_parameters(self, **parameters: Any) -> "Manifest":
        """Nastaví parametry příkazu (hodnoty musí být JSON-serializovatelné)."""
        self._check_open()
        self._data['parameters'].update(parameters)
        return self

    def set_outputs(self, primary: str, **aux: str) -> "Manifest":
        """
        Nastaví výstupní soubory (cesty relativní k adresáři běhu).
        """
        self._check_open()
        self._data['outputs'] = {
            'primary': primary,
            'aux': aux if aux else None,
        }
        return self

    def set_counts(self, **counts: int) -> "Manifest":
        """Nastaví počty (např. rows=12, failed_checks=0)."""
        self._check_open()
        self._data['counts'].update(counts)
        return self

    def merge_metrics(self, **metrics: float) -> "Manifest":
        """Přidá nebo aktualizuje metriky (např. elapsed_s=0.42)."""
        self._check_open()
        self._data['metrics'].update(metrics)
        return self

    def add_error(self, unit_id: str, error_key: str, message: str = "") -> "Manifest":
        """
        Přidá error záznam.

        Args:
            unit_id: Kde k chybě došlo (např. "chain/theorem_eulerian")
            error_key: Klíč chyby (např. "verification_failed")
            message: Popis chyby
        """
        self._check_open()
        self._data['errors'].append({
            'unit_id': unit_id,
            'error_key': error_key,
            'message': message,
        })
        return self

    def set_notes(self, notes: str) -> "Manifest":
        self._check_open()
        self._data['notes'] = notes
        return self

    def finalize_success(self) -> "Manifest":
        """
        Finalizuje manifest jako úspěšný.

        Raises:
            RuntimeError: Pokud manifest má errors
        """
        self._check_open()
        if self._data['errors']:
            raise RuntimeError("Úspěšný manifest nesmí mít errors")
        self._data['status'] = 'success'
        self._data['finished_at_utc'] = _utc_now()
        self._finalized = True
        return self

    def finalize_error(self, partial: bool = False) -> "Manifest":
        """
        Finalizuje manifest jako selhaný.

        Raises:
            RuntimeError: Pokud manifest nemá errors
        """
        self._check_open()
        if not self._data['errors']:
            raise RuntimeError("Selhaný manifest musí mít alespoň jeden error")
        self._data['status'] = 'partial' if partial else 'error'
        self._data['finished_at_utc'] = _utc_now()
        self._finalized = True
        return self

    @property
    def status(self) -> str:
        return self._data.get('status', 'running')

    def to_dict(self) -> Dict[str, Any]:
        """Manifest jako dict s konzistentním pořadím klíčů."""
        return {key: self._data[key] for key in _KEY_ORDER if key in self._data}

    @classmethod
    def from_path(cls, path: Union[str, Path]) -> "Manifest":
        """
        Načte manifest ze souboru.

        Raises:
            ValueError: Pokud soubor neexistuje nebo není platný JSON
        """
        path = Path(path)
        if not path.exists():
            raise ValueError(f"Manifest soubor neexistuje: {path}")
        try:
            with open(path, 'r', encoding='utf-8') as f:
                data = json.load(f)
        except json.JSONDecodeError as e:
            raise ValueError(f"Manifest soubor není platný JSON: {e}")

        manifest = cls()
        manifest._data = data
        manifest._finalized = True  # Načtené manifesty jsou považovány za finalizované
        return manifest

    def write(self, path: Union[str, Path]) -> None:
        """
        Zapíše manifest do souboru.

        Raises:
            RuntimeError: Pokud manifest není finalizován
        """
        if not self._finalized:
            raise RuntimeError("Manifest musí být finalizován před zápisem")
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(self.to_dict(), f, indent=2, ensure_ascii=False)

    def validate(self) -> None:
        """
        Validuje manifest pomocí Pydantic modelu.

        Raises:
            ValueError: Pokud validace selže
        """
        from ..schemas.pydantic.manifest import validate_manifest_dict

        validate_manifest_dict(self.to_dict())

    def _get_git_sha(self) -> str:
        """Zkrácený git SHA, jinak "unknown"."""
        try:
            import subprocess
            result = subprocess.run(['git', 'rev-parse', '--short', 'HEAD'],
                                    capture_output=True, text=True, timeout=5)
            if result.returncode == 0:
                return result.stdout.strip()
        except Exception:
            pass
        return "unknown"

    def _get_package_version(self) -> Optional[str]:
        from .. import __version__
        return __version__


def create_manifest(command: str) -> Manifest:
    """Nový manifest s automaticky vygenerovaným run_id."""
    return Manifest.new(command=command, run_id=new_run_id())
