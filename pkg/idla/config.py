"""
Konfigurace pro idla (Internal DLA v jedné dimenzi)
"""
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import yaml
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Nastavení knihovny a CLI"""

    model_config = SettingsConfigDict(
        env_prefix="IDLA_",
        env_file=".env",
        case_sensitive=False,
        extra="ignore",  # Ignoruj cizí klíče z .env i YAML
    )

    # Přesný N-toss engine
    ntoss_cap: int = Field(16, ge=0, description="Maximální N pro ntoss_distribution")

    # Monte Carlo
    default_workers: int = Field(1, ge=1)
    chunk_size: int = Field(8192, ge=1, description="Počet trialů v jednom chunku (nezávislé na workerech)")

    # Verify suite montecarlo
    verify_mc_trials: int = Field(100_000, ge=1)
    verify_mc_seeds: List[int] = Field(default_factory=lambda: [20240501, 7, 1234567])

    # Logging
    log_level: str = "INFO"
    log_file: Optional[Path] = None


def load_settings(config_path: Optional[Union[str, Path]] = None) -> Settings:
    """
    Načte nastavení z prostředí a volitelně z YAML souboru.

    Hodnoty z YAML mají přednost před proměnnými prostředí.

    Args:
        config_path: Cesta ke konfiguračnímu YAML (volitelné)

    Returns:
        Settings: Validované nastavení

    Raises:
        ValueError: Pokud YAML neexistuje nebo nemá formát mapy
    """
    if config_path is None:
        return Settings()

    path = Path(config_path)
    if not path.exists():
        raise ValueError(f"Konfigurační soubor neexistuje: {path}")

    with open(path, 'r', encoding='utf-8') as f:
        data: Any = yaml.safe_load(f) or {}

    if not isinstance(data, dict):
        raise ValueError(f"Konfigurace musí být YAML mapa: {path}")

    overrides: Dict[str, Any] = {k: v for k, v in data.items() if v is not None}
    return Settings(**overrides)


# Globální instance nastavení
settings = Settings()
