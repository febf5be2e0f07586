from typing import Optional

from config.app_config import DEFAULT_CONFIG_PATH, ConfigModel, load_config
from config.env_config import get_settings
from src.models.grid import RadialGrid


class BaseController:
    """
    Shared configuration for every controller: environment settings plus the
    validated YAML configuration (or an already merged one from the CLI).
    """

    def __init__(self, config: Optional[ConfigModel] = None):
        self.env_config = get_settings()
        self.app_config = config or load_config(
            self.env_config.CONFIG_PATH or DEFAULT_CONFIG_PATH
        )

    @property
    def tolerances(self):
        return self.app_config.tolerances

    @property
    def seed(self) -> int:
        return self.app_config.run.seed

    def grid(self) -> RadialGrid:
        """
        Builds the working grid from the configuration.

        Returns:
            RadialGrid: Log-uniform grid with the configured t interval and node count.
        """
        cfg = self.app_config.grid
        return RadialGrid(cfg.t_min, cfg.t_max, cfg.n)
