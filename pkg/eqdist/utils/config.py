"""
配置管理模块
负责加载和管理 config/ 下的 YAML 配置文件
"""
import os
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml
from loguru import logger

CONFIG_ENV_VAR = "EQDIST_CONFIG_DIR"
CONFIG_FILES = {
    "solver": "solver.yaml",
    "report": "report.yaml",
    "logging": "logging.yaml",
}

# 仓库根目录(eqdist/ 的上一级)
PROJECT_ROOT = Path(__file__).resolve().parent.parent.parent


class ConfigManager:
    """配置管理器"""

    def __init__(self, config_dir: Optional[Union[str, Path]] = None):
        if config_dir is not None:
            self.config_dir = Path(config_dir)
        elif os.environ.get(CONFIG_ENV_VAR):
            self.config_dir = Path(os.environ[CONFIG_ENV_VAR])
            logger.debug(f"Config directory from {CONFIG_ENV_VAR}")
        else:
            self.config_dir = PROJECT_ROOT / "config"

        logger.debug(f"Config directory: {self.config_dir}")
        self._configs: Dict[str, Any] = {}
        self._load_all_configs()

    def _load_all_configs(self):
        """加载所有配置文件"""
        for name, filename in CONFIG_FILES.items():
            filepath = self.config_dir / filename
            if filepath.exists():
                with open(filepath, "r", encoding="utf-8") as f:
                    self._configs[name] = yaml.safe_load(f) or {}
                logger.debug(f"Loaded config: {filename}")
            else:
                logger.warning(f"Config file not found: {filepath}")
                self._configs[name] = {}

    def get(self, key: str, default: Any = None) -> Any:
        """
        获取配置值,支持点号分隔的路径
        例如: get("solver.clique.budget") -> 100000000
        """
        parts = key.split(".")
        config_name = parts[0]

        if config_name not in self._configs:
            return default

        value = self._configs[config_name]
        for part in parts[1:]:
            if isinstance(value, dict) and part in value:
                value = value[part]
            else:
                return default

        return value

    def get_section(self, section: str) -> Dict[str, Any]:
        """获取整个配置节"""
        return self._configs.get(section, {})

    def resolve_path(self, key: str, default: str) -> Path:
        """读取路径配置,相对路径按仓库根目录解析"""
        path = Path(self.get(key, default))
        return path if path.is_absolute() else PROJECT_ROOT / path


# 全局配置实例
config = ConfigManager()
