"""配置与容差测试"""
import pytest
from pydantic import ValidationError

from eqdist.core.tolerances import DEFAULT_TOLERANCES, Tolerances
from eqdist.utils.config import CONFIG_ENV_VAR, PROJECT_ROOT, ConfigManager, config


@pytest.fixture
def config_dir(tmp_path):
    (tmp_path / "solver.yaml").write_text(
        "clique:\n  budget: 500\ntolerances:\n  group: 1.0e-5\nlp:\n  max_iterations: 99\n",
        encoding="utf-8",
    )
    (tmp_path / "report.yaml").write_text("data:\n  tables_dir: /abs/tables\n", encoding="utf-8")
    return tmp_path


def test_dotted_get(config_dir):
    manager = ConfigManager(config_dir)
    assert manager.get("solver.clique.budget") == 500
    assert manager.get("solver.clique.missing", 3) == 3
    assert manager.get("unknown.key", "x") == "x"


def test_missing_file_gives_empty_section(config_dir):
    assert ConfigManager(config_dir).get_section("logging") == {}


def test_resolve_path(config_dir):
    manager = ConfigManager(config_dir)
    assert str(manager.resolve_path("report.data.tables_dir", "data/tables")) == "/abs/tables"
    assert manager.resolve_path("report.data.catalog_dir", "data/named") == PROJECT_ROOT / "data/named"


def test_environment_variable(config_dir, monkeypatch):
    monkeypatch.setenv(CONFIG_ENV_VAR, str(config_dir))
    assert ConfigManager().get("solver.clique.budget") == 500


def test_bundled_config():
    assert config.get("solver.clique.budget") == 100000000
    assert config.get("report.output.default_format") == "table"
    assert config.get("logging.logging.level") == "INFO"


def test_tolerances_from_section(config_dir):
    section = ConfigManager(config_dir).get_section("solver")
    tol = Tolerances.from_config(section, lp_epsilon=1e-5, inclusion_slack=None)
    assert tol.group_tol == 1e-5
    assert tol.lp_max_iterations == 99
    assert tol.lp_epsilon == 1e-5
    assert tol.inclusion_slack == DEFAULT_TOLERANCES.inclusion_slack


def test_bundled_tolerances_match_defaults():
    assert Tolerances.from_config() == DEFAULT_TOLERANCES


def test_tolerances_are_validated():
    with pytest.raises(ValidationError):
        Tolerances(group_tol=0)
    with pytest.raises(ValidationError):
        Tolerances(jacobi_max_sweeps=0)
