"""Tests for the environment-driven settings."""
from src.config import Settings


def test_defaults_without_environment(monkeypatch):
    """Test the built-in defaults when nothing is set."""
    for name in ("SEED", "WORKERS", "OVERLAP_TOL", "LOG_FORMAT"):
        monkeypatch.delenv(name, raising=False)

    config = Settings(_env_file=None)

    assert config.seed == 20240917
    assert config.workers == 4
    assert config.log_format == "console"
    assert config.default_c * config.default_varsigma < 0.01


def test_environment_overrides_case_insensitively(monkeypatch):
    """Test that environment variables override defaults regardless of case."""
    monkeypatch.setenv("SEED", "7")
    monkeypatch.setenv("overlap_tol", "1e-6")
    monkeypatch.setenv("LOG_FORMAT", "json")

    config = Settings(_env_file=None)

    assert config.seed == 7
    assert config.overlap_tol == 1e-6
    assert config.log_format == "json"


def test_env_file_is_read_and_unknown_keys_ignored(tmp_path, monkeypatch):
    """Test loading a .env file that carries keys the settings do not know."""
    monkeypatch.delenv("WORKERS", raising=False)
    env = tmp_path / ".env"
    env.write_text("WORKERS=2\nSOMETHING_ELSE=1\n", encoding="utf-8")

    config = Settings(_env_file=str(env))

    assert config.workers == 2
    assert not hasattr(config, "something_else")
