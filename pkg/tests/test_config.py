import pytest

from robinkit.config import Settings, load_settings, parse_config


def test_defaults():
    s = Settings()
    assert s.tolerance == 1e-30
    assert s.max_precision_escalations == 4
    assert s.mertens_envelope == 5e-3


def test_file_then_environment_then_flags(tmp_path):
    cfg = tmp_path / "robin.cfg"
    cfg.write_text("# run settings\ntolerance = 1e-20\nthreads = 2\nmertens-envelope = 0.01\n")
    s = load_settings(cfg, env={})
    assert (s.tolerance, s.threads, s.mertens_envelope) == (1e-20, 2, 0.01)
    s = load_settings(cfg, env={"ROBINKIT_THREADS": "3"})
    assert s.threads == 3 and s.tolerance == 1e-20
    s = load_settings(cfg, env={"ROBINKIT_THREADS": "3"}, threads=4, tolerance=None)
    assert s.threads == 4 and s.tolerance == 1e-20


def test_config_errors():
    with pytest.raises(KeyError):
        parse_config("bogus = 1")
    with pytest.raises(ValueError):
        parse_config("tolerance 1e-3")
