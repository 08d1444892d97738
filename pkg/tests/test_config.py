import threading

import pytest

from spinstat import config
from spinstat.errors import ScenarioParseError


def test_override_is_scoped():
    base = config.get().eps_int
    with config.override(eps_int=0.25):
        assert config.get().eps_int == 0.25
        with config.override(eps_snap=1e-3):
            assert config.get().eps_int == 0.25 and config.get().eps_snap == 1e-3
    assert config.get().eps_int == base


def test_override_does_not_leak_into_threads():
    seen = []
    with config.override(eps_int=0.25):
        t = threading.Thread(target=lambda: seen.append(config.get().eps_int))
        t.start()
        t.join()
    assert seen == [config.Tolerances().eps_int]


def test_unknown_tolerance_rejected():
    with pytest.raises(TypeError):
        with config.override(eps_bogus=1.0):
            pass


def test_parse_error_message_has_location():
    err = ScenarioParseError("bad", field="scenarios[0].seed", line=3)
    assert "scenarios[0].seed" in str(err) and "3" in str(err)
