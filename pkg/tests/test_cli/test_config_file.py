"""
Тесты для файла конфигурации запуска.
"""

import pytest

from rfs_bound.core.exceptions import ConfigError
from rfs_bound.modules.cli import ConfigEntry, Mode, describe_keys, parse_config, read_config_file
from rfs_bound.modules.scenarios import ScenarioKind, linear_default


class TestReadConfigFile:
    """Тесты для read_config_file."""

    def test_comments_and_blank_lines(self, write_config):
        path = write_config("# linear run\n\npd = 0.7   # detection\nr=0.9\n")
        entries = read_config_file(path)
        assert entries == {"pd": ConfigEntry("0.7", 3), "r": ConfigEntry("0.9", 4)}

    def test_later_keys_win(self, write_config):
        entries = read_config_file(write_config("pd = 0.7\npd = 0.6\n"))
        assert entries["pd"] == ConfigEntry("0.6", 2)

    def test_unknown_key(self, write_config):
        with pytest.raises(ConfigError) as exc_info:
            read_config_file(write_config("pd = 0.7\nclutter = 3\n"))
        assert exc_info.value.key == "clutter"
        assert exc_info.value.line == 2

    def test_missing_equals(self, write_config):
        with pytest.raises(ConfigError) as exc_info:
            read_config_file(write_config("pd 0.7\n"))
        assert exc_info.value.line == 1

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            read_config_file(tmp_path / "absent.cfg")


class TestParseConfig:
    """Тесты для parse_config."""

    def test_empty_file_gives_defaults(self, write_config):
        config = parse_config(write_config(""))
        assert config.mode is Mode.RFS_BOUND
        assert config.scenario == linear_default()
        assert config.k_max == 10
        assert config.prune_eps == 0.0

    def test_detection_probability_one(self, write_config):
        """Тест: pd = 1.0 нарушает 0 < P_d < 1."""
        with pytest.raises(ConfigError) as exc_info:
            parse_config(write_config("scans = 5\npd = 1.0\n"))
        assert exc_info.value.key == "pd"
        assert exc_info.value.line == 2
        assert exc_info.value.to_line().startswith("config_error[key=pd,line=2]")

    def test_error_scale(self, write_config):
        """Тест: e_scale = 2 удваивает e0 и e1."""
        config = parse_config(write_config("e_scale = 2\n"))
        assert config.scenario.params.e0 == (200.0, 10.0, 200.0, 10.0)

    def test_bearings(self, write_config):
        config = parse_config(write_config("scenario = bearings\nr = 0.9\nscans = 12\nsensor_std = 0.02\n"))
        assert config.scenario.kind is ScenarioKind.BEARINGS_ONLY
        assert config.scenario.sensor_std == (0.02,)
        assert config.k_max == 12

    def test_vector_values(self, write_config):
        config = parse_config(write_config("target = 0, 1, 2, 3\nc_r = 50\n"))
        assert config.scenario.initial_target == (0.0, 1.0, 2.0, 3.0)
        assert config.scenario.prior_std == (50.0, 5.0)

    def test_flag_overrides_file(self, write_config):
        path = write_config("pd = 0.7\nseed = 3\n")
        config = parse_config(path, overrides={"pd": ConfigEntry("0.9", None)}, mode=Mode.COMPARE)
        assert config.scenario.params.pd == 0.9
        assert config.seed == 3
        assert config.mode is Mode.COMPARE

    def test_field_of_other_scenario(self, write_config):
        """Тест: omega допустим только для пеленгационного сценария."""
        with pytest.raises(ConfigError) as exc_info:
            parse_config(write_config("scenario = linear\nomega = 0.01\n"))
        assert exc_info.value.key == "omega"
        assert exc_info.value.line == 2

    def test_sensor_std_arity(self, write_config):
        with pytest.raises(ConfigError) as exc_info:
            parse_config(write_config("sensor_std = 25\n"))
        assert exc_info.value.key == "sensor_std"

    @pytest.mark.parametrize(
        "text, key",
        [
            ("scans = 30\n", "scans"),
            ("prune_eps = 0.01\n", "prune_eps"),
            ("runs = 0\n", "runs"),
            ("format = pdf\n", "format"),
            ("mode = plot\n", "mode"),
            ("scenario = radar\n", "scenario"),
            ("pd = high\n", "pd"),
        ],
    )
    def test_invalid_values(self, write_config, text, key):
        with pytest.raises(ConfigError) as exc_info:
            parse_config(write_config(text))
        assert exc_info.value.key == key
        assert exc_info.value.line == 1

    def test_describe_keys(self):
        text = describe_keys()
        for key in ("pd", "e_scale", "prune_eps", "ownship"):
            assert key in text
