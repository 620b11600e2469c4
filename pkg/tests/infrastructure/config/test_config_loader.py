"""
Тесты загрузки и валидации конфигурации запуска
"""

from pathlib import Path

import pytest

from chiralflow.core.domain.errors import ConfigurationError
from chiralflow.core.domain.experiment import EngineKind, SeedPolicy, SweepParameter
from chiralflow.core.domain.kernel import KernelVariant
from chiralflow.infrastructure.config import (
    ConfigLoader,
    load_run_config,
    load_sweep_spec,
    parse_run_config,
)

CONFIG_DIR = Path(__file__).resolve().parents[3] / "config"


class TestConfigLoader:
    def test_json(self, write_config):
        loader = ConfigLoader(write_config({"bath": {"seed": 7}}))
        assert loader.get("bath.seed") == 7
        assert loader.get("bath.k_max", 200) == 200
        assert loader.get("chain.N") is None

    def test_yaml(self, tmp_path):
        path = tmp_path / "run.yaml"
        path.write_text("chain:\n  N: 5\n  D: 0.5\nbath:\n  lambda: 0.2\n", encoding="utf-8")
        loader = ConfigLoader(path)
        assert loader.get("chain.N") == 5
        assert loader.get("bath.lambda") == 0.2

    def test_set_and_copy(self, write_config):
        loader = ConfigLoader(write_config({}))
        loader.set("evolve.t_max", 3.0)
        data = loader.get_all()
        data["evolve"]["t_max"] = 100.0
        assert loader.get("evolve.t_max") == 3.0

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigurationError):
            ConfigLoader(tmp_path / "absent.json")

    def test_unsupported_suffix(self, tmp_path):
        path = tmp_path / "run.toml"
        path.write_text("N = 3", encoding="utf-8")
        with pytest.raises(ConfigurationError):
            ConfigLoader(path)

    def test_root_must_be_object(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text("[1, 2]", encoding="utf-8")
        with pytest.raises(ConfigurationError):
            ConfigLoader(path)

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text("{", encoding="utf-8")
        with pytest.raises(ConfigurationError):
            ConfigLoader(path)


class TestParseRunConfig:
    def test_defaults(self):
        config, sweep = parse_run_config({})
        assert config.chain.N == 50
        assert config.chain.D == 0.0
        assert config.engine == EngineKind.FULL_PROPAGATOR
        assert sweep is None

    def test_lambda_alias(self):
        config, _ = parse_run_config(
            {"bath": {"lambda": 0.25}, "kernel": {"variant": "full_sum_as_printed"}}
        )
        assert config.bath.lam == 0.25
        assert config.kernel_variant == KernelVariant.FULL_SUM_AS_PRINTED

    def test_unknown_field(self):
        with pytest.raises(ConfigurationError) as info:
            parse_run_config({"chain": {"foo": 1}})
        assert any(error.startswith("chain.foo") for error in info.value.field_errors)

    def test_invalid_values(self):
        with pytest.raises(ConfigurationError) as info:
            parse_run_config({"chain": {"N": 2}, "bath": {"k_max": 0}})
        fields = {error.split(":")[0] for error in info.value.field_errors}
        assert {"chain.N", "bath.k_max"} <= fields

    def test_analytic_requires_three_spins(self):
        with pytest.raises(ConfigurationError):
            parse_run_config({"engine": "analytic3", "chain": {"N": 4}})
        config, _ = parse_run_config({"engine": "analytic3", "chain": {"N": 3}})
        assert config.engine == EngineKind.ANALYTIC3

    def test_conflicting_dm_parametrization(self):
        with pytest.raises(ConfigurationError):
            parse_run_config({"chain": {"D": 0.5, "c_ME": 1.0, "E_field": 2.0}})

    def test_explicit_initial_pair(self):
        data = {
            "chain": {"N": 3},
            "initial_pair": {
                "first": {"c0": 1.0, "amplitudes": {"2": 1.0}},
                "second": {"c0": 1.0, "amplitudes": {"2": [0.0, 1.0]}},
                "normalize": True,
            },
        }
        config, _ = parse_run_config(data)
        pair = config.initial_pair
        assert pair.label == "custom"
        assert pair.second.c_n[1] == pytest.approx(1j / 2 ** 0.5)

    def test_unnormalized_initial_state(self):
        data = {
            "chain": {"N": 3},
            "initial_pair": {"first": {"c0": 1.0, "amplitudes": {"1": 1.0}}, "second": {"c0": 1.0}},
        }
        with pytest.raises(ConfigurationError):
            parse_run_config(data)

    def test_embedded_sweep(self):
        _, sweep = parse_run_config({"sweep": {"parameter": "D", "values": [0.0, 1.0]}})
        assert sweep is not None
        assert sweep.to_domain().parameter == SweepParameter.D


class TestLoadRunConfig:
    def test_overrides(self, write_config):
        path = write_config({"chain": {"N": 4, "D": 0.5}, "bath": {"seed": 1}})
        config, _ = load_run_config(path, {"bath.seed": 9, "engine": None, "output.dir": "out"})
        assert config.bath.seed == 9
        assert config.engine == EngineKind.FULL_PROPAGATOR
        assert config.output.directory == Path("out")

    def test_replaced_file_value_is_logged(self, write_config, caplog):
        """Переопределение значения из файла попадает в лог, новое значение нет"""
        path = write_config({"chain": {"N": 4}, "bath": {"seed": 3}})
        with caplog.at_level("INFO", logger="chiralflow.infrastructure.config.config_loader"):
            config, _ = load_run_config(path, {"bath.seed": 9, "output.dir": "out"})
        assert config.bath.seed == 9
        replaced = [r.getMessage() for r in caplog.records if "заменено" in r.getMessage()]
        assert replaced == ["bath.seed: значение 3 из файла заменено на 9"]

    def test_shipped_configs(self):
        config, _ = load_run_config(CONFIG_DIR / "default.json")
        assert config.chain.N == 50
        assert config.chain.D == 0.5
        spec, workers = load_sweep_spec(CONFIG_DIR / "sweep_B.json")
        assert spec.values == (0.0, 0.25, 0.5, 1.0)
        assert workers == 2


class TestLoadSweepSpec:
    def test_from_dict(self):
        spec, workers = load_sweep_spec(
            data={"parameter": "lambda", "values": [0.1], "seed_policy": "resampled"}
        )
        assert spec.parameter == SweepParameter.LAMBDA
        assert spec.seed_policy == SeedPolicy.RESAMPLED
        assert workers == 1

    def test_empty_values(self):
        with pytest.raises(ConfigurationError):
            load_sweep_spec(data={"parameter": "B", "values": []})

    def test_unknown_parameter(self):
        with pytest.raises(ConfigurationError):
            load_sweep_spec(data={"parameter": "J1", "values": [1.0]})
