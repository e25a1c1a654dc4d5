import argparse
import json
import math

import numpy as np
import pytest
from pydantic import ValidationError

from catomo.errors import ConfigurationError
from catomo.models.base_model import BaseModel
from catomo.models.fock import FockVector, ReducedDensity, TruncationSpec
from catomo.models.reports import ExponentReport, Ridge, RidgeSet, StrandVerdict
from catomo.models.run_config import RunConfig
from catomo.models.tomogram import CatSource, ConditionalState, QuadraturePoint, TomogramGrid
from catomo.settings import NumericsSettings, load_settings


def test_block_name_inferred_from_class_name():
    """Test inferring the report block name from the class name."""
    class HomodyneRun(BaseModel):
        shots: int = 3

    assert HomodyneRun.Meta.block_name == "homodyne_run"
    assert HomodyneRun().to_kv() == "[homodyne_run]\nshots=3\n"


def test_explicit_block_name_is_kept():
    """Test that an explicit Meta.block_name is kept."""
    class Custom(BaseModel):
        class Meta:
            block_name = "custom_block"

    assert Custom.Meta.block_name == "custom_block"


def test_models_are_frozen():
    """Test that models cannot be mutated."""
    src = CatSource(alpha_sq=2.0)
    with pytest.raises(ValidationError):
        src.alpha_sq = 3.0


def test_cat_source_derived_fields():
    """Test beta, |beta|^2 and the overlap of a CatSource."""
    src = CatSource(alpha_sq=10.0, delta=0.2, h=1)
    assert math.isclose(src.beta_sq, 5.0)
    assert math.isclose(abs(src.beta), math.sqrt(5.0))
    assert math.isclose(src.overlap, math.exp(-10.0))


def test_cat_source_reduces_phase():
    """Test that phases are reduced to [0, 2 pi)."""
    assert math.isclose(CatSource(alpha_sq=1.0, delta=7.0).delta, 7.0 - 2 * math.pi)
    assert math.isclose(CatSource(alpha_sq=1.0, delta=-0.5).delta, 2 * math.pi - 0.5)
    assert QuadraturePoint(X=1.0, theta=-2 * math.pi).theta == 0.0


@pytest.mark.parametrize(
    "kwargs",
    [{"alpha_sq": -1.0}, {"alpha_sq": 0.0, "h": 1}, {"alpha_sq": 1.0, "h": 2}],
)
def test_cat_source_rejects_invalid(kwargs):
    """Test invalid CatSource inputs."""
    with pytest.raises(ValidationError):
        CatSource(**kwargs)


def test_fock_vector_normalization_check():
    """Test FockVector normalization and read-only amplitudes."""
    with pytest.raises(ValidationError):
        FockVector(amps=[1.0, 1.0], normalized=True)
    vector = FockVector(amps=[0.6, 0.8j], normalized=True)
    assert vector.dim == 2
    assert not vector.amps.flags.writeable
    with pytest.raises(ValidationError):
        TruncationSpec(dim=0)


def test_reduced_density_checks():
    """Test ReducedDensity Hermiticity and spectrum checks."""
    with pytest.raises(ValidationError):
        ReducedDensity(rho=[[0.5, 0.3], [0.0, 0.5]])
    with pytest.raises(ValidationError):
        ReducedDensity(rho=[[1.5, 0.0], [0.0, -0.5]])
    ReducedDensity(rho=[[0.5, 0.5], [0.5, 0.5]])


def test_conditional_state_norm_must_match():
    """Test that a ConditionalState norm must match its coefficients."""
    beta = complex(math.sqrt(5.0))
    with pytest.raises(ValidationError):
        ConditionalState(c_plus=1 + 0j, c_minus=1 + 0j, beta=beta, norm=1.0)


def test_tomogram_grid_validation():
    """Test TomogramGrid shape, sign, spacing and normalization checks."""
    axes = {"theta_axis": [0.0, 1.0], "x_axis": [0.0, 0.5, 1.0]}
    with pytest.raises(ValidationError):
        TomogramGrid(values=-np.ones((2, 3)), **axes)
    with pytest.raises(ValidationError):
        TomogramGrid(values=np.ones((3, 2)), **axes)
    with pytest.raises(ValidationError):
        TomogramGrid(values=2.0 * np.ones((2, 3)), normalized=True, **axes)
    with pytest.raises(ValidationError):
        TomogramGrid(values=np.ones((2, 3)), theta_axis=[0.0, 1.0], x_axis=[0.0, 0.2, 1.0])
    grid = TomogramGrid(values=np.ones((2, 3)), normalized=True, **axes)
    assert math.isclose(grid.x_step, 0.5)


def test_ridge_set_validation():
    """Test RidgeSet shape and window checks."""
    with pytest.raises(ValidationError):
        RidgeSet(per_theta=((),), theta_axis=(0.0, 1.0), x_min=-1.0, x_max=1.0, ridge_threshold=0.05)
    with pytest.raises(ValidationError):
        RidgeSet(
            per_theta=((Ridge(x_position=2.0, height=1.0),),),
            theta_axis=(0.0,),
            x_min=-1.0,
            x_max=1.0,
            ridge_threshold=0.05,
        )


def test_strand_verdict_label_must_match_fraction():
    """Test that a verdict label must agree with its double fraction."""
    with pytest.raises(ValidationError):
        StrandVerdict(label="double", fraction_double=0.1)
    verdict = StrandVerdict(label="double", fraction_double=0.75, crossing_thetas=(1.0, 2.0))
    text = verdict.to_kv()
    assert text.startswith("[strand_verdict]\n")
    assert "label=double" in text
    assert "crossings=2" in text


def test_exponent_report_renders_missing_winner():
    """Test rendering an ExponentReport without a winner."""
    report = ExponentReport(winner=None, derived_max_diff=1.0, printed_max_diff=2.0)
    assert "winner=None" in report.to_kv()


def test_settings_defaults(monkeypatch, tmp_path):
    """Test the numerics defaults."""
    monkeypatch.chdir(tmp_path)
    settings = NumericsSettings()
    assert settings.ridge_threshold == 0.05
    assert settings.merge_dx == 0.5
    assert settings.double_fraction == 0.25
    assert (settings.theta1_steps, settings.x1_steps) == (128, 321)


def test_settings_read_tomo_config(monkeypatch, tmp_path):
    """Test reading .TomoConfig from the working directory."""
    (tmp_path / ".TomoConfig").write_text(json.dumps({"ridge_threshold": 0.1, "x1_steps": 101}))
    monkeypatch.chdir(tmp_path)
    settings = NumericsSettings()
    assert settings.ridge_threshold == 0.1
    assert settings.x1_steps == 101
    assert NumericsSettings(x1_steps=11).x1_steps == 11


def test_settings_ignore_environment(monkeypatch, tmp_path):
    """Test that environment variables are ignored."""
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("RIDGE_THRESHOLD", "0.4")
    assert NumericsSettings().ridge_threshold == 0.05


def test_load_settings_from_path(tmp_path):
    """Test loading settings from an explicit file."""
    path = tmp_path / "numerics.json"
    path.write_text(json.dumps({"workers": 3}))
    assert load_settings(path).workers == 3


def test_load_settings_missing_file_raises(tmp_path):
    """Test that an explicit settings path must exist."""
    with pytest.raises(ConfigurationError, match="not found"):
        load_settings(tmp_path / "absent.json")


def test_load_settings_rejects_malformed_json(monkeypatch, tmp_path):
    """Test that unparsable JSON in either settings file raises ConfigurationError."""
    (tmp_path / ".TomoConfig").write_text("{not json")
    monkeypatch.chdir(tmp_path)
    with pytest.raises(ConfigurationError, match=".TomoConfig"):
        load_settings()
    explicit = tmp_path / "numerics.json"
    explicit.write_text("[1, 2")
    with pytest.raises(ConfigurationError, match="numerics.json"):
        load_settings(explicit)


def test_settings_reject_bad_values(monkeypatch, tmp_path):
    """Test that out-of-range settings are rejected."""
    monkeypatch.chdir(tmp_path)
    with pytest.raises(ValidationError):
        NumericsSettings(ridge_threshold=1.5)


def _args(**values):
    base = {name: None for name in RunConfig.model_fields}
    base.update(values)
    return argparse.Namespace(config=None, verbose=False, **base)


def test_run_config_takes_defaults_from_settings(monkeypatch, tmp_path):
    """Test that RunConfig falls back to settings for unset flags."""
    monkeypatch.chdir(tmp_path)
    settings = NumericsSettings(theta1_steps=16, workers=2)
    config = RunConfig.from_args(_args(subcommand="entropy", alpha_sq=2.0), settings)
    assert config.theta1_steps == 16
    assert config.workers == 2
    assert config.x1_steps == 321
    assert config.h == 0
    assert config.default_out_path() == "entropy.csv"


@pytest.mark.parametrize(
    "values",
    [
        {"subcommand": "tomogram", "x1_min": 2.0, "x1_max": 1.0},
        {"subcommand": "tomogram", "theta1_steps": 1},
        {"subcommand": "tomogram", "alpha_sq": -1.0},
        {"subcommand": "conditional", "x2": 2.0},
        {"subcommand": "qcurve"},
        {"subcommand": "entropy", "format": "pgm"},
        {"subcommand": "entropy", "h": 1, "alpha_sq": 0.0},
    ],
)
def test_run_config_rejects_invalid(values):
    """Test invalid CLI invocations."""
    with pytest.raises(ValidationError):
        RunConfig(**values)


def test_run_config_builds_source_and_conditioning():
    """Test the source and conditioning built from a RunConfig."""
    config = RunConfig(subcommand="conditional", alpha_sq=10.0, delta=0.2, x2=2.0, theta2=1.7708)
    assert config.source == CatSource(alpha_sq=10.0, delta=0.2, h=0)
    assert config.conditioning == QuadraturePoint(X=2.0, theta=1.7708)
