"""Command-line interface: generate, sweep, defaults, cp-table, validate.

All outputs are deterministic plot-ready CSV/JSON; no figures are rendered
here.  Exit codes: 0 success, 2 input validation failure, 3 internal numeric
failure.  Option values take precedence over config-file values, which take
precedence over built-in defaults.
"""

from __future__ import annotations

import dataclasses
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import click
import numpy as np

from . import __version__
from .cp_models import (DEFAULT_PARAMETERISATION, REGISTRY, cp_general_array,
                        get_parameterisation, registry_to_json)
from .curve_engine import DEFAULT_DV, DEFAULT_V_MAX
from .environment import DEFAULT_N_BANDS, EnvironmentConditions
from .errors import (MissingDiameter, MissingMandatoryField, NoPositiveCp,
                     NonFiniteResult, GroundStrike, UnknownParameter,
                     UnknownParameterisation, WindcurveError)
from .synthesis import ENV_ORDERS, synthesize
from .turbine import TurbineSpec, complete_spec, load_spec
from .validation import (DEFAULT_TI_GRID, validate_directory,
                         write_report_json, write_summary_csv)

_INPUT_ERRORS = (MissingMandatoryField, MissingDiameter, GroundStrike,
                 UnknownParameter, UnknownParameterisation, ValueError,
                 FileNotFoundError, json.JSONDecodeError)
_NUMERIC_ERRORS = (NoPositiveCp, NonFiniteResult, FloatingPointError,
                   ZeroDivisionError)


@dataclass
class RunConfig:
    """Resolved run configuration; field names double as JSON config keys."""

    name: str = "turbine"
    rotor_diameter: float | None = None
    rated_power: float | None = None
    cut_in: float | None = None
    cut_out: float | None = None
    omega_min: float | None = None
    omega_max: float | None = None
    cp_max: float | None = None
    hub_height: float | None = None
    cp_model: str = DEFAULT_PARAMETERISATION
    ti: float = 0.0
    rho: float = 1.225
    shear_alpha: float = 0.0
    veer_rate: float = 0.0
    n_bands: int = DEFAULT_N_BANDS
    v_max: float = DEFAULT_V_MAX
    dv: float = DEFAULT_DV
    env_order: str = ENV_ORDERS[0]

    def spec(self) -> TurbineSpec:
        return TurbineSpec(name=self.name, rotor_diameter=self.rotor_diameter,
                           rated_power=self.rated_power, cut_in=self.cut_in,
                           cut_out=self.cut_out, omega_min=self.omega_min,
                           omega_max=self.omega_max, cp_max=self.cp_max,
                           hub_height=self.hub_height)

    def environment(self) -> EnvironmentConditions:
        return EnvironmentConditions(ti=self.ti, rho=self.rho,
                                     shear_alpha=self.shear_alpha,
                                     veer_rate=self.veer_rate)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


# Reference configuration and typical variation intervals used by sweeps.
# Sweep values outside their interval draw a warning, not an error.
REFERENCE_CONFIG = dict(
    name="reference", rotor_diameter=80.0, rated_power=2000.0, cut_in=3.5,
    cut_out=25.0, omega_min=10.0, omega_max=30.0, cp_max=0.4615,
    cp_model="dai2016", ti=0.0, rho=1.225, shear_alpha=0.0, veer_rate=0.0)

SWEEP_INTERVALS: dict[str, tuple[float, float]] = {
    "rotor_diameter": (40.0, 120.0),
    "rated_power": (1500.0, 2500.0),
    "cut_in": (0.0, 5.0),
    "cut_out": (20.0, 30.0),
    "omega_min": (0.0, 15.0),
    "omega_max": (15.0, 40.0),
    "cp_max": (0.3, 0.59),
    "ti": (0.0, 0.15),
    "rho": (1.15, 1.3),
    "shear_alpha": (0.0, 0.4),
    "veer_rate": (0.0, 0.75),
}
SWEEPABLE = tuple(SWEEP_INTERVALS) + ("cp_parameterisation",)


def _fail(code: int, reason: str) -> None:
    click.echo(f"error: {reason}", err=True)
    sys.exit(code)


def _guarded(fn):
    """Map package errors onto the documented exit codes."""

    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except _NUMERIC_ERRORS as exc:
            _fail(3, f"{type(exc).__name__}: {exc}")
        except _INPUT_ERRORS as exc:
            _fail(2, f"{type(exc).__name__}: {exc}")
        except WindcurveError as exc:
            _fail(2, f"{type(exc).__name__}: {exc}")

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _load_config_file(path: str | None) -> dict:
    if path is None:
        return {}
    with Path(path).open() as fh:
        data = json.load(fh)
    if "config" in data and isinstance(data["config"], dict):
        data = data["config"]
    known = {f.name for f in dataclasses.fields(RunConfig)}
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"unknown config keys: {', '.join(sorted(unknown))}")
    return data


def _resolve_config(config_path: str | None, spec_path: str | None,
                    flag_values: dict) -> RunConfig:
    """Overlay precedence: flags > config file > spec file > defaults."""
    merged: dict = {}
    if spec_path is not None:
        spec = load_spec(spec_path)
        merged.update({k: v for k, v in spec.to_dict().items() if v is not None})
    merged.update(_load_config_file(config_path))
    merged.update({k: v for k, v in flag_values.items() if v is not None})
    return RunConfig(**merged)


_turbine_options = [
    click.option("--name", default=None, help="Turbine name for outputs."),
    click.option("--diameter", "rotor_diameter", type=float, default=None,
                 help="Rotor diameter in m (mandatory unless given via config/spec)."),
    click.option("--rated-power", "rated_power", type=float, default=None,
                 help="Rated electrical power in kW (mandatory)."),
    click.option("--cut-in", "cut_in", type=float, default=None,
                 help="Cut-in wind speed in m/s."),
    click.option("--cut-out", "cut_out", type=float, default=None,
                 help="Cut-out wind speed in m/s."),
    click.option("--omega-min", "omega_min", type=float, default=None,
                 help="Minimum rotor speed in rpm."),
    click.option("--omega-max", "omega_max", type=float, default=None,
                 help="Maximum rotor speed in rpm."),
    click.option("--cp-max", "cp_max", type=float, default=None,
                 help="Peak power coefficient (dimensionless, at most 16/27)."),
    click.option("--hub-height", "hub_height", type=float, default=None,
                 help="Hub height in m (needed for shear/veer)."),
]

_environment_options = [
    click.option("--cp-model", "cp_model", default=None,
                 help=f"Cp parameterisation ({', '.join(sorted(REGISTRY))})."),
    click.option("--ti", type=float, default=None,
                 help="Turbulence intensity as a fraction (0.1, not 10%)."),
    click.option("--rho", type=float, default=None, help="Air density in kg/m^3."),
    click.option("--shear-alpha", "shear_alpha", type=float, default=None,
                 help="Power-law wind-shear exponent."),
    click.option("--veer-rate", "veer_rate", type=float, default=None,
                 help="Wind veer in degrees per metre of height."),
    click.option("--n-bands", "n_bands", type=int, default=None,
                 help="Horizontal rotor bands for the rotor-equivalent speed."),
    click.option("--v-max", "v_max", type=float, default=None,
                 help="Upper end of the wind-speed grid in m/s."),
    click.option("--dv", type=float, default=None,
                 help="Wind-speed grid step in m/s."),
    click.option("--env-order", "env_order", default=None,
                 type=click.Choice(ENV_ORDERS),
                 help="Order in which shear/veer and TI are applied."),
]


def _add_options(options):
    def deco(fn):
        for opt in reversed(options):
            fn = opt(fn)
        return fn
    return deco


@click.group()
@click.version_option(version=__version__)
def main() -> None:
    """Synthesize wind-turbine power curves from catalogue characteristics
    and site conditions."""


@main.command()
@_add_options(_turbine_options)
@_add_options(_environment_options)
@click.option("--config", "config_path", type=click.Path(exists=True), default=None,
              help="JSON run configuration (RunConfig field names).")
@click.option("--spec", "spec_path", type=click.Path(exists=True), default=None,
              help="JSON turbine spec record.")
@click.option("--out", "out_path", type=click.Path(), required=True,
              help="Output power-curve CSV; a .json metadata sidecar is "
                   "written next to it.")
@_guarded
def generate(config_path: str | None, spec_path: str | None, out_path: str,
             **flags) -> None:
    """Generate one power curve and its metadata sidecar."""
    cfg = _resolve_config(config_path, spec_path, flags)
    curve, report = synthesize(cfg.spec(), cfg.environment(),
                               cp_model=cfg.cp_model, v_max=cfg.v_max,
                               dv=cfg.dv, n_bands=cfg.n_bands,
                               env_order=cfg.env_order)
    resolved = cfg.to_dict()
    resolved.update({k: curve.meta["turbine"][k]
                     for k in ("cut_in", "cut_out", "omega_min", "omega_max", "cp_max")})
    out = Path(out_path)
    curve.write_csv(out)
    sidecar = out.with_suffix(".json")
    with sidecar.open("w") as fh:
        json.dump({"config": resolved,
                   "defaults_report": report.to_list(),
                   "model_version": __version__}, fh, indent=2)
        fh.write("\n")
    click.echo(f"wrote {out} and {sidecar}")


def _parse_sweep_values(param: str, values: str | None,
                        vrange: tuple[float, float, int] | None) -> list:
    if param not in SWEEPABLE:
        raise UnknownParameter(
            f"cannot sweep {param!r}; choose one of: {', '.join(SWEEPABLE)}")
    if (values is None) == (vrange is None):
        raise ValueError("give exactly one of --values or --range")
    if param == "cp_parameterisation":
        if values is None:
            raise ValueError("cp_parameterisation sweeps need --values with model names")
        return [get_parameterisation(v).name for v in values.split(",")]
    if values is not None:
        return [float(v) for v in values.split(",")]
    lo, hi, count = vrange
    if count < 1:
        raise ValueError("--range count must be >= 1")
    return list(np.linspace(lo, hi, int(count)))


@main.command()
@click.option("--param", required=True,
              help=f"Parameter varied around the reference configuration; "
                   f"one of: {', '.join(SWEEPABLE)}.")
@click.option("--values", default=None,
              help="Comma-separated explicit sweep values.")
@click.option("--range", "vrange", nargs=3, type=(float, float, int), default=None,
              help="MIN MAX COUNT evenly spaced sweep values.")
@_add_options(_turbine_options)
@_add_options(_environment_options)
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--out", "out_path", type=click.Path(), required=True,
              help="Long-format CSV param_value,wind_speed_ms,power_kw.")
@_guarded
def sweep(param: str, values: str | None, vrange, config_path: str | None,
          out_path: str, **flags) -> None:
    """Vary one parameter around the reference configuration."""
    sweep_values = _parse_sweep_values(param, values, vrange)
    base = dict(REFERENCE_CONFIG)
    base.update(_load_config_file(config_path))
    base.update({k: v for k, v in flags.items() if v is not None})
    cfg = RunConfig(**base)

    interval = SWEEP_INTERVALS.get(param)
    if interval is not None:
        for v in sweep_values:
            if not interval[0] <= v <= interval[1]:
                click.echo(f"warning: {param}={v:g} outside the typical "
                           f"interval [{interval[0]:g}, {interval[1]:g}]", err=True)

    with Path(out_path).open("w", newline="") as fh:
        fh.write("param_value,wind_speed_ms,power_kw\n")
        for v in sweep_values:
            run = dataclasses.replace(cfg)
            if param == "cp_parameterisation":
                run.cp_model = v
                label = v
            else:
                setattr(run, param, v)
                label = f"{v:.6g}"
            curve, _ = synthesize(run.spec(), run.environment(),
                                  cp_model=run.cp_model, v_max=run.v_max,
                                  dv=run.dv, n_bands=run.n_bands,
                                  env_order=run.env_order)
            for w, p in zip(curve.wind_grid, curve.power):
                fh.write(f"{label},{w:.6g},{p:.6g}\n")
    click.echo(f"wrote {out_path} ({len(sweep_values)} curves)")


@main.command()
@_add_options(_turbine_options)
@click.option("--out", "out_path", type=click.Path(), default=None,
              help="Write the completed spec JSON here instead of stdout.")
@_guarded
def defaults(out_path: str | None, **flags) -> None:
    """Complete a partial spec with the statistical defaults."""
    spec = TurbineSpec(**{k: v for k, v in flags.items() if v is not None})
    completed, report = complete_spec(spec)
    payload = json.dumps({"spec": completed.to_dict(),
                          "defaults_report": report.to_list()}, indent=2)
    if out_path is None:
        click.echo(payload)
    else:
        Path(out_path).write_text(payload + "\n")


@main.command(name="cp-table")
@click.option("--model", "models", multiple=True,
              help="Restrict to specific parameterisations (default: all six).")
@click.option("--lambda-min", type=float, default=0.5, show_default=True)
@click.option("--lambda-max", type=float, default=20.0, show_default=True)
@click.option("--step", type=float, default=0.05, show_default=True)
@click.option("--betas", default="0,1,3,5", show_default=True,
              help="Comma-separated pitch angles in degrees.")
@click.option("--registry-json", is_flag=True,
              help="Print the coefficient registry as JSON and exit.")
@click.option("--out", "out_path", type=click.Path(), default=None,
              help="Output CSV model,beta_deg,lambda,cp (default stdout).")
@_guarded
def cp_table(models: tuple[str, ...], lambda_min: float, lambda_max: float,
             step: float, betas: str, registry_json: bool,
             out_path: str | None) -> None:
    """Tabulate cp versus tip-speed ratio for several pitch angles."""
    if registry_json:
        click.echo(registry_to_json())
        return
    names = [get_parameterisation(m).name for m in models] or sorted(REGISTRY)
    beta_values = [float(b) for b in betas.split(",")]
    n = int(round((lambda_max - lambda_min) / step))
    lams = np.linspace(lambda_min, lambda_max, n + 1)

    lines = ["model,beta_deg,lambda,cp"]
    for name in names:
        p = REGISTRY[name]
        for beta in beta_values:
            cps = cp_general_array(lams, beta, p)
            lines.extend(f"{name},{beta:.6g},{l:.6g},{c:.6g}"
                         for l, c in zip(lams, cps))
    text = "\n".join(lines) + "\n"
    if out_path is None:
        click.echo(text, nl=False)
    else:
        Path(out_path).write_text(text)


@main.command()
@click.option("--input-dir", type=click.Path(exists=True, file_okay=False),
              required=True,
              help="Directory of paired curve CSVs and spec JSONs.")
@click.option("--ti-grid", default=",".join(f"{t:g}" for t in DEFAULT_TI_GRID),
              show_default=True, help="Comma-separated TI candidates.")
@click.option("--rho", type=float, default=1.225, show_default=True)
@click.option("--cp-model", "cp_model", default=DEFAULT_PARAMETERISATION,
              show_default=True)
@click.option("--out-json", type=click.Path(), default=None,
              help="Full report JSON (default: report.json in the input dir).")
@click.option("--out-csv", type=click.Path(), default=None,
              help="Summary CSV (default: summary.csv in the input dir).")
@_guarded
def validate(input_dir: str, ti_grid: str, rho: float, cp_model: str,
             out_json: str | None, out_csv: str | None) -> None:
    """Score measured curves against synthesized ones over a TI grid."""
    grid = [float(t) for t in ti_grid.split(",")]
    results = validate_directory(input_dir, grid, rho=rho, cp_model=cp_model)
    json_path = Path(out_json) if out_json else Path(input_dir) / "report.json"
    csv_path = Path(out_csv) if out_csv else Path(input_dir) / "summary.csv"
    with json_path.open("w") as fh:
        write_report_json(results, fh)
    with csv_path.open("w", newline="") as fh:
        write_summary_csv(results, fh)
    for r in results:
        click.echo(f"{r.name}: best_ti={r.best_ti:g} rmse={r.rmse_best:.4g}"
                   f"{' BETZ' if r.betz_violation else ''}"
                   f"{' SHAPE' if r.shape_anomaly else ''}")
    click.echo(f"wrote {json_path} and {csv_path}")


if __name__ == "__main__":
    main()
