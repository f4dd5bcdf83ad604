"""YAML run-configuration parsing and schema validation.

Every command takes one human-editable YAML file (nested key-value
sections, documented in docs/config.md).  Validation is strict: missing
required keys, wrong types, and unknown keys are all rejected with the
dotted path of the offending field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

import numpy as np
import yaml

from .ensemble import EnsembleSpec, SpeciesSpec
from .errors import ConfigError
from .evolution import EvolutionKind, EvolutionSpec
from .model import NcVariant, NucleusParams


def load_yaml(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = yaml.safe_load(fh)
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"YAML parse error in {path}: {exc}") from exc
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError("top level of the config must be a mapping", path="")
    return data


_REQUIRED = object()


class _Section:
    """A dict view that tracks consumed keys and reports dotted paths."""

    def __init__(self, data: dict, path: str):
        if not isinstance(data, dict):
            raise ConfigError("expected a mapping", path=path or "<top>")
        self.data = dict(data)
        self.path = path

    def _key_path(self, key: str) -> str:
        return f"{self.path}.{key}" if self.path else key

    def take(self, key: str, kind: type, default: Any = _REQUIRED, choices=None):
        if key not in self.data:
            if default is _REQUIRED:
                raise ConfigError("required key is missing", path=self._key_path(key))
            return default
        value = self.data.pop(key)
        if kind is float:
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ConfigError(f"expected a number, got {value!r}", path=self._key_path(key))
            value = float(value)
            if not math.isfinite(value):
                raise ConfigError("value must be finite", path=self._key_path(key))
        elif kind is int:
            if isinstance(value, bool) or not isinstance(value, int):
                raise ConfigError(f"expected an integer, got {value!r}", path=self._key_path(key))
        elif kind is bool:
            if not isinstance(value, bool):
                raise ConfigError(f"expected a boolean, got {value!r}", path=self._key_path(key))
        elif kind is str:
            if not isinstance(value, str):
                raise ConfigError(f"expected a string, got {value!r}", path=self._key_path(key))
        if choices is not None and value not in choices:
            raise ConfigError(
                f"expected one of {sorted(choices)}, got {value!r}", path=self._key_path(key)
            )
        return value

    def section(self, key: str, required: bool = True) -> "_Section | None":
        if key not in self.data:
            if required:
                raise ConfigError("required section is missing", path=self._key_path(key))
            return None
        return _Section(self.data.pop(key), self._key_path(key))

    def sequence(self, key: str, required: bool = True) -> "list[_Section] | None":
        if key not in self.data:
            if required:
                raise ConfigError("required list is missing", path=self._key_path(key))
            return None
        value = self.data.pop(key)
        if not isinstance(value, list) or not value:
            raise ConfigError("expected a nonempty list", path=self._key_path(key))
        return [_Section(item, f"{self._key_path(key)}[{i}]") for i, item in enumerate(value)]

    def finish(self) -> None:
        if self.data:
            key = sorted(self.data)[0]
            raise ConfigError("unknown key", path=self._key_path(key))


def _parse_nucleus(sec: _Section, warn: bool = True) -> NucleusParams:
    j = sec.take("j", float)
    nu = sec.take("nu_larmor_mhz", float)
    a = sec.take("a_mhz", float)
    a_nc = sec.take("a_nc_mhz", float, default=0.0)
    delta_q = sec.take("delta_q_mhz", float, default=None)
    omega_q = sec.take("omega_q_mhz", float, default=None)
    theta = sec.take("theta_rad", float, default=0.0)
    species = sec.take("species", str, default="")
    sec.finish()
    try:
        return NucleusParams(
            j=j,
            nu_larmor=nu,
            a=a,
            a_nc=a_nc,
            delta_q=delta_q,
            omega_q=omega_q,
            theta=theta,
            species=species,
            warn_on_hierarchy=warn,
        )
    except ValueError as exc:
        raise ConfigError(str(exc), path=sec.path) from exc


def _parse_evolution(sec: _Section | None, default_duration: float = 1.0) -> EvolutionSpec:
    if sec is None:
        return EvolutionSpec(kind=EvolutionKind.FREE, duration=default_duration)
    kind = sec.take("kind", str, default="free", choices={"free", "cpmg"})
    n_iter = sec.take("n_iterations", int, default=1)
    duration = sec.take("duration_us", float, default=default_duration)
    sec.finish()
    try:
        return EvolutionSpec(
            kind=EvolutionKind(kind), duration=duration, n_iterations=n_iter
        )
    except ValueError as exc:
        raise ConfigError(str(exc), path=sec.path) from exc


def _parse_time_grid(sec: _Section) -> np.ndarray:
    start = sec.take("start_us", float)
    stop = sec.take("stop_us", float)
    points = sec.take("points", int)
    spacing = sec.take("spacing", str, default="linear", choices={"linear", "log"})
    sec.finish()
    if points < 1:
        raise ConfigError("points must be >= 1", path=sec.path + ".points")
    if stop < start:
        raise ConfigError("stop_us must be >= start_us", path=sec.path + ".stop_us")
    if spacing == "log":
        if start <= 0:
            raise ConfigError("log spacing needs start_us > 0", path=sec.path + ".start_us")
        return np.geomspace(start, stop, points)
    return np.linspace(start, stop, points)


def _parse_axis(sec: _Section, default_name: str) -> tuple[str, np.ndarray]:
    name = sec.take("name", str, default=default_name)
    start = sec.take("start", float)
    stop = sec.take("stop", float)
    points = sec.take("points", int)
    sec.finish()
    if points < 1 or stop <= start:
        raise ConfigError("axis needs stop > start and points >= 1", path=sec.path)
    return name, np.linspace(start, stop, points)


def _parse_template(sec: _Section) -> NucleusParams:
    j = sec.take("j", float, default=1.5)
    nu = sec.take("nu_larmor_mhz", float)
    a_sign = sec.take("a_sign", int, default=-1, choices={-1, 1})
    a_nc = sec.take("a_nc_mhz", float, default=0.0)
    theta = sec.take("theta_rad", float, default=0.0)
    sec.finish()
    return NucleusParams(
        j=j,
        nu_larmor=nu,
        a=a_sign * nu,  # placeholder magnitude; sweeps rescale per cell
        a_nc=a_nc,
        delta_q=0.0,
        theta=theta,
        warn_on_hierarchy=False,
    )


def _parse_variant(top: _Section) -> NcVariant:
    name = top.take("variant", str, default="quadrupolar", choices={"quadrupolar", "transverse_x"})
    return NcVariant(name)


def _parse_time_mode(sec: _Section):
    from .analysis import TimeMode

    mode = sec.take("mode", str, choices={"fixed", "max"})
    t = sec.take("t_us", float)
    steps = sec.take("steps", int, default=512)
    sec.finish()
    try:
        return TimeMode(kind=mode, t=t, steps=steps)
    except ValueError as exc:
        raise ConfigError(str(exc), path=sec.path) from exc


def _parse_ensemble_spec(sec: _Section, seed: int) -> EnsembleSpec:
    species_secs = sec.sequence("species", required=False)
    if species_secs is None:
        species = (SpeciesSpec("71Ga", 1.5, 12.98, 1.0),)
    else:
        species = []
        for ssec in species_secs:
            species.append(
                SpeciesSpec(
                    label=ssec.take("label", str),
                    j=ssec.take("j", float),
                    nu_larmor_per_tesla=ssec.take("nu_larmor_mhz_per_t", float),
                    fraction=ssec.take("fraction", float),
                )
            )
            ssec.finish()
        species = tuple(species)
    kwargs = dict(
        radius_max=sec.take("radius_max_nm", float, default=25.0),
        dr=sec.take("dr_nm", float, default=0.056),
        sigma=sec.take("sigma_nm", float, default=7.0),
        a_scale=sec.take("a_scale_mhz", float, default=-0.88),
        wq_scale=sec.take("wq_scale_mhz", float, default=0.030),
        theta=sec.take("theta_rad", float, default=math.pi / 3),
        a_nc=sec.take("a_nc_mhz", float, default=0.0051),
        b_field=sec.take("b_field_t", float, default=1.0),
        n_target=sec.take("n_target", int, default=80247),
    )
    sec.finish()
    try:
        return EnsembleSpec(species_mix=species, seed=seed, **kwargs)
    except ValueError as exc:
        raise ConfigError(str(exc), path=sec.path) from exc


@dataclass
class CommonOptions:
    seed: int
    threads: int
    out_dir: str
    fmt: str


def parse_common(top: _Section, overrides) -> tuple[int, int]:
    seed = top.take("seed", int, default=0)
    threads = top.take("threads", int, default=0)
    if overrides.seed is not None:
        seed = overrides.seed
    if overrides.threads is not None:
        threads = overrides.threads
    return seed, threads
