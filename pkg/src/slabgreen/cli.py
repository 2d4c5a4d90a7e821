"""Command-line front end: JSON config in, deterministic CSV out.

Subcommands
-----------
coefficients     slab amplitudes A, B, C, D, Y per frequency
verify-identity  quadrature check of the corrected identity on a source grid
decay-scan       emission rates swept over position, thickness or frequency
limit-study      diagnostics along a permittivity path approaching vacuum
tensor3d         free-space dyadic tensor components and the vacuum rate

CSV goes to --out (default stdout) with a fixed header, 17-significant-digit
floats and '\n' line endings, so identical configs give byte-identical
files. Human-readable summaries go to stderr. Exit codes: 0 success, 1
configuration or validation error, 2 numerical tolerance violation, 3 output
I/O error.
"""

import argparse
import json
import sys
from dataclasses import dataclass

from .dielectric import Constant, Drude, DrudeLorentz, Tabulated
from .emission import EmissionParams, decay_report, limit_study
from .errors import ConfigError, DomainError, QuadratureError
from .identity import boundary_term_f, identity_report
from .slab_green import SlabGeometry, green, make_context
from .vacuum3d import green_tensor_vacuum, im_green_coincident, vacuum_decay_3d

_CONSTANTS = {
    "natural": {"hbar": 1.0, "epsilon0": 1.0, "c": 1.0},
    "si": {"hbar": 1.054571817e-34, "epsilon0": 8.8541878128e-12, "c": 299792458.0},
}

_DEFAULT_TOL = 1e-8
# Default permittivity path for limit-study: eps = 1 + i 10^-m.
_DEFAULT_LIMIT_PATH = [complex(1.0, 10.0**-m) for m in range(1, 9)]


@dataclass(frozen=True)
class SweepSpec:
    start: float
    stop: float
    count: int
    spacing: str = "linear"

    def values(self):
        if self.count == 1:
            return [self.start]
        if self.spacing == "log":
            ratio = self.stop / self.start
            return [self.start * ratio ** (i / (self.count - 1)) for i in range(self.count)]
        step = (self.stop - self.start) / (self.count - 1)
        return [self.start + i * step for i in range(self.count)]


@dataclass(frozen=True)
class RunConfig:
    units: str
    slab_half_length: object
    dielectric: object
    omega: object
    source: object
    dipole_moment: float
    surface_unit: float
    quad_tol: float
    limit_path: list
    separations: list
    output_path: str | None


def _check_keys(node, allowed, path):
    unknown = sorted(set(node) - set(allowed))
    if unknown:
        raise ConfigError(f"{path}.{unknown[0]}" if path else unknown[0], "unknown key")


def _number(node, path):
    if isinstance(node, bool) or not isinstance(node, (int, float)):
        raise ConfigError(path, "expected a number")
    return float(node)


def _complex_pair(node, path):
    if isinstance(node, (int, float)) and not isinstance(node, bool):
        return complex(float(node), 0.0)
    if isinstance(node, list) and len(node) == 2:
        return complex(_number(node[0], f"{path}[0]"), _number(node[1], f"{path}[1]"))
    raise ConfigError(path, "expected a number or a [re, im] pair")


def _scalar_or_sweep(node, path):
    if isinstance(node, dict):
        _check_keys(node, {"start", "stop", "count", "spacing"}, path)
        for key in ("start", "stop", "count"):
            if key not in node:
                raise ConfigError(f"{path}.{key}", "required for a sweep")
        start = _number(node["start"], f"{path}.start")
        stop = _number(node["stop"], f"{path}.stop")
        count = node["count"]
        if isinstance(count, bool) or not isinstance(count, int) or count < 1:
            raise ConfigError(f"{path}.count", "expected an integer >= 1")
        spacing = node.get("spacing", "linear")
        if spacing not in ("linear", "log"):
            raise ConfigError(f"{path}.spacing", "expected 'linear' or 'log'")
        if count > 1 and not start < stop:
            raise ConfigError(f"{path}.start", "start must be < stop")
        if spacing == "log" and (start <= 0.0 or stop <= 0.0):
            raise ConfigError(f"{path}.spacing", "log spacing needs positive endpoints")
        return SweepSpec(start=start, stop=stop, count=count, spacing=spacing)
    return _number(node, path)


def _parse_dielectric(node, path):
    if not isinstance(node, dict):
        raise ConfigError(path, "expected an object with a 'type' key")
    kind = node.get("type")
    try:
        if kind == "constant":
            _check_keys(node, {"type", "epsilon"}, path)
            if "epsilon" not in node:
                raise ConfigError(f"{path}.epsilon", "required")
            return Constant(_complex_pair(node["epsilon"], f"{path}.epsilon"))
        if kind == "drude":
            _check_keys(node, {"type", "plasma_frequency", "damping"}, path)
            if "plasma_frequency" not in node:
                raise ConfigError(f"{path}.plasma_frequency", "required")
            return Drude(
                plasma_frequency=_number(node["plasma_frequency"], f"{path}.plasma_frequency"),
                damping=_number(node.get("damping", 0.0), f"{path}.damping"),
            )
        if kind == "drude_lorentz":
            _check_keys(node, {"type", "terms"}, path)
            terms = node.get("terms")
            if not isinstance(terms, list) or not terms:
                raise ConfigError(f"{path}.terms", "expected a non-empty list of [strength, resonance, damping]")
            parsed = []
            for i, term in enumerate(terms):
                if not isinstance(term, list) or len(term) != 3:
                    raise ConfigError(f"{path}.terms[{i}]", "expected [strength, resonance, damping]")
                parsed.append(tuple(_number(v, f"{path}.terms[{i}][{j}]") for j, v in enumerate(term)))
            return DrudeLorentz(terms=tuple(parsed))
        if kind == "tabulated":
            _check_keys(node, {"type", "samples"}, path)
            samples = node.get("samples")
            if not isinstance(samples, list):
                raise ConfigError(f"{path}.samples", "expected a list of [omega, re, im]")
            omegas, values = [], []
            for i, sample in enumerate(samples):
                if not isinstance(sample, list) or len(sample) != 3:
                    raise ConfigError(f"{path}.samples[{i}]", "expected [omega, re, im]")
                omegas.append(_number(sample[0], f"{path}.samples[{i}][0]"))
                values.append(
                    complex(
                        _number(sample[1], f"{path}.samples[{i}][1]"),
                        _number(sample[2], f"{path}.samples[{i}][2]"),
                    )
                )
            return Tabulated(omegas=tuple(omegas), values=tuple(values))
    except DomainError as exc:
        raise ConfigError(path, str(exc)) from exc
    raise ConfigError(f"{path}.type", "expected one of constant, drude, drude_lorentz, tabulated")


def parse_config(path: str) -> RunConfig:
    """Load and validate a JSON run configuration; unknown keys are errors."""
    try:
        with open(path) as handle:
            raw = json.load(handle)
    except OSError as exc:
        raise ConfigError(None, f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(None, f"invalid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(None, "top level must be an object")
    _check_keys(
        raw,
        {"units", "slab", "dielectric", "omega", "source", "emission", "tolerances",
         "limit_path", "separations", "output"},
        "",
    )

    units = raw.get("units", "natural")
    if units not in _CONSTANTS:
        raise ConfigError("units", "expected 'natural' or 'si'")

    half_length = None
    if "slab" in raw:
        slab = raw["slab"]
        if not isinstance(slab, dict):
            raise ConfigError("slab", "expected an object")
        _check_keys(slab, {"half_length"}, "slab")
        if "half_length" not in slab:
            raise ConfigError("slab.half_length", "required")
        half_length = _scalar_or_sweep(slab["half_length"], "slab.half_length")

    dielectric = _parse_dielectric(raw["dielectric"], "dielectric") if "dielectric" in raw else None
    omega = _scalar_or_sweep(raw["omega"], "omega") if "omega" in raw else None
    source = _scalar_or_sweep(raw["source"], "source") if "source" in raw else None

    dipole, surface = 1.0, 1.0
    if "emission" in raw:
        emission = raw["emission"]
        if not isinstance(emission, dict):
            raise ConfigError("emission", "expected an object")
        _check_keys(emission, {"dipole_moment", "surface_unit"}, "emission")
        dipole = _number(emission.get("dipole_moment", 1.0), "emission.dipole_moment")
        surface = _number(emission.get("surface_unit", 1.0), "emission.surface_unit")

    quad_tol = _DEFAULT_TOL
    if "tolerances" in raw:
        tolerances = raw["tolerances"]
        if not isinstance(tolerances, dict):
            raise ConfigError("tolerances", "expected an object")
        _check_keys(tolerances, {"quadrature"}, "tolerances")
        quad_tol = _number(tolerances.get("quadrature", _DEFAULT_TOL), "tolerances.quadrature")
        if not quad_tol > 0.0:
            raise ConfigError("tolerances.quadrature", "must be positive")

    limit_path = None
    if "limit_path" in raw:
        node = raw["limit_path"]
        if not isinstance(node, list) or not node:
            raise ConfigError("limit_path", "expected a non-empty list of [re, im] pairs")
        limit_path = [_complex_pair(item, f"limit_path[{i}]") for i, item in enumerate(node)]

    separations = None
    if "separations" in raw:
        node = raw["separations"]
        if not isinstance(node, list) or not node:
            raise ConfigError("separations", "expected a non-empty list of [x, y, z] vectors")
        separations = []
        for i, vec in enumerate(node):
            if not isinstance(vec, list) or len(vec) != 3:
                raise ConfigError(f"separations[{i}]", "expected [x, y, z]")
            point = tuple(_number(v, f"separations[{i}][{j}]") for j, v in enumerate(vec))
            if point == (0.0, 0.0, 0.0):
                raise ConfigError(f"separations[{i}]", "coincident points: the full tensor is singular at r = 0")
            separations.append(point)

    output_path = None
    if "output" in raw:
        output = raw["output"]
        if not isinstance(output, dict):
            raise ConfigError("output", "expected an object")
        _check_keys(output, {"path", "format"}, "output")
        if output.get("format", "csv") != "csv":
            raise ConfigError("output.format", "only 'csv' is supported")
        if "path" in output:
            if not isinstance(output["path"], str):
                raise ConfigError("output.path", "expected a string")
            output_path = output["path"]

    return RunConfig(
        units=units,
        slab_half_length=half_length,
        dielectric=dielectric,
        omega=omega,
        source=source,
        dipole_moment=dipole,
        surface_unit=surface,
        quad_tol=quad_tol,
        limit_path=limit_path,
        separations=separations,
        output_path=output_path,
    )


def _fmt(value) -> str:
    """Fixed 17-significant-digit float formatting; empty string for missing."""
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return format(float(value), ".17g")


def _sanitize(message: str) -> str:
    # Error messages land in CSV cells; keep them comma-free.
    return message.replace(",", ";")


def _require(value, path):
    if value is None:
        raise ConfigError(path, "required for this subcommand")
    return value


def _scalar(value, path):
    value = _require(value, path)
    if isinstance(value, SweepSpec):
        raise ConfigError(path, "a sweep is not allowed here; give a single number")
    return value


def _values(value, path):
    value = _require(value, path)
    return value.values() if isinstance(value, SweepSpec) else [value]


def _tolerance(config, args):
    return args.tol if args.tol is not None else config.quad_tol


def _emission_params(config, consts, omega):
    return EmissionParams(
        omega0=omega,
        dipole_moment=config.dipole_moment,
        hbar=consts["hbar"],
        epsilon0=consts["epsilon0"],
        c=consts["c"],
        surface_unit=config.surface_unit,
    )


def _cmd_coefficients(config, consts, args):
    """Slab amplitudes A, B, C, D, Y per frequency."""
    geometry = SlabGeometry(_scalar(config.slab_half_length, "slab.half_length"))
    model = _require(config.dielectric, "dielectric")
    header = [
        "omega", "k", "n_re", "n_im",
        "a_re", "a_im", "b_re", "b_im", "c_re", "c_im", "d_re", "d_im", "y_re", "y_im",
        "abs_a_sq", "abs_d_sq", "unitarity_defect",
    ]
    rows = []
    worst = 0.0
    for omega in _values(config.omega, "omega"):
        ctx = make_context(geometry, model, omega, c=consts["c"])
        co = ctx.coefficients
        abs_a_sq = abs(co.A) ** 2
        abs_d_sq = abs(co.D) ** 2
        defect = 1.0 - abs_a_sq - abs_d_sq
        worst = max(worst, abs(defect))
        rows.append([
            omega, ctx.k, ctx.n.real, ctx.n.imag,
            co.A.real, co.A.imag, co.B.real, co.B.imag, co.C.real, co.C.imag,
            co.D.real, co.D.imag, co.Y.real, co.Y.imag,
            abs_a_sq, abs_d_sq, defect,
        ])
    summary = [f"coefficients: {len(rows)} rows, max |1 - |A|^2 - |D|^2| = {worst:.6e}"]
    return header, rows, summary, 0


def _cmd_verify_identity(config, consts, args):
    """Check the corrected identity on an (x_a, x_b) grid."""
    geometry = SlabGeometry(_scalar(config.slab_half_length, "slab.half_length"))
    model = _require(config.dielectric, "dielectric")
    sources = _values(config.source, "source")
    tol = _tolerance(config, args)
    header = [
        "omega", "x_a", "x_b", "lhs_re", "lhs_im", "im_g", "f_re", "f_im",
        "residual_corrected_re", "residual_corrected_im",
        "residual_uncorrected_re", "residual_uncorrected_im",
        "quadrature_error", "error",
    ]
    rows = []
    status = 0
    worst = 0.0
    for omega in _values(config.omega, "omega"):
        ctx = make_context(geometry, model, omega, c=consts["c"])
        for x_a in sources:
            for x_b in sources:
                error = ""
                try:
                    rep = identity_report(x_a, x_b, ctx, tol=tol)
                except QuadratureError as exc:
                    status = 2
                    error = _sanitize(str(exc))
                    lhs, quad_err = exc.best_estimate, exc.error_estimate
                    im_g = green(x_a, x_b, ctx).value.imag
                    f = boundary_term_f(x_a, x_b, ctx)
                    rep = None
                else:
                    lhs, quad_err = rep.lhs, rep.quadrature_estimate_error
                    im_g, f = rep.im_g, rep.f
                res_corr = lhs - im_g - f
                res_unc = lhs - im_g
                worst = max(worst, abs(res_corr))
                if rep is not None and abs(res_corr) > tol:
                    status = 2
                rows.append([
                    omega, x_a, x_b, lhs.real, lhs.imag, im_g, f.real, f.imag,
                    res_corr.real, res_corr.imag, res_unc.real, res_unc.imag,
                    quad_err, error,
                ])
    summary = [
        f"verify-identity: {len(rows)} rows, max |lhs - Im G - F| = {worst:.6e} (tol {tol:.1e})",
    ]
    return header, rows, summary, status


def _sweep_axis(config):
    axes = {
        "position": config.source,
        "thickness": config.slab_half_length,
        "frequency": config.omega,
    }
    swept = [name for name, value in axes.items() if isinstance(value, SweepSpec)]
    if len(swept) != 1:
        raise ConfigError(
            None,
            "decay-scan needs exactly one sweep among source, slab.half_length and omega; "
            f"found {len(swept)}",
        )
    return swept[0]


def _cmd_decay_scan(config, consts, args):
    """Emission rates over a position, thickness or frequency sweep."""
    axis = _sweep_axis(config)
    tol = _tolerance(config, args)
    header = ["omega", "half_length", "x_s", "gamma", "gamma_uncorrected", "gamma_vac_1d",
              "normalized_corrected", "normalized_uncorrected"]
    if args.oracle:
        header += ["gamma_quadrature", "quadrature_error_scaled"]
    header.append("error")

    if axis == "position":
        omegas = [_scalar(config.omega, "omega")]
        lengths = [_scalar(config.slab_half_length, "slab.half_length")]
        positions = _values(config.source, "source")
    elif axis == "thickness":
        omegas = [_scalar(config.omega, "omega")]
        lengths = _values(config.slab_half_length, "slab.half_length")
        positions = [_scalar(config.source, "source")]
    else:
        omegas = _values(config.omega, "omega")
        lengths = [_scalar(config.slab_half_length, "slab.half_length")]
        positions = [_scalar(config.source, "source")]

    model = _require(config.dielectric, "dielectric")
    rows = []
    status = 0
    failures = 0
    for omega in omegas:
        for half_length in lengths:
            for x_s in positions:
                base = [omega, half_length, x_s]
                try:
                    geometry = SlabGeometry(half_length)
                    ctx = make_context(geometry, model, omega, c=consts["c"])
                    params = _emission_params(config, consts, omega)
                    oracle_tol = tol if args.oracle else None
                    rep = decay_report(params, ctx, x_s, oracle_tol=oracle_tol)
                except (DomainError, QuadratureError) as exc:
                    failures += 1
                    status = 2
                    pad = 7 if args.oracle else 5
                    rows.append(base + [None] * pad + [_sanitize(str(exc))])
                    continue
                cells = base + [
                    rep.gamma_corrected, rep.gamma_uncorrected, rep.gamma_vac_1d,
                    rep.normalized_corrected, rep.normalized_uncorrected,
                ]
                if args.oracle:
                    scaled = abs(rep.gamma_quadrature - rep.gamma_corrected) / rep.gamma_vac_1d
                    cells += [rep.gamma_quadrature, scaled]
                cells.append("")
                rows.append(cells)
    summary = [f"decay-scan ({axis}): {len(rows)} rows, {failures} failed"]
    return header, rows, summary, status


def _cmd_limit_study(config, consts, args):
    """Diagnostics along a permittivity path approaching vacuum."""
    geometry = SlabGeometry(_scalar(config.slab_half_length, "slab.half_length"))
    omega = _scalar(config.omega, "omega")
    params = _emission_params(config, consts, omega)
    x_source = None
    if config.source is not None:
        x_source = _scalar(config.source, "source")
    path = config.limit_path if config.limit_path is not None else list(_DEFAULT_LIMIT_PATH)
    rows_data = limit_study(params, geometry, path, x_source=x_source)
    header = ["eps_re", "eps_im", "gamma", "gamma_uncorrected", "f_plus_im_g0",
              "abs_a_sq", "abs_d_sq", "error"]
    rows = []
    status = 0
    for row in rows_data:
        if row.error is not None:
            status = 2
            rows.append([row.epsilon.real, row.epsilon.imag] + [None] * 5 + [_sanitize(row.error)])
        else:
            rows.append([
                row.epsilon.real, row.epsilon.imag, row.gamma, row.gamma_uncorrected,
                row.f_plus_im_g0, row.abs_a_sq, row.abs_d_sq, "",
            ])
    good = [row for row in rows_data if row.error is None]
    summary = [f"limit-study: {len(rows)} rows, {len(rows) - len(good)} failed"]
    if good:
        last = good[-1]
        summary.append(
            f"limit-study: at eps = {last.epsilon}, gamma/gamma_vac = "
            f"{last.gamma / params.gamma_vacuum_1d:.3e}, F + Im G0 = {last.f_plus_im_g0:.3e}"
        )
    return header, rows, summary, status


def _cmd_tensor3d(config, consts, args):
    """Free-space dyadic tensor components and the vacuum rate."""
    omega = _scalar(config.omega, "omega")
    separations = _require(config.separations, "separations")
    params = _emission_params(config, consts, omega)
    gamma0 = vacuum_decay_3d(params)
    im_diag = im_green_coincident(omega, c=consts["c"])[0, 0]
    header = ["r_x", "r_y", "r_z"]
    for i in "xyz":
        for j in "xyz":
            header += [f"g_{i}{j}_re", f"g_{i}{j}_im"]
    header += ["im_g0_coincident_diag", "gamma0"]
    rows = []
    origin = (0.0, 0.0, 0.0)
    for sep in separations:
        tensor = green_tensor_vacuum(omega, sep, origin, c=consts["c"]).components
        cells = list(sep)
        for i in range(3):
            for j in range(3):
                cells += [tensor[i, j].real, tensor[i, j].imag]
        cells += [im_diag, gamma0]
        rows.append(cells)
    summary = [
        f"tensor3d: {len(rows)} rows at omega = {omega}",
        f"tensor3d: gamma0 = {gamma0:.12e}, Im G0 coincident diagonal = {im_diag:.12e}",
    ]
    return header, rows, summary, 0


_COMMANDS = {
    "coefficients": _cmd_coefficients,
    "verify-identity": _cmd_verify_identity,
    "decay-scan": _cmd_decay_scan,
    "limit-study": _cmd_limit_study,
    "tensor3d": _cmd_tensor3d,
}


def _write_csv(path, header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(cell) for cell in row))
    text = "\n".join(lines) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as handle:
            handle.write(text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="path to the JSON run configuration")
    common.add_argument("--out", default=None, help="CSV output path (default: stdout)")
    common.add_argument("--tol", type=float, default=None,
                        help="quadrature tolerance, overrides the config (default 1e-8)")
    common.add_argument("--oracle", action="store_true",
                        help="add quadrature cross-check columns where applicable (decay-scan)")
    common.add_argument("--units", choices=["natural", "si"], default=None,
                        help="unit system, overrides the config (default natural)")
    parser = argparse.ArgumentParser(prog="slabgreen",
                                     description="Slab Green function verification toolkit")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, func in _COMMANDS.items():
        sub.add_parser(name, parents=[common], help=func.__doc__)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = parse_config(args.config)
        if args.tol is not None and not args.tol > 0.0:
            raise ConfigError(None, "--tol must be positive")
        units = args.units if args.units is not None else config.units
        consts = _CONSTANTS[units]
        header, rows, summary, status = _COMMANDS[args.command](config, consts, args)
        _write_csv(args.out if args.out is not None else config.output_path, header, rows)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except QuadratureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    for line in summary:
        print(line, file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
