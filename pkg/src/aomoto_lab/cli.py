"""Command-line front end.

One JSON config in, one JSON report out.  Rationals travel as "p/q"
strings in both directions so no float ever touches the exact pipeline;
floating results from the connection module are serialized as decimal
strings at a fixed display precision.  Reports embed the resolved
config, including every defaulted field, and are byte-stable for a
given config: identical inputs give identical bytes.

Exit codes: 0 success, 1 domain error (a computation refused its
input), 2 config error (the job never started).
"""

import argparse
import json
import random
import sys
from fractions import Fraction

import mpmath

from . import linalg
from .aomoto import (
    AomotoComplex, AomotoSpace, TopQuotient, chi_fixed_dim, shapovalov_image,
)
from .arrangement import (
    arrangement_from_json, arrangement_to_json, intersection_lattice,
    os_dimension,
)
from .errors import AomotoLabError, ConfigError
from .exactfield import (
    DEFAULT_PRECISION_BITS, RatFuncKappa, format_rational, parse_rational,
)
from .kz import (
    KzSystem, _check_branch, _mat_identity, _mat_norm, eigenvalues_2x2,
    flat_section_residual, hyp2f1, pochhammer_monodromy,
)
from .liealg import (
    RootData, TensorSpace, conformal_block_dim, invariant_functionals,
    invariants_dim,
)
from .logforms import (
    coordinate_functions, grundlegend_control, verify_grundlegend,
)
from .svmap import build_arrangement, egregium_check, omega_sv

COMMANDS = (
    "lattice", "aomoto", "image", "invariants", "sv", "egregium",
    "verify-forms", "kz",
)

DISPLAY_DIGITS = 30


# ---------------------------------------------------------------------------
# config plumbing


def _fail(field, message):
    raise ConfigError(f"config field '{field}': {message}")


def _parse_rat(value, field):
    if isinstance(value, bool):
        _fail(field, "expected a rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return parse_rational(value)
        except (ValueError, ZeroDivisionError):
            _fail(field, f"cannot parse rational {value!r}")
    _fail(field, f"expected an integer or 'p/q' string, got {type(value).__name__}")


def _parse_points(config, field="points"):
    raw = config.get(field)
    if not isinstance(raw, list) or not raw:
        _fail(field, "expected a nonempty list of rationals")
    return [_parse_rat(v, f"{field}[{i}]") for i, v in enumerate(raw)]


def _parse_weights(config):
    raw = config.get("weights")
    if not isinstance(raw, list) or not raw:
        _fail("weights", "expected a nonempty list")
    out = []
    for i, w in enumerate(raw):
        if isinstance(w, list):
            if len(w) != 1:
                _fail(f"weights[{i}]", "sl2 weights have one fundamental coordinate")
            w = w[0]
        if not isinstance(w, int) or isinstance(w, bool) or w < 0:
            _fail(f"weights[{i}]", "expected a nonnegative integer")
        out.append(w)
    return out


def _parse_algebra(config):
    data = config.get("algebra", {"type": "A", "rank": 1})
    if not isinstance(data, dict):
        _fail("algebra", "expected an object with 'type' and 'rank'")
    letter = data.get("type", "A")
    rank = data.get("rank", 1)
    if not isinstance(letter, str) or not isinstance(rank, int):
        _fail("algebra", "'type' must be a letter and 'rank' an integer")
    try:
        root = RootData(letter, rank)
    except ValueError as exc:
        _fail("algebra", str(exc))
    return root, {"type": letter, "rank": rank}


def _parse_kappa(config, required=True, default=None):
    if "kappa" not in config:
        if required and default is None:
            _fail("kappa", "required for this command")
        return default
    kappa = _parse_rat(config["kappa"], "kappa")
    if kappa == 0:
        _fail("kappa", "must be nonzero")
    return kappa


def _seed(config):
    seed = config.get("seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool):
        _fail("seed", "expected an integer")
    return seed


def _resolve_arrangement(config):
    """Arrangement from explicit JSON or from the algebra recipe."""
    if "arrangement" in config:
        try:
            arr = arrangement_from_json(config["arrangement"])
        except (KeyError, TypeError, ValueError) as exc:
            _fail("arrangement", str(exc))
        return arr, {"arrangement": arrangement_to_json(arr)}
    root, algebra_echo = _parse_algebra(config)
    weights = _parse_weights(config)
    points = _parse_points(config)
    kappa = _parse_kappa(config, required=False)
    arr = build_arrangement(root, weights, points, kappa=kappa)
    if "beta" in config:
        beta = config["beta"]
        if (not isinstance(beta, list) or len(beta) != arr.dimension
                or any(not isinstance(b, int) or isinstance(b, bool)
                       or not 0 <= b < root.rank for b in beta)):
            _fail("beta", "expected one simple-root index per variable")
        arr = type(arr)(arr.dimension, arr.forms, arr.weights,
                        coloring=tuple(beta))
    echo = {
        "algebra": algebra_echo,
        "weights": list(config["weights"]),
        "points": [format_rational(p) for p in points],
        "kappa": format_rational(kappa) if kappa is not None else None,
        "beta": list(config["beta"]) if "beta" in config else list(arr.coloring),
    }
    return arr, echo


def _fmt_scalar(x):
    if isinstance(x, RatFuncKappa):
        return x.to_json()
    return format_rational(x)


def _fmt_vector(vec):
    return [_fmt_scalar(x) for x in vec]


def _fmt_mpf(x):
    return mpmath.nstr(mpmath.mpf(x), DISPLAY_DIGITS)


def _fmt_complex(x):
    z = mpmath.mpc(x)
    return [_fmt_mpf(mpmath.re(z)), _fmt_mpf(mpmath.im(z))]


def _fmt_cmatrix(mat):
    return [[_fmt_complex(entry) for entry in row] for row in mat]


# ---------------------------------------------------------------------------
# command handlers


def _cmd_lattice(config):
    arr, echo = _resolve_arrangement(config)
    lattice = intersection_lattice(arr)
    counts = {}
    for codim in range(1, max(arr.dimension, 2) + 1):
        counts[f"codim{codim}"] = len(lattice.by_codim(codim))
    report = {
        "edge_counts": counts,
        "monomial_space_dims": {
            str(p): os_dimension(lattice, p) for p in range(arr.dimension + 1)
        },
        "hyperplanes": arr.size,
        "dimension": arr.dimension,
    }
    return report, echo


def _cmd_aomoto(config):
    arr, echo = _resolve_arrangement(config)
    lattice = intersection_lattice(arr)
    cx = AomotoComplex(arr, lattice)
    a_dims = {str(p): cx.space(p).dim for p in range(arr.dimension + 1)}
    h_dims = {str(p): cx.cohomology_dim(p) for p in range(arr.dimension + 1)}
    report = {"a_dims": a_dims, "h_dims": h_dims}
    if arr.coloring is not None:
        report["chi_fixed_top_dim"] = chi_fixed_dim(arr, lattice)
    return report, echo


def _cmd_image(config):
    arr, echo = _resolve_arrangement(config)
    use_chi = config.get("chi", False)
    if not isinstance(use_chi, bool):
        _fail("chi", "expected true or false")
    lattice = intersection_lattice(arr)
    rank, basis = shapovalov_image(arr, lattice, use_chi=use_chi)
    report = {
        "rank": rank,
        "basis": [_fmt_vector(cls.rep) for cls in basis],
        "chi": use_chi,
    }
    echo = dict(echo)
    echo["chi"] = use_chi
    return report, echo


def _cmd_invariants(config):
    root, algebra_echo = _parse_algebra(config)
    weights = _parse_weights(config)
    report = {"invariants_dim": invariants_dim(root, weights)}
    echo = {"algebra": algebra_echo, "weights": list(config["weights"])}
    levels = None
    if "levels" in config:
        levels = config["levels"]
        if (not isinstance(levels, list)
                or any(not isinstance(l, int) or isinstance(l, bool) for l in levels)):
            _fail("levels", "expected a list of integers")
    elif "level" in config:
        level = config["level"]
        if not isinstance(level, int) or isinstance(level, bool):
            _fail("level", "expected an integer")
        levels = [level]
    if levels is not None:
        points = _parse_points(config)
        dims = {
            str(level): conformal_block_dim(root, weights, level, points)
            for level in levels
        }
        echo["points"] = [format_rational(p) for p in points]
        echo["levels"] = list(levels)
        if "level" in config and "levels" not in config:
            report["conformal_block_dim"] = dims[str(config["level"])]
        report["conformal_block_dims"] = dims
    return report, echo


def _cmd_sv(config):
    root, algebra_echo = _parse_algebra(config)
    weights = _parse_weights(config)
    points = _parse_points(config)
    kappa = _parse_kappa(config)
    seed = _seed(config)
    space = TensorSpace(weights)
    arr = build_arrangement(root, weights, points, kappa=kappa)
    lattice = intersection_lattice(arr)
    top = AomotoSpace(arr, lattice, arr.dimension)
    quotient = TopQuotient(arr, lattice, space=top)
    psis = invariant_functionals(space)
    classes = []
    rows = []
    for psi in psis:
        cls = omega_sv(arr, lattice, space, psi, points, seed=seed,
                       aomoto_space=top)
        classes.append(cls)
        rows.append(quotient.coords(list(cls.rep)))
    report = {
        "functional_count": len(psis),
        "functionals": [_fmt_vector(psi) for psi in psis],
        "classes": [_fmt_vector(cls.rep) for cls in classes],
        "rank": linalg.rank(rows) if rows else 0,
        "top_cohomology_dim": quotient.dim,
    }
    echo = {
        "algebra": algebra_echo,
        "weights": list(config["weights"]),
        "points": [format_rational(p) for p in points],
        "kappa": format_rational(kappa),
        "seed": seed,
    }
    return report, echo


def _cmd_egregium(config):
    root, algebra_echo = _parse_algebra(config)
    weights = _parse_weights(config)
    points = _parse_points(config)
    kappa = _parse_kappa(config)
    seed = _seed(config)
    report = egregium_check(root, weights, points, kappa, seed=seed)
    echo = {
        "algebra": algebra_echo,
        "weights": list(config["weights"]),
        "points": [format_rational(p) for p in points],
        "kappa": format_rational(kappa),
        "seed": seed,
    }
    return report, echo


def _cmd_verify_forms(config):
    arr, echo = _resolve_arrangement(config)
    seed = _seed(config)
    num_points = config.get("num_points", 5)
    if not isinstance(num_points, int) or isinstance(num_points, bool) \
            or num_points < 1:
        _fail("num_points", "expected a positive integer")
    F_list = coordinate_functions(arr.dimension)
    results = {}
    for k in range(1, arr.dimension + 1):
        results[f"k={k}"] = verify_grundlegend(
            arr, F_list, k, num_points=num_points, seed=seed
        )
    control = grundlegend_control(arr, F_list, seed=seed)
    report = {
        "identity_holds": results,
        "all_hold": all(results.values()),
        "control_detects_perturbation": control,
        "num_points": num_points,
    }
    echo = dict(echo)
    echo["seed"] = seed
    echo["num_points"] = num_points
    return report, echo


def _kz_flat_samples(points, seed, count=5):
    rng = random.Random(seed)
    samples = []
    tries = 0
    while len(samples) < count:
        tries += 1
        if tries > 200:
            raise ConfigError("could not sample branch-safe points")
        z = [
            complex(
                float(p) + rng.randint(-30, 30) / 100.0,
                rng.randint(-45, 45) / 100.0,
            )
            for p in points
        ]
        try:
            _check_branch(z)
        except AomotoLabError:
            continue
        samples.append(z)
    return samples


def _cmd_kz(config):
    points = (
        _parse_points(config) if "points" in config
        else [Fraction(-1, 2), Fraction(0), Fraction(1, 2), Fraction(1)]
    )
    kappa = _parse_kappa(config, default=Fraction(3))
    precision_bits = config.get("precision_bits", DEFAULT_PRECISION_BITS)
    if not isinstance(precision_bits, int) or isinstance(precision_bits, bool) \
            or precision_bits < 64:
        _fail("precision_bits", "expected an integer >= 64")
    seed = _seed(config)
    tol_raw = config.get("tol")
    loop = config.get("loop", [2, 4])
    if (not isinstance(loop, list) or len(loop) != 2
            or any(not isinstance(i, int) or isinstance(i, bool) for i in loop)
            or not all(1 <= i <= len(points) for i in loop) or loop[0] == loop[1]):
        _fail("loop", "expected two distinct 1-based point indices")
    base = _parse_rat(config["base"], "base") if "base" in config else points[0]
    sys_obj = KzSystem(points, kappa, precision_bits=precision_bits)
    with mpmath.workprec(precision_bits + 64):
        tol = mpmath.mpf(tol_raw) if tol_raw is not None else None
        matrix = pochhammer_monodromy(
            sys_obj, loop[0] - 1, loop[1] - 1, base=complex(base), tol=tol
        )
        eigs = eigenvalues_2x2(matrix)
        ident = _mat_identity(sys_obj.d)
        distance = _mat_norm(
            [[matrix[r][c] - ident[r][c] for c in range(sys_obj.d)]
             for r in range(sys_obj.d)]
        )
        det = matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]
        pochhammer = {
            "matrix": _fmt_cmatrix(matrix),
            "eigenvalues": [_fmt_complex(e) for e in eigs],
            "unipotence_residual": _fmt_mpf(max(abs(e - 1) for e in eigs)),
            "identity_distance": _fmt_mpf(distance),
            "a21_abs": _fmt_mpf(abs(matrix[1][0])),
            "det_defect": _fmt_mpf(abs(det - 1)),
        }
        flat = None
        if sys_obj.n == 4 and sys_obj.d == 2:
            worst_phi = mpmath.mpf(0)
            worst_fv = mpmath.mpf(0)
            for z in _kz_flat_samples(points, seed):
                worst_phi = max(worst_phi, flat_section_residual(sys_obj, z))
                worst_fv = max(
                    worst_fv, flat_section_residual(sys_obj, z, section="fv")
                )
            flat = {
                "phi_max_residual": _fmt_mpf(worst_phi),
                "fv_max_residual": _fmt_mpf(worst_fv),
                "samples": 5,
            }
        h_args = (Fraction(1, 3), Fraction(-1, 3), Fraction(1, 3), Fraction(2))
        value = hyp2f1(*h_args, precision_bits=precision_bits)
        hyp = {
            "a": format_rational(h_args[0]),
            "b": format_rational(h_args[1]),
            "c": format_rational(h_args[2]),
            "u": format_rational(h_args[3]),
            "value": _fmt_complex(value),
            "abs": _fmt_mpf(abs(value)),
        }
    report = {"pochhammer": pochhammer, "hyp2f1": hyp}
    if flat is not None:
        report["flat_sections"] = flat
    echo = {
        "points": [format_rational(p) for p in points],
        "kappa": format_rational(kappa),
        "precision_bits": precision_bits,
        "seed": seed,
        "tol": tol_raw,
        "loop": list(loop),
        "base": format_rational(base),
    }
    return report, echo


_HANDLERS = {
    "lattice": _cmd_lattice,
    "aomoto": _cmd_aomoto,
    "image": _cmd_image,
    "invariants": _cmd_invariants,
    "sv": _cmd_sv,
    "egregium": _cmd_egregium,
    "verify-forms": _cmd_verify_forms,
    "kz": _cmd_kz,
}


def run(command, config):
    """Execute one command on a config dict and return the report dict."""
    if command not in _HANDLERS:
        raise ConfigError(f"unknown command {command!r}")
    if not isinstance(config, dict):
        raise ConfigError("config must be a JSON object")
    if "schema" in config and config["schema"] != "1":
        _fail("schema", f"unsupported schema {config['schema']!r}")
    payload, echo = _HANDLERS[command](config)
    echo = dict(echo)
    echo["schema"] = "1"
    report = {"schema": "1", "command": command, "config": echo}
    report.update(payload)
    return report


def _load_config(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}")


def _emit(report, out_path):
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="aomoto-lab",
        description="exact cohomology of weighted arrangements and the "
                    "four-point connection",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="path to a JSON config")
        p.add_argument("--out", help="write the report here instead of stdout")
        if name == "kz":
            p.add_argument("--kappa", help="override config kappa (p/q)")
            p.add_argument("--base", help="override loop base point (p/q)")
            p.add_argument("--loop", help="override loop pair, e.g. 2,4")
            p.add_argument("--tol", help="override transport tolerance")
            p.add_argument("--precision-bits", type=int,
                           help="override working precision")
    args = parser.parse_args(argv)
    try:
        config = _load_config(args.config)
        if args.command == "kz":
            if args.kappa is not None:
                config["kappa"] = args.kappa
            if args.base is not None:
                config["base"] = args.base
            if args.loop is not None:
                parts = args.loop.split(",")
                if len(parts) != 2:
                    raise ConfigError("--loop expects two indices like 2,4")
                try:
                    config["loop"] = [int(x) for x in parts]
                except ValueError:
                    raise ConfigError("--loop indices must be integers")
            if args.tol is not None:
                config["tol"] = args.tol
            if args.precision_bits is not None:
                config["precision_bits"] = args.precision_bits
        report = run(args.command, config)
    except ConfigError as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return 2
    except AomotoLabError as exc:
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        return 1
    _emit(report, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
