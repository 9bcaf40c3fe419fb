"""
Subcommands. Each takes validated Settings and an OutputWriter, writes its
files and returns a JSON-ready summary.
"""

import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from .. import OUTPUT_DIR, TOOL_NAME, __version__
from ..ensemble import (
    EntryLaw,
    MaModel,
    MatrixShape,
    generate_X,
    identity_B1,
    ma1_model,
    make_J,
    make_toeplitz_B1,
    product_Y,
)
from ..lsd import LsdModel, lsd_cdf, sup_distance
from ..master import MasterOptions, limit_b, solve_master_path
from ..spectra import (
    SMIN_THRESHOLDS,
    SpectralSample,
    ecdf_at,
    eigenvalues,
    linearization_check,
    radial_ecdf,
    smin_experiment,
    smin_tail_curve,
    support_violations,
    zero_eigen_count,
)
from ..utils.errors import ConfigError, ConvergenceError
from ..utils.output import OutputWriter, read_matrix_csv, write_matrix_csv
from ..utils.seeding import STREAM_REFERENCE, run_trials
from ..utils.settings import Settings, parse_alternative, parse_complex
from ..whiteness import TestSpec, roc, run_test

logger = logging.getLogger(__name__)

LINEARIZATION_TRIALS = 100
# Relative slack of the linearization inequality ||M^-1|| <= ||H^-1||.
LINEARIZATION_RTOL = 1e-8


def make_writer(settings: Settings) -> OutputWriter:
    output_dir = Path(settings.get("output_dir") or OUTPUT_DIR)
    return OutputWriter(
        output_dir, settings.command, settings.config_hash(), settings["seed"], tool=TOOL_NAME, version=__version__
    )


def resolve_shape(settings: Settings) -> MatrixShape:
    """
    (N, n) of the run. ``gamma``, when set, keeps n from ``shape`` and sets
    N = round(gamma n).
    """
    shape = settings.get("shape") or [500, 1000]
    gamma = settings.get("gamma")
    if gamma is None:
        return MatrixShape(int(shape[0]), int(shape[1]))
    n = int(shape[1])
    N = int(round(gamma * n))
    if N < 1 or abs(N / n - gamma) > 1e-9 * max(1.0, gamma):
        raise ConfigError(f"gamma={gamma} is not a ratio N/n with n={n}; pass --shape instead")
    return MatrixShape(N, n)


def entry_law(settings: Settings, n: int) -> EntryLaw:
    return EntryLaw(settings["law"], n)


def sample_spectrum(shape: MatrixShape, law: EntryLaw, seed: int) -> SpectralSample:
    """Eigenvalues of X J X* for one draw of X."""
    X = generate_X(shape, law, seed=seed)
    return eigenvalues(product_Y(X, make_J(shape.n)), N=shape.N, n=shape.n, seed=seed)


def alternative_model(shape: MatrixShape, text: str) -> MaModel:
    """MA(1) alternative from ``identity:ALPHA2`` or ``toeplitz:TRACE``."""
    kind, value = parse_alternative(text)
    B1 = identity_B1(shape.N, value) if kind == "identity" else make_toeplitz_B1(shape.N, value)
    return ma1_model(shape.N, shape.n, B1)


def cmd_scatter(settings: Settings, writer: OutputWriter) -> Dict[str, Any]:
    """Eigenvalue scatter of X J X* and the support radii for overlays."""
    shape = resolve_shape(settings)
    law = entry_law(settings, shape.n)
    seed = settings["seed"]
    X = generate_X(shape, law, seed=seed)
    spectrum = eigenvalues(product_Y(X, make_J(shape.n)), N=shape.N, n=shape.n, seed=seed)
    model = LsdModel(shape.gamma_float)

    writer.write_csv("eigenvalues", ["re", "im"], ((z.real, z.imag) for z in spectrum.points))
    in_hole, outside = support_violations(spectrum, model.r_inner, model.r_outer)
    summary = {
        "shape": [shape.N, shape.n],
        "support": model.support(),
        "count": len(spectrum),
        "zero_count": int(np.count_nonzero(spectrum.radii < 1e-8)),
        "max_modulus": float(spectrum.radii.max()),
        "violations": {"in_hole": in_hole, "outside": outside},
    }
    if settings.get("save_matrix"):
        path = write_matrix_csv(writer.path_for("matrix", "csv"), X)
        writer.written.append(path)
    writer.write_json("support", summary)
    return summary


def cmd_cdf(settings: Settings, writer: OutputWriter) -> Dict[str, Any]:
    """Radial distribution function, theory against one realization."""
    shape = resolve_shape(settings)
    law = entry_law(settings, shape.n)
    model = LsdModel(shape.gamma_float)
    spectrum = sample_spectrum(shape, law, settings["seed"])
    R = radial_ecdf(spectrum)

    grid = np.linspace(0.0, 1.1 * model.r_outer, settings["grid_points"])
    theory = np.asarray(lsd_cdf(grid, model), dtype=float)
    empirical = np.asarray(ecdf_at(R, grid), dtype=float)
    writer.write_csv("radial_cdf", ["r", "F_theory", "F_empirical"], zip(grid, theory, empirical))

    distance = sup_distance(R, model)
    summary = {
        "shape": [shape.N, shape.n],
        "gamma": model.gamma,
        "sup_distance": distance,
        "zero_count": zero_eigen_count(spectrum),
    }
    writer.write_json("summary", summary)
    logger.info(f"Radial CDF at (N, n)=({shape.N}, {shape.n}): sup-distance {distance:.4f}")
    return summary


def cmd_test(settings: Settings, writer: OutputWriter) -> Dict[str, Any]:
    """Run one calibrated whiteness test on a matrix file."""
    if not settings.get("input"):
        raise ConfigError("The test command needs an input matrix file")
    shape = resolve_shape(settings)
    Y_obs = read_matrix_csv(Path(settings["input"]), (shape.N, shape.n))
    spec = TestSpec(
        settings["test"],
        shape,
        entry_law(settings, shape.n),
        reference_seed=settings["reference_seed"],
        calibration_reps=settings["calibration_reps"],
        level=settings["level"],
        seed=settings["seed"],
    )
    report = run_test(spec, Y_obs, jobs=settings["jobs"])
    summary = {"report": report.to_dict(), "settings": settings.as_dict()}
    summary["settings"].pop("output_dir", None)
    summary["settings"].pop("jobs", None)
    writer.write_json("report", summary)
    return summary


def cmd_roc(settings: Settings, writer: OutputWriter) -> Dict[str, Any]:
    """ROC curves of the selected tests against an MA(1) alternative."""
    shape = resolve_shape(settings)
    law = entry_law(settings, shape.n)
    alternative = alternative_model(shape, settings["alt"])
    trials = settings["trials"]
    rows: List[Tuple[str, float, float]] = []
    aucs: Dict[str, float] = {}
    for which in settings["tests"]:
        spec = TestSpec(
            which,
            shape,
            law,
            reference_seed=settings["reference_seed"],
            calibration_reps=trials,
            seed=settings["seed"],
        )
        curve = roc(spec, alternative, trials_per_side=trials, jobs=settings["jobs"])
        aucs[spec.name] = curve.auc
        rows.extend((spec.name, fpr, tpr) for fpr, tpr in curve.points)
    writer.write_csv("curves", ["test", "fpr", "tpr"], rows)
    summary = {"shape": [shape.N, shape.n], "alternative": settings["alt"], "trials_per_side": trials, "auc": aucs}
    writer.write_json("auc", summary)
    return summary


def cmd_master(settings: Settings, writer: OutputWriter) -> Dict[str, Any]:
    """Master-equation solutions over a (z, t) grid, with b(z) at the smallest t."""
    gamma = float(settings["gamma"])
    ts = sorted((float(t) for t in settings["t"]), reverse=True)
    opts = MasterOptions(tol=float(settings["tol"]))
    t_min = ts[-1]
    rows: List[List[Any]] = []
    failures = 0

    for text in settings["z"]:
        z = parse_complex(text)
        b: Optional[Any] = limit_b(z, gamma) if z != 0 else None
        try:
            solutions = solve_master_path(z, ts, gamma, opts)
        except ConvergenceError as e:
            failures += 1
            logger.warning(f"Master solver failed at z={z}: {e}")
            for t in ts:
                rows.append([z.real, z.imag, t] + [""] * 6 + _b_columns(b, t == t_min) + ["failed"])
            continue
        for sol in solutions:
            rows.append(
                [z.real, z.imag, sol.t, sol.h, sol.d.real, sol.d.imag, sol.res_u, sol.res_v, sol.iterations]
                + _b_columns(b, sol.t == t_min)
                + ["ok"]
            )

    columns = [
        "z_re", "z_im", "t", "h", "d_re", "d_im", "res_u", "res_v", "iterations", "b_re", "b_im", "regime", "status"
    ]
    writer.write_csv("solutions", columns, rows)
    summary = {"gamma": gamma, "t": ts, "points": len(settings["z"]), "failures": failures}
    writer.write_json("summary", summary)
    return summary


def _b_columns(b, include: bool) -> List[Any]:
    if b is None or not include:
        return ["", "", ""]
    return [b.b.real, b.b.imag, b.regime]


def linearization_pass_count(
    shape: MatrixShape, law: EntryLaw, z: complex, trials: int, seed: int, jobs: int = 1
) -> int:
    """Trials in which ||(X J X* - z)^-1|| <= ||H^-1|| holds."""
    A = make_J(shape.n)

    def trial(index: int) -> bool:
        X = generate_X(shape, law, seed=seed, trial=index, stream=STREAM_REFERENCE)
        inv_M, inv_H = linearization_check(X, A, z)
        return inv_M <= inv_H * (1.0 + LINEARIZATION_RTOL)

    return int(sum(run_trials(trial, range(trials), jobs)))


def cmd_smin(settings: Settings, writer: OutputWriter) -> Dict[str, Any]:
    """Smallest singular value of X J X* - z and the linearization inequality."""
    shape = resolve_shape(settings)
    law = entry_law(settings, shape.n)
    z = parse_complex(settings["z"])
    values = smin_experiment(
        shape,
        law,
        make_J(shape.n),
        z,
        settings["trials"],
        seed=settings["seed"],
        smooth=bool(settings["smooth"]),
        jobs=settings["jobs"],
    )
    tail = smin_tail_curve(values, SMIN_THRESHOLDS)
    writer.write_csv("values", ["trial", "s_min"], enumerate(values))
    writer.write_csv("tail", ["t", "probability"], zip(SMIN_THRESHOLDS, tail))

    lin_shape = MatrixShape(*settings["linearization_shape"])
    passed = linearization_pass_count(
        lin_shape,
        entry_law(settings, lin_shape.n),
        parse_complex(settings["linearization_z"]),
        LINEARIZATION_TRIALS,
        settings["seed"],
        settings["jobs"],
    )
    summary = {
        "shape": [shape.N, shape.n],
        "z": z,
        "trials": settings["trials"],
        "tail": dict(zip((format(t, "g") for t in SMIN_THRESHOLDS), tail)),
        "linearization": {"shape": [lin_shape.N, lin_shape.n], "trials": LINEARIZATION_TRIALS, "passed": passed},
    }
    writer.write_json("summary", summary)
    return summary
