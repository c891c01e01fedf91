"""Command-line front door.

Subcommands: faber, zeros, exp-zeros, predict, figure, verify, basis.
Formats: json, csv, pretty.  Floating-point output is printed with 17
significant digits; exact rationals are printed as decimal strings.
Identical configurations produce byte-identical output.

Exit codes: 0 success, 1 verification failed, 2 invalid input,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import re
import sys
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, NumericalError
from .faber import faber_polynomial, renormalized_coeffs
from .halfplane import OUT_OF_REGIME, predicted_zero, zero_report
from .modforms import decompose_weight, miller_basis_series, miller_form_spec
from .roots import truncated_exp_inverse_zeros

__all__ = ["RunConfig", "main"]

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INVALID = 2
EXIT_NUMERICAL = 3

ZERO_COLUMNS = (
    "k", "m", "D", "r",
    "t_re", "t_im", "tau_re", "tau_im", "pred_re", "pred_im",
    "abs_err", "k_times_err",
)


@dataclass(frozen=True)
class RunConfig:
    """One parsed invocation: exactly one subcommand plus its knobs."""

    subcommand: str
    k: int | None = None
    m: str | None = None
    degree: int | None = None
    k_min: int | None = None
    k_max: int | None = None
    k_step: int = 1000
    tol: float = 1e-10
    format: str = "json"
    out: str | None = None


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _json_text(obj, indent: int = 0) -> str:
    """Deterministic JSON with floats rendered at 17 significant digits."""
    pad = "  " * indent
    pad_in = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{pad_in}"{key}": {_json_text(val, indent + 1)}' for key, val in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{pad_in}{_json_text(val, indent + 1)}" for val in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, float):
        return _fmt(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, str):
        escaped = obj.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{escaped}"'
    raise TypeError(f"not JSON-serializable here: {type(obj)}")


def _csv_cell(value) -> str:
    if isinstance(value, float):
        text = _fmt(value)
    else:
        text = str(value)
    if any(ch in text for ch in ',"\n'):
        text = '"' + text.replace('"', '""') + '"'
    return text


def _csv_text(header, rows) -> str:
    lines = [",".join(_csv_cell(c) for c in header)]
    lines.extend(",".join(_csv_cell(c) for c in row) for row in rows)
    return "\n".join(lines) + "\n"


def _emit(text: str, config: RunConfig) -> None:
    if config.out:
        with open(config.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _resolve_m(m_arg: str, ell: int) -> int:
    """Resolve --m, including the last / last-N aliases, against ell."""
    if m_arg == "last":
        return ell
    match = re.fullmatch(r"last-(\d+)", m_arg)
    if match:
        m = ell - int(match.group(1))
        if m < 0:
            raise DomainError(f"alias {m_arg!r} resolves to m={m} < 0 (ell = {ell})")
        return m
    try:
        return int(m_arg)
    except ValueError:
        raise DomainError(f"invalid --m value {m_arg!r}") from None


def _even(name: str, value: int) -> int:
    if value % 2 != 0:
        raise DomainError(f"--{name} must be even, got {value}")
    return value


def _doubling_grid(k_min: int, k_max: int) -> list[int]:
    if k_min <= 0:
        raise DomainError(f"k-min must be positive, got {k_min}")
    if k_min > k_max:
        raise DomainError(f"k-min {k_min} exceeds k-max {k_max}")
    grid = []
    k = _even("k-min", k_min)
    _even("k-max", k_max)
    while k <= k_max:
        grid.append(k)
        k *= 2
    return grid


# -- subcommands -------------------------------------------------------------


def cmd_faber(config: RunConfig) -> int:
    spec = miller_form_spec(config.k, _resolve_m(config.m, decompose_weight(config.k).ell))
    poly = faber_polynomial(spec)
    if config.format == "json":
        _emit(_json_text(poly.to_json_dict()) + "\n", config)
    elif config.format == "csv":
        rows = [(poly.k, poly.m, poly.degree, s, str(c)) for s, c in enumerate(poly.coeffs)]
        _emit(_csv_text(("k", "m", "D", "s", "x_s"), rows), config)
    else:
        _emit(f"F_{{{poly.k},{poly.m}}}(t) = {poly}\n", config)
    return EXIT_OK


def _zero_rows(report):
    rows = []
    for row in report.rows:
        if row.status == OUT_OF_REGIME:
            tau_re = tau_im = abs_err = k_err = OUT_OF_REGIME
        else:
            tau_re, tau_im = row.tau.tau.real, row.tau.tau.imag
            abs_err, k_err = row.abs_err, row.k_times_err
        rows.append(
            (
                report.k, report.m, report.degree, row.r,
                row.t.real, row.t.imag, tau_re, tau_im,
                row.tau_hat.tau.real, row.tau_hat.tau.imag,
                abs_err, k_err,
            )
        )
    return rows


def cmd_zeros(config: RunConfig) -> int:
    spec = miller_form_spec(config.k, _resolve_m(config.m, decompose_weight(config.k).ell))
    report = zero_report(spec, tol=config.tol, strict=False)
    rows = _zero_rows(report)
    if config.format == "json":
        payload = [dict(zip(ZERO_COLUMNS, row)) for row in rows]
        _emit(_json_text(payload) + "\n", config)
    elif config.format == "csv":
        _emit(_csv_text(ZERO_COLUMNS, rows), config)
    else:
        lines = [f"zeros of the degree-{report.degree} Faber polynomial at k={report.k}, m={report.m}"]
        for row in rows:
            lines.append("  " + "  ".join(_csv_cell(c) for c in row[3:]))
        _emit("\n".join(lines) + "\n", config)
    return EXIT_OK


def cmd_exp_zeros(config: RunConfig) -> int:
    roots = truncated_exp_inverse_zeros(config.degree, tol=config.tol)
    if config.format == "json":
        _emit(_json_text(roots.to_json_dict()) + "\n", config)
    elif config.format == "csv":
        rows = [(config.degree, r + 1, z.real, z.imag) for r, z in enumerate(roots.roots)]
        _emit(_csv_text(("D", "r", "re", "im"), rows), config)
    else:
        lines = [f"inverse zeros of the degree-{config.degree} truncated exponential"]
        lines += [f"  z_{r + 1} = {_fmt(z.real)} + {_fmt(z.imag)}i" for r, z in enumerate(roots.roots)]
        lines.append(f"  residual {_fmt(roots.residual)}")
        _emit("\n".join(lines) + "\n", config)
    return EXIT_OK


def _predicted_points(k: int, limits) -> list[tuple[int, int, float, float]]:
    points = []
    for r, z in enumerate(limits.roots):
        tau = predicted_zero(k, z).tau
        points.append((k, r + 1, tau.real, tau.imag))
    return points


def cmd_predict(config: RunConfig) -> int:
    _even("k", config.k)
    limits = truncated_exp_inverse_zeros(config.degree, tol=config.tol)
    rows = _predicted_points(config.k, limits)
    _emit_points(rows, config)
    return EXIT_OK


def cmd_figure(config: RunConfig) -> int:
    if config.degree < 1:
        raise DomainError("figure requires D >= 1 (a constant polynomial has no zeros)")
    for name, val in (("k-min", config.k_min), ("k-max", config.k_max), ("k-step", config.k_step)):
        _even(name, val)
    if config.k_min <= 0 or config.k_min > config.k_max or config.k_step <= 0:
        raise DomainError("grid requires 0 < k-min <= k-max and k-step > 0")
    limits = truncated_exp_inverse_zeros(config.degree, tol=config.tol)
    rows = []
    for k in range(config.k_min, config.k_max + 1, config.k_step):
        rows.extend(_predicted_points(k, limits))
    _emit_points(rows, config)
    return EXIT_OK


def _emit_points(rows, config: RunConfig) -> None:
    if config.format == "json":
        payload = [{"k": k, "r": r, "re": re_, "im": im} for k, r, re_, im in rows]
        _emit(_json_text(payload) + "\n", config)
    elif config.format == "csv":
        _emit(_csv_text(("k", "r", "re", "im"), rows), config)
    else:
        lines = [f"k={k} r={r}: {_fmt(re_)} + {_fmt(im)}i" for k, r, re_, im in rows]
        _emit("\n".join(lines) + "\n", config)


def cmd_verify(config: RunConfig) -> int:
    """Monitor k * deviation sequences over a doubling grid.

    Coefficient rows track k * |x_s s!/(2k)^s - 1| for s = 1..D (exact
    rationals); zero rows track k * |tau_r - tau_hat_r| over the grid
    entries whose roots are large enough to invert.  Exit 0 when every
    monitored sequence stays within 1.5x its first computed entry.
    """
    d = config.degree
    if d < 1 or d > 8:
        raise DomainError(f"verify requires 1 <= D <= 8, got {d}")
    grid = _doubling_grid(config.k_min, config.k_max)
    coeff_rows = {s: [] for s in range(1, d + 1)}  # exact Fractions
    zero_rows = {r: [] for r in range(1, d + 1)}  # floats or None
    for k in grid:
        weight = decompose_weight(k)
        if weight.ell < d:
            raise DomainError(f"k = {k} has ell = {weight.ell} < D = {d}")
        spec = miller_form_spec(k, weight.ell - d)
        poly = faber_polynomial(spec)
        devs = renormalized_coeffs(poly, k)
        for s in range(1, d + 1):
            coeff_rows[s].append(k * abs(devs[s]))
        report = zero_report(spec, tol=config.tol, strict=False)
        for row in report.rows:
            zero_rows[row.r].append(None if row.status == OUT_OF_REGIME else row.k_times_err)

    def bounded(seq) -> bool:
        values = [v for v in seq if v is not None]
        if not values:
            return True
        first = values[0]
        limit = first * Fraction(3, 2) if isinstance(first, Fraction) else 1.5 * first
        return all(v <= limit for v in values)

    table = []
    all_bounded = True
    for s in range(1, d + 1):
        seq = coeff_rows[s]
        ok = bounded(seq)
        all_bounded &= ok
        table.append((f"coeff_dev[s={s}]", [float(v) for v in seq], ok))
    for r in range(1, d + 1):
        seq = zero_rows[r]
        if all(v is None for v in seq):
            continue  # nothing computable on this grid
        ok = bounded(seq)
        all_bounded &= ok
        table.append((f"zero_err[r={r}]", [OUT_OF_REGIME if v is None else v for v in seq], ok))

    if config.format == "json":
        payload = {
            "k_grid": grid,
            "rows": [
                {"metric": name, "values": list(values), "bounded": ok}
                for name, values, ok in table
            ],
            "all_bounded": all_bounded,
        }
        _emit(_json_text(payload) + "\n", config)
    elif config.format == "csv":
        header = ("metric",) + tuple(f"k={k}" for k in grid) + ("bounded",)
        rows = [
            (name, *values, "yes" if ok else "no")
            for name, values, ok in table
        ]
        _emit(_csv_text(header, rows), config)
    else:
        lines = ["k grid: " + " ".join(str(k) for k in grid)]
        for name, values, ok in table:
            rendered = " ".join(v if isinstance(v, str) else _fmt(v) for v in values)
            lines.append(f"{name}: {rendered}  [{'bounded' if ok else 'UNBOUNDED'}]")
        lines.append("all bounded" if all_bounded else "verification FAILED")
        _emit("\n".join(lines) + "\n", config)
    return EXIT_OK if all_bounded else EXIT_VERIFY_FAILED


def cmd_basis(config: RunConfig) -> int:
    weight = decompose_weight(config.k)
    order = weight.ell + 5  # enough trailing terms to show genuine coefficients
    basis = miller_basis_series(config.k, order)
    if config.format == "json":
        payload = {
            "k": config.k,
            "order": order,
            "basis": [series.to_json_dict() for series in basis],
        }
        _emit(_json_text(payload) + "\n", config)
    elif config.format == "csv":
        rows = []
        for i, series in enumerate(basis):
            for n in range(series.valuation, series.order):
                rows.append((config.k, i, n, str(series.coeff(n))))
        _emit(_csv_text(("k", "i", "n", "coeff"), rows), config)
    else:
        lines = [f"f_{{{config.k},{i}}} = {series}" for i, series in enumerate(basis)]
        _emit("\n".join(lines) + "\n", config)
    return EXIT_OK


# -- argument parsing ---------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="faberzeros",
        description="Faber polynomials of level-one modular forms and the geometry of their zeros.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, *, tol=True, fmt=True, out=True):
        if tol:
            p.add_argument("--tol", type=float, default=1e-10, help="numerical tolerance (default 1e-10)")
        if fmt:
            p.add_argument("--format", choices=("json", "csv", "pretty"), default=None)
        if out:
            p.add_argument("--out", default=None, help="output path (default: stdout)")

    p = sub.add_parser("faber", help="print the exact Faber polynomial of f_{k,m}")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", required=True, help="integer or last / last-N alias")
    common(p)

    p = sub.add_parser("zeros", help="Faber roots, actual zeros, and predictions for f_{k,m}")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", required=True)
    common(p)

    p = sub.add_parser("exp-zeros", help="inverse zeros of the truncated exponential of degree D")
    p.add_argument("--D", dest="degree", type=int, required=True)
    common(p)

    p = sub.add_parser("predict", help="predicted zero locations for one weight")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--D", dest="degree", type=int, required=True)
    common(p)

    p = sub.add_parser("figure", help="predicted point cloud over a k grid (the figure data)")
    p.add_argument("--D", dest="degree", type=int, required=True)
    p.add_argument("--k-min", dest="k_min", type=int, required=True)
    p.add_argument("--k-max", dest="k_max", type=int, required=True)
    p.add_argument("--k-step", dest="k_step", type=int, default=1000)
    common(p)

    p = sub.add_parser("verify", help="boundedness of k-scaled deviations over a doubling grid")
    p.add_argument("--D", dest="degree", type=int, required=True)
    p.add_argument("--k-min", dest="k_min", type=int, required=True)
    p.add_argument("--k-max", dest="k_max", type=int, required=True)
    common(p)

    p = sub.add_parser("basis", help="exact q-expansions of the Miller basis of M_k")
    p.add_argument("--k", type=int, required=True)
    common(p)

    return parser


_DEFAULT_FORMATS = {
    "faber": "json",
    "zeros": "csv",
    "exp-zeros": "json",
    "predict": "csv",
    "figure": "csv",
    "verify": "pretty",
    "basis": "json",
}

_HANDLERS = {
    "faber": cmd_faber,
    "zeros": cmd_zeros,
    "exp-zeros": cmd_exp_zeros,
    "predict": cmd_predict,
    "figure": cmd_figure,
    "verify": cmd_verify,
    "basis": cmd_basis,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    fmt = getattr(args, "format", None) or _DEFAULT_FORMATS[args.subcommand]
    config = RunConfig(
        subcommand=args.subcommand,
        k=getattr(args, "k", None),
        m=getattr(args, "m", None),
        degree=getattr(args, "degree", None),
        k_min=getattr(args, "k_min", None),
        k_max=getattr(args, "k_max", None),
        k_step=getattr(args, "k_step", 1000),
        tol=getattr(args, "tol", 1e-10),
        format=fmt,
        out=getattr(args, "out", None),
    )
    try:
        if not config.tol > 0:
            raise DomainError(f"tolerance must be positive, got {config.tol}")
        return _HANDLERS[config.subcommand](config)
    except DomainError as exc:
        print(f"faberzeros: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NumericalError as exc:
        print(f"faberzeros: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
