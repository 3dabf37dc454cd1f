"""Command-line front end.

One subcommand per subsystem plus a generic sweep.  Data goes to stdout in
table, CSV or JSON form (JSON carries ``schema: 1`` and floats with 17
significant digits, so parsing the output recovers every value bit for
bit); diagnostics go to stderr.  Exit codes: 0 success, 1 computation error
(the error's fields are serialized to stderr as JSON), 2 usage error.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import arith, modular, phonon, radiation, thermo
from .arith import DedekindConvention, PrecisionPolicy
from .errors import ConvergenceError, DomainError, PrecisionError

_CONVENTIONS = {"classical": DedekindConvention.CLASSICAL_SAWTOOTH,
                "paper": DedekindConvention.PAPER_LITERAL}


# ---------------------------------------------------------------------------
# Output formatting
# ---------------------------------------------------------------------------

def _fmt_num(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    return format(float(v), ".17g")


def _json_escape(s: str) -> str:
    out = []
    for ch in s:
        if ch in '"\\':
            out.append("\\" + ch)
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    return '"' + "".join(out) + '"'


def _json_value(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, float)):
        return _fmt_num(v)
    if isinstance(v, str):
        return _json_escape(v)
    if isinstance(v, dict):
        inner = ", ".join(f"{_json_escape(k)}: {_json_value(x)}" for k, x in v.items())
        return "{" + inner + "}"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_json_value(x) for x in v) + "]"
    raise TypeError(f"unserializable value {v!r}")


def _emit(doc: dict, fmt: str) -> None:
    rows = doc["rows"]
    if fmt == "json":
        payload = {"schema": 1, "command": doc["command"],
                   "params": doc["params"], "rows": rows}
        sys.stdout.write(_json_value(payload) + "\n")
        return
    columns: list[str] = []
    for row in rows:
        for key in row:
            if key not in columns:
                columns.append(key)
    if fmt == "csv":
        sys.stdout.write(",".join(columns) + "\n")
        for row in rows:
            cells = []
            for key in columns:
                v = row.get(key)
                cells.append("" if v is None else
                             (v if isinstance(v, str) else _fmt_num(v)))
            sys.stdout.write(",".join(cells) + "\n")
        return
    # table
    def cell(v) -> str:
        if v is None:
            return "-"
        if isinstance(v, str):
            return v
        if isinstance(v, bool) or isinstance(v, int):
            return _fmt_num(v)
        return format(float(v), ".10g")

    text = [[cell(row.get(k)) for k in columns] for row in rows]
    widths = [max(len(c), *(len(r[i]) for r in text)) if text else len(c)
              for i, c in enumerate(columns)]
    sys.stdout.write("  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip() + "\n")
    for r in text:
        sys.stdout.write("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n")


# ---------------------------------------------------------------------------
# Argument helpers
# ---------------------------------------------------------------------------

def _parse_fraction(text: str) -> Fraction:
    parts = text.split("/")
    if len(parts) != 2:
        raise DomainError(f"expected P/Q, got {text!r}")
    try:
        num, den = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise DomainError(f"expected integers in P/Q, got {text!r}") from exc
    return arith.reduced_fraction(num, den)


def _policy_from(args) -> PrecisionPolicy:
    return PrecisionPolicy(rel_tol=args.rel_tol, max_terms=args.max_terms)


def _constants_from(args) -> radiation.PhysicalConstants:
    if args.constants:
        return radiation.PhysicalConstants.from_file(args.constants)
    return radiation.PhysicalConstants.si()


def _frac_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


# ---------------------------------------------------------------------------
# Subcommand handlers (each returns the document dict)
# ---------------------------------------------------------------------------

def _cmd_partition(args) -> dict:
    policy = _policy_from(args)
    convention = _CONVENTIONS[args.convention]
    row: dict = {"n": args.n, "method": args.method}
    if args.method == "rademacher":
        res = modular.rademacher_p(args.n, convention, policy)
        row.update(value=res.value, terms_used=res.terms_used,
                   residual=res.residual, convention=convention.value)
    elif args.method == "oracle":
        row["value"] = arith.partition_count_oracle(args.n)
    elif args.method == "leading":
        row["value"] = modular.leading_term_p(args.n)
    else:  # asymptotic
        row["value"] = modular.asymptotic_p(args.n)
    if args.oracle_check:
        oracle = arith.partition_count_oracle(args.n)
        row["oracle"] = oracle
        exact = row["value"] if isinstance(row["value"], int) else round(row["value"])
        row["match"] = exact == oracle
    return {"command": "partition", "params": {"n": args.n, "method": args.method},
            "rows": [row]}


def _cmd_farey(args) -> dict:
    seq = arith.farey_sequence(args.order)
    rows = [{"index": i, "numerator": f.numerator, "denominator": f.denominator,
             "value": f.numerator / f.denominator} for i, f in enumerate(seq)]
    return {"command": "farey", "params": {"order": args.order}, "rows": rows}


def _cmd_ford(args) -> dict:
    if (args.fraction is None) == (args.triple is None):
        raise DomainError("give exactly one of --fraction or --triple")
    if args.fraction is not None:
        f = _parse_fraction(args.fraction)
        c = arith.ford_circle(f)
        rows = [{"fraction": _frac_str(f), "center_x": _frac_str(c.center_x),
                 "center_y": _frac_str(c.center_y), "radius": _frac_str(c.radius),
                 "radius_float": float(c.radius)}]
        params = {"fraction": args.fraction}
    else:
        parts = args.triple.split(",")
        if len(parts) != 3:
            raise DomainError(f"expected L,M,R fractions, got {args.triple!r}")
        left, mid, right = (_parse_fraction(p) for p in parts)
        tau_l, tau_r = arith.ford_tangency(left, mid, right)
        rows = [
            {"point": "left", "re": _frac_str(tau_l.re), "im": _frac_str(tau_l.im),
             "re_float": float(tau_l.re), "im_float": float(tau_l.im)},
            {"point": "right", "re": _frac_str(tau_r.re), "im": _frac_str(tau_r.im),
             "re_float": float(tau_r.re), "im_float": float(tau_r.im)},
        ]
        params = {"triple": args.triple}
    return {"command": "ford", "params": params, "rows": rows}


def _cmd_dedekind(args) -> dict:
    which = (list(_CONVENTIONS) if args.convention == "both"
             else [args.convention])
    rows = []
    for name in which:
        val = arith.dedekind_sum(args.p, args.q, _CONVENTIONS[name])
        rows.append({"p": args.p, "q": args.q, "convention": name,
                     "value": _frac_str(val.value), "value_float": float(val.value)})
    return {"command": "dedekind", "params": {"p": args.p, "q": args.q},
            "rows": rows}


def _cmd_eta(args) -> dict:
    policy = _policy_from(args)
    try:
        re_s, im_s = args.tau.split(",")
        tau = complex(float(re_s), float(im_s))
    except ValueError as exc:
        raise DomainError(f"expected --tau RE,IM, got {args.tau!r}") from exc
    value = modular.eta(tau, policy)
    row = {"tau_re": tau.real, "tau_im": tau.imag,
           "eta_re": value.real, "eta_im": value.imag, "eta_abs": abs(value)}
    if args.check != "none":
        if args.check == "shift":
            predicted = modular.eta_transform(tau, modular.EtaTransform.SHIFT, policy)
            direct = modular.eta(tau + 1.0, policy)
        else:
            predicted = modular.eta_transform(tau, modular.EtaTransform.INVERSION, policy)
            direct = modular.eta(-1.0 / tau, policy)
        row["check"] = args.check
        row["check_residual"] = abs(direct - predicted) / abs(direct)
    return {"command": "eta", "params": {"tau": args.tau, "check": args.check},
            "rows": [row]}


def _cmd_thermo(args) -> dict:
    policy = _policy_from(args)
    tm = thermo.thermo_per_mode(args.x, policy)
    row = {"x": args.x, "f_over_kT": tm.f_over_kT, "n_occ": tm.n_occ,
           "e_over_kT": tm.e_over_kT, "s_over_k": tm.s_over_k,
           "terms_used": tm.terms_used, "tail_bound": tm.tail_bound}
    return {"command": "thermo", "params": {"x": args.x}, "rows": [row]}


def _cmd_blackbody(args) -> dict:
    policy = _policy_from(args)
    constants = _constants_from(args)
    cavity = radiation.CavitySpec(volume=args.volume, temperature=args.temperature)
    pt = radiation.spectral_point(args.nu, cavity, constants, policy)
    x = radiation.mode_x(args.nu, args.temperature, constants)
    row = {"nu": pt.nu, "x": x,
           "u_conventional": pt.u_conventional, "u_general": pt.u_general,
           "e_b_planck": pt.e_b_planck,
           "e_b_rayleigh_jeans": radiation.emissivity(
               args.nu, cavity, constants, radiation.EmissivityModel.RAYLEIGH_JEANS),
           "e_b_general": pt.e_b_general,
           "e_b_general_lf": radiation.emissivity(
               args.nu, cavity, constants, radiation.EmissivityModel.GENERAL_LOW_FREQ),
           "frac_noise_rj": pt.frac_noise_rj,
           "frac_noise_general_lf": pt.frac_noise_general_lf,
           "frac_noise_einstein": radiation.fluctuation_spectrum(
               args.nu, cavity, constants, radiation.NoiseModel.EINSTEIN_FULL)}
    return {"command": "blackbody",
            "params": {"nu": args.nu, "temperature": args.temperature,
                       "volume": args.volume},
            "rows": [row]}


def _cmd_phonon(args) -> dict:
    policy = _policy_from(args)
    constants = _constants_from(args)
    solid = phonon.SolidSpec(n_atoms=args.n_atoms, volume=args.volume,
                             temperature=args.temperature, c_ph=args.c_ph,
                             c_transverse=args.c_transverse,
                             c_longitudinal=args.c_longitudinal)
    theta = phonon.debye_temperature(solid, constants)
    if solid.temperature < theta / 50.0:
        sys.stderr.write(
            "note: below theta_D/50 the electronic specific heat (linear in T) "
            "dominates the lattice term and is not modeled here\n")
    x_m = theta / solid.temperature
    cv_conv = phonon.specific_heat(solid, constants, phonon.DebyeModel.CONVENTIONAL, policy)
    cv_gen = phonon.specific_heat(solid, constants, phonon.DebyeModel.GENERAL, policy)
    eps_sq, rel_fluct = phonon.energy_fluctuation(solid, constants, policy)
    row = {"nu_m": phonon.debye_frequency(solid), "theta_d": theta, "x_m": x_m,
           "debye_function": phonon.debye_function(x_m, policy),
           "cv_conventional": cv_conv, "cv_general": cv_gen,
           "cv_over_dulong_petit": cv_conv / (3.0 * solid.n_atoms * constants.k),
           "epsilon_sq": eps_sq, "relative_fluctuation": rel_fluct}
    return {"command": "phonon",
            "params": {"n_atoms": args.n_atoms, "volume": args.volume,
                       "temperature": args.temperature},
            "rows": [row]}


def _cmd_quartz(args) -> dict:
    constants = _constants_from(args)
    references: dict[str, float] = {}
    if args.preset:
        spec, references = phonon.load_resonator_preset(args.preset)
    else:
        needed = {"q-factor": args.q_factor, "carrier": args.carrier,
                  "volume": args.volume, "temperature": args.temperature,
                  "c-ph": args.c_ph}
        missing = [f"--{k}" for k, v in needed.items() if v is None]
        if missing:
            raise DomainError(f"without --preset, give {', '.join(missing)}")
        spec = phonon.ResonatorSpec(q_factor=args.q_factor, carrier=args.carrier,
                                    active_volume=args.volume,
                                    temperature=args.temperature, c_ph=args.c_ph)
    result = phonon.flicker_floor(spec, constants)
    row = {"q_factor": spec.q_factor, "carrier": spec.carrier,
           "active_volume": spec.active_volume, "temperature": spec.temperature,
           "c_ph": spec.c_ph, "a_ph": result.a_ph, "h_minus_1": result.h_minus_1}
    if "reference_a_ph" in references:
        row["reference_a_ph"] = references["reference_a_ph"]
        row["a_ph_over_reference"] = result.a_ph / references["reference_a_ph"]
    if "reference_h_minus_1" in references:
        row["reference_h_minus_1"] = references["reference_h_minus_1"]
        row["h_minus_1_over_reference"] = result.h_minus_1 / references["reference_h_minus_1"]
    return {"command": "quartz",
            "params": {"preset": args.preset or ""}, "rows": [row]}


def _cmd_mellin(args) -> dict:
    policy = _policy_from(args)
    kind = {"free-energy": thermo.MellinKind.FREE_ENERGY,
            "occupation": thermo.MellinKind.OCCUPATION,
            "energy": thermo.MellinKind.ENERGY}[args.kind]
    integral, closed = thermo.mellin_check(args.s, kind, policy)
    row = {"s": args.s, "kind": args.kind, "integral": integral,
           "closed_form": closed,
           "rel_diff": abs(integral - closed) / abs(closed)}
    return {"command": "mellin-check", "params": {"s": args.s, "kind": args.kind},
            "rows": [row]}


# ---------------------------------------------------------------------------
# Sweep
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepGrid:
    variable: str
    start: float
    stop: float
    points: int
    scale: str  # linear | log

    def __post_init__(self) -> None:
        if not self.start < self.stop:
            raise DomainError(f"need start < stop, got {self.start} >= {self.stop}")
        if self.points < 2:
            raise DomainError(f"need points >= 2, got {self.points}")
        if self.scale == "log" and self.start <= 0.0:
            raise DomainError("log scale needs start > 0")

    def values(self) -> list[float]:
        if self.scale == "log":
            ratio = (self.stop / self.start) ** (1.0 / (self.points - 1))
            vals = [self.start * ratio ** i for i in range(self.points)]
        else:
            step = (self.stop - self.start) / (self.points - 1)
            vals = [self.start + step * i for i in range(self.points)]
        vals[-1] = self.stop
        return vals


_SWEEP_MODELS = {
    "energy": ("exact", "lowfreq", "planck", "zeropoint"),
    "free-energy": ("exact", "lowfreq", "conventional"),
    "entropy": ("exact", "lowfreq"),
    "occupation": ("exact", "lowfreq", "conventional"),
    "emissivity": ("planck", "rayleigh-jeans", "general", "general-lf"),
    "frac-noise": ("rj", "general-lf", "einstein"),
    "partition": ("rademacher", "oracle"),
}


def _sweep_evaluator(quantity: str, model: str, args, policy, constants):
    """Return f(value) -> float for one quantity/model column."""
    if quantity == "energy":
        return {"exact": lambda x: thermo.internal_energy(x, policy),
                "lowfreq": thermo.internal_energy_lowfreq,
                "planck": lambda x: thermo.planck_factor(x, thermo.PlanckVariant.PLANCK),
                "zeropoint": lambda x: thermo.planck_factor(x, thermo.PlanckVariant.ZERO_POINT),
                }[model]
    if quantity == "free-energy":
        return {"exact": lambda x: thermo.free_energy(x, policy),
                "lowfreq": thermo.free_energy_lowfreq,
                "conventional": lambda x: math.log1p(-math.exp(-x)),
                }[model]
    if quantity == "entropy":
        return {"exact": lambda x: thermo.entropy(x, policy),
                "lowfreq": thermo.entropy_lowfreq}[model]
    if quantity == "occupation":
        return {"exact": lambda x: thermo.occupation(x, policy),
                "lowfreq": thermo.occupation_lowfreq,
                "conventional": lambda x: 1.0 / math.expm1(x)}[model]
    if quantity in ("emissivity", "frac-noise"):
        if args.temperature is None:
            raise DomainError(f"{quantity} sweep needs --temperature")
        cavity = radiation.CavitySpec(volume=args.volume,
                                      temperature=args.temperature)
        if quantity == "emissivity":
            emodel = {"planck": radiation.EmissivityModel.PLANCK,
                      "rayleigh-jeans": radiation.EmissivityModel.RAYLEIGH_JEANS,
                      "general": radiation.EmissivityModel.GENERAL,
                      "general-lf": radiation.EmissivityModel.GENERAL_LOW_FREQ}[model]
            return lambda nu: radiation.emissivity(nu, cavity, constants, emodel, policy)
        nmodel = {"rj": radiation.NoiseModel.RAYLEIGH_JEANS,
                  "general-lf": radiation.NoiseModel.GENERAL_LOW_FREQ,
                  "einstein": radiation.NoiseModel.EINSTEIN_FULL}[model]
        return lambda nu: radiation.fluctuation_spectrum(nu, cavity, constants,
                                                         nmodel, policy)
    if quantity == "partition":
        convention = _CONVENTIONS[args.convention]
        if model == "rademacher":
            return lambda n: modular.rademacher_p(int(n), convention, policy).value
        return lambda n: arith.partition_count_oracle(int(n))
    raise DomainError(f"unknown sweep quantity {quantity!r}")


def _cmd_sweep(args) -> dict:
    policy = _policy_from(args)
    constants = _constants_from(args)
    quantity = args.quantity
    models = (tuple(args.models.split(",")) if args.models
              else _SWEEP_MODELS[quantity])
    for m in models:
        if m not in _SWEEP_MODELS[quantity]:
            raise DomainError(
                f"model {m!r} not available for {quantity}; "
                f"choose from {', '.join(_SWEEP_MODELS[quantity])}")
    var = "n" if quantity == "partition" else ("nu" if quantity in
                                               ("emissivity", "frac-noise") else "x")
    if quantity == "partition":
        start, stop = int(args.start), int(args.stop)
        if start >= stop:
            raise DomainError("need start < stop")
        grid_values: list = list(range(start, stop + 1))
    else:
        grid = SweepGrid(var, args.start, args.stop, args.points, args.scale)
        grid_values = grid.values()

    evaluators = {m: _sweep_evaluator(quantity, m, args, policy, constants)
                  for m in models}
    rows = []
    for v in grid_values:
        row: dict = {var: v}
        errors = []
        for m in models:
            try:
                row[m] = evaluators[m](v)
            except (PrecisionError, ConvergenceError, DomainError) as exc:
                row[m] = None
                errors.append(f"{m}={exc}")
        if quantity == "partition" and "rademacher" in row and "oracle" in row:
            row["match"] = (row["rademacher"] == row["oracle"]
                            if None not in (row["rademacher"], row["oracle"])
                            else None)
        if errors:
            row["errors"] = "; ".join(errors)
        rows.append(row)
    return {"command": "sweep",
            "params": {"quantity": quantity, "start": args.start,
                       "stop": args.stop, "models": ",".join(models)},
            "rows": rows}


# ---------------------------------------------------------------------------
# Parser and entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eulergas",
        description="Partition arithmetic and divisor-series statistical "
                    "mechanics: exact p(n), per-mode thermodynamics, "
                    "black-body and phonon corrections, resonator 1/f floor.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "csv", "json"),
                        default="table")
    common.add_argument("--constants", default=None, metavar="FILE",
                        help="key = value file overriding h, k, c")
    common.add_argument("--rel-tol", type=float, default=1e-12)
    common.add_argument("--max-terms", type=int, default=5_000_000)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("partition", parents=[common],
                       help="partition counts by any method")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=("rademacher", "oracle", "leading",
                                        "asymptotic"), default="rademacher")
    p.add_argument("--convention", choices=tuple(_CONVENTIONS), default="classical")
    p.add_argument("--oracle-check", action="store_true")
    p.set_defaults(handler=_cmd_partition)

    p = sub.add_parser("farey", parents=[common], help="ordered Farey sequence")
    p.add_argument("--order", type=int, required=True)
    p.set_defaults(handler=_cmd_farey)

    p = sub.add_parser("ford", parents=[common],
                       help="circle data or tangency points")
    p.add_argument("--fraction", default=None, metavar="P/Q")
    p.add_argument("--triple", default=None, metavar="L,M,R")
    p.set_defaults(handler=_cmd_ford)

    p = sub.add_parser("dedekind", parents=[common], help="arithmetic sums s(p,q)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--convention", choices=("classical", "paper", "both"),
                   default="both")
    p.set_defaults(handler=_cmd_dedekind)

    p = sub.add_parser("eta", parents=[common],
                       help="eta function and its transformation checks")
    p.add_argument("--tau", required=True, metavar="RE,IM")
    p.add_argument("--check", choices=("none", "shift", "inversion"),
                   default="none")
    p.set_defaults(handler=_cmd_eta)

    p = sub.add_parser("thermo", parents=[common],
                       help="per-mode F, N, E, S at x = h*nu/kT")
    p.add_argument("--x", type=float, required=True)
    p.set_defaults(handler=_cmd_thermo)

    p = sub.add_parser("blackbody", parents=[common],
                       help="spectral quantities in both models")
    p.add_argument("--nu", type=float, required=True)
    p.add_argument("--temperature", type=float, required=True)
    p.add_argument("--volume", type=float, default=1.0)
    p.set_defaults(handler=_cmd_blackbody)

    p = sub.add_parser("phonon", parents=[common],
                       help="Debye solid in both models")
    p.add_argument("--n-atoms", type=float, required=True)
    p.add_argument("--volume", type=float, required=True)
    p.add_argument("--temperature", type=float, required=True)
    p.add_argument("--c-ph", type=float, default=None)
    p.add_argument("--c-transverse", type=float, default=None)
    p.add_argument("--c-longitudinal", type=float, default=None)
    p.set_defaults(handler=_cmd_phonon)

    p = sub.add_parser("quartz", parents=[common],
                       help="resonator flicker floor")
    p.add_argument("--preset", default=None)
    p.add_argument("--q-factor", type=float, default=None)
    p.add_argument("--carrier", type=float, default=None)
    p.add_argument("--volume", type=float, default=None)
    p.add_argument("--temperature", type=float, default=None)
    p.add_argument("--c-ph", type=float, default=None)
    p.set_defaults(handler=_cmd_quartz)

    p = sub.add_parser("mellin-check", parents=[common],
                       help="quadrature vs Gamma*zeta*zeta closed form")
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--kind", choices=("free-energy", "occupation", "energy"),
                   required=True)
    p.set_defaults(handler=_cmd_mellin)

    p = sub.add_parser("sweep", parents=[common],
                       help="grid sweeps with models side by side")
    p.add_argument("--quantity", choices=tuple(_SWEEP_MODELS), required=True)
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("--points", type=int, default=50)
    p.add_argument("--scale", choices=("linear", "log"), default="linear")
    p.add_argument("--models", default=None,
                   help="comma-separated subset of the quantity's models")
    p.add_argument("--temperature", type=float, default=None)
    p.add_argument("--volume", type=float, default=1.0)
    p.add_argument("--convention", choices=tuple(_CONVENTIONS),
                   default="classical")
    p.set_defaults(handler=_cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        doc = args.handler(args)
    except DomainError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except (PrecisionError, ConvergenceError) as exc:
        sys.stderr.write(_json_value({"schema": 1, "error": exc.fields()}) + "\n")
        return 1
    _emit(doc, args.format)
    return 0


if __name__ == "__main__":
    sys.exit(main())
