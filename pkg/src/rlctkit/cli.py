"""Command-line front end.

Subcommands: rlct, jumps, family, estimate, check, reduce, verify.
Payloads go to stdout as canonical JSON (sorted keys, two-space indent);
diagnostics go to stderr; the exit code is 0 for ok, 2 for inconclusive,
1 for any error.  Exact rationals travel as "p/q" strings, estimates as
floats with explicit standard errors.  The default sampling seed comes
from the RLCTKIT_SEED environment variable when set; --seed wins over it.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InvalidModelError, SchemaError, UnsupportedModelError
from .families import FAMILY_PARAMS, FamilyFixture, build_family
from .polynomials import SparsePolynomial, sum_of_squares
from .rationals import rational_from_str, rational_to_str
from .resolution import ResolutionModel, compare, real_jumping_numbers
from .zeta import (
    IntegrabilityVerdict,
    McEstimate,
    SampleConfig,
    SampleRegion,
    check_integrability,
    default_seed,
    estimate_rlct,
    verify_threshold_chain,
)


@dataclass
class CommandResult:
    status: str  # ok | error | inconclusive
    payload: object
    diagnostics: list[str] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return {"ok": 0, "inconclusive": 2}.get(self.status, 1)


def _load_json(path: str, what: str) -> object:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{what} file {path}: not valid JSON ({exc})") from None


def _read_poly(path: str) -> SparsePolynomial:
    return SparsePolynomial.from_json_dict(_load_json(path, "polynomial"), where=path)


def _read_model(path: str) -> ResolutionModel:
    return ResolutionModel.from_json_dict(_load_json(path, "model"), where=path)


def _nan_to_null(x: float) -> float | None:
    return None if isinstance(x, float) and math.isnan(x) else x


def _estimate_json(est: McEstimate) -> dict:
    doc = est.to_json_dict()
    for key in ("lambda_hat", "log_exponent_hat", "stderr"):
        doc[key] = _nan_to_null(doc[key])
    return doc


def _verdict_json(v: IntegrabilityVerdict) -> dict:
    return {
        "status": v.status,
        "shell_contributions": list(v.shell_contributions),
        "decay_ratio": _nan_to_null(v.decay_ratio),
    }


def _region(args, n: int) -> SampleRegion:
    if args.region == "box":
        return SampleRegion.box(n, halfwidth=args.radius)
    return SampleRegion.ball(n, radius=args.radius)


def _config(args) -> SampleConfig:
    return SampleConfig(
        samples_per_level=args.samples,
        seed=args.seed if args.seed is not None else default_seed(),
        ladder_depth=args.depth,
    )


# -- commands ----------------------------------------------------------------


def cmd_rlct(args) -> CommandResult:
    model = _read_model(args.model)
    cmp = compare(model)
    payload = {
        "rlct": rational_to_str(cmp.rlct),
        "lct": rational_to_str(cmp.lct),
        "ordered": cmp.ordered,
    }
    return CommandResult(
        "ok",
        payload,
        [
            "lct is the minimum over the listed divisors; it equals the complex "
            "threshold only when the model lists a full complex resolution"
        ],
    )


def cmd_jumps(args) -> CommandResult:
    model = _read_model(args.model)
    bound = rational_from_str(args.bound)
    if not isinstance(bound, Fraction):
        raise ValueError("--bound must be a finite rational p/q")
    report = real_jumping_numbers(model, bound, args.box_bound)
    diags = []
    if not model.real_divisors:
        diags.append("model has no divisors with real points; rlct is infinite")
    return CommandResult("ok", report.to_json_dict(), diags)


def _family_params(args) -> dict:
    params = {}
    for key in ("n", "d", "d1", "e", "c"):
        value = getattr(args, key)
        if value is not None:
            params[key] = value
    if args.m is not None:
        try:
            params["m"] = tuple(int(part) for part in args.m.split(","))
        except ValueError:
            raise ValueError(f"--m expects comma-separated integers, got {args.m!r}") from None
    return params


def _bundle_json(name: str, params: dict, fixture: FamilyFixture, bound: Fraction | None) -> dict:
    expected: dict = {"rlct": rational_to_str(fixture.expected_rlct)}
    if fixture.expected_lct is not None:
        expected["lct"] = rational_to_str(fixture.expected_lct)
        expected["lct_is_exact"] = fixture.lct_exact
    if fixture.expected_rjn is not None and bound is not None:
        expected["jumps"] = [rational_to_str(v) for v in fixture.expected_rjn(bound)]
    return {
        "family": name,
        "params": {k: (list(v) if isinstance(v, tuple) else v) for k, v in params.items()},
        "model": fixture.model.to_json_dict(),
        "poly": None if fixture.f is None else fixture.f.to_json_dict(),
        "expected": expected,
        "notes": fixture.notes,
    }


def cmd_family(args) -> CommandResult:
    params = _family_params(args)
    fixture = build_family(args.name, params)
    bound = None
    if args.bound is not None:
        bound = rational_from_str(args.bound)
        if not isinstance(bound, Fraction):
            raise ValueError("--bound must be a finite rational p/q")
    if args.emit == "model":
        return CommandResult("ok", fixture.model.to_json_dict(), [])
    if args.emit == "poly":
        if fixture.f is None:
            raise ValueError(
                f"family {args.name!r} carries no polynomial instance; emit the model instead"
            )
        return CommandResult("ok", fixture.f.to_json_dict(), [])
    return CommandResult("ok", _bundle_json(args.name, params, fixture, bound), [])


def cmd_estimate(args) -> CommandResult:
    f = _read_poly(args.poly)
    config = _config(args)
    est = estimate_rlct(f, _region(args, f.n), config)
    diags = [f"seed: {config.seed}"]
    if est.warning:
        diags.append(est.warning)
    status = "ok" if est.conclusive else "inconclusive"
    return CommandResult(status, _estimate_json(est), diags)


def cmd_check(args) -> CommandResult:
    g = _read_poly(args.g)
    f = _read_poly(args.poly)
    alpha = rational_from_str(args.alpha)
    if not isinstance(alpha, Fraction):
        raise ValueError("--alpha must be a finite rational p/q")
    config = _config(args)
    verdict = check_integrability(g, f, alpha, _region(args, f.n), config)
    status = "ok" if verdict.status != "Inconclusive" else "inconclusive"
    return CommandResult(status, _verdict_json(verdict), [f"seed: {config.seed}"])


def cmd_reduce(args) -> CommandResult:
    gens = [_read_poly(path) for path in args.generators]
    combined = sum_of_squares(gens)
    payload = {
        "poly": combined.to_json_dict(),
        "generators": len(gens),
        "contract": (
            "thresholds of the ideal generated by the inputs equal twice the "
            "thresholds of this polynomial; query the ideal at alpha by querying "
            "this polynomial at alpha/2"
        ),
    }
    return CommandResult("ok", payload, [])


def cmd_verify(args) -> CommandResult:
    params = _family_params(args)
    fixture = build_family(args.name, params)
    if fixture.f is None:
        raise ValueError(
            f"family {args.name!r} carries no polynomial instance to sample; "
            "verify a family with a concrete polynomial (quartic-sextic, say)"
        )
    config = _config(args)
    chain = verify_threshold_chain(fixture.f, fixture.model, _region(args, fixture.f.n), config)
    payload = {
        "p_hat": _nan_to_null(chain.p_hat),
        "rlct": rational_to_str(chain.rlct_exact),
        "lct": rational_to_str(chain.lct_exact),
        "chain_ok": chain.chain_ok,
        "tol": _nan_to_null(chain.tol),
        "estimate": _estimate_json(chain.estimate),
    }
    diags = [f"seed: {config.seed}"]
    if chain.estimate.warning:
        diags.append(chain.estimate.warning)
    if not chain.estimate.conclusive:
        return CommandResult("inconclusive", payload, diags)
    if not chain.chain_ok:
        diags.append("threshold chain violated: estimate is not within tolerance of rlct >= lct")
        return CommandResult("error", payload, diags)
    return CommandResult("ok", payload, diags)


# -- wiring ------------------------------------------------------------------


def _add_sampling_flags(sub) -> None:
    sub.add_argument("--region", choices=("ball", "box"), default="ball",
                     help="sample in a ball or a box centered at the origin")
    sub.add_argument("--radius", type=float, default=1.0,
                     help="ball radius, or box halfwidth")
    sub.add_argument("--samples", type=int, default=10**6, help="samples per ladder level")
    sub.add_argument("--seed", type=int, default=None,
                     help="sampling seed (default: RLCTKIT_SEED or 7)")
    sub.add_argument("--depth", type=int, default=12, help="dyadic ladder depth")


def _add_family_flags(sub) -> None:
    sub.add_argument("name", choices=sorted(FAMILY_PARAMS),
                     help="family to construct")
    sub.add_argument("--n", type=int, help="ambient dimension")
    sub.add_argument("--d", type=int, help="degree (simple-type)")
    sub.add_argument("--d1", type=int, help="leading degree (deformed-power)")
    sub.add_argument("--e", type=int, help="power of the definite form (deformed-power)")
    sub.add_argument("--c", type=int, help="degree gap of the deformation (deformed-power)")
    sub.add_argument("--m", help="comma-separated exponents (monomial), e.g. 2,3")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rlctkit",
        description="Exact real log canonical thresholds, jumping numbers, and a Monte-Carlo oracle.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rlct", help="thresholds of a resolution model")
    p.add_argument("--model", required=True, help="path to a model JSON file")
    p.set_defaults(handler=cmd_rlct)

    p = sub.add_parser("jumps", help="real jumping numbers with witnesses")
    p.add_argument("--model", required=True, help="path to a model JSON file")
    p.add_argument("--bound", required=True, help="enumerate jumps up to this rational, e.g. 3/1")
    p.add_argument("--box-bound", type=int, default=None,
                   help="witness exponent box bound (default: derived from the bound)")
    p.set_defaults(handler=cmd_jumps)

    p = sub.add_parser("family", help="emit a fixture family as JSON")
    _add_family_flags(p)
    p.add_argument("--emit", choices=("model", "poly", "bundle"), default="bundle")
    p.add_argument("--bound", default=None,
                   help="include expected jumps up to this rational in the bundle")
    p.set_defaults(handler=cmd_family)

    p = sub.add_parser("estimate", help="Monte-Carlo decay exponent of a polynomial")
    p.add_argument("--poly", required=True, help="path to a polynomial JSON file")
    _add_sampling_flags(p)
    p.set_defaults(handler=cmd_estimate)

    p = sub.add_parser("check", help="integrability of |g| |f|^-alpha")
    p.add_argument("--g", required=True, help="path to the numerator polynomial JSON")
    p.add_argument("--poly", required=True, help="path to the denominator polynomial JSON")
    p.add_argument("--alpha", required=True, help="exponent as a rational p/q")
    _add_sampling_flags(p)
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("reduce", help="sum of squares of ideal generators")
    p.add_argument("generators", nargs="+", help="paths to generator polynomial JSON files")
    p.set_defaults(handler=cmd_reduce)

    p = sub.add_parser("verify", help="cross-check a fixture's thresholds numerically")
    _add_family_flags(p)
    _add_sampling_flags(p)
    p.set_defaults(handler=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, which would collide with the
        # inconclusive exit code; remap to the error code.
        return 0 if exc.code == 0 else 1
    try:
        result = args.handler(args)
    except (SchemaError, InvalidModelError, UnsupportedModelError, ValueError, OSError) as exc:
        result = CommandResult("error", None, [f"{type(exc).__name__}: {exc}"])
    if result.payload is not None:
        print(json.dumps(result.payload, sort_keys=True, indent=2, allow_nan=False))
    for line in result.diagnostics:
        print(line, file=sys.stderr)
    return result.exit_code


def run() -> None:
    sys.exit(main())
