"""Command line front end: ``ggcs <subcommand> [options]``.

Exit status: 0 when every pass/fail check passes (info records never fail a
run), 1 when some check fails, 2 on configuration or parse errors.
"""
from __future__ import annotations

import argparse
import math
import sys
from dataclasses import asdict, dataclass, fields
from pathlib import Path

from . import __version__
from .coherent import (
    UnsolvableWeightError,
    build_coherent,
    closed_form_weights,
    compare_weights,
    solve_unity_weight,
    verify_eigenstate,
    verify_exp_form,
    verify_unity,
)
from .expr import ExpressionError
from .fock import build_rep, check_relations, mode_conjugation_residual
from .grassmann import RuleSet, conjugation_consistency, kerner_cyclic_nilpotency
from .mixed import MixedAlgebra, engine_laws
from .report import EXACT_ZERO, FAIL, INFO, PASS, CheckRecord, Report, scalar_json
from .scalars import EXACT, FLOAT, MODES
from .structure import PRESETS, StructureError, StructureFunction, make_structure, rho_table, validate

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    import tomli as tomllib

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2
SUBCOMMANDS = ("rho", "check-algebra", "coherent", "unity", "eval", "all")
VARIANTS = ("majid", "kerner")
FORMATS = ("text", "json")


class ConfigError(ValueError):
    pass


@dataclass
class JobConfig:
    k: int | None = None
    deformation: str = "arik-coon"
    rho_expr: str | None = None
    q_exponent: int = 1
    variant: str = "majid"
    mode: str = EXACT
    format: str = "text"
    output: str | None = None

    def validate(self) -> None:
        if self.rho_expr is not None:
            self.deformation = "custom"
        elif self.deformation not in PRESETS:
            # anything else is a custom expression in n and q
            self.rho_expr, self.deformation = self.deformation, "custom"
        if self.k is None:
            if self.deformation != "ordinary":
                raise ConfigError("k is required")
            self.k = 2
        if not isinstance(self.k, int) or self.k < 2:
            raise ConfigError(f"k must be an integer >= 2, got {self.k!r}")
        if self.deformation == "ordinary" and self.k != 2:
            raise ConfigError("the ordinary deformation requires k = 2")
        if not isinstance(self.q_exponent, int) or math.gcd(self.q_exponent, self.k) != 1:
            raise ConfigError(f"q-exponent {self.q_exponent!r} must be an integer coprime to k = {self.k}")
        for name, value, allowed in (
            ("variant", self.variant, VARIANTS),
            ("mode", self.mode, MODES),
            ("format", self.format, FORMATS),
        ):
            if value not in allowed:
                raise ConfigError(f"{name} must be one of {', '.join(allowed)}; got {value!r}")

    def structure(self) -> StructureFunction:
        return make_structure(self.k, self.deformation, self.q_exponent, self.rho_expr)

    def job(self) -> dict:
        d = asdict(self)
        d.pop("output")
        return d


_KEYS = {f.name for f in fields(JobConfig)}


def load_config_file(path: str) -> dict:
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except OSError as err:
        raise ConfigError(f"cannot read config file {path}: {err.strerror}") from None
    except tomllib.TOMLDecodeError as err:
        raise ConfigError(f"config file {path}: {err}") from None
    out = {}
    for key, value in data.items():
        name = key.replace("-", "_")
        if name not in _KEYS:
            raise ConfigError(f"config file {path}: unknown key {key!r}")
        out[name] = value
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=int, help="nilpotency degree (>= 2)")
    common.add_argument("--deformation", help=f"preset ({', '.join(PRESETS)}) or a custom rho expression")
    common.add_argument("--rho-expr", help="custom rho_n expression in n and q")
    common.add_argument("--q-exponent", type=int, help="q = exp(2 pi i r / k), r coprime to k")
    common.add_argument("--variant", choices=VARIANTS)
    common.add_argument("--mode", choices=MODES)
    common.add_argument("--format", choices=FORMATS)
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--config", help="TOML file whose keys mirror the flags")

    parser = argparse.ArgumentParser(prog="ggcs", description="Verify deformed fermion algebras and Grassmann coherent states.")
    parser.add_argument("--version", action="version", version=f"ggcs {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "rho": "structure function table and validation",
        "check-algebra": "Fock representation relation checks",
        "coherent": "coherent state, eigenstate and exponential-form checks",
        "unity": "resolution-of-unity weight: solve, verify, compare",
        "eval": "evaluate an algebra expression to canonical form",
        "all": "every suite",
    }
    for name in SUBCOMMANDS:
        p = sub.add_parser(name, parents=[common], help=helps[name])
        if name == "eval":
            p.add_argument("expression")
    return parser


def resolve_config(args: argparse.Namespace) -> JobConfig:
    values = {}
    if args.config:
        values.update(load_config_file(args.config))
    for name in _KEYS:
        v = getattr(args, name, None)
        if v is not None:
            values[name] = v
    cfg = JobConfig(**values)
    cfg.validate()
    return cfg


# -- suites -------------------------------------------------------------------


def _structure_suite(cfg: JobConfig, sf: StructureFunction, report: Report) -> bool:
    entries = validate(sf).entries
    ids = ("rho0-zero", "rhok-zero", "interior-nonzero")
    for cid, (name, ok, detail) in zip(ids, entries):
        report.add(CheckRecord(f"structure:{cid}", PASS if ok else FAIL, EXACT, None, f"{name}: {detail}"))
    report.artifacts["rho"] = rho_table(sf)
    return all(ok for _, ok, _ in entries)


def _require_valid(sf: StructureFunction, report: Report) -> bool:
    rep = validate(sf)
    if rep.ok:
        return True
    report.add(CheckRecord("structure:valid", FAIL, EXACT, None, "; ".join(rep.failures())))
    return False


def _algebra_suite(cfg: JobConfig, sf: StructureFunction, report: Report) -> None:
    rep = build_rep(sf, cfg.mode)
    for r in check_relations(rep).results:
        exact_zero = cfg.mode == EXACT and r.passed
        report.add(
            CheckRecord(
                f"fock:{r.name}",
                PASS if r.passed else FAIL,
                cfg.mode,
                EXACT_ZERO if exact_zero else r.max_residual,
                r.relation,
            )
        )


def _mode_equivalence(sf: StructureFunction, report: Report) -> None:
    worst = mode_conjugation_residual(build_rep(sf, EXACT), build_rep(sf, FLOAT))
    report.add(
        CheckRecord("fock:mode-equivalence", PASS if worst <= 1e-10 else FAIL, FLOAT, worst, "diag(sqrt(rho_n!)) conjugation")
    )


def _rule_info(cfg: JobConfig, sf: StructureFunction, report: Report) -> None:
    rules = RuleSet.for_variant(cfg.variant, sf.k, sf.q)
    for name, ok, detail in conjugation_consistency(rules):
        report.add(CheckRecord(f"rules:conjugation:{name.replace(' ', '-')}", INFO, EXACT, None, ("consistent: " if ok else "inconsistent: ") + detail))
    if rules.adopted:
        report.add(CheckRecord("rules:adopted", INFO, EXACT, None, "; ".join(sorted(rules.adopted))))
    if cfg.variant == "kerner":
        factor, inv = kerner_cyclic_nilpotency(rules)
        report.add(
            CheckRecord(
                "rules:cyclic-nilpotency",
                PASS if inv else FAIL,
                EXACT,
                EXACT_ZERO if inv else None,
                f"xi^k = q xi^k with 1 - q = {factor.format('zeta')} invertible, so xi^k = 0",
            )
        )


def _coherent_suite(cfg: JobConfig, sf: StructureFunction, report: Report):
    state = build_coherent(sf, cfg.variant, cfg.mode)
    report.add(CheckRecord.from_residual(verify_eigenstate(state), "coherent:eigenstate"))
    for res in verify_exp_form(state):
        report.add(CheckRecord.from_residual(res, f"coherent:{res.name}"))
    report.artifacts["alpha"] = [scalar_json(c, sf.q) for c in state.alpha]
    return state


def _unity_suite(cfg: JobConfig, sf: StructureFunction, report: Report, state=None) -> None:
    if state is None:
        state = build_coherent(sf, cfg.variant, cfg.mode)
    try:
        weight = solve_unity_weight(sf, cfg.variant, cfg.mode, state=state)
    except UnsolvableWeightError as err:
        report.add(CheckRecord("unity:solve", FAIL, cfg.mode, None, str(err)))
        return
    diag = weight.diagnostics
    report.add(
        CheckRecord(
            "unity:diagonal",
            PASS if diag["diagonal"] else FAIL,
            cfg.mode,
            None,
            "only entries with l = p = k-1-n survive" if diag["diagonal"] else f"stray entries {diag['stray_entries']}",
        )
    )
    report.add(CheckRecord.from_residual(verify_unity(weight, state), "unity:verify"))
    report.artifacts["weight_solved"] = [scalar_json(c, sf.q) for c in weight.coeffs]
    comparisons = {}
    for closed in closed_form_weights(sf, cfg.variant, cfg.mode):
        cmp = compare_weights(weight, closed)
        key = closed.label.replace(" ", "-")
        report.add(
            CheckRecord(
                f"unity:compare:{key}",
                INFO,
                cfg.mode,
                None,
                f"{cmp.verdict}; matching n = {list(cmp.matching)}",
            )
        )
        comparisons[key] = {
            "verdict": cmp.verdict,
            "closed": [scalar_json(c, sf.q) for c in closed.coeffs],
            "ratios": [scalar_json(r, sf.q) for r in cmp.ratios],
            "matching": list(cmp.matching),
        }
    if comparisons:
        report.artifacts["weight_comparison"] = comparisons


def _law_suite(cfg: JobConfig, sf: StructureFunction, report: Report) -> None:
    alg = MixedAlgebra(RuleSet.for_variant(cfg.variant, sf.k, sf.q), EXACT)
    for name, ok, detail in engine_laws(alg, samples=50):
        # kerner rules are not dagger compatible; their dagger laws are reported only
        status = INFO if cfg.variant == "kerner" and name.startswith("dagger") else (PASS if ok else FAIL)
        report.add(CheckRecord(f"laws:{name}", status, EXACT, EXACT_ZERO if ok else None, detail))


def _cross_variant(cfg: JobConfig, sf: StructureFunction, report: Report) -> None:
    a = build_coherent(sf, "majid", cfg.mode).alpha
    b = build_coherent(sf, "kerner", cfg.mode).alpha
    if cfg.mode == EXACT:
        ok = a == b
        res = EXACT_ZERO if ok else None
    else:
        res = max(abs(x - y) for x, y in zip(a, b))
        ok = res <= 1e-12
    report.add(CheckRecord("coherent:cross-variant", PASS if ok else FAIL, cfg.mode, res, "majid and kerner alpha_n coincide"))


def _eval(cfg: JobConfig, sf: StructureFunction, text: str, report: Report) -> None:
    from .dsl import evaluate_expression, format_element

    rules = RuleSet.for_variant(cfg.variant, sf.k, sf.q)
    alg = MixedAlgebra(rules, cfg.mode, build_rep(sf, cfg.mode))
    parsed = evaluate_expression(text, alg)
    for i, note in enumerate(parsed.notes):
        report.add(CheckRecord(f"eval:note{i}", INFO, cfg.mode, None, note))
    canonical = format_element(parsed.element)
    report.add(CheckRecord("eval:result", INFO, cfg.mode, None, canonical))
    report.artifacts["expression"] = text
    report.artifacts["canonical"] = canonical


def run(command: str, cfg: JobConfig, expression: str | None = None) -> Report:
    """Execute a subcommand; configuration and parse errors propagate."""
    sf = cfg.structure()
    job = cfg.job()
    job["command"] = command
    if expression is not None:
        job["expression"] = expression
    report = Report(job, __version__)
    if command == "rho":
        _structure_suite(cfg, sf, report)
        return report
    if command == "all":
        if not _structure_suite(cfg, sf, report):
            return report
    elif not _require_valid(sf, report):
        return report
    if command == "eval":
        _eval(cfg, sf, expression, report)
    elif command == "check-algebra":
        _algebra_suite(cfg, sf, report)
    elif command == "coherent":
        _rule_info(cfg, sf, report)
        _coherent_suite(cfg, sf, report)
    elif command == "unity":
        _unity_suite(cfg, sf, report)
    elif command == "all":
        _algebra_suite(cfg, sf, report)
        _mode_equivalence(sf, report)
        _rule_info(cfg, sf, report)
        _law_suite(cfg, sf, report)
        state = _coherent_suite(cfg, sf, report)
        _cross_variant(cfg, sf, report)
        _unity_suite(cfg, sf, report, state)
    else:
        raise ConfigError(f"unknown subcommand {command!r}")
    return report


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 for --help/--version
        return int(exc.code or 0)
    try:
        cfg = resolve_config(args)
        report = run(args.command, cfg, getattr(args, "expression", None))
    except ExpressionError as err:
        print(f"ggcs: parse error at line {err.line}, column {err.column}: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except (ConfigError, StructureError) as err:
        print(f"ggcs: {err}", file=sys.stderr)
        return EXIT_CONFIG
    text = report.to_json() if cfg.format == "json" else report.to_text()
    if cfg.output:
        Path(cfg.output).write_text(text + "\n")
    else:
        print(text)
    return EXIT_FAIL if report.failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
