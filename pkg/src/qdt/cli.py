"""Command line interface.

Verbs: ``eval``, ``sequence``, ``behavioral``, ``sample``, ``audit``,
``validate``.  All verbs share ``--scenario``, ``--format``, ``--seed``,
``--tolerance`` and ``--out``.  Reports go to standard output (or are
written atomically to ``--out``); diagnostics go to standard error.

Exit codes: 0 success, 2 scenario/validation error, 3 runtime error
(vanishing-probability conditioning, incomplete measure), 4 audit
counterexample.
"""

from __future__ import annotations

import argparse
import sys

from .errors import (
    DimensionError,
    HermiticityError,
    IncompleteMeasureError,
    InvariantError,
    NormalizationError,
    ScenarioSyntaxError,
    SchemaError,
    UnitarityError,
    ZeroProbabilityConditioning,
)
from .report import FORMATS, ProbabilityReport, write_atomic
from .runners import (
    SAMPLE_PROTOCOLS,
    run_behavioral,
    run_eval,
    run_sample,
    run_sequence,
    run_symmetry_audit,
)
from .scenario import load_scenario

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_RUNTIME = 3
EXIT_AUDIT = 4

_VALIDATION_ERRORS = (
    ScenarioSyntaxError,
    SchemaError,
    InvariantError,
    NormalizationError,
    DimensionError,
    HermiticityError,
    UnitarityError,
)
_RUNTIME_ERRORS = (ZeroProbabilityConditioning, IncompleteMeasureError)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qdt",
        description="Quantum decision-theory engine: evaluate scenario files, "
        "run sequential and behavioral choices, sample cohorts, audit identities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_shared(p: argparse.ArgumentParser) -> None:
        p.add_argument("--scenario", required=True, help="path to a scenario JSON file")
        p.add_argument("--format", choices=FORMATS, default="table", help="output format")
        p.add_argument("--seed", type=int, default=None, help="override the scenario seed")
        p.add_argument(
            "--tolerance", type=float, default=None, help="override the structural tolerance"
        )
        p.add_argument("--out", default=None, help="write output to this path (atomic)")

    p = sub.add_parser("eval", help="single-choice probabilities (and decomposition)")
    add_shared(p)

    p = sub.add_parser("sequence", help="joint/conditional probabilities for a pair")
    add_shared(p)
    p.add_argument("--first", required=True, help="label of the first choice")
    p.add_argument("--second", required=True, help="label of the second choice")

    p = sub.add_parser("behavioral", help="joint/conditional prospect probabilities")
    add_shared(p)
    p.add_argument("--first", required=True, help="label of the first prospect")
    p.add_argument("--second", required=True, help="label of the second prospect")

    p = sub.add_parser("sample", help="Monte-Carlo cohort frequencies")
    add_shared(p)
    p.add_argument("--n", type=int, default=10000, help="number of decision makers")
    p.add_argument(
        "--protocol", choices=SAMPLE_PROTOCOLS, default="single", help="sampling protocol"
    )

    p = sub.add_parser("audit", help="randomized audit of all identities")
    add_shared(p)
    p.add_argument("--trials", type=int, default=1000, help="number of random trials")

    p = sub.add_parser("validate", help="parse and validate a scenario file")
    add_shared(p)
    return parser


def _emit(report: ProbabilityReport, fmt: str, out: str | None) -> None:
    text = report.render(fmt)
    if out is None:
        sys.stdout.write(text)
    else:
        write_atomic(out, text)
        print(f"wrote {out}", file=sys.stderr)


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        scenario = load_scenario(args.scenario).with_overrides(
            seed=args.seed, structural_tol=args.tolerance
        )
    except OSError as exc:
        print(f"error: cannot read scenario: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except _VALIDATION_ERRORS as exc:
        print(f"error: invalid scenario: {exc}", file=sys.stderr)
        return EXIT_VALIDATION

    try:
        if args.command == "validate":
            report = ProbabilityReport(
                kind="validate",
                sections={
                    "scenario": {
                        "ambient_dim": scenario.ambient_dim,
                        "alternatives": list(scenario.alternative_labels),
                        "second_basis": list(scenario.second_labels or []),
                        "behavioral": scenario.is_behavioral,
                        "decision_dim": scenario.decision_dim,
                        "state_kind": scenario.state_kind,
                        "evolution_kind": scenario.evolution_kind,
                        "valid": True,
                    }
                },
                metadata={"seed": scenario.seed},
            )
        elif args.command == "eval":
            report = run_eval(scenario)
        elif args.command == "sequence":
            report = run_sequence(scenario, args.first, args.second)
        elif args.command == "behavioral":
            report = run_behavioral(scenario, args.first, args.second)
        elif args.command == "sample":
            report = run_sample(scenario, args.n, args.protocol)
        else:  # audit
            report = run_symmetry_audit(scenario, args.trials)
    except _RUNTIME_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except (IndexError,) + _VALIDATION_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION

    _emit(report, args.format, args.out)
    if args.command == "audit" and not report.sections["summary"]["passed"]:
        print("audit failed: see identities/witnesses in the report", file=sys.stderr)
        return EXIT_AUDIT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
