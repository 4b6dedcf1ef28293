"""Command-line front end: seeded experiment runner with reproducible
JSON/CSV reports.

Subcommands: sample, check, survey, bounds, classical, reproduce.
Exit codes are a stable contract: 0 success / positive finding, 1 usage
error, 2 negative finding (NON_UNIQUE, DEGENERATE, rejected input),
3 inconclusive. Reports echo the fully resolved configuration and keep all
wall-clock data under the "timings" key so that payloads are byte-stable
for a fixed seed.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
import time

import numpy as np

from . import bounds as bounds_mod
from . import classical as classical_mod
from .feasibility import (
    INCONCLUSIVE,
    NON_UNIQUE,
    UNIQUE,
    ProjectionConfig,
    constraint_nullspace,
    genericity_survey,
    uniqueness_probe,
)
from .tensor import (
    AmplitudeTensor,
    PartySignature,
    SeededRng,
    coarse_grain,
    haar_random_state,
    partial_trace_matrix,
    to_density,
)
from .uniqueness import (
    UNIQUE_LINEAR,
    build_consistency_matrix,
    check_linear_uniqueness,
    identity_pattern_vector,
    party_split,
)

STATE_SCHEMA = "qmarginal/state-v1"
REPORT_SCHEMA = "qmarginal/report-v1"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NEGATIVE = 2
EXIT_INCONCLUSIVE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); keep exit codes ours
        raise UsageError(message)


# ---------------------------------------------------------------------------
# State file format
# ---------------------------------------------------------------------------

def state_to_json(state: AmplitudeTensor) -> str:
    amps = state.vector()
    return json.dumps({
        "schema": STATE_SCHEMA,
        "dims": list(state.signature.dims),
        "amplitudes": [[float(a.real), float(a.imag)] for a in amps],
    }, sort_keys=True, indent=2) + "\n"


def state_from_json(text: str) -> AmplitudeTensor:
    data = json.loads(text)
    if data.get("schema") != STATE_SCHEMA:
        raise UsageError(f"unsupported state schema {data.get('schema')!r}")
    dims = data["dims"]
    amps = np.array([complex(re, im) for re, im in data["amplitudes"]])
    return AmplitudeTensor.from_vector(amps, dims)


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

def _parse_subsets(text: str, n_parties: int) -> list[tuple[int, ...]]:
    """Parse comma-separated index groups, e.g. "01,02,12" or "0-10,2-3"."""
    groups = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            raise UsageError(f"empty subset in {text!r}")
        parts = chunk.split("-") if "-" in chunk else list(chunk)
        try:
            idx = tuple(sorted(int(p) for p in parts))
        except ValueError:
            raise UsageError(f"malformed subset {chunk!r}") from None
        if len(set(idx)) != len(idx):
            raise UsageError(f"repeated party in subset {chunk!r}")
        if idx and (idx[0] < 0 or idx[-1] >= n_parties):
            raise UsageError(f"subset {chunk!r} out of range for {n_parties} parties")
        groups.append(idx)
    if not groups:
        raise UsageError("no subsets given")
    return groups


def _parse_range(text: str, name: str) -> list[int]:
    """Parse "7" or "2:10" (inclusive)."""
    try:
        if ":" in text:
            lo, hi = text.split(":")
            lo, hi = int(lo), int(hi)
            if lo > hi:
                raise ValueError
            return list(range(lo, hi + 1))
        return [int(text)]
    except ValueError:
        raise UsageError(f"malformed {name} range {text!r}") from None


def _matrix_payload(matrix: np.ndarray) -> list[list[list[float]]]:
    return [[[float(x.real), float(x.imag)] for x in row] for row in matrix]


def _emit(report: dict, fmt: str, out_path: str | None,
          csv_rows=None, csv_header=None) -> None:
    if fmt == "csv":
        if csv_rows is None:
            raise UsageError("--format csv is only available for tabular reports")
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(csv_header)
        writer.writerows(csv_rows)
        text = buf.getvalue()
    else:
        text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report(command: str, config: dict, results: dict, started: float) -> dict:
    return {
        "schema": REPORT_SCHEMA,
        "command": command,
        "config": config,
        "results": results,
        "timings": {"wall_seconds": time.perf_counter() - started},
    }


def _projection_config(args, seed: int) -> ProjectionConfig:
    return ProjectionConfig(
        max_iterations=args.max_iter,
        convergence_tol=args.tol_converge,
        seed=seed,
    )


def _load_state(args) -> AmplitudeTensor:
    if args.state:
        with open(args.state) as fh:
            return state_from_json(fh.read())
    if args.n is None or args.d is None or args.seed is None:
        raise UsageError("need --state or all of --n/--d/--seed")
    sig = PartySignature([args.d] * args.n)
    return haar_random_state(sig, SeededRng(args.seed))


def _ghz_state(n: int, a: float = None) -> AmplitudeTensor:
    amp = 1 / np.sqrt(2) if a is None else a
    vec = np.zeros(2 ** n, dtype=complex)
    vec[0] = amp
    vec[-1] = np.sqrt(1 - abs(amp) ** 2)
    return AmplitudeTensor.from_vector(vec, [2] * n)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_sample(args) -> int:
    if args.n is None or args.d is None or args.seed is None:
        raise UsageError("sample needs --n, --d and --seed")
    sig = PartySignature([args.d] * args.n)
    state = haar_random_state(sig, SeededRng(args.seed))
    text = state_to_json(state)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_check(args) -> int:
    started = time.perf_counter()
    state = _load_state(args)
    results: dict = {}
    codes = []

    if args.mode in ("linear", "both"):
        if state.signature.n_parties == 3:
            tri = state
        elif args.m is not None:
            n_parties = state.signature.n_parties
            if n_parties != 3 * args.m + 1:
                raise UsageError(
                    f"--m {args.m} needs {3 * args.m + 1} parties, state has {n_parties}")
            if not state.signature.is_uniform():
                raise UsageError("--m split requires equal local dimensions")
            split = party_split(args.m, state.signature.dims[0])
            tri = coarse_grain(state, (args.m + 1, args.m, args.m))
            assert tri.signature.dims == (split.shape.M, split.shape.N, split.shape.P)
        else:
            raise UsageError(
                "mode=linear needs a tripartite state or --m to group parties")
        verdict = check_linear_uniqueness(tri, rank_rtol=args.tol_rank)
        results["linear"] = {
            "shape": list(tri.signature.dims),
            "verdict": verdict.verdict,
            "null_dim": verdict.null_dim,
            "identity_pattern_match": verdict.identity_pattern_match,
            "identity_pattern_residual": verdict.residual,
        }
        codes.append(EXIT_OK if verdict.verdict == UNIQUE_LINEAR else EXIT_NEGATIVE)

    if args.mode in ("oracle", "both"):
        if not args.subsets:
            raise UsageError("mode=oracle needs --subsets")
        subsets = _parse_subsets(args.subsets, state.signature.n_parties)
        config = _projection_config(args, args.seed if args.seed is not None else 0)
        verdict = uniqueness_probe(state, subsets, config)
        oracle = {
            "subsets": [list(s) for s in subsets],
            "verdict": verdict.verdict,
            "max_marginal_residual": verdict.max_marginal_residual,
            "pairwise_distances": list(verdict.pairwise_distances),
            "runs": [
                {"outcome": r.outcome, "converged": r.converged,
                 "iterations": r.iterations, "distance": r.distance}
                for r in verdict.runs
            ],
        }
        if verdict.verdict == NON_UNIQUE:
            oracle["witnesses"] = [_matrix_payload(w.matrix) for w in verdict.witnesses[1:]]
        results["oracle"] = oracle
        codes.append({UNIQUE: EXIT_OK, NON_UNIQUE: EXIT_NEGATIVE,
                      INCONCLUSIVE: EXIT_INCONCLUSIVE}[verdict.verdict])

    config_echo = {
        "mode": args.mode, "state": args.state, "n": args.n, "d": args.d,
        "m": args.m, "seed": args.seed, "subsets": args.subsets,
        "tol_rank": args.tol_rank, "tol_converge": args.tol_converge,
        "max_iter": args.max_iter,
    }
    _emit(_report("check", config_echo, results, started), args.format, args.out)
    if EXIT_NEGATIVE in codes:
        return EXIT_NEGATIVE
    if EXIT_INCONCLUSIVE in codes:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_survey(args) -> int:
    started = time.perf_counter()
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    sig = PartySignature([args.d] * args.n)
    subsets = _parse_subsets(args.subsets, args.n)
    config = _projection_config(args, args.seed)
    stats = genericity_survey(sig, subsets, args.trials, config)
    results = {
        "n": args.n, "d": args.d,
        "subsets": [list(s) for s in stats.subsets],
        "trials": stats.trials,
        "verdicts": list(stats.verdicts),
        "unique_fraction": stats.unique_fraction,
        "non_unique_fraction": stats.non_unique_fraction,
        "inconclusive_fraction": stats.inconclusive_fraction,
    }
    report = _report("survey", {
        "n": args.n, "d": args.d, "subsets": args.subsets, "trials": args.trials,
        "seed": args.seed, "tol_converge": args.tol_converge, "max_iter": args.max_iter,
    }, results, started)
    report["timings"]["trial_seconds"] = list(stats.runtimes)
    csv_rows = [[i, v] for i, v in enumerate(stats.verdicts)]
    _emit(report, args.format, args.out, csv_rows, ["trial", "verdict"])
    return EXIT_OK


def cmd_bounds(args) -> int:
    started = time.perf_counter()
    d_values = _parse_range(args.d, "--d")
    n_values = _parse_range(args.n, "--n") if args.n else list(range(1, 11))
    if any(d < 2 for d in d_values):
        raise UsageError("--d values must be >= 2")
    if any(n < 1 for n in n_values):
        raise UsageError("--n values must be >= 1")
    table = []
    for d in d_values:
        for n in n_values:
            for row in bounds_mod.bounds_rows(n, d):
                table.append({
                    "n": row.n, "d": row.d, "k": row.k,
                    "reduced_param_count": str(row.reduced_param_count),
                    "pure_param_count": str(row.pure_param_count),
                    "sufficient_by_count": row.sufficient_by_count,
                })
    alphas = []
    for d in d_values:
        sol = bounds_mod.solve_alpha_lower(d)
        alphas.append({"d": d, "alpha": sol.alpha, "residual": sol.residual,
                       "bracket": list(sol.bracket)})
    upper = [
        {"m": r["m"], "total_parties": r["total_parties"],
         "marginal_order": r["marginal_order"],
         "fraction": str(r["fraction"]), "fraction_float": float(r["fraction"])}
        for r in bounds_mod.alpha_upper_table(args.m_max, d_values[0])
    ]
    results = {"counting_table": table, "alpha_lower": alphas, "alpha_upper": upper}
    report = _report("bounds", {
        "d": args.d, "n": args.n, "m_max": args.m_max,
    }, results, started)
    csv_rows = [[r["n"], r["d"], r["k"], r["reduced_param_count"],
                 r["pure_param_count"], r["sufficient_by_count"]] for r in table]
    _emit(report, args.format, args.out, csv_rows,
          ["n", "d", "k", "reduced_param_count", "pure_param_count", "sufficient"])
    return EXIT_OK


def cmd_classical(args) -> int:
    started = time.perf_counter()
    if args.epsilon is None:
        raise UsageError("classical needs --epsilon")
    rng = SeededRng(args.seed)
    config_echo = {"n": args.n, "d": args.d, "epsilon": args.epsilon, "seed": args.seed}
    try:
        p, q = classical_mod.counterexample_pair(args.n, args.d, args.epsilon, rng)
    except classical_mod.EpsilonTooLargeError as exc:
        results = {"rejected": True, "max_admissible_epsilon": exc.max_admissible}
        _emit(_report("classical", config_echo, results, started), args.format, args.out)
        return EXIT_NEGATIVE
    worst = 0.0
    n = args.n
    for keep in itertools.combinations(range(n), n - 1) if n > 1 else [(0,)]:
        mp = classical_mod.classical_marginal(p, keep).probabilities
        mq = classical_mod.classical_marginal(q, keep).probabilities
        worst = max(worst, float(np.abs(mp - mq).max()))
    results = {
        "rejected": False,
        "max_marginal_difference": worst,
        "l1_distance": float(np.abs(p.probabilities - q.probabilities).sum()),
        "deviation_l1": float(np.abs(classical_mod.alternating_deviation(n, args.d)).sum()),
        "p": p.probabilities.reshape(-1).tolist(),
        "q": q.probabilities.reshape(-1).tolist(),
    }
    _emit(_report("classical", config_echo, results, started), args.format, args.out)
    return EXIT_OK


def cmd_reproduce(args) -> int:
    """End-to-end pipeline touching every in-scope claim at desk scale."""
    started = time.perf_counter()
    seed = args.seed
    trials = args.trials
    sections: dict = {}
    section_times: dict = {}
    checks: dict = {}

    def tick(name, fn):
        t0 = time.perf_counter()
        sections[name] = fn()
        section_times[name] = time.perf_counter() - t0

    # Counting bounds: lower-bound roots for d = 2..10 plus the qubit window.
    def bounds_section():
        alphas = [bounds_mod.solve_alpha_lower(d) for d in range(2, 11)]
        rows = bounds_mod.bounds_rows(3, 2)
        checks["alpha_qubit_in_window"] = bool(0.1885 <= alphas[0].alpha <= 0.1895
                                               and alphas[0].residual < 1e-12)
        checks["alpha_monotone_d_2_10"] = bool(
            all(b.alpha >= a.alpha for a, b in zip(alphas, alphas[1:])))
        checks["counting_identity"] = all(
            bounds_mod.count_reduced_params(n, n, d) + 1 == d ** (2 * n)
            for n in range(1, 21) for d in range(2, 6))
        checks["finite_n_comparison"] = (
            rows[0].reduced_param_count == 9 and not rows[0].sufficient_by_count
            and rows[1].reduced_param_count == 36 and rows[1].sufficient_by_count
            and rows[1].pure_param_count == 14)
        return {
            "alpha_lower": [{"d": s.d, "alpha": s.alpha, "residual": s.residual}
                            for s in alphas],
            "alpha_upper": [
                {"m": r["m"], "fraction": str(r["fraction"])}
                for r in bounds_mod.alpha_upper_table(5)
            ],
            "counting_rows": [
                {"n": r.n, "d": r.d, "k": r.k,
                 "reduced": str(r.reduced_param_count), "pure": str(r.pure_param_count),
                 "sufficient": r.sufficient_by_count}
                for r in bounds_mod.bounds_rows(3, 2, k_max=3)
            ],
        }
    tick("bounds", bounds_section)

    def upper_fraction_section():
        rows = bounds_mod.alpha_upper_table(5)
        fracs = [r["fraction"] for r in rows if r["m"] is not None]
        checks["upper_fractions_decrease_to_two_thirds"] = bool(
            all(a > b for a, b in zip(fracs, fracs[1:]))
            and all(f > bounds_mod.Fraction(2, 3) for f in fracs)
            and rows[-1]["fraction"] == bounds_mod.Fraction(2, 3))
        return {"fractions": [str(f) for f in fracs]}
    tick("alpha_upper", upper_fraction_section)

    # Linear uniqueness genericity at the m=1 qubit split.
    def linear_section():
        base = SeededRng(seed).spawn(1)
        sig = PartySignature([4, 2, 2])
        ok = 0
        n_lin = max(trials * 10, 200)
        for t in range(n_lin):
            state = haar_random_state(sig, base.spawn(t))
            v = check_linear_uniqueness(state)
            ok += v.verdict == UNIQUE_LINEAR and v.null_dim == 1
        checks["linear_genericity"] = ok >= n_lin - max(1, n_lin // 200)
        return {"trials": n_lin, "unique_linear": ok}
    tick("linear_survey", linear_section)

    # The identity pattern is in the kernel for every amplitude tensor.
    def invariant_section():
        base = SeededRng(seed).spawn(2)
        worst = 0.0
        shapes = [(2, 2, 2), (3, 2, 2), (4, 2, 2), (4, 3, 2), (3, 3, 3), (5, 2, 3)]
        count = 0
        for t in range(1000):
            shape = shapes[t % len(shapes)]
            state = haar_random_state(PartySignature(shape), base.spawn(t))
            cm = build_consistency_matrix(state)
            v = identity_pattern_vector(cm.shape)
            knorm = float(np.linalg.norm(cm.matrix))
            worst = max(worst, float(np.linalg.norm(cm.matrix @ v)) / knorm)
            count += 1
        checks["identity_pattern_invariant"] = bool(worst <= 1e-12)
        return {"tensors": count, "worst_relative_residual": worst}
    tick("identity_pattern", invariant_section)

    # Oracle positive control on 3-qubit Haar states.
    def oracle_positive_section():
        base = SeededRng(seed).spawn(3)
        pairs = [(0, 1), (0, 2), (1, 2)]
        sig = PartySignature([2, 2, 2])
        outcomes = []
        for t in range(trials):
            state = haar_random_state(sig, base.spawn(t).spawn(0))
            v = uniqueness_probe(state, pairs, ProjectionConfig(seed=seed),
                                 rng=base.spawn(t).spawn(1))
            outcomes.append(v.verdict)
        ok = outcomes.count(UNIQUE)
        checks["oracle_positive_control"] = ok >= trials - max(1, trials // 20)
        return {"trials": trials, "verdicts": outcomes}
    tick("oracle_positive", oracle_positive_section)

    # GHZ negative control with the analytic mixture cross-check.
    def ghz_section():
        state = _ghz_state(3)
        rho = to_density(state)
        pairs = [(0, 1), (0, 2), (1, 2)]
        v = uniqueness_probe(state, pairs, ProjectionConfig(seed=seed))
        mix = np.zeros((8, 8), dtype=complex)
        mix[0, 0] = mix[7, 7] = 0.5
        mix_residual = max(
            float(np.abs(partial_trace_matrix(mix, (2, 2, 2), s)
                         - partial_trace_matrix(rho.matrix, (2, 2, 2), s)).max())
            for s in pairs)
        witness_distance = max(v.pairwise_distances) if v.pairwise_distances else 0.0
        checks["oracle_negative_control"] = bool(
            v.verdict == NON_UNIQUE
            and v.max_marginal_residual < 1e-9
            and witness_distance >= 0.2
            and mix_residual < 1e-12)
        return {
            "verdict": v.verdict,
            "max_marginal_residual": v.max_marginal_residual,
            "witness_distance": witness_distance,
            "mixture_marginal_residual": mix_residual,
        }
    tick("oracle_negative_ghz", ghz_section)

    # Constraint-kernel dimensions.
    def kernel_section():
        k3 = constraint_nullspace(PartySignature([2, 2, 2]),
                                  [(0, 1), (0, 2), (1, 2)]).shape[0]
        k2 = constraint_nullspace(PartySignature([2, 2]), [(0,), (1,)]).shape[0]
        checks["constraint_kernel_dims"] = (k3 == 27 and k2 == 9)
        return {"three_qubit_pairs": k3, "two_qubit_singles": k2}
    tick("constraint_kernels", kernel_section)

    # Linear test and oracle must not contradict on tripartite samples.
    def consistency_section():
        base = SeededRng(seed).spawn(4)
        sig = PartySignature([4, 2, 2])
        subsets = [(0, 1), (0, 2)]
        n_cons = max(trials // 2, 5)
        contradictions = 0
        rows = []
        for t in range(n_cons):
            state = haar_random_state(sig, base.spawn(t).spawn(0))
            lin = check_linear_uniqueness(state).verdict
            orc = uniqueness_probe(state, subsets, ProjectionConfig(seed=seed),
                                   rng=base.spawn(t).spawn(1)).verdict
            rows.append({"linear": lin, "oracle": orc})
            contradictions += (lin == UNIQUE_LINEAR and orc == NON_UNIQUE)
        checks["linear_oracle_consistency"] = contradictions == 0
        return {"trials": n_cons, "contradictions": contradictions, "rows": rows}
    tick("linear_oracle_consistency", consistency_section)

    # Classical counterexample.
    def classical_section():
        p = classical_mod.JointDistribution.uniform(3, 2)
        p, q = classical_mod.counterexample_pair(3, 2, 0.05, SeededRng(seed), base=p)
        worst = max(
            float(np.abs(classical_mod.classical_marginal(p, keep).probabilities
                         - classical_mod.classical_marginal(q, keep).probabilities).max())
            for keep in itertools.combinations(range(3), 2))
        l1 = float(np.abs(p.probabilities - q.probabilities).sum())
        delta_l1 = float(np.abs(classical_mod.alternating_deviation(3, 2)).sum())
        checks["classical_counterexample"] = bool(
            worst < 1e-14 and l1 >= 0.05 * delta_l1 * (1 - 1e-12))
        return {"max_marginal_difference": worst, "l1_distance": l1}
    tick("classical", classical_section)

    results = {"sections": sections, "checks": checks,
               "all_checks_pass": all(checks.values())}
    report = _report("reproduce", {"seed": seed, "trials": trials}, results, started)
    report["timings"]["sections"] = section_times
    _emit(report, args.format, args.out)
    return EXIT_OK if all(checks.values()) else EXIT_NEGATIVE


# ---------------------------------------------------------------------------
# Parser wiring
# ---------------------------------------------------------------------------

def build_parser() -> _Parser:
    parser = _Parser(prog="qmarginal",
                     description="Uniqueness of pure states from reduced density "
                                 "matrices; counting bounds; classical contrast.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, trials=False, epsilon=False, mode=False, state=False, m=False):
        p.add_argument("--n", type=int, default=None, help="number of parties")
        p.add_argument("--d", type=int, default=None, help="local dimension")
        p.add_argument("--seed", type=int, default=0, help="master seed")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", type=str, default=None, help="output path")
        p.add_argument("--tol-rank", dest="tol_rank", type=float, default=1e-8)
        p.add_argument("--tol-converge", dest="tol_converge", type=float, default=1e-9)
        p.add_argument("--max-iter", dest="max_iter", type=int, default=5000)
        if trials:
            p.add_argument("--trials", type=int, default=None)
        if epsilon:
            p.add_argument("--epsilon", type=float, default=None)
        if mode:
            p.add_argument("--mode", choices=("linear", "oracle", "both"),
                           default="oracle")
            p.add_argument("--subsets", type=str, default=None,
                           help="comma-separated party groups, e.g. 01,02,12")
        if state:
            p.add_argument("--state", type=str, default=None, help="state JSON path")
        if m:
            p.add_argument("--m", type=int, default=None,
                           help="tripartite split parameter (3m+1 parties)")

    p_sample = sub.add_parser("sample", help="write a seeded Haar-random state")
    common(p_sample)
    p_sample.set_defaults(func=cmd_sample)

    p_check = sub.add_parser("check", help="uniqueness verdicts for one state")
    common(p_check, mode=True, state=True, m=True)
    p_check.set_defaults(func=cmd_check)

    p_survey = sub.add_parser("survey", help="uniqueness statistics on Haar samples")
    common(p_survey, trials=True)
    p_survey.add_argument("--subsets", type=str, required=True)
    p_survey.set_defaults(func=cmd_survey)

    p_bounds = sub.add_parser("bounds", help="parameter-counting tables and roots")
    p_bounds.add_argument("--d", type=str, required=True, help="dimension or range lo:hi")
    p_bounds.add_argument("--n", type=str, default=None, help="party count or range lo:hi")
    p_bounds.add_argument("--m-max", dest="m_max", type=int, default=5)
    p_bounds.add_argument("--format", choices=("json", "csv"), default="json")
    p_bounds.add_argument("--out", type=str, default=None)
    p_bounds.set_defaults(func=cmd_bounds)

    p_classical = sub.add_parser("classical", help="marginal-equal classical pair")
    common(p_classical, epsilon=True)
    p_classical.set_defaults(func=cmd_classical)

    p_rep = sub.add_parser("reproduce", help="run the full desk-scale pipeline")
    p_rep.add_argument("--seed", type=int, default=0)
    p_rep.add_argument("--trials", type=int, default=20)
    p_rep.add_argument("--format", choices=("json",), default="json")
    p_rep.add_argument("--out", type=str, default=None)
    p_rep.set_defaults(func=cmd_reproduce)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "survey":
            if args.trials is None or args.trials < 1:
                raise UsageError("survey needs --trials >= 1")
            if args.n is None or args.d is None:
                raise UsageError("survey needs --n and --d")
        if args.command == "classical":
            if args.n is None or args.d is None:
                raise UsageError("classical needs --n and --d")
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:  # console-script hook
    sys.exit(main())


if __name__ == "__main__":
    entry()
