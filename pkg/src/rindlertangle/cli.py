"""Command-line front end.

Subcommands: ``measure`` (one state, one quantity), ``sweep`` (CSV of the
degradation curve over a grid of statistical angles), ``verify`` (seeded
random batteries for the degradation laws and the supporting identities).

Exit codes: 0 success, 1 verification failure, 2 malformed input,
3 numerical invariant violation.
"""

import argparse
import sys
from dataclasses import dataclass, field

import numpy as np

from . import convexroof, measures, unruh
from .qmat import InvariantViolation, psd_rank
from .states import (
    AcinParams,
    from_acin,
    load_state,
    named_state,
    random_acin,
    random_pure,
)

FMT = "%.17g"

THEOREM1_TOL = 1e-9
THEOREM2_ACIN_TOL = 1e-9
THEOREM2_RAW_TOL = 1e-8
OPTIMIZER_TOL = 1e-4
IDENTITY_TOL = 1e-10
SECTOR_TOL = 1e-12

_DEFAULT_CASES = {"theorem1": 200, "theorem2": 100, "identities": 1000, "sector": 50}


def _fmt(x):
    return FMT % float(x)


@dataclass
class SweepSpec:
    r_values: np.ndarray
    party: str
    source_kind: str  # 'acin' or 'amplitudes'
    state: object
    acin: AcinParams = None

    def __post_init__(self):
        rs = np.asarray(self.r_values, dtype=float)
        if rs.size < 2:
            raise ValueError("sweep needs at least 2 grid points")
        if rs.min() < -1e-12 or rs.max() > np.pi / 4.0 + 1e-9:
            raise ValueError("sweep grid leaves [0, pi/4]")
        if self.party not in convexroof.PARTIES:
            raise ValueError(f"party must be one of {convexroof.PARTIES}")


@dataclass
class VerifyReport:
    suite: str
    cases: int
    max_abs_error: float = 0.0
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def record(self, error, tol, context):
        self.max_abs_error = max(self.max_abs_error, abs(error))
        if abs(error) > tol:
            self.failures.append(context)

    @property
    def passed(self):
        return not self.failures


# ---------------------------------------------------------------------------
# verification batteries


def run_theorem1(cases, seed):
    """Bipartite law: Wootters concurrence of the reduced state is tau2 * cos(r)."""
    report = VerifyReport("theorem1", cases)
    r_grid = np.linspace(0.0, np.pi / 4.0, 10)
    for i in range(cases):
        psi = random_pure(("A", "B"), seed + i)
        tau2 = measures.concurrence_pure(psi).value
        for party in ("A", "B"):
            for r in r_grid:
                rho = unruh.reduced_state(psi, party, r)
                got = measures.concurrence_mixed(rho).value
                expected = tau2 * np.cos(r)
                report.record(
                    got - expected,
                    THEOREM1_TOL,
                    (seed + i, party, float(r), expected, got),
                )
    return report


def run_theorem2(cases, seed, optimizer_cases=20):
    """Tripartite law via three routes: closed form, raw spectral pair, optimizer."""
    report = VerifyReport("theorem2", cases)
    r_grid = np.linspace(0.0, np.pi / 4.0, 10)
    for i in range(cases):
        params = random_acin(seed + i)
        tau3 = measures.three_tangle_acin(params).value
        for party in convexroof.PARTIES:
            for r in r_grid:
                expected = tau3 * np.cos(r) ** 2
                got = convexroof.analytic_mixed_tangle(params, r, party).value
                report.record(
                    got - expected,
                    THEOREM2_ACIN_TOL,
                    ("acin", seed + i, party, float(r), expected, got),
                )
                if r > 0.0:
                    decomp = convexroof.decomposition_for(params, r, party)
                    bracket = convexroof.mixture_bracket(decomp, np.pi / 2.0)
                    report.record(
                        bracket - 1.0,
                        THEOREM2_ACIN_TOL,
                        ("bracket", seed + i, party, float(r), 1.0, bracket),
                    )
    rng = np.random.default_rng(seed)
    for i in range(cases):
        psi = random_pure(("A", "B", "C"), seed + 10_000 + i)
        party = convexroof.PARTIES[int(rng.integers(3))]
        r = float(rng.uniform(0.0, np.pi / 4.0))
        expected = measures.three_tangle_pure(psi).value * np.cos(r) ** 2
        rho = unruh.reduced_state(psi, party, r)
        got = convexroof.spectral_mixed_tangle(rho).value
        report.record(
            got - expected,
            THEOREM2_RAW_TOL,
            ("raw", seed + 10_000 + i, party, r, expected, got),
        )
    for i in range(optimizer_cases):
        psi = random_pure(("A", "B", "C"), seed + 20_000 + i)
        party = convexroof.PARTIES[int(rng.integers(3))]
        r = float(rng.uniform(0.05, np.pi / 4.0))
        expected = measures.three_tangle_pure(psi).value * np.cos(r) ** 2
        rho = unruh.reduced_state(psi, party, r)
        got = convexroof.optimize_roof(rho, 2, seed=seed + 30_000 + i).average_tangle
        report.record(
            got - expected,
            OPTIMIZER_TOL,
            ("optimizer", seed + 20_000 + i, party, r, expected, got),
        )
    return report


def run_identities(cases, seed):
    """Orthogonality, reconstruction, unit brackets, closed-form branch tangles."""
    report = VerifyReport("identities", cases)
    rng = np.random.default_rng(seed)
    for i in range(cases):
        params = random_acin(seed + i)
        r = float(rng.uniform(0.01, np.pi / 4.0))
        party = convexroof.PARTIES[i % 3]
        decomp = convexroof.decomposition_for(params, r, party)
        ctx = (seed + i, party, r)
        overlap = abs(decomp.state_plus.overlap(decomp.state_minus))
        report.record(overlap, IDENTITY_TOL, ("orthogonality",) + ctx + (0.0, overlap))
        rebuilt = decomp.p * np.outer(
            decomp.state_plus.amplitudes, decomp.state_plus.amplitudes.conj()
        ) + (1.0 - decomp.p) * np.outer(
            decomp.state_minus.amplitudes, decomp.state_minus.amplitudes.conj()
        )
        recon = np.linalg.norm(rebuilt - decomp.source.matrix)
        report.record(recon, IDENTITY_TOL, ("reconstruction",) + ctx + (0.0, recon))
        bracket = convexroof.mixture_bracket(decomp, np.pi / 2.0)
        report.record(bracket - 1.0, IDENTITY_TOL, ("bracket",) + ctx + (1.0, bracket))
        for sign, state in ((1, decomp.state_plus), (-1, decomp.state_minus)):
            closed = convexroof.branch_tangle_closed_form(decomp, sign)
            direct = measures.three_tangle_pure(state).value
            report.record(
                closed - direct, IDENTITY_TOL, ("branch_tangle",) + ctx + (direct, closed)
            )
        theta = float(rng.uniform(0.0, 2.0 * np.pi))
        f_state, _ = convexroof.equal_weight_family(decomp, theta)
        closed = convexroof.family_tangle_closed_form(decomp, theta)
        direct = measures.three_tangle_pure(f_state).value
        report.record(
            closed - direct, IDENTITY_TOL, ("family_tangle",) + ctx + (direct, closed)
        )
    return report


def run_sector(cases, seed):
    """Beyond-single-mode checks: route consistency, template match, rank count."""
    report = VerifyReport("sector", cases)
    rng = np.random.default_rng(seed)
    rank4 = 0
    for i in range(cases):
        psi = random_pure(("A", "B", "C"), seed + i)
        party = convexroof.PARTIES[i % 3]
        r = float(rng.uniform(0.0, np.pi / 4.0))
        single = unruh.reduced_state(psi, party, r).matrix
        mode = unruh.UnruhModeParams(1.0, 0.0, r)
        big = unruh.apply_unruh_mode(psi, party, mode)
        axes = [big.register.index(lab) for lab in big.register if lab not in ("I-", "II+", "II-")]
        traced = [j for j in range(6) if j not in axes]
        tensor = big.amplitudes.reshape((2,) * 6)
        mat = np.moveaxis(tensor, axes + traced, range(6)).reshape(8, 8)
        beyond = mat @ mat.conj().T
        err = np.abs(single - beyond).max()
        report.record(err, SECTOR_TOL, ("single_mode_route", seed + i, party, r, 0.0, err))

        params = random_acin(seed + 40_000 + i)
        q_r = float(rng.uniform(0.2, 0.95))
        r_omega = float(rng.uniform(0.05, np.pi / 4.0))
        mode = unruh.UnruhModeParams.right_weighted(q_r, r_omega)
        direct = unruh.particle_sector_state(params, mode).matrix
        template = unruh.particle_sector_template(params, mode)
        err = np.abs(direct - template).max()
        report.record(err, SECTOR_TOL, ("template", seed + 40_000 + i, q_r, r_omega, 0.0, err))
        rank = psd_rank(np.linalg.eigvalsh(direct))
        if rank == 4:
            rank4 += 1
        else:
            report.notes.append(f"rank {rank} at seed {seed + 40_000 + i} (degenerate draw)")
    report.notes.insert(0, f"rank4 {rank4} of {cases}")
    return report


_SUITES = {
    "theorem1": run_theorem1,
    "theorem2": run_theorem2,
    "identities": run_identities,
    "sector": run_sector,
}


# ---------------------------------------------------------------------------
# argument handling


def _add_state_options(parser, allow_random=True):
    parser.add_argument("--named", help="reference state: ghz, w, bell00")
    parser.add_argument("--file", help="JSON state file")
    parser.add_argument("--acin", help="five comma-separated lambda values")
    parser.add_argument("--phi", type=float, default=0.0, help="phase for --acin")
    if allow_random:
        parser.add_argument("--random-seed", type=int, help="seeded Haar-random state")
        parser.add_argument("--qubits", type=int, default=3, choices=(2, 3))


def _build_state(args):
    sources = [s for s in ("named", "file", "acin") if getattr(args, s, None) is not None]
    if getattr(args, "random_seed", None) is not None:
        sources.append("random_seed")
    if len(sources) != 1:
        raise ValueError("choose exactly one of --named/--file/--acin/--random-seed")
    kind = sources[0]
    if kind == "named":
        return named_state(args.named), None
    if kind == "file":
        return load_state(args.file), None
    if kind == "acin":
        parts = [float(x) for x in args.acin.split(",")]
        if len(parts) != 5:
            raise ValueError("--acin expects five comma-separated values")
        params = AcinParams(tuple(parts), args.phi)
        return from_acin(params), params
    return random_pure(("A", "B", "C") if args.qubits == 3 else ("A", "B"), args.random_seed), None


def _resolve_r(args):
    triple = (args.accel, args.omega, args.c)
    has_triple = any(x is not None for x in triple)
    if args.r is not None and has_triple:
        raise ValueError("give either --r or the --accel/--omega/--c triple, not both")
    if args.r is not None:
        return unruh._check_r(args.r)
    if has_triple:
        if any(x is None for x in triple):
            raise ValueError("the acceleration form needs all of --accel, --omega, --c")
        return unruh.r_from_acceleration(args.accel, args.omega, args.c)
    return None


# ---------------------------------------------------------------------------
# subcommands


def cmd_measure(args):
    psi, params = _build_state(args)
    r = _resolve_r(args)
    if (args.party is None) != (r is None):
        raise ValueError("--party and --r (or the acceleration triple) go together")
    lines = [f"kind {args.kind}"]
    if psi.normalization != 1.0:
        lines.append(f"normalization {_fmt(psi.normalization)}")

    if args.kind == "concurrence":
        if psi.qubit_count != 2:
            raise ValueError("concurrence needs a two-qubit state")
        initial = measures.concurrence_pure(psi).value
        if r is None:
            lines += [f"value {_fmt(initial)}", "provenance analytic"]
        else:
            if args.party not in ("A", "B"):
                raise ValueError("two-qubit states have parties A and B")
            rho = unruh.reduced_state(psi, args.party, r)
            got = measures.concurrence_mixed(rho).value
            predicted = initial * np.cos(r)
            lines += [
                f"party {args.party}",
                f"r {_fmt(r)}",
                f"initial {_fmt(initial)}",
                f"analytic {_fmt(got)}",
                f"predicted {_fmt(predicted)}",
                f"abs_gap {_fmt(abs(got - predicted))}",
            ]
    else:
        if psi.qubit_count != 3:
            raise ValueError("three-tangle needs a three-qubit state")
        initial = measures.three_tangle_pure(psi).value
        if r is None:
            lines += [f"value {_fmt(initial)}", "provenance analytic"]
        else:
            if params is not None:
                analytic = convexroof.analytic_mixed_tangle(params, r, args.party).value
            else:
                rho = unruh.reduced_state(psi, args.party, r)
                analytic = convexroof.spectral_mixed_tangle(rho).value
            rho = unruh.reduced_state(psi, args.party, r)
            optimized = convexroof.optimize_roof(rho, args.m).average_tangle
            lines += [
                f"party {args.party}",
                f"r {_fmt(r)}",
                f"initial {_fmt(initial)}",
                f"analytic {_fmt(analytic)}",
                f"optimized {_fmt(optimized)}",
                f"abs_gap {_fmt(abs(analytic - optimized))}",
            ]
    print("\n".join(lines))
    return 0


def _sweep_grid(args):
    if args.r_start is not None or args.r_stop is not None:
        if any(x is not None for x in (args.accel_start, args.accel_stop)):
            raise ValueError("give either an r grid or an acceleration grid, not both")
        if args.r_start is None or args.r_stop is None:
            raise ValueError("the r grid needs both --r-start and --r-stop")
        return np.linspace(args.r_start, args.r_stop, args.steps)
    if args.accel_start is None or args.accel_stop is None:
        raise ValueError("give --r-start/--r-stop or --accel-start/--accel-stop")
    if args.omega is None or args.c is None:
        raise ValueError("the acceleration grid needs --omega and --c")
    accels = np.geomspace(args.accel_start, args.accel_stop, args.steps)
    return np.array([unruh.r_from_acceleration(a, args.omega, args.c) for a in accels])


def cmd_sweep(args):
    psi, params = _build_state(args)
    if psi.qubit_count != 3:
        raise ValueError("sweep computes the three-tangle and needs a three-qubit state")
    spec = SweepSpec(_sweep_grid(args), args.party, "acin" if params else "amplitudes", psi, params)
    initial = measures.three_tangle_pure(psi).value
    rows = ["r,cos2r,tangle_initial,tangle_analytic,tangle_optimized,abs_gap"]
    for r in sorted(float(x) for x in spec.r_values):
        if params is not None:
            analytic = convexroof.analytic_mixed_tangle(params, r, spec.party).value
        else:
            analytic = convexroof.spectral_mixed_tangle(
                unruh.reduced_state(psi, spec.party, r)
            ).value
        rho = unruh.reduced_state(psi, spec.party, r)
        optimized = convexroof.optimize_roof(rho, 2).average_tangle
        row = [r, np.cos(r) ** 2, initial, analytic, optimized, abs(analytic - optimized)]
        rows.append(",".join(_fmt(x) for x in row))
    text = "\n".join(rows) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args):
    cases = args.cases if args.cases is not None else _DEFAULT_CASES[args.suite]
    if cases < 1:
        raise ValueError("--cases must be at least 1")
    report = _SUITES[args.suite](cases, args.seed)
    print(f"suite {report.suite}")
    print(f"cases {report.cases}")
    print(f"max_abs_error {_fmt(report.max_abs_error)}")
    for note in report.notes:
        print(f"note {note}")
    print(f"failures {len(report.failures)}")
    for failure in report.failures[:20]:
        print("failure " + " ".join(str(x) for x in failure))
    print("PASS" if report.passed else "FAIL")
    return 0 if report.passed else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="rindlertangle",
        description="Entanglement degradation of fermionic states under uniform acceleration",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measure", help="evaluate one entanglement measure")
    _add_state_options(p)
    p.add_argument("--kind", required=True, choices=("three-tangle", "concurrence"))
    p.add_argument("--party", choices=convexroof.PARTIES)
    p.add_argument("--r", type=float)
    p.add_argument("--accel", type=float)
    p.add_argument("--omega", type=float)
    p.add_argument("--c", type=float)
    p.add_argument("--m", type=int, default=2, choices=(2, 3, 4))
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("sweep", help="degradation curve as CSV")
    _add_state_options(p)
    p.add_argument("--party", required=True, choices=convexroof.PARTIES)
    p.add_argument("--r-start", type=float)
    p.add_argument("--r-stop", type=float)
    p.add_argument("--accel-start", type=float)
    p.add_argument("--accel-stop", type=float)
    p.add_argument("--omega", type=float)
    p.add_argument("--c", type=float)
    p.add_argument("--steps", type=int, default=16)
    p.add_argument("--out", help="CSV output path (default: stdout)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="run a seeded verification battery")
    p.add_argument("--suite", required=True, choices=sorted(_SUITES))
    p.add_argument("--cases", type=int)
    p.add_argument("--seed", type=int, default=7)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
