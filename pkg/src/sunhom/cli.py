"""Command-line entry point: ``sunhom <subcommand> ...``.

Exit codes: 0 success, 1 usage error, 2 resource guard or budget, 3 verification mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import dist as dist_mod
from .bs_core import build_sn
from .errors import (
    BudgetExceededError,
    DegenerateEstimateError,
    NotCoincidentError,
    ResourceGuardError,
    SunHomError,
    TransitionError,
    VerificationError,
)
from .kmatrix import (
    MAX_NODES,
    MAX_VISITS,
    amplitude_by_ksum,
    enumerate_k,
    group_analysis,
    jkn_estimate,
    ksum_as_perm,
)
from .lambda_matrix import Transition
from .permanent import RYSER_LIMIT, amplitude_unnormalized, normalization, permanent_ryser
from .symmetry import cnl_family, default_jobs, scan_gehom, verdict

EXIT_USAGE = 1
EXIT_GUARD = 2
EXIT_MISMATCH = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _occ(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _complex_json(z: complex) -> list[float]:
    return [z.real, z.imag]


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def _load_config(path: Optional[str]) -> dict:
    if not path:
        return {}
    with open(path) as fh:
        return json.load(fh)


def _transition(args) -> Transition:
    if args.out is None:
        n = sum(args.inp)
        if n % args.N:
            raise TransitionError("--out omitted but n is not a multiple of N")
        return Transition(args.N, args.inp, (n // args.N,) * args.N)
    return Transition(args.N, args.inp, args.out)


def cmd_amplitude(args, cfg) -> int:
    t = _transition(args)
    limit = cfg.get("ryser_limit", RYSER_LIMIT)
    out: dict = {"transition": str(t)}
    perm = ksum = None
    if args.method in ("perm", "both"):
        perm = amplitude_unnormalized(t, limit)
    if args.method in ("ksum", "both"):
        ksum = amplitude_by_ksum(t, cfg.get("max_visits", MAX_VISITS), cfg.get("max_nodes", MAX_NODES))
    ref = perm if perm is not None else ksum_as_perm(t, ksum)
    if not args.numeric:
        if perm is not None:
            out["perm"] = perm.to_text()
            out["perm_reduced"] = perm.reduce().to_text()
        if ksum is not None:
            out["ksum"] = ksum.to_text()
            out["ksum_reduced"] = ksum.reduce().to_text()
        out["zero"] = ref.is_zero()
    if not args.exact:
        z = 0j if ref.is_zero() else ref.eval_numeric() * normalization(t)
        out["amplitude"] = _complex_json(z)
        out["probability"] = abs(z) ** 2
    if perm is not None and ksum is not None:
        agree = ksum_as_perm(t, ksum) == perm
        out["agree"] = agree
        _emit(out)
        return 0 if agree else EXIT_MISMATCH
    _emit(out)
    return 0


def cmd_scan(args, cfg) -> int:
    jobs = args.jobs if args.jobs is not None else default_jobs()
    res = scan_gehom(args.N, args.n, max_inputs=args.budget or cfg.get("scan_budget"),
                     limit=cfg.get("ryser_limit", RYSER_LIMIT), jobs=jobs)
    if args.format in ("csv", "both"):
        sys.stdout.write(res.to_csv())
    if args.format in ("json", "both"):
        print(res.summary_json())
    return 0


def cmd_groups(args, cfg) -> int:
    rep = group_analysis(_transition(args), cfg.get("max_visits", MAX_VISITS),
                         cfg.get("max_nodes", MAX_NODES))
    if args.csv:
        sys.stdout.write(rep.to_csv())
    else:
        print(rep.dumps())
    return 0


def cmd_enumerate(args, cfg) -> int:
    t = _transition(args)
    mv = cfg.get("max_visits", MAX_VISITS)
    mn = cfg.get("max_nodes", MAX_NODES)
    if args.count_only:
        print(enumerate_k(t, None, mv, mn))
        return 0
    mats = []
    enumerate_k(t, lambda K: mats.append([list(r) for r in K]), mv, mn)
    _emit({"transition": str(t), "count": len(mats), "matrices": mats})
    return 0


def cmd_jkn(args, cfg) -> int:
    est = jkn_estimate(_transition(args))
    print(" ".join(map(str, est.as_tuple())))
    return 0


def cmd_predict(args, cfg) -> int:
    t = _transition(args)
    out = {"transition": str(t), **verdict(t).to_json()}
    if args.confirm_exact:
        out["exact_zero"] = amplitude_unnormalized(t, cfg.get("ryser_limit", RYSER_LIMIT)).is_zero()
    _emit(out)
    return 0


def cmd_cnl(args, cfg) -> int:
    fam = cnl_family(args.N, args.kmax, confirm_exact=not args.no_exact,
                     limit=cfg.get("ryser_limit", RYSER_LIMIT))
    _emit([
        {"k": e.k, "in": list(e.transition.n_in), "out": list(e.transition.m_out),
         **e.verdict.to_json(), "exact_zero": e.exact_zero}
        for e in fam
    ])
    return 0


def cmd_dist(args, cfg) -> int:
    with open(args.state) as fh:
        state = dist_mod.SuperpositionInput.from_json(json.load(fh))
    if state.N != args.N:
        raise TransitionError(f"state file has N={state.N}, flag says {args.N}")
    d = dist_mod.output_distribution(state, args.cap, cfg.get("ryser_limit", RYSER_LIMIT))
    if args.plot_data:
        for m, p in dist_mod.plot_rows(d):
            print(" ".join(map(str, m)), repr(p))
    elif args.csv:
        sys.stdout.write(dist_mod.distribution_csv(d))
    else:
        print(dist_mod.distribution_json(d))
    return 0


def cmd_table2(args, cfg) -> int:
    rows = []
    for N in range(2, args.max_N + 1):
        p = permanent_ryser(build_sn(N), cfg.get("ryser_limit", RYSER_LIMIT))
        r = p.as_rational()
        rows.append({
            "N": N,
            "perm": p.to_text(),
            "reduced": p.reduce().to_text(),
            "value": str(r) if r is not None else None,
            "numeric": _complex_json(p.eval_numeric()),
        })
    _emit(rows)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sunhom", description="Exact multiphoton amplitudes for the symmetric N-port beam splitter.")
    p.add_argument("--config", help="JSON file with budgets (ryser_limit, max_visits, max_nodes, scan_budget)")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def transition_flags(sp, out_required=True):
        sp.add_argument("--N", type=int, required=True)
        sp.add_argument("--in", dest="inp", type=_occ, required=True)
        sp.add_argument("--out", type=_occ, required=out_required,
                        help="defaults to the coincident output" if not out_required else None)

    sp = sub.add_parser("amplitude", help="transition amplitude")
    transition_flags(sp)
    sp.add_argument("--method", choices=["perm", "ksum", "both"], default="perm")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--exact", action="store_true", help="exact ring value only")
    g.add_argument("--numeric", action="store_true", help="complex value only")
    sp.set_defaults(func=cmd_amplitude)

    sp = sub.add_parser("scan", help="all sorted inputs against the coincident output")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--budget", type=int, help="maximum number of inputs")
    sp.add_argument("--confirm-exact", action="store_true",
                    help="accepted for symmetry with predict; scans are always exact")
    sp.add_argument("--jobs", type=int)
    sp.add_argument("--format", choices=["csv", "json", "both"], default="both")
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("groups", help="coefficient groups of the K-sum")
    transition_flags(sp)
    sp.add_argument("--csv", action="store_true")
    sp.set_defaults(func=cmd_groups)

    sp = sub.add_parser("enumerate", help="valid K matrices")
    transition_flags(sp)
    sp.add_argument("--count-only", action="store_true")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("jkn", help="JKN estimate of the K-matrix count")
    transition_flags(sp)
    sp.set_defaults(func=cmd_jkn)

    sp = sub.add_parser("predict", help="symmetry verdict for a coincident output")
    transition_flags(sp, out_required=False)
    sp.add_argument("--confirm-exact", action="store_true")
    sp.set_defaults(func=cmd_predict)

    sp = sub.add_parser("cnl", help="the |Nk,1,...,1,2> family")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--kmax", type=int, required=True)
    sp.add_argument("--no-exact", action="store_true")
    sp.set_defaults(func=cmd_cnl)

    sp = sub.add_parser("dist", help="output distribution of a superposition")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--state", required=True, help="JSON state file")
    sp.add_argument("--cap", type=int, default=30, help="maximum photon number")
    sp.add_argument("--plot-data", action="store_true")
    sp.add_argument("--csv", action="store_true")
    sp.set_defaults(func=cmd_dist)

    sp = sub.add_parser("table2", help="Perm(S_N) for N = 2..max-N")
    sp.add_argument("--max-N", type=int, default=14)
    sp.set_defaults(func=cmd_table2)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _load_config(args.config)
        return args.func(args, cfg)
    except (ResourceGuardError, BudgetExceededError) as e:
        print(f"sunhom: {e}", file=sys.stderr)
        return EXIT_GUARD
    except VerificationError as e:
        print(f"sunhom: verification failed: {e}", file=sys.stderr)
        return EXIT_MISMATCH
    except (TransitionError, NotCoincidentError, DegenerateEstimateError, ValueError,
            OSError, SunHomError) as e:
        print(f"sunhom: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
