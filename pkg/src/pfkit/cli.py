"""pfkit command line: orchestrates every check with JSON reporting.

Report schema (one object per check, fixed key order):

    {"check": str, "status": "pass"|"fail"|"inconclusive"|"error",
     "params": {...}, "witness": ..., "elapsed_ms": int,
     "seed": int | null, "certifies": str}

Single commands print one report object; ``pfkit report`` prints the whole
suite as a JSON array (or a markdown table with --format markdown).  Two
runs with identical flags and seed produce identical output except for
the elapsed_ms fields.  Exit code: 0 when everything passes, 1 when some
check fails or is inconclusive, 2 when a check errors out.

The environment variable PFKIT_THREADS caps suite parallelism; reports
are always emitted in registry order, never completion order.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import dihedral, dimgroup, paperfold, subst
from .errors import ExtensionError, PfkitError
from .report import CheckReport, Stopwatch, emit_report
from .words import Word, to_pfw_bytes, write_pfw

DEFAULT_SEED = 42

PROFILES = {
    "quick": dict(
        generation=12,
        selfsim_budget=10,
        closure_len=16,
        recurrence_p_max=3,
        max_period=512,
        preperiod=512,
        parity_K=4000,
        recode_exp=14,
        lattice_samples=1000,
        cone_samples=1000,
        involution_samples=1000,
        discrepancy_N=10,
    ),
    "full": dict(
        generation=20,
        selfsim_budget=12,
        closure_len=16,
        recurrence_p_max=5,
        max_period=4096,
        preperiod=4096,
        parity_K=100_000,
        recode_exp=18,
        lattice_samples=10_000,
        cone_samples=10_000,
        involution_samples=1000,
        discrepancy_N=20,
    ),
}


# ---------------------------------------------------------------------------
# suite checks built on the module operations


def _check_self_similarity_battery(budget: int) -> CheckReport:
    watch = Stopwatch()
    for p in range(budget):
        for n in range(budget - p):
            rep = paperfold.verify_self_similarity(p, n)
            if rep.status != "pass":
                return dataclasses.replace(rep, elapsed_ms=watch.ms)
    return CheckReport(
        check="paperfold.self-similarity",
        status="pass",
        params={"budget": budget},
        elapsed_ms=watch.ms,
        certifies="block interleaving identity for all p+n+1 within budget",
    )


def _check_census(generation: int) -> CheckReport:
    watch = Stopwatch()
    census = paperfold.antipalindrome_census(generation, 8)
    ok = (
        census.saturated
        and census.counts[8] == 0
        and all(census.counts[ell] >= 1 for ell in (2, 4, 6))
    )
    return CheckReport(
        check="paperfold.antipalindrome-census",
        status="pass" if ok else "fail",
        params={"generation": generation, "max_len": 8},
        witness=census.to_json(),
        elapsed_ms=watch.ms,
        certifies="anti-palindromic factors exist up to length 6 and stop at 8",
    )


def _check_recurrence_battery(p_max: int) -> CheckReport:
    watch = Stopwatch()
    for p in range(p_max + 1):
        rep = paperfold.verify_recurrence(p, p + 8)
        if rep.status != "pass":
            return dataclasses.replace(rep, elapsed_ms=watch.ms)
    return CheckReport(
        check="paperfold.recurrence",
        status="pass",
        params={"p_max": p_max},
        elapsed_ms=watch.ms,
        certifies="every window of length 3*2^(p+1) contains generation p, p <= p_max",
    )


def _check_closure(generation: int, closure_len: int) -> CheckReport:
    oracle = dihedral.LanguageOracle.from_generation(generation, closure_len)
    return dihedral.check_closure_under_antireversal(oracle, closure_len)


def _check_freeness(generation: int) -> CheckReport:
    watch = Stopwatch()
    oracle = dihedral.LanguageOracle.from_generation(generation, 8)
    cert = dihedral.freeness_certificate(oracle)
    status = cert.verdict if cert.verdict in ("pass", "fail", "inconclusive") else "error"
    return CheckReport(
        check="dihedral.freeness",
        status=status,
        params={"generation": generation},
        witness=cert.to_json(),
        elapsed_ms=watch.ms,
        certifies="closure plus bounded anti-palindromes: the dihedral action has no fixed points",
    )


def _check_subst_structure() -> CheckReport:
    watch = Stopwatch()
    s = subst.PAPERFOLD_SUBSTITUTION
    params = {}
    certifies = "substitution is primitive at 3, left-proper at 2 with head '3', matrix and fixed prefix match"
    facts = {
        "primitive_index": subst.is_primitive(s, 6),
        "left_proper_index": subst.is_left_proper(s, 6),
        "first_letters": list(subst.first_letters(s, 2)),
        "matrix": subst.abelianization(s).to_json(),
        "fixed_prefix_32": str(subst.fixed_prefix(s, 32)),
    }
    ok = (
        facts["primitive_index"] == 3
        and facts["left_proper_index"] == 2
        and set(facts["first_letters"]) == {3}
        and tuple(map(tuple, facts["matrix"])) == dimgroup.PAPERFOLD_MATRIX
        and facts["fixed_prefix_32"] == "31213021312030213121302031203021"
    )
    return CheckReport(
        check="subst.structure",
        status="pass" if ok else "fail",
        params=params,
        witness=facts,
        elapsed_ms=watch.ms,
        certifies=certifies,
    )


def _check_recoding(exp: int) -> CheckReport:
    return subst.verify_recoding(2**exp)


def _check_intertwining(exp: int) -> CheckReport:
    return subst.verify_intertwining(2 ** (exp + 1))


REGISTRY = (
    ("paperfold.generation-fidelity", lambda p, seed: paperfold.verify_generation_fidelity()),
    ("paperfold.self-similarity", lambda p, seed: _check_self_similarity_battery(p["selfsim_budget"])),
    ("paperfold.antipalindrome-census", lambda p, seed: _check_census(p["generation"])),
    ("paperfold.recurrence", lambda p, seed: _check_recurrence_battery(p["recurrence_p_max"])),
    (
        "paperfold.aperiodicity",
        lambda p, seed: paperfold.check_aperiodic(
            p["preperiod"] + 2 * p["max_period"], p["max_period"], p["preperiod"]
        ),
    ),
    ("dihedral.antireversal-closure", lambda p, seed: _check_closure(p["generation"], p["closure_len"])),
    ("dihedral.freeness", lambda p, seed: _check_freeness(p["generation"])),
    ("dihedral.parity-separation", lambda p, seed: dihedral.parity_class_separation(p["parity_K"], p["generation"])),
    ("subst.structure", lambda p, seed: _check_subst_structure()),
    ("subst.recoding", lambda p, seed: _check_recoding(p["recode_exp"])),
    ("subst.intertwining", lambda p, seed: _check_intertwining(p["recode_exp"])),
    ("dimgroup.matrix-closed-form", lambda p, seed: dimgroup.verify_matrix_closed_form(20)),
    (
        "dimgroup.lattice-properties",
        lambda p, seed: dimgroup.verify_lattice_properties(12, p["lattice_samples"], seed),
    ),
    ("dimgroup.cone-identity", lambda p, seed: dimgroup.verify_cone_identity(p["cone_samples"], seed)),
    ("dimgroup.involution", lambda p, seed: dimgroup.verify_involution_algebra(p["involution_samples"], seed)),
    ("dimgroup.discrepancy-growth", lambda p, seed: dimgroup.verify_unbounded_discrepancy(p["discrepancy_N"])),
    ("dimgroup.coboundary-bound", lambda p, seed: dimgroup.verify_coboundary_bound(2**16)),
)


def _max_threads() -> int:
    env = os.environ.get("PFKIT_THREADS")
    if env:
        return max(1, int(env))
    return min(4, os.cpu_count() or 1)


def run_all(profile: str = "quick", seed: int = DEFAULT_SEED, threads: int | None = None):
    """Run the whole registry with profile-scaled parameters.  Reports come
    back in registry order regardless of scheduling; any exception becomes
    a report with status error."""
    if profile not in PROFILES:
        raise PfkitError(f"unknown profile {profile!r}")
    params = PROFILES[profile]
    threads = _max_threads() if threads is None else threads

    def run_one(entry):
        name, fn = entry
        try:
            rep = fn(params, seed)
        except Exception as exc:  # noqa: BLE001 - reported, not swallowed
            watch = Stopwatch()
            rep = CheckReport(
                check=name,
                status="error",
                params={"profile": profile},
                witness={"exception": f"{type(exc).__name__}: {exc}"},
                elapsed_ms=watch.ms,
            )
        return rep

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            reports = list(pool.map(run_one, REGISTRY))
    else:
        reports = [run_one(entry) for entry in REGISTRY]
    # echo the suite seed on every report
    return [dataclasses.replace(r, seed=seed) for r in reports]


def exit_code(reports) -> int:
    if any(r.status == "error" for r in reports):
        return 2
    if any(r.status in ("fail", "inconclusive") for r in reports):
        return 1
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def _emit(reports, args) -> None:
    if isinstance(reports, CheckReport):
        text = json.dumps(reports.to_dict(), indent=2)
    else:
        text = emit_report(reports, getattr(args, "format", "json"))
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _cmd_gen(args) -> int:
    word = paperfold.pf_word(args.n)
    if args.format == "pfw":
        if not args.out:
            sys.stdout.buffer.write(to_pfw_bytes(word))
        else:
            write_pfw(word, args.out)
    else:
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(str(word) + "\n")
        else:
            print(word)
    return 0


def _single(report, args) -> int:
    _emit(report, args)
    return exit_code([report])


def _cmd_census(args) -> int:
    return _single(_check_census_at(args.generation, args.max_len), args)


def _check_census_at(generation: int, max_len: int) -> CheckReport:
    watch = Stopwatch()
    census = paperfold.antipalindrome_census(generation, max_len)
    ok = census.saturated and all(
        census.counts.get(ell, 0) == 0 for ell in range(8, max_len + 1, 2)
    )
    return CheckReport(
        check="paperfold.antipalindrome-census",
        status="pass" if ok else ("inconclusive" if not census.saturated else "fail"),
        params={"generation": generation, "max_len": max_len},
        witness=census.to_json(),
        elapsed_ms=watch.ms,
        certifies="saturated anti-palindrome census; no counts at length 8 or beyond",
    )


def _cmd_selfsim(args) -> int:
    return _single(paperfold.verify_self_similarity(args.p, args.n), args)


def _cmd_recurrence(args) -> int:
    return _single(paperfold.verify_recurrence(args.p, args.generation), args)


def _cmd_aperiodic(args) -> int:
    return _single(
        paperfold.check_aperiodic(args.prefix_len, args.max_period, args.preperiod), args
    )


def _cmd_freeness(args) -> int:
    return _single(_check_freeness(args.generation), args)


def _cmd_parity(args) -> int:
    return _single(dihedral.parity_class_separation(args.k, args.generation), args)


def _cmd_extend(args) -> int:
    watch = Stopwatch()
    seed_word = Word(args.seed)
    max_len = len(seed_word) + args.steps + args.horizon
    oracle = dihedral.LanguageOracle.from_generation(args.generation, max_len)
    params = {
        "seed": args.seed,
        "steps": args.steps,
        "horizon": args.horizon,
        "generation": args.generation,
    }
    try:
        extended = dihedral.left_extend(oracle, seed_word, args.steps, args.horizon)
        report = CheckReport(
            check="dihedral.left-extend",
            status="pass",
            params=params,
            witness={"word": str(extended)},
            elapsed_ms=watch.ms,
            certifies="the seed extends leftwards inside the language",
        )
    except ExtensionError as exc:
        report = CheckReport(
            check="dihedral.left-extend",
            status="error",
            params=params,
            witness={"stuck_prefix": str(exc.stuck_prefix), "horizon": exc.horizon},
            elapsed_ms=watch.ms,
            certifies="the seed extends leftwards inside the language",
        )
    return _single(report, args)


def _load_substitution(path):
    if not path:
        return subst.PAPERFOLD_SUBSTITUTION
    with open(path) as fh:
        return subst.Substitution.from_json(fh.read())


def _cmd_subst_info(args) -> int:
    watch = Stopwatch()
    s = _load_substitution(args.rules)
    info = {
        "rules": json.loads(s.to_json())["rules"],
        "primitive_index": subst.is_primitive(s, 8),
        "left_proper_index": subst.is_left_proper(s, 8),
        "matrix": subst.abelianization(s).to_json(),
    }
    report = CheckReport(
        check="subst.info",
        status="pass",
        params={"rules": args.rules or "builtin"},
        witness=info,
        elapsed_ms=watch.ms,
        certifies="structural facts of the substitution",
    )
    return _single(report, args)


def _cmd_subst_fixed_prefix(args) -> int:
    print(subst.fixed_prefix(_load_substitution(args.rules), args.len))
    return 0


def _cmd_subst_recode(args) -> int:
    return _single(subst.verify_recoding(args.len), args)


def _cmd_subst_intertwine(args) -> int:
    return _single(subst.verify_intertwining(args.len), args)


def _cmd_dim_verify(args) -> int:
    reports = [
        dimgroup.verify_lattice_properties(args.index_max, args.samples, args.seed),
        dimgroup.verify_cone_identity(args.samples, args.seed),
        dimgroup.verify_involution_algebra(min(args.samples, 1000), args.seed),
    ]
    _emit(reports, args)
    return exit_code(reports)


def _cmd_dim_matpow(args) -> int:
    watch = Stopwatch()
    power = dimgroup.mat_pow(dimgroup.PAPERFOLD_MATRIX, args.n)
    report = CheckReport(
        check="dimgroup.matpow",
        status="pass",
        params={"n": args.n},
        witness={"matrix": [list(row) for row in power]},
        elapsed_ms=watch.ms,
        certifies="exact matrix power",
    )
    return _single(report, args)


def _cmd_dim_discrepancy(args) -> int:
    return _single(dimgroup.verify_unbounded_discrepancy(args.n_max), args)


def _cmd_report(args) -> int:
    reports = run_all(args.profile, args.seed)
    _emit(reports, args)
    return exit_code(reports)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pfkit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    pf = sub.add_parser("paperfold", help="generation and word-level checks")
    pf_sub = pf.add_subparsers(dest="subcommand", required=True)
    gen = pf_sub.add_parser("gen", help="emit a generation")
    gen.add_argument("--n", type=int, default=20)
    gen.add_argument("--format", choices=("text", "pfw"), default="text")
    gen.add_argument("--out")
    gen.set_defaults(func=_cmd_gen)
    census = pf_sub.add_parser("census", help="anti-palindrome census")
    census.add_argument("--generation", type=int, required=True)
    census.add_argument("--max-len", dest="max_len", type=int, required=True)
    census.add_argument("--out")
    census.set_defaults(func=_cmd_census)
    pf_verify = pf_sub.add_parser("verify", help="word-level verifications")
    pfv_sub = pf_verify.add_subparsers(dest="verification", required=True)
    ss = pfv_sub.add_parser("self-similarity")
    ss.add_argument("--p", type=int, required=True)
    ss.add_argument("--n", type=int, required=True)
    ss.add_argument("--out")
    ss.set_defaults(func=_cmd_selfsim)
    rec = pfv_sub.add_parser("recurrence")
    rec.add_argument("--p", type=int, required=True)
    rec.add_argument("--generation", type=int, required=True)
    rec.add_argument("--out")
    rec.set_defaults(func=_cmd_recurrence)
    ape = pfv_sub.add_parser("aperiodic")
    ape.add_argument("--max-period", dest="max_period", type=int, required=True)
    ape.add_argument("--preperiod", type=int, required=True)
    ape.add_argument("--prefix-len", dest="prefix_len", type=int, required=True)
    ape.add_argument("--out")
    ape.set_defaults(func=_cmd_aperiodic)

    di = sub.add_parser("dihedral", help="dihedral-action certificates")
    di_sub = di.add_subparsers(dest="subcommand", required=True)
    fr = di_sub.add_parser("freeness")
    fr.add_argument("--generation", type=int, required=True)
    fr.add_argument("--out")
    fr.set_defaults(func=_cmd_freeness)
    pa = di_sub.add_parser("parity")
    pa.add_argument("--k", type=int, required=True)
    pa.add_argument("--generation", type=int, required=True)
    pa.add_argument("--out")
    pa.set_defaults(func=_cmd_parity)
    ex = di_sub.add_parser("extend")
    ex.add_argument("--seed", required=True, help="seed word (binary text)")
    ex.add_argument("--steps", type=int, required=True)
    ex.add_argument("--horizon", type=int, required=True)
    ex.add_argument("--generation", type=int, default=16)
    ex.add_argument("--out")
    ex.set_defaults(func=_cmd_extend)

    su = sub.add_parser("subst", help="substitution facts and recoding")
    su_sub = su.add_subparsers(dest="subcommand", required=True)
    info = su_sub.add_parser("info")
    info.add_argument("--rules", help="substitution JSON file")
    info.add_argument("--out")
    info.set_defaults(func=_cmd_subst_info)
    fp = su_sub.add_parser("fixed-prefix")
    fp.add_argument("--len", type=int, required=True)
    fp.add_argument("--rules")
    fp.set_defaults(func=_cmd_subst_fixed_prefix)
    su_verify = su_sub.add_parser("verify")
    suv_sub = su_verify.add_subparsers(dest="verification", required=True)
    rc = suv_sub.add_parser("recode")
    rc.add_argument("--len", type=int, required=True)
    rc.add_argument("--out")
    rc.set_defaults(func=_cmd_subst_recode)
    it = suv_sub.add_parser("intertwine")
    it.add_argument("--len", type=int, required=True)
    it.add_argument("--out")
    it.set_defaults(func=_cmd_subst_intertwine)

    dg = sub.add_parser("dimgroup", help="exact dimension-group arithmetic")
    dg_sub = dg.add_subparsers(dest="subcommand", required=True)
    dv = dg_sub.add_parser("verify")
    dv.add_argument("--index-max", dest="index_max", type=int, default=12)
    dv.add_argument("--samples", type=int, default=10_000)
    dv.add_argument("--seed", type=int, default=DEFAULT_SEED)
    dv.add_argument("--out")
    dv.set_defaults(func=_cmd_dim_verify)
    mp = dg_sub.add_parser("matpow")
    mp.add_argument("--n", type=int, required=True)
    mp.add_argument("--out")
    mp.set_defaults(func=_cmd_dim_matpow)
    dd = dg_sub.add_parser("discrepancy")
    dd.add_argument("--n-max", dest="n_max", type=int, default=20)
    dd.add_argument("--out")
    dd.set_defaults(func=_cmd_dim_discrepancy)

    rp = sub.add_parser("report", help="run the whole verification suite")
    rp.add_argument("--profile", choices=tuple(PROFILES), default="quick")
    rp.add_argument("--format", choices=("json", "markdown"), default="json")
    rp.add_argument("--out")
    rp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    rp.set_defaults(func=_cmd_report)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PfkitError as exc:
        print(json.dumps({"error": f"{type(exc).__name__}: {exc}"}), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
