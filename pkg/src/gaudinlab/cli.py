"""Batch verification runs with machine-readable reports.

Subcommands mirror the verification families:

  talalaev       build the commuting family Q_{n,k} and check it
  classical      classical determinant generators and their Poisson checks
  centralizer    graded kernel dimensions against expected counts
  gaudin         Hamiltonians at sites, commutation, spectra
  verify-lemmas  the slice/Cartan projection identities

Reports are deterministic for a fixed configuration: JSON is emitted
with sorted keys and no environment-dependent content; timing lines go
to stderr and only when --timings is set.  Exit status is 0 when every
verdict passes, 1 on a failed verdict (the report is still written),
and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from gaudinlab.liealg import build_algebra, principal_triple
from gaudinlab.loopsym import (SymPoly, casimir, classical_generators, d_t,
                               poisson_bracket)
from gaudinlab.pbw import PBWPoly, symmetrize
from gaudinlab.talalaev import all_commute, check_pairwise_commute, compute_Q
from gaudinlab.gaudin import (SiteConfig, evaluate, global_element,
                              joint_diagonalizable, quadratic_hamiltonian,
                              rep_matrix, spectrum)
from gaudinlab.centralizer import (ComponentIndex, ad_kernel_classical,
                                   ad_kernel_quantum, cartan_component_dim,
                                   in_span, invariant_subspace,
                                   quantum_expected_dim, subalgebra_dim,
                                   verify_slice_identities)

CENTRALIZER_TARGETS = ("s1bar", "h1", "S1quantum", "invariants")


class UsageError(Exception):
    """Argument combinations the parser alone cannot reject."""

# the only components with a theorem-frozen invariant-subspace dimension
_INVARIANT_EXPECTED = {
    ("sl", 2, 1, 1): 0,
    ("sl", 2, 2, 2): 1,
    ("gl", 2, 1, 1): 1,
}


@dataclass
class RunConfig:
    subcommand: str
    options: dict

    def echo(self):
        return {"subcommand": self.subcommand, **self.options}


@dataclass
class RunReport:
    config: RunConfig
    verdicts: dict = field(default_factory=dict)
    payload: dict = field(default_factory=dict)
    rows: list = field(default_factory=list)
    columns: tuple = ()

    @property
    def passed(self) -> bool:
        return all(bool(v) for v in self.verdicts.values())

    def to_json(self):
        return {
            "config": self.config.echo(),
            "checks": {k: bool(v) for k, v in sorted(self.verdicts.items())},
            "pass": self.passed,
            **self.payload,
        }


def _parse_algebra(text: str):
    kind = text[:2]
    if kind not in ("gl", "sl") or not text[2:].isdigit():
        raise argparse.ArgumentTypeError("algebra must look like gl2 or sl3")
    rank = int(text[2:])
    if rank < 1 or (kind == "sl" and rank < 2):
        raise argparse.ArgumentTypeError("rank out of range for %s" % kind)
    return kind, rank


def _parse_points(text: str):
    try:
        points = [Fraction(p) for p in text.split(",") if p]
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError("bad point list: %s" % exc)
    if not points or 0 in points or len(set(points)) != len(points):
        raise argparse.ArgumentTypeError(
            "points must be nonzero and pairwise distinct")
    return points


def _build_parser():
    top = argparse.ArgumentParser(
        prog="gaudinlab",
        description="exact verification runs for loop-algebra commutative subalgebras")
    sub = top.add_subparsers(dest="subcommand", required=True)

    def common(p, default_format):
        p.add_argument("--format", choices=("json", "csv", "text"), default=None,
                       help="report format (default %s; --out *.csv implies csv)"
                       % default_format)
        p.set_defaults(default_format=default_format)
        p.add_argument("--out", help="write the report to this path "
                       "(relative paths resolve against $GAUDINLAB_OUTDIR)")
        p.add_argument("--workers", type=int, default=1,
                       help="parallel worker bound for independent jobs")
        p.add_argument("--timings", action="store_true",
                       help="print stage timings to stderr")

    p = sub.add_parser("talalaev", help="build Q_{n,k} and check the family")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--z-order", type=int, required=True, dest="z_order")
    p.add_argument("--cutoff", type=int, default=None,
                   help="override the internal z cutoff (default z-order + rank)")
    p.add_argument("--check-commute", action="store_true", dest="check_commute")
    p.add_argument("--check-symbols", action="store_true", dest="check_symbols",
                   help="compare gr Q_{n,k} with the classical generators")
    common(p, "json")

    p = sub.add_parser("classical", help="classical generators of the Poisson family")
    p.add_argument("--algebra", type=_parse_algebra, required=True)
    p.add_argument("--order", type=int, required=True,
                   help="number of z coefficients per family")
    p.add_argument("--check-commute", action="store_true", dest="check_commute")
    p.add_argument("--check-dt", action="store_true", dest="check_dt",
                   help="check each family is stable under d/dt")
    common(p, "json")

    p = sub.add_parser("centralizer", help="graded kernel dimensions vs expected")
    p.add_argument("--algebra", type=_parse_algebra, required=True)
    p.add_argument("--target", choices=CENTRALIZER_TARGETS, required=True)
    p.add_argument("--max-degree", type=int, required=True, dest="max_degree")
    p.add_argument("--max-weight", type=int, required=True, dest="max_weight")
    common(p, "text")

    p = sub.add_parser("gaudin", help="site Hamiltonians, commutation, spectra")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--kind", choices=("gl", "sl"), default="gl")
    p.add_argument("--points", type=_parse_points, required=True)
    p.add_argument("--check-commute", action="store_true", dest="check_commute")
    p.add_argument("--spectrum", action="store_true")
    p.add_argument("--check-global", action="store_true", dest="check_global",
                   help="check [H_i, sum of site copies of x] = 0")
    p.add_argument("--z-order", type=int, default=0, dest="z_order",
                   help="also check [ev(Q_{n,k}), H_i] = 0 up to this order (gl only)")
    common(p, "json")

    p = sub.add_parser("verify-lemmas", help="slice and Cartan projection identities")
    p.add_argument("--algebra", type=_parse_algebra, required=True)
    p.add_argument("--max-degree", type=int, default=3, dest="max_degree")
    p.add_argument("--max-weight", type=int, default=6, dest="max_weight")
    p.add_argument("--seed", type=int, default=20240,
                   help="seed for the randomized projection spot checks")
    p.add_argument("--selftest-products", type=int, default=8,
                   dest="selftest_products",
                   help="random product pairs for the homomorphism spot check")
    common(p, "json")

    return top


# -- subcommand bodies ---------------------------------------------------

def _run_talalaev(args, tick) -> RunReport:
    cfg = RunConfig("talalaev", {
        "rank": args.rank, "z_order": args.z_order, "cutoff": args.cutoff,
        "check_commute": args.check_commute, "check_symbols": args.check_symbols,
    })
    alg = build_algebra("gl", args.rank)
    fam = compute_Q(alg, args.z_order, cutoff=args.cutoff)
    tick("compute_Q")
    report = RunReport(cfg)
    report.verdicts["monic"] = True  # compute_Q asserts it
    commute_rows = []
    if args.check_commute:
        commute_rows = check_pairwise_commute(fam)
        report.verdicts["pairwise_commute"] = all_commute(commute_rows)
        tick("check_commute")
    if args.check_symbols:
        gens = classical_generators(alg, args.z_order)
        ok = True
        signs = {}
        for (n, k), q in fam.items():
            top = q.gr_top()
            ref = gens.get((k, n))
            if ref is None:
                ok = False
                continue
            if top == ref:
                sign = 1
            elif top == -ref:
                sign = -1
            else:
                ok = False
                continue
            if signs.setdefault(k, sign) != sign:
                ok = False
        report.verdicts["symbols_match_classical"] = ok
        report.payload["symbol_signs"] = {str(k): v for k, v in sorted(signs.items())}
        tick("check_symbols")
    report.payload.update(fam.to_json(commute_rows))
    report.columns = ("n", "k", "m", "l", "zero", "monomials")
    report.rows = [(r["pair"][0][0], r["pair"][0][1], r["pair"][1][0],
                    r["pair"][1][1], r["zero"], r["monomials"])
                   for r in commute_rows]
    return report


def _run_classical(args, tick) -> RunReport:
    kind, rank = args.algebra
    cfg = RunConfig("classical", {
        "algebra": "%s%d" % (kind, rank), "order": args.order,
        "check_commute": args.check_commute, "check_dt": args.check_dt,
    })
    alg = build_algebra(kind, rank)
    gens = classical_generators(alg, args.order)
    tick("generators")
    report = RunReport(cfg)
    report.payload["generators"] = {
        "%d,%d" % kn: gens[kn].to_json() for kn in sorted(gens)}
    if args.check_commute:
        keys = sorted(gens)
        ok = True
        for i in range(len(keys)):
            for j in range(i, len(keys)):
                if poisson_bracket(gens[keys[i]], gens[keys[j]]):
                    ok = False
        report.verdicts["poisson_commute"] = ok
        tick("check_commute")
    if args.check_dt:
        ok = True
        for (k, n) in sorted(gens):
            if (k, n + 1) in gens:
                if not in_span(d_t(gens[(k, n)]), [gens[(k, n + 1)]]):
                    ok = False
        report.verdicts["dt_stable"] = ok
        tick("check_dt")
    report.columns = ("k", "n", "degree", "weight", "terms")
    for (k, n) in sorted(gens):
        d, w = gens[(k, n)].is_homogeneous()
        report.rows.append((k, n, d, w, len(gens[(k, n)].terms)))
    return report


_GENS_CACHE: dict = {}


def _cached_generators(kind, rank, order):
    key = (kind, rank, order)
    if key not in _GENS_CACHE:
        _GENS_CACHE[key] = classical_generators(build_algebra(kind, rank), order)
    return _GENS_CACHE[key]


def _component_job(params):
    """One (d, w) component; module-level so worker processes can run it."""
    kind, rank, target, d, w, wmax = params
    alg = build_algebra(kind, rank)
    idx = ComponentIndex(d, w)
    if target == "s1bar":
        gens = _cached_generators(kind, rank, wmax + 1)
        expected = subalgebra_dim(gens, idx)[0]
        rep = ad_kernel_classical(casimir(alg), idx, expected)
        return (d, w, rep.kernel_dim, expected, rep.verdict)
    if target == "h1":
        expected = cartan_component_dim(alg, idx)
        b = SymPoly.from_lie(principal_triple(alg).h, 1)
        rep = ad_kernel_classical(b, idx, expected)
        return (d, w, rep.kernel_dim, expected, rep.verdict)
    if target == "S1quantum":
        gens = _cached_generators(kind, rank, wmax + 1)
        expected = quantum_expected_dim(gens, idx)
        rep = ad_kernel_quantum(symmetrize(casimir(alg)), idx, expected)
        return (d, w, rep.kernel_dim, expected, rep.verdict)
    dim, basis = invariant_subspace(alg, idx)
    expected = _INVARIANT_EXPECTED.get((kind, rank, d, w))
    if expected is None:
        return (d, w, dim, None, None)
    verdict = dim == expected
    if verdict and (kind, rank, d, w) == ("sl", 2, 2, 2):
        verdict = in_span(symmetrize(casimir(alg)), basis)
    return (d, w, dim, expected, verdict)


def _run_centralizer(args, tick) -> RunReport:
    kind, rank = args.algebra
    cfg = RunConfig("centralizer", {
        "algebra": "%s%d" % (kind, rank), "target": args.target,
        "max_degree": args.max_degree, "max_weight": args.max_weight,
    })
    if args.target == "h1" and kind != "sl":
        raise UsageError("--target h1 needs an sl algebra")
    classical = args.target in ("s1bar", "h1")
    jobs = []
    for d in range(1, args.max_degree + 1):
        wlo = d if classical else 1
        for w in range(wlo, args.max_weight + 1):
            jobs.append((kind, rank, args.target, d, w, args.max_weight))
    if args.workers > 1:
        import multiprocessing
        with multiprocessing.Pool(args.workers) as pool:
            rows = pool.map(_component_job, jobs)
    else:
        rows = [_component_job(j) for j in jobs]
    rows.sort(key=lambda r: (r[0], r[1]))
    tick("components")
    report = RunReport(cfg)
    report.columns = ("degree", "weight", "kernel_dim", "expected_dim", "verdict")
    report.rows = rows
    verdicts = [r[4] for r in rows if r[4] is not None]
    if verdicts:
        report.verdicts["all_components"] = all(verdicts)
    report.payload["components"] = [
        {"degree": d, "weight": w, "kernel_dim": kd, "expected_dim": ed,
         "verdict": v} for (d, w, kd, ed, v) in rows]
    return report


def _run_gaudin(args, tick) -> RunReport:
    kind, rank = args.kind, args.rank
    cfg = RunConfig("gaudin", {
        "rank": rank, "kind": kind,
        "points": [str(p) for p in args.points],
        "check_commute": args.check_commute, "spectrum": args.spectrum,
        "check_global": args.check_global, "z_order": args.z_order,
    })
    alg = build_algebra(kind, rank)
    sites = SiteConfig(args.points)
    hams = [quadratic_hamiltonian(sites, i, alg) for i in range(1, sites.n + 1)]
    tick("hamiltonians")
    report = RunReport(cfg)
    total = hams[0]
    for h in hams[1:]:
        total = total + h
    report.verdicts["sum_zero"] = not total
    if args.check_commute:
        ok = True
        for i in range(len(hams)):
            for j in range(i + 1, len(hams)):
                if hams[i].commutator(hams[j]):
                    ok = False
        report.verdicts["pairwise_commute"] = ok
        tick("check_commute")
    if args.check_global:
        ok = True
        for a in range(alg.dim):
            dx = global_element(alg.basis_element(a), sites.n)
            for h in hams:
                if h.commutator(dx):
                    ok = False
        report.verdicts["global_invariance"] = ok
        tick("check_global")
    if args.z_order:
        if kind != "gl":
            raise UsageError("--z-order checks need --kind gl")
        fam = compute_Q(alg, args.z_order)
        ok = True
        for _, q in fam.items():
            eq = evaluate(q, sites)
            for h in hams:
                if eq.commutator(h):
                    ok = False
        report.verdicts["ev_Q_commute"] = ok
        tick("ev_Q_commute")
    if args.spectrum:
        mats = [rep_matrix(h) for h in hams]
        report.verdicts["joint_diagonalizable"] = joint_diagonalizable(mats)
        spectra = []
        for i, m in enumerate(mats, start=1):
            sp = spectrum(m)
            spectra.append({
                "hamiltonian": i,
                "size": sp["size"],
                "rational": [{"num": v.numerator, "den": v.denominator,
                              "multiplicity": mult} for v, mult in sp["rational"]],
                "residual_roots_float": [
                    x if isinstance(x, float) else [x.real, x.imag]
                    for x in sp["residual_roots_float"]],
                "diagonalizable": sp["diagonalizable"],
            })
        report.payload["spectra"] = spectra
        report.columns = ("hamiltonian", "eigenvalue_num", "eigenvalue_den",
                          "eigenvalue_float", "multiplicity")
        for s in spectra:
            for row in s["rational"]:
                report.rows.append((s["hamiltonian"], row["num"], row["den"],
                                    float(Fraction(row["num"], row["den"])),
                                    row["multiplicity"]))
            for x in s["residual_roots_float"]:
                if isinstance(x, list):
                    report.rows.append((s["hamiltonian"], "", "", x[0], 1))
                else:
                    report.rows.append((s["hamiltonian"], "", "", x, 1))
        tick("spectra")
    return report


def _run_verify_lemmas(args, tick) -> RunReport:
    kind, rank = args.algebra
    if kind != "sl":
        raise UsageError("verify-lemmas needs an sl algebra")
    cfg = RunConfig("verify-lemmas", {
        "algebra": "%s%d" % (kind, rank), "max_degree": args.max_degree,
        "max_weight": args.max_weight, "seed": args.seed,
        "selftest_products": args.selftest_products,
    })
    alg = build_algebra(kind, rank)
    triple = principal_triple(alg)
    rep = verify_slice_identities(triple, args.max_degree, args.max_weight)
    tick("identities")
    report = RunReport(cfg)
    for key in ("phi_s_quadratic", "pi_commutes_dt", "pi_spans_slice",
                "psi_restricts_embedding"):
        report.verdicts[key] = rep[key]
    report.payload["pi_spans_slice_detail"] = [
        {"degree": d, "weight": w, "span_dim": got, "slice_dim": want,
         "contained": c} for (d, w, got, want, c) in rep["pi_spans_slice_detail"]]

    # randomized spot check: the slice projection is multiplicative
    import random

    from gaudinlab.loopsym import project_pi
    rng = random.Random(args.seed)
    ok = True
    for _ in range(args.selftest_products):
        u = _random_sym(alg, rng)
        v = _random_sym(alg, rng)
        if project_pi(u * v, triple) != project_pi(u, triple) * project_pi(v, triple):
            ok = False
    report.verdicts["pi_multiplicative_sample"] = ok
    tick("selftest")
    report.columns = ("degree", "weight", "span_dim", "slice_dim", "contained")
    report.rows = rep["pi_spans_slice_detail"]
    return report


def _random_sym(alg, rng) -> SymPoly:
    from gaudinlab.loopsym import pack
    terms = {}
    for _ in range(rng.randint(1, 3)):
        mono = tuple(sorted(pack(rng.randint(1, 3), rng.randrange(alg.dim))
                            for _ in range(rng.randint(1, 2))))
        terms[mono] = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
    return SymPoly(alg, terms)


# -- report rendering ----------------------------------------------------

def _render(report: RunReport, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.to_json(), sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(report.columns)
        for row in report.rows:
            writer.writerow(row)
        writer.writerow(())
        writer.writerow(("pass", report.passed))
        return buf.getvalue()
    lines = ["%s  %s" % (report.config.subcommand,
                         json.dumps(report.config.options, sort_keys=True))]
    if report.rows:
        lines.append("  ".join(str(c) for c in report.columns))
        for row in report.rows:
            lines.append("  ".join(str(c) for c in row))
    for k in sorted(report.verdicts):
        lines.append("check %s: %s" % (k, "pass" if report.verdicts[k] else "FAIL"))
    lines.append("pass: %s" % report.passed)
    return "\n".join(lines) + "\n"


def _resolve_out(path: str) -> str:
    outdir = os.environ.get("GAUDINLAB_OUTDIR")
    if outdir and not os.path.isabs(path):
        return os.path.join(outdir, path)
    return path


RUNNERS = {
    "talalaev": _run_talalaev,
    "classical": _run_classical,
    "centralizer": _run_centralizer,
    "gaudin": _run_gaudin,
    "verify-lemmas": _run_verify_lemmas,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    marks = [("start", time.perf_counter())]

    def tick(stage):
        marks.append((stage, time.perf_counter()))

    try:
        report = RUNNERS[args.subcommand](args, tick)
    except UsageError as exc:
        print("gaudinlab %s: %s" % (args.subcommand, exc), file=sys.stderr)
        return 2
    fmt = args.format
    if fmt is None:
        if args.out and args.out.endswith(".csv"):
            fmt = "csv"
        elif args.out and args.out.endswith(".json"):
            fmt = "json"
        else:
            fmt = args.default_format
    text = _render(report, fmt)
    if args.out:
        path = _resolve_out(args.out)
        with open(path, "w") as fh:
            fh.write(text)
        print("%s: %s -> %s" % (args.subcommand,
                                "pass" if report.passed else "FAIL", path))
    else:
        sys.stdout.write(text)
    if args.timings:
        for (stage, at), (_, prev) in zip(marks[1:], marks):
            print("timing %s: %.3fs" % (stage, at - prev), file=sys.stderr)
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
