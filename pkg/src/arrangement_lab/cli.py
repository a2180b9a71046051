"""Command-line interface.

Exit codes: 0 success, 1 input/usage problems (unreadable or malformed
files), 2 domain errors (not essential, resonant, not generic, ...) and
failed oracle checks.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import arrangement as arr
from . import at_infinity, homology, os_algebra, poset
from .errors import DomainError, InputError, Resonant, TooLarge
from .local_system import load_local_system, nonresonance_check

COMMANDS = (
    "info", "poset", "charpoly", "betti", "section", "dense-edges", "check-nonresonant",
    "homology", "certify-hurewicz", "euler-positivity", "homotopy", "oracle-check",
)
NEEDS_LOCAL_SYSTEM = {"check-nonresonant", "homology", "certify-hurewicz"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="arrangement-lab", description="Invariants of complex hyperplane arrangement complements.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("arrangement", help="arrangement file (JSON)")
    p.add_argument("--local-system", dest="local_system", help="local-system file (JSON)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--method", choices=("moebius", "nbc", "both"), default="both")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--k", type=int, default=None, help="section dimension for 'homotopy'")
    p.add_argument("--oracle-bound", dest="oracle_bound", type=int, default=None)
    p.add_argument("-o", "--output", help="write the report here instead of stdout")
    return p


def _fmt_set(labels) -> str:
    return "{" + ", ".join(labels) + "}"


def _tuple(xs) -> str:
    return "(" + ",".join(str(x) for x in xs) + ")"


# ---------------------------------------------------------------------------
# commands: each returns (structured report, text lines)


def cmd_info(a, args):
    poly = poset.char_poly(a)
    betti, euler = poset.betti_and_euler(a, poly)
    report = {
        "dim": a.dim,
        "hyperplanes": len(a),
        "labels": a.labels,
        "essential": arr.is_essential(a),
        "char_poly": list(poly.coeffs),
        "betti": list(betti),
        "euler": euler,
    }
    lines = [
        f"dim: {a.dim}",
        f"hyperplanes: {len(a)}",
        f"essential: {str(report['essential']).lower()}",
        f"char_poly: {poly}",
        f"betti: {_tuple(betti)}",
        f"euler: {euler}",
    ]
    return report, lines


def cmd_poset(a, args):
    p = poset.build(a)
    flats = []
    lines = [f"# {len(p)} flats, rank profile {_tuple(p.rank_profile())}", "# rank  index_set  dim  mu"]
    for f, m in zip(p.flats, p.moebius):
        flats.append({"rank": f.rank, "index_set": list(f.index_set), "dim": f.dim, "mu": m})
        lines.append(f"{f.rank}  {_fmt_set(str(i) for i in f.index_set)}  {f.dim}  {m}")
    return {"flats": flats, "rank_profile": list(p.rank_profile())}, lines


def cmd_charpoly(a, args):
    poly = poset.char_poly(a)
    return {"coeffs": list(poly.coeffs), "degree": poly.degree}, [f"chi(A,t) = {poly}"]


def cmd_betti(a, args):
    report, lines = {}, []
    if args.method in ("moebius", "both"):
        betti, _ = poset.betti_and_euler(a)
        report["moebius"] = list(betti)
        lines.append(f"moebius: {_tuple(betti)}")
    if args.method in ("nbc", "both"):
        nbc = os_algebra.nbc_profile(a)
        report["nbc"] = list(nbc)
        lines.append(f"nbc: {_tuple(nbc)}")
    if args.method == "both":
        verdict = "match" if report["moebius"] == report["nbc"] else "mismatch"
        report["verdict"] = verdict
        lines.append(f"verdict: {verdict}")
    return report, lines


def cmd_section(a, args):
    p = poset.build(a)
    u = arr.random_generic_hyperplane(a, args.seed, poset=p)
    sect = arr.section(a, u, p)
    return sect.to_dict(), [sect.dumps()]


def cmd_dense_edges(a, args):
    coned = at_infinity.cone(a)
    edges = at_infinity.dense_edges(a, coned)
    out, lines = [], ["# members  rank  dense"]
    for e in edges:
        labels = [coned.label(i) for i in e.flat_indices]
        out.append({"members": labels, "indices": list(e.flat_indices), "rank": e.rank, "dense": e.dense})
        lines.append(f"{_fmt_set(labels)}  {e.rank}  {str(e.dense).lower()}")
    return {"edges": out}, lines


def _violations(verdict):
    return [
        {"edge": list(v.labels), "channel": v.channel, "sum": arr.format_rat(v.value)}
        for v in verdict.violations
    ]


def cmd_check_nonresonant(a, args, l):
    verdict = nonresonance_check(a, l)
    if not verdict.nonresonant:
        raise Resonant(verdict)
    report = {"nonresonant": True, "dense_edges_checked": verdict.edges_checked, "rank": l.rank,
              "model": "diagonal (channelwise) rational exponents"}
    lines = [
        "nonresonant: true",
        f"dense edges checked: {verdict.edges_checked}",
        "model: diagonal local system with rational exponents (channelwise check)",
    ]
    return report, lines


def cmd_homology(a, args, l):
    full = homology.homology_dims(a, l)
    sect = homology.section_homology_dims(a, l)
    report = {"full_complement": full.to_dict(), "generic_section": sect.to_dict()}
    lines = [
        f"H_*(M(A), L): dims {_tuple(full.dims)} (euler {full.euler_used}, rank {full.rank})",
        f"H_*(M(A) cap U, L'): dims {_tuple(sect.dims)} (euler {sect.euler_used}, rank {sect.rank})",
    ]
    return report, lines


def cmd_certify_hurewicz(a, args, l):
    cert = homology.hurewicz_certificate(a, l)
    lines = [
        f"dim: {cert.dim}",
        f"top cells b_{cert.dim}: {cert.top_cells}",
        f"generators r*b_{cert.dim}: {cert.generators}",
        f"kernel dim H_{cert.dim}(M, L): {cert.kernel_dim}",
        f"image dim H_{cert.dim - 1}(M cap U, L'): {cert.image_dim}",
        f"identity: {cert.generators} = {cert.kernel_dim} + {cert.image_dim}",
        f"surjective: {str(cert.surjective).lower()}",
    ]
    lines += [f"warning: {w}" for w in cert.warnings]
    return cert.to_dict(), lines


def cmd_euler_positivity(a, args):
    value, positive = homology.euler_positivity(a)
    return ({"value": value, "positive": positive},
            [f"(-1)^(l-1) chi(M cap U) = {value}", f"positive: {str(positive).lower()}"])


def cmd_homotopy(a, args):
    ks = [args.k] if args.k is not None else list(range(2, a.dim))
    rows, lines = [], []
    for k in ks:
        euler, ok = homology.homotopy_nonvanishing(a, k)
        rows.append({"k": k, "euler": euler, "nonvanishing": ok})
        lines.append(f"k={k}: euler {euler}, nonvanishing {str(ok).lower()}")
    return {"sections": rows}, lines


def oracle_checks(a, seed=0, bound=None):
    """Run every cross-check on ``a``; returns a list of (name, status, detail)."""
    bound = poset.default_oracle_bound() if bound is None else bound
    results = []
    p = poset.build(a)
    poly = p.char_poly()

    if len(a) <= bound:
        w = poset.char_poly_whitney(a, bound)
        results.append(("whitney", "pass" if w == poly else "fail", f"{poly} vs {w}"))
    else:
        results.append(("whitney", "skipped", f"{len(a)} > oracle bound {bound}"))

    try:
        nbc = os_algebra.nbc_profile(a)
        betti, _ = poset.betti_and_euler(a, poly)
        results.append(("nbc", "pass" if nbc == betti else "fail", f"{_tuple(nbc)} vs {_tuple(betti)}"))
    except TooLarge as exc:
        results.append(("nbc", "skipped", str(exc)))

    bad = []
    for h in range(len(a)):
        d, r = arr.delete_restrict(a, h)
        if poset.char_poly(d) - poset.char_poly(r) != poly:
            bad.append(a[h].label)
    results.append(("deletion-restriction", "fail" if bad else "pass",
                    f"failing hyperplanes {bad}" if bad else f"{len(a)} hyperplanes"))

    if a.dim >= 2:
        u = arr.random_generic_hyperplane(a, seed, poset=p)
        sect = arr.section(a, u, p)
        ok = poset.isomorphic_by_labels(
            poset.truncate(p), a.labels, poset.build(sect), [h.parents for h in sect]
        )
        results.append(("truncation", "pass" if ok else "fail", f"section by {u}"))
    else:
        results.append(("truncation", "skipped", "dimension < 2"))

    if arr.is_essential(a):
        coned = at_infinity.cone(a)
        checked, mismatched = 0, 0
        for e in at_infinity.dense_edges(a, coned):
            if len(e.flat_indices) > at_infinity.BRUTE_FORCE_BOUND:
                continue
            vecs = [coned.homogenized_normals[i] for i in e.flat_indices]
            checked += 1
            if at_infinity.matroid_components(vecs) != at_infinity.matroid_components_bruteforce(vecs):
                mismatched += 1
        results.append(("matroid-partition", "fail" if mismatched else "pass",
                         f"{checked} edge subarrangements"))
    else:
        results.append(("matroid-partition", "skipped", "arrangement not essential"))
    return results


def cmd_oracle_check(a, args):
    results = oracle_checks(a, args.seed, args.oracle_bound)
    failed = any(s == "fail" for _, s, _ in results)
    report = {
        "checks": [{"name": n, "status": s, "detail": d} for n, s, d in results],
        "verdict": "fail" if failed else "pass",
    }
    lines = [f"{n}: {s} ({d})" for n, s, d in results]
    lines.append(f"verdict: {report['verdict']}")
    return report, lines


HANDLERS = {
    "info": cmd_info,
    "poset": cmd_poset,
    "charpoly": cmd_charpoly,
    "betti": cmd_betti,
    "section": cmd_section,
    "dense-edges": cmd_dense_edges,
    "check-nonresonant": cmd_check_nonresonant,
    "homology": cmd_homology,
    "certify-hurewicz": cmd_certify_hurewicz,
    "euler-positivity": cmd_euler_positivity,
    "homotopy": cmd_homotopy,
    "oracle-check": cmd_oracle_check,
}


def _render(command, report, lines, fmt) -> str:
    if command == "section":
        return lines[0] + "\n"
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    return "\n".join(lines) + "\n"


def _render_error(exc, fmt) -> str:
    if fmt == "json":
        body = {"error": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, Resonant):
            body["violations"] = _violations(exc.verdict)
        return json.dumps(body, indent=2, sort_keys=True) + "\n"
    out = f"error: {type(exc).__name__}: {exc}\n"
    if isinstance(exc, Resonant):
        for v in exc.verdict.violations:
            out += f"violation: {v.edge_label} channel {v.channel} sum {arr.format_rat(v.value)}\n"
    return out


def run(argv, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    fmt = "text"
    try:
        args = build_parser().parse_args(argv)
        fmt = args.format
        if args.command in NEEDS_LOCAL_SYSTEM and not args.local_system:
            raise UsageError(f"'{args.command}' requires --local-system")
        a = arr.load(args.arrangement)
        handler = HANDLERS[args.command]
        if args.command in NEEDS_LOCAL_SYSTEM:
            l = load_local_system(args.local_system, a)
            report, lines = handler(a, args, l)
        else:
            report, lines = handler(a, args)
        text = _render(args.command, report, lines, fmt)
    except (UsageError, InputError, OSError) as exc:
        stderr.write(_render_error(exc, fmt))
        return 1
    except DomainError as exc:
        stderr.write(_render_error(exc, fmt))
        return 2
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    if args.command == "oracle-check" and report["verdict"] == "fail":
        return 2
    return 0


def main(argv=None):
    sys.exit(run(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
