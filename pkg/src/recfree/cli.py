"""Command-line front end.

Exit codes: 0 positive verdict, 1 negative verdict, 2 usage or input error,
3 budget exhausted.  "Positive" means the queried property was established:
free, inductively free, obstruction found, certificate valid or found,
isomorphic, chi splits.
"""
from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from pathlib import Path

from . import __version__
from .arrangement import ArrangementError, RankDeficient, ziegler_restrict
from .catalog import UnknownName, builtin, builtin_names
from .exactfield import FieldError
from .freeness import DegreeMismatch, is_free_rank3, multi_exponents, saito_verify
from .induction import NO, UNKNOWN, YES, NotFree, find_if_certificate
from .io import InputError, arrangement_from_json, arrangement_to_json, dump_arrangement, load_arrangement, load_derivations, load_hyperplanes, load_json
from .lattice import build_lattice, char_poly, factor_exponents, format_multiset, lattice_isomorphic
from .recursion import RFCertificate, candidate_hyperplanes, refute_recursive_freeness, search_rf_certificate, verify_rf_certificate

POSITIVE, NEGATIVE, USAGE, BUDGET = 0, 1, 2, 3


def load_input(source: str):
    if source.startswith("builtin:"):
        try:
            return builtin(source[len("builtin:"):])
        except UnknownName:
            raise InputError(f"unknown builtin {source!r}; see 'recfree builtins'") from None
    return load_arrangement(source)


def _multiset_json(counter):
    return {str(k): v for k, v in sorted(counter.items())}


def _header(args, a=None, source=None):
    out = {"command": args.command, "version": __version__}
    if a is not None:
        out["input"] = {"source": source, "sha256": a.canonical_hash(), "field": a.field.descriptor(), "n": len(a)}
    return out


# ---------------------------------------------------------------------------

def cmd_info(args):
    a = load_input(args.input)
    L = build_lattice(a)
    chi = char_poly(L)
    exps = factor_exponents(chi)
    rc = Counter(L.restriction_counts())
    ps = Counter(L.flat_sizes())
    report = {**_header(args, a, args.input), "n": L.n, "flat_count": len(L.flats),
              "restriction_multiset": _multiset_json(rc), "point_multiset": _multiset_json(ps),
              "chi": chi.coefficients, "exponents": list(exps) if exps else None}
    text = [f"hyperplanes: {L.n}", f"rank-2 flats: {len(L.flats)}",
            f"restriction multiset {{|A^H|}}: {format_multiset(rc)}",
            f"point multiset {{|A_p|}}: {format_multiset(ps)}",
            f"chi(t) = {chi}", f"exponents (if free): {list(exps) if exps else 'chi does not split'}"]
    return POSITIVE, report, text


def cmd_chi(args):
    a = load_input(args.input)
    chi = char_poly(build_lattice(a))
    exps = factor_exponents(chi)
    report = {**_header(args, a, args.input), "chi": chi.coefficients, "splits": exps is not None,
              "exponents": list(exps) if exps else None}
    text = [f"chi(t) = {chi}"]
    text.append(f"= (t - {exps[0]})(t - {exps[1]})(t - {exps[2]})" if exps else "no integer factorisation")
    return (POSITIVE if exps else NEGATIVE), report, text


def cmd_free(args):
    a = load_input(args.input)
    L = build_lattice(a)
    r = is_free_rank3(a, witness=args.witness, lattice=L)
    report = {**_header(args, a, args.input), **r.to_json()}
    text = [f"free: {r.free}", f"reason: {r.reason}", f"chi exponents: {r.chi_exponents}"]
    if r.ziegler_exponents:
        z = r.ziegler_exponents
        text.append(f"Ziegler exponents at H_{r.witness_hyperplane}: ({z.d1}, {z.d2}), product {z.product}")
    if args.all_witnesses:
        sweep = []
        for h in range(len(a)):
            z = multi_exponents(ziegler_restrict(a, h))
            sweep.append([z.d1, z.d2])
        consistent = len({tuple(s) for s in sweep}) == 1
        report["all_witnesses"] = sweep
        report["witness_independent"] = consistent
        text.append(f"Ziegler exponents over all {len(a)} witnesses: "
                    + (f"all equal to {tuple(sweep[0])}" if consistent else "NOT all equal"))
        if r.free and not consistent:
            return NEGATIVE, report, text
    if r.note:
        text.append(f"note: {r.note}")
    return (POSITIVE if r.free else NEGATIVE), report, text


def cmd_indfree(args):
    a = load_input(args.input)
    v = find_if_certificate(a, budget=args.budget)
    report = {**_header(args, a, args.input), **v.to_json()}
    text = [f"inductively free: {v.status}", f"nodes expanded: {v.nodes}"]
    if v.lemma:
        text.append(f"proof: no |A^H| in {list(v.lemma.required)}; observed {format_multiset(v.lemma.observed)}")
    elif v.proof:
        text.append(f"proof: {v.proof} {v.detail}".rstrip())
    if v.certificate:
        text.append(f"certificate: {len(v.certificate.deletions)} deletions, exponents {list(v.exponents)}")
        _write(args, {"arrangement_sha256": a.canonical_hash(), **v.certificate.to_json()})
    return {YES: POSITIVE, NO: NEGATIVE, UNKNOWN: BUDGET}[v.status], report, text


def cmd_recfree_obstruct(args):
    a = load_input(args.input)
    obstruction = refute_recursive_freeness(a, threads=args.threads)
    report = {**_header(args, a, args.input), "obstruction": obstruction is not None}
    if obstruction:
        body = obstruction.to_json()
        report["report"] = body
        _write(args, body)
        b = body["bound"]
        text = ["obstruction found: no Addition-Deletion step leads into this arrangement",
                f"deletions refuted: {body['deletions_checked']}", f"additions refuted: {body['additions_checked']}"]
        if b:
            text.append(f"low-incidence bound: {b['zero_point_size']} and {b['one_point_min_size']} "
                        f"vs admissible {b['admissible_sizes']}")
        return POSITIVE, report, text
    return NEGATIVE, report, ["no local obstruction (this does not prove recursive freeness)"]


def cmd_rf_verify(args):
    data = load_json(args.certificate)
    try:
        cert = RFCertificate.from_json(data)
    except (KeyError, TypeError, ValueError, FieldError) as e:
        raise InputError(f"{args.certificate}: malformed certificate: {e}") from None
    target = None
    if "target" in data:
        target = arrangement_from_json(data["target"], "target")
    v = verify_rf_certificate(cert, target=target)
    report = {**_header(args), "valid": v.ok, "step": v.step, "reason": v.reason,
              "exponents": list(v.exponents) if v.exponents else None,
              "target_sha256": cert.target().canonical_hash() if v.ok else None}
    text = [f"certificate valid: {v.ok}"] + ([f"failed at step {v.step}: {v.reason}"] if not v.ok else
                                              [f"target exponents: {list(v.exponents)}"])
    return (POSITIVE if v.ok else NEGATIVE), report, text


def cmd_rf_search(args):
    a = load_input(args.input)
    hints = load_hyperplanes(args.hints, a.field) if args.hints else []
    try:
        cert = search_rf_certificate(a, max_additions=args.max_additions, budget=args.budget, hints=hints)
    except NotFree as e:
        return NEGATIVE, {**_header(args, a, args.input), "found": False, "reason": str(e)}, [f"not free: {e}"]
    report = {**_header(args, a, args.input), "found": cert is not None}
    if cert is None:
        return BUDGET, report, ["no certificate found within the budget (this proves nothing)"]
    body = {**cert.to_json(), "target": arrangement_to_json(a)}
    report["certificate"] = body
    _write(args, body)
    adds = sum(op == "-" for op, _ in cert.steps)
    return POSITIVE, report, [f"certificate found: base with {len(cert.base)} hyperplanes, {len(cert.steps)} steps "
                              f"({adds} additions on the way up)"]


def cmd_iso(args):
    a, b = load_input(args.first), load_input(args.second)
    sigma = lattice_isomorphic(build_lattice(a), build_lattice(b))
    report = {**_header(args), "inputs": [{"source": s, "sha256": x.canonical_hash()} for s, x in
                                         ((args.first, a), (args.second, b))],
              "isomorphic": sigma is not None, "bijection": sigma}
    text = [f"isomorphic: {sigma is not None}"] + ([f"bijection: {sigma}"] if sigma else [])
    return (POSITIVE if sigma else NEGATIVE), report, text


def cmd_candidates(args):
    a = load_input(args.input)
    cs = candidate_hyperplanes(a)
    F = a.field
    report = {**_header(args, a, args.input), "count": len(cs),
              "candidates": [[F.encode(x) for x in c.hyperplane.normal] for c in cs]}
    _write(args, report)
    return POSITIVE, report, [f"candidate hyperplanes through >= 2 points: {len(cs)}"]


def cmd_builtins(args):
    if args.name:
        try:
            a = builtin(args.name)
        except UnknownName:
            raise InputError(f"unknown builtin {args.name!r}") from None
        text = dump_arrangement(a)
        if args.out:
            Path(args.out).write_text(text, encoding="utf-8")
        return POSITIVE, {**_header(args, a, f"builtin:{args.name}"), "arrangement": arrangement_to_json(a)}, [text.rstrip("\n")]
    names = builtin_names()
    return POSITIVE, {**_header(args), "builtins": names}, names


def cmd_saito(args):
    a = load_input(args.input)
    basis = load_derivations(args.derivations, a.field)
    ok = saito_verify(a, basis)
    return (POSITIVE if ok else NEGATIVE), {**_header(args, a, args.input), "basis": ok}, [f"Saito basis: {ok}"]


def _write(args, payload):
    if getattr(args, "out", None):
        Path(args.out).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


# ---------------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="recfree", description="Freeness, inductive and recursive freeness of rank-3 arrangements.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_, inputs=("input",)):
        sp = sub.add_parser(name, help=help_)
        for i in inputs:
            sp.add_argument(i, help="arrangement file or builtin:NAME")
        sp.add_argument("--json", action="store_true", help="print a JSON report")
        sp.set_defaults(func=func)
        return sp

    add("info", cmd_info, "lattice invariants and characteristic polynomial")
    add("chi", cmd_chi, "characteristic polynomial and its factorisation")
    sp = add("free", cmd_free, "freeness via the Ziegler restriction")
    sp.add_argument("--witness", type=int, default=0)
    sp.add_argument("--all-witnesses", action="store_true")
    sp = add("indfree", cmd_indfree, "inductive freeness")
    sp.add_argument("--budget", type=int, default=10 ** 6)
    sp.add_argument("--out", help="write the certificate here")
    sp = add("recfree-obstruct", cmd_recfree_obstruct, "local obstruction to recursive freeness")
    sp.add_argument("--threads", type=int, default=None)
    sp.add_argument("--out", help="write the obstruction report here")
    sp = add("rf-verify", cmd_rf_verify, "verify a recursive-freeness certificate", inputs=("certificate",))
    sp = add("rf-search", cmd_rf_search, "search for a recursive-freeness certificate")
    sp.add_argument("--hints", help="file of hyperplanes to try adding first")
    sp.add_argument("--max-additions", type=int, default=8)
    sp.add_argument("--budget", type=int, default=200)
    sp.add_argument("--out", help="write the certificate here")
    add("iso", cmd_iso, "intersection lattice isomorphism", inputs=("first", "second"))
    sp = add("candidates", cmd_candidates, "planes through at least two points of L(A)")
    sp.add_argument("--out")
    sp = sub.add_parser("builtins", help="list builtins, or print one as an arrangement file")
    sp.add_argument("name", nargs="?")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_builtins)
    sp = add("saito", cmd_saito, "check a derivation basis with Saito's criterion")
    sp.add_argument("derivations", help="JSON file with 'basis': three triples of polynomials")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code, report, text = args.func(args)
    except (InputError, UnknownName, RankDeficient, ArrangementError, FieldError, NotFree, DegreeMismatch) as e:
        msg = str(e).strip("'\"")
        if getattr(args, "json", False):
            print(json.dumps({"command": args.command, "version": __version__, "error": msg, "exit_code": USAGE}, indent=2))
        else:
            print(f"error: {msg}", file=sys.stderr)
        return USAGE
    if args.json:
        report["exit_code"] = code
        print(json.dumps(report, indent=2))
    else:
        print("\n".join(text))
    return code


if __name__ == "__main__":
    sys.exit(main())
