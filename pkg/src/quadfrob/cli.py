"""Command-line front end.

Exit codes: 0 success, 2 validation rejection, 3 malformed input,
4 bounded search exhausted.

Element syntax on the command line: 'a+bw' with w standing for sqrt(d),
e.g. '2', '1+w', '3-2w'.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import corpus, frobenius
from .frobenius import (
    FrobeniusData,
    TwistSpec,
    ValidationError,
    analyze,
    example_zsqrtm5,
    family_eps_x_one,
    family_eps_x_zero,
    search_solutions,
    twist,
)
from .ideals import (
    Ideal,
    NotOrderTwoError,
    SearchExhaustedError,
    certify_order_two,
)
from .linkhom import (
    MalformedPDError,
    PDCode,
    build_complex,
    homology_integral,
    homology_over_K,
    lee_check,
    reidemeister_compare,
    simplify,
)
from .ring import RingContext, UnsupportedRingError, parse_element

EXIT_OK = 0
EXIT_REJECTED = 2
EXIT_MALFORMED = 3
EXIT_SEARCH = 4


def _emit(args, payload, text_lines=None):
    if args.format == "json":
        out = json.dumps(payload, indent=2, sort_keys=True)
    else:
        out = "\n".join(text_lines if text_lines is not None else [json.dumps(payload, indent=2, sort_keys=True)])
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out + "\n")
    else:
        print(out)


def _parse_gens(ctx, text):
    return [parse_element(ctx, part) for part in text.split(",") if part.strip()]


def _load_algebra(args):
    bound = getattr(args, "partition_bound", 64)
    if getattr(args, "alg", None):
        with open(args.alg, encoding="utf-8") as fh:
            data = FrobeniusData.from_json(json.load(fh))
        return frobenius.build_algebra(
            data, relax_a_bar=getattr(args, "relax", False), partition_bound=bound
        )
    # default experimental algebra: zero trace on X, b_bar = 1, over Z[sqrt(-5)]
    ctx = RingContext(-5)
    mu = Ideal.from_generators(ctx, [ctx(2), ctx(1, 1)])
    return family_eps_x_zero(mu, ctx(2), ctx.zero, ctx.one, ctx.one, partition_bound=bound)


def _load_pd(path):
    with open(path, encoding="utf-8") as fh:
        return PDCode.from_json(json.load(fh))


def _homology_payload(pd, alg):
    cx = build_complex(pd, alg)
    h = homology_integral(cx)
    dims = homology_over_K(cx)
    small = simplify(cx)
    hs = homology_integral(small)
    if sorted((i, v["z_rank"], v["torsion"]) for i, v in h.degrees.items()) != sorted(
        (i, v["z_rank"], v["torsion"]) for i, v in hs.degrees.items()
    ):
        raise RuntimeError("simplification changed homology")
    return {
        "homology": h.to_json(),
        "k_dims": {str(k): v for k, v in sorted(dims.items())},
        "chain_ranks": {str(i): cx.rank(i) for i in cx.degrees()},
        "simplified_ranks": {str(i): small.rank(i) for i in small.degrees()},
    }


def cmd_ideal_classinfo(args):
    ctx = RingContext(args.d)
    gens = _parse_gens(ctx, args.gens)
    ideal = Ideal.from_generators(ctx, gens)
    payload = {
        "hnf": ideal.to_json()["hnf"],
        "norm": ideal.norm(),
        "two_generators": [str(g) for g in ideal.two_generators()],
    }
    gen = ideal.is_principal()
    payload["principal"] = gen is not None
    if gen is not None:
        payload["generator"] = str(gen)
    rc = EXIT_OK
    try:
        cert = certify_order_two(ideal)
        payload["order_two"] = True
        payload["z"] = str(cert.z)
    except NotOrderTwoError as exc:
        payload["order_two"] = False
        payload["reason"] = str(exc)
    lines = [f"ideal {ideal} in Z[sqrt({args.d})]"]
    lines.append(f"  hnf rows: {ideal.rows}")
    lines.append(f"  norm: {payload['norm']}")
    lines.append(f"  principal: {payload['principal']}" + (f" (generator {payload.get('generator')})" if payload["principal"] else ""))
    if payload["order_two"]:
        lines.append(f"  order two in the class group, square = ({payload['z']})")
    else:
        lines.append(f"  not of order two: {payload.get('reason')}")
    _emit(args, payload, lines)
    return rc


def _algebra_payload(alg):
    payload = {
        "data": alg.data.to_json(),
        "report": alg.report.to_json(),
        "duals": alg.duals.to_json(),
        "partition_u": [e.to_json() for e in alg.partition[0]],
        "partition_u_prime": [e.to_json() for e in alg.partition[1]],
        "epsilon_tilde": [[str(e) for e in row] for row in alg.epsilon_tilde],
        "epsilon_tilde_det": alg.epsilon_tilde_det,
        "delta_one_coords": [str(e) for e in alg.comultiply_one().coords],
    }
    return payload


def _algebra_lines(alg):
    r = alg.report
    lines = [str(alg), f"  accepted: {r.accepted}"]
    lines.append(f"  duals: c={alg.duals.c}, d={alg.duals.d}, c'={alg.duals.c_prime}, d'={alg.duals.d_prime}")
    lines.append(f"  delta_tilde: {r.values.get('delta_tilde')}, t_bar: {r.values.get('t_bar')}")
    lines.append(f"  pairing det: {alg.epsilon_tilde_det}")
    for cell, ok in r.cells.items():
        lines.append(f"  [{'ok' if ok else 'FAIL'}] {cell}")
    for eq, ok in r.equations.items():
        lines.append(f"  [{'ok' if ok else 'FAIL'}] {eq}")
    for note in r.notes:
        lines.append(f"  note: {note}")
    return lines


def cmd_algebra(args):
    ctx = RingContext(args.d) if args.d else RingContext(-5)
    if args.action == "validate":
        with open(args.alg, encoding="utf-8") as fh:
            data = FrobeniusData.from_json(json.load(fh))
        alg, report = analyze(data, relax_a_bar=args.relax, partition_bound=args.partition_bound)
        if alg is None:
            _emit(args, {"report": report.to_json()},
                  [f"rejected: {'; '.join(report.notes) or 'see cells'}"]
                  + [f"  [{'ok' if ok else 'FAIL'}] {c}" for c, ok in report.cells.items()])
            return EXIT_REJECTED
        _emit(args, _algebra_payload(alg), _algebra_lines(alg))
        return EXIT_OK
    if args.action == "example-zsqrtm5":
        alg = example_zsqrtm5(args.s, args.eps1, partition_bound=args.partition_bound)
        _emit(args, _algebra_payload(alg), _algebra_lines(alg))
        return EXIT_OK
    if args.action == "twist":
        base = _load_algebra(args)
        alg = twist(base, TwistSpec(args.type, parse_element(base.ctx, args.param)))
        _emit(args, _algebra_payload(alg), _algebra_lines(alg))
        return EXIT_OK
    mu = Ideal.from_generators(ctx, _parse_gens(ctx, args.mu))
    z = parse_element(ctx, args.z) if args.z else certify_order_two(mu).z
    if args.action == "family-eps0":
        alg = family_eps_x_zero(
            mu, z, parse_element(ctx, args.abar), parse_element(ctx, args.bbar),
            parse_element(ctx, args.eps1_elt), partition_bound=args.partition_bound,
        )
    elif args.action == "family-eps1":
        alg = family_eps_x_one(
            mu, z, parse_element(ctx, args.abar), parse_element(ctx, args.eps1_elt),
            parse_element(ctx, args.dbar), partition_bound=args.partition_bound,
        )
    elif args.action == "search":
        found = list(search_solutions(mu, z, coord_bound=args.bound, limit=args.limit))
        payload = {"count": len(found), "solutions": [_algebra_payload(a) for a in found]}
        _emit(args, payload, [f"found {len(found)} valid parameter sets"]
              + [f"  a_bar={a.data.a_bar}, b_bar={a.data.b_bar}, eps1={a.data.eps_one}, eps_x_bar={a.data.eps_x_bar}" for a in found])
        return EXIT_OK
    else:
        raise ValueError(f"unknown algebra action {args.action}")
    _emit(args, _algebra_payload(alg), _algebra_lines(alg))
    return EXIT_OK


def cmd_kernel(args):
    alg = _load_algebra(args)
    report = alg.kernel_m_analysis(search_bound=args.bound)
    payload = report.to_json()
    lines = [str(alg)]
    lines.append(f"  ker(m) Z-rank: {len(report.kernel_basis)}")
    lines.append(f"  splits as X_mu + O*Xhat: {report.direct_sum_verified}")
    lines.append(f"  action identities: {report.action_formulas_verified}")
    if report.generator:
        u, val = report.generator
        lines.append(f"  ker(m) = A as A-modules: generator at u={u} (unit value {val})")
    else:
        lines.append(f"  no single generator found within bound {report.search_bound}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_link(args):
    alg = _load_algebra(args)
    if args.action == "homology":
        pd = _load_pd(args.pd)
        payload = _homology_payload(pd, alg)
        h = payload["homology"]
        lines = [f"chain ranks: {payload['chain_ranks']}"]
        for deg, v in sorted(h["degrees"].items(), key=lambda kv: int(kv[0])):
            lines.append(f"  H^{deg}: Z^{v['z_rank']}" + (f" + torsion {v['torsion']}" if v["torsion"] else "") + f", dim_K {v['k_dim']}")
        lines.append(f"total K-dimension: {h['total_k_dim']}")
        _emit(args, payload, lines)
        return EXIT_OK
    if args.action == "compare":
        rep = reidemeister_compare(_load_pd(args.pd1), _load_pd(args.pd2), alg)
        lines = [
            f"integral homology equal degree-wise: {rep.integral_equal}",
            f"K-dimensions equal degree-wise: {rep.k_dims_equal}",
        ]
        _emit(args, rep.to_json(), lines)
        return EXIT_OK
    if args.action == "lee-check":
        payload = lee_check(_load_pd(args.pd), alg)
        lines = [
            f"discriminant {payload['discriminant']} nonzero: {payload['discriminant_nonzero']}",
            f"total K-dimension {payload['total_k_dim']} vs 2^components = {payload['expected']}: {payload['matches']}",
        ]
        _emit(args, payload, lines)
        return EXIT_OK
    if args.action == "corpus":
        paths = corpus.write_corpus(args.out_dir)
        _emit(args, {"written": paths}, [f"wrote {p}" for p in paths])
        return EXIT_OK
    raise ValueError(f"unknown link action {args.action}")


def cmd_tqft(args):
    alg = _load_algebra(args)
    values = {}
    for g in range(args.genus + 1):
        values[g] = str(alg.closed_surface_invariant(g))
    payload = {"genus_values": {str(k): v for k, v in values.items()}}
    lines = [f"genus {g}: {v}" for g, v in values.items()]
    _emit(args, payload, lines)
    return EXIT_OK


def _add_common(p):
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--out", default=None, help="write the report to a file")
    p.add_argument("--partition-bound", type=int, default=64,
                   help="coordinate bound for the partition-of-z search")


def make_parser():
    ap = argparse.ArgumentParser(prog="quadfrob")
    sub = ap.add_subparsers(dest="command", required=True)

    p_ideal = sub.add_parser("ideal", help="ideal arithmetic")
    ideal_sub = p_ideal.add_subparsers(dest="action", required=True)
    p_ci = ideal_sub.add_parser("classinfo", help="HNF, norm, principality, order-two certificate")
    p_ci.add_argument("-d", type=int, required=True)
    p_ci.add_argument("--gens", required=True,
                      help="comma-separated elements, e.g. '2,1+w'; use --gens=... "
                           "when the first element starts with a minus")
    _add_common(p_ci)
    p_ci.set_defaults(func=cmd_ideal_classinfo)

    p_alg = sub.add_parser("algebra", help="build and validate algebras")
    alg_sub = p_alg.add_subparsers(dest="action", required=True)
    for name in ("validate", "family-eps0", "family-eps1", "example-zsqrtm5", "twist", "search"):
        p = alg_sub.add_parser(name)
        p.add_argument("-d", type=int, default=None)
        p.add_argument("--relax", action="store_true",
                       help="accept a_bar outside mu (zero-trace-on-X family)")
        _add_common(p)
        if name == "validate":
            p.add_argument("--alg", required=True)
        elif name == "example-zsqrtm5":
            p.add_argument("--s", type=int, default=1, choices=(1, -1))
            p.add_argument("--eps1", type=int, default=1, choices=(1, -1))
        elif name == "twist":
            p.add_argument("--alg", default=None)
            p.add_argument("--type", type=int, required=True, choices=(1, 2, 3))
            p.add_argument("--param", required=True, help="unit (types 1, 3) or mu element p with lambda1 = p/z (type 2)")
        else:
            p.add_argument("--mu", default="2,1+w", help="ideal generators")
            p.add_argument("--z", default=None, help="generator of mu^2 (default: certify)")
            if name == "family-eps0":
                p.add_argument("--abar", required=True)
                p.add_argument("--bbar", required=True)
                p.add_argument("--eps1", dest="eps1_elt", required=True)
            elif name == "family-eps1":
                p.add_argument("--abar", required=True)
                p.add_argument("--eps1", dest="eps1_elt", required=True)
                p.add_argument("--dbar", required=True)
            elif name == "search":
                p.add_argument("--bound", type=int, default=2)
                p.add_argument("--limit", type=int, default=None)
        p.set_defaults(func=cmd_algebra)

    p_ker = sub.add_parser("kernel", help="structure of ker(m) in A(x)A")
    p_ker.add_argument("--alg", default=None)
    p_ker.add_argument("--relax", action="store_true")
    p_ker.add_argument("--bound", type=int, default=8)
    _add_common(p_ker)
    p_ker.set_defaults(func=cmd_kernel)

    p_link = sub.add_parser("link", help="cube-of-resolutions homology")
    link_sub = p_link.add_subparsers(dest="action", required=True)
    p_h = link_sub.add_parser("homology")
    p_h.add_argument("--pd", required=True)
    p_h.add_argument("--alg", default=None)
    _add_common(p_h)
    p_h.set_defaults(func=cmd_link)
    p_c = link_sub.add_parser("compare")
    p_c.add_argument("--pd1", required=True)
    p_c.add_argument("--pd2", required=True)
    p_c.add_argument("--alg", default=None)
    _add_common(p_c)
    p_c.set_defaults(func=cmd_link)
    p_l = link_sub.add_parser("lee-check")
    p_l.add_argument("--pd", required=True)
    p_l.add_argument("--alg", default=None)
    _add_common(p_l)
    p_l.set_defaults(func=cmd_link)
    p_corpus = link_sub.add_parser("corpus")
    p_corpus.add_argument("--out-dir", required=True)
    _add_common(p_corpus)
    p_corpus.set_defaults(func=cmd_link)

    p_tqft = sub.add_parser("tqft", help="closed surface evaluations")
    p_tqft.add_argument("--alg", default=None)
    p_tqft.add_argument("--relax", action="store_true")
    p_tqft.add_argument("--genus", type=int, default=2)
    _add_common(p_tqft)
    p_tqft.set_defaults(func=cmd_tqft)

    return ap


def main(argv=None):
    ap = make_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (ValidationError, NotOrderTwoError, UnsupportedRingError) as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return EXIT_REJECTED
    except SearchExhaustedError as exc:
        print(f"search exhausted: {exc}", file=sys.stderr)
        return EXIT_SEARCH
    except (MalformedPDError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"malformed input: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
