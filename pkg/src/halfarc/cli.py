"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import coverings
from .autgroup import are_isomorphic, automorphism_group
from .families import FiniteAbelianGroup, is_prime, parse_family
from .formats import decode_graph6, encode_graph6, read_graph_file, write_edge_list
from .graph import Graph, is_connected, valency
from .perm import PermGroup, find_element_of_order, format_perm, parse_perm
from .symmetry import analyze, find_hat_subgroup, transitivity_profile

BIG_LIMIT = 2000


class UsageError(Exception):
    pass


def _load(source: str) -> Graph:
    if os.path.exists(source):
        try:
            with open(source, encoding="utf-8") as fh:
                return read_graph_file(fh)
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read {source}: {exc}") from None
    try:
        return parse_family(source)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _guard(g: Graph, big: bool) -> None:
    if g.n > BIG_LIMIT and not big:
        raise UsageError(f"graph has {g.n} vertices; pass --big to analyse graphs over {BIG_LIMIT}")


def _emit(g: Graph, fmt: str, out: str | None) -> None:
    text = encode_graph6(g) + "\n" if fmt == "graph6" else write_edge_list(g)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_construct(args) -> int:
    g = _load(args.spec)
    _emit(g, args.format, args.out)
    return 0


def cmd_analyze(args) -> int:
    g = _load(args.input)
    _guard(g, args.big)
    t0 = time.perf_counter()
    rep = analyze(g)
    sys.stdout.write(f"input={args.input}\n" + rep.format())
    print(f"# {time.perf_counter() - t0:.3f}s", file=sys.stderr)
    return 0


def _group_arg(orders: list[int]) -> FiniteAbelianGroup:
    if not orders or any(k < 1 for k in orders):
        raise UsageError("--group needs positive cyclic factor orders")
    return FiniteAbelianGroup(tuple(orders))


def _cover_report(base: Graph, xi: coverings.VoltageAssignment, round_trip: bool) -> tuple[list[str], Graph]:
    cover = coverings.derived_graph(xi)
    action = coverings.voltage_action(xi)
    lines = [
        f"base_n={base.n}",
        f"group={' '.join(map(str, xi.group.orders))}",
        f"cover_n={cover.n}",
        f"cover_edges={cover.num_edges}",
        f"connected={str(is_connected(cover)).lower()}",
        f"projection_ok={str(coverings.is_covering_projection(cover, base, coverings.natural_projection(xi))).lower()}",
        f"regular_covering={str(coverings.is_regular_covering(cover, action)).lower()}",
    ]
    if round_trip:
        q, _ = coverings.quotient_graph(cover, action)
        lines.append(f"round_trip={str(are_isomorphic(q, base) is not None).lower()}")
    return lines, cover


def cmd_cover(args) -> int:
    base = _load(args.base)
    if not is_connected(base):
        raise UsageError("base graph must be connected")
    group = _group_arg(args.group)
    modes = sum(bool(m) for m in (args.voltages, args.search, args.lift_hat))
    if modes != 1:
        raise UsageError("choose exactly one of --voltages FILE, --search or --lift-hat")
    if args.voltages:
        try:
            with open(args.voltages, encoding="utf-8") as fh:
                xi = coverings.read_voltage_file(fh.read(), base)
        except (OSError, ValueError) as exc:
            raise UsageError(f"bad voltage file: {exc}") from None
        if xi.group != group:
            raise UsageError(f"voltage file group {xi.group} does not match --group {group}")
        lines, cover = _cover_report(base, xi, args.round_trip)
        if args.analyze:
            _guard(cover, args.big)
            lines.append(analyze(cover).format().rstrip("\n"))
        print("\n".join(lines))
        if args.out:
            _emit(cover, args.format, args.out)
        return 0
    if args.search:
        print(f"seed={args.seed}")
        print(f"tries={args.tries}")
        samples = coverings.sample_covers(base, group, args.seed, args.tries)
        found = 0
        for s in samples:
            hat = "-" if s.hat is None else str(s.hat).lower()
            order = "-" if s.aut_order is None else s.aut_order
            print(f"try={s.index} connected={str(s.connected).lower()} hat={hat} aut_order={order}")
            if s.hat:
                found += 1
                if args.out:
                    with open(f"{args.out}.{s.index}.volt", "w", encoding="utf-8") as fh:
                        fh.write(coverings.write_voltage_file(s.voltages))
        print(f"hat_covers={found}")
        return 0
    # --lift-hat
    if len(group.orders) != 1 or not is_prime(group.orders[0]):
        raise UsageError("--lift-hat needs a single prime-order cyclic group")
    p = group.orders[0]
    search = find_hat_subgroup(base)
    if search.group is None:
        print(f"hat_subgroup={search.status.value}")
        return 0
    h = search.group
    print(f"hat_subgroup_order={h.order()}")
    found = 0
    for i, xi in enumerate(coverings.invariant_voltages(base, h.generators, p, limit=args.tries)):
        cover = coverings.derived_graph(xi)
        if not is_connected(cover):
            print(f"candidate={i} connected=false")
            continue
        _guard(cover, args.big)
        rep = analyze(cover)
        print(f"candidate={i} connected=true hat={str(rep.hat).lower()} aut_order={rep.aut_order}")
        if rep.hat:
            found += 1
            if args.out:
                with open(f"{args.out}.{i}.volt", "w", encoding="utf-8") as fh:
                    fh.write(coverings.write_voltage_file(xi))
    print(f"hat_covers={found}")
    return 0


def cmd_quotient(args) -> int:
    g = _load(args.input)
    _guard(g, args.big)
    if bool(args.gens) == bool(args.order):
        raise UsageError("choose exactly one of --gens FILE or --order P")
    if args.gens:
        try:
            with open(args.gens, encoding="utf-8") as fh:
                gens = [parse_perm(ln) for ln in fh if ln.strip()]
        except (OSError, ValueError) as exc:
            raise UsageError(f"bad generator file: {exc}") from None
        n_group = PermGroup(g.n, gens)
    else:
        if not is_prime(args.order):
            raise UsageError("--order must be prime")
        aut = automorphism_group(g)
        elem = find_element_of_order(aut, args.order, seed=args.seed)
        if elem is None:
            print(f"seed={args.seed}")
            print(f"order_{args.order}_element=none")
            return 0
        n_group = PermGroup(g.n, [elem])
        print(f"seed={args.seed}")
        print(f"generator={format_perm(elem)}")
    try:
        q, orbit_of = coverings.quotient_graph(g, n_group)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    sizes = sorted({orbit_of.count(i) for i in range(q.n)})
    val = valency(q)
    print(f"orbits={q.n}")
    print(f"orbit_sizes={','.join(map(str, sizes))}")
    print(f"quotient_edges={q.num_edges}")
    print(f"quotient_valency={'-' if val is None else val}")
    print(f"regular_covering={str(coverings.is_regular_covering(g, n_group)).lower()}")
    if args.out:
        _emit(q, args.format, args.out)
    return 0


def _census_row(line: str) -> str:
    try:
        g = decode_graph6(line)
    except ValueError as exc:
        return f"error {exc}"
    aut = automorphism_group(g)
    prof = transitivity_profile(g, aut)
    flags = (prof.vertex_transitive, prof.edge_transitive, prof.arc_transitive, prof.half_arc_transitive)
    return f"{g.n} " + " ".join(str(f).lower() for f in flags) + f" {aut.order()}"


def cmd_census(args) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            lines = [ln.strip() for ln in fh if ln.strip()]
    except OSError as exc:
        raise UsageError(str(exc)) from None
    if args.jobs > 1 and lines:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(_census_row, lines))
    else:
        rows = [_census_row(ln) for ln in lines]
    print("row n vt et at hat aut_order")
    hats = errors = 0
    for i, row in enumerate(rows):
        print(f"{i} {row}")
        if row.startswith("error"):
            errors += 1
        elif row.split()[4] == "true":
            hats += 1
    print(f"# graphs={len(rows) - errors} hat={hats} errors={errors}")
    return 0


def cmd_verify(args) -> int:
    from .verify import run_all
    results = run_all(big=args.big)
    for r in results:
        print(r.line(), flush=True)
    failed = sum(not r.passed for r in results)
    print(f"# {len(results) - failed}/{len(results)} criteria passed")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="halfarc", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def fmt_opts(p):
        p.add_argument("--format", choices=("graph6", "edgelist"), default="edgelist")
        p.add_argument("--out", help="write the graph here instead of standard output")

    p = sub.add_parser("construct", help="build a family graph")
    p.add_argument("spec", help="x:r,m,n | rw6 | wreath:n | px:p | ca0:p | ca1:p | lex-cycle:n")
    fmt_opts(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("analyze", help="symmetry report for a family spec or graph file")
    p.add_argument("input")
    p.add_argument("--big", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("cover", help="derived covers of a base graph")
    p.add_argument("base")
    p.add_argument("--group", type=int, nargs="+", required=True, metavar="K")
    p.add_argument("--voltages", metavar="FILE")
    p.add_argument("--search", action="store_true", help="sample random T-reduced assignments")
    p.add_argument("--lift-hat", action="store_true",
                   help="build assignments to which a HAT subgroup of the base lifts")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tries", type=int, default=20)
    p.add_argument("--round-trip", action="store_true")
    p.add_argument("--analyze", action="store_true")
    p.add_argument("--big", action="store_true")
    fmt_opts(p)
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("quotient", help="quotient by a group of automorphisms")
    p.add_argument("input")
    p.add_argument("--gens", metavar="FILE", help="one permutation '[i0 i1 ...]' per line")
    p.add_argument("--order", type=int, help="quotient by a cyclic subgroup of this prime order")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--big", action="store_true")
    fmt_opts(p)
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("census", help="classify every graph6 line of a file")
    p.add_argument("file")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("verify", help="run the claim-verification battery")
    p.add_argument("--big", action="store_true", help="include the X(32;12,61) stretch check")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
