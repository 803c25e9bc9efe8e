"""Command-line front end: construct graphs, compute spectra, run checks and sweeps.

Output is machine-first (JSON documents, CSV sweep rows); --pretty switches
the JSON to indented form. Exit codes are stable: 0 all-pass, 1 a check
failed mathematically, 2 usage or parse error, 3 a resource cap was hit.
"""

from __future__ import annotations

import csv
import io
import json
import os
import random
import signal
import sys
from concurrent.futures import ProcessPoolExecutor

import click

from . import exact, graphs, spectra, tokens, verify
from .graphs import Graph, GraphError, KiteSpec
from .tokens import CapExceededError

EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CAP = 3


def _default_cap() -> int:
    env = os.environ.get("TOKEN_SPECTRA_CAP")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise click.UsageError(f"bad TOKEN_SPECTRA_CAP={env!r}") from exc
    return tokens.DEFAULT_CAP


def _parse_graph_spec(spec: str) -> Graph:
    """Parse "family:params" (e.g. cycle:4, complete_bipartite:2,3) or a file path."""
    if ":" in spec:
        name, _, rest = spec.partition(":")
        if name in graphs._STANDARD_FAMILIES:
            try:
                params = [int(x) for x in rest.split(",") if x != ""]
            except ValueError as exc:
                raise click.UsageError(f"bad graph spec {spec!r}") from exc
            try:
                return graphs.build_standard(name, params)
            except GraphError as exc:
                raise click.UsageError(str(exc)) from exc
    path = spec[1:] if spec.startswith("@") else spec
    try:
        with open(path, "r", encoding="ascii") as fh:
            return graphs.parse_edge_list(fh.read())
    except OSError as exc:
        raise click.UsageError(f"cannot read graph {spec!r}: {exc}") from exc
    except GraphError as exc:
        raise click.UsageError(f"bad edge list in {spec!r}: {exc}") from exc


def _parse_components(specs: tuple[str, ...]) -> list[Graph]:
    out = []
    for item in specs:
        mult = 1
        body = item
        if "*" in item:
            body, _, times = item.rpartition("*")
            try:
                mult = int(times)
            except ValueError as exc:
                raise click.UsageError(f"bad component multiplier in {item!r}") from exc
        g = _parse_graph_spec(body)
        out.extend([g] * mult)
    return out


def _parse_pair(text: str) -> tuple[int, int]:
    try:
        u, v = (int(x) for x in text.split(","))
    except ValueError as exc:
        raise click.UsageError(f"bad pair {text!r}, expected 'u,v'") from exc
    return u, v


def _emit(text: str, output: str | None) -> None:
    if output is None or output == "-":
        click.echo(text, nl=False)
    else:
        with open(output, "w", encoding="ascii") as fh:
            fh.write(text)


def _json_dump(obj, pretty: bool) -> str:
    return json.dumps(obj, indent=2 if pretty else None) + "\n"


def _wire_sigint(token: exact.CancelToken) -> None:
    # first Ctrl-C cancels the exact computation cooperatively
    signal.signal(signal.SIGINT, lambda *_: token.cancel())


@click.group()
def main() -> None:
    """Token graphs, Laplacian spectra, and theorem-instance verification."""


# ---------------------------------------------------------------------------
# construct


@main.command()
@click.argument("family")
@click.argument("params", nargs=-1, type=int)
@click.option("--head", help="head graph spec for kite/superkite")
@click.option("--root", type=int, default=0, show_default=True)
@click.option("-s", "s", type=int, help="number of tail paths / tree copies")
@click.option("-r", "r", type=int, help="tail path length (kite) or clique size (cutclique)")
@click.option("--tree", help="tree spec for superkite")
@click.option("--tree-root", type=int, default=0, show_default=True)
@click.option("--comp", multiple=True, help="component spec (repeatable, allows '*N')")
@click.option("--chord", multiple=True, help="extended-cycle chord 'i,j' (repeatable)")
@click.option("--nu", type=int, help="chord index sum for extended cycles")
@click.option("--mode", help="bipartite extension mode: plus_x or star_y")
@click.option("--edge", multiple=True, help="extra side-X edge 'u,v' (repeatable)")
@click.option("--graph", "graph_spec", help="base graph for token construction")
@click.option("-k", type=int, help="token count for token construction")
@click.option("--cap", type=int, default=None, help="token vertex cap")
@click.option("-o", "--output", help="output file (default stdout)")
def construct(family, params, head, root, s, r, tree, tree_root, comp, chord, nu,
              mode, edge, graph_spec, k, cap, output):
    """Write a graph in edge-list format.

    FAMILY is one of: path, cycle, complete, complete_bipartite, star,
    kite, superkite, cutclique, extcycle, bipartite, token.
    """
    try:
        header = None
        if family in graphs._STANDARD_FAMILIES:
            g = graphs.build_standard(family, list(params))
        elif family == "kite":
            if head is None or s is None or r is None:
                raise click.UsageError("kite needs --head, -s, -r")
            g, _ = graphs.build_kite(KiteSpec(head=_parse_graph_spec(head), root=root, s=s, r=r))
        elif family == "superkite":
            if head is None or tree is None or s is None:
                raise click.UsageError("superkite needs --head, --tree, -s")
            g = graphs.build_superkite(
                _parse_graph_spec(head), root, _parse_graph_spec(tree), tree_root, s
            )
        elif family == "cutclique":
            if r is None or not comp:
                raise click.UsageError("cutclique needs -r and --comp")
            g = graphs.build_cut_clique_join(r, _parse_components(comp))
        elif family == "extcycle":
            if len(params) != 1:
                raise click.UsageError("extcycle needs the cycle order")
            g = graphs.build_extended_cycle(params[0], [_parse_pair(c) for c in chord], nu=nu)
        elif family == "bipartite":
            if len(params) != 2 or mode is None:
                raise click.UsageError("bipartite needs n1 n2 and --mode")
            g = graphs.build_bipartite_extension(
                params[0], params[1], mode, [_parse_pair(e) for e in edge]
            )
        elif family == "token":
            if graph_spec is None or k is None:
                raise click.UsageError("token needs --graph and -k")
            base = _parse_graph_spec(graph_spec)
            tg = tokens.token_graph(base, k, cap=cap if cap is not None else _default_cap())
            _emit(tg.to_edge_list_text(), output)
            return
        else:
            raise click.UsageError(f"unknown family {family!r}")
    except GraphError as exc:
        raise click.UsageError(str(exc)) from exc
    except CapExceededError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_CAP)
    _emit(graphs.format_edge_list(g, header=header), output)


# ---------------------------------------------------------------------------
# spectrum


@main.command()
@click.argument("graph_spec")
@click.option("--exact", "exact_flag", is_flag=True, help="include the exact characteristic polynomial")
@click.option("--tol", type=float, default=spectra.DEFAULT_RESID_TOL, show_default=True)
@click.option("--group-tol", type=float, default=spectra.DEFAULT_GROUP_TOL, show_default=True)
@click.option("--pretty", is_flag=True)
@click.option("-o", "--output", help="output file (default stdout)")
def spectrum(graph_spec, exact_flag, tol, group_tol, pretty, output):
    """Laplacian spectrum of a graph, as JSON."""
    g = _parse_graph_spec(graph_spec)
    spec = spectra.eig_sym(spectra.laplacian(g), resid_tol=tol, group_tol=group_tol)
    doc = spec.to_json_dict()
    doc["n"] = g.n
    doc["m"] = g.m
    doc["algebraic_connectivity"] = float(spec.values[1]) if g.n >= 2 else None
    if exact_flag:
        token = exact.CancelToken()
        _wire_sigint(token)
        doc["char_poly"] = exact.char_poly(spectra.laplacian(g), cancel=token).to_json_list()
    _emit(_json_dump(doc, pretty), output)


# ---------------------------------------------------------------------------
# verify


def _build_certificate(check_id: str, opts: dict) -> verify.Certificate:
    def need(key, flag):
        if opts.get(key) is None:
            raise click.UsageError(f"check {check_id!r} needs {flag}")
        return opts[key]

    tol = opts["tol"]
    cap = opts["cap"]
    k = opts["k"]
    if check_id == "containment":
        g = _parse_graph_spec(need("graph", "--graph"))
        mode = "exact" if opts["exact"] else "float"
        token = exact.CancelToken()
        _wire_sigint(token)
        return verify.check_spectral_containment(g, need("k", "-k"), mode=mode, cap=cap, cancel=token)
    if check_id == "alpha-token":
        g = _parse_graph_spec(need("graph", "--graph"))
        return verify.check_alpha_token_equality(g, need("k", "-k"), tol=tol, cap=cap)
    if check_id == "edge-add-iff":
        g = _parse_graph_spec(need("graph", "--graph"))
        return verify.check_edge_add_alpha_iff(g, need("u", "-u"), need("v", "-v"), tol=tol)
    if check_id == "interlacing":
        g = _parse_graph_spec(need("graph", "--graph"))
        return verify.check_interlacing(g, need("u", "-u"), need("v", "-v"), tol=tol)
    if check_id == "pendant-bound":
        g = _parse_graph_spec(need("graph", "--graph"))
        return verify.check_pendant_bound(g, need("k", "-k"), tol=tol, cap=cap)
    if check_id in ("tail-edges", "kite-iff", "symmetrizer"):
        spec = KiteSpec(
            head=_parse_graph_spec(need("head", "--head")),
            root=opts["root"],
            s=need("s", "-s"),
            r=need("r", "-r"),
        )
        if check_id == "tail-edges":
            return verify.check_tail_edges_preserve_alpha(
                spec, [_parse_pair(a) for a in opts["add"]], tol=tol
            )
        if check_id == "kite-iff":
            return verify.check_kite_alpha_theta_iff(spec, tol=tol)
        uj = [_parse_pair(a) for a in opts["add"]] or None
        return verify.check_symmetrizer_commutation(spec, uj_edges=uj, tol=tol)
    if check_id == "kite-head":
        variant = need("variant", "--variant")
        kwargs = dict(
            s=need("s", "-s"), r=need("r", "-r"), k=k or 2, tol=tol, cap=cap,
            head_edges=[_parse_pair(a) for a in opts["add_head"]],
            tail_edges=[_parse_pair(a) for a in opts["add"]],
        )
        if variant == "cycle":
            return verify.check_kite_head_family("cycle", h=need("order", "--order"), **kwargs)
        return verify.check_kite_head_family(
            "bipartite", h1=need("h1", "--h1"), h2=need("h2", "--h2"),
            root_side=opts["side"], **kwargs,
        )
    if check_id == "cut-clique":
        comps = _parse_components(opts["comp"])
        if not comps:
            raise click.UsageError("cut-clique needs --comp")
        removed = [_parse_pair(a) for a in opts["remove"]]
        return verify.check_cut_clique(
            need("r", "-r"), comps, full_join=not removed, k=k or 2,
            removed_join_edges=removed, tol=tol, cap=cap,
        )
    if check_id == "bipartite-ext":
        return verify.check_bipartite_extension(
            need("n1", "--n1"), need("n2", "--n2"), need("mode", "--mode"),
            k or 2, x_edges=[_parse_pair(e) for e in opts["edge"]], tol=tol, cap=cap,
        )
    if check_id == "cut-vertex-split":
        g = _parse_graph_spec(need("graph", "--graph"))
        return verify.check_cut_vertex_split(g, need("vertex", "--vertex"), tol=tol)
    if check_id == "theta-table":
        return verify.check_theta_table(need("r", "-r"))
    raise click.UsageError(f"unknown check {check_id!r}")


@main.command(name="verify")
@click.argument("check_id")
@click.option("--graph", help="graph spec or edge-list file")
@click.option("-k", type=int)
@click.option("-u", type=int)
@click.option("-v", type=int)
@click.option("--exact", is_flag=True, help="containment: decide by exact divisibility")
@click.option("--head", help="kite head graph spec")
@click.option("--root", type=int, default=0, show_default=True)
@click.option("-s", "s", type=int)
@click.option("-r", "r", type=int)
@click.option("--variant", type=click.Choice(["cycle", "bipartite"]))
@click.option("--order", type=int, help="cycle head order h")
@click.option("--h1", type=int)
@click.option("--h2", type=int)
@click.option("--side", type=int, default=1, show_default=True, help="root side for bipartite heads")
@click.option("--add", multiple=True, help="tail edge 'u,v' to add (repeatable)")
@click.option("--add-head", multiple=True, help="head edge 'u,v' to add (repeatable)")
@click.option("--comp", multiple=True, help="cut-clique component spec (repeatable, allows '*N')")
@click.option("--remove", multiple=True, help="join edge 'u,v' to remove (repeatable)")
@click.option("--n1", type=int)
@click.option("--n2", type=int)
@click.option("--mode", type=click.Choice(["plus_x", "star_y"]))
@click.option("--edge", multiple=True, help="side-X edge 'u,v' (repeatable)")
@click.option("--vertex", type=int, help="cut vertex")
@click.option("--tol", type=float, default=verify.DEFAULT_ALPHA_TOL, show_default=True)
@click.option("--cap", type=int, default=None)
@click.option("--pretty", is_flag=True)
def verify_cmd(check_id, **opts):
    """Run one check and print its certificate; exit 1 on mathematical failure."""
    opts["cap"] = opts["cap"] if opts["cap"] is not None else _default_cap()
    try:
        cert = _build_certificate(check_id, opts)
    except GraphError as exc:
        raise click.UsageError(str(exc)) from exc
    except CapExceededError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_CAP)
    click.echo(_json_dump(cert.to_json_dict(), opts["pretty"]), nl=False)
    if cert.failed:
        sys.exit(EXIT_FAIL)


# ---------------------------------------------------------------------------
# sweep


def _sweep_instances(spec: dict, rng: random.Random) -> list[tuple[str, Graph]]:
    fam = spec.get("family")
    if not isinstance(fam, dict) or "name" not in fam:
        raise click.UsageError("sweep spec needs a family object with a name")
    name = fam["name"]
    out: list[tuple[str, Graph]] = []

    def span(key, default=None):
        val = fam.get(key, default)
        if val is None:
            raise click.UsageError(f"family {name!r} needs {key!r}")
        if isinstance(val, list):
            lo, hi = int(val[0]), int(val[1])
            return range(lo, hi + 1)
        return range(int(val), int(val) + 1)

    if name in ("path", "cycle", "complete", "star"):
        for n in span("n"):
            out.append((f"{name}:{n}", graphs.build_standard(name, [n])))
    elif name == "complete_bipartite":
        for n1 in span("n1"):
            for n2 in span("n2"):
                if n1 <= n2:
                    out.append((f"complete_bipartite:{n1},{n2}",
                                graphs.complete_bipartite_graph(n1, n2)))
    elif name == "tree_random":
        count = int(fam.get("count", 10))
        ns = list(span("n"))
        for i in range(count):
            n = ns[i % len(ns)]
            out.append((f"tree_random:{n}#{i}", graphs.random_tree(n, rng)))
    elif name == "random_connected":
        count = int(fam.get("count", 10))
        p = float(fam.get("p", 0.5))
        ns = list(span("n"))
        for i in range(count):
            n = ns[i % len(ns)]
            out.append((f"random_connected:{n}#{i}", graphs.random_connected_gnp(n, p, rng)))
    elif name == "theta_table":
        for r in span("r"):
            out.append((f"theta_table:{r}", None))
    else:
        raise click.UsageError(f"unknown sweep family {name!r}")
    return out


_TOKEN_CHECKS = {"alpha-token", "containment", "containment-exact", "pendant-bound"}


def _sweep_row(task: dict) -> dict:
    """Run one (instance, check) cell; returns the CSV row as a dict."""
    check = task["check"]
    g = task["graph"]
    tol = task["tol"]
    cap = task["cap"]
    k = task.get("k")
    try:
        if check == "theta-table":
            cert = verify.check_theta_table(task["r"])
        elif check == "alpha-token":
            cert = verify.check_alpha_token_equality(g, k, tol=tol, cap=cap)
        elif check == "containment":
            cert = verify.check_spectral_containment(g, k, mode="float", cap=cap)
        elif check == "containment-exact":
            cert = verify.check_spectral_containment(g, k, mode="exact", cap=cap)
        elif check == "pendant-bound":
            cert = verify.check_pendant_bound(g, k, tol=tol, cap=cap)
        elif check in ("edge-add-iff", "interlacing"):
            pair = task.get("pair")
            if pair is None:
                return {**task["key"], "verdict": verify.PRECONDITION_UNMET,
                        "detail": "no non-edge available", "runtime_ms": 0}
            fn = (verify.check_edge_add_alpha_iff if check == "edge-add-iff"
                  else verify.check_interlacing)
            cert = fn(g, pair[0], pair[1], tol=tol)
        else:
            raise click.UsageError(f"check {check!r} is not sweepable")
    except CapExceededError as exc:
        return {**task["key"], "verdict": "cap_exceeded", "detail": str(exc), "runtime_ms": 0}
    except GraphError as exc:
        # the generated instance does not meet this check's preconditions
        return {**task["key"], "verdict": verify.PRECONDITION_UNMET,
                "detail": str(exc), "runtime_ms": 0}
    detail = {kk: vv for kk, vv in cert.witnesses.items()
              if isinstance(vv, (int, float, str, bool))}
    return {**task["key"], "verdict": cert.verdict,
            "detail": json.dumps(detail, sort_keys=True), "runtime_ms": cert.runtime_ms}


@main.command()
@click.argument("spec_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--csv", "csv_path", help="write rows as CSV to this path (default stdout)")
@click.option("--jobs", type=int, default=1, show_default=True)
@click.option("--seed", type=int, default=None, help="override the spec seed")
@click.option("--cap", type=int, default=None)
@click.option("--pretty", is_flag=True)
def sweep(spec_file, csv_path, jobs, seed, cap, pretty):
    """Run a batch of checks over a family of instances; summary JSON on stdout."""
    spec = _load_sweep_spec(spec_file)
    rng = random.Random(seed if seed is not None else int(spec.get("seed", 0)))
    cap = cap if cap is not None else int(spec.get("cap", _default_cap()))
    tol = float(spec.get("tolerances", {}).get("tol", verify.DEFAULT_ALPHA_TOL))
    checks = spec.get("checks")
    if not checks:
        raise click.UsageError("sweep spec needs a non-empty checks list")
    k_range = spec.get("k_range", [2, 2])
    ks = list(range(int(k_range[0]), int(k_range[1]) + 1))

    instances = _sweep_instances(spec, rng)
    tasks = []
    for inst_id, g in instances:
        for check in checks:
            if check == "theta-table":
                r = int(inst_id.split(":")[1])
                tasks.append({"key": {"instance": inst_id, "check": check, "k": ""},
                              "check": check, "graph": None, "r": r, "tol": tol, "cap": cap})
                continue
            if check in ("edge-add-iff", "interlacing"):
                non_edges = [e for e in _all_pairs(g.n) if not g.has_edge(*e)]
                pair = rng.choice(non_edges) if non_edges else None
                tasks.append({"key": {"instance": inst_id, "check": check, "k": ""},
                              "check": check, "graph": g, "pair": pair, "tol": tol, "cap": cap})
                continue
            for k in ks:
                if check in _TOKEN_CHECKS and not (1 <= k <= max(1, g.n - 1)):
                    continue
                tasks.append({"key": {"instance": inst_id, "check": check, "k": k},
                              "check": check, "graph": g, "k": k, "tol": tol, "cap": cap})

    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_sweep_row, tasks))
    else:
        rows = [_sweep_row(t) for t in tasks]

    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=["instance", "check", "k", "verdict", "detail", "runtime_ms"])
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    if csv_path and csv_path != "-":
        with open(csv_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    else:
        click.echo(buf.getvalue(), nl=False)

    counts = {"pass": 0, "fail": 0, "precondition_unmet": 0, "cap_exceeded": 0}
    by_check: dict[str, dict] = {}
    for row in rows:
        counts[row["verdict"]] = counts.get(row["verdict"], 0) + 1
        per = by_check.setdefault(row["check"], {"pass": 0, "fail": 0, "precondition_unmet": 0, "cap_exceeded": 0})
        per[row["verdict"]] = per.get(row["verdict"], 0) + 1
    summary = {"total": len(rows), **counts, "by_check": by_check}
    click.echo(_json_dump(summary, pretty), nl=False)
    if counts.get("fail", 0):
        sys.exit(EXIT_FAIL)


def _all_pairs(n: int):
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def _load_sweep_spec(path: str) -> dict:
    text = open(path, "r", encoding="utf-8").read()
    if path.endswith(".toml"):
        try:
            import tomllib  # Python >= 3.11
        except ImportError:
            try:
                import tomli as tomllib
            except ImportError as exc:
                raise click.UsageError("TOML sweep specs need Python 3.11+ or tomli") from exc
        return tomllib.loads(text)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise click.UsageError(f"bad sweep spec: {exc}") from exc


if __name__ == "__main__":
    main()
