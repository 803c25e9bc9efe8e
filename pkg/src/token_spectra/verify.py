"""Instance checks that turn spectral statements into machine-readable verdicts.

Every check computes both sides of one identity or implication on a
concrete graph and returns a Certificate: verdict, the quantities
compared, and the tolerances used. Mathematical failure is data (verdict
"fail"), never an exception; only malformed inputs raise. A check whose
hypothesis does not hold on the instance reports "precondition_unmet"
instead of claiming anything.

Vertices in witnesses are reported both 0-indexed (internal labels) and
1-indexed, since figure labels conventionally start at 1.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations
from math import sqrt
from typing import Iterable, Sequence

import numpy as np

from .exact import CancelToken, char_poly, cycle_path_identity_check, poly_divides
from .graphs import (
    Graph,
    GraphError,
    KiteSpec,
    add_edges,
    build_bipartite_extension,
    build_cut_clique_join,
    build_kite,
    complete_bipartite_graph,
    cycle_graph,
    path_graph,
    remove_edges,
)
from .spectra import (
    algebraic_connectivity,
    eig_sym,
    eigenspace_has_equal_pair,
    laplacian,
    principal_submatrix,
    theta,
)
from .tokens import DEFAULT_CAP, token_graph

DEFAULT_ALPHA_TOL = 1e-7
DEFAULT_FLOAT_CONTAIN_TOL = 1e-6
DEFAULT_CONTAIN_TOL = 1e-3

PASS = "pass"
FAIL = "fail"
PRECONDITION_UNMET = "precondition_unmet"


@dataclass(frozen=True)
class Certificate:
    """Verdict of one theorem-instance check, with witnesses and tolerances."""

    check_id: str
    graph: dict
    verdict: str
    witnesses: dict
    tolerances: dict
    runtime_ms: int

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    @property
    def failed(self) -> bool:
        return self.verdict == FAIL

    def to_json_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "graph": self.graph,
            "verdict": self.verdict,
            "witnesses": self.witnesses,
            "tolerances": self.tolerances,
            "runtime_ms": self.runtime_ms,
        }


def _graph_field(g: Graph | None) -> dict:
    if g is None:
        return {"n": 0, "edges_hash": ""}
    return {"n": g.n, "edges_hash": g.fingerprint()}


def _finish(check_id, g, verdict, witnesses, tolerances, t0) -> Certificate:
    return Certificate(
        check_id=check_id,
        graph=_graph_field(g),
        verdict=verdict,
        witnesses=witnesses,
        tolerances=tolerances,
        runtime_ms=int((time.perf_counter() - t0) * 1000),
    )


def _close(a: float, b: float, tol: float) -> bool:
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def _pair_witness(u: int, v: int) -> dict:
    return {"u": u, "v": v, "u_one_based": u + 1, "v_one_based": v + 1}


def _alpha(g: Graph) -> tuple[float, np.ndarray]:
    return algebraic_connectivity(g)


# ---------------------------------------------------------------------------
# token-graph checks


def check_spectral_containment(
    g: Graph,
    k: int,
    mode: str = "exact",
    tol: float = DEFAULT_FLOAT_CONTAIN_TOL,
    cap: int = DEFAULT_CAP,
    cancel: CancelToken | None = None,
) -> Certificate:
    """Every Laplacian eigenvalue of g appears in the spectrum of its k-token graph.

    Exact mode decides divisibility of characteristic polynomials over the
    integers; float mode matches eigenvalue multisets within tol.
    """
    if mode not in ("exact", "float"):
        raise GraphError(f"unknown mode {mode!r}")
    t0 = time.perf_counter()
    tg = token_graph(g, k, cap=cap)
    witnesses: dict = {"k": k, "token_vertices": tg.graph.n, "mode": mode}
    if mode == "exact":
        p = char_poly(laplacian(g), cancel=cancel)
        q = char_poly(laplacian(tg.graph), cancel=cancel)
        divides, result = poly_divides(p, q)
        if divides:
            witnesses["quotient_degree"] = result.degree
            witnesses["quotient"] = result.to_json_list()
        else:
            witnesses["remainder"] = result.to_json_list()
        verdict = PASS if divides else FAIL
        return _finish("containment", g, verdict, witnesses, {"mode": "exact"}, t0)

    spec_g = eig_sym(laplacian(g)).values
    spec_t = eig_sym(laplacian(tg.graph)).values
    bound = tol * max(1.0, float(spec_t[-1]))
    unmatched = []
    j = 0
    for lam in spec_g:
        while j < len(spec_t) and spec_t[j] < lam - bound:
            j += 1
        if j < len(spec_t) and abs(spec_t[j] - lam) <= bound:
            j += 1
        else:
            unmatched.append(float(lam))
    witnesses["unmatched"] = unmatched
    verdict = PASS if not unmatched else FAIL
    return _finish("containment", g, verdict, witnesses, {"tol": tol}, t0)


def check_alpha_token_equality(
    g: Graph, k: int, tol: float = DEFAULT_ALPHA_TOL, cap: int = DEFAULT_CAP
) -> Certificate:
    """Algebraic connectivity of g equals that of its k-token graph."""
    t0 = time.perf_counter()
    a_base, _ = _alpha(g)
    tg = token_graph(g, k, cap=cap)
    a_token, _ = _alpha(tg.graph)
    ok = abs(a_token - a_base) <= tol * max(1.0, abs(a_base))
    witnesses = {
        "k": k,
        "alpha_base": a_base,
        "alpha_token": a_token,
        "difference": a_token - a_base,
    }
    return _finish("alpha-token", g, PASS if ok else FAIL, witnesses, {"tol": tol}, t0)


# ---------------------------------------------------------------------------
# edge perturbation checks


def check_edge_add_alpha_iff(
    g: Graph,
    u: int,
    v: int,
    tol: float = DEFAULT_ALPHA_TOL,
    pair_tol: float = DEFAULT_ALPHA_TOL,
) -> Certificate:
    """Adding uv preserves the algebraic connectivity iff some vector in the
    full Fiedler eigenspace takes equal values at u and v.

    Both sides are computed independently and the check passes when they
    agree, validating the equivalence on this instance in both directions.
    """
    if g.has_edge(u, v):
        raise GraphError(f"edge ({u}, {v}) already present")
    t0 = time.perf_counter()
    a0, basis = _alpha(g)
    a1, _ = _alpha(add_edges(g, [(u, v)]))
    lhs = abs(a1 - a0) <= tol * max(1.0, abs(a0))
    rhs, wit = eigenspace_has_equal_pair(basis, (u, v), tol=pair_tol)
    witnesses = {
        "pair": _pair_witness(u, v),
        "alpha_before": a0,
        "alpha_after": a1,
        "alpha_preserved": lhs,
        "equal_pair_exists": rhs,
        "eigenspace_dim": int(basis.shape[1]),
    }
    if wit is not None:
        witnesses["witness_vector"] = [float(x) for x in wit]
    verdict = PASS if lhs == rhs else FAIL
    return _finish(
        "edge-add-iff", g, verdict, witnesses, {"tol": tol, "pair_tol": pair_tol}, t0
    )


def check_interlacing(g: Graph, u: int, v: int, tol: float = DEFAULT_ALPHA_TOL) -> Certificate:
    """Laplacian eigenvalues of g and g + uv interlace."""
    if g.has_edge(u, v):
        raise GraphError(f"edge ({u}, {v}) already present")
    t0 = time.perf_counter()
    w0 = eig_sym(laplacian(g)).values
    w1 = eig_sym(laplacian(add_edges(g, [(u, v)]))).values
    bound = tol * max(1.0, float(w1[-1]))
    violations = []
    for i in range(g.n):
        if w0[i] > w1[i] + bound:
            violations.append({"i": i, "kind": "lower", "before": float(w0[i]), "after": float(w1[i])})
        if i + 1 < g.n and w1[i] > w0[i + 1] + bound:
            violations.append({"i": i, "kind": "upper", "after": float(w1[i]), "next_before": float(w0[i + 1])})
    witnesses = {
        "pair": _pair_witness(u, v),
        "violations": violations,
        "spectrum_before": [float(x) for x in w0],
        "spectrum_after": [float(x) for x in w1],
    }
    verdict = PASS if not violations else FAIL
    return _finish("interlacing", g, verdict, witnesses, {"tol": tol}, t0)


def check_pendant_bound(
    g: Graph, k: int, tol: float = DEFAULT_ALPHA_TOL, cap: int = DEFAULT_CAP
) -> Certificate:
    """Attaching a pendant vertex raises the token algebraic connectivity by at most 1.

    The pendant is attached to vertex 0 so the instance is reproducible.
    Requires 2 <= k <= n/2 where n counts the pendant-augmented graph.
    """
    n_aug = g.n + 1
    if not (2 <= k <= n_aug / 2):
        raise GraphError(f"need 2 <= k <= {n_aug / 2} (augmented order / 2), got k={k}")
    t0 = time.perf_counter()
    h = Graph(n_aug, g.edges + ((0, g.n),))
    a_h = _alpha(token_graph(h, k, cap=cap).graph)[0]
    a_km1 = _alpha(token_graph(g, k - 1, cap=cap).graph)[0]
    a_k = _alpha(token_graph(g, k, cap=cap).graph)[0]
    bound = min(a_km1 + 1.0, a_k + 1.0)
    ok = a_h <= bound + tol * max(1.0, bound)
    witnesses = {
        "k": k,
        "alpha_token_augmented": a_h,
        "alpha_token_km1": a_km1,
        "alpha_token_k": a_k,
        "bound": bound,
        "pendant_attached_to": _pair_witness(0, g.n),
    }
    return _finish("pendant-bound", g, PASS if ok else FAIL, witnesses, {"tol": tol}, t0)


# ---------------------------------------------------------------------------
# kite machinery


def _tail_index(spec: KiteSpec) -> dict[int, tuple[int, int]]:
    _, table = build_kite(spec)
    return {label: ij for ij, label in table.items()}


def _validate_level_edges(
    spec: KiteSpec, edges: Iterable[tuple[int, int]], min_path: int
) -> list[tuple[int, int]]:
    # edges must join tail vertices on one level j, with path indices >= min_path
    where = _tail_index(spec)
    out = []
    for u, v in edges:
        if u not in where or v not in where:
            raise GraphError(f"edge ({u}, {v}) is not between tail vertices")
        (iu, ju), (iv, jv) = where[u], where[v]
        if ju != jv:
            raise GraphError(f"edge ({u}, {v}) joins different tail levels {ju} and {jv}")
        if iu < min_path or iv < min_path:
            raise GraphError(
                f"edge ({u}, {v}) touches path {min(iu, iv)}, allowed paths start at {min_path}"
            )
        out.append((u, v))
    return out


def check_tail_edges_preserve_alpha(
    spec: KiteSpec,
    added_edges: Sequence[tuple[int, int]],
    tol: float = DEFAULT_ALPHA_TOL,
) -> Certificate:
    """Adding edges inside tail levels preserves alpha, provided alpha != theta_r.

    When alpha equals theta_r within tolerance the hypothesis fails and the
    verdict is precondition_unmet: no claim is made either way.
    """
    t0 = time.perf_counter()
    g, _ = build_kite(spec)
    edges = _validate_level_edges(spec, added_edges, min_path=1)
    a0, _ = _alpha(g)
    th = theta(spec.r, spec.r)
    witnesses = {
        "alpha": a0,
        "theta_r": th,
        "added_edges": [_pair_witness(u, v) for u, v in edges],
    }
    if _close(a0, th, tol):
        return _finish(
            "tail-edges", g, PRECONDITION_UNMET, witnesses, {"tol": tol}, t0
        )
    a1, _ = _alpha(add_edges(g, edges))
    witnesses["alpha_after"] = a1
    ok = abs(a1 - a0) <= tol * max(1.0, abs(a0))
    return _finish("tail-edges", g, PASS if ok else FAIL, witnesses, {"tol": tol}, t0)


def _head_submatrix_min_eig(head: Graph, root: int) -> float | None:
    """Smallest eigenvalue of the head Laplacian restricted away from the root.

    None for a single-vertex head: the submatrix is empty and every bound
    on its eigenvalues holds vacuously.
    """
    if head.n == 1:
        return None
    keep = [i for i in range(head.n) if i != root]
    sub = principal_submatrix(laplacian(head), keep)
    return float(eig_sym(sub).values[0])


def check_kite_alpha_theta_iff(spec: KiteSpec, tol: float = DEFAULT_ALPHA_TOL) -> Certificate:
    """alpha equals theta_r exactly when the head submatrix eigenvalue is >= theta_r.

    Both sides are evaluated independently; the certificate passes iff they
    agree on this kite.
    """
    t0 = time.perf_counter()
    g, _ = build_kite(spec)
    a, _ = _alpha(g)
    th = theta(spec.r, spec.r)
    lam = _head_submatrix_min_eig(spec.head, spec.root)
    lhs = _close(a, th, tol)
    rhs = True if lam is None else lam >= th - tol * max(1.0, th)
    witnesses = {
        "alpha": a,
        "theta_r": th,
        "alpha_equals_theta": lhs,
        "head_submatrix_min_eig": lam,
        "head_bound_holds": rhs,
    }
    verdict = PASS if lhs == rhs else FAIL
    return _finish("kite-iff", g, verdict, witnesses, {"tol": tol}, t0)


def build_kite_symmetrizer(spec: KiteSpec) -> np.ndarray:
    """Integer symmetrizer (s-1) * S for a kite.

    S is the identity on head vertices and on path 1, and averages each
    level's remaining tail vertices: entries 1/(s-1) on U_j x U_j where
    U_j holds the level-j vertices of paths 2..s. Returned scaled by
    (s-1) so all entries are integers.
    """
    _, table = build_kite(spec)
    n = spec.n
    s = spec.s
    m = np.zeros((n, n), dtype=np.int64)
    for w in range(spec.head.n):
        m[w, w] = s - 1
    for j in range(1, spec.r + 1):
        m[table[(1, j)], table[(1, j)]] = s - 1
        level = [table[(i, j)] for i in range(2, s + 1)]
        for a in level:
            for b in level:
                m[a, b] = 1
    return m


def _default_uj_edges(spec: KiteSpec) -> list[tuple[int, int]]:
    _, table = build_kite(spec)
    out = []
    for j in range(1, spec.r + 1):
        level = [table[(i, j)] for i in range(2, spec.s + 1)]
        out.extend(combinations(level, 2))
    return out


def check_symmetrizer_commutation(
    spec: KiteSpec,
    uj_edges: Sequence[tuple[int, int]] | None = None,
    tol: float = DEFAULT_ALPHA_TOL,
    contain_tol: float = DEFAULT_CONTAIN_TOL,
) -> Certificate:
    """The kite Laplacian commutes with its symmetrizer, exactly over the integers.

    Also verifies the consequences: the symmetrizer maps every eigenspace
    into itself with some nonzero image whose tail coordinates agree per
    level, and every distinct eigenvalue of the kite persists in the graph
    perturbed by edges inside the U_j levels (within contain_tol).
    """
    t0 = time.perf_counter()
    g, table = build_kite(spec)
    if uj_edges is None:
        edges = _default_uj_edges(spec)
    else:
        edges = _validate_level_edges(spec, uj_edges, min_path=2)
    L = laplacian(g)
    S_scaled = build_kite_symmetrizer(spec)
    commutes = bool(np.array_equal(L @ S_scaled, S_scaled @ L))

    S = S_scaled.astype(float) / (spec.s - 1)
    spec_g = eig_sym(L)
    stable = True
    some_nonzero_image = True
    level_sets = [
        [table[(i, j)] for i in range(2, spec.s + 1)] for j in range(1, spec.r + 1)
    ]
    for grp in spec_g.groups:
        img = S @ grp.basis
        # containment in the eigenspace: projection onto the complement vanishes
        out_of_space = img - grp.basis @ (grp.basis.T @ img)
        if np.abs(out_of_space).max() > tol * max(1.0, float(spec_g.values[-1])):
            stable = False
        norms = np.linalg.norm(img, axis=0)
        if norms.max() <= tol:
            some_nonzero_image = False
        col = img[:, int(np.argmax(norms))]
        for level in level_sets:
            vals = col[level]
            if vals.size and np.abs(vals - vals.mean()).max() > tol:
                stable = False

    gp = add_edges(g, edges)
    spec_gp = eig_sym(laplacian(gp).astype(float))
    missing = []
    for val in spec_g.distinct_values():
        if min(abs(val - x) for x in spec_gp.values) > contain_tol:
            missing.append(val)

    witnesses = {
        "commutes_exactly": commutes,
        "eigenspaces_stable": stable,
        "nonzero_symmetrized_image": some_nonzero_image,
        "distinct_eigenvalues": spec_g.distinct_values(),
        "perturbed_spectrum": [float(x) for x in spec_gp.values],
        "missing_eigenvalues": missing,
        "added_edges": [_pair_witness(u, v) for u, v in edges],
    }
    ok = commutes and stable and some_nonzero_image and not missing
    return _finish(
        "symmetrizer", g, PASS if ok else FAIL, witnesses,
        {"tol": tol, "contain_tol": contain_tol}, t0,
    )


def check_kite_head_family(
    variant: str,
    s: int,
    r: int,
    h: int | None = None,
    h1: int | None = None,
    h2: int | None = None,
    root_side: int = 1,
    head_edges: Sequence[tuple[int, int]] = (),
    tail_edges: Sequence[tuple[int, int]] = (),
    k: int = 2,
    tol: float = DEFAULT_ALPHA_TOL,
    num_tol: float = 1e-9,
    cap: int = DEFAULT_CAP,
) -> Certificate:
    """Kites with cycle or complete-bipartite heads keep alpha on their token graphs.

    cycle variant: head C_h rooted at 0, hypothesis h <= 2r + 1; the
    closed-form bridge (cycle submatrix vs path spectrum) is verified
    exactly. bipartite variant: head K_{h1,h2} rooted in side root_side;
    the head submatrix eigenvalue must match (h - sqrt(h^2 - 4m)) / 2
    where m is the size of the side opposite the root, and the hypothesis
    asks that value to be >= theta_r. The perturbed kite (optional extra
    head edges plus U_j level edges) must then satisfy
    alpha(G+) == alpha(F_k(G+)).
    """
    t0 = time.perf_counter()
    if variant == "cycle":
        if h is None:
            raise GraphError("cycle variant needs h")
        head = cycle_graph(h)
        root = 0
        spec = KiteSpec(head=head, root=root, s=s, r=r)
        lam = _head_submatrix_min_eig(head, root)
        path_spec = eig_sym(laplacian(path_graph(h)).astype(float)).values
        identity_exact = cycle_path_identity_check(h)
        bridge_ok = identity_exact and abs(lam - float(path_spec[1])) <= num_tol
        hypothesis = h <= 2 * r + 1
        witnesses = {
            "h": h,
            "head_submatrix_min_eig": lam,
            "path_lambda2": float(path_spec[1]),
            "identity_exact": identity_exact,
        }
    elif variant == "bipartite":
        if h1 is None or h2 is None:
            raise GraphError("bipartite variant needs h1 and h2")
        if root_side not in (1, 2):
            raise GraphError("root_side must be 1 or 2")
        head = complete_bipartite_graph(h1, h2)
        root = 0 if root_side == 1 else h1
        spec = KiteSpec(head=head, root=root, s=s, r=r)
        lam = _head_submatrix_min_eig(head, root)
        h_total = h1 + h2
        opposite = h2 if root_side == 1 else h1
        closed_form = (h_total - sqrt(h_total * h_total - 4 * opposite)) / 2.0
        bridge_ok = abs(lam - closed_form) <= num_tol
        th = theta(r, r)
        hypothesis = closed_form >= th - tol * max(1.0, th)
        witnesses = {
            "h1": h1,
            "h2": h2,
            "root_side": root_side,
            "head_submatrix_min_eig": lam,
            "closed_form": closed_form,
        }
    else:
        raise GraphError(f"unknown variant {variant!r}")

    g, _ = build_kite(spec)
    witnesses["theta_r"] = theta(r, r)
    if not hypothesis:
        return _finish("kite-head", g, PRECONDITION_UNMET, witnesses, {"tol": tol}, t0)

    extra = list(_validate_level_edges(spec, tail_edges, min_path=2))
    for u, v in head_edges:
        if u >= head.n or v >= head.n:
            raise GraphError(f"head edge ({u}, {v}) leaves the head")
        extra.append((u, v))
    gp = add_edges(g, extra) if extra else g
    a_gp, _ = _alpha(gp)
    a_token, _ = _alpha(token_graph(gp, k, cap=cap).graph)
    alpha_ok = abs(a_token - a_gp) <= tol * max(1.0, abs(a_gp))
    witnesses.update(
        {
            "alpha_perturbed": a_gp,
            "alpha_token": a_token,
            "k": k,
            "added_edges": [_pair_witness(u, v) for u, v in extra],
        }
    )
    verdict = PASS if (bridge_ok and alpha_ok) else FAIL
    witnesses["bridge_ok"] = bridge_ok
    return _finish("kite-head", g, verdict, witnesses, {"tol": tol, "num_tol": num_tol}, t0)


def check_cut_vertex_split(g: Graph, cut_vertex: int, tol: float = DEFAULT_ALPHA_TOL) -> Certificate:
    """At a cut vertex, equal smallest submatrix eigenvalues pin down alpha.

    The Laplacian restricted to each component of g minus the cut vertex
    gives one eigenvalue per component; if the two smallest agree, alpha
    must equal them. Otherwise the verdict is precondition_unmet and the
    dichotomy alpha < second-smallest is asserted instead.
    """
    if not (0 <= cut_vertex < g.n):
        raise GraphError(f"vertex {cut_vertex} out of range")
    t0 = time.perf_counter()
    sub_all = Graph(g.n, tuple(e for e in g.edges if cut_vertex not in e))
    comps = [c for c in sub_all.components() if c != (cut_vertex,)]
    if len(comps) < 2:
        raise GraphError(f"vertex {cut_vertex} is not a cut vertex")
    L = laplacian(g)
    lam1s = sorted(
        float(eig_sym(principal_submatrix(L, comp)).values[0]) for comp in comps
    )
    a, _ = _alpha(g)
    witnesses = {
        "cut_vertex": {"index": cut_vertex, "one_based": cut_vertex + 1},
        "alpha": a,
        "component_min_eigs": lam1s,
    }
    if _close(lam1s[0], lam1s[1], tol):
        ok = _close(a, lam1s[0], tol)
        return _finish("cut-vertex-split", g, PASS if ok else FAIL, witnesses, {"tol": tol}, t0)
    dichotomy = a <= lam1s[1] + tol * max(1.0, lam1s[1])
    witnesses["dichotomy_holds"] = dichotomy
    verdict = PRECONDITION_UNMET if dichotomy else FAIL
    return _finish("cut-vertex-split", g, verdict, witnesses, {"tol": tol}, t0)


# ---------------------------------------------------------------------------
# bipartite extensions and cut cliques


def check_bipartite_extension(
    n1: int,
    n2: int,
    mode: str,
    k: int,
    x_edges: Sequence[tuple[int, int]] = (),
    tol: float = DEFAULT_ALPHA_TOL,
    cap: int = DEFAULT_CAP,
) -> Certificate:
    """Extended complete bipartite graphs keep alpha on their token graphs.

    Adding edges inside the smaller side leaves alpha at n1; completing the
    larger side leaves it at n2.
    """
    t0 = time.perf_counter()
    g = build_bipartite_extension(n1, n2, mode, x_edges)
    expected = float(n1 if mode == "plus_x" else n2)
    a, _ = _alpha(g)
    a_token, _ = _alpha(token_graph(g, k, cap=cap).graph)
    ok = _close(a, expected, tol) and _close(a_token, expected, tol)
    witnesses = {
        "mode": mode,
        "k": k,
        "expected": expected,
        "alpha": a,
        "alpha_token": a_token,
    }
    return _finish("bipartite-ext", g, PASS if ok else FAIL, witnesses, {"tol": tol}, t0)


def check_cut_clique(
    r: int,
    components: Sequence[Graph],
    full_join: bool = True,
    k: int = 2,
    removed_join_edges: Sequence[tuple[int, int]] = (),
    tol: float = DEFAULT_ALPHA_TOL,
    cap: int = DEFAULT_CAP,
) -> Certificate:
    """A cut clique bounds alpha by r; a full join attains it, on the token graph too.

    With the full join, alpha(G) = alpha(F_k(G)) = r is asserted. With join
    edges removed the inequality is strict, but no quantitative margin is
    available, so only alpha <= r is asserted and the gap is recorded.
    """
    t0 = time.perf_counter()
    g = build_cut_clique_join(r, components)
    if not full_join:
        if not removed_join_edges:
            raise GraphError("partial join requires the removed join edges")
        for u, v in removed_join_edges:
            lo, hi = min(u, v), max(u, v)
            if not (lo < r <= hi):
                raise GraphError(f"({u}, {v}) is not a clique-component join edge")
        g = remove_edges(g, removed_join_edges)
    elif removed_join_edges:
        raise GraphError("removed_join_edges given but full_join is True")

    a, _ = _alpha(g)
    bound_ok = a <= r + tol * max(1.0, float(r))
    witnesses = {
        "r": r,
        "k": k,
        "n": g.n,
        "alpha": a,
        "full_join": full_join,
        "bound_alpha_le_r": bound_ok,
    }
    if not full_join:
        witnesses["gap"] = float(r) - a
        verdict = PASS if bound_ok else FAIL
        return _finish("cut-clique", g, verdict, witnesses, {"tol": tol}, t0)
    a_token, _ = _alpha(token_graph(g, k, cap=cap).graph)
    witnesses["alpha_token"] = a_token
    ok = bound_ok and _close(a, float(r), tol) and _close(a_token, float(r), tol)
    return _finish("cut-clique", g, PASS if ok else FAIL, witnesses, {"tol": tol}, t0)


# ---------------------------------------------------------------------------
# closed-form table


def check_theta_table(r: int, tol: float = 1e-9) -> Certificate:
    """Closed-form theta values match the pendant-path submatrix spectrum.

    theta(r, k) for k = r..1 must equal the ascending eigenvalues of the
    path principal submatrix elementwise within tol.
    """
    if r < 1:
        raise GraphError(f"need r >= 1, got {r}")
    t0 = time.perf_counter()
    sub = principal_submatrix(laplacian(path_graph(r + 1)), range(1, r + 1))
    eigs = eig_sym(sub.astype(float)).values
    closed = [theta(r, k) for k in range(r, 0, -1)]
    err = max(abs(float(e) - c) for e, c in zip(eigs, closed))
    witnesses = {
        "r": r,
        "closed_form": closed,
        "submatrix_eigs": [float(x) for x in eigs],
        "max_error": err,
    }
    verdict = PASS if err <= tol else FAIL
    return _finish("theta-table", None, verdict, witnesses, {"tol": tol}, t0)
