"""Static registry of named checks and the JSON report they produce.

Each check returns ``(computed, expected)`` as JSON-friendly values; status
is ``pass`` exactly when the two compare equal.  Records are ordered by id,
never by completion order, so reports are reproducible.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from math import comb
from typing import Any, Callable

import numpy as np

from . import codes, lattices, liealg, modspace, quadspace
from .gf2 import perp

SCHEMA = 1


@dataclass
class CheckRecord:
    id: str
    paper_anchor: str
    status: str
    computed: Any
    expected: Any

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class Check:
    id: str
    anchor: str
    fn: Callable[[], tuple[Any, Any]]

    def run(self) -> CheckRecord:
        try:
            computed, expected = self.fn()
        except Exception as exc:  # a crashing check is a failing check
            return CheckRecord(self.id, self.anchor, "fail", f"error: {exc!r}", None)
        computed, expected = _jsonable(computed), _jsonable(expected)
        status = "pass" if computed == expected else "fail"
        return CheckRecord(self.id, self.anchor, status, computed, expected)


def _jsonable(x):
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, (tuple, list)):
        return [_jsonable(t) for t in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return x


REGISTRY: dict[str, Check] = {}


def register(id: str, anchor: str):
    def deco(fn):
        if id in REGISTRY:
            raise ValueError(f"duplicate check id {id}")
        REGISTRY[id] = Check(id, anchor, fn)
        return fn

    return deco


# ---------------------------------------------------------------------------
# codes

QD_FAMILY = ["Dex", "D[8]", "D[7]", "One(16)", "DirectSum(RM14,RM14,RM14)", "DirectSum(RM14,ExtDbl(d16plus))"]


@register("codes.dex.basic", "triangular 48-code: dimension, triple evenness, all-one word")
def _dex_basic():
    d = codes.dex()
    p = d.predicates()
    return [d.length, d.dim, p.is_triply_even, p.contains_allone], [48, 9, True, True]


@register("codes.lid", "dimension of the product code of the triangular 48-code")
def _lid():
    return codes.star_product(codes.dex()).dim, 37


@register("codes.dex.dual_basis", "39-vector basis of the dual of the triangular 48-code")
def _dual_basis():
    vecs = codes.dex_dual_basis()
    d = codes.dex()
    orth = all(v.dot(b) == 0 for v in vecs for b in d.basis())
    return [len(vecs), codes.rank_of(vecs), orth], [39, 39, True]


@register("codes.enum.d16plus", "weight enumerator of d16+")
def _enum_d16():
    return codes.d16_plus().weight_enumerator(), {0: 1, 4: 28, 8: 198, 12: 28, 16: 1}


@register("codes.enum.RM14", "weight enumerator of RM(1,4)")
def _enum_rm():
    return codes.rm_1_4().weight_enumerator(), {0: 1, 8: 30, 16: 1}


def _qd_check(name):
    def fn():
        d = codes.catalog(name)
        return codes.qd_dimension(d), 1 + comb(d.dim, 2)

    return fn


def _eta_check(name):
    def fn():
        d = codes.catalog(name)
        return perp(codes.eta_kernel(d)) == codes.star_product(d).space, True

    return fn


def _uniq_check(name):
    def fn():
        d = codes.catalog(name)
        crit = codes.uniqueness_criterion(d).satisfied
        solvable = all(codes.solve_eta_preimage(q) is not None for q in codes.qd_space(d))
        return solvable, crit

    return fn


for _name in QD_FAMILY:
    register(f"codes.qd.{_name}", "dimension of the relabeling space is 1 + C(d,2)")(_qd_check(_name))
    register(f"codes.eta_perp.{_name}", "annihilator of the kernel of eta is the product code")(_eta_check(_name))
    register(f"codes.uniqueness.{_name}", "eta-preimages exist exactly under the product-code criterion")(
        _uniq_check(_name)
    )


def random_dex_subcodes(count: int = 50, seed: int = 20240601) -> list:
    rng = np.random.default_rng(seed)
    d = codes.dex()
    return [codes.random_subcode(d, int(rng.integers(1, d.dim + 1)), rng) for _ in range(count)]


@register("codes.qd.random50", "relabeling-space dimension on 50 random subcodes containing 1")
def _qd_random():
    good = 0
    subs = random_dex_subcodes()
    for c in subs:
        good += codes.qd_dimension(c) == 1 + comb(c.dim, 2) and c.allone in c
    return good, len(subs)


@register("codes.uniqueness.random50", "preimage solvability matches the criterion on random subcodes")
def _uniq_random():
    agree = 0
    subs = random_dex_subcodes()
    for c in subs:
        crit = codes.uniqueness_criterion(c).satisfied
        solvable = all(codes.solve_eta_preimage(q) is not None for q in codes.qd_space(c))
        eta_ok = perp(codes.eta_kernel(c)) == codes.star_product(c).space
        agree += (crit == solvable) and eta_ok
    return agree, len(subs)


# ---------------------------------------------------------------------------
# quadratic spaces


@register("quad.s5.maximal", "all m=5 constructions are maximal totally singular of dim 15")
def _s5_dims():
    params = quadspace.admissible_parameters(5)
    dims = sorted({(quadspace.construct(p).dim, quadspace.construct(p).is_maximal) for p in params})
    return [len(params), dims], [15, [[15, True]]]


@register("quad.s5.cond2", "no m=5 construction satisfies condition (2)")
def _s5_cond2():
    hits = [str(p) for p in quadspace.admissible_parameters(5) if quadspace.cond2_check(quadspace.construct(p)).holds]
    return hits, []


@register("quad.s5.profiles_distinct", "the m=5 constructions have pairwise distinct invariant profiles")
def _s5_distinct():
    profs = {quadspace.invariant_profile(quadspace.construct(p)) for p in quadspace.admissible_parameters(5)}
    return len(profs), 15


@register("quad.flag", "nested flag space: dimension, condition (2), axis dimensions")
def _flag():
    s = quadspace.construct_flag()[0]
    return [s.dim, quadspace.cond2_check(s).holds, list(quadspace.coordinate_intersections(s))], [15, True, [4, 2, 1]]


@register("quad.tflag", "flag-space transform: axis dims (3,2,0), no condition (2), profile of S(5,3,2,+)")
def _tflag():
    t = quadspace.transform_flag()[2]
    same = quadspace.invariant_profile(t) == quadspace.invariant_profile(quadspace.named_space("S(5,3,2,+)"))
    return [list(quadspace.coordinate_intersections(t)), quadspace.cond2_check(t).holds, same], [[3, 2, 0], False, True]


@register("quad.t540", "transform of S(5,4,0) has the profile of S(5,3,0,-), epsilon minus")
def _t540():
    t = quadspace.transform_540()[2]
    pt = quadspace.invariant_profile(t)
    same = pt == quadspace.invariant_profile(quadspace.named_space("S(5,3,0,-)"))
    return [same, pt.epsilon], [True, "minus"]


@register("quad.t520", "transform of S(5,2,0) satisfies condition (2)")
def _t520():
    return quadspace.cond2_check(quadspace.transform_520()[2]).holds, True


@register("quad.t521", "transform of S(5,2,1,+) satisfies condition (2)")
def _t521():
    return quadspace.cond2_check(quadspace.transform_521()[2]).holds, True


# ---------------------------------------------------------------------------
# module classes


@register("mod.cosets", "E*/E has 256 cosets; E has minimum norm 4")
def _cosets():
    reps = modspace.coset_representatives()
    return [len(reps), len(modspace.coset_short_vectors(0, 2))], [256, 0]


@register("mod.sign_split", "sign split of graded dimensions over all 256 cosets")
def _sign_split():
    bad = 0
    for lab in range(256):
        for w in modspace.WEIGHTS:
            tot = sum(modspace.class_weight_dim(modspace.UntwistedClass(lab, s), w) for s in (0, 1))
            raw = len(modspace.coset_short_vectors(lab, 2 * w))
            bad += tot != raw + (8 if lab == 0 and w == 1 else 0)
    return bad, 0


@register("mod.parity", "q = 1 exactly on cosets with half-integral weights")
def _parity():
    bad = 0
    for lab in range(256):
        half = len(modspace.coset_short_vectors(lab, 1)) > 0
        bad += modspace.UntwistedClass(lab).q != int(half)
    return bad, 0


def _ideal_rows(rep):
    return [rep.dims, rep.total, rep.partition_ok, rep.totally_singular]


@register("mod.a1", "first appendix decomposition: ideal dims 15,10,10,3,3, total 41")
def _a1():
    return _ideal_rows(modspace.appendix_a1_check()), [[15, 10, 10, 3, 3], 41, True, True]


@register("mod.a2", "second appendix decomposition: 40 + 1-dim H', ideal dims 15,10,10,3,3")
def _a2():
    return _ideal_rows(modspace.appendix_a2_check()), [[15, 10, 10, 3, 3], 41, True, True]


@register("mod.a2.rootspace", "root space of dim 32 after removing the 8-dim Cartan part")
def _a2_root():
    rep = modspace.appendix_a2_check()
    cartan = modspace.class_weight_dim(modspace.VE_MINUS, 1)
    return (rep.total - 1) - cartan, liealg.parse_type("A3B2^2A1^2").roots


@register("mod.a1.lie", "ideal dims agree with dim g(A3), g(B2), g(A1)")
def _a1_lie():
    rep = modspace.appendix_a1_check()
    return rep.dims, [liealg.dim_of(t) for t in ("A3", "B2", "B2", "A1", "A1")]


# ---------------------------------------------------------------------------
# lattices


def _niemeier(name, dim):
    def fn():
        r = lattices.niemeier(name).verify()
        return [r["integral"], r["even"], r["unimodular"], r["no_glue_roots"], r["weight1_dim"]], [
            True,
            True,
            True,
            True,
            dim,
        ]

    return fn


register("lattice.A15D9", "N(A15 D9) even unimodular with weight-one dim 408")(_niemeier("A15D9", 408))
register("lattice.A7A7D5D5", "N(A7^2 D5^2) even unimodular with weight-one dim 216")(_niemeier("A7A7D5D5", 216))


@register("lattice.disc_orders", "orders of u and v in 2R*/2N")
def _orders():
    return lattices.disc_orders("A7A7D5D5"), [8, 4]


@register("lattice.disc_action", "g(u) = 3u - v, g(v) = v and the (kg)^2 label for all 32 pairs")
def _disc_action():
    r = lattices.disc_action_check()
    return [r.g_u, r.g_v, r.g_coords_agree, r.kg_label_ok, r.n_even_necessary, r.exact_condition_ok], [True] * 6


@register("lattice.tau", "the A7 diagram involution on both A7 factors does not preserve N")
def _tau():
    return lattices.tau_preserves_glue(), False


@register("lattice.weyl_d5", "s + 4 beta conjugate to s mod 2L(D5) under W(D5)")
def _weyl():
    r = lattices.weyl_conjugacy_d5()
    return [r.group_order, r.all_conjugate, r.minus_conjugate], [1920, True, True]


@register("lattice.fixed_dims", "D5 fixed dims 21 (inner root involution) and 20 (lift of -1)")
def _fixed():
    return [lattices.fixed_dim_inner("D5", [1, 1, 0, 0, 0]), lattices.fixed_dim_minus_one("D5")], [
        liealg.dim_of("A3A1^2"),
        liealg.dim_of("B2^2"),
    ]


# ---------------------------------------------------------------------------
# Lie dimensions


def _lie_row(row):
    return lambda: (row.computed, row.expected)


for _row in liealg.paper_dim_checks():
    register(_row.id, _row.anchor)(_lie_row(_row))


@register("lie.count56", "39 + 10 + 4 + 3 = 56")
def _count():
    r = liealg.count_56()
    # a malformed summand list shows up as the list itself instead of the total
    return (r.total if r.ok and r.summands == (39, 10, 4, 3) else list(r.summands)), 56


@register("lie.table_vs_lattice", "Lie root counts agree with enumerated root systems")
def _table():
    names = ["A1", "A7", "A15", "D5", "D9", "E8"]
    return [lattices.root_count(n) for n in names], [liealg.parse_type(n).roots for n in names]


# ---------------------------------------------------------------------------
# runner


def check_ids(prefix: str | None = None) -> list[str]:
    return sorted(i for i in REGISTRY if not prefix or i.startswith(prefix))


def thread_count() -> int:
    raw = os.environ.get("FVOA_THREADS", "")
    try:
        n = int(raw)
    except ValueError:
        n = os.cpu_count() or 1
    return max(1, n)


def run_checks(prefix: str | None = None, threads: int | None = None) -> list[CheckRecord]:
    ids = check_ids(prefix)
    threads = threads or thread_count()
    if threads == 1:
        recs = [REGISTRY[i].run() for i in ids]
    else:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            recs = list(ex.map(lambda i: REGISTRY[i].run(), ids))
    return sorted(recs, key=lambda r: r.id)


def report(records: list[CheckRecord]) -> dict:
    return {
        "schema": SCHEMA,
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
        "passed": sum(r.status == "pass" for r in records),
        "failed": sum(r.status == "fail" for r in records),
        "records": [r.to_dict() for r in records],
    }


def dumps(rep: dict) -> str:
    return json.dumps(rep, indent=2, sort_keys=True)
