import warnings
from itertools import combinations, islice
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from tfnpkit.core import ContractViolation, TruthTable, constant
from tfnpkit.core.bitvec import pack
from tfnpkit.problems import (
    BadColoringInstance,
    BadEdge,
    Clique,
    CliqueEdges,
    Collision,
    CollisionInstance,
    EKRDup,
    EKRError,
    EKRInstance,
    EdgeDup,
    EmptyHole,
    EmptyInstance,
    IdenticalChildren,
    InvalidRoot,
    KonigInstance,
    LongPath,
    SchurTriple,
    Sunflower,
    SunflowerDup,
    SunflowerInstance,
    WeakCollisionInstance,
    WeakSchurInstance,
    Zero,
    verify,
)
from tfnpkit.reductions import (
    REGISTRY,
    Immediate,
    Reduced,
    RamseyHammingConfig,
    get_reduction,
    interval_state,
    range_tracker,
)
from tfnpkit.reductions.coloring import edge_count, lifted_edge_count
from tfnpkit.reductions.konig import heap_parent, konig_index
from tfnpkit.solvers import (
    ChoiceWalkState,
    iter_certificates,
    short_choice_walk,
    solve_bruteforce,
    solve_long_choice_majority,
)
from tfnpkit.workbench import GeneratorSpec, generate


def gen(kind, seed, flavor="random", **params):
    return generate(GeneratorSpec(kind, params, seed, flavor))


def table(in_w, out_w, rule):
    return TruthTable(in_w, out_w, [rule(x) for x in range(1 << in_w)])


# --- master round trip -----------------------------------------------------------

SMALL = {
    "collision->long_choice": ("collision", {"n": 3}, "random"),
    "weak_collision->long_choice": ("weak_collision", {"n": 4}, "random"),
    "constrained_long_choice->long_choice": ("long_choice", {"n": 3, "variant": "constrained"}, "random"),
    "ramsey2->long_choice": ("ramsey2", {"n": 1}, "random"),
    "ramsey->long_choice": ("ramsey", {"r": 2, "n": 2}, "random"),
    "sunflower->ramsey": ("sunflower", {"k": 2, "index_width": 5, "element_width": 3}, "random"),
    "weak_collision->ramsey": ("weak_collision", {"n": 4, "m": 2}, "random"),
    "weak_schur->ramsey": ("weak_schur", {"r": 2, "width": 4}, "random"),
    "collision->konig": ("collision", {"n": 3}, "random"),
    "konig->collision": ("konig", {"n": 3}, "tree"),
    "collision->ekr": ("collision", {"n": 3}, "random"),
    "ekr->collision": ("ekr", {"n": 3}, "star"),
    "collision->bad_coloring": ("collision", {"n": 2}, "random"),
    "bad_coloring->turan": ("bad_coloring", {"k": 2, "n": 2}, "random"),
    "bad_coloring->bad_coloring+1": ("bad_coloring", {"k": 2, "n": 1}, "random"),
    "turan->turan+1": ("turan", {"k": 2, "n": 1}, "random"),
    "collision->bad_kset": ("collision", {"n": 3}, "random"),
    "bad_kset->bad_kset+1": ("bad_kset", {"k": 1, "n": 2}, "random"),
    "empty->short_choice": ("empty", {"n": 4}, "random"),
}


def test_every_reduction_has_a_small_case():
    assert set(SMALL) == set(REGISTRY)


@pytest.mark.parametrize("name", sorted(SMALL))
def test_every_accepted_target_certificate_pulls_back(name):
    red = get_reduction(name)
    kind, params, flavor = SMALL[name]
    pulled = 0
    for seed in range(4):
        src = gen(kind, seed, flavor, **params)
        outcome = red(src)
        if isinstance(outcome, Immediate):
            assert verify(src, outcome.certificate)
            continue
        assert outcome.target.kind == red.target_kind
        for c in islice(iter_certificates(outcome.target), 150):
            assert verify(src, red.pullback(src, outcome.aux, c))
            pulled += 1
    assert pulled > 0


def _target_functions(target):
    fns = target.functions()
    return list(fns.values())


@pytest.mark.parametrize("name", sorted(SMALL))
def test_batched_glue_matches_scalar(name):
    kind, params, flavor = SMALL[name]
    src = gen(kind, 1, flavor, **params)
    outcome = get_reduction(name)(src)
    if isinstance(outcome, Immediate):
        return
    for f in _target_functions(outcome.target):
        xs = [(x * 2654435761) % (1 << f.input_width) for x in range(64)]
        assert f.eval_many(xs) == [f(x) for x in xs]


def test_kind_mismatch_refused():
    with pytest.raises(ValueError):
        get_reduction("collision->ekr")(gen("empty", 0, n=3))


# --- Collision -> Long Choice ------------------------------------------------------

def test_interval_first_step():
    C = TruthTable(3, 3, [5, 1, 2, 3, 4, 6, 7, 0])
    s = interval_state(C, 3, (0,))
    assert s.bounds == ((1, 7),) and s.fronts == ((1, 3),)
    assert s.unfilled() == 6


def test_identity_pulls_back_to_zero():
    src = CollisionInstance(2, table(2, 2, lambda x: x))
    red = get_reduction("collision->long_choice")
    out = red(src)
    certs = list(iter_certificates(out.target))
    assert certs
    assert {red.pullback(src, out.aux, c) for c in certs} == {Zero(0)}


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 6), st.data())
def test_unfilled_count_on_collision_free_prefixes(n, data):
    perm = data.draw(st.permutations(range(1 << n)))
    C = TruthTable(n, n, perm)
    length = data.draw(st.integers(1, n - 1))
    # Build a consistent prefix by following the construction's own choices.
    prefix = (data.draw(st.integers(0, (1 << n) - 1)),)
    while len(prefix) < length:
        s = interval_state(C, n, prefix)
        lo, hi = s.F
        used = set(s.images)
        top = (1 << n) - 1
        choices = [x for x in range(1 << n) if x not in prefix
                   and (C(x) or top) not in used
                   and s.B[0] <= (C(x) or top) <= s.B[1]]
        if not choices:
            break
        prefix += (data.draw(st.sampled_from(choices)),)
    s = interval_state(C, n, prefix)
    history, _ = oracles.interval_oracle(C, n, prefix)
    for (lo, hi), (B, _) in zip(s.bounds, history):
        assert set(range(lo, hi + 1)) == B
    if s.consistent and s.collision_free:
        assert s.unfilled() == 2 ** (n - s.step) - 2


# --- Weak Collision -> Long Choice -------------------------------------------------

def test_weak_collision_bit_predicates():
    src = gen("weak_collision", 3, n=3, m=2)
    out = get_reduction("weak_collision->long_choice")(src)
    I = out.target
    assert I.variant == "unary"
    for prefix in [(0,), (5,), (7,)]:
        for x in range(8):
            assert I.predicate(0, prefix, x) == src.f(x) & 1
    for x in range(8):
        assert I.predicate(1, (0, 1), x) == (src.f(x) >> 1) & 1


def test_weak_collision_constant():
    src = WeakCollisionInstance(3, 2, constant(3, 2, 1))
    red = get_reduction("weak_collision->long_choice")
    out = red(src)
    for c in islice(iter_certificates(out.target), 50):
        assert verify(src, red.pullback(src, out.aux, c))


# --- constrained Long Choice ---------------------------------------------------------

def test_constrained_identity_and_swap():
    src = gen("long_choice", 0, n=3, variant="constrained", start=5)
    red = get_reduction("constrained_long_choice->long_choice")
    out = red(src)
    for c in islice(iter_certificates(out.target), 200):
        back = red.pullback(src, out.aux, c)
        if c.elements[0] == 5:
            assert back == c
        else:
            b0 = c.elements[0]
            swap = {5: b0, b0: 5}
            assert back.elements == tuple(swap.get(v, v) for v in c.elements)
        assert verify(src, back)


@pytest.mark.parametrize("seed", range(20))
def test_constrained_round_trip(seed):
    for n in range(2, 9):
        src = gen("long_choice", seed, n=n, variant="constrained")
        red = get_reduction("constrained_long_choice->long_choice")
        out = red(src)
        assert verify(src, red.pullback(src, out.aux, solve_long_choice_majority(out.target)))


# --- Ramsey -> Long Choice -----------------------------------------------------------

def test_two_color_predicates_read_edge_color():
    src = gen("ramsey2", 2, n=2)
    out = get_reduction("ramsey2->long_choice")(src)
    I = out.target
    assert I.n == 4 and I.variant == "binary"
    assert len(solve_long_choice_majority(I).elements) == 5
    prefix = (3, 9, 12)
    for x in (0, 1, 5, 15):
        for i in range(3):
            assert I.predicate(i, prefix[:i + 1], x) == src.edge_color(prefix[i], x)


def test_four_color_dependence_index():
    src = gen("ramsey", 1, r=4, n=2, node_width=9)
    I = get_reduction("ramsey->long_choice")(src).target
    assert I.deps[3] == 2
    prefix = (7, 100, 200, 300)
    for x in (0, 1, 511):
        assert I.predicate(3, prefix, x) == (src.edge_color(200, x) >> 1) & 1


def test_monochrome_pulls_back_first_nodes():
    src = gen("ramsey2", 0, "monochrome", n=3)
    red = get_reduction("ramsey2->long_choice")
    out = red(src)
    c = red.pullback(src, out.aux, solve_long_choice_majority(out.target))
    assert c == Clique((0, 1, 2), 1)


# --- Sunflower -> Ramsey ---------------------------------------------------------------

def test_disjoint_sets_give_empty_core_sunflower():
    src = gen("sunflower", 0, "disjoint", k=2)
    red = get_reduction("sunflower->ramsey")
    out = red(src)
    c = red.pullback(src, out.aux, solve_bruteforce(out.target))
    assert isinstance(c, Sunflower) and len(c.indices) == 4
    sets = [set(src.members(i)) for i in c.indices]
    assert all(not (a & b) for a, b in combinations(sets, 2))


def test_equal_sets_pull_back_to_duplicate():
    rows = [pack([1, 2], 3)] * 4 + [pack([i, 7], 3) for i in range(4)] + [pack([3, 4], 3)] * 8
    src = SunflowerInstance(2, TruthTable(4, 6, rows), index_width=4, element_width=3)
    red = get_reduction("sunflower->ramsey")
    out = red(src)
    c = red.pullback(src, out.aux, Clique((0, 1, 2, 3), 0))
    assert isinstance(c, SunflowerDup)


# --- Hamming ----------------------------------------------------------------------------

def test_hamming_config():
    cfg = RamseyHammingConfig.for_source(WeakCollisionInstance(6, 3, constant(6, 3, 0)))
    assert (cfg.color_count, cfg.clique_target, cfg.sentinel) == (3, 5, 2)
    with pytest.raises(ContractViolation):
        RamseyHammingConfig(3, 4)


def test_constant_function_all_sentinel():
    src = WeakCollisionInstance(4, 2, constant(4, 2, 3))
    red = get_reduction("weak_collision->ramsey")
    out = red(src)
    T = out.target
    sentinel = out.aux["sentinel"]
    assert all(T.edge_color(a, b) == sentinel - 1 for a, b in combinations(range(16), 2))
    c = red.pullback(src, out.aux, Clique(tuple(range(T.target)), sentinel - 1))
    assert c == Collision(0, 1)


# --- Weak Schur ---------------------------------------------------------------------------

def test_single_color_triangle():
    src = WeakSchurInstance(1, TruthTable(2, 0, [0] * 4), width=2)
    red = get_reduction("weak_schur->ramsey")
    out = red(src)
    # integers 1, 2, 3 are nodes 0, 1, 2
    assert red.pullback(src, out.aux, Clique((0, 1, 2), 0)) == SchurTriple(1, 1)


def test_parity_coloring_triangles():
    src = gen("weak_schur", 0, "parity", r=2, width=4)
    red = get_reduction("weak_schur->ramsey")
    out = red(src)
    for c in islice(iter_certificates(out.target), 100):
        t = red.pullback(src, out.aux, c)
        assert src.color_of_int(t.a) == src.color_of_int(t.b) == src.color_of_int(t.a + t.b)


# --- König ------------------------------------------------------------------------------------

def test_heap_parent_formula():
    assert heap_parent(5) == (2, 0)
    assert heap_parent(6) == (2, 1)
    assert heap_parent(0) == (0, 0)


def test_hash_half_slot():
    # n=2, C(1)=2: node 5 = 2^2 + 1 takes slot 2 + 3 = 5, parent 2, side 0
    src = CollisionInstance(2, TruthTable(2, 2, [1, 2, 3, 3]))
    T = get_reduction("collision->konig")(src).target
    assert T.n == 3 and T.root == 0
    assert T.parent_of(5) == (2, 0)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_zero_meets_last_heap_node(n):
    half = 1 << n
    x = 1
    src = CollisionInstance(n, table(n, n, lambda v: 0 if v == x else v if v else x))
    red = get_reduction("collision->konig")
    out = red(src)
    T = out.target
    assert T.parent_of(half - 1) == T.parent_of(half + x) == ((half >> 1) - 1, 0)
    assert red.pullback(src, out.aux, IdenticalChildren(half - 1, half + x)) == Zero(x)


def test_heap_index_is_node_id():
    src = gen("konig", 0, "heap", n=3)
    out = get_reduction("konig->collision")(src)
    f = out.target.f
    assert [konig_index(src, u) for u in range(7)] == list(range(7))
    assert [f(u) for u in range(8)] == [1, 2, 3, 4, 5, 6, 7, 0]
    assert list(iter_certificates(out.target)) == [Zero(7)]
    assert get_reduction("konig->collision").pullback(src, out.aux, Zero(7)) == LongPath(7)


def test_invalid_root():
    src = KonigInstance(3, constant(3, 4, 1), 0)
    red = get_reduction("konig->collision")
    out = red(src)
    assert set(out.target.f.eval_many(range(8))) == {0}
    assert red.pullback(src, out.aux, Zero(3)) == InvalidRoot()


def test_equal_parents_give_identical_children():
    # heap on 3 bits with node 6 rewired to node 5's slot
    rows = [0] + [((s - 1) >> 1) | ((0 if s & 1 else 1) << 3) for s in range(1, 8)]
    rows[6] = rows[5]
    src = KonigInstance(3, TruthTable(3, 4, rows), 0)
    red = get_reduction("konig->collision")
    out = red(src)
    assert verify(out.target, Collision(5, 6))
    assert red.pullback(src, out.aux, Collision(5, 6)) == IdenticalChildren(5, 6)


def test_long_path_fallback_warns():
    src = gen("collision", 0, n=2)
    red = get_reduction("collision->konig")
    out = red(src)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        c = red.pullback(src, out.aux, LongPath(0))
    assert caught and verify(src, c)


# --- EKR -----------------------------------------------------------------------------------------

def test_zero_becomes_invalid_set():
    src = CollisionInstance(3, table(3, 3, lambda x: 0 if x == 3 else x))
    red = get_reduction("collision->ekr")
    out = red(src)
    assert verify(out.target, EKRError(3))
    assert red.pullback(src, out.aux, EKRError(3)) == Zero(3)


def test_constant_nonzero_all_sets_equal():
    src = CollisionInstance(3, constant(3, 3, 5))
    red = get_reduction("collision->ekr")
    out = red(src)
    assert red.pullback(src, out.aux, EKRDup(2, 6)) == Collision(2, 6)


def test_disjoint_first_pair_is_immediate():
    rows = [1 | 2 << 3, 3 | 4 << 3] + [0] * 6
    out = get_reduction("ekr->collision")(EKRInstance(3, TruthTable(3, 6, rows)))
    assert isinstance(out, Immediate)


def test_covering_case_duplicate():
    # F(0)={0,1}, F(1)={1,2}, F(x)={1,d}; d repeats at x=4 and x=5
    ds = [None, None, 3, 4, 5, 5, 6, 7]
    rows = [0 | 1 << 3, 1 | 2 << 3] + [1 | d << 3 for d in ds[2:]]
    src = EKRInstance(3, TruthTable(3, 6, rows))
    red = get_reduction("ekr->collision")
    out = red(src)
    assert isinstance(out, Reduced)
    certs = list(iter_certificates(out.target))
    assert certs == [Collision(4, 5)]
    assert red.pullback(src, out.aux, certs[0]) == EKRDup(4, 5)


# --- colorings ----------------------------------------------------------------------------------

def test_edge_decomposition():
    src = gen("collision", 4, n=2)
    T = get_reduction("collision->bad_coloring")(src).target
    for i in range(16):
        a, b = i >> 2, i & 3
        assert T.endpoints(i) == (src.f(a), src.f(b) + 4)


def test_all_zero_map():
    src = CollisionInstance(2, constant(2, 2, 0))
    red = get_reduction("collision->bad_coloring")
    out = red(src)
    T = out.target
    assert all(T.endpoints(i) == (0, 4) for i in range(17))
    assert red.pullback(src, out.aux, EdgeDup(5, 16)) == Zero(1)


def test_triangle_pulls_back_to_same_color_edge():
    # edges 0:(0,1), 1:(1,2), 2:(0,2); nodes 0,1 share color 0
    edges = [(0, 1), (1, 2), (0, 2)] + [(0, 3)] * 29
    E = TruthTable(5, 6, [pack(e, 3) for e in edges])
    C = TruthTable(3, 1, [0, 0, 1, 1, 0, 0, 0, 0])
    src = BadColoringInstance(2, 2, E, C)
    red = get_reduction("bad_coloring->turan")
    out = red(src)
    assert red.pullback(src, out.aux, CliqueEdges((0, 1, 2))) == BadEdge(0)


def test_edge_count_identity():
    for k in range(2, 8):
        for n in range(1, 6):
            assert edge_count(k, n) + k * (1 << (2 * n)) == edge_count(k + 1, n)
            assert lifted_edge_count(k, n) == edge_count(k + 1, n)
            assert edge_count(k, n) == comb(k, 2) * 4 ** n + 1


def test_lift_keeps_old_block():
    src = gen("bad_coloring", 1, k=2, n=2)
    out = get_reduction("bad_coloring->bad_coloring+1")(src)
    T = out.target
    assert T.k == 3
    for i in range(edge_count(2, 2)):
        e = src.valid_edge(i)
        if e is not None:
            assert T.valid_edge(i) == e


def test_bad_kset_base_is_collision():
    src = gen("collision", 2, n=3)
    red = get_reduction("collision->bad_kset")
    out = red(src)
    T = out.target
    assert T.k == 1
    for i in range(8):
        assert T.members(i) == [src.f(i)]
    for c in iter_certificates(T):
        assert verify(src, red.pullback(src, out.aux, c))


def test_bad_kset_lift_duplicate_split():
    src = gen("bad_kset", 0, k=1, n=2)
    red = get_reduction("bad_kset->bad_kset+1")
    out = red(src)
    T = out.target
    for i, j in combinations(range(T.set_count), 2):
        if (i & 3) == (j & 3) and not T.is_bad(i) and sorted(T.members(i)) == sorted(T.members(j)):
            assert (i >> 2) != (j >> 2)


# --- Empty -> Short Choice -----------------------------------------------------------------------

def test_midpoint_rule():
    f = TruthTable(3, 3, [0, 1, 2, 3, 4, 5, 0, 0])
    H = range_tracker(f, 3, (0,))
    members = H.members()
    assert H.midpoint == members[-(-len(members) // 2) - 1]
    assert H.below(H.midpoint) * 2 >= H.size


def test_two_pigeons_three_holes():
    src = EmptyInstance(2, TruthTable(2, 2, [0, 1, 0, 0]))
    red = get_reduction("empty->short_choice")
    out = red(src)
    certs = list(iter_certificates(out.target))
    assert certs
    assert {red.pullback(src, out.aux, c) for c in certs} == {EmptyHole(2)}


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 7), st.integers(0, 2 ** 32))
def test_range_size_lower_bound(n, seed):
    src = gen("empty", seed, n=n)
    out = get_reduction("empty->short_choice")(src)
    for s in short_choice_walk(out.target):
        if not isinstance(s, ChoiceWalkState) or not s.prefix:
            continue
        H = range_tracker(src.f, n, tuple(s.prefix))
        seen = set(src.f.eval_many(list(s.prefix)))
        assert H.members() == [v for v in range(H.lo, H.hi + 1) if v not in seen]
        assert H.size >= 2 ** (n - H.step) - 2
