"""Acceptance criteria AC1-AC12 at their stated scales.

Each test carries a ``criterion`` marker; conftest prints one PASS/FAIL
line per criterion in the terminal summary.
"""

import subprocess
import sys
import time
from math import comb

import pytest

import oracles
from tfnpkit.core import TruthTable
from tfnpkit.problems import (
    ChoiceSeq,
    Collision,
    EKRDisjoint,
    EKRDup,
    EKRInstance,
    LongPath,
    SchurTriple,
    Sunflower,
    SunflowerDup,
    SunflowerError,
    Zero,
    verify,
)
from tfnpkit.reductions import Immediate, get_reduction, interval_state
from tfnpkit.reductions.konig import heap_parent
from tfnpkit.solvers import (
    extract_clique,
    forward_colors,
    iter_certificates,
    solve_bruteforce,
    solve_long_choice_majority,
    solve_ramsey,
    solve_ramsey_sequence,
    solve_short_choice_minority,
    subsample,
)
from tfnpkit.workbench import GeneratorSpec, PipelineSpec, generate, run_pipeline
from tfnpkit.workbench import io
from tfnpkit.workbench.cli import main as cli_main

SEEDS = range(25)


def gen(kind, seed, flavor="random", **params):
    return generate(GeneratorSpec(kind, params, seed, flavor))


def roundtrip(instance, *chain, solver=None):
    report = run_pipeline(instance, PipelineSpec(tuple(chain), solver))
    assert report.ok, "\n".join(report.lines())
    return report.certificate


def tally(note, label, results):
    ok = sum(results)
    note(f"{label} {ok}/{len(results)}")
    assert ok == len(results)


# --- AC1 ---------------------------------------------------------------------

@pytest.mark.criterion("AC1", "Long Choice totality, 500 instances up to n=10, under 60 s")
def test_ac1_long_choice_totality(criterion):
    t0 = time.perf_counter()
    results = []
    # n=2..10 gives 450 instances; the degenerate n=1 brings the count to 500.
    for n in range(1, 11):
        for seed in range(50):
            I = gen("long_choice", seed, n=n)
            c = solve_long_choice_majority(I)
            results.append(bool(verify(I, c)) and oracles.long_choice_ok(I.predicates, n, c.elements))
    elapsed = time.perf_counter() - t0
    criterion(f"{elapsed:.1f} s")
    tally(criterion, "accepted", results)
    assert elapsed < 60


# --- AC2 ---------------------------------------------------------------------

@pytest.mark.criterion("AC2", "Collision -> Long Choice round trip, n=3..8 x 25 seeds")
def test_ac2_collision_long_choice(criterion):
    red = get_reduction("collision->long_choice")
    results = []
    checks = 0
    for n in range(3, 9):
        for seed in SEEDS:
            src = gen("collision", seed, n=n)
            outcome = red(src)
            seq = solve_long_choice_majority(outcome.target)
            # Replay every prefix of the answer: intervals match the set-based
            # oracle, and interval_state's unfilled-count assertion stays silent.
            for i in range(1, n):
                prefix = tuple(seq.elements[:i])
                state = interval_state(src.f, n, prefix)
                history, _ = oracles.interval_oracle(src.f, n, prefix)
                for (lo, hi), (B, _) in zip(state.bounds, history):
                    assert set(range(lo, hi + 1)) == B
                for (lo, hi), (_, F) in zip(state.fronts, history):
                    assert set(range(lo, hi + 1)) == F
                checks += 1
            c = red.pullback(src, outcome.aux, seq)
            results.append(bool(verify(src, c)))
    criterion(f"{checks} prefixes replayed, no unfilled-count violation")
    tally(criterion, "round trips", results)


# --- AC3 ---------------------------------------------------------------------

@pytest.mark.criterion("AC3", "Weak Collision -> unary Long Choice, pair is the last two elements, n=3..10")
def test_ac3_weak_collision_long_choice(criterion):
    red = get_reduction("weak_collision->long_choice")
    results = []
    for n in range(3, 11):
        for seed in SEEDS:
            src = gen("weak_collision", seed, n=n)
            outcome = red(src)
            seq = solve_long_choice_majority(outcome.target).elements
            c = red.pullback(src, outcome.aux, ChoiceSeq(seq))
            results.append(
                isinstance(c, Collision)
                and (c.x, c.y) == (seq[-2], seq[-1])
                and src.f(seq[-2]) == src.f(seq[-1])
                and bool(verify(src, c)))
    tally(criterion, "pairs", results)


# --- AC4 ---------------------------------------------------------------------

@pytest.mark.criterion("AC4", "Ramsey constructive solver, 2 colors n=2..4 and r=4 n=2 at width 12")
def test_ac4_ramsey(criterion):
    results = []
    for n in (2, 3, 4):
        for seed in SEEDS:
            I = gen("ramsey2", seed, n=n)
            c = solve_ramsey(I)
            color_of = lambda a, b: oracles.ramsey2_color(I.edge, n, a, b)
            results.append(
                len(set(c.nodes)) == n
                and oracles.monochrome(color_of, c.nodes, c.color)
                and bool(verify(I, c)))
    tally(criterion, "2-color cliques", results)

    wide = []
    for seed in SEEDS:
        I = gen("ramsey", seed, r=4, n=2, node_width=12)
        assert I.weak_guarantee
        seq = solve_ramsey_sequence(I).elements
        b = subsample(seq, 2, 4, 2)
        c = extract_clique(b, forward_colors(I, b), 2)
        wide.append(
            len(b) == 5
            and oracles.monochrome(I.edge_color, c.nodes, c.color)
            and bool(verify(I, c)))
    tally(criterion, "r=4 cliques", wide)


# --- AC5 ---------------------------------------------------------------------

@pytest.mark.criterion("AC5", "Sunflower -> Ramsey, k=2 at 8-bit widths, brute-force 4-clique")
def test_ac5_sunflower(criterion):
    red = get_reduction("sunflower->ramsey")
    results = []
    kinds = set()
    for seed in SEEDS:
        src = gen("sunflower", seed, k=2)
        assert (src.index_width, src.element_width) == (8, 8)
        outcome = red(src)
        assert outcome.target.target == 4
        clique = solve_bruteforce(outcome.target)
        c = red.pullback(src, outcome.aux, clique)
        kinds.add(c.kind)
        if isinstance(c, Sunflower):
            ok = oracles.sunflower_ok([src.members(i) for i in c.indices]) and len(c.indices) == src.target
        else:
            ok = isinstance(c, (SunflowerError, SunflowerDup))
        results.append(ok and bool(verify(src, c)))
    criterion("kinds " + ",".join(sorted(kinds)))
    tally(criterion, "round trips", results)


# --- AC6 ---------------------------------------------------------------------

@pytest.mark.criterion("AC6", "Konig both directions n=2..6, heap instance")
def test_ac6_konig(criterion):
    results = []
    for n in range(2, 7):
        for seed in SEEDS:
            results.append(roundtrip(gen("collision", seed, n=n), "collision->konig") is not None)
            results.append(roundtrip(gen("konig", seed, n=n), "konig->collision") is not None)
            results.append(roundtrip(gen("konig", seed, "tree", n=n), "konig->collision") is not None)
    tally(criterion, "round trips", results)

    for N in range(3, 7):
        heap = gen("konig", 0, "heap", n=N)
        assert heap.parent_of(5) == (2, 0) and heap_parent(5) == (2, 0)
        deepest = (1 << N) - 1
        assert verify(heap, LongPath(deepest))
        assert oracles.heap_depth(deepest) == N
        c = roundtrip(heap, "konig->collision")
        assert c == LongPath(deepest)
    criterion("heap parent(5)=2, LongPath(2^N-1) for N=3..6")


# --- AC7 ---------------------------------------------------------------------

def _ekr_table(n, sets):
    """EKR instance from explicit 2-sets; indices past the list repeat {1, i}."""
    table = []
    for i in range(1 << n):
        a, b = sets[i] if i < len(sets) else (1, i)
        table.append(a | (b << n))
    return EKRInstance(n, TruthTable(n, 2 * n, table))


@pytest.mark.criterion("AC7", "EKR both directions n=2..8 with constructed branch tables")
def test_ac7_ekr(criterion):
    results = []
    for n in range(2, 9):
        for seed in SEEDS:
            results.append(roundtrip(gen("collision", seed, n=n), "collision->ekr") is not None)
            results.append(roundtrip(gen("ekr", seed, n=n), "ekr->collision") is not None)
            results.append(roundtrip(gen("ekr", seed, "star", n=n), "ekr->collision") is not None)
    tally(criterion, "round trips", results)

    red = get_reduction("ekr->collision")
    for n in range(2, 9):
        disjoint = _ekr_table(n, [(1, 2), (3, 0)])
        out = red(disjoint)
        assert isinstance(out, Immediate) and out.certificate == EKRDisjoint(0, 1)

        covering = _ekr_table(n, [(0, 1), (1, 2), (0, 2)])
        out = red(covering)
        assert out.aux == {"a": 0, "b": 1, "c": 2}
        certs = list(iter_certificates(out.target))
        assert certs == [Zero(2)]
        c = red.pullback(covering, out.aux, Zero(2))
        assert c == EKRDisjoint(2, 3) and verify(covering, c)

        zero_zero = _ekr_table(n, [(0, 1), (1, 2), (0, 2), (2, 0)])
        out = red(zero_zero)
        assert verify(out.target, Collision(2, 3))
        c = red.pullback(zero_zero, out.aux, Collision(2, 3))
        assert c == EKRDup(2, 3) and verify(zero_zero, c)
    criterion("disjoint-immediate, covering, zero-zero branches hit")


# --- AC8 ---------------------------------------------------------------------

@pytest.mark.criterion("AC8", "Bad Coloring / Turan hierarchy at n=2,3 and the edge-count identity")
def test_ac8_coloring_hierarchy(criterion):
    for k in range(2, 12):
        for n in range(1, 10):
            assert comb(k, 2) * (1 << n) ** 2 + 1 + k * (1 << (2 * n)) == comb(k + 1, 2) * (1 << n) ** 2 + 1

    results = []
    for n in (2, 3):
        for seed in SEEDS:
            results.append(roundtrip(gen("collision", seed, n=n), "collision->bad_coloring") is not None)
            results.append(roundtrip(gen("bad_coloring", seed, k=2, n=n), "bad_coloring->turan") is not None)
            results.append(roundtrip(gen("bad_coloring", seed, k=2, n=n), "bad_coloring->bad_coloring+1") is not None)
            results.append(roundtrip(gen("bad_coloring", seed, k=3, n=n), "bad_coloring->bad_coloring+1") is not None)
            results.append(roundtrip(gen("turan", seed, k=2, n=n), "turan->turan+1") is not None)
            results.append(roundtrip(gen("bad_kset", seed, k=1, n=n), "bad_kset->bad_kset+1") is not None)
    criterion("edge-count identity k=2..11, n=1..9")
    tally(criterion, "round trips", results)


# --- AC9 ---------------------------------------------------------------------

@pytest.mark.criterion("AC9", "Short Choice minority totality n=2..10, Empty round trip n=2..8")
def test_ac9_short_choice(criterion):
    results = []
    for n in range(2, 11):
        for seed in SEEDS:
            I = gen("short_choice", seed, n=n)
            c = solve_short_choice_minority(I)
            ok = bool(verify(I, c))
            if n <= 7:
                ok = ok and oracles.short_choice_ok(I.predicates, n, c.elements, c.c)
            results.append(ok)
    tally(criterion, "minority", results)

    holes = []
    for n in range(2, 9):
        for seed in SEEDS:
            src = gen("empty", seed, n=n)
            c = roundtrip(src, "empty->short_choice")
            images = {src.f(x) for x in range(src.domain_size)}
            holes.append(0 <= c.e < src.range_size and c.e not in images)
    tally(criterion, "holes", holes)


# --- AC10 --------------------------------------------------------------------

@pytest.mark.criterion("AC10", "Equidistance bound m=2..4 and Hamming round trips m=2,3")
def test_ac10_hamming(criterion):
    for m in (2, 3, 4):
        assert oracles.equidistant_sets(m, m + 2) == []
    criterion("no m+2 equidistant points for m=2,3,4")

    results = []
    for m, n in ((2, 4), (3, 6)):
        for seed in SEEDS:
            c = roundtrip(gen("weak_collision", seed, n=n, m=m), "weak_collision->ramsey", solver="bruteforce")
            results.append(isinstance(c, Collision))
    tally(criterion, "round trips", results)


# --- AC11 --------------------------------------------------------------------

@pytest.mark.criterion("AC11", "Weak Schur -> Ramsey, r=2 width 4")
def test_ac11_weak_schur(criterion):
    results = []
    for flavor in ("random", "parity"):
        for seed in SEEDS:
            src = gen("weak_schur", seed, flavor, r=2, width=4)
            c = roundtrip(src, "weak_schur->ramsey")
            a, b = c.a, c.b
            results.append(
                isinstance(c, SchurTriple)
                and a >= 1 and b >= 1 and a + b <= 16
                and src.color_of_int(a) == src.color_of_int(b) == src.color_of_int(a + b))
    tally(criterion, "triples", results)


# --- AC12 --------------------------------------------------------------------

CHAINS = [
    ("long_choice", {"n": 6}, "random", ()),
    ("collision", {"n": 5}, "random", ("collision->long_choice",)),
    ("weak_collision", {"n": 6}, "random", ("weak_collision->long_choice",)),
    ("ramsey2", {"n": 3}, "random", ()),
    ("sunflower", {"k": 2}, "random", ("sunflower->ramsey",)),
    ("konig", {"n": 4}, "tree", ("konig->collision",)),
    ("ekr", {"n": 4}, "random", ("ekr->collision",)),
    ("collision", {"n": 2}, "random", ("collision->bad_coloring", "bad_coloring->turan")),
    ("empty", {"n": 6}, "random", ("empty->short_choice",)),
    ("weak_schur", {"r": 2, "width": 4}, "random", ("weak_schur->ramsey",)),
]


def _certificate_files(tmp_path, tag):
    paths = []
    for idx, (kind, params, flavor, chain) in enumerate(CHAINS):
        for seed in range(3):
            report = run_pipeline(gen(kind, seed, flavor, **params), PipelineSpec(chain))
            path = tmp_path / f"{tag}-{idx}-{seed}.json"
            path.write_text(io.dumps(io.certificate_to_json(report.certificate)) + io.dumps(report.to_json()))
            paths.append(path)
    return paths


@pytest.mark.criterion("AC12", "Byte-identical certificate files on rerun")
def test_ac12_determinism_library(criterion, tmp_path):
    first = _certificate_files(tmp_path, "a")
    second = _certificate_files(tmp_path, "b")
    assert [p.read_bytes() for p in first] == [p.read_bytes() for p in second]
    criterion(f"{len(first)} library files")


@pytest.mark.criterion("AC12", "Byte-identical certificate files on rerun")
def test_ac12_determinism_cli(criterion, tmp_path):
    outputs = []
    for run in range(2):
        d = tmp_path / f"run{run}"
        d.mkdir()
        inst = d / "inst.json"
        cert = d / "cert.json"
        report = d / "report.json"
        assert cli_main(["gen", "collision", "n=5", "--seed", "7", "--out", str(inst)]) == 0
        assert cli_main(["roundtrip", str(inst), "--pipeline", "collision->long_choice",
                         "--out", str(cert), "--json", str(report)]) == 0
        outputs.append((inst.read_bytes(), cert.read_bytes(), report.read_bytes()))
    assert outputs[0] == outputs[1]

    # A fresh interpreter must write the same bytes too.
    fresh = tmp_path / "fresh.json"
    subprocess.run([sys.executable, "-m", "tfnpkit", "gen", "collision", "n=5", "--seed", "7",
                    "--out", str(fresh)], check=True)
    assert fresh.read_bytes() == outputs[0][0]
    criterion("CLI gen/roundtrip files identical across runs and processes")
