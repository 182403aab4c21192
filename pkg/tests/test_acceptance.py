"""End-to-end acceptance criteria, one test each.

Every test prints a single ``criterion N: PASS|FAIL`` line to the terminal,
even under output capture.
"""
import random
import time
from contextlib import contextmanager
from fractions import Fraction as F
from itertools import combinations

import pytest

from plumbcalc.canonical import canonical_form
from plumbcalc.contfrac import contract_path, eval_ncf
from plumbcalc.diagonalize import (DiagState, diagonalize, fold_case1, orient,
                                   signature_of_tree)
from plumbcalc.errors import FallbackExhausted
from plumbcalc.generate import GenMode, GenParams, generate
from plumbcalc.linalg import congruence_signature, determinant
from plumbcalc.moves import (Direction, MoveKind, applicable_sites, apply,
                             expected_signature_delta, make_contract, make_expand, replay,
                             trajectory)
from plumbcalc.reduction import DefinitenessClass, classify, reduce
from plumbcalc.tree import build_tree, framing_matrix, path, star

from .oracles import tree_det

ND = DefinitenessClass.NEGATIVE_DEFINITE


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def run(n, text):
        t0 = time.perf_counter()
        try:
            yield
        except BaseException as exc:
            with capsys.disabled():
                print(f"\ncriterion {n}: FAIL {text} ({type(exc).__name__}: {exc})")
            raise
        with capsys.disabled():
            print(f"\ncriterion {n}: PASS {text} [{time.perf_counter() - t0:.2f}s]")
    return run


def best_time(fn, repeat=7):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return out, min(times)


def along(t, start):
    """Weights of a path tree read from the leaf ``start``."""
    out, prev, cur = [], None, start
    while cur is not None:
        out.append(t.weight(cur))
        nxt = [u for u in t.neighbors(cur) if u != prev]
        prev, cur = cur, (nxt[0] if nxt else None)
    return out


def test_criterion_01_case1_fold(criterion):
    with criterion(1, "Case 1 fold of leaves {3,6} into parent 2 gives 3/2 in < 1 ms"):
        t = build_tree({1: 2, 2: 3, 3: 6}, [(1, 2), (1, 3)])
        start = DiagState.start(orient(t, 1))
        state, dt = best_time(lambda: fold_case1(start, 1))
        assert state.weights[1] == F(3, 2)
        assert dt < 1e-3, f"{dt * 1e3:.3f} ms"


def test_criterion_02_case2_example(criterion):
    with criterion(2, "Case 2 example: values {-1,+1,2}, signature (1,2,0), product = det = -2"):
        t = build_tree({1: 2, 2: 0, 3: 2}, [(1, 2), (1, 3)])
        res, dt = best_time(lambda: diagonalize(t, 1))
        assert sorted(res.values.values()) == [-1, 1, 2]
        det = determinant(framing_matrix(t))
        assert res.product() == det == -2
        assert dt < 1e-3, f"{dt * 1e3:.3f} ms"
        assert res.signature == (1, 2, 0), f"signature is {res.signature}"


def test_criterion_03_path_trajectory(criterion):
    with criterion(3, "path[5,0] trajectory (1,1)->...->(0,5), ends at path[-2,-2,-2,-2,-1]"):
        t = path([5, 0])
        log = reduce(t).log
        kinds = [(m.direction, m.kind) for m in log]
        assert kinds == [(Direction.EXPAND, MoveKind.A_MINUS)] * 4 + [
            (Direction.CONTRACT, MoveKind.B_PLUS)]
        trees = trajectory(t, log)
        weights = [along(x, 1) for x in trees[:-1]]
        final = trees[-1]
        end = next(v for v in final if final.degree(v) == 1 and v != 2)
        weights.append(along(final, end))
        assert weights == [[5, 0], [4, -1, -1], [3, -1, -2, -1], [2, -1, -2, -2, -1],
                           [1, -1, -2, -2, -2, -1], [-2, -2, -2, -2, -1]]
        sigs = [tuple(signature_of_tree(x))[:2] for x in trees]
        assert sigs == [(1, 1), (1, 2), (1, 3), (1, 4), (1, 5), (0, 5)]
        assert sigs == [tuple(congruence_signature(framing_matrix(x)))[:2] for x in trees]
        assert canonical_form(final) == canonical_form(path([-2, -2, -2, -2, -1]))


def test_criterion_04_star_trajectory(criterion):
    with criterion(4, "star(-2;2,-1,-1): (1,3,0) -> Expand A- (1,4,0) -> Contract B+ (0,4,0)"):
        t = star(-2, [2, -1, -1])
        res = diagonalize(t, 1)
        assert sorted(res.values.values()) == [-1, -1, F(-1, 2), 2]
        assert res.signature == (1, 3, 0)
        t1 = apply(t, make_expand(t, MoveKind.A_MINUS, (1, 2)))
        assert signature_of_tree(t1) == (1, 4, 0)
        t2 = apply(t1, make_contract(MoveKind.B_PLUS, 2))
        assert canonical_form(t2) == canonical_form(star(-3, [-2, -1, -1]))
        assert signature_of_tree(t2) == (0, 4, 0)


def test_criterion_05_interior_case(criterion):
    with criterion(5, "reduce path[-2,3,-3] = [Expand A-, Expand A-, Contract A+] -> path[-3,-2,-2,-4]"):
        t = path([-2, 3, -3])
        r = reduce(t)
        assert [(m.direction, m.kind) for m in r.log] == [
            (Direction.EXPAND, MoveKind.A_MINUS), (Direction.EXPAND, MoveKind.A_MINUS),
            (Direction.CONTRACT, MoveKind.A_PLUS)]
        out = r.output
        assert along(out, 1) == [-3, -2, -2, -4]
        assert classify(out) is ND
        far = next(v for v in out if out.degree(v) == 1 and v != 1)
        vals = diagonalize(out, far).values
        assert [vals[v] for v in (1, 5, 4, 3)] == [-3, F(-5, 3), F(-7, 5), F(-23, 7)]
        assert tree_det(out) == F(-3) * F(-5, 3) * F(-7, 5) * F(-23, 7)


def test_criterion_06_sylvester_suite(criterion):
    with criterion(6, "1000 random trees: diagonalizer inertia and product match the oracle"):
        t0 = time.perf_counter()
        rng = random.Random(20240601)
        for i in range(1000):
            t = generate(GenParams(vertices=rng.randint(1, 12), seed=rng.getrandbits(64)))
            b = framing_matrix(t)
            want, det = congruence_signature(b), determinant(b)
            roots = t.vertices if i < 100 else [rng.choice(t.vertices)]
            for root in roots:
                res = diagonalize(t, root)
                assert res.signature == want, (t, root)
                assert res.product() == det, (t, root)
        assert time.perf_counter() - t0 < 60


def _every_move(t):
    for kind in MoveKind:
        for site in applicable_sites(t, kind, Direction.CONTRACT):
            yield make_contract(kind, site)
        for site in applicable_sites(t, kind, Direction.EXPAND):
            if kind is not MoveKind.C:
                yield make_expand(t, kind, site)
                continue
            nb = t.neighbors(site)
            splits = [s for r in range(len(nb) + 1) for s in combinations(nb, r)][:16]
            for side in splits:
                yield make_expand(t, kind, site, w1=1, side1=side)


def test_criterion_07_signature_deltas(criterion):
    with criterion(7, "200 random trees, every move at every site: deltas and |det| hold"):
        t0 = time.perf_counter()
        rng = random.Random(7)
        checked = 0
        for _ in range(200):
            t = generate(GenParams(vertices=rng.randint(1, 10), seed=rng.getrandbits(64)))
            b = framing_matrix(t)
            before, det = congruence_signature(b), abs(determinant(b))
            for m in _every_move(t):
                after = apply(t, m)
                ba = framing_matrix(after)
                sig = congruence_signature(ba)
                dp, dm = expected_signature_delta(m.kind, m.direction)
                assert (sig.n_plus - before.n_plus, sig.n_minus - before.n_minus) == (dp, dm), m
                assert abs(determinant(ba)) == det, m
                checked += 1
        assert checked > 1000
        assert time.perf_counter() - t0 < 60


def _interior_moves(t, rng):
    """Moves at interior sites of a path that keep it a path."""
    out = [make_expand(t, k, e) for e in t.edges for k in (MoveKind.A_PLUS, MoveKind.A_MINUS)]
    for v in t:
        if t.degree(v) != 2:
            continue
        w = t.weight(v)
        if w in (1, -1):
            out.append(make_contract(MoveKind.A_PLUS if w == 1 else MoveKind.A_MINUS, v))
        if w == 0:
            out.append(make_contract(MoveKind.C, v))
        for u in t.neighbors(v):
            out.append(make_expand(t, MoveKind.C, v, w1=rng.randint(-3, 3), side1=[u]))
    return out


def _end_values(t):
    ends = [v for v in t if t.degree(v) <= 1]
    return sorted(str(eval_ncf(along(t, e))) for e in ends)


def test_criterion_08_continued_fractions(criterion):
    with criterion(8, "eval_ncf invariant under 500 path moves; [3,7,0] = 3; path[2,1] -> 1"):
        rng = random.Random(88)
        cases = 0
        while cases < 500:
            t = path([rng.randint(-4, 4) for _ in range(rng.randint(2, 5))])
            moves = _interior_moves(t, rng)
            if not moves:
                continue
            after = apply(t, rng.choice(moves))
            assert _end_values(after) == _end_values(t), (t, after)
            cases += 1
        assert eval_ncf([3, 7, 0]) == 3
        out, log = contract_path(path([2, 1]), 1, 2)
        assert out == build_tree({1: 1}, []) and eval_ncf([2, 1]) == 1
        assert replay(path([2, 1]), log) == out


def test_criterion_09_generated_reductions(criterion):
    with criterion(9, "200 generated trees reduce to negative definite with valid reports"):
        t0 = time.perf_counter()
        exhausted = []
        for i in range(200):
            rng = random.Random(1000 + i)
            t = generate(GenParams(vertices=rng.randint(1, 8), seed=i,
                                   expansions=rng.randint(0, 6), mode=GenMode.ND_SEED))
            try:
                r = reduce(t, fallback_depth=12, require_weakly_nd=False)
            except FallbackExhausted:
                exhausted.append(t)
                r = reduce(t, fallback_depth=16, require_weakly_nd=False)
            assert replay(t, r.log) == r.output
            assert classify(r.output) is ND
            n_plus = congruence_signature(framing_matrix(t)).n_plus
            pluses = [n_plus] + [rd.after.n_plus for rd in r.rounds]
            assert all(a > b for a, b in zip(pluses, pluses[1:]))
            assert len(r.rounds) <= n_plus
        assert len(exhausted) <= 2
        assert time.perf_counter() - t0 < 120


@pytest.mark.parametrize("weights", [[1], [-2, -1, -1]], ids=["single-1", "path-2-1-1"])
def test_criterion_10_degenerate(criterion, weights):
    with criterion(10, f"reduce {weights} via fallback with |det| = 1 preserved"):
        t0 = time.perf_counter()
        t = path(weights)
        r = reduce(t)
        assert r.used_fallback
        assert replay(t, r.log) == r.output
        assert classify(r.output) is ND
        assert abs(tree_det(t)) == 1
        assert abs(tree_det(r.output)) == 1
        assert time.perf_counter() - t0 < 10
