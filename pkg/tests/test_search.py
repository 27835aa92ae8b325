import random
from pathlib import Path

import pytest
from gmpy2 import mpq as Q

from pentile.exactmath import Feasible, lp_feasible, lp_maximize
from pentile.search import (NO_TILING, PRUNED, CaseContext, CaseVerdict, CertFeasible,
                            InfeasibleCertified, InvalidCase, LengthProgram, Limits, branch_run,
                            family, feasibility_certificate, search_case, turning)
from pentile.search.certificate import point_certificate
from pentile.search.driver import case_set, settle, Settled
from pentile.search.families import edge_map, families, parse_lengths
from pentile.tiling_graph import (add_face, complete_vertices, enumerate_attachments, find_runs,
                                  initial_graph, merge_label, MergeCreatesViolation)
from pentile.vectypes import dihedral_group

DATA = Path(__file__).resolve().parents[1] / "src" / "pentile" / "data"


def test_length_program_basics():
    L = LengthProgram()
    assert L.feasible()
    d = (1, -1, 0, 0, 0)
    assert set(L.sign_options(d)) == {-1, 0, 1}
    L2 = L.with_eq(d)
    assert L2.implies_zero(d) and not L.implies_zero(d)
    assert tuple(L2.with_pos((0, 0, 1, -1, 0)).sign_options((0, 0, 1, -1, 0))) == (1,)
    assert not L.with_pos(d).with_neg(d).feasible()
    # l_i > 0 is part of the base program
    assert not L.with_eq((1, 0, 0, 0, 0)).feasible()


def test_turning_of_regular_pentagon():
    assert turning((Q(3, 5),) * 5) == tuple(Q(2 * i, 5) for i in range(5))


def test_length_chain_parsing():
    assert parse_lengths("A=B=C+2E") == [(1, -1, 0, 0, 0), (0, 1, -1, 0, -2)]


def test_edge_map_follows_corners():
    for p in dihedral_group():
        em = edge_map(p)
        assert sorted(em) == list(range(5))
        for k in range(5):
            assert {em[k], (em[k] + 1) % 5} == {p[k], p[(k + 1) % 5]}


def _random_states(seed, count):
    """Settled search states reached by random attachments."""
    from pentile.goodset_enum import load_golden
    from pentile.vectypes import compat
    golden = load_golden()
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        case = rng.randrange(1, len(golden) + 1)
        ctx = CaseContext(case_set(case), case)
        g, L = initial_graph(), LengthProgram()
        for _ in range(rng.randint(1, 5)):
            v = rng.choice(g.open_vertices())
            atts = enumerate_attachments(g, v, ctx.X)
            if not atts:
                break
            g = complete_vertices(add_face(g, rng.choice(atts)), ctx.X)
        for r in find_runs(g):
            n = len(r.steps)
            for i in range(n):
                for j in range(i + 1, n):
                    if 1 <= r.empties(i, j) <= 2:
                        out.append((ctx, g, L, r, i, j))
    return out[:count]


def test_branch_run_partitions_q():
    rng = random.Random(4)
    for ctx, g, L, run, i, j in _random_states(2, 60):
        d = run.distance(i, j)
        kids = branch_run(g, L, run, i, j, ctx)
        progs = [L2 for _, L2 in kids]
        # pairwise inconsistent
        for a in range(len(progs)):
            for b in range(a + 1, len(progs)):
                both = progs[a].sys
                for row in progs[b].rows():
                    both = both.eq(row[1], 0) if row[0] == "eq" else both.ge(row[1], 0, True)
                assert not isinstance(lp_feasible(both), Feasible)
        # every realizable sign is covered, except a coincidence that cannot be merged
        signs = {s for s in (-1, 0, 1) if L.with_sign(d, s).feasible()}
        covered = {s for s in signs if any(L2.key() == L.with_sign(d, s).key() for L2 in progs)}
        for s in signs - covered:
            assert s == 0
        # the closures of the pieces cover the closure of Q
        if covered == signs:
            for _ in range(3):
                c = [rng.randint(-3, 3) for _ in range(5)]
                best = lp_maximize(c, L.sys.relaxed()).value
                assert max(lp_maximize(c, L2.sys.relaxed()).value for L2 in progs) == best


def _witnesses():
    for line in (DATA / "family_witnesses.txt").read_text().splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        kind, t, case, *rest = line.split()
        if kind == "exact":
            yield int(t), int(case), tuple(Q(x) for x in rest), None
        else:
            k = rest.index("|")
            yield int(t), int(case), tuple(float(x) for x in rest[:k]), tuple(float(x) for x in rest[k + 1:])


WITNESSES = list(_witnesses())


def test_witness_table_covers_known_types():
    assert sorted(t for t, *_ in WITNESSES) == list(range(1, 16))
    for t, case, alpha, _ in WITNESSES:
        assert family(t).table_case == case


@pytest.mark.parametrize("t,case,alpha,ell", WITNESSES, ids=[f"type{w[0]}" for w in WITNESSES])
def test_pruning_keeps_known_family_witnesses(t, case, alpha, ell):
    f = family(t)
    X = case_set(case)
    L = LengthProgram()
    for r in f.length_equations:
        L = L.with_eq(r)
    for a, b in f.angle_equations:
        assert abs(sum(x * y for x, y in zip(a, alpha)) - b) < 1e-9
    if ell is None:
        assert all(sum(x * y for x, y in zip(v, alpha)) == 2 for v in X)
        res = point_certificate(alpha, L)
        assert isinstance(res, CertFeasible)
        ell = res.witness[1]
        sign = lambda d: (sum((x * l for x, l in zip(d, ell)), ell[0] * 0)).sign()
    else:
        for r in f.length_equations:
            assert abs(sum(x * y for x, y in zip(r, ell))) < 1e-9

        def sign(d):
            v = sum(x * y for x, y in zip(d, ell))
            return 0 if abs(v) < 1e-6 else (1 if v > 0 else -1)
    assert not isinstance(feasibility_certificate(X, L, max_boxes=64), InfeasibleCertified)
    rng = random.Random(t)
    for _ in range(4):
        L2 = L
        for _ in range(3):
            d = tuple(rng.randint(-2, 2) for _ in range(5))
            s = sign(d)
            if s != 0:
                L2 = L2.with_sign(d, s)
        assert L2.feasible()
        assert not isinstance(feasibility_certificate(X, L2, max_boxes=64), InfeasibleCertified)


def test_verdict_json_round_trip():
    v = search_case(1)
    assert v.outcome == PRUNED and v.families == (1,)
    w = CaseVerdict.from_json(v.to_json())
    assert w == v


@pytest.mark.parametrize("bad", [0, 372, -5])
def test_invalid_case(bad):
    with pytest.raises(InvalidCase):
        search_case(bad)


def test_debug_search_closes_small_case():
    v = search_case(343, Limits(max_tiles=30, debug=True))
    assert v.outcome == NO_TILING
    assert v.trace_hash is not None
    again = search_case(343, Limits(max_tiles=30))
    assert again.trace_hash == v.trace_hash


def test_settle_keeps_initial_graph():
    ctx = CaseContext(case_set(303), 303)
    res = settle(initial_graph(), LengthProgram(), ctx)
    assert isinstance(res, Settled)


@pytest.mark.slow
def test_every_single_angle_case_closes_at_the_root(golden):
    # with all angles inside ]0, pi[ some positive side lengths always close
    from pentile.vectypes import compat
    for i, dim, _, B in golden:
        if dim == 0:
            assert isinstance(feasibility_certificate(compat(B), LengthProgram()), CertFeasible), i
