import itertools
import random

import pytest
import sympy
from gmpy2 import mpq as Q

from pentile.vectypes import (InfiniteSet, apply_perm, canonical_form, compat, decode, decode_set,
                              dihedral_group, dominated, down_closure, encode, encode_set,
                              is_good, is_good_by_members, open_witness, polytope_dim,
                              same_polytope, stabilizer)

ONES3 = (1, 1, 1, 1, 1, 3)


def test_encoding_round_trip():
    for v in [(0, 0, 0, 0, 4), (1, 2, 0, 1, 0), (0, 0, 12, 0, 0)]:
        assert decode(encode(v)) == v
    X = ((0, 0, 1, 2, 0), (2, 0, 0, 1, 0))
    assert decode_set(encode_set(X)) == X
    for bad in ["1234", "12a45", "[1,2,3]"]:
        with pytest.raises(ValueError):
            decode(bad)


def test_dihedral_group():
    G = dihedral_group()
    assert len(G) == 10 and len(set(G)) == 10
    X = ((1, 1, 1, 0, 0),)
    assert len({apply_perm(p, X) for p in G}) == 5
    assert len(stabilizer(X)) == 2


def test_canonical_form_is_orbit_invariant():
    rng = random.Random(3)
    for _ in range(30):
        X = tuple(sorted({tuple(rng.randint(0, 3) for _ in range(5)) for _ in range(3)}))
        c = canonical_form(X)
        for p in dihedral_group():
            assert canonical_form(apply_perm(p, X)) == c


def _compat_oracle(B):
    """All w with (w,2) in the span, straight from the definition.

    Any such w satisfies w.alpha = 2 at every point of P_B, so its
    coordinates are bounded by 2 / alpha_i at an interior point.
    """
    a = open_witness(B)
    bounds = [int(2 / x) for x in a]
    base = sympy.Matrix([list(ONES3)] + [list(v) + [2] for v in B])
    r = base.rank()
    out = []
    for w in itertools.product(*(range(b + 1) for b in bounds)):
        if sum(x * y for x, y in zip(w, a)) != 2:
            continue
        if sympy.Matrix(base.tolist() + [list(w) + [2]]).rank() == r:
            out.append(w)
    return tuple(sorted(out))


def test_compat_matches_brute_force(golden):
    rng = random.Random(5)
    picks = rng.sample(range(len(golden)), 20)
    for k in picks:
        B = golden[k][3]
        X = compat(B)
        assert X == _compat_oracle(B), f"row {golden[k][0]}"
        assert compat(X) == X


def test_compat_rejects_boundary_only_sets():
    with pytest.raises(InfiniteSet):
        compat(((2, 0, 0, 0, 0),))


def test_is_good_agrees_with_member_lps():
    rng = random.Random(9)
    for _ in range(150):
        X = tuple(sorted({tuple(rng.randint(0, 3) for _ in range(5)) for _ in range(rng.randint(1, 4))}))
        assert is_good(X) == is_good_by_members(X), X


def test_goodness_examples():
    assert is_good(((1, 1, 1, 1, 1),))
    assert not is_good(((2, 0, 0, 0, 0),))
    assert is_good(((2, 0, 0, 0, 0), (0, 1, 1, 1, 1)))


def test_polytope_dim_and_equivalence(golden):
    for i, dim, _struck, B in golden[:40]:
        assert polytope_dim(B) == dim
        assert same_polytope(B, compat(B))


def test_dominance_and_down_closure():
    X = ((0, 0, 1, 2, 0), (2, 0, 0, 1, 0))
    D = down_closure(X)
    assert (0, 0, 1, 1, 0) in D and (2, 0, 0, 1, 0) in D and (1, 1, 0, 0, 0) not in D
    assert dominated((0, 0, 0, 2, 0), X)
    assert not dominated((0, 1, 0, 0, 0), X)
