import json

from rwsdual.search import enumerate_dual_pairs, enumerate_regular, verify_theorem
from rwsdual.weights import WeightSystem


def test_enumerate_examples():
    assert WeightSystem((1, 1, 1), 3) in list(enumerate_regular(3))
    type_I = list(enumerate_regular(30, {"type": "I"}))
    assert WeightSystem((6, 10, 15), 30) in type_I
    assert WeightSystem((1, 1, 1), 3) not in list(enumerate_regular(3, {"mult": 1}))


def test_enumeration_order_and_canonical_form():
    ws = list(enumerate_regular(24))
    assert ws == sorted(ws, key=lambda w: (w.h, w.weights))
    assert all(list(w.weights) == sorted(w.weights) for w in ws)


def test_enumerate_filters():
    for w in enumerate_regular(30, {"mu0_zero": True, "eps_coprime": True}):
        assert w.epsilon % w.h != 0


def _pairs(h_max):
    return {(r.W.key(), r.W_star.key()): r for r in enumerate_dual_pairs(h_max)}


def test_dual_pair_examples():
    pairs = _pairs(31)
    r = pairs[((31, (4, 9, 11)), (31, (5, 6, 13)))]
    assert r.family == "V" and r.is_M_dual and r.is_P_dual
    r = pairs[((30, (6, 10, 15)), (30, (6, 10, 15)))]
    assert r.family == "I"
    r = pairs[((24, (3, 8, 12)), (24, (6, 8, 9)))]
    assert r.family == "II"


def test_verify_small():
    assert verify_theorem(12).verdict == "pass"
    assert verify_theorem(2).verdict == "pass"
    assert verify_theorem(20, audit_unpruned=True).verdict == "pass"


def test_verify_determinism_across_workers():
    a = verify_theorem(24, workers=1).dumps()
    b = verify_theorem(24, workers=2).dumps()
    assert a == b
    assert "elapsed" not in json.loads(a)
