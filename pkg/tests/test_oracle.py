import itertools

import pytest
from hypothesis import given, settings

from wilfmotzkin import oracle
from wilfmotzkin.engine import f_sequence, motzkin_number, motzkin_sequence
from wilfmotzkin.oracle import (EnumerationTooLarge, MotzkinPath, StirlingTable, enumerate_paths,
                                f_by_stirling, motzkin_by_enumeration, stirling, weight_of_path)
from wilfmotzkin.weights import ParityPoly, WeightSystem, preset

from conftest import affine_systems
from test_weights import ALL_PRESETS

F_HEAD = [1, -1, 0, 1, 1, -2, -9, -9, 50, 267, 413, -2180, -17731, -50533]


def set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def brute_paths(n):
    """All step words of length n filtered afterwards (no pruning)."""
    out = set()
    for word in itertools.product("UDL", repeat=n):
        h = 0
        ok = True
        for s in word:
            h += (s == "U") - (s == "D")
            if h < 0:
                ok = False
                break
        if ok and h == 0:
            out.add("".join(word))
    return out


def test_enumeration_small():
    assert [p.steps for p in enumerate_paths(0)] == [""]
    assert sorted(p.steps for p in enumerate_paths(2)) == ["LL", "UD"]
    assert len(enumerate_paths(4)) == 9


@pytest.mark.parametrize("n", range(9))
def test_enumeration_matches_unpruned_filter(n):
    steps = [p.steps for p in enumerate_paths(n)]
    assert len(steps) == len(set(steps))
    assert set(steps) == brute_paths(n)


def test_enumeration_counts_match_engine():
    counts = [len(enumerate_paths(n)) for n in range(15)]
    assert counts == motzkin_sequence(preset("motzkin"), 14)


def test_enumeration_guard():
    with pytest.raises(EnumerationTooLarge):
        enumerate_paths(17)


def test_invalid_paths_rejected():
    for bad in ("D", "UU", "DU", "UDD", "X"):
        with pytest.raises(ValueError):
            MotzkinPath(bad)


FIGURE_PATH = MotzkinPath("ULUULDLLDLD")


def test_figure_path_weight():
    assert weight_of_path(FIGURE_PATH, preset("motzkin")) == 1
    assert weight_of_path(MotzkinPath(""), preset("wilf_plain")) == 1
    # distinct primes per (kind, height): b=(2,3,5) c=(7,11,13,17) d=(19,23,29)
    primes_b = {0: 2, 1: 3, 2: 5, 3: 31}
    primes_c = {0: 7, 1: 11, 2: 13, 3: 17}
    primes_d = {0: 19, 1: 23, 2: 29, 3: 37}

    def poly(p):
        # x=2j even: p[0] + (p[2]-p[0]) j ; x=2j+1 odd: p[1] + (p[3]-p[1]) j
        return ParityPoly((p[0], p[2] - p[0]), (p[1], p[3] - p[1]))

    system = WeightSystem(poly(primes_b), poly(primes_c), poly(primes_d), "primes")
    for x in range(4):
        assert (system.b(x), system.c(x), system.d(x)) == (primes_b[x], primes_c[x], primes_d[x])
    b, c, d = primes_b, primes_c, primes_d
    expected = b[0] * b[1] * b[2] * c[1] ** 2 * c[2] ** 2 * c[3] * d[0] * d[1] * d[2]
    assert weight_of_path(FIGURE_PATH, system) == expected


def test_enumeration_examples():
    assert motzkin_by_enumeration(preset("wilf_plain"), 5) == -2
    assert motzkin_by_enumeration(preset("motzkin"), 5) == 21
    assert motzkin_by_enumeration(preset("wilf_halved"), 6) == -9


@pytest.mark.parametrize("system", ALL_PRESETS, ids=lambda s: s.label)
def test_enumeration_matches_engine_presets(system):
    for n in range(13):
        assert motzkin_by_enumeration(system, n) == motzkin_number(system, n)


@settings(max_examples=50, deadline=None)
@given(affine_systems())
def test_enumeration_matches_engine_random(system):
    seq = motzkin_sequence(system, 12)
    assert [motzkin_by_enumeration(system, n) for n in range(13)] == seq


def test_stirling_examples():
    assert stirling(4, 2) == 7
    assert all(stirling(n, n) == 1 for n in range(30))
    assert stirling(5, 0) == 0
    assert stirling(0, 0) == 1
    assert stirling(3, 5) == 0


@pytest.mark.parametrize("n", range(10))
def test_stirling_against_set_partitions(n):
    counts = [0] * (n + 1)
    for part in set_partitions(list(range(n))):
        counts[len(part)] += 1
    assert [stirling(n, k) for k in range(n + 1)] == counts


def test_stirling_table_invariants():
    table = StirlingTable.build(40)
    assert table(0, 0) == 1
    for n in range(1, 41):
        assert table(n, 0) == 0
        assert table(n, n) == 1
        for k in range(1, n):
            assert table(n, k) == k * table(n - 1, k) + table(n - 1, k - 1)


def test_f_by_stirling():
    assert [f_by_stirling(n) for n in range(14)] == F_HEAD
    assert f_by_stirling(2) == 0
    assert f_by_stirling(20) == f_sequence(20)[20]
    assert [f_by_stirling(n) for n in range(61)] == list(f_sequence(60))


def test_bell_numbers():
    bell = [sum(1 for _ in set_partitions(list(range(n)))) for n in range(8)]
    assert bell[:6] == [1, 1, 2, 5, 15, 52]
    assert motzkin_sequence(preset("flajolet_stirling", u=1), 7) == bell


@pytest.mark.parametrize("n", range(21))
def test_theorem3_identity(n):
    points = range(-3, 4) if n > 12 else range(-(n // 2) - 3, n - n // 2 - 2)
    assert len(list(points)) >= (7 if n > 12 else n + 1)
    for u in points:
        assert oracle.stirling_poly_check(n, u)
    assert oracle.stirling_poly(n, -1) == f_sequence(n)[n]
