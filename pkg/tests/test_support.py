import json
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from tpkit.exact import ExactMatrix, IndexSet
from tpkit.report import FAIL, NOT_MET, PASS, Check, Report, not_met
from tpkit.rng import Stream, mix64


def test_mix64_frozen():
    # SplitMix64 finalizer reference values.
    assert mix64(0) == 0
    assert mix64(1) == 0x5692161D100B05E5
    a, b = Stream(0, 0), Stream(0, 0)
    assert [a.draw() for _ in range(3)] == [b.draw() for _ in range(3)]


@given(st.integers(0, 2**64 - 1), st.integers(0, 2**16), st.integers(-50, 50), st.integers(0, 50))
def test_integer_in_range(seed, stream, lo, width):
    rng = Stream(seed, stream)
    assert all(lo <= rng.integer(lo, lo + width) <= lo + width for _ in range(5))


@given(st.integers(0, 2**32), st.integers(1, 20))
def test_rational_is_positive_and_bounded(seed, magnitude):
    x = Stream(seed, 0).rational(magnitude)
    assert 0 < x and x.numerator <= magnitude and x.denominator <= magnitude


def test_streams_are_independent_and_reproducible():
    a = [Stream(5, 1).integer(0, 10**9) for _ in range(3)]
    assert len(set(a)) == 1
    xs = Stream(5, 1)
    ys = Stream(5, 2)
    assert [xs.integer(0, 10**9) for _ in range(4)] != [ys.integer(0, 10**9) for _ in range(4)]


@given(st.integers(0, 2**32), st.integers(0, 10))
def test_sample_distinct(seed, k):
    out = Stream(seed, 3).sample(range(10), k)
    assert len(out) == len(set(out)) == k


def test_report_status_rules():
    r = Report("x")
    r.add(not_met("h"))
    assert r.status == NOT_MET
    r.add(Check("ok", True))
    assert r.status == PASS
    r.add(Check("bad", False))
    assert r.status == FAIL and not r.ok


def test_report_json_is_exact_and_sorted():
    r = Report("x", seed=3, trials=1)
    r.add(Check("v", True, expected=Fraction(1, 3), actual=ExactMatrix([[Fraction(1, 2)]]),
                witness=IndexSet((1, 2), 3)))
    d = json.loads(r.to_json())
    detail = d["details"][0]
    assert detail["expected"] == "1/3"
    assert r.to_json() == r.to_json()


def test_report_extend_prefixes():
    inner = Report("inner")
    inner.add(Check("c", True))
    outer = Report("outer")
    outer.extend(inner)
    assert outer.details[0].name.startswith("inner")
