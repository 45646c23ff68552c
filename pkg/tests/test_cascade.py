import numpy as np
import pytest

from ringlogic.cascade import (
    ArrayConfig,
    CascadeError,
    Channel,
    Mode,
    arithmetic_demo,
    build_array,
    decode_stream,
    encode_stream,
    run_array,
)
from ringlogic.device import Gate, program_for
from ringlogic.transient import prbs


def test_encode_boundaries():
    for enc in ("unary", "bernoulli"):
        assert set(encode_stream(1.0, 37, enc).bits) == {1}
        assert set(encode_stream(0.0, 37, enc).bits) == {0}


def test_unary_thermometer():
    s = encode_stream(0.7, 10, "unary")
    assert "".join(map(str, s.bits)) == "1111111000"
    assert decode_stream(s) == 0.7
    # half rounds away from zero
    assert sum(encode_stream(0.25, 2, "unary").bits) == 1


def test_bernoulli_mean_and_determinism():
    s = encode_stream(0.5, 10_000, "bernoulli", seed=3)
    assert abs(decode_stream(s) - 0.5) <= 0.015
    assert s == encode_stream(0.5, 10_000, "bernoulli", seed=3)
    assert s != encode_stream(0.5, 10_000, "bernoulli", seed=4)


def test_encode_errors():
    with pytest.raises(CascadeError):
        encode_stream(1.1, 10)
    with pytest.raises(CascadeError):
        encode_stream(0.5, 0)
    with pytest.raises(CascadeError):
        encode_stream(0.5, 10, "gray")
    with pytest.raises(CascadeError):
        decode_stream([])


def test_simd_all_ones():
    cfg = build_array([Gate.AND] * 4)
    assert cfg.mode is Mode.SIMD
    ones = (1,) * 16
    for out in run_array(cfg, [(ones, ones)] * 4):
        assert set(out.bits) == {1}


def test_mimd_unary_means():
    cfg = build_array([Gate.AND, Gate.OR, Gate.XOR])
    assert cfg.mode is Mode.MIMD
    x, w = encode_stream(0.7, 10, "unary"), encode_stream(0.4, 10, "unary")
    means = [decode_stream(o) for o in run_array(cfg, [(x, w)] * 3)]
    assert means == pytest.approx([0.4, 0.7, 0.3], abs=1e-12)


def test_unary_exhaustive_small_grid():
    n = 64
    cfg = build_array([Gate.AND, Gate.OR, Gate.XOR])
    for i in range(n + 1):
        x = encode_stream(i / n, n, "unary")
        for j in range(n + 1):
            w = encode_stream(j / n, n, "unary")
            # bitwise brute force on the aligned thermometer streams
            want = [
                sum(a & b for a, b in zip(x.bits, w.bits)),
                sum(a | b for a, b in zip(x.bits, w.bits)),
                sum(a ^ b for a, b in zip(x.bits, w.bits)),
            ]
            assert want == [min(i, j), max(i, j), abs(i - j)]
            got = [sum(o.bits) for o in run_array(cfg, [(x, w)] * 3)]
            assert got == want


def test_bernoulli_and_product():
    x = encode_stream(0.5, 10_000, "bernoulli", 0)
    w = encode_stream(0.5, 10_000, "bernoulli", 1)
    out = run_array(build_array([Gate.AND]), [(x, w)])[0]
    assert abs(decode_stream(out) - 0.25) <= 0.015


def test_transient_matches_ideal_on_and():
    xb, wb = prbs(7, 1, 64).bits, prbs(7, 0x55, 64).bits
    cfg = build_array([Gate.AND, Gate.XOR])
    ideal = run_array(cfg, [(xb, wb)] * 2)
    real = run_array(cfg, [(xb, wb)] * 2, fidelity="transient", bit_rate=10.0)
    for a, b in zip(ideal, real):
        # first bits are the settling window
        assert a.bits[2:] == b.bits[2:]


def test_channel_permutation():
    funcs = [Gate.AND, Gate.OR, Gate.XOR]
    streams = [(encode_stream(v, 50, "bernoulli", k), encode_stream(1 - v, 50, "bernoulli", k + 9)) for k, v in enumerate((0.2, 0.5, 0.9))]
    base = run_array(build_array(funcs), streams)
    perm = [2, 0, 1]
    swapped = run_array(build_array([funcs[p] for p in perm]), [streams[p] for p in perm])
    assert [swapped[k].bits for k in range(3)] == [base[p].bits for p in perm]


def test_reconfiguration_is_pure_data():
    x, w = encode_stream(0.6, 20, "unary"), encode_stream(0.3, 20, "unary")
    a = run_array(build_array([Gate.AND, Gate.AND]), [(x, w)] * 2)
    b = run_array(build_array([Gate.AND, Gate.XOR]), [(x, w)] * 2)
    c = run_array(build_array([Gate.AND, Gate.AND]), [(x, w)] * 2)
    assert a == c and a[0] == b[0]


def test_array_errors():
    with pytest.raises(CascadeError):
        build_array([Gate.AND, Gate.OR], spacing=1.0)
    with pytest.raises(CascadeError):
        build_array([Gate.AND, Gate.OR], mode="SIMD")
    with pytest.raises(CascadeError):
        ArrayConfig((Channel(1550.0, program_for(Gate.AND, 1550.0)), Channel(1545.0, program_for(Gate.AND, 1545.0))))
    cfg = build_array([Gate.AND, Gate.OR])
    with pytest.raises(CascadeError):
        run_array(cfg, [((1, 0), (1, 0)), ((1, 0, 1), (1, 0, 1))])
    with pytest.raises(CascadeError):
        run_array(cfg, [((1,), (1,))])
    with pytest.raises(CascadeError):
        run_array(cfg, [((1,), (1,))] * 2, fidelity="exact")


def test_arithmetic_demo():
    m = arithmetic_demo("multiply", 0.5, 0.5, 10_000)
    assert abs(m["result"] - 0.25) <= 0.015
    s = arithmetic_demo("subtract", 0.7, 0.4, 1000, encoding="unary")
    assert s["result"] == pytest.approx(0.3, abs=1e-12) and s["abs_error"] < 1e-12
    a = arithmetic_demo("add", 0.2, 0.6, 100)
    assert a["result"] == pytest.approx(0.6)
    ident = arithmetic_demo("multiply", 0.37, 1.0, 10_000, seed=5)
    assert abs(ident["result"] - 0.37) <= 3 * np.sqrt(0.37 * 0.63 / 10_000)
    with pytest.raises(CascadeError):
        arithmetic_demo("divide", 0.1, 0.2)
