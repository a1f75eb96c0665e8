"""Smoke test for the Python bindings. Run after `maturin develop`."""

from fractions import Fraction

import brik


def main():
    assert [str(brik.build_block(i)) for i in range(1, 6)] == [
        "101",
        "10101",
        "10101101",
        "1010110101101",
        "1010110101101110101101",
    ]
    assert brik.block_length(5) == 22
    assert str(brik.prefix(8)) == "10101101"
    assert list(brik.Stream(8)) == [1, 0, 1, 0, 1, 1, 0, 1]

    p = brik.prefix(10_000)
    assert all(brik.bit_at(n) == p.get(n) for n in range(1, 10_001))

    r5 = brik.run_start(5)
    assert r5 == 2**2059 + 2061
    assert brik.bit_at("2^2059+2061") == 1
    assert str(brik.window(r5 - 1, 7)) == "0111110"
    assert brik.bit_at_with_steps(r5) == (1, 2059)
    assert brik.verify_run(4)
    assert brik.scan_first_run(4, 10_000) == 2061
    assert brik.scan_first_run(5, 10_000) is None

    seen = brik.scan_factors(1_000_000, 5)
    allowed = brik.enumerate_admissible(5)
    assert len(seen) == 12 and brik.complexity(5) == 13
    assert [str(w) for w in allowed.members if w not in seen] == ["11111"]
    assert not brik.is_factor(brik.Word("1001"))

    assert [i for i in range(1, 150) if brik.is_good(i)] == [1, 3, 8, 137]
    assert brik.good_chain(4)[-1] == 2**136 + 138
    assert brik.ends_with_block(137, 8)
    assert brik.count_occurrences(brik.Word("101"), 8) == 3

    w = brik.witness(2)
    assert (str(w.u), str(w.v), w.prefix_ok, w.ratio) == ("10", "101", True, Fraction(2, 3))

    a = brik.alpha_bounds(64)
    assert a.pinned_decimal().startswith("0.64505878493452")
    assert a.width() <= Fraction(1, 2**63)
    assert a.midpoint() in a
    assert a.is_within(brik.alpha_bounds(32))
    assert brik.block_ones(5) == 14
    assert brik.ones_prefix_count(8) == 5
    assert brik.count_identity_check(5, 3)

    for call, exc in [
        (lambda: brik.build_block(31), brik.CapExceededError),
        (lambda: brik.run_start(6), brik.RepresentationError),
        (lambda: brik.bit_at("x"), ValueError),
        (lambda: brik.bit_at(0), ValueError),
        (lambda: brik.window(1, 8, brik.Limits(window_cap=4)), brik.CapExceededError),
    ]:
        try:
            call()
        except exc:
            pass
        else:
            raise AssertionError(f"expected {exc.__name__}")
    assert issubclass(brik.CapExceededError, brik.BrikError)

    rows = brik.verify("fast")
    assert all(ok for _, ok, _, _ in rows), [r for r in rows if not r[1]]
    print(f"smoke test ok ({len(rows)} verify checks passed)")


if __name__ == "__main__":
    main()
