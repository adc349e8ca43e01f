"""Smoke test for the mzvlab extension module.

Build and install first, e.g. `maturin develop -m crates/python/Cargo.toml`.
"""

import mzvlab


def main():
    z2 = mzvlab.Poly("x0x1")
    assert str(mzvlab.product("stuffle", z2, z2)) == "x0x0x0x1 + 2 x0x1x0x1"
    assert str(mzvlab.product("shuffle", z2, z2)) == "4 x0x0x1x1 + 2 x0x1x0x1"
    assert str(mzvlab.product("square", z2, z2)) == "2 x0x1x0x1 + x0x1x1x1"

    w = mzvlab.Poly("z{5}z{1}", alphabet="h")
    assert mzvlab.apply_map("tau", w).z_form() == "z{3}z{1}z{1}z{1}"

    ppy = mzvlab.Poly("ppy")
    assert mzvlab.coproduct("square-op", ppy) == [
        ("1/1", "1", "ppy"),
        ("1/1", "p", "py"),
        ("1/1", "ppy", "1"),
    ]
    assert mzvlab.Poly("pd", alphabet="pdy") == mzvlab.Poly("1", alphabet="pdy")

    ooz3 = mzvlab.qeval("OOZ", [3], 4)
    assert ooz3 == ["0/1", "1/1", "4/1", "7/1", "14/1"], ooz3
    assert mzvlab.rota_baxter_ooz([3], 4) == ooz3
    sz2 = mzvlab.qeval_poly("SZ", ppy, 4)
    assert sz2[2:] == ["1/1", "2/1", "4/1"], sz2

    partial, corrected, bound = mzvlab.classical_zeta("(2,1)")
    assert abs(corrected - 1.2020569031595942) < 1e-8
    assert partial <= 1.2020569031595942 <= partial + bound

    cases, failures = mzvlab.run_suite("thm-derivation", 6)
    assert cases > 0 and failures == 0

    try:
        mzvlab.Poly("1")
    except ValueError as e:
        assert "ambiguous" in str(e)
    else:
        raise AssertionError("expected ValueError")

    print("mzvlab smoke test passed")


if __name__ == "__main__":
    main()
