"""Smoke test for the compiled `superspin` module.

Build first, e.g. `pip install --no-build-isolation -e crates/python`,
then run `python crates/python/python/smoke_test.py`.
"""

import superspin


def main():
    assert superspin.parse("no(psi(-,i), psi(+,i))") == "-no(psi(+,i), psi(-,i))"

    poles = superspin.ope("psi(-,i)", "psi(+,j)")
    assert poles[0] == (1, 0, "delta(i,j)"), poles

    for family in ("su", "so"):
        assert superspin.verify(family), family
    assert superspin.verify_sp_numeric(1)

    assert superspin.central_charge("free") == "0"
    assert superspin.conformal_weight("free", "psi(+,i)") == "1/2"
    assert superspin.conformal_weight("gl11", "beta(-,i)") == "1/(2*N^2)"

    su = superspin.dos("su")
    assert su["gamma"] == "1/N^2"
    assert superspin.evaluate(su["nu"], 2) == "1/7"
    assert superspin.evaluate(superspin.dos("sp")["nu"], 1) == "1/7"
    assert superspin.evaluate(superspin.dos("so")["nu"], 3) == "-1/3"

    assert superspin.beta("so") == "beta_g = (2*N - 4)*g^2\nbeta_g' = -4*g'^2"
    assert superspin.beta_coefficient("su", "g", "g", "g") == "2*N"

    try:
        superspin.parse("no(psi(+,i), psi(+,i), psi(+,i))")
    except ValueError as e:
        assert "3 times" in str(e)
    else:
        raise AssertionError("triple index accepted")

    print("superspin smoke test passed")


if __name__ == "__main__":
    main()
