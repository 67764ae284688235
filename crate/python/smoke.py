"""Smoke test for the splitrolle extension module.

Build and install it first:

    pip install --no-build-isolation -e crates/py
    python python/smoke.py
"""

import json
from fractions import Fraction

import splitrolle
from splitrolle import Poly


def main():
    f = Poly("x^2 - 2")
    assert str(f) == "x^2 - 2"
    assert f.degree == 2
    assert f.coeffs() == [Fraction(-2), Fraction(0), Fraction(1)]
    assert Poly.from_coeffs([-2, 0, 1]) == f
    assert Poly.parse_coeffs("-2,0,1") == f
    assert f.eval(Fraction(3, 2)) == Fraction(1, 4)

    g = Poly("x^3 - 2*x")
    q, r = g.divrem(f)
    assert (str(q), str(r)) == ("x", "0")
    assert str(g.gcd(f)) == "x^2 - 2"
    assert str(f * f - f**2) == "0"

    info = splitrolle.classify_roots(Poly("x^2*(x^2 - 2)"))
    assert info["rational_roots"] == [(Fraction(0), 2)]
    assert len(info["irrational_real"]) == 2
    assert info["totally_real"] and info["irrational_simple"]

    w = splitrolle.construct_witness(f)
    assert w.nodes == [Fraction(-2), Fraction(0), Fraction(2)]
    assert w.exponents == [1, 2, 1]
    assert w.power == 1 and w.degree == 4
    assert w.verify()["valid"]
    doc = w.to_json()
    assert json.loads(doc)["kind"] == "rolle-witness"
    assert splitrolle.verify_document(doc)["valid"]

    try:
        splitrolle.construct_witness(Poly("x^2 + 1"))
    except splitrolle.RefusedError:
        pass
    else:
        raise AssertionError("x^2 + 1 must be refused")

    b = splitrolle.construct_belyi([0, 1, "2"])
    assert b.exponents == [1, -2, 1]
    assert b.constant == 2 and b.degree == 2
    assert b.verify()["valid"]
    assert splitrolle.verify_document(b.to_json())["valid"]

    assert splitrolle.simplest_rational_between(Fraction(1, 3), Fraction(1, 2)) == Fraction(2, 5)
    print("smoke ok")


if __name__ == "__main__":
    main()
