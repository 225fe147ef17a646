"""Smoke test for the Python bindings: exercise each exported operation once
against facts already pinned by the C++ suite."""

import sys

import pcdeg


def check(cond, label):
    if not cond:
        print("FAIL:", label)
        sys.exit(1)
    print("ok:", label)


def main():
    t4 = pcdeg.builtin_table(4)
    check(t4.n == 4, "builtin_table(4).n")
    check(t4.required_moduli() == (12, 2, 2), "n=4 block moduli")

    doc = t4.to_json()
    check(pcdeg.load_table(doc) == t4, "table JSON round-trip")

    x = pcdeg.complex_from_json(
        {"n": 4, "rank": 1, "first_low": [[1]], "first_high": [[1]], "second": []}
    )
    y = pcdeg.product_sum(t4, 1)
    check(x.rank == 1 and y.rank == 1, "complex constructors")
    check(pcdeg.complex_from_json(x.to_json()) == x, "complex JSON round-trip")

    v = pcdeg.check_degree(x, x, 5)
    check(v["status"] == "witness", "degree 5 self-map exists")
    check(pcdeg.verify_witness(x, x, 5, v["witness"]), "witness verifies")

    v2 = pcdeg.check_degree(x, x, 2)
    check(v2["status"] == "no_solution_proven", "degree 2 self-map ruled out")

    r = pcdeg.degree_set(x, x, 6)
    check(r["exact"], "degree sweep is exact")
    check(r["members"] == [-5, -4, -3, -1, 0, 1, 3, 4, 5], "members for |d| <= 6")
    check(r["progressions"]["modulus"] == 4, "progression modulus")

    eq, w = pcdeg.is_equivalent(y, y)
    check(eq and w is not None, "product_sum self-equivalent")
    check(pcdeg.det_star(pcdeg.compose_witness(w, w)) == 1, "composition determinant")

    cls = pcdeg.classify(pcdeg.builtin_table(6), 1)
    check(cls["class_count"] == 1, "n=6 rank-1 family is one class")

    family = pcdeg.enumerate_complexes(pcdeg.builtin_table(7), 1)
    check(len(family) == 2, "n=7 rank-1 family size")
    check(family[1] == pcdeg.z_complex(1), "z_complex sits at index 1")

    s = pcdeg.connected_sum(y, y)
    check(s.rank == 2, "connected sum adds ranks")

    try:
        pcdeg.check_degree(x, y, "bad")
        check(False, "type errors propagate")
    except TypeError:
        check(True, "type errors propagate")

    print("smoke: all checks passed")


if __name__ == "__main__":
    main()
