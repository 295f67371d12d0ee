"""Smoke test for the compiled module; run with the built library on PYTHONPATH."""

import edpaths

K4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def main():
    inst = edpaths.Instance(4, K4, (0, 1, 2, 3), "le 2", "le 2")
    assert (inst.n, inst.m, inst.case) == (4, 6, "short-short"), inst
    assert edpaths.Instance.parse(inst.to_text()).to_text() == inst.to_text()

    result = edpaths.solve(inst, seed=7)
    assert result.status == "yes" and result
    p1, p2 = result.paths
    assert edpaths.verify(inst, p1, p2) == []
    assert edpaths.verify(inst, [0, 1], [2, 1, 0, 3]) != []

    universal = edpaths.solve(inst, mode="universal")
    assert universal.status == "yes"

    blocked = edpaths.Instance(3, [(0, 1), (1, 2)], (0, 2, 0, 2), "le 2", "le 2")
    assert edpaths.solve(blocked).status == "no"
    assert edpaths.oracle(blocked) is None

    open_case = edpaths.Instance(4, K4, (0, 1, 2, 3), "ge 2", "ge 2")
    assert edpaths.solve(open_case).status == "unsupported"
    assert edpaths.oracle(open_case) is not None

    planted, certificate = edpaths.planted_instance("short-long", 2, 3, extra_n=4, extra_m=6, seed=1)
    assert edpaths.verify(planted, *certificate) == []
    assert edpaths.solve(planted).status == "yes"

    gadget = edpaths.exact_path_instance(5, [(0, 1), (1, 2), (2, 3), (3, 4)], 0, 4, 4)
    assert (gadget.n, gadget.m) == (7, 5)
    assert edpaths.oracle(gadget) is not None
    assert edpaths.oracle(edpaths.exact_path_instance(5, [(0, 1), (1, 2), (2, 3), (3, 4)], 0, 4, 3)) is None

    composed = edpaths.or_compose(blocked, inst.swapped().swapped())
    assert composed.constraints == ("le 6", "le 21"), composed.constraints
    assert edpaths.oracle(composed, max_vertices=100) is not None

    family = edpaths.universal_family(3, 1)
    assert family == ["000", "111"], family
    assert edpaths.parse_paths("YES\n0 1\n2 3\n") == ([0, 1], [2, 3])
    assert edpaths.normalize_constraint("inf") == "inf"

    try:
        edpaths.Instance(2, [(0, 0)], (0, 1, 0, 1), "le 1", "le 1")
    except ValueError:
        pass
    else:
        raise AssertionError("self-loop accepted")
    print("smoke test passed")


if __name__ == "__main__":
    main()
