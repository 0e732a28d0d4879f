"""Smoke test for the tldp extension module.

Build first with `cargo build -p toric-cascade-py --release` (or `maturin develop`
inside crates/py); without an installed module this script loads the shared
library straight from target/.
"""

import importlib.machinery
import importlib.util
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load_tldp():
    try:
        import tldp

        return tldp
    except ImportError:
        pass
    for profile in ("release", "debug"):
        lib = ROOT / "target" / profile / "libtldp.so"
        if lib.exists():
            loader = importlib.machinery.ExtensionFileLoader("tldp", str(lib))
            spec = importlib.util.spec_from_loader("tldp", loader)
            module = importlib.util.module_from_spec(spec)
            loader.exec_module(module)
            sys.modules["tldp"] = module
            return module
    sys.exit("tldp is not built: run `cargo build -p toric-cascade-py` first")


def main():
    tldp = load_tldp()

    assert tldp.hj_eval([2, 2]) == "3/2"
    assert tldp.hj_expand(5, 2) == [3, 2]
    m = [3, 2]
    glued = tldp.zero_complement(m) + [1] + m
    assert tldp.hj_eval(glued) in ("0", "0/1"), glued

    t = tldp.FanoTriangle([[-2, 1], [1, -2], [1, 1]])
    assert sorted(t.cycle().weights) == sorted([-1, -2, -2] * 3)
    inv = t.invariants()
    assert inv["k2"] == "3/1" and inv["brauer_order"] == 3, inv
    assert inv["basic"] == {"type": "3A2", "n": None}
    weights, quotient = t.wps()
    assert list(weights) == [1, 1, 1] and quotient == 3

    p113 = tldp.FanoTriangle.parse("[[0,1],[-1,0],[1,-3]]")
    assert p113.invariants()["k2"] == "25/3"
    assert p113.canonical() == p113.canonical().canonical()

    c = tldp.WeightedCycle([0, -3, 0, 3])
    assert c.is_valid() and c.singular_chains() == [[3]]
    assert sorted(c.realize().wps()[0]) == [1, 1, 3]
    assert c.cascade()["basic"] == {"type": "std0", "n": 3}

    result = tldp.classify("3/2,2/1")
    assert result["exists"] and result["literal_step4"] is False
    assert result["solutions"][0]["name"] == "P(1,2,3)"
    assert not tldp.classify([[3], [2]])["exists"]

    cycle, triangle, order = tldp.brauer_family(4)
    assert order == 7 and len(cycle.singular_chains()) == 3

    records = tldp.enumerate(3)
    assert len(records) == 75
    assert sum(r["gorenstein_index"] == 1 for r in records) == 5
    report = tldp.audit(3)
    assert all(check["violations"] == 0 for check in report["checks"]), report

    try:
        tldp.FanoTriangle([[1, 0], [0, 1], [1, 1]])
    except tldp.TldpError as e:
        assert isinstance(e, ValueError)
    else:
        raise AssertionError("invalid triangle accepted")

    print("python smoke test ok")


if __name__ == "__main__":
    main()
