#!/usr/bin/env python3
"""Smoke test for the pyunicusp extension module.

Builds nothing itself: it locates the cdylib produced by
`cargo build -p unicusp-python` (debug or release), exposes it as an
importable module, and checks a handful of known values end to end.
"""

import json
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def import_pyunicusp():
    candidates = [
        ROOT / "target" / "release" / "libpyunicusp.so",
        ROOT / "target" / "debug" / "libpyunicusp.so",
        ROOT / "target" / "release" / "libpyunicusp.dylib",
        ROOT / "target" / "debug" / "libpyunicusp.dylib",
    ]
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit("build the extension first: cargo build -p unicusp-python")
    stage = pathlib.Path(tempfile.mkdtemp(prefix="pyunicusp-"))
    target = stage / "pyunicusp.so"
    shutil.copy2(built, target)
    sys.path.insert(0, str(stage))
    import pyunicusp  # noqa: E402

    return pyunicusp


def main():
    m = import_pyunicusp()

    # Euclidean blocks and their identities
    assert m.euclid_sequence(2, 3) == [2, 1, 1]
    assert m.euclid_sequence(4, 6) == [4, 2, 2]
    ident = m.euclid_identities(4, 6)
    assert ident["sum"] == 8 and ident["sum_sq"] == 24 and ident["ok"]

    # profile arithmetic
    assert m.nu_tilde(3, [2]) == 5
    assert m.nu_emb(3, [2]) == 3
    assert m.genus_zero_check(5, [2, 2, 2, 2, 2, 2])
    blocks = m.staircase_blocks([4, 2, 2, 2, 2])
    assert blocks["blocks"] == [[4, 6]] and blocks["tail_count"] == 2

    # pencil resolution of the cuspidal cubic
    report = m.resolve_pencil(3, [2])
    assert report["m"] == 6
    assert report["full_seq"] == [2, 1, 1, 1, 1, 1]
    assert report["weights"] == [-3, -2, -2, -2, -2, -1]
    assert report["checks"]["degree_one"] and report["checks"]["contracts"]
    dic = m.dicriticals(5, [2, 2, 2, 2, 2, 2])
    assert dic["horizontal"] == [6, 7] and dic["degrees"] == [1, 1]

    # graph calculus
    inv = m.graph_invariants(json.dumps({"chain": [-2, 0, -2]}))
    assert inv["det"] == "4" and inv["i"] == "-4"
    out = m.graph_equiv_empty(json.dumps({"chain": [-2, -1]}))
    assert out["verdict"] == "equivalent"

    # erasability corpus
    assert m.pair_erasability("[-1,-1*]")["verdict"] == "erasable"
    four = m.pair_erasability("[-3,-1*,-1,-2]", depth=4)
    assert four["verdict"] in ("unknown", "not_erasable")

    # exact linear systems on the cuspidal cubic
    cubic = json.dumps(
        {
            "degree": 3,
            "F": [
                {"exp": [0, 2, 1], "coef": "1"},
                {"exp": [3, 0, 0], "coef": "-1"},
            ],
            "param": {"x": {"2": "1"}, "y": {"3": "1"}},
            "truncation": 20,
        }
    )
    assert m.semigroup_window(cubic) == [0, 2, 3, 4, 5, 6, 7, 8, 9]
    assert m.system_dimension(cubic, 3, 9) == 1
    assert m.system_dimension(cubic, 3, 8) == 2
    mult = m.curve_multiplicities(cubic)
    assert mult["minimal"] == [2] and mult["embedded"] == [2, 1, 1]
    probe = m.net_map_degree(cubic, trials=5, seed=7)
    assert probe["modal_count"] == 1 and probe["stable"]

    # catalog and obstruction
    names = [e["name"] for e in m.catalog_entries()]
    assert "line" in names and "cusp-8" in names
    rep = m.obstruction_report(3)
    assert [c["seq"] for c in rep["candidates"]] == [[2, 1, 1, 1, 1, 1]]

    print("pyunicusp smoke test: OK")


if __name__ == "__main__":
    main()
