#!/usr/bin/env python3
"""Smoke test for the hirano_py extension module.

Build and run with:

    cargo build -p hirano-py
    python3 python/smoke_test.py

The script locates the cdylib in target/, loads it under the module name
`hirano_py`, and exercises the main entry points end to end.
"""

import importlib.util
import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load_module():
    candidates = [
        ROOT / "target" / profile / name
        for profile in ("debug", "release")
        for name in ("libhirano_py.so", "hirano_py.so", "libhirano_py.dylib")
    ]
    for lib in candidates:
        if lib.exists():
            spec = importlib.util.spec_from_file_location("hirano_py", lib)
            mod = importlib.util.module_from_spec(spec)
            spec.loader.exec_module(mod)
            return mod
    sys.exit("extension not found; run `cargo build -p hirano-py` first")


def main():
    hp = load_module()
    checks = 0

    def check(cond, label):
        nonlocal checks
        assert cond, label
        checks += 1
        print(f"ok: {label}")

    # --- exact matrix arithmetic ------------------------------------------
    m = hp.Matrix([[1, "1/2"], [0, 1]])
    check(m.entries() == [["1", "1/2"], ["0", "1"]], "entries round-trip")
    check((m @ m).entries()[0][1] == "1", "exact product 1/2 + 1/2 = 1")
    check(m.rank() == 2 and m.det() == "1", "rank and determinant")
    check(m.inverse().entries()[0][1] == "-1/2", "exact inverse")
    check(hp.Matrix.from_json(m.to_json()) == m, "JSON round-trip")

    # --- class membership and inverses ------------------------------------
    unipotent = hp.Matrix([[1, 1], [0, 1]])
    check(hp.is_hirano_invertible(unipotent) == 2, "unipotent is Hirano")
    check(hp.eigencheck_hirano(unipotent), "spectrum inside {0, 1, -1}")
    cert = hp.hirano_inverse(unipotent)
    check(cert.inverse.entries() == [["1", "-1"], ["0", "1"]],
          "Hirano inverse of a unipotent matrix is its inverse")
    check(cert.structured_part.power(3) == cert.structured_part,
          "certificate part is tripotent")
    check((cert.structured_part + cert.nilpart) == unipotent,
          "certificate parts sum back")

    scaled = hp.Matrix([[2, 0], [0, 0]])
    check(hp.is_hirano_invertible(scaled) is None, "2 breaks the spectrum test")
    dz = hp.drazin_inverse(scaled)
    check(dz.inverse.entries() == [["1/2", "0"], ["0", "0"]] and dz.index == 1,
          "Drazin inverse of diag(2, 0)")
    check((dz.core_projection + dz.spectral_complement) == hp.Matrix.identity(2),
          "spectral projections are complementary")

    # --- splittings --------------------------------------------------------
    pair = hp.jordan_chevalley(hp.Matrix([[2, 1], [0, 2]]))
    check(pair.structured_part.entries() == [["2", "0"], ["0", "2"]],
          "Jordan-Chevalley semisimple part")
    check(pair.nil_exponent == 2, "nilpotent part exponent")

    # --- product transfer --------------------------------------------------
    a = hp.Matrix([[1, 2], [0, 1]])
    b = hp.Matrix([[1, 0], [1, 0]])
    z_ba = hp.drazin_inverse(b @ a).inverse
    check(hp.cline_transfer(a, b, z_ba) == hp.drazin_inverse(a @ b).inverse,
          "Drazin inverse transfers across the product swap")

    # --- theorem checking --------------------------------------------------
    check(len(hp.theorem_ids()) == 18, "all statement ids exposed")
    blocks = json.dumps({
        "A": [["1", "0"], ["2", "1"]],
        "B": [["1", "-1"], ["-1", "1"]],
        "C": [["0", "1"], ["0", "1"]],
        "D": [["1", "0"], ["1", "0"]],
    })
    report = json.loads(hp.check_theorem("C3_5", blocks))
    check(report["verdict"] == "Verified", "block instance verifies")
    check(all(h["holds"] for h in report["hypotheses"]), "hypotheses all hold")
    check(report["witness"] is not None, "witness split present")

    # --- fuzzing -----------------------------------------------------------
    summary = json.loads(hp.fuzz_sweep("T2_7", trials=20, size=2, seed=9))
    check(summary["verified"] == 20 and summary["conclusion_fail"] == 0,
          "seeded sweep all verified")
    probe = json.loads(hp.necessity_probe("T2_7", "D^piCA",
                                          trials=40, size=2, seed=9))
    check(probe["counterexample_found"], "dropped hypothesis yields a failure")

    # --- error mapping -----------------------------------------------------
    for bad in (lambda: hp.Matrix([["1.5"]]),
                lambda: hp.hirano_inverse(scaled),
                lambda: hp.check_theorem("T9_9", blocks)):
        try:
            bad()
        except ValueError:
            checks += 1
        else:
            sys.exit("expected ValueError")
    print("ok: errors map to ValueError")

    print(f"smoke test passed ({checks} checks)")


if __name__ == "__main__":
    main()
