#!/usr/bin/env python3
"""Smoke test for the doobpc_py extension module.

Builds nothing itself: expects `cargo build -p doobpc-python` to have
produced target/<profile>/libdoobpc_py.so. Copies the library into a
temporary directory under the importable name and exercises every
exposed entry point. Exits nonzero on the first failure.
"""

import shutil
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def locate_library() -> Path:
    candidates = [
        REPO / "target" / profile / name
        for profile in ("debug", "release")
        for name in ("libdoobpc_py.so", "libdoobpc_py.dylib", "doobpc_py.dll")
    ]
    for path in candidates:
        if path.exists():
            return path
    sys.exit("doobpc_py library not found; run `cargo build -p doobpc-python` first")


def check(label: str, got, expected) -> None:
    if got != expected:
        sys.exit(f"FAIL {label}: got {got!r}, expected {expected!r}")
    print(f"PASS {label}")


def main() -> None:
    lib = locate_library()
    with tempfile.TemporaryDirectory() as tmp:
        shutil.copy(lib, Path(tmp) / "doobpc_py.so")
        sys.path.insert(0, tmp)
        import doobpc_py as dp

        ring = dp.Ring(3)
        check("ring delta", ring.delta, 3)
        check("unit count", ring.unit_count, 56)
        check("xi", ring.xi, "010")
        check("xi cubed", ring.xi_pow(3), "132")
        check("xi order", ring.xi_pow(7), "100")
        check("mul", ring.mul("010", "010"), "001")
        check("add", ring.add("132", "010"), "102")
        check("power", ring.power("010", 3), "132")
        check("frobenius fixes Z4", ring.frobenius("300"), "300")
        check("teichmuller of 2", ring.teichmuller_component("200"), "000")
        check("unit test", ring.is_unit("010"), True)
        check("non-unit test", ring.is_unit("200"), False)

        custom = dp.Ring(2, [1, 1, 1])
        check("custom modulus xi order", custom.xi_pow(3), "10")

        base = dp.Matrix.preset("d814")
        check("base shape", base.shape, (8, 1, 4))
        check("base rows", base.rows, 3)
        report = base.verify()
        check("base perfect", report["perfect"], True)
        check("base subgroup", report["subgroup"], 64)
        check("base weight1", report["weight1"], 63)
        check("base cardinality", base.cardinality(), 2**42 // 64)

        zero = "0" * 16 + "|00|0000"
        bumped = "0" * 16 + "|00|3000"
        check("zero syndrome", base.syndrome(zero), "000")
        check("decode identity", base.decode(zero), zero)
        check("decode one error", base.decode(bumped), zero)

        text = base.to_text()
        again = dp.Matrix.from_text(text)
        check("text roundtrip", again.to_text(), text)
        path = Path(tmp) / "base.txt"
        base.to_file(str(path))
        check("file roundtrip", dp.Matrix.from_file(str(path)).to_text(), text)

        qc = dp.Matrix.preset("d707-qc")
        check("qc shape", qc.shape, (7, 0, 7))
        check("qc weight3", qc.weight3(), (7, 0))
        cycles = qc.cyclic_cycles()
        check("qc cycle count", len(cycles), 3)
        check("qc cycle lengths", sorted(len(c) for c in cycles), [7, 7, 7])

        alt = dp.Matrix.preset("d707-alt")
        check("alt perfect", alt.is_perfect(), True)
        try:
            alt.cyclic_cycles()
            sys.exit("FAIL alt cycles: expected ValueError")
        except ValueError:
            print("PASS alt not quasi-cyclic")

        built = dp.Matrix.construct(2, 3, 7)
        check("construct shape", built.shape, (35, 8, 7))
        check("construct perfect", built.is_perfect(), True)
        try:
            dp.Matrix.construct(0, 4, 5)
            sys.exit("FAIL even delta: expected ValueError")
        except ValueError:
            print("PASS even delta rejected")

        check(
            "admissible params",
            dp.admissible_params(0, 3),
            [(7, 0, 7), (8, 1, 4)],
        )
        check(
            "cyclotomic cosets",
            dp.cyclotomic_cosets(7),
            [[1, 2, 4], [3, 5, 6]],
        )
        try:
            dp.cyclotomic_cosets(8)
            sys.exit("FAIL even modulus: expected ValueError")
        except ValueError:
            print("PASS even modulus rejected")

        try:
            dp.Matrix.from_text("DOOBPC 2\n")
            sys.exit("FAIL bad header: expected ValueError")
        except ValueError as e:
            check("bad header position", "line 1, column 1" in str(e), True)

    print("all smoke tests passed")


if __name__ == "__main__":
    main()
