#!/usr/bin/env python3
"""Smoke test for the qmock_py extension module.

Locates the built cdylib under target/, copies it next to a temporary
directory under the importable name, and exercises the bindings.
Run `cargo build -p qmock-py` first, then `python3 python/smoke_test.py`.
"""

import shutil
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def locate_extension():
    candidates = []
    for profile in ("debug", "release"):
        for stem in ("libqmock_py.so", "qmock_py.dll", "libqmock_py.dylib"):
            p = ROOT / "target" / profile / stem
            if p.exists():
                candidates.append(p)
    if not candidates:
        sys.exit("extension not found; run `cargo build -p qmock-py` first")
    return max(candidates, key=lambda p: p.stat().st_mtime)


def main():
    src = locate_extension()
    tmp = Path(tempfile.mkdtemp(prefix="qmock_py_"))
    suffix = ".pyd" if src.suffix == ".dll" else ".so"
    shutil.copy2(src, tmp / f"qmock_py{suffix}")
    sys.path.insert(0, str(tmp))
    import qmock_py as qm

    assert qm.DEFAULT_ORDER == 200

    # Cesaro-summed mu starts 1/2 + q + ...
    mu = qm.mock_series("mu", 10)
    assert Fraction(mu.coeff(0)) == Fraction(1, 2), mu.coeff(0)
    assert Fraction(mu.coeff(1)) == 1, mu.coeff(1)

    # series arithmetic round-trips exactly
    phi = qm.mock_series("phi", 30)
    prod = phi.mul(phi.invert())
    assert prod.equal_to(qm.Series.one(prod.order), prod.order)
    assert phi.compose_power(2).min_exp == 0

    # explicit construction and coefficient access
    s = qm.Series(["1", "-1/2", "0"], order=4, min_exp=1)
    assert s.coeffs() == [(1, "1"), (2, "-1/2")]  # zero coefficients are skipped
    assert s.coeff(3) == "0"

    # the catalog is complete and verification passes
    cat = qm.list_identities()
    assert len(cat) == 30
    assert cat[0]["id"] == "ram-eq1"

    for report in qm.verify("ram-eq1", 50):
        assert report["status"] == "pass", report

    reports = qm.verify("trans1", 25, {"a": "2", "x": "q"})
    assert len(reports) == 1 and reports[0]["status"] == "pass", reports

    lhs, rhs = qm.identity_sides("lorenz", 20)
    assert lhs.equal_to(rhs, 20)

    all_reports = qm.verify_all(8)
    assert len(all_reports) >= 60
    assert all(r["status"] == "pass" for r in all_reports)

    # error paths surface as Python exceptions or error reports
    try:
        qm.mock_series("nope", 5)
    except ValueError:
        pass
    else:
        raise AssertionError("unknown series must raise")

    bad = qm.verify("heine1", 10, {"a": "2", "b": "1", "c": "5", "t": "1/7"})
    assert bad[0]["status"] == "error", bad

    print(f"smoke test passed ({len(all_reports)} catalog reports verified)")


if __name__ == "__main__":
    main()
