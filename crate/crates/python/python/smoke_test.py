"""Smoke test for the wgs_ghz extension module."""

import math

import wgs_ghz


def close(a, b, tol=1e-10):
    return abs(a - b) <= tol


def main():
    phi = 0.8 * math.pi

    assert close(wgs_ghz.parse_angle("0.8pi"), phi)
    assert close(wgs_ghz.success_probability(1, math.pi / 2), 0.25)

    records = wgs_ghz.run_protocol(2, "0.8pi")
    assert len(records) == 4
    assert close(sum(r["probability"] for r in records), 1.0)
    success = next(r for r in records if r["success"])
    assert close(success["probability"], wgs_ghz.success_probability(2, phi))
    assert close(success["ghz_fidelity"], 1.0)

    k_plus, k_minus = wgs_ghz.kraus_pair(phi)
    assert len(k_plus) == 4 and len(k_minus[0]) == 4

    bell = [[0.5 if r in (0, 3) and c in (0, 3) else 0.0 for c in range(4)] for r in range(4)]
    assert close(wgs_ghz.concurrence(bell), 1.0)

    noise = wgs_ghz.NoiseSpec("depolarizing", 0.02)
    c, ps = wgs_ghz.noisy_success(phi, phi, noise)
    assert c > 0.9 and 0.0 < ps < 1.0
    assert close(wgs_ghz.reference_concurrence(phi), math.sin(phi / 2))

    result = wgs_ghz.optimize_basis(0.6 * math.pi, -0.6 * math.pi)
    assert close(result["concurrence"], 1.0, 1e-6)
    assert result["branch"] == -1
    assert isinstance(result["basis"], wgs_ghz.MeasurementBasis)

    columns, rows = wgs_ghz.sweep("fig2")
    assert columns == ["phi", "ps", "baseline"] and len(rows) == 101

    csv = wgs_ghz.sweep_csv("preset = fig4a\naxis = phi 0.7pi 0.8pi 2\naxis = p 0 0.05 2\n")
    assert csv.splitlines()[0].startswith("phi,p,concurrence")

    try:
        wgs_ghz.NoiseSpec("depolarizing", 2.0)
    except ValueError:
        pass
    else:
        raise AssertionError("invalid probability accepted")

    assert all(passed for _, passed, _ in wgs_ghz.verify())
    print("smoke test passed")


if __name__ == "__main__":
    main()
