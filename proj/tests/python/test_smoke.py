"""Smoke tests for the python bindings: a few known values per operation."""

import math

import epikit


def approx(a, b, rel=1e-9):
    return abs(a - b) <= rel * max(1.0, abs(b))


def test_derived_stats():
    stats = epikit.derived_stats(
        {"beta0": 0.266, "sigma": 0.0720, "gamma": 0.0533, "f": 0.396, "n": 1000001},
        {"t0": 1, "alpha": 0.00648},
    )
    assert approx(stats["r0"], 4.99, 2e-3)
    assert approx(stats["half_life_infectious"], 13.0, 4e-3)
    assert approx(stats["control_response_time"], 107.0, 5e-3)


def test_simulate_conserves_population():
    traj = epikit.simulate(
        "seir",
        {"beta0": 0.5, "sigma": 1 / 24, "gamma": 1 / 14, "f": 0.25, "n": 1e4},
        {"s": 9990, "i": 10},
        t_end=100,
        sample_every=5,
    )
    for k in range(len(traj["t"])):
        total = traj["s"][k] + traj["e"][k] + traj["i"][k] + traj["r"][k] + traj["d"][k]
        assert abs(total - 1e4) / 1e4 < 1e-9
    assert traj["c"][-1] > traj["c"][0]


def test_preset_and_beta_schedule():
    traj = epikit.simulate_preset("fig5e", t_end=80, sample_every=10)
    assert len(traj["t"]) >= 8
    controlled = epikit.beta_at({"t0": 28, "alpha": 0.125}, 0.5, 28 + 8 * math.log(2))
    assert approx(controlled, 0.25, 1e-12)


def test_linear_seir_matches_initial_data():
    out = epikit.linear_seir_eval(
        {"beta0": 0.5, "sigma": 1 / 24, "gamma": 1 / 14, "f": 0.25, "n": 1e4},
        0.0,
        10.0,
        1000.0,
        [0.0, 10.0, 50.0],
    )
    assert approx(out["e"][0], 0.0, 1e-9)
    assert approx(out["i"][0], 10.0, 1e-9)
    assert out["i"][2] > out["i"][1] > out["i"][0]
    assert approx(out["f"][0], 1000.0)


def test_steady_states_and_dispersion():
    params = {"lambda": 0.5, "mu": 0.25, "nu": 0.01, "f": 0.01, "d_s": 10.0, "d_i": 2.0}
    red, blue = epikit.steady_states(params)
    assert approx(blue["phi_s"], 0.5)
    assert approx(blue["phi_i"], 0.02)
    d = epikit.dispersion(params, "blue", 0.1)
    # the roots solve the quadratic: sum = -iB, product = -C
    s = d["omega_plus"] + d["omega_minus"]
    p = d["omega_plus"] * d["omega_minus"]
    assert abs(s - complex(0, -d["b_k"])) < 1e-12
    assert abs(p - complex(-d["c_k"], 0)) < 1e-12


def test_turing_line():
    params = {"lambda": 1.0, "mu": 1.1, "nu": 1.0, "f": 1.0, "d_s": 10.0, "d_i": 1.0}
    t = epikit.turing_analysis(params, "red")
    assert t["on_line"]
    assert approx(t["k_c"], 0.05, 1e-12)
    assert abs(t["c_at_vertex"]) < 1e-9


def test_gillespie_determinism():
    a = epikit.gillespie_run(0.5, 0.25, 1000, 10, 0.0, 10.0, 42, [2.0, 5.0, 10.0])
    b = epikit.gillespie_run(0.5, 0.25, 1000, 10, 0.0, 10.0, 42, [2.0, 5.0, 10.0])
    assert a["samples"] == b["samples"]
    assert a["events"] == b["events"]


def test_fermi_dirac():
    assert approx(epikit.fermi_dirac_eval(14.309, 16.887, 0.0599, 1e6), math.exp(14.309))
    assert approx(epikit.fermi_dirac_eval(10.0, 50.0, 0.08, 50.0), math.exp(5.0))


def test_moving_average_constant():
    values = [4.5] * 20
    out = epikit.moving_average(values, 7)
    assert all(approx(v, 4.5, 1e-12) for v in out)
    diffs = epikit.daily_new([10.0, 15.0, 15.0])
    assert diffs == [5.0, 0.0]


def test_fit_sir_recovery():
    truth = [0.5, 0.25]
    base = epikit.simulate(
        "sir",
        {"beta0": truth[0], "gamma": truth[1], "n": 1e4},
        {"s": 9995, "i": 5, "c": 5},
        t_end=60,
        dt=0.05,
        sample_every=1.0,
    )
    times = [t for t in base["t"] if t >= 1.0]
    data = [base["i"][k] for k, t in enumerate(base["t"]) if t >= 1.0]
    res = epikit.fit_sir(times, data, 1e4, 5.0, [0.45, 0.28])
    assert res["status"] == "converged"
    assert approx(res["p"][0], truth[0], 1e-3)
    assert approx(res["p"][1], truth[1], 1e-3)


def main():
    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
                print(f"[PASS] {name}")
            except AssertionError as exc:
                print(f"[FAIL] {name}: {exc}")
                failures += 1
    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()
