#include <cmath>

#include "doctest.h"
#include "epikit/models.hpp"
#include "epikit/rk4.hpp"
#include "epikit/rng.hpp"

using namespace epikit;

namespace {

const SeirParams kSlowSeir{0.5, 1.0 / 24.0, 1.0 / 14.0, 0.25, 1e4};  // R0 = 7

// final-size root of 1 - z = (s0/n) exp(-r0 z), by bisection
double final_size_root(double r0, double s0_frac) {
    double lo = 1e-12, hi = 1.0 - 1e-15;
    auto fn = [&](double z) { return 1.0 - z - s0_frac * std::exp(-r0 * z); };
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (fn(lo) * fn(mid) <= 0)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("beta_at branches") {
    ControlSchedule none{0.5, 28, 0.125, std::nullopt};
    CHECK(beta_at(none, 10) == doctest::Approx(0.5));
    ControlSchedule early{0.266, 1, 0.00648, std::nullopt};
    CHECK(beta_at(early, 1) == doctest::Approx(0.266));
    CHECK(beta_at(none, 28 + 8 * std::log(2.0)) == doctest::Approx(0.25).epsilon(1e-12));
    ControlSchedule lifted{0.5, 28, 0.125, 60.0};
    CHECK(beta_at(lifted, 59.999) < 0.01l);
    CHECK(beta_at(lifted, 60.0) == doctest::Approx(0.5));
    CHECK(beta_at(lifted, 200.0) == doctest::Approx(0.5));
}

TEST_CASE("beta_at is non-increasing while controls hold") {
    ControlSchedule s{0.7, 10, 0.3, 90.0};
    double prev = beta_at(s, 10.0);
    for (double t = 10.0; t < 90.0; t += 0.37) {
        const double b = beta_at(s, t);
        CHECK(b <= prev + 1e-15);
        prev = b;
    }
}

TEST_CASE("seir_rhs fixed point and direct substitution") {
    CompartmentState quiet{1e4, 0, 0, 0, 0, 0, 0};
    const CompartmentState dq = seir_rhs(quiet, kSlowSeir, 0.5);
    CHECK(dq.s == 0.0);
    CHECK(dq.e == 0.0);
    CHECK(dq.i == 0.0);
    CHECK(dq.r == 0.0);
    CHECK(dq.d == 0.0);
    CHECK(dq.c == 0.0);

    CompartmentState y{1e4 - 10, 0, 10, 0, 0, 0, 0};
    const CompartmentState dy = seir_rhs(y, kSlowSeir, 0.5);
    CHECK(dy.d == doctest::Approx(0.25 * (1.0 / 14.0) * 10).epsilon(1e-14));
    CHECK(dy.r == doctest::Approx(0.75 * (1.0 / 14.0) * 10).epsilon(1e-14));
    // derivative sum of the conserved compartments vanishes to rounding
    CHECK(std::abs(dy.s + dy.e + dy.i + dy.r + dy.d) < 1e-14 * std::abs(dy.s));
}

TEST_CASE("seir trajectory conserves population and grows monotone accumulators") {
    auto rhs = make_rhs(ModelKind::Seir, kSlowSeir);
    CompartmentState init{1e4 - 10, 0, 10, 0, 0, 10, 0};
    const TimeSeries traj = integrate_rk4(rhs, init, 600.0, {0.05, -1, 20});
    REQUIRE(traj.size() > 100);
    double prev_c = -1, prev_d = -1;
    for (const auto& y : traj) {
        CHECK(std::abs(y.total() - 1e4) / 1e4 < 1e-9);
        CHECK(y.c >= prev_c);
        CHECK(y.d >= prev_d);
        prev_c = y.c;
        prev_d = y.d;
    }
    // with c0 = i0 the cumulative count stays equal to I + D + R
    for (const auto& y : traj) CHECK(std::abs(y.c - (y.i + y.d + y.r)) < 1e-6 * 1e4);
    CHECK(kSlowSeir.beta0 / kSlowSeir.gamma == doctest::Approx(7.0).epsilon(1e-13));
}

TEST_CASE("linearized seir limits") {
    const CompartmentState zero{1000, 0, 0, 0, 0, 0, 0};
    const CompartmentState dz = linearized_seir_rhs(zero, kSlowSeir, 0.5);
    CHECK(dz.e == 0.0);
    CHECK(dz.i == 0.0);

    // beta = 0 with E = 0: pure removal of I
    CompartmentState y{1000, 0, 10, 0, 0, 0, 0};
    const CompartmentState dy = linearized_seir_rhs(y, kSlowSeir, 0.0);
    CHECK(dy.i == doctest::Approx(-kSlowSeir.gamma * 10));
    CHECK(dy.e == 0.0);
}

TEST_CASE("linearized seir grows exponentially for the outbreak parameters") {
    auto rhs = make_rhs(ModelKind::SeirLinear, kSlowSeir);
    CompartmentState init{1000, 0, 10, 0, 0, 0, 0};
    Rk4Options opts;
    opts.dt = 0.05;
    opts.negative_floor = std::numeric_limits<double>::infinity();  // F may go negative
    opts.sample_stride = 100;
    const TimeSeries traj = integrate_rk4(rhs, init, 100.0, opts);
    // log-slope over the late segment approximates a single positive rate
    const auto& a = traj[traj.size() - 5];
    const auto& b = traj.back();
    const double slope = (std::log(b.i) - std::log(a.i)) / (b.t - a.t);
    CHECK(slope > 0.05);
    CHECK(slope < 0.15);
}

TEST_CASE("sir final size against the closed relation") {
    SeirParams p{0.5, 1.0, 0.25, 0.0, 1e4};
    auto rhs = make_rhs(ModelKind::Sir, p);
    CompartmentState init{1e4 - 5, 0, 5, 0, 0, 5, 0};
    const TimeSeries traj = integrate_rk4(rhs, init, 400.0, {0.05, -1, 50});
    const double z = final_size_root(0.5 / 0.25, (1e4 - 5) / 1e4);
    const double c_frac = traj.back().c / p.n;
    CHECK(std::abs(c_frac - z) < 1e-3);
    // C = N - S holds along the whole path
    for (const auto& y : traj) CHECK(y.c == doctest::Approx(p.n - y.s).epsilon(1e-9));
}

TEST_CASE("sir rhs limits") {
    SeirParams p{0.5, 1.0, 0.25, 0.0, 1e4};
    CompartmentState none{1e4, 0, 0, 0, 0, 0, 0};
    const CompartmentState dz = sir_rhs(none, p);
    CHECK(dz.s == 0.0);
    CHECK(dz.i == 0.0);

    SeirParams closed{1e-30, 1.0, 0.25, 0.0, 1e4};  // effectively beta = 0
    auto rhs = make_rhs(ModelKind::Sir, closed);
    CompartmentState init{1e4 - 10, 0, 10, 0, 0, 10, 0};
    const TimeSeries traj = integrate_rk4(rhs, init, 14.0, {0.01, -1, 100});
    CHECK(traj.back().i == doctest::Approx(10 * std::exp(-0.25 * 14.0)).epsilon(1e-8));
}

TEST_CASE("quarantine rhs reduces to sir at q=0 and doubles removal at q=1") {
    QuarantineParams q0{0.5, 0.25, 1e4, [](double) { return 0.0; }};
    SeirParams sir_p{0.5, 1.0, 0.25, 0.0, 1e4};
    Rng rng(7);
    for (int trial = 0; trial < 32; ++trial) {
        CompartmentState y{rng.uniform01() * 1e4, 0, rng.uniform01() * 100, rng.uniform01() * 50,
                           0, 0, 0};
        const CompartmentState dq = quarantine_sir_rhs(y, q0);
        const CompartmentState ds = sir_rhs(y, sir_p);
        CHECK(dq.s == doctest::Approx(ds.s));
        CHECK(dq.i == doctest::Approx(ds.i));
        CHECK(dq.r == doctest::Approx(ds.r));
        CHECK(dq.d == 0.0);  // nobody quarantined at q = 0
    }

    QuarantineParams q1{0.5, 0.25, 1e4, [](double) { return 1.0; }};
    CompartmentState y{9000, 0, 100, 0, 0, 0, 0};
    const CompartmentState d1 = quarantine_sir_rhs(y, q1);
    const double infection = 0.5 * 9000 * 100 / 1e4;
    CHECK(d1.i == doctest::Approx(infection - 2.0 * 0.25 * 100));
    CHECK(d1.d == doctest::Approx(0.25 * 100));
}

TEST_CASE("quarantine dynamics collapse onto dimensionless time") {
    // equal beta/gamma and equal q: trajectories agree at matching gamma*t
    auto run = [](double beta, double gamma, double dt, double t_end) {
        QuarantineParams qp{beta, gamma, 1e4, [](double) { return 0.3; }};
        SeirParams p{beta, 1.0, gamma, 0.0, 1e4};
        auto rhs = make_rhs(ModelKind::SirQuarantine, p, std::nullopt, qp);
        CompartmentState init{1e4 - 20, 0, 20, 0, 0, 20, 0};
        return integrate_rk4(rhs, init, t_end, {dt, -1, 1});
    };
    const TimeSeries slow = run(0.5, 0.25, 0.02, 40.0);
    const TimeSeries fast = run(1.0, 0.5, 0.01, 20.0);
    REQUIRE(slow.size() == fast.size());
    for (std::size_t k = 0; k < slow.size(); ++k) {
        CHECK(slow[k].s == doctest::Approx(fast[k].s).epsilon(1e-11));
        CHECK(slow[k].i == doctest::Approx(fast[k].i).epsilon(1e-11));
        CHECK(slow[k].d == doctest::Approx(fast[k].d).epsilon(1e-11));
    }
}

TEST_CASE("integrate_rk4 basics") {
    auto zero_rhs = [](const CompartmentState&) { return CompartmentState{0, 0, 0, 0, 0, 0, 1}; };
    CompartmentState init{5, 4, 3, 2, 1, 0, 0};
    const TimeSeries constant = integrate_rk4(zero_rhs, init, 1.0, {0.1});
    for (const auto& y : constant) {
        CHECK(y.s == 5.0);
        CHECK(y.d == 1.0);
    }
    CHECK(constant.back().t == doctest::Approx(1.0));

    // stops at the largest multiple of dt below t_end
    const TimeSeries clipped = integrate_rk4(zero_rhs, init, 1.03, {0.1});
    CHECK(clipped.back().t == doctest::Approx(1.0));

    const double gamma = 1.0 / 14.0;
    auto decay = [gamma](const CompartmentState& y) {
        CompartmentState d;
        d.i = -gamma * y.i;
        d.t = 1;
        return d;
    };
    CompartmentState i0{0, 0, 1, 0, 0, 0, 0};
    const TimeSeries exp_traj = integrate_rk4(decay, i0, 14.0, {0.1});
    CHECK(exp_traj.back().i == doctest::Approx(std::exp(-1.0)).epsilon(1e-8));
}

TEST_CASE("integrate_rk4 halving dt gains a factor near sixteen") {
    auto rhs = make_rhs(ModelKind::Seir, kSlowSeir);
    CompartmentState init{1e4 - 10, 0, 10, 0, 0, 10, 0};
    const double t_end = 40.0;
    auto final_i = [&](double dt) {
        return integrate_rk4(rhs, init, t_end, {dt, -1, 1 << 20}).back().i;
    };
    const double reference = final_i(0.003125);
    const double err_coarse = std::abs(final_i(0.8) - reference);
    const double err_half = std::abs(final_i(0.4) - reference);
    const double err_quarter = std::abs(final_i(0.2) - reference);
    const double order1 = std::log2(err_coarse / err_half);
    const double order2 = std::log2(err_half / err_quarter);
    CHECK(order1 > 3.7);
    CHECK(order1 < 4.3);
    CHECK(order2 > 3.7);
    CHECK(order2 < 4.3);
}

TEST_CASE("integrate_rk4 error paths") {
    auto blowup = [](const CompartmentState& y) {
        CompartmentState d;
        d.i = y.i * y.i;
        d.t = 1;
        return d;
    };
    CompartmentState init{0, 0, 1.0, 0, 0, 0, 0};
    CHECK_THROWS_AS(integrate_rk4(blowup, init, 2.0, {0.01}), NonFiniteError);

    auto drain = [](const CompartmentState&) {
        CompartmentState d;
        d.s = -1.0;
        d.t = 1;
        return d;
    };
    CompartmentState half{0.5, 0, 0, 0, 0, 0, 0};
    CHECK_THROWS_AS(integrate_rk4(drain, half, 2.0, {0.01}), NegativeStateError);
}

TEST_CASE("derived_stats reproduces the hemorrhagic-fever scenario numbers") {
    SeirParams p{0.266, 0.0720, 0.0533, 0.396, 1e6 + 1};
    ControlSchedule ctrl{0.266, 1, 0.00648, std::nullopt};
    const DerivedStats stats = derived_stats(p, ctrl);
    CHECK(stats.r0 == doctest::Approx(4.99).epsilon(0.01 / 4.99));
    CHECK(stats.half_life_infectious == doctest::Approx(13.0).epsilon(0.05 / 13.0));
    CHECK(stats.half_life_transmission == doctest::Approx(2.61).epsilon(0.01 / 2.61));
    CHECK(stats.control_response_time == doctest::Approx(107.0).epsilon(0.5 / 107.0));
    // ln2 / 0.0720; the quoted 6.72 days is arithmetically inconsistent
    CHECK(stats.half_life_incubation == doctest::Approx(9.627).epsilon(1e-3));
    CHECK(stats.i0_incub == doctest::Approx(0.0720 / 0.0533).epsilon(1e-12));

    ControlSchedule no_decay{0.266, 1, 0.0, std::nullopt};
    CHECK(std::isinf(derived_stats(p, no_decay).control_response_time));
}

TEST_CASE("r_eff starts at r0 and crossing comes long after control onset") {
    SeirParams p{0.266, 0.0720, 0.0533, 0.396, 1e6 + 1};
    ControlSchedule ctrl{0.266, 1, 0.00648, std::nullopt};
    auto rhs = make_rhs(ModelKind::Seir, p, ctrl);
    CompartmentState init{1e6, 0, 1, 0, 0, 1, 0};
    const TimeSeries traj = integrate_rk4(rhs, init, 400.0, {0.05, -1, 20});
    const ReffSeries reff = r_eff_series(traj, p, ctrl);
    CHECK(reff.points.front().value == doctest::Approx(p.beta0 / p.gamma).epsilon(1e-5));
    REQUIRE(reff.unity_crossing.has_value());
    CHECK(*reff.unity_crossing - ctrl.t0 > 200.0);

    // without controls and S ~ N the series stays flat at r0
    ControlSchedule flat{0.266, 0, 0.0, std::nullopt};
    const ReffSeries fixed = r_eff_series({traj.front()}, p, flat);
    CHECK(fixed.points[0].value == doctest::Approx(p.beta0 / p.gamma).epsilon(1e-5));
}
