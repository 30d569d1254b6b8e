#include "zeno/experiments.hpp"

#include <atomic>
#include <doctest.h>

using namespace zeno;

namespace {

std::size_t column(const Table& t, const std::string& name) {
    for (std::size_t i = 0; i < t.header.size(); ++i)
        if (t.header[i] == name) return i;
    FAIL("missing column " << name);
    return 0;
}

ExperimentConfig config(const std::vector<std::string>& overrides) { return load_config_text("{}", overrides); }

}  // namespace

TEST_CASE("parallel_for visits every index once and rethrows failures") {
    for (int threads : {1, 3}) {
        std::vector<int> hits(100, 0);
        parallel_for(hits.size(), threads, [&](std::size_t i) { hits[i] += 1; });
        CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
    }
    std::atomic<int> count{0};
    CHECK_THROWS_AS(parallel_for(10, 2,
                                 [&](std::size_t i) {
                                     ++count;
                                     if (i == 4) throw ComputationError("boom");
                                 }),
                    ComputationError);
}

TEST_CASE("spectrum table endpoints and minimum gap") {
    const ExperimentConfig c = config({"spectrum.N=1000", "omega=2"});
    const Table t = spectrum_vs_f(c);
    const std::size_t g = column(t, "gap"), f = column(t, "f");
    CHECK(t.rows.size() == 201);
    CHECK(t.rows.front()[g] == doctest::Approx(2.0));
    CHECK(t.rows.back()[g] == doctest::Approx(2.0));
    double gmin = 1e9, fmin = 0.0;
    for (const auto& r : t.rows)
        if (r[g] < gmin) {
            gmin = r[g];
            fmin = r[f];
        }
    CHECK(fmin == doctest::Approx(0.5));
    CHECK(gmin == doctest::Approx(2.0 / std::sqrt(1000.0)).epsilon(1e-12));

    const Table tt = spectrum_vs_t(c);
    CHECK(tt.rows.size() == 201);
    CHECK(tt.rows.front()[column(tt, "f")] == 1.0);
    CHECK(tt.rows.back()[column(tt, "f")] == 0.0);
}

TEST_CASE("time spent near the crossing: constant vs adaptive speed") {
    const double N = 1024.0, thr = 2.0 / std::sqrt(N);
    const Schedule adaptive = schedule_adaptive(N, 1.0, 0.1);
    const Schedule constant = schedule_constant(N, 1.0, adaptive.T);
    // below 2/sqrt(N) means |1 - 2f| < ~sqrt(3/N): a 1/sqrt(N) sliver at constant speed,
    // and atan(sqrt 3) / (pi/2) = 2/3 of the run on the adaptive schedule
    CHECK(gap_time_fraction(constant, thr) < 0.1);
    CHECK(gap_time_fraction(adaptive, thr) == doctest::Approx(2.0 / 3.0).epsilon(0.02));
}

TEST_CASE("schedule table columns") {
    const Schedule s = schedule_adaptive(64.0, 1.0, 0.1);
    const Table t = schedule_table(s, 11);
    CHECK(t.header == std::vector<std::string>{"t", "f", "fdot", "gap"});
    CHECK(t.rows.size() == 11);
    CHECK(t.rows.back()[0] == doctest::Approx(s.T));
}

TEST_CASE("closed adaptive run succeeds in the subspace and the full space") {
    ExperimentConfig c = config({"n=4", "schedule.eps=0.1"});
    const Schedule s = make_schedule(c, c.problem.N());
    CHECK(closed_subspace_success(c.problem.N(), 1.0, s, magnus_steps(s.T, 1.0)) > 0.99);

    const GroverRun sub = grover_open_run(c, c.problem, s, 0.0, false);
    CHECK(sub.success > 0.99);
    c.evolve.subspace = false;
    const GroverRun full = grover_open_run(c, c.problem, s, 0.0, false);
    CHECK(full.success == doctest::Approx(sub.success).epsilon(1e-5));
}

TEST_CASE("measured run: subspace and full space agree, success drops") {
    ExperimentConfig c = config({"n=4", "marked=5", "schedule.eps=0.1"});
    const Schedule s = make_schedule(c, c.problem.N());
    const GroverRun sub = grover_open_run(c, c.problem, s, 0.5, false);
    c.evolve.subspace = false;
    const GroverRun full = grover_open_run(c, c.problem, s, 0.5, false);
    CHECK(full.success == doctest::Approx(sub.success).epsilon(1e-5));
    CHECK(full.p_w == doctest::Approx(sub.p_w).epsilon(1e-5));
    CHECK(sub.success < 0.9);
    CHECK(sub.p_w + sub.p_wperp == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(sub.lz_purity < 1.0);
}

TEST_CASE("Zeno sweep ordering and bookkeeping") {
    const ExperimentConfig c = config({"sweep.n=[3,2]", "sweep.gamma=[1.0,0.0]", "sweep.eps=[0.2]"});
    const auto pts = zeno_sweep(c, 2);
    REQUIRE(pts.size() == 4);
    CHECK(pts[0].n == 2);
    CHECK(pts[0].gamma == 0.0);
    CHECK(pts[3].n == 3);
    CHECK(pts[3].gamma == 1.0);
    for (const auto& z : pts) {
        CHECK(z.error.empty());
        CHECK(std::isnan(z.success_with_s));
    }
    CHECK(pts[0].success > pts[1].success);
}

TEST_CASE("mixing time grows with N and shrinks as the rate doubles") {
    const double a = mixing_time(64.0, 1.0, 10.0, 0.05);
    const double b = mixing_time(256.0, 1.0, 10.0, 0.05);
    CHECK(a > 0.0);
    CHECK(b / a == doctest::Approx(4.0).epsilon(0.05));
    CHECK(mixing_time(256.0, 1.0, 20.0, 0.05) / b == doctest::Approx(2.0).epsilon(0.05));
    CHECK_THROWS_AS(mixing_time(64.0, 1.0, 0.0, 0.05), InvalidArgument);
}

TEST_CASE("constant-speed run time reaches the target") {
    const double T = constant_speed_runtime(64.0, 1.0, 0.9);
    const Schedule s = schedule_constant(64.0, 1.0, T);
    CHECK(closed_subspace_success(64.0, 1.0, s, magnus_steps(T, 1.0)) >= 0.9 - 1e-6);
    CHECK(T > std::sqrt(64.0));
}

TEST_CASE("Bloch sweep parameters and table") {
    const BlochParams p = bloch_params_for(BlochVariant::two_projectors, 1.0, 3.0);
    CHECK(p.gamma1 == 3.0);
    CHECK(p.gamma2 == 3.0);
    CHECK(bloch_params_for(BlochVariant::relaxation, 1.0, 3.0).sigma == 3.0);
    const Table t = bloch_sweep(config({"bloch.points=5"}));
    CHECK(t.rows.size() == 5);
    CHECK(t.rows.front()[0] == doctest::Approx(1e-2));
    CHECK(t.rows.back()[0] == doctest::Approx(1e3));
}

TEST_CASE("extra |s><s| channel: lowers success at weak rates, reverses at strong rates") {
    const ExperimentConfig c = config({"n=8", "schedule.eps=0.1"});
    const Schedule s = make_schedule(c, c.problem.N());
    for (double g : {0.1, 0.5}) {
        const double w = grover_open_run(c, c.problem, s, g, false).success;
        const double ws = grover_open_run(c, c.problem, s, g, true).success;
        CHECK(ws <= w);
    }
    // two non-commuting strong measurements push the crossing subspace toward 1/2
    const double w = grover_open_run(c, c.problem, s, 3.0, false).success;
    const double ws = grover_open_run(c, c.problem, s, 3.0, true).success;
    CHECK(ws > w);
    CHECK(ws == doctest::Approx(0.5).epsilon(0.05));
}
