#include "zeno/bloch.hpp"
#include "zeno/dynamics.hpp"

#include <doctest.h>

using namespace zeno;

TEST_CASE("operator history keeps a sliding window") {
    OperatorHistory h({Matrix(pauli(Axis::z))}, 0.1);
    for (int k = 0; k < 10; ++k) h.push(Matrix::Identity(2, 2));
    CHECK(h.size() == 10);
    CHECK(h.time(4) == doctest::Approx(0.4));
    h.trim_before(6);
    CHECK(h.first_index() == 6);
    CHECK(h.size() == 10);
    CHECK((h.at(7).front() - Matrix(pauli(Axis::z))).norm() == 0.0);
}

TEST_CASE("memory integral of a static operator is the truncated correlation integral") {
    BathModel b;
    b.gamma0 = 1.0;
    b.tau_env = 0.05;
    const double dt = 0.002;
    OperatorHistory h({Matrix(pauli(Axis::z))}, dt);
    for (int k = 0; k <= 400; ++k) h.push(Matrix::Identity(2, 2));
    const std::vector<Matrix> Y = redfield_memory(400, h, b, 8.0 * b.tau_env);
    const double expect = 0.5 * b.gamma0 * (1.0 - std::exp(-8.0));
    CHECK(std::abs(Y.front()(0, 0) - expect) < 1e-4);
    CHECK(std::abs(Y.front()(1, 1) + expect) < 1e-4);
}

TEST_CASE("short-memory rate") {
    BathModel b;
    b.gamma0 = 2.0;
    b.tau_env = 0.1;
    b.omega_env = 3.0;
    const ShortMemoryRate r = redfield_short_memory_rate(b, 0.5, 2.0, 3);
    const cplx K = b.integral_half();
    CHECK(r.rate == doctest::Approx(0.25 * 4.0 * 9.0 * K.real()));
    CHECK(r.shift == doctest::Approx(0.25 * 4.0 * 9.0 * K.imag()));
    b.range = BathModel::Range::short_range;
    CHECK(redfield_short_memory_rate(b, 0.5, 2.0, 3).rate == doctest::Approx(0.25 * 4.0 * 3.0 * K.real()));
}

TEST_CASE("Redfield with short memory approaches the Markov generator") {
    BathModel b;
    b.g = 0.5;
    b.gamma0 = 1.0;
    b.tau_env = 0.004;
    const std::vector<Matrix> sig{Matrix(pauli(Axis::z))};
    const Matrix Hs = 0.8 * Matrix(pauli(Axis::x));
    auto H = [&](double) { return Hs; };
    Vector psi(2);
    psi << 1.0, 0.0;
    const Matrix rho0 = projector(psi);
    const double T = 3.0;

    RedfieldOptions ro;
    ro.dt = 0.002;
    ro.outputs = 11;
    const Trajectory red = redfield_evolve(H, sig, b, 1.0, rho0, T, ro);

    const ShortMemoryGenerator sm = short_memory_generator(b, sig, 1.0);
    LindbladGenerator gen{[&](double) { return Matrix(Hs + sm.H_shift); }, sm.jumps};
    EvolveOptions eo;
    eo.ode.rtol = 1e-10;
    eo.ode.atol = 1e-12;
    const Trajectory lin = evolve(gen, rho0, T, eo);

    const double decay = 1.0 - red.final_state(0, 0).real();
    CHECK(decay > 0.1);
    CHECK(trace_distance(red.final_state, lin.final_state) < 0.02);
    CHECK(std::abs(red.final_state.trace() - 1.0) < 1e-10);
}

TEST_CASE("Redfield reduces to closed evolution at zero coupling") {
    BathModel b;
    b.g = 0.0;
    b.gamma0 = 1.0;
    b.tau_env = 0.05;
    const Matrix Hs = Matrix(pauli(Axis::x)) + 0.3 * Matrix(pauli(Axis::z));
    auto H = [&](double) { return Hs; };
    const Matrix rho0 = projector(basis_state(2, 0));
    RedfieldOptions ro;
    ro.dt = 0.01;
    const Trajectory red = redfield_evolve(H, {Matrix(pauli(Axis::z))}, b, 1.0, rho0, 2.0, ro);
    const Matrix U = propagate(H, 0.0, 2.0, 200);
    CHECK((red.final_state - U * rho0 * U.adjoint()).norm() < 1e-10);
}

TEST_CASE("short-memory rate scales as g^2 and, for long-range baths, as n^2") {
    BathModel b;
    b.gamma0 = 1.0;
    b.tau_env = 0.1;
    const double r = redfield_short_memory_rate(b, 0.1, 1.0, 3).rate;
    CHECK(redfield_short_memory_rate(b, 0.2, 1.0, 3).rate == doctest::Approx(4.0 * r));
    CHECK(redfield_short_memory_rate(b, 0.1, 1.0, 6).rate == doctest::Approx(4.0 * r));
    b.range = BathModel::Range::short_range;
    const double s = redfield_short_memory_rate(b, 0.1, 1.0, 3).rate;
    CHECK(redfield_short_memory_rate(b, 0.1, 1.0, 6).rate == doctest::Approx(2.0 * s));
}

TEST_CASE("Redfield at tau_env Omega = 0.01 tracks the short-memory reduction to 1e-4") {
    BathModel b;
    b.gamma0 = 1.0;
    b.tau_env = 0.01;
    b.g = std::sqrt(2e-4);  // effective rate 2 g^2 Omega^2 Re int_0^inf C = 2e-4
    const std::vector<Matrix> sig{Matrix(pauli(Axis::z))};
    const Matrix Hs = Matrix(pauli(Axis::x));
    auto H = [&](double) { return Hs; };
    const Matrix rho0 = projector(basis_state(2, 0));
    const double T = 10.0;

    RedfieldOptions ro;
    ro.dt = 0.002;
    ro.outputs = 51;
    const Trajectory red = redfield_evolve(H, sig, b, 1.0, rho0, T, ro);

    const ShortMemoryGenerator sm = short_memory_generator(b, sig, 1.0);
    LindbladGenerator gen{[&](double) { return Matrix(Hs + sm.H_shift); }, sm.jumps};
    EvolveOptions eo;
    eo.ode.rtol = 1e-11;
    eo.ode.atol = 1e-13;
    eo.outputs = 51;
    eo.snapshots = true;
    const Trajectory lin = evolve(gen, rho0, T, eo);

    double worst = 0.0;
    for (std::size_t i = 0; i < lin.snapshots.size(); ++i)
        worst = std::max(worst, (red.records[i].bloch - bloch_vector(lin.snapshots[i])).norm() / 2.0);
    CHECK(worst < 1e-4);

    // the dissipative effect itself is resolved above that bound
    const Matrix U = propagate(H, 0.0, T, 1000);
    CHECK(trace_distance(red.final_state, U * rho0 * U.adjoint()) > 1e-4);
}
