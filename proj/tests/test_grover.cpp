#include "zeno/grover.hpp"

#include <doctest.h>

using namespace zeno;

namespace {

// (Omega/eps) int_0^1 df / gap(f)^2 in closed form
double adaptive_runtime_oracle(double N, double omega, double eps) {
    const double r = std::sqrt(N);
    return 0.5 * r * (std::atan(r * (1.0 + 2.0 / N)) + std::atan(r)) / (eps * omega);
}

}  // namespace

TEST_CASE("Grover Hamiltonian endpoints") {
    GroverProblem p{3, 2.0, 5};
    const Matrix H1 = grover_hamiltonian(p, 1.0);
    const Vector s = uniform_state(p.dim());
    CHECK((H1 + 2.0 * projector(s)).norm() < 1e-14);
    const Matrix H0 = grover_hamiltonian(p, 0.0);
    CHECK((H0 + 2.0 * projector(basis_state(8, 5))).norm() < 1e-14);
    CHECK(is_hermitian(grover_hamiltonian(p, 0.37)));
}

TEST_CASE("closed-form gap matches the full spectrum") {
    for (int n = 2; n <= 8; ++n) {
        GroverProblem p{n, 1.5, static_cast<std::uint64_t>(n - 1)};
        for (double f : {0.0, 0.2, 0.5, 0.51, 0.9, 1.0}) {
            const RealVector e = hermitian_eigensystem(grover_hamiltonian(p, f)).values;
            CHECK(std::abs((e[1] - e[0]) - subspace_gap(p.N(), p.omega, f)) < 1e-12);
        }
    }
    CHECK(gap(1024.0, 1.0, 0.5) == doctest::Approx(1.0 / 32.0).epsilon(1e-14));
    CHECK(gap(16.0, 2.0, 0.0) == doctest::Approx(2.0));
}

TEST_CASE("subspace Hamiltonian is the restriction to span{w, w_perp}") {
    GroverProblem p{4, 1.3, 9};
    const Matrix V = subspace_isometry(p);
    CHECK((V.adjoint() * V - Matrix::Identity(2, 2)).norm() < 1e-14);
    for (double f : {0.1, 0.5, 0.8}) {
        const Matrix restricted = V.adjoint() * grover_hamiltonian(p, f) * V;
        CHECK((restricted - subspace_hamiltonian(p.N(), p.omega, f).cast<cplx>()).norm() < 1e-13);
    }
    const Vector s = V.adjoint() * uniform_state(p.dim());
    CHECK((s - subspace_uniform(p.N()).cast<cplx>()).norm() < 1e-14);
}

TEST_CASE("reduced crossing matrix drops only O(1/N) terms") {
    const double N = 4096.0;
    for (double f : {0.3, 0.5, 0.7}) {
        const auto red = landau_zener_reduced(N, 1.0, f).H;
        const Eigen::Matrix2d ex = subspace_hamiltonian(N, 1.0, f);
        CHECK((red - ex.cast<cplx>()).norm() < 2.0 / N);
    }
}

TEST_CASE("adaptive run time against the closed-form integral") {
    for (double N : {16.0, 256.0, 4096.0}) {
        for (double eps : {0.05, 0.2}) {
            const Schedule s = schedule_adaptive(N, 1.0, eps);
            CHECK(s.T == doctest::Approx(adaptive_runtime_oracle(N, 1.0, eps)).epsilon(1e-8));
        }
    }
    const Schedule s2 = schedule_adaptive(64.0, 2.0, 0.1);
    CHECK(s2.T == doctest::Approx(adaptive_runtime_oracle(64.0, 2.0, 0.1)).epsilon(1e-8));
}

TEST_CASE("schedules are monotone with the expected endpoints") {
    const Schedule a = schedule_adaptive(256.0, 1.0, 0.1);
    const Schedule c = schedule_constant(256.0, 1.0, 40.0);
    for (const Schedule* s : {&a, &c}) {
        CHECK(s->f_at(0.0) == 1.0);
        CHECK(s->f_at(s->T) == 0.0);
        double prev = 1.0;
        for (int k = 0; k <= 400; ++k) {
            const double f = s->f_at(s->T * k / 400.0);
            CHECK(f <= prev + 1e-15);
            prev = f;
        }
    }
    CHECK(c.f_at(10.0) == doctest::Approx(0.75));
    CHECK(c.fdot_at(10.0) == doctest::Approx(-1.0 / 40.0));
}

TEST_CASE("adaptive velocity follows the local gap") {
    const double N = 256.0, eps = 0.1;
    const Schedule s = schedule_adaptive(N, 1.0, eps);
    for (double frac : {0.1, 0.4, 0.5, 0.6, 0.9}) {
        const double t = frac * s.T;
        const double g = gap(N, 1.0, s.f_at(t));
        CHECK(s.fdot_at(t) == doctest::Approx(-eps * g * g).epsilon(1e-3));
    }
}

TEST_CASE("generalized projection of the Grover crossing") {
    GroverProblem p{6, 1.0, 3};
    const Matrix H = grover_hamiltonian(p, 0.5);
    const LzProjection r = generalized_lz_projection(H, basis_state(p.dim(), 3), uniform_state(p.dim()));
    const double N = p.N();
    CHECK(r.delta_min == doctest::Approx(std::sqrt(N - 1.0) / N).epsilon(1e-12));
    CHECK(std::abs(r.delta_min - gap(p, 0.5)) < 1.0 / N);
    CHECK_THROWS_AS(generalized_lz_projection(H, uniform_state(p.dim()), uniform_state(p.dim())), InvalidArgument);
}

TEST_CASE("invalid inputs are rejected") {
    CHECK_THROWS_AS(grover_hamiltonian(GroverProblem{3, 1.0, 8}, 0.5), InvalidArgument);
    CHECK_THROWS_AS(grover_hamiltonian(GroverProblem{3, -1.0, 0}, 0.5), InvalidArgument);
    CHECK_THROWS_AS(grover_hamiltonian(GroverProblem{3, 1.0, 0}, 1.5), InvalidArgument);
    CHECK_THROWS_AS(schedule_adaptive(64.0, 1.0, 0.0), InvalidArgument);
    CHECK_THROWS_AS(schedule_adaptive(64.0, 1.0, 2.0), InvalidArgument);
    CHECK_THROWS_AS(schedule_constant(64.0, 1.0, -1.0), InvalidArgument);
    CHECK(std::string(schedule_kind_name(Schedule::Kind::adaptive)) == "adaptive");
}
