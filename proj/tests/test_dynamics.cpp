#include "zeno/dynamics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <doctest.h>

using namespace zeno;

namespace {

Eigen::Map<const Eigen::VectorXcd> vec(const Matrix& m) { return {m.data(), m.size()}; }

}  // namespace

TEST_CASE("Lindblad right-hand side preserves trace and Hermiticity") {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 5; ++k) {
        const Matrix H = random_hermitian(4, rng);
        std::vector<Matrix> jumps{Matrix::Random(4, 4), random_hermitian(4, rng)};
        const Matrix rho = random_density(4, rng);
        const Matrix d = lindblad_rhs(rho, H, jumps);
        CHECK(std::abs(d.trace()) < 1e-13);
        CHECK((d - d.adjoint()).norm() < 1e-13);
    }
}

TEST_CASE("superoperator acts on column-stacked states") {
    std::mt19937_64 rng(12);
    const Matrix H = random_hermitian(3, rng);
    std::vector<Matrix> jumps{Matrix::Random(3, 3)};
    const Matrix rho = random_density(3, rng);
    const Matrix L = liouvillian(H, jumps);
    CHECK((L * vec(rho) - vec(lindblad_rhs(rho, H, jumps))).norm() < 1e-13);
}

TEST_CASE("closed evolution agrees with the Magnus propagator") {
    GroverProblem p{3, 1.0, 2};
    const Schedule s = schedule_constant(p.N(), p.omega, 6.0);
    LindbladGenerator gen{[&](double t) { return grover_hamiltonian(p, s.f_at(t)); }, {}};
    const Vector psi = uniform_state(p.dim());
    EvolveOptions o;
    o.ode.rtol = 1e-10;
    o.ode.atol = 1e-12;
    const Trajectory tr = evolve(gen, projector(psi), s, o);
    const Matrix U = propagate(gen.H, 0.0, s.T, 2000);
    CHECK((tr.final_state - U * projector(psi) * U.adjoint()).norm() < 1e-8);
    CHECK(tr.records.size() == 201);
    CHECK(tr.records.back().t == doctest::Approx(s.T));
}

TEST_CASE("pure dephasing decays coherence at twice the rate") {
    const double g = 0.7;
    LindbladGenerator gen{[](double) { return Matrix(Matrix::Zero(2, 2)); }, {std::sqrt(g) * Matrix(pauli(Axis::z))}};
    Vector plus(2);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    EvolveOptions o;
    o.ode.rtol = 1e-10;
    o.ode.atol = 1e-12;
    const Trajectory tr = evolve(gen, projector(plus), 2.0, o);
    CHECK(std::abs(tr.final_state(0, 1) - 0.5 * std::exp(-2.0 * g * 2.0)) < 1e-8);
    CHECK(tr.has_bloch);
    CHECK(tr.records.back().bloch.x() == doctest::Approx(std::exp(-4.0 * g)).epsilon(1e-7));
}

TEST_CASE("evolution rejects invalid initial states") {
    LindbladGenerator gen{[](double) { return Matrix(Matrix::Zero(2, 2)); }, {}};
    Matrix bad = Matrix::Identity(2, 2);
    CHECK_THROWS_AS(evolve(gen, bad, 1.0, EvolveOptions{}), InvalidArgument);
}

TEST_CASE("coarse-grained step damps coherence by 1 - gamma dt per step") {
    const double gamma = 0.3, T = 5.0;
    Vector plus(2);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    const Matrix P = projector(basis_state(2, 0));
    CoarseOptions o;
    o.dt = 0.05;
    const Trajectory tr =
        coarse_grained_evolve([](double) { return Matrix(Matrix::Zero(2, 2)); }, P, gamma, projector(plus), T, o);
    CHECK(std::abs(tr.final_state(0, 1) - 0.5 * std::pow(1.0 - gamma * o.dt, 100)) < 1e-13);
    CHECK(tr.final_state(0, 0).real() == doctest::Approx(0.5));
    CHECK(tr.warnings.empty());

    o.dt = 1.0;
    const Trajectory coarse =
        coarse_grained_evolve([](double) { return Matrix(Matrix::Zero(2, 2)); }, P, 2.0, projector(plus), T, o);
    CHECK(!coarse.warnings.empty());
}

TEST_CASE("bath correlation, spectrum and integrals against quadrature") {
    BathModel b;
    b.gamma0 = 0.8;
    b.tau_env = 0.3;
    b.omega_env = 1.7;
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    const double tmax = 60.0 * b.tau_env;
    const double re_half = GK::integrate([&](double t) { return b.correlation(t).real(); }, 0.0, tmax, 12, 1e-13);
    const double im_half = GK::integrate([&](double t) { return b.correlation(t).imag(); }, 0.0, tmax, 12, 1e-13);
    CHECK(std::abs(b.integral_half() - cplx(re_half, im_half)) < 1e-10);
    CHECK(std::abs(b.integral_full() - 2.0 * re_half) < 1e-10);
    CHECK(std::abs(b.integral_sign() - cplx(0.0, 2.0 * im_half)) < 1e-10);
    for (double nu : {-1.0, 0.0, 1.7, 4.0}) {
        // C(-tau) = conj C(tau): the transform is 2 Re int_0^inf C e^{i nu tau}
        const double s = 2.0 * GK::integrate(
                                   [&](double t) { return (b.correlation(t) * std::exp(I * nu * t)).real(); }, 0.0,
                                   tmax, 12, 1e-13);
        CHECK(b.spectrum(nu) == doctest::Approx(s).epsilon(1e-9));
    }
}

TEST_CASE("sampled Bochner check") {
    BathModel b;
    b.gamma0 = 1.0;
    b.tau_env = 0.2;
    CHECK(bochner_check([&](double t) { return b.correlation(t); }, 8.0, 2001, 1e-10));
    // a box correlation has a sinc spectrum with negative lobes
    CHECK_FALSE(bochner_check([](double t) { return cplx(std::abs(t) < 1.0 ? 1.0 : 0.0); }, 8.0, 2001, 1e-10));
    b.tau_env = -1.0;
    CHECK_THROWS_AS(b.validate(), InvalidArgument);
}

TEST_CASE("singular coupling generator") {
    std::mt19937_64 rng(13);
    const std::vector<Matrix> A{pauli_operator(Axis::z, 0, 2), pauli_operator(Axis::z, 1, 2)};
    Matrix gamma(2, 2), sigma(2, 2);
    gamma << 1.0, 0.4, 0.4, 0.5;
    sigma << 0.3 * I, 0.1 * I, 0.1 * I, -0.2 * I;
    const double g = 0.6;
    const SingularCouplingGenerator gen = singular_coupling_generator(A, gamma, sigma, g);
    CHECK(gen.jumps.size() == 2);
    CHECK(is_hermitian(gen.lamb_shift));

    // sum_k L_k^dagger X L_k reproduces g^2 sum_ab gamma_ab A_b X A_a
    const Matrix X = random_hermitian(4, rng);
    Matrix lhs = Matrix::Zero(4, 4), rhs = Matrix::Zero(4, 4);
    for (const auto& L : gen.jumps) lhs += L * X * L.adjoint();
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) rhs += g * g * gamma(a, b) * A[b] * X * A[a];
    CHECK((lhs - rhs).norm() < 1e-12);

    const Matrix rho = random_density(4, rng);
    const Matrix H = random_hermitian(4, rng);
    CHECK(std::abs(gen.rhs(rho, H).trace()) < 1e-13);

    Matrix indefinite(2, 2);
    indefinite << 1.0, 2.0, 2.0, 1.0;
    CHECK_THROWS_AS(singular_coupling_generator(A, indefinite, sigma, g), InvalidArgument);
}

TEST_CASE("singular coupling tables follow the bath range") {
    BathModel b;
    b.gamma0 = 1.0;
    b.tau_env = 0.1;
    b.omega_env = 2.0;
    b.range = BathModel::Range::short_range;
    Matrix gamma, sigma;
    singular_coupling_tables(b, 3, gamma, sigma);
    CHECK(std::abs(gamma(0, 1)) == 0.0);
    CHECK(std::abs(gamma(1, 1) - b.integral_full()) < 1e-15);
    b.range = BathModel::Range::long_range;
    singular_coupling_tables(b, 3, gamma, sigma);
    CHECK(std::abs(gamma(0, 2) - b.integral_full()) < 1e-15);
    CHECK(std::abs(sigma(2, 1) - b.integral_sign()) < 1e-15);
}
