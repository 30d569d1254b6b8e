#include "zeno/bloch.hpp"

#include <doctest.h>
#include <unsupported/Eigen/MatrixFunctions>

using namespace zeno;

namespace {

BlochParams params(double omega, double gamma) {
    BlochParams p;
    p.omega = omega;
    p.gamma = gamma;
    p.gamma1 = 0.7 * gamma;
    p.gamma2 = 1.3 * gamma;
    p.sigma = gamma;
    return p;
}

double close(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("Bloch matrices are the affine maps of their Lindbladians") {
    for (auto v : {BlochVariant::dephasing_z, BlochVariant::two_projectors, BlochVariant::relaxation}) {
        for (double G : {0.0, 0.3, 5.0}) {
            const BlochParams p = params(1.2, G);
            const BlochModel m = bloch_lindblad_model(v, p);
            const AffineBloch a = affine_bloch_map(m.H, m.jumps);
            CHECK((a.M - bloch_matrix(v, p)).norm() < 1e-13);
            if (v != BlochVariant::relaxation) CHECK(a.b.norm() < 1e-14);
        }
    }
}

TEST_CASE("numeric and closed-form eigenvalues agree") {
    for (auto v : {BlochVariant::dephasing_z, BlochVariant::two_projectors, BlochVariant::relaxation}) {
        for (double G : {0.01, 0.5, 1.9, 2.1, 7.9, 8.1, 30.0, 1000.0}) {
            const BlochParams p = params(1.0, G);
            const BlochSpectrum a = bloch_eigenvalues(bloch_matrix(v, p));
            const BlochSpectrum b = bloch_closed_form(v, p);
            CHECK(close(a.lambda0, b.lambda0) < 1e-10);
            CHECK(close(a.plus, b.plus) < 1e-8);
            CHECK(close(a.minus, b.minus) < 1e-8);
        }
    }
}

TEST_CASE("dephasing slow mode tends to -2 Omega^2 / Gamma") {
    for (double G : {100.0, 1000.0, 1e5}) {
        const BlochSpectrum s = bloch_closed_form(BlochVariant::dephasing_z, params(1.0, G));
        CHECK(s.plus.real() == doctest::Approx(-2.0 / G).epsilon(10.0 / (G * G)));
        CHECK(s.plus.imag() == 0.0);
    }
    const BlochSpectrum under = bloch_closed_form(BlochVariant::dephasing_z, params(1.0, 0.5));
    CHECK(under.plus.imag() > 0.0);
    CHECK(under.plus.real() == doctest::Approx(-0.5));
}

TEST_CASE("Bloch vector round trip") {
    std::mt19937_64 rng(21);
    const Matrix rho = random_density(2, rng);
    CHECK((density_from_bloch(bloch_vector(rho)) - rho).norm() < 1e-14);
    CHECK(bloch_vector(projector(basis_state(2, 0))).z() == doctest::Approx(1.0));
    CHECK_THROWS_AS(bloch_vector(Matrix::Identity(3, 3)), InvalidArgument);
}

TEST_CASE("repeated projective measurement survival") {
    const ZenoOutcome o = zeno_survival({1.0, 0.01, 100});
    CHECK(o.survival == doctest::Approx(std::pow(std::cos(0.01), 200)).epsilon(1e-13));
    CHECK(o.survival + o.transition == doctest::Approx(1.0));
    // small transition probabilities keep their relative accuracy
    const ZenoOutcome tiny = zeno_survival({1.0, 1e-9, 1});
    CHECK(tiny.transition == doctest::Approx(1e-18).epsilon(1e-9));
    // survival tends to one as the measurement rate grows at fixed total time
    double prev = 0.0;
    for (long k : {10L, 100L, 1000L, 10000L}) {
        const double s = zeno_survival({1.0, 1.0 / k, k}).survival;
        CHECK(s > prev);
        prev = s;
    }
    CHECK_THROWS_AS(zeno_survival({1.0, 0.0, 10}), InvalidArgument);
    CHECK_THROWS_AS(zeno_survival({1.0, 0.1, 0}), InvalidArgument);
}

TEST_CASE("entropy production against the matrix-logarithm formula") {
    std::mt19937_64 rng(22);
    for (int k = 0; k < 5; ++k) {
        const Matrix rho = random_density(3, rng);
        const Matrix L = random_hermitian(3, rng);
        const Matrix lnr = rho.log();
        const double direct = -((L * rho * L - L * L * rho) * lnr).trace().real();
        CHECK(entropy_production(rho, L) == doctest::Approx(direct).epsilon(1e-10));
        CHECK(entropy_production(rho, L) >= 0.0);
    }
    CHECK(std::abs(entropy_production(maximally_mixed(3), random_hermitian(3, rng))) < 1e-14);
    CHECK_THROWS_AS(entropy_production(maximally_mixed(2), Matrix(Matrix::Random(2, 2))), InvalidArgument);
}

TEST_CASE("strong-dissipation rate equation") {
    std::mt19937_64 rng(23);
    const Matrix H = random_hermitian(3, rng);
    Matrix O = Matrix::Zero(3, 3);
    O.diagonal() << -1.0, 0.2, 1.0;
    const RateEquation r = strong_dissipation_rates(H, O, 50.0);
    CHECK(r.rates.colwise().sum().norm() < 1e-14);
    for (int l = 0; l < 3; ++l)
        for (int n = 0; n < 3; ++n)
            if (l != n) CHECK(r.rates(l, n) >= 0.0);
    CHECK(r.rates(0, 1) == doctest::Approx(4.0 * std::norm(H(0, 1)) / (50.0 * 1.44)));

    // two levels: the single relaxation eigenvalue matches the exact slow Bloch mode
    const double G = 400.0;
    const RateEquation two = strong_dissipation_rates(Matrix(pauli(Axis::y)), Matrix(pauli(Axis::z)), G);
    const double slow = -(two.rates(0, 1) + two.rates(1, 0));
    const BlochSpectrum s = bloch_closed_form(BlochVariant::dephasing_z, params(1.0, G));
    CHECK(slow == doctest::Approx(s.plus.real()).epsilon(1e-4));

    Matrix degenerate = Matrix::Identity(3, 3);
    CHECK_THROWS_AS(strong_dissipation_rates(H, degenerate, 50.0), InvalidArgument);
    CHECK_THROWS_AS(strong_dissipation_rates(H, O, 0.0), InvalidArgument);
}

TEST_CASE("variant names round trip") {
    for (auto v : {BlochVariant::dephasing_z, BlochVariant::two_projectors, BlochVariant::relaxation})
        CHECK(parse_bloch_variant(bloch_variant_name(v)) == v);
    CHECK_THROWS(parse_bloch_variant("nope"));
}
