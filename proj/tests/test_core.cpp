#include "zeno/core.hpp"
#include "zeno/ode.hpp"

#include <doctest.h>
#include <unsupported/Eigen/MatrixFunctions>

using namespace zeno;

TEST_CASE("pauli algebra and qubit ordering") {
    const auto X = pauli(Axis::x), Y = pauli(Axis::y), Z = pauli(Axis::z);
    CHECK((X * Y - I * Z).norm() < 1e-15);
    CHECK((Y * Z - I * X).norm() < 1e-15);
    CHECK((Z * Z - Eigen::Matrix2cd::Identity()).norm() < 1e-15);
    CHECK(Z(0, 0).real() == 1.0);
    CHECK(Z(1, 1).real() == -1.0);

    // qubit 0 is the most significant bit
    const Matrix z0 = pauli_operator(Axis::z, 0, 2);
    CHECK(z0.diagonal().real().isApprox(Eigen::Vector4d(1, 1, -1, -1)));
    const Matrix z1 = pauli_operator(Axis::z, 1, 2);
    CHECK(z1.diagonal().real().isApprox(Eigen::Vector4d(1, -1, 1, -1)));
    CHECK_THROWS_AS(pauli_operator(Axis::x, 2, 2), InvalidArgument);
    CHECK(parse_axis("y") == Axis::y);
    CHECK(std::string(axis_name(Axis::x)) == "x");
    CHECK_THROWS_AS(parse_axis("w"), InvalidArgument);
}

TEST_CASE("kron and partial trace") {
    std::mt19937_64 rng(1);
    const Matrix a = random_density(2, rng), b = random_density(3, rng);
    const Matrix ab = kron(a, b);
    CHECK(ab.rows() == 6);
    CHECK((partial_trace_second(ab, 2, 3) - a).norm() < 1e-13);
    CHECK((ab.block(0, 3, 3, 3) - a(0, 1) * b).norm() < 1e-15);
}

TEST_CASE("hermitian eigensystem reconstructs and sorts") {
    std::mt19937_64 rng(2);
    const Matrix H = random_hermitian(6, rng);
    const EigenSystem es = hermitian_eigensystem(H);
    for (Eigen::Index i = 1; i < es.values.size(); ++i) CHECK(es.values[i] >= es.values[i - 1]);
    const Matrix back = es.vectors * es.values.cast<cplx>().asDiagonal() * es.vectors.adjoint();
    CHECK((back - H).norm() / H.norm() < 1e-12);
    Matrix nh = H;
    nh(0, 1) += 0.1;
    CHECK_THROWS_AS(hermitian_eigensystem(nh), InvalidArgument);
}

TEST_CASE("entropy, trace distance and density checks") {
    CHECK(von_neumann_entropy(maximally_mixed(4)) == doctest::Approx(std::log(4.0)).epsilon(1e-14));
    CHECK(std::abs(von_neumann_entropy(projector(basis_state(3, 1)))) < 1e-14);
    CHECK(trace_distance(projector(basis_state(2, 0)), projector(basis_state(2, 1))) ==
          doctest::Approx(1.0).epsilon(1e-14));

    Matrix bad = maximally_mixed(2);
    bad(0, 0) += 0.1;
    CHECK_THROWS_AS(require_density(bad), InvalidArgument);
    Matrix neg = Matrix::Zero(2, 2);
    neg(0, 0) = 1.2;
    neg(1, 1) = -0.2;
    CHECK_THROWS_AS(require_density(neg), InvalidArgument);
    CHECK_NOTHROW(require_density(maximally_mixed(3)));
}

TEST_CASE("random states are valid") {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 20; ++k) {
        const Matrix U = random_unitary(4, rng);
        CHECK((U.adjoint() * U - Matrix::Identity(4, 4)).norm() < 1e-12);
        const Matrix rho = random_density(4, rng);
        CHECK_NOTHROW(require_density(rho));
        CHECK(is_hermitian(random_hermitian(5, rng)));
    }
}

TEST_CASE("commutator identities") {
    std::mt19937_64 rng(4);
    const Matrix a = random_hermitian(3, rng), b = random_hermitian(3, rng), c = random_hermitian(3, rng);
    const Matrix jacobi = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) +
                          commutator(c, commutator(a, b));
    CHECK(jacobi.norm() < 1e-12);
    CHECK((anticommutator(a, b) + commutator(a, b) - 2.0 * a * b).norm() < 1e-12);
}

TEST_CASE("Hermitian exponential and Magnus step against the library exponential") {
    std::mt19937_64 rng(5);
    const Matrix K = random_hermitian(4, rng);
    const Matrix ref = Matrix(-I * K).exp();
    CHECK((expm_hermitian(K) - ref).norm() < 1e-12);

    // time-independent H: one Magnus step is exact
    auto H = [&K](double) { return K; };
    CHECK((magnus4_step(H, 0.0, 0.3) - Matrix(-I * 0.3 * K).exp()).norm() < 1e-12);
}

TEST_CASE("dopri5 integrates y' = -y to tolerance") {
    Eigen::VectorXd y(1);
    y[0] = 1.0;
    double h = 0.0;
    OdeOptions o;
    o.rtol = 1e-10;
    o.atol = 1e-12;
    const OdeStats st = dopri5([](double, const Eigen::VectorXd& v) { return Eigen::VectorXd(-v); }, y, 0.0, 5.0, h, o);
    CHECK(st.accepted > 0);
    CHECK(y[0] == doctest::Approx(std::exp(-5.0)).epsilon(1e-8));
}
