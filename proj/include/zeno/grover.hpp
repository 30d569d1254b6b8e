#pragma once

#include "zeno/core.hpp"

#include <memory>
#include <string>
#include <vector>

namespace zeno {

struct GroverProblem {
    int n = 2;
    double omega = 1.0;
    std::uint64_t marked = 0;

    Eigen::Index dim() const { return Eigen::Index(1) << n; }
    double N() const { return static_cast<double>(dim()); }
    void validate() const;
};

Vector uniform_state(Eigen::Index dim);

Matrix grover_hamiltonian(const GroverProblem& p, double f);

struct TwoLevelHamiltonian {
    Eigen::Matrix2cd H;
    std::string in_label = "w";
    std::string out_label = "w_perp";
};

// Reduced crossing matrix with the O(1/N) terms dropped.
TwoLevelHamiltonian landau_zener_reduced(const GroverProblem& p, double f);
TwoLevelHamiltonian landau_zener_reduced(double N, double omega, double f);

double gap(const GroverProblem& p, double f);
double gap(double N, double omega, double f);

// Exact restriction of the Grover Hamiltonian to span{|w>, |s>} in the
// orthonormal basis {|w>, |w_perp>}; valid for any real N >= 1.
Eigen::Matrix2d subspace_hamiltonian(double N, double omega, double f);
double subspace_gap(double N, double omega, double f);
Eigen::Vector2d subspace_uniform(double N);  // |s> in the {|w>, |w_perp>} basis
Matrix subspace_isometry(const GroverProblem& p);  // dim x 2, columns |w>, |w_perp>

namespace detail {
struct ScheduleCurve;
}

struct Schedule {
    enum class Kind { constant, adaptive };
    Kind kind = Kind::constant;
    double T = 0.0;
    double eps = 0.0;  // adaptive only
    double N = 0.0;
    double omega = 1.0;
    std::vector<double> t;  // increasing, t.front()=0, t.back()=T
    std::vector<double> f;  // non-increasing, f.front()=1, f.back()=0
    std::shared_ptr<const detail::ScheduleCurve> curve;

    double f_at(double time) const;
    double fdot_at(double time) const;
};

const char* schedule_kind_name(Schedule::Kind k);

Schedule schedule_constant(const GroverProblem& p, double T);
Schedule schedule_constant(double N, double omega, double T);
Schedule schedule_adaptive(const GroverProblem& p, double eps);
Schedule schedule_adaptive(double N, double omega, double eps);

struct LzProjection {
    TwoLevelHamiltonian h;
    double off_diagonal = 0.0;  // |<in|H|out'>|
    double delta_min = 0.0;     // 2 |<in|H|out'>|
};

LzProjection generalized_lz_projection(const Matrix& H, const Vector& in, const Vector& out);

}  // namespace zeno
