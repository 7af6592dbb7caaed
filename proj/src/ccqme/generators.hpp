// generators.hpp: Liouville-space generators on row-major vectorized states
//
// vec(rho)[n * N + m] = rho(n, m), hence vec(A rho B) = (A kron B^T) vec(rho).
#pragma once

#include <Eigen/Dense>

#include "ccqme/bath.hpp"
#include "ccqme/system_model.hpp"

namespace ccqme {

enum class SuperoperatorKind { unitary, redfield, redfield_t, canonical, composite, heom_block };

struct Superoperator {
    int dim = 0;  // N; the matrix is N^2 x N^2
    Eigen::MatrixXcd matrix;
    SuperoperatorKind kind = SuperoperatorKind::composite;

    Eigen::MatrixXcd apply(const Eigen::MatrixXcd& rho) const;
};

inline constexpr double default_secular_tolerance = 1e-12;

Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& rho);
Eigen::MatrixXcd unvectorize(const Eigen::VectorXcd& v, int n);
Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

// K(n, m) = T(delta_nm) q(n, m)
Eigen::MatrixXcd convolution_operator(const NLevelSystem& sys, const BathSpec& bath);
Eigen::MatrixXcd convolution_operator_t(const NLevelSystem& sys, const BathSpec& bath, double t);

// K rho q - q K rho + q rho K^dagger - rho K^dagger q
Superoperator redfield_superoperator(const NLevelSystem& sys, const Eigen::MatrixXcd& convolution,
                                     SuperoperatorKind kind = SuperoperatorKind::redfield);
Superoperator redfield_superoperator(const NLevelSystem& sys, const BathSpec& bath);
Superoperator redfield_superoperator_t(const NLevelSystem& sys, const BathSpec& bath, double t);

// -i (H kron 1 - 1 kron H^T)
Superoperator unitary_liouvillian(const NLevelSystem& sys);

// Keeps element ((n,m),(k,l)) only where |delta_nm - delta_kl| < tolerance.
Superoperator secularize(const Superoperator& sop, const NLevelSystem& sys,
                         double tolerance = default_secular_tolerance);

// max |sum_n S((n,n), :)|, zero for trace-preserving generators.
double trace_annihilation_residual(const Superoperator& sop);
// max |S - P conj(S) P| with P the transpose permutation; zero when
// Hermitian inputs are mapped to Hermitian outputs.
double hermiticity_residual(const Superoperator& sop);

Superoperator operator+(const Superoperator& a, const Superoperator& b);
Superoperator operator*(const Superoperator& a, const Superoperator& b);

}  // namespace ccqme
