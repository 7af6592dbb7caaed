// heom.hpp: hierarchical equations of motion for a Drude bath expanded in
// exponentials, with scaled auxiliary density operators
#pragma once

#include <map>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "ccqme/bath.hpp"
#include "ccqme/linear_generator.hpp"
#include "ccqme/system_model.hpp"

namespace ccqme {

// How the Matsubara exponentials beyond the retained ones are folded back in.
enum class Terminator {
    none,
    // Delta-correlated closure: -Delta [q, [q, .]] with Delta the summed
    // zero-frequency weight of the discarded exponentials.
    white,
    // Same discarded exponentials, but kept frequency resolved as a
    // second-order Markovian generator with rates T_tail(delta_nm).
    resolved,
};

struct HeomConfig {
    int depth = 5;           // maximum total occupation
    int n_exponentials = 3;  // Drude term plus n_exponentials - 1 Matsubara terms
    Terminator terminator = Terminator::resolved;
};

struct BathExponent {
    cplx coefficient;
    double rate;
};

// Drude exponential first, then Matsubara exponentials in increasing order.
std::vector<BathExponent> bath_exponents(const BathSpec& bath, int count);

class HeomGenerator final : public LinearGenerator {
public:
    HeomGenerator(const NLevelSystem& sys, const BathSpec& bath, const HeomConfig& cfg);

    int system_size() const override { return n_; }
    Eigen::Index state_size() const override { return Eigen::Index(n_) * n_ * n_ados(); }
    void apply(const Eigen::VectorXcd& x, Eigen::VectorXcd& out) const override;

    int n_ados() const noexcept { return static_cast<int>(indices_.size()); }
    const std::vector<std::vector<int>>& indices() const noexcept { return indices_; }
    const std::vector<BathExponent>& exponents() const noexcept { return exponents_; }
    int position(const std::vector<int>& index) const;  // -1 when outside the hierarchy

    Eigen::SparseMatrix<cplx> assemble() const;

private:
    using RowMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

    int n_;
    HeomConfig cfg_;
    std::vector<BathExponent> exponents_;
    std::vector<double> scale_;  // ADO scaling weight per exponent
    std::vector<std::vector<int>> indices_;
    std::map<std::vector<int>, int> lookup_;
    std::vector<std::vector<int>> up_;    // up_[i][j]: index of i + e_j or -1
    std::vector<std::vector<int>> down_;  // down_[i][j]: index of i - e_j or -1
    std::vector<double> damping_;         // sum_j n_j rate_j

    RowMatrix q_;
    // Per-ADO part: left rho + rho right + jump_l (rho q) + (q rho) jump_r - damping rho
    RowMatrix left_, right_;
    RowMatrix jump_l_, jump_r_;
};

enum class SteadyStateMethod { direct, propagate };

struct HeomSteadyState {
    Eigen::MatrixXcd rho;
    double residual = 0.0;  // max |G x| over the full hierarchy
};

HeomSteadyState heom_steady_state(const NLevelSystem& sys, const BathSpec& bath, const HeomConfig& cfg,
                                  SteadyStateMethod method = SteadyStateMethod::direct);

}  // namespace ccqme
