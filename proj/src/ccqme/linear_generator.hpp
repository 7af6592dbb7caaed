// linear_generator.hpp: common interface for anything that can drive a
// time-independent linear ODE dx/dt = G x whose first N^2 entries hold rho
#pragma once

#include <Eigen/Dense>

#include "ccqme/generators.hpp"

namespace ccqme {

class LinearGenerator {
public:
    virtual ~LinearGenerator() = default;

    virtual int system_size() const = 0;
    virtual Eigen::Index state_size() const = 0;
    virtual void apply(const Eigen::VectorXcd& x, Eigen::VectorXcd& out) const = 0;

    // Full state with rho in the physical slot and zeros elsewhere.
    Eigen::VectorXcd embed(const Eigen::MatrixXcd& rho) const;
    // The physical density matrix held by a full state.
    Eigen::MatrixXcd physical(const Eigen::VectorXcd& x) const;
};

class DenseGenerator final : public LinearGenerator {
public:
    explicit DenseGenerator(Superoperator sop) : sop_(std::move(sop)) {}

    int system_size() const override { return sop_.dim; }
    Eigen::Index state_size() const override { return sop_.matrix.rows(); }
    void apply(const Eigen::VectorXcd& x, Eigen::VectorXcd& out) const override { out.noalias() = sop_.matrix * x; }
    const Superoperator& superoperator() const noexcept { return sop_; }

private:
    Superoperator sop_;
};

}  // namespace ccqme
