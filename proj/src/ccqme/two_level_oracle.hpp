// two_level_oracle.hpp: closed-form two-level Redfield / canonical-map /
// CCQME expressions, written out element by element. Used as an independent
// reference for the general-N builders.
#pragma once

#include <Eigen/Dense>

#include "ccqme/bath.hpp"

namespace ccqme {

struct TwoLevelInputs {
    double e0 = 0.0, e1 = 0.0;  // e1 > e0
    double q00 = 0.0, q01 = 0.0, q11 = 0.0;
    Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
};

struct TwoLevelTerms {
    Eigen::Matrix2cd convolution, convolution_adjoint;
    Eigen::Matrix2cd a, b, c, d;  // K rho q, q rho K^dag, q K rho, rho K^dag q
    Eigen::Matrix2cd redfield;    // a + b - c - d
    cplx map_01 = 0.0, map_10 = 0.0;  // coherence part of the canonical map
    cplx map_00 = 0.0, map_11 = 0.0;  // population part (GKSL plus derivative terms)
    cplx energy_derivative_0 = 0.0, energy_derivative_1 = 0.0;
    Eigen::Matrix2cd corrected;   // (1 - C) rho
    Eigen::Matrix2cd redfield_rhs;
    Eigen::Matrix2cd ccqme_rhs;
};

TwoLevelTerms two_level_oracle(const TwoLevelInputs& in, const BathSpec& bath);

}  // namespace ccqme
