// canonical_map.hpp: second-order canonical correction map and the
// canonically consistent master equation built from it
#pragma once

#include "ccqme/generators.hpp"

namespace ccqme {

struct CanonicalMap {
    int dim = 0;
    Eigen::MatrixXcd coherence;   // off-diagonal rows: [R rho]_nm / (i delta_nm)
    Eigen::MatrixXcd dissipator;  // population rows: GKSL-type term with d Im T / d delta
    Eigen::MatrixXcd derivative;  // population rows: Im T times the energy-derivative map

    Superoperator total() const;
};

// With secular_coherences the coherence rows are built from the secularized
// Redfield generator instead of the full one.
CanonicalMap canonical_map(const NLevelSystem& sys, const BathSpec& bath, bool secular_coherences = false);

struct CcqmeOptions {
    bool secular = false;
    // Only meaningful with secular: also secularize the map's coherence rows
    // before composing.
    bool secular_map_coherences = false;
    double secular_tolerance = default_secular_tolerance;
};

// L = U + R (1 - C); secular: U + sec(sec(R) (1 - C)).
Superoperator ccqme_generator(const NLevelSystem& sys, const BathSpec& bath, const CcqmeOptions& options = {});

// U + R, or U + sec(R).
Superoperator redfield_generator(const NLevelSystem& sys, const BathSpec& bath, bool secular,
                                 double secular_tolerance = default_secular_tolerance);

}  // namespace ccqme
