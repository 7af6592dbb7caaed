#include "ccqme/canonical_map.hpp"

#include <cmath>

#include "ccqme/errors.hpp"

namespace ccqme {

using Eigen::MatrixXcd;

Superoperator CanonicalMap::total() const
{
    return {dim, coherence + dissipator + derivative, SuperoperatorKind::canonical};
}

CanonicalMap canonical_map(const NLevelSystem& sys, const BathSpec& bath, bool secular_coherences)
{
    const int n = sys.size();
    const int n2 = n * n;
    const Eigen::MatrixXd d = bohr_frequencies(sys);
    const Eigen::MatrixXd& q = sys.coupling();

    Superoperator r = redfield_superoperator(sys, bath);
    if (secular_coherences) r = secularize(r, sys);

    CanonicalMap map{n, MatrixXcd::Zero(n2, n2), MatrixXcd::Zero(n2, n2), MatrixXcd::Zero(n2, n2)};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (d(i, j) == 0.0) throw InvalidInput("canonical map requires a nondegenerate spectrum");
            map.coherence.row(i * n + j) = r.matrix.row(i * n + j) / cplx(0.0, d(i, j));
        }

    // rate(i, j) = T(delta_ij) and its derivative, tabulated once.
    MatrixXcd rate(n, n), slope(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            rate(i, j) = tunneling_rate(bath, d(i, j));
            slope(i, j) = tunneling_rate_derivative(bath, d(i, j));
        }

    for (int i = 0; i < n; ++i) {
        const int ii = i * n + i;
        double shift = 0.0;       // sum_l q_il^2 Im T(delta_li)
        double outflow = 0.0;     // sum_l q_li^2 Re T(delta_li)
        for (int l = 0; l < n; ++l) {
            if (l == i) continue;
            const double w = q(i, l) * q(i, l);
            map.dissipator(ii, l * n + l) += w * slope(i, l).imag();
            map.dissipator(ii, ii) -= w * slope(l, i).imag();
            shift += w * rate(l, i).imag();
            outflow += w * rate(l, i).real();
        }
        if (shift == 0.0) continue;
        if (!(outflow > 0.0))
            throw NumericalFailure("energy-derivative map undefined: level " + std::to_string(i) +
                                   " has no outgoing transitions");
        for (int l = 0; l < n; ++l) {
            if (l == i) continue;
            const double w = q(i, l) * q(i, l);
            map.derivative(ii, l * n + l) += shift * w * slope(i, l).real() / outflow;
            map.derivative(ii, ii) += shift * w * slope(l, i).real() / outflow;
        }
    }
    return map;
}

Superoperator ccqme_generator(const NLevelSystem& sys, const BathSpec& bath, const CcqmeOptions& options)
{
    const int n = sys.size();
    const Superoperator u = unitary_liouvillian(sys);
    if (bath.coupling() == 0.0) return u;

    Superoperator r = redfield_superoperator(sys, bath);
    Superoperator c = canonical_map(sys, bath, options.secular && options.secular_map_coherences).total();
    const MatrixXcd id = MatrixXcd::Identity(n * n, n * n);
    if (!options.secular) return {n, u.matrix + r.matrix * (id - c.matrix), SuperoperatorKind::composite};

    r = secularize(r, sys, options.secular_tolerance);
    Superoperator dissipative{n, r.matrix * (id - c.matrix), SuperoperatorKind::composite};
    dissipative = secularize(dissipative, sys, options.secular_tolerance);
    return {n, u.matrix + dissipative.matrix, SuperoperatorKind::composite};
}

Superoperator redfield_generator(const NLevelSystem& sys, const BathSpec& bath, bool secular, double secular_tolerance)
{
    Superoperator r = redfield_superoperator(sys, bath);
    if (secular) r = secularize(r, sys, secular_tolerance);
    return unitary_liouvillian(sys) + r;
}

}  // namespace ccqme
