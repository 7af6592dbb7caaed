#include "ccqme/equilibrium.hpp"

#include <cmath>

#include "ccqme/canonical_map.hpp"
#include "ccqme/errors.hpp"

namespace ccqme {

using Eigen::MatrixXcd;

MatrixXcd gibbs_state(const NLevelSystem& sys, double beta)
{
    if (!(beta > 0.0)) throw InvalidInput("Gibbs state requires beta > 0");
    const auto& e = sys.energies();
    const double e0 = e.minCoeff();
    Eigen::VectorXd w(e.size());
    for (Eigen::Index i = 0; i < e.size(); ++i) w(i) = std::exp(-beta * (e(i) - e0));
    w /= w.sum();
    return w.cast<cplx>().asDiagonal();
}

EquilibriumStates mean_force_gibbs2(const NLevelSystem& sys, const BathSpec& bath)
{
    EquilibriumStates out;
    out.gibbs = gibbs_state(sys, bath.beta());
    if (bath.coupling() == 0.0) {
        out.mean_force = out.gibbs;
        out.correction = MatrixXcd::Zero(sys.size(), sys.size());
    } else {
        const MatrixXcd c = canonical_map(sys, bath).total().apply(out.gibbs);
        out.correction = c - out.gibbs * c.trace();
        out.mean_force = out.gibbs + out.correction;
    }
    Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(0.5 * (out.mean_force + out.mean_force.adjoint()));
    out.min_eigenvalue = eig.eigenvalues().minCoeff();
    return out;
}

MatrixXcd stationary_state(const Superoperator& generator)
{
    const int n = generator.dim;
    MatrixXcd a = generator.matrix;
    a.row(0).setZero();
    for (int i = 0; i < n; ++i) a(0, i * n + i) = 1.0;
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n * n);
    rhs(0) = 1.0;
    Eigen::FullPivLU<MatrixXcd> lu(a);
    if (!lu.isInvertible()) throw NumericalFailure("generator has no unique stationary state");
    MatrixXcd rho = unvectorize(lu.solve(rhs), n);
    return 0.5 * (rho + rho.adjoint());
}

std::string_view regime_name(Regime r)
{
    switch (r) {
    case Regime::ultraweak: return "UW";
    case Regime::weak: return "WK";
    case Regime::intermediate: return "IM";
    }
    return "?";
}

RegimeReport classify_regime(const NLevelSystem& sys, const BathSpec& bath, const MatrixXcd* reference_steady_state,
                             double threshold)
{
    const EquilibriumStates eq = mean_force_gibbs2(sys, bath);
    const double p_mf = eq.mean_force(0, 0).real();
    RegimeReport report;
    report.coupling = bath.coupling();
    report.gibbs_vs_mean_force = std::abs(eq.gibbs(0, 0).real() - p_mf) / p_mf;
    report.label = report.gibbs_vs_mean_force < threshold ? Regime::ultraweak : Regime::weak;
    if (reference_steady_state) {
        if (reference_steady_state->rows() != sys.size()) throw InvalidInput("reference state dimension mismatch");
        const double p_ref = (*reference_steady_state)(0, 0).real();
        report.mean_force_vs_reference = std::abs(p_mf - p_ref) / p_ref;
        report.intermediate_checked = true;
        if (*report.mean_force_vs_reference > threshold) report.label = Regime::intermediate;
    }
    return report;
}

}  // namespace ccqme
