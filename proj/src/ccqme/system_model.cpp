#include "ccqme/system_model.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "ccqme/errors.hpp"

namespace ccqme {

NLevelSystem::NLevelSystem(Eigen::VectorXd energies, Eigen::MatrixXd coupling, std::string label)
    : energies_(std::move(energies)), coupling_(std::move(coupling)), label_(std::move(label))
{
    const auto n = energies_.size();
    if (n < 1) throw InvalidInput("system needs at least one level");
    if (coupling_.rows() != n || coupling_.cols() != n)
        throw InvalidInput("coupling matrix must be " + std::to_string(n) + "x" + std::to_string(n));
    if (!energies_.allFinite() || !coupling_.allFinite()) throw InvalidInput("system data must be finite");
    for (Eigen::Index i = 1; i < n; ++i)
        if (!(energies_(i) > energies_(i - 1)))
            throw InvalidInput("energies must be strictly increasing (level " + std::to_string(i) +
                               " is degenerate or out of order)");
    const double scale = std::max(1.0, coupling_.cwiseAbs().maxCoeff());
    if ((coupling_ - coupling_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw InvalidInput("coupling matrix must be symmetric");
}

NLevelSystem taa6_system()
{
    Eigen::VectorXd e(6);
    e << 4.114537e-3, 4.691015e-3, 8.133116e-3, 1.110714e-2, 1.458100e-2, 1.881039e-2;
    Eigen::MatrixXd q(6, 6);
    // clang-format off
    q << -0.3813,  0.3325,  0.0837,  0.1321,  0.0564,  0.0289,
          0.3325,  0.6712, -0.2931,  0.0230, -0.0498,  0.0008,
          0.0837, -0.2931,  0.4089, -0.4241,  0.0559, -0.0514,
          0.1321,  0.0230, -0.4241,  0.1598, -0.5011, -0.0085,
          0.0564, -0.0498,  0.0559, -0.5011,  0.2696, -0.5258,
          0.0289,  0.0008, -0.0514, -0.0085, -0.5258,  0.2752;
    // clang-format on
    return NLevelSystem(e, q, "taa6");
}

NLevelSystem truncate(const NLevelSystem& sys, int n)
{
    if (n < 1 || n > sys.size()) throw InvalidInput("truncation size out of range");
    return NLevelSystem(sys.energies().head(n), sys.coupling().topLeftCorner(n, n),
                        sys.label() + "[" + std::to_string(n) + "]");
}

Eigen::MatrixXd bohr_frequencies(const NLevelSystem& sys)
{
    const auto& e = sys.energies();
    const auto n = e.size();
    Eigen::MatrixXd d(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) d(i, j) = e(i) - e(j);
    return d;
}

Eigen::MatrixXd hamiltonian_matrix(const NLevelSystem& sys) { return sys.energies().asDiagonal(); }

NLevelSystem renormalize(const NLevelSystem& sys, double coupling, double cutoff)
{
    if (!(coupling >= 0.0)) throw InvalidInput("renormalization needs non-negative coupling");
    if (!(cutoff > 0.0)) throw InvalidInput("renormalization needs positive cutoff");
    if (coupling == 0.0) return sys;

    const Eigen::MatrixXd& q = sys.coupling();
    Eigen::MatrixXd h = hamiltonian_matrix(sys) + 0.5 * coupling * cutoff * (q * q);
    h = 0.5 * (h + h.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
    if (eig.info() != Eigen::Success) throw NumericalFailure("renormalization eigensolver failed");

    Eigen::MatrixXd v = eig.eigenvectors();
    for (Eigen::Index k = 0; k < v.cols(); ++k) {
        Eigen::Index imax = 0;
        v.col(k).cwiseAbs().maxCoeff(&imax);
        if (v(imax, k) < 0.0) v.col(k) = -v.col(k);
    }
    Eigen::MatrixXd q_new = v.transpose() * q * v;
    q_new = 0.5 * (q_new + q_new.transpose()).eval();
    return NLevelSystem(eig.eigenvalues(), q_new, sys.label());
}

NLevelSystem load_system_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw IoError("cannot open system file '" + path + "'");
    std::stringstream cleaned;
    for (std::string line; std::getline(in, line);) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        cleaned << line << '\n';
    }
    int n = 0;
    if (!(cleaned >> n) || n < 1) throw IoError("system file '" + path + "': bad level count");
    Eigen::VectorXd e(n);
    Eigen::MatrixXd q(n, n);
    for (int i = 0; i < n; ++i)
        if (!(cleaned >> e(i))) throw IoError("system file '" + path + "': expected " + std::to_string(n) + " energies");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!(cleaned >> q(i, j)))
                throw IoError("system file '" + path + "': expected " + std::to_string(n * n) + " coupling entries");
    std::string extra;
    if (cleaned >> extra) throw IoError("system file '" + path + "': trailing data '" + extra + "'");
    return NLevelSystem(e, q, path);
}

void save_system_file(const NLevelSystem& sys, const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw IoError("cannot write system file '" + path + "'");
    out << std::setprecision(17);
    out << "# " << sys.label() << "\n" << sys.size() << "\n";
    for (int i = 0; i < sys.size(); ++i) out << sys.energies()(i) << (i + 1 < sys.size() ? ' ' : '\n');
    for (int i = 0; i < sys.size(); ++i)
        for (int j = 0; j < sys.size(); ++j) out << sys.coupling()(i, j) << (j + 1 < sys.size() ? ' ' : '\n');
}

}  // namespace ccqme
