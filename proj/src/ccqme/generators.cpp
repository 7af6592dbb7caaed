#include "ccqme/generators.hpp"

#include <cmath>

#include "ccqme/errors.hpp"

namespace ccqme {

using Eigen::MatrixXcd;

namespace {

void require_same_dim(const Superoperator& a, const Superoperator& b)
{
    if (a.dim != b.dim) throw InvalidInput("superoperator dimensions differ");
}

}  // namespace

MatrixXcd Superoperator::apply(const MatrixXcd& rho) const
{
    if (rho.rows() != dim || rho.cols() != dim) throw InvalidInput("state dimension does not match superoperator");
    return unvectorize(matrix * vectorize(rho), dim);
}

Eigen::VectorXcd vectorize(const MatrixXcd& rho)
{
    const auto n = rho.rows();
    Eigen::VectorXcd v(n * rho.cols());
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < rho.cols(); ++j) v(i * rho.cols() + j) = rho(i, j);
    return v;
}

MatrixXcd unvectorize(const Eigen::VectorXcd& v, int n)
{
    if (v.size() != Eigen::Index(n) * n) throw InvalidInput("vector length is not N^2");
    MatrixXcd rho(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) rho(i, j) = v(i * n + j);
    return rho;
}

MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b)
{
    MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

MatrixXcd convolution_operator(const NLevelSystem& sys, const BathSpec& bath)
{
    const int n = sys.size();
    const Eigen::MatrixXd d = bohr_frequencies(sys);
    MatrixXcd k(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) k(i, j) = tunneling_rate(bath, d(i, j)) * sys.coupling()(i, j);
    return k;
}

MatrixXcd convolution_operator_t(const NLevelSystem& sys, const BathSpec& bath, double t)
{
    const int n = sys.size();
    const Eigen::MatrixXd d = bohr_frequencies(sys);
    MatrixXcd k(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) k(i, j) = tunneling_rate_t(bath, d(i, j), t) * sys.coupling()(i, j);
    return k;
}

Superoperator redfield_superoperator(const NLevelSystem& sys, const MatrixXcd& convolution, SuperoperatorKind kind)
{
    const int n = sys.size();
    if (convolution.rows() != n || convolution.cols() != n)
        throw InvalidInput("convolution operator and system dimensions differ");
    const MatrixXcd q = sys.coupling().cast<cplx>();
    const MatrixXcd id = MatrixXcd::Identity(n, n);
    const MatrixXcd& k = convolution;
    const MatrixXcd kd = k.adjoint();
    MatrixXcd s = kron(k, q.transpose()) - kron(q * k, id) + kron(q, kd.transpose()) - kron(id, (kd * q).transpose());
    return {n, std::move(s), kind};
}

Superoperator redfield_superoperator(const NLevelSystem& sys, const BathSpec& bath)
{
    return redfield_superoperator(sys, convolution_operator(sys, bath));
}

Superoperator redfield_superoperator_t(const NLevelSystem& sys, const BathSpec& bath, double t)
{
    return redfield_superoperator(sys, convolution_operator_t(sys, bath, t), SuperoperatorKind::redfield_t);
}

Superoperator unitary_liouvillian(const NLevelSystem& sys)
{
    const int n = sys.size();
    const Eigen::MatrixXd d = bohr_frequencies(sys);
    MatrixXcd s = MatrixXcd::Zero(n * n, n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s(i * n + j, i * n + j) = cplx(0.0, -d(i, j));
    return {n, std::move(s), SuperoperatorKind::unitary};
}

Superoperator secularize(const Superoperator& sop, const NLevelSystem& sys, double tolerance)
{
    const int n = sys.size();
    if (sop.dim != n) throw InvalidInput("superoperator and system dimensions differ");
    const Eigen::MatrixXd d = bohr_frequencies(sys);
    Superoperator out = sop;
    for (int a = 0; a < n * n; ++a)
        for (int b = 0; b < n * n; ++b)
            if (!(std::abs(d(a / n, a % n) - d(b / n, b % n)) < tolerance)) out.matrix(a, b) = 0.0;
    return out;
}

double trace_annihilation_residual(const Superoperator& sop)
{
    const int n = sop.dim;
    Eigen::RowVectorXcd row = Eigen::RowVectorXcd::Zero(n * n);
    for (int i = 0; i < n; ++i) row += sop.matrix.row(i * n + i);
    return row.cwiseAbs().maxCoeff();
}

double hermiticity_residual(const Superoperator& sop)
{
    const int n = sop.dim;
    auto swap = [n](int a) { return (a % n) * n + a / n; };
    double worst = 0.0;
    for (int a = 0; a < n * n; ++a)
        for (int b = 0; b < n * n; ++b)
            worst = std::max(worst, std::abs(sop.matrix(a, b) - std::conj(sop.matrix(swap(a), swap(b)))));
    return worst;
}

Superoperator operator+(const Superoperator& a, const Superoperator& b)
{
    require_same_dim(a, b);
    return {a.dim, a.matrix + b.matrix, SuperoperatorKind::composite};
}

Superoperator operator*(const Superoperator& a, const Superoperator& b)
{
    require_same_dim(a, b);
    return {a.dim, a.matrix * b.matrix, SuperoperatorKind::composite};
}

}  // namespace ccqme
