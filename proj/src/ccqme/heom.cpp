#include "ccqme/heom.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SparseLU>

#include "ccqme/errors.hpp"

namespace ccqme {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

namespace {

constexpr cplx I{0.0, 1.0};

void enumerate(int k, int depth, std::vector<int>& current, int pos, int used, std::vector<std::vector<int>>& out)
{
    if (pos == k) {
        out.push_back(current);
        return;
    }
    for (int v = 0; v + used <= depth; ++v) {
        current[pos] = v;
        enumerate(k, depth, current, pos + 1, used + v, out);
    }
    current[pos] = 0;
}

int total(const std::vector<int>& idx)
{
    int s = 0;
    for (int v : idx) s += v;
    return s;
}

}  // namespace

std::vector<BathExponent> bath_exponents(const BathSpec& bath, int count)
{
    if (count < 1) throw InvalidInput("need at least one bath exponential");
    std::vector<BathExponent> out;
    out.push_back({bath.drude_prefactor(), bath.cutoff()});
    for (int n = 1; n < count; ++n) out.push_back({cplx(bath.matsubara_prefactor(n)), bath.matsubara_frequency(n)});
    return out;
}

HeomGenerator::HeomGenerator(const NLevelSystem& sys, const BathSpec& bath, const HeomConfig& cfg)
    : n_(sys.size()), cfg_(cfg)
{
    if (cfg.depth < 1) throw InvalidInput("HEOM depth must be at least 1");
    if (cfg.n_exponentials < 1) throw InvalidInput("HEOM needs at least one exponential");
    const int k = cfg.n_exponentials;
    exponents_ = bath_exponents(bath, k);
    for (const auto& e : exponents_) scale_.push_back(std::abs(e.coefficient) > 0.0 ? std::abs(e.coefficient) : 1.0);

    std::vector<int> cur(k, 0);
    enumerate(k, cfg.depth, cur, 0, 0, indices_);
    std::stable_sort(indices_.begin(), indices_.end(), [](const auto& a, const auto& b) {
        const int sa = total(a), sb = total(b);
        return sa != sb ? sa < sb : a < b;
    });
    for (int i = 0; i < n_ados(); ++i) lookup_.emplace(indices_[i], i);

    up_.assign(n_ados(), std::vector<int>(k, -1));
    down_.assign(n_ados(), std::vector<int>(k, -1));
    damping_.assign(n_ados(), 0.0);
    for (int i = 0; i < n_ados(); ++i) {
        for (int j = 0; j < k; ++j) {
            auto idx = indices_[i];
            damping_[i] += idx[j] * exponents_[j].rate;
            ++idx[j];
            up_[i][j] = position(idx);
            idx[j] -= 2;
            if (idx[j] >= 0) down_[i][j] = position(idx);
        }
    }

    const int n = n_;
    q_ = sys.coupling().cast<cplx>();
    const RowMatrix h = sys.energies().cast<cplx>().asDiagonal();
    left_ = -I * h;
    right_ = I * h;
    jump_l_ = RowMatrix::Zero(n, n);
    jump_r_ = RowMatrix::Zero(n, n);

    if (cfg.terminator == Terminator::resolved && bath.coupling() > 0.0) {
        const Eigen::MatrixXd d = bohr_frequencies(sys);
        RowMatrix tk(n, n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) tk(a, b) = matsubara_remainder(bath, d(a, b), k - 1) * q_(a, b);
        const RowMatrix tkd = tk.adjoint();
        left_ -= q_ * tk;
        right_ -= tkd * q_;
        jump_l_ = tk;
        jump_r_ = tkd;
    } else if (cfg.terminator == Terminator::white && bath.coupling() > 0.0) {
        const double w = matsubara_remainder(bath, 0.0, k - 1).real();
        const RowMatrix q2 = q_ * q_;
        left_ -= w * q2;
        right_ -= w * q2;
        jump_l_ = w * q_;
        jump_r_ = w * q_;
    }
}

int HeomGenerator::position(const std::vector<int>& index) const
{
    auto it = lookup_.find(index);
    return it == lookup_.end() ? -1 : it->second;
}

void HeomGenerator::apply(const VectorXcd& x, VectorXcd& out) const
{
    const int n = n_;
    const int n2 = n * n;
    const int m = n_ados();
    const int k = cfg_.n_exponentials;
    out.resize(x.size());

    VectorXcd qx(x.size()), xq(x.size());
    for (int i = 0; i < m; ++i) {
        Eigen::Map<const RowMatrix> rho(x.data() + i * n2, n, n);
        Eigen::Map<RowMatrix>(qx.data() + i * n2, n, n).noalias() = q_ * rho;
        Eigen::Map<RowMatrix>(xq.data() + i * n2, n, n).noalias() = rho * q_;
    }

    for (int i = 0; i < m; ++i) {
        Eigen::Map<const RowMatrix> rho(x.data() + i * n2, n, n);
        Eigen::Map<const RowMatrix> q_rho(qx.data() + i * n2, n, n);
        Eigen::Map<const RowMatrix> rho_q(xq.data() + i * n2, n, n);
        Eigen::Map<RowMatrix> d(out.data() + i * n2, n, n);
        d.noalias() = left_ * rho;
        d.noalias() += rho * right_;
        d.noalias() += jump_l_ * rho_q;
        d.noalias() += q_rho * jump_r_;
        d -= damping_[i] * rho;
        const auto& idx = indices_[i];
        for (int j = 0; j < k; ++j) {
            if (int u = up_[i][j]; u >= 0) {
                const cplx s = -I * std::sqrt((idx[j] + 1) * scale_[j]);
                d += s * (Eigen::Map<const RowMatrix>(qx.data() + u * n2, n, n) -
                          Eigen::Map<const RowMatrix>(xq.data() + u * n2, n, n));
            }
            if (int w = down_[i][j]; w >= 0) {
                const cplx s = -I * std::sqrt(idx[j] / scale_[j]);
                const cplx c = exponents_[j].coefficient;
                d += (s * c) * Eigen::Map<const RowMatrix>(qx.data() + w * n2, n, n) -
                     (s * std::conj(c)) * Eigen::Map<const RowMatrix>(xq.data() + w * n2, n, n);
            }
        }
    }
}

Eigen::SparseMatrix<cplx> HeomGenerator::assemble() const
{
    const int n = n_;
    const int n2 = n * n;
    const int m = n_ados();
    const MatrixXcd id = MatrixXcd::Identity(n, n);
    const MatrixXcd q = q_;
    const MatrixXcd qt = q.transpose();
    const MatrixXcd local = kron(left_, id) + kron(id, MatrixXcd(right_.transpose())) +
                            kron(jump_l_, qt) + kron(q, MatrixXcd(jump_r_.transpose()));
    const MatrixXcd q_left = kron(q, id);
    const MatrixXcd q_right = kron(id, qt);

    std::vector<Eigen::Triplet<cplx>> trip;
    auto put = [&](int bi, int bj, const MatrixXcd& block) {
        for (int a = 0; a < n2; ++a)
            for (int b = 0; b < n2; ++b)
                if (block(a, b) != cplx(0.0)) trip.emplace_back(bi * n2 + a, bj * n2 + b, block(a, b));
    };
    for (int i = 0; i < m; ++i) {
        put(i, i, local - damping_[i] * MatrixXcd::Identity(n2, n2));
        const auto& idx = indices_[i];
        for (int j = 0; j < cfg_.n_exponentials; ++j) {
            if (int u = up_[i][j]; u >= 0) put(i, u, (-I * std::sqrt((idx[j] + 1) * scale_[j])) * (q_left - q_right));
            if (int w = down_[i][j]; w >= 0) {
                const cplx c = exponents_[j].coefficient;
                put(i, w, (-I * std::sqrt(idx[j] / scale_[j])) * (c * q_left - std::conj(c) * q_right));
            }
        }
    }
    Eigen::SparseMatrix<cplx> g(m * n2, m * n2);
    g.setFromTriplets(trip.begin(), trip.end());
    return g;
}

namespace {

double max_abs(const VectorXcd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

VectorXcd propagate_to_stationarity(const HeomGenerator& gen, VectorXcd x)
{
    // Fixed-step RK4; stops once the derivative is negligible.
    const double dt = 5.0;
    const long max_steps = 20'000'000;
    VectorXcd k1, k2, k3, k4, tmp;
    for (long step = 0; step < max_steps; ++step) {
        gen.apply(x, k1);
        if (step % 1000 == 0 && max_abs(k1) < 1e-14) return x;
        tmp = x + 0.5 * dt * k1;
        gen.apply(tmp, k2);
        tmp = x + 0.5 * dt * k2;
        gen.apply(tmp, k3);
        tmp = x + dt * k3;
        gen.apply(tmp, k4);
        x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!x.allFinite()) throw NumericalFailure("HEOM propagation diverged at t = " + std::to_string(step * dt));
    }
    VectorXcd r;
    gen.apply(x, r);
    throw NumericalFailure("HEOM propagation did not reach stationarity; residual " + std::to_string(max_abs(r)));
}

}  // namespace

HeomSteadyState heom_steady_state(const NLevelSystem& sys, const BathSpec& bath, const HeomConfig& cfg,
                                  SteadyStateMethod method)
{
    if (bath.coupling() == 0.0)
        throw NotAvailable("no steady state without system-bath coupling: the dynamics has no relaxation");
    const HeomGenerator gen(sys, bath, cfg);
    const int n = sys.size();
    VectorXcd x;
    if (method == SteadyStateMethod::direct) {
        Eigen::SparseMatrix<cplx, Eigen::RowMajor> g = gen.assemble();
        // Replace the first population equation of the root by the trace condition.
        for (Eigen::SparseMatrix<cplx, Eigen::RowMajor>::InnerIterator it(g, 0); it; ++it) it.valueRef() = 0.0;
        Eigen::SparseMatrix<cplx> a = g;
        std::vector<Eigen::Triplet<cplx>> trace;
        for (int i = 0; i < n; ++i) trace.emplace_back(0, i * n + i, 1.0);
        Eigen::SparseMatrix<cplx> t(a.rows(), a.cols());
        t.setFromTriplets(trace.begin(), trace.end());
        a += t;
        a.prune(cplx(0.0));
        a.makeCompressed();
        Eigen::SparseLU<Eigen::SparseMatrix<cplx>, Eigen::COLAMDOrdering<int>> lu;
        lu.compute(a);
        if (lu.info() != Eigen::Success) throw NumericalFailure("HEOM steady-state factorization failed: " + lu.lastErrorMessage());
        VectorXcd rhs = VectorXcd::Zero(a.rows());
        rhs(0) = 1.0;
        x = lu.solve(rhs);
        if (lu.info() != Eigen::Success) throw NumericalFailure("HEOM steady-state solve failed");
    } else {
        MatrixXcd rho0 = MatrixXcd::Identity(n, n) / double(n);
        x = propagate_to_stationarity(gen, gen.embed(rho0));
    }
    VectorXcd r;
    gen.apply(x, r);
    HeomSteadyState out;
    out.residual = max_abs(r);
    MatrixXcd rho = gen.physical(x);
    out.rho = 0.5 * (rho + rho.adjoint());
    return out;
}

}  // namespace ccqme
