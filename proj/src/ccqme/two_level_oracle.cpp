#include "ccqme/two_level_oracle.hpp"

#include "ccqme/errors.hpp"

namespace ccqme {

namespace {

using Eigen::Matrix2cd;

struct Rates {
    cplx t0, tp, tm;  // T(0), T(+delta), T(-delta)
};

struct Blocks {
    Matrix2cd a, b, c, d;
};

// Each entry spelled out; no matrix products.
Blocks redfield_blocks(const Rates& t, double q00, double q, double q11, const Matrix2cd& r)
{
    const cplx r00 = r(0, 0), r01 = r(0, 1), r10 = r(1, 0), r11 = r(1, 1);
    const cplx t0 = t.t0, tp = t.tp, tm = t.tm;
    const cplx t0c = std::conj(t0), tpc = std::conj(tp), tmc = std::conj(tm);
    Blocks m;

    m.a(0, 0) = t0 * (q00 * q00 * r00 + q00 * q * r01) + tm * (q * q00 * r10 + q * q * r11);
    m.a(0, 1) = t0 * (q00 * q * r00 + q00 * q11 * r01) + tm * (q * q * r10 + q * q11 * r11);
    m.a(1, 0) = tp * (q * q00 * r00 + q * q * r01) + t0 * (q11 * q00 * r10 + q11 * q * r11);
    m.a(1, 1) = tp * (q * q * r00 + q * q11 * r01) + t0 * (q11 * q * r10 + q11 * q11 * r11);

    m.b(0, 0) = t0c * (q00 * q00 * r00 + q * q00 * r10) + tmc * (q * q00 * r01 + q * q * r11);
    m.b(0, 1) = tpc * (q * q00 * r00 + q * q * r10) + t0c * (q00 * q11 * r01 + q * q11 * r11);
    m.b(1, 0) = t0c * (q * q00 * r00 + q00 * q11 * r10) + tmc * (q * q * r01 + q * q11 * r11);
    m.b(1, 1) = tpc * (q * q * r00 + q * q11 * r10) + t0c * (q * q11 * r01 + q11 * q11 * r11);

    m.c(0, 0) = t0 * (q00 * q00 * r00 + q * q11 * r10) + tp * (q * q * r00) + tm * (q * q00 * r10);
    m.c(0, 1) = t0 * (q00 * q00 * r01 + q * q11 * r11) + tp * (q * q * r01) + tm * (q * q00 * r11);
    m.c(1, 0) = t0 * (q * q00 * r00 + q11 * q11 * r10) + tp * (q * q11 * r00) + tm * (q * q * r10);
    m.c(1, 1) = t0 * (q * q00 * r01 + q11 * q11 * r11) + tp * (q * q11 * r01) + tm * (q * q * r11);

    m.d(0, 0) = t0c * (q00 * q00 * r00 + q * q11 * r01) + tpc * (q * q * r00) + tmc * (q * q00 * r01);
    m.d(0, 1) = t0c * (q * q00 * r00 + q11 * q11 * r01) + tpc * (q * q11 * r00) + tmc * (q * q * r01);
    m.d(1, 0) = t0c * (q00 * q00 * r10 + q * q11 * r11) + tpc * (q * q * r10) + tmc * (q * q00 * r11);
    m.d(1, 1) = t0c * (q * q00 * r10 + q11 * q11 * r11) + tpc * (q * q11 * r10) + tmc * (q * q * r11);
    return m;
}

}  // namespace

TwoLevelTerms two_level_oracle(const TwoLevelInputs& in, const BathSpec& bath)
{
    const double delta = in.e1 - in.e0;
    if (!(delta > 0.0)) throw InvalidInput("two-level oracle requires e1 > e0");
    const double q00 = in.q00, q = in.q01, q11 = in.q11;
    const Rates t{tunneling_rate(bath, 0.0), tunneling_rate(bath, delta), tunneling_rate(bath, -delta)};
    const cplx dtp = tunneling_rate_derivative(bath, delta);   // at delta_10
    const cplx dtm = tunneling_rate_derivative(bath, -delta);  // at delta_01
    const cplx i(0.0, 1.0);

    TwoLevelTerms out;
    out.convolution << q00 * t.t0, q * t.tm, q * t.tp, q11 * t.t0;
    out.convolution_adjoint << q00 * std::conj(t.t0), q * std::conj(t.tp), q * std::conj(t.tm), q11 * std::conj(t.t0);

    const Blocks blk = redfield_blocks(t, q00, q, q11, in.rho);
    out.a = blk.a;
    out.b = blk.b;
    out.c = blk.c;
    out.d = blk.d;
    out.redfield = blk.a + blk.b - blk.c - blk.d;

    out.map_01 = -1.0 / (i * delta) * out.redfield(0, 1);
    out.map_10 = +1.0 / (i * delta) * out.redfield(1, 0);

    const cplx r00 = in.rho(0, 0), r11 = in.rho(1, 1);
    out.energy_derivative_0 = (dtm.real() * r11 + dtp.real() * r00) / t.tp.real();
    out.energy_derivative_1 = (dtp.real() * r00 + dtm.real() * r11) / t.tm.real();
    out.map_00 = q * q * (dtm.imag() * r11 - dtp.imag() * r00 + t.tp.imag() * out.energy_derivative_0);
    out.map_11 = q * q * (dtp.imag() * r00 - dtm.imag() * r11 + t.tm.imag() * out.energy_derivative_1);

    out.corrected(0, 0) = in.rho(0, 0) - out.map_00;
    out.corrected(1, 1) = in.rho(1, 1) - out.map_11;
    out.corrected(0, 1) = in.rho(0, 1) + 1.0 / (i * delta) * out.redfield(0, 1);
    out.corrected(1, 0) = in.rho(1, 0) - 1.0 / (i * delta) * out.redfield(1, 0);

    out.redfield_rhs = out.redfield;
    out.redfield_rhs(0, 1) += i * delta * in.rho(0, 1);
    out.redfield_rhs(1, 0) += -i * delta * in.rho(1, 0);

    const Blocks blk2 = redfield_blocks(t, q00, q, q11, out.corrected);
    const Matrix2cd rc = blk2.a + blk2.b - blk2.c - blk2.d;
    out.ccqme_rhs(0, 0) = rc(0, 0);
    out.ccqme_rhs(0, 1) = i * delta * in.rho(0, 1) + rc(0, 1);
    out.ccqme_rhs(1, 0) = -i * delta * in.rho(1, 0) + rc(1, 0);
    out.ccqme_rhs(1, 1) = rc(1, 1);
    return out;
}

}  // namespace ccqme
