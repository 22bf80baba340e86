#include "wtc2/gaussian_model.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "wtc2/errors.hpp"
#include "wtc2/gaussian_mi.hpp"

namespace wtc2 {
namespace {

void require_nonneg(double v, const char* name)
{
    if (!std::isfinite(v) || v < 0.0) {
        throw ParameterError(std::string(name) + " must be finite and >= 0, got " + std::to_string(v));
    }
}

// 1/2 log2(1 + num/den), exactly 0 when num == 0.
double half_log2_1p(double num, double den)
{
    if (num <= 0.0) {
        return 0.0;
    }
    return 0.5 * std::log1p(num / den) / std::numbers::ln2;
}

// Linear map from the seven independent sources to all twelve variables.
Eigen::MatrixXd mixing_matrix(const ChannelParams& p)
{
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(kJointVarCount, 7);
    for (int s = 0; s < 7; ++s) {
        L(s, s) = 1.0;
    }
    // X1 = C1 + N11, X2 = C2 + N22
    L(kX1, kC1) = 1.0;
    L(kX1, kN11) = 1.0;
    L(kX2, kC2) = 1.0;
    L(kX2, kN22) = 1.0;
    const double sg1 = std::sqrt(p.g1);
    const double sg2 = std::sqrt(p.g2);
    const double sh1 = std::sqrt(p.h1);
    const double sh2 = std::sqrt(p.h2);
    L.row(kY1) = sg1 * L.row(kX1) + L.row(kX2);
    L(kY1, kN21) = 1.0;
    L.row(kY2) = L.row(kX1) + sg2 * L.row(kX2);
    L(kY2, kN12) = 1.0;
    L.row(kZ) = sh1 * L.row(kX1) + sh2 * L.row(kX2);
    L(kZ, kNe) = 1.0;
    return L;
}

Eigen::VectorXd source_variances(const ChannelParams& p, const PowerSplit& s)
{
    Eigen::VectorXd v(7);
    v << s.rho1c(p), s.rho2c(p), s.rho1n, s.rho2n, 1.0, 1.0, 1.0;
    return v;
}

struct QuantitySets {
    std::vector<int> a, b, c;
};

QuantitySets sets_for(MiQuantity q)
{
    switch (q) {
    case MiQuantity::a1: return {{kY2}, {kC1}, {kX2}};
    case MiQuantity::a2: return {{kY1}, {kC2}, {kX1}};
    case MiQuantity::e1: return {{kC1}, {kZ}, {}};
    case MiQuantity::e2: return {{kC2}, {kZ}, {}};
    case MiQuantity::e12: return {{kC1, kC2}, {kZ}, {}};
    case MiQuantity::e1c: return {{kC1}, {kZ}, {kC2}};
    case MiQuantity::e2c: return {{kC2}, {kZ}, {kC1}};
    }
    return {};
}

}  // namespace

void ChannelParams::validate() const
{
    require_nonneg(g1, "g1");
    require_nonneg(g2, "g2");
    require_nonneg(h1, "h1");
    require_nonneg(h2, "h2");
    require_nonneg(rho1, "rho1");
    require_nonneg(rho2, "rho2");
}

void PowerSplit::validate(const ChannelParams& p) const
{
    require_nonneg(rho1n, "rho1n");
    require_nonneg(rho2n, "rho2n");
    if (rho1n > p.rho1 || rho2n > p.rho2) {
        throw ParameterError("jamming power exceeds the user's power budget");
    }
}

bool MiProfile::consistent(double tol) const
{
    for (double v : {a1, a2, e1, e2, e12, e1c, e2c}) {
        if (!(v >= -tol)) return false;
    }
    return std::abs(e12 - (e1 + e2c)) <= tol && std::abs(e12 - (e2 + e1c)) <= tol;
}

std::string_view to_string(MiQuantity q)
{
    switch (q) {
    case MiQuantity::a1: return "a1";
    case MiQuantity::a2: return "a2";
    case MiQuantity::e1: return "e1";
    case MiQuantity::e2: return "e2";
    case MiQuantity::e12: return "e12";
    case MiQuantity::e1c: return "e1c";
    case MiQuantity::e2c: return "e2c";
    }
    return "?";
}

double get(const MiProfile& mi, MiQuantity q)
{
    switch (q) {
    case MiQuantity::a1: return mi.a1;
    case MiQuantity::a2: return mi.a2;
    case MiQuantity::e1: return mi.e1;
    case MiQuantity::e2: return mi.e2;
    case MiQuantity::e12: return mi.e12;
    case MiQuantity::e1c: return mi.e1c;
    case MiQuantity::e2c: return mi.e2c;
    }
    return 0.0;
}

MiProfile mi_profile(const ChannelParams& params, const PowerSplit& split)
{
    params.validate();
    split.validate(params);

    const double c1 = split.rho1c(params);
    const double c2 = split.rho2c(params);
    const double n1 = split.rho1n;
    const double n2 = split.rho2n;
    const double h1 = params.h1;
    const double h2 = params.h2;

    MiProfile mi;
    mi.a1 = half_log2_1p(c1, 1.0 + n1);
    mi.a2 = half_log2_1p(c2, 1.0 + n2);
    // Eve's noise floor with both jamming noises present; the other user's
    // codeword is noise for the single-user terms.
    const double floor_both = h1 * n1 + h2 * n2 + 1.0;
    mi.e1 = half_log2_1p(h1 * c1, h1 * n1 + h2 * params.rho2 + 1.0);
    mi.e2 = half_log2_1p(h2 * c2, h1 * params.rho1 + h2 * n2 + 1.0);
    mi.e12 = half_log2_1p(h1 * c1 + h2 * c2, floor_both);
    mi.e1c = half_log2_1p(h1 * c1, floor_both);
    mi.e2c = half_log2_1p(h2 * c2, floor_both);
    return mi;
}

Eigen::MatrixXd joint_covariance(const ChannelParams& params, const PowerSplit& split)
{
    params.validate();
    split.validate(params);
    const Eigen::MatrixXd L = mixing_matrix(params);
    const Eigen::VectorXd v = source_variances(params, split);
    return L * v.asDiagonal() * L.transpose();
}

double mi_oracle(const ChannelParams& params, const PowerSplit& split, MiQuantity quantity,
                 OracleDiagnostics* diag)
{
    const Eigen::MatrixXd cov = joint_covariance(params, split);
    const QuantitySets s = sets_for(quantity);
    bool floored = false;
    double bits = gaussian_cond_mi_bits(cov, s.a, s.b, s.c, &floored);
    if (diag) diag->floored = floored;
    return bits < 0.0 ? 0.0 : bits;
}

double mi_monte_carlo(const ChannelParams& params, const PowerSplit& split, MiQuantity quantity,
                      std::size_t samples, std::uint64_t seed)
{
    params.validate();
    split.validate(params);
    if (samples < 2) {
        throw ParameterError("monte-carlo estimator needs at least two samples");
    }
    const Eigen::MatrixXd L = mixing_matrix(params);
    const Eigen::VectorXd sd = source_variances(params, split).cwiseSqrt();

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd src(7);
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(kJointVarCount);
    Eigen::MatrixXd outer = Eigen::MatrixXd::Zero(kJointVarCount, kJointVarCount);
    for (std::size_t k = 0; k < samples; ++k) {
        for (int s = 0; s < 7; ++s) {
            src(s) = sd(s) * normal(rng);
        }
        const Eigen::VectorXd x = L * src;
        sum += x;
        outer.selfadjointView<Eigen::Lower>().rankUpdate(x);
    }
    const double n = static_cast<double>(samples);
    Eigen::MatrixXd cov = outer.selfadjointView<Eigen::Lower>();
    const Eigen::VectorXd mean = sum / n;
    cov = (cov - n * mean * mean.transpose()) / (n - 1.0);

    const QuantitySets s = sets_for(quantity);
    const double bits = gaussian_cond_mi_bits(cov, s.a, s.b, s.c);
    return bits < 0.0 ? 0.0 : bits;
}

InducedDmsCov induced_dms_cov(const ChannelParams& params, const PowerSplit& split)
{
    params.validate();
    split.validate(params);
    using I = InducedDmsCov;

    // Sources: N11, N22, N21, N12, Ne.
    Eigen::Matrix<double, 5, 5> L = Eigen::Matrix<double, 5, 5>::Zero();
    L(I::kX1, 0) = 1.0;
    L(I::kX2, 1) = 1.0;
    L(I::kY1, 1) = 1.0;
    L(I::kY1, 2) = 1.0;
    L(I::kY2, 0) = 1.0;
    L(I::kY2, 3) = 1.0;
    L(I::kZ, 0) = std::sqrt(params.h1);
    L(I::kZ, 1) = std::sqrt(params.h2);
    L(I::kZ, 4) = 1.0;
    Eigen::Matrix<double, 5, 1> v;
    v << split.rho1n, split.rho2n, 1.0, 1.0, 1.0;

    InducedDmsCov out;
    out.cov = L * v.asDiagonal() * L.transpose();
    out.h1 = params.h1;
    out.h2 = params.h2;
    return out;
}

}  // namespace wtc2
