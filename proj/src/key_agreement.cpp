#include "wtc2/key_agreement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wtc2/errors.hpp"

namespace wtc2 {
namespace {

// I(A;B) in bits from the 2x2 block of a covariance: 1/2 log2 det(diag)/det(block).
double pair_mi_bits(const Eigen::Matrix4d& cov, int a, int b)
{
    const double va = cov(a, a);
    const double vb = cov(b, b);
    const double cab = cov(a, b);
    const double det = va * vb - cab * cab;
    if (va <= 0.0 || vb <= 0.0) return 0.0;
    return 0.5 * std::log2(va * vb / det);
}

enum { kSx, kSy, kSz, kSv };

}  // namespace

void ScalarDegradedSource::validate() const
{
    if (!(var_x >= 0.0) || !(noise_y > 0.0) || !(eve_noise > 0.0) || !std::isfinite(eve_gain) ||
        !std::isfinite(var_x)) {
        throw ParameterError("scalar source needs var_x >= 0, noise_y > 0, eve_noise > 0");
    }
}

Eigen::Matrix4d ScalarDegradedSource::covariance_with_test_channel(double t) const
{
    const double s = var_x;
    const double c = eve_gain;
    Eigen::Matrix4d m;
    // clang-format off
    m << s,     s,              c * s,             s,
         s,     s + noise_y,    c * s,             s + noise_y,
         c * s, c * s,          c * c * s + eve_noise, c * s,
         s,     s + noise_y,    c * s,             s + noise_y + t;
    // clang-format on
    return m;
}

ScalarDegradedSource reduce_dms(const InducedDmsCov& dms, Chain chain)
{
    using I = InducedDmsCov;
    ScalarDegradedSource src;
    src.noise_y = 1.0;
    if (chain == Chain::A) {
        src.var_x = dms.var(I::kX1);
        src.eve_gain = std::sqrt(dms.h1);
        src.eve_noise = dms.h2 * dms.var(I::kX2) + 1.0;
    } else {
        src.var_x = dms.var(I::kX2);
        src.eve_gain = std::sqrt(dms.h2);
        src.eve_noise = dms.h1 * dms.var(I::kX1) + 1.0;
    }
    if (!(src.var_x > 0.0)) {
        throw SourceAbsentError(std::string("chain ") + (chain == Chain::A ? "A" : "B") +
                                " has no jamming noise: the hidden variable has zero variance");
    }
    return src;
}

KeyRatePoint key_rate_point(const ScalarDegradedSource& src, double t)
{
    src.validate();
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw ParameterError("test-channel noise variance must be finite and > 0");
    }
    const Eigen::Matrix4d cov = src.covariance_with_test_channel(t);
    const double iv_y = pair_mi_bits(cov, kSv, kSy);
    const double iv_x = pair_mi_bits(cov, kSv, kSx);
    const double iv_z = pair_mi_bits(cov, kSv, kSz);
    return {iv_y - iv_x, std::max(0.0, iv_x - iv_z)};
}

double unlimited_key_rate(const ScalarDegradedSource& src)
{
    src.validate();
    const Eigen::Matrix4d cov = src.covariance_with_test_channel(1.0);
    return std::max(0.0, pair_mi_bits(cov, kSy, kSx) - pair_mi_bits(cov, kSy, kSz));
}

KeyRateCurve::KeyRateCurve(std::vector<KeyRatePoint> pts)
{
    pts.push_back({0.0, 0.0});
    for (auto& p : pts) {
        p.rp = std::max(0.0, p.rp);
        p.rk = std::max(0.0, p.rk);
    }
    std::sort(pts.begin(), pts.end(), [](const KeyRatePoint& a, const KeyRatePoint& b) {
        return a.rp < b.rp || (a.rp == b.rp && a.rk > b.rk);
    });

    // Upper concave hull starting at the origin; time sharing between test
    // channels makes every point on it achievable.
    std::vector<KeyRatePoint> hull;
    for (const auto& p : pts) {
        if (!hull.empty() && p.rp == hull.back().rp) continue;
        while (hull.size() >= 2) {
            const auto& o = hull[hull.size() - 2];
            const auto& a = hull.back();
            const double cr = (a.rp - o.rp) * (p.rk - o.rk) - (a.rk - o.rk) * (p.rp - o.rp);
            if (cr >= 0.0) {
                hull.pop_back();
            } else {
                break;
            }
        }
        hull.push_back(p);
    }
    // Keep the nondecreasing part; the curve is flat after its maximum.
    auto peak = std::max_element(hull.begin(), hull.end(),
                                 [](const KeyRatePoint& a, const KeyRatePoint& b) { return a.rk < b.rk; });
    hull.erase(std::next(peak), hull.end());
    pts_ = std::move(hull);
}

double KeyRateCurve::at(double rp) const
{
    if (rp <= 0.0) return pts_.front().rk;
    if (rp >= pts_.back().rp) return pts_.back().rk;
    auto it = std::upper_bound(pts_.begin(), pts_.end(), rp,
                               [](double v, const KeyRatePoint& p) { return v < p.rp; });
    const auto& hi = *it;
    const auto& lo = *std::prev(it);
    const double w = (rp - lo.rp) / (hi.rp - lo.rp);
    return lo.rk + w * (hi.rk - lo.rk);
}

double KeyRateCurve::max_key_rate() const
{
    return pts_.back().rk;
}

double KeyRateCurve::public_rate_for(double rk) const
{
    if (rk <= pts_.front().rk) return pts_.front().rp;
    if (rk >= pts_.back().rk) return pts_.back().rp;
    auto it = std::lower_bound(pts_.begin(), pts_.end(), rk,
                               [](const KeyRatePoint& p, double v) { return p.rk < v; });
    const auto& hi = *it;
    const auto& lo = *std::prev(it);
    const double w = (rk - lo.rk) / (hi.rk - lo.rk);
    return lo.rp + w * (hi.rp - lo.rp);
}

KeyRatePoint KeyRateCurve::best_with_shared_budget(double budget) const
{
    if (!(budget > 0.0)) return {0.0, 0.0};
    // at(rp) + rp is strictly increasing; the optimum sits where it equals the budget.
    for (std::size_t i = 0; i + 1 < pts_.size(); ++i) {
        const double h_hi = pts_[i + 1].rk + pts_[i + 1].rp;
        if (budget <= h_hi) {
            const double h_lo = pts_[i].rk + pts_[i].rp;
            const double w = (budget - h_lo) / (h_hi - h_lo);
            const double rp = pts_[i].rp + w * (pts_[i + 1].rp - pts_[i].rp);
            return {rp, std::clamp(budget - rp, 0.0, pts_[i + 1].rk)};
        }
    }
    const KeyRatePoint& last = pts_.back();
    if (budget <= last.rp) return {budget, 0.0};  // flat-zero curve
    return {last.rp, std::min(last.rk, budget - last.rp)};
}

KeyRateCurve key_rate_curve(const ScalarDegradedSource& src, int count)
{
    src.validate();
    std::vector<KeyRatePoint> pts;
    if (src.var_x > 0.0 && count > 0) {
        pts.reserve(count);
        for (int k = 0; k < count; ++k) {
            const double expo = count == 1 ? 0.0 : -6.0 + 12.0 * k / (count - 1);
            pts.push_back(key_rate_point(src, src.var_x * std::pow(10.0, expo)));
        }
    }
    return KeyRateCurve(std::move(pts));
}

std::vector<KeyRatePoint> sample_curve(const KeyRateCurve& curve, std::span<const double> rp_grid)
{
    std::vector<KeyRatePoint> out;
    out.reserve(rp_grid.size());
    for (double rp : rp_grid) {
        if (!(rp >= 0.0)) throw ParameterError("public rates must be >= 0");
        out.push_back({rp, curve.at(rp)});
    }
    return out;
}

}  // namespace wtc2
