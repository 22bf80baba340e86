#pragma once

#include <span>
#include <vector>

#include "wtc2/gaussian_model.hpp"

namespace wtc2 {

/// Which degraded scalar source is carved out of the induced source.
///  A: Y2~ <-> X1~ <-> Z~ (user 2 talks publicly, user 1 holds the hidden variable)
///  B: Y1~ <-> X2~ <-> Z~ (user 1 talks publicly, user 2 holds the hidden variable)
enum class Chain { A, B };

/// The user (1 or 2) who sends the public discussion for a chain.
inline int communicator(Chain c) { return c == Chain::A ? 2 : 1; }

/// Y~ = X~ + N_Y, Z~ = c X~ + W with X~, N_Y, W independent zero-mean Gaussians.
struct ScalarDegradedSource {
    double var_x = 0.0;
    double noise_y = 1.0;
    double eve_gain = 0.0;
    double eve_noise = 1.0;

    void validate() const;
    /// Covariance of (X~, Y~, Z~, V) with V = Y~ + T, Var(T) = t.
    Eigen::Matrix4d covariance_with_test_channel(double t) const;
};

ScalarDegradedSource reduce_dms(const InducedDmsCov& dms, Chain chain);

struct KeyRatePoint {
    double rp = 0.0;  ///< public rate I(V;Y~) - I(V;X~)
    double rk = 0.0;  ///< key rate I(V;X~) - I(V;Z~), clamped at 0
};

/// One test channel V = Y~ + T with Var(T) = t (U constant).
KeyRatePoint key_rate_point(const ScalarDegradedSource& src, double t);

/// Key rate as a function of public rate: upper concave nondecreasing envelope
/// of the test-channel points, piecewise linear between breakpoints.
class KeyRateCurve {
public:
    KeyRateCurve() = default;
    explicit KeyRateCurve(std::vector<KeyRatePoint> breakpoints);

    /// Envelope value at public rate rp >= 0 (flat beyond the last breakpoint).
    double at(double rp) const;
    /// Largest key rate the curve reaches.
    double max_key_rate() const;
    /// Smallest public rate at which the curve reaches key rate `rk`
    /// (rk is clamped to the curve's maximum).
    double public_rate_for(double rk) const;
    /// Maximizes min(at(rp), budget - rp) over rp in [0, budget]: one user
    /// pays both the public discussion and the encrypted increment.
    KeyRatePoint best_with_shared_budget(double budget) const;

    const std::vector<KeyRatePoint>& breakpoints() const { return pts_; }

private:
    std::vector<KeyRatePoint> pts_{{0.0, 0.0}};
};

/// Number of log-spaced test-noise variances swept when building a curve.
inline constexpr int kTestChannelCount = 100;

/// Curve from `count` test-noise variances log-spaced in
/// [1e-6 var_x, 1e6 var_x] plus the t -> infinity point (0, 0).
KeyRateCurve key_rate_curve(const ScalarDegradedSource& src, int count = kTestChannelCount);

/// Samples the curve at the given public rates.
std::vector<KeyRatePoint> sample_curve(const KeyRateCurve& curve, std::span<const double> rp_grid);

/// I(Y~;X~) - I(Y~;Z~): the key rate with unlimited public discussion.
double unlimited_key_rate(const ScalarDegradedSource& src);

}  // namespace wtc2
