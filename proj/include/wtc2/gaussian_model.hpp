#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include <Eigen/Core>

namespace wtc2 {

/// Gaussian two-way wiretap channel with unit-variance additive noises:
///   Y1 = sqrt(g1) X1 + X2 + N21
///   Y2 = X1 + sqrt(g2) X2 + N12
///   Z  = sqrt(h1) X1 + sqrt(h2) X2 + Ne
/// with average input powers bounded by rho1, rho2.
struct ChannelParams {
    double g1 = 1.0;
    double g2 = 1.0;
    double h1 = 1.0;
    double h2 = 1.0;
    double rho1 = 1.0;
    double rho2 = 1.0;

    /// Throws ParameterError unless every field is finite and >= 0.
    void validate() const;
};

/// Division of each user's power between prefix jamming noise (rho_n) and
/// codeword (rho_c = rho - rho_n).
struct PowerSplit {
    double rho1n = 0.0;
    double rho2n = 0.0;

    double rho1c(const ChannelParams& p) const { return p.rho1 - rho1n; }
    double rho2c(const ChannelParams& p) const { return p.rho2 - rho2n; }

    void validate(const ChannelParams& p) const;
};

/// The seven single-letter mutual informations (bits per channel use).
struct MiProfile {
    double a1 = 0.0;   ///< I(Y2;C1|X2)
    double a2 = 0.0;   ///< I(Y1;C2|X1)
    double e1 = 0.0;   ///< I(C1;Z)
    double e2 = 0.0;   ///< I(C2;Z)
    double e12 = 0.0;  ///< I(C1C2;Z)
    double e1c = 0.0;  ///< I(C1;Z|C2)
    double e2c = 0.0;  ///< I(C2;Z|C1)

    /// Non-negativity plus the chain-rule identities, within `tol`.
    bool consistent(double tol = 1e-9) const;
};

enum class MiQuantity { a1, a2, e1, e2, e12, e1c, e2c };

inline constexpr std::array<MiQuantity, 7> kAllMiQuantities{
    MiQuantity::a1, MiQuantity::a2, MiQuantity::e1, MiQuantity::e2,
    MiQuantity::e12, MiQuantity::e1c, MiQuantity::e2c};

std::string_view to_string(MiQuantity q);
double get(const MiProfile& mi, MiQuantity q);

/// Closed-form mutual informations for Gaussian codewords C_k ~ N(0, rho_kc).
MiProfile mi_profile(const ChannelParams& params, const PowerSplit& split);

struct OracleDiagnostics {
    bool floored = false;  ///< a singular block was regularized at kEigenFloor
};

/// Order of variables in joint_covariance().
enum JointVar : int { kC1, kC2, kN11, kN22, kN21, kN12, kNe, kX1, kX2, kY1, kY2, kZ, kJointVarCount };

/// Covariance of (C1, C2, N11, N22, N21, N12, Ne, X1, X2, Y1, Y2, Z).
Eigen::MatrixXd joint_covariance(const ChannelParams& params, const PowerSplit& split);

/// Reference evaluation of one quantity from the joint covariance by
/// log-determinants of Schur complements. Independent of mi_profile's closed
/// forms; singular blocks are floored at kEigenFloor and reported in `diag`.
double mi_oracle(const ChannelParams& params, const PowerSplit& split, MiQuantity quantity,
                 OracleDiagnostics* diag = nullptr);

/// Sampling estimate of one quantity: draws the seven independent sources,
/// forms the empirical joint covariance and applies the log-det formula.
/// Sanity check only; carries O(1/sqrt(samples)) error.
double mi_monte_carlo(const ChannelParams& params, const PowerSplit& split, MiQuantity quantity,
                      std::size_t samples, std::uint64_t seed);

/// Covariance of the source induced by the jamming noises,
/// ordered (X1~, X2~, Y1~, Y2~, Z~):
///   X1~ = N11, X2~ = N22, Y1~ = X2~ + N21, Y2~ = X1~ + N12,
///   Z~ = sqrt(h1) X1~ + sqrt(h2) X2~ + Ne.
struct InducedDmsCov {
    enum Index : int { kX1, kX2, kY1, kY2, kZ };
    Eigen::Matrix<double, 5, 5> cov = Eigen::Matrix<double, 5, 5>::Zero();
    double h1 = 0.0;
    double h2 = 0.0;

    double var(Index i) const { return cov(i, i); }
    double at(Index i, Index j) const { return cov(i, j); }
};

InducedDmsCov induced_dms_cov(const ChannelParams& params, const PowerSplit& split);

}  // namespace wtc2
