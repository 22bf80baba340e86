#pragma once

#include <vector>

#include "wtc2/gaussian_model.hpp"
#include "wtc2/key_agreement.hpp"
#include "wtc2/polytope.hpp"

namespace wtc2 {

/// Secret rates (R1, R2) and auxiliary-message rates (R1', R2'), bits per use.
struct RatePoint4 {
    double r1 = 0.0;
    double r2 = 0.0;
    double r1p = 0.0;
    double r2p = 0.0;
};

/// Coordinate order of the 4-D systems.
enum RateCoord : int { kR1, kR2, kR1p, kR2p };

/// How each user's secret and auxiliary messages are split.
///
/// Secret message: rs (kept secret) + rk (key handed to the other user).
/// Auxiliary message: ro (open) + re (one-time padded with the other user's
/// key) + rd (public discussion for key generation) + rg (one-time padded
/// with a generated key).
struct RateSplitLedger {
    struct User {
        double rs = 0.0;
        double rk = 0.0;
        double ro = 0.0;
        double re = 0.0;
        double rd = 0.0;
        double rg = 0.0;

        double secret_rate() const { return rs + rk; }
        double aux_rate() const { return ro + re + rd + rg; }
        double effective_secret() const { return rs + re + rg; }
    };
    User u1;
    User u2;

    const User& user(int i) const { return i == 1 ? u1 : u2; }
    User& user(int i) { return i == 1 ? u1 : u2; }

    /// Effective secret rates (R1~, R2~).
    Point2 effective() const { return {u1.effective_secret(), u2.effective_secret()}; }

    /// Non-negativity and one-time-pad key budgets (re1 <= rk2, re2 <= rk1).
    /// Throws LedgerError.
    void validate_budgets(double tol = kGeomTol) const;
    /// Channel constraints: each user's total rate fits a_i, auxiliary rates
    /// cover e1, e2 and e12. Throws LedgerError.
    void validate_channel(const MiProfile& mi, double tol = kGeomTol) const;
};

/// Key-exchange choice on top of a cooperative-jamming operating point.
struct KeyExchange {
    double rk1 = 0.0;  ///< part of R1 sent as a key to user 2
    double rk2 = 0.0;
    double re1 = 0.0;  ///< part of R1' encrypted with user 2's key
    double re2 = 0.0;
};

/// Largest encryption each user can apply given the keys it receives:
/// re_i = min(rk_j, R_i').
KeyExchange saturating_exchange(const RatePoint4& p, double rk1, double rk2);

struct KeyExchangeResult {
    RateSplitLedger ledger;
    Point2 effective;
};

/// Splits a cooperative-jamming point according to `kx` and returns the
/// effective secret rates. Pure accounting. Throws LedgerError on budget violations.
KeyExchangeResult key_exchange_ledger(const RatePoint4& p, const KeyExchange& kx);

/// Secret-key generation configuration: which degraded chain and which user
/// spends the generated key on encryption.
struct KgConfig {
    Chain chain = Chain::A;
    int encryptor = 1;

    int communicator() const { return wtc2::communicator(chain); }
};

inline constexpr KgConfig kAllKgConfigs[4] = {
    {Chain::A, 1}, {Chain::A, 2}, {Chain::B, 1}, {Chain::B, 2}};

HalfspaceSystem prop1_system(const MiProfile& mi);
HalfspaceSystem ty_aux_system(const MiProfile& mi);
Polygon2 corollary1_polygon(const MiProfile& mi);
Polygon2 kx_polygon(const MiProfile& mi);

/// Both 4-D systems project onto the same (R1, R2) polygon, equal to
/// corollary1_polygon.
bool projection_equivalence_check(const MiProfile& mi);

struct KgOutcome {
    RateSplitLedger ledger;  ///< base ledger with discussion and generated-key parts filled in
    double public_rate = 0.0;
    double key_rate = 0.0;
    Polygon2 region;         ///< downward closure of the effective rate point
};

/// Key generation on top of a feasible base ledger using a precomputed
/// key-rate curve for cfg.chain.
KgOutcome kg_augment(const MiProfile& mi, const KeyRateCurve& curve, const KgConfig& cfg,
                     const RateSplitLedger& base);

/// Same, deriving the curve from the induced source. Throws SourceAbsentError
/// when the chain's hidden variable has zero variance.
KgOutcome kg_augment(const MiProfile& mi, const InducedDmsCov& dms, const KgConfig& cfg,
                     const RateSplitLedger& base);

/// Ledgers used as key-generation starting points for one MiProfile: every
/// vertex of the base feasible set (prop1_system) with both channel budgets filled by
/// auxiliary rate, split with no exchange and with saturating exchange in
/// each direction (and `exchange_steps - 1` intermediate exchange fractions).
std::vector<RateSplitLedger> ledger_corners(const MiProfile& mi, int exchange_steps = 1);

struct SweepOptions {
    int grid = 200;
    bool want_cj = true;
    bool want_kx = true;
    bool want_kg = true;
    int test_channels = kTestChannelCount;
    int exchange_steps = 1;
};

struct SweepCell {
    PowerSplit split;
    MiProfile mi;
};

struct RegionSet {
    Polygon2 cj;
    Polygon2 kx;
    Polygon2 kg;
    std::vector<SweepCell> cells;
};

/// Unions over an N x N grid of jamming powers, convexified by time sharing.
RegionSet sweep_regions(const ChannelParams& params, const SweepOptions& opts = {});

/// 0 < rho1 < (h2-1)/h1 and 0 < rho2 < (h1-1)/h2.
bool prop4_condition(const ChannelParams& params);

/// Average rate over B rounds when the first round runs at r_first.
double multi_round_rate(double r_first, double r_steady, int rounds);

}  // namespace wtc2
