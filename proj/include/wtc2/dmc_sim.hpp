#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wtc2/gaussian_model.hpp"

namespace wtc2 {

/// Elementary-term budget for exact enumeration.
inline constexpr double kExactGuard = 1e8;
inline constexpr int kMaxExactAlphabet = 4;
inline constexpr int kMaxBlockLength = 8;

/// Discrete memoryless two-way wiretap channel p(y1, y2, z | x1, x2).
struct DmcSpec {
    int nx1 = 0, nx2 = 0, ny1 = 0, ny2 = 0, nz = 0;
    /// Row-major [x1][x2][y1][y2][z].
    std::vector<double> tensor;

    double p(int x1, int x2, int y1, int y2, int z) const
    {
        return tensor[static_cast<std::size_t>((((x1 * nx2 + x2) * ny1 + y1) * ny2 + y2) * nz + z)];
    }
    std::size_t size() const { return static_cast<std::size_t>(nx1) * nx2 * ny1 * ny2 * nz; }

    /// Alphabet sizes in [1, 4], entries >= 0, each input pair sums to 1
    /// within 1e-12. Throws ParameterError.
    void validate() const;
};

/// Row-stochastic matrix, rows x cols, row-major.
struct Stochastic {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;

    double operator()(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
    static Stochastic identity(int n);
    void validate(const std::string& what) const;
};

/// Artificial prefix channels p(x1|c1), p(x2|c2).
struct PrefixSpec {
    Stochastic p1;
    Stochastic p2;

    static PrefixSpec identity(const DmcSpec& dmc);
    int nc1() const { return p1.rows; }
    int nc2() const { return p2.rows; }
    void validate(const DmcSpec& dmc) const;
};

struct CodeParams {
    int n = 1;
    int m1 = 1, m1p = 1, m2 = 1, m2p = 1;
    std::vector<double> pc1;  ///< distribution over the C1 alphabet
    std::vector<double> pc2;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Random codebooks c1[m1][m1p][i] and c2[m2][m2p][i].
struct Code {
    int n = 1;
    int m1 = 1, m1p = 1, m2 = 1, m2p = 1;
    std::vector<std::uint8_t> c1;
    std::vector<std::uint8_t> c2;
    std::vector<double> pc1;  ///< input laws the codebooks were drawn from
    std::vector<double> pc2;
    std::uint64_t seed = 0;

    int total1() const { return m1 * m1p; }
    int total2() const { return m2 * m2p; }
    /// Symbol i of codeword (m, mp); flat index m * m1p + mp is the decoder's label.
    int sym1(int m, int mp, int i) const { return c1[(static_cast<std::size_t>(m) * m1p + mp) * n + i]; }
    int sym2(int m, int mp, int i) const { return c2[(static_cast<std::size_t>(m) * m2p + mp) * n + i]; }
};

/// Codebook generation, PRNG version 1: std::mt19937_64 seeded with `seed`;
/// each symbol takes u = (next() >> 11) * 2^-53 and picks the first index
/// whose cumulative probability exceeds u. c1 is drawn in (m1, m1p, i) order,
/// then c2 in (m2, m2p, i) order.
Code generate_code(const CodeParams& params);

/// p(z^n | m1, m2) for every message pair (auxiliary messages and prefix
/// randomness marginalized) and the uniform-message mixture p(z^n).
struct EveDistributions {
    int m1 = 1;
    int m2 = 1;
    std::size_t outcomes = 1;  ///< |Z|^n
    std::vector<double> cond;  ///< [m1][m2][z^n]
    std::vector<double> mixture;

    const double* row(int a, int b) const { return cond.data() + (static_cast<std::size_t>(a) * m2 + b) * outcomes; }
};

EveDistributions eve_distributions(const Code& code, const DmcSpec& dmc, const PrefixSpec& prefix);

struct LeakageResult {
    double bits = 0.0;  ///< I(Z^n; M1 M2 | code)
    /// D(p(z^n|m1,m2) || p(z^n)) per pair, row-major [m1][m2]; their mean is `bits`.
    std::vector<double> divergence_to_mixture;
    /// D(p(z^n|m1,m2) || product of the single-letter output law); mean >= `bits`.
    std::vector<double> divergence_to_product;
};

/// Throws ExactModeTooLarge when |Z|^n M1 M1' M2 M2' exceeds kExactGuard.
LeakageResult exact_leakage(const Code& code, const DmcSpec& dmc, const PrefixSpec& prefix);

/// H(M) + H(Z^n) - H(M, Z^n) from the joint table built by direct enumeration.
double leakage_from_joint_table(const Code& code, const DmcSpec& dmc, const PrefixSpec& prefix);

enum class ErrorMode { exact, monte_carlo };

struct ErrorEstimate {
    double pe = 0.0;
    double half_width = 0.0;  ///< 95% normal approximation; 0 in exact mode
    ErrorMode mode = ErrorMode::exact;
    std::uint64_t trials = 0;
};

/// Probability that either receiver mis-decodes its (message, auxiliary
/// message) pair under ML decoding with lowest-index tie breaking.
/// Exact mode needs (|X1||X2||Y1||Y2|)^n <= kExactGuard.
ErrorEstimate ml_error(const Code& code, const DmcSpec& dmc, const PrefixSpec& prefix,
                       ErrorMode mode = ErrorMode::exact, std::uint64_t trials = 0,
                       std::uint64_t seed = 0);

/// Single-letter a1, a2, e1, e2, e12, e1c, e2c for independent C1 ~ pc1, C2 ~ pc2.
MiProfile single_letter_mi(const DmcSpec& dmc, const PrefixSpec& prefix, const std::vector<double>& pc1,
                           const std::vector<double>& pc2);

/// (message + key) mod K.
std::uint64_t one_time_pad(std::uint64_t message, std::uint64_t key, std::uint64_t modulus);
std::uint64_t one_time_pad_decrypt(std::uint64_t cipher, std::uint64_t key, std::uint64_t modulus);

/// Rates (bits per use) realized as counts ceil(2^{nR}).
struct RateSpec {
    double r1 = 0.0, r2 = 0.0, r1p = 0.0, r2p = 0.0;
};

int message_count(int n, double rate);

struct SecrecyReport {
    int n = 0;
    int replica = 0;
    std::uint64_t seed = 0;
    double leakage_bits = 0.0;
    ErrorEstimate error;
    std::vector<double> divergence_to_mixture;
    std::vector<double> divergence_to_product;
};

struct ThresholdOptions {
    std::vector<int> n_list{2, 3, 4, 5, 6};
    int codes_per_n = 20;
    std::uint64_t seed = 0;
    bool compute_error = true;
    /// Monte-Carlo trials used when exact error enumeration exceeds the guard.
    std::uint64_t mc_trials = 20000;
};

struct ThresholdCell {
    int n = 0;
    int m1 = 1, m1p = 1, m2 = 1, m2p = 1;
    bool skipped = false;
    std::string note;
    double mean_leakage = 0.0;
    double mean_pe = 0.0;
    std::vector<SecrecyReport> replicas;
};

struct ThresholdTable {
    MiProfile thresholds;
    RateSpec rates;
    std::vector<ThresholdCell> cells;
};

/// Seed of replica r at block length n, derived from the base seed by splitmix64.
std::uint64_t replica_seed(std::uint64_t base, int n, int replica);

/// Averages leakage and ML error over seeded random codes for each n.
/// Cells violating the exact-mode guard are marked skipped.
ThresholdTable threshold_experiment(const DmcSpec& dmc, const PrefixSpec& prefix, const std::vector<double>& pc1,
                                    const std::vector<double>& pc2, const RateSpec& rates,
                                    const ThresholdOptions& opts);

}  // namespace wtc2
