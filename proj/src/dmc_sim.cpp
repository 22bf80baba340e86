#include "wtc2/dmc_sim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <string>

#include "wtc2/errors.hpp"

namespace wtc2 {
namespace {

constexpr double kNormTol = 1e-12;
constexpr double kTieTol = 1e-12;

std::size_t ipow(int base, int n)
{
    std::size_t r = 1;
    for (int i = 0; i < n; ++i) r *= static_cast<std::size_t>(base);
    return r;
}

void check_distribution(const std::vector<double>& p, const std::string& what)
{
    if (p.empty()) throw ParameterError(what + " is empty");
    double s = 0.0;
    for (double v : p) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw ParameterError(what + " has a negative or non-finite entry");
        s += v;
    }
    if (std::abs(s - 1.0) > kNormTol) throw ParameterError(what + " does not sum to 1");
}

double unit_draw(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int sample_index(const double* p, int count, double u)
{
    double cum = 0.0;
    for (int k = 0; k < count; ++k) {
        cum += p[k];
        if (cum > u) return k;
    }
    // Rounding left u above the total: return the last index with mass.
    for (int k = count - 1; k > 0; --k) {
        if (p[k] > 0.0) return k;
    }
    return 0;
}

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

double entropy_bits(const std::vector<double>& p)
{
    double h = 0.0;
    for (double v : p) {
        if (v > 0.0) h -= v * std::log2(v);
    }
    return h;
}

// W_Z[c1][c2][z]: Eve's law given the two prefix inputs.
std::vector<double> eve_kernel(const DmcSpec& dmc, const PrefixSpec& pre)
{
    const int nc1 = pre.nc1();
    const int nc2 = pre.nc2();
    std::vector<double> pz(static_cast<std::size_t>(dmc.nx1) * dmc.nx2 * dmc.nz, 0.0);
    for (int x1 = 0; x1 < dmc.nx1; ++x1)
        for (int x2 = 0; x2 < dmc.nx2; ++x2)
            for (int y1 = 0; y1 < dmc.ny1; ++y1)
                for (int y2 = 0; y2 < dmc.ny2; ++y2)
                    for (int z = 0; z < dmc.nz; ++z)
                        pz[(static_cast<std::size_t>(x1) * dmc.nx2 + x2) * dmc.nz + z] += dmc.p(x1, x2, y1, y2, z);

    std::vector<double> w(static_cast<std::size_t>(nc1) * nc2 * dmc.nz, 0.0);
    for (int c1 = 0; c1 < nc1; ++c1)
        for (int c2 = 0; c2 < nc2; ++c2)
            for (int x1 = 0; x1 < dmc.nx1; ++x1)
                for (int x2 = 0; x2 < dmc.nx2; ++x2) {
                    const double q = pre.p1(c1, x1) * pre.p2(c2, x2);
                    if (q == 0.0) continue;
                    for (int z = 0; z < dmc.nz; ++z) {
                        w[(static_cast<std::size_t>(c1) * nc2 + c2) * dmc.nz + z] +=
                            q * pz[(static_cast<std::size_t>(x1) * dmc.nx2 + x2) * dmc.nz + z];
                    }
                }
    return w;
}

void check_code_against(const Code& code, const DmcSpec& dmc, const PrefixSpec& pre)
{
    dmc.validate();
    pre.validate(dmc);
    if (code.n < 1 || code.n > kMaxBlockLength) throw ParameterError("block length out of range");
    if (code.c1.size() != static_cast<std::size_t>(code.total1()) * code.n ||
        code.c2.size() != static_cast<std::size_t>(code.total2()) * code.n) {
        throw ParameterError("codebook shape does not match the message counts");
    }
    for (auto s : code.c1)
        if (s >= pre.nc1()) throw ParameterError("codebook 1 symbol outside the prefix alphabet");
    for (auto s : code.c2)
        if (s >= pre.nc2()) throw ParameterError("codebook 2 symbol outside the prefix alphabet");
}

void leakage_guard(const Code& code, const DmcSpec& dmc)
{
    const double terms = std::pow(static_cast<double>(dmc.nz), code.n) * code.total1() * code.total2();
    if (terms > kExactGuard) {
        throw ExactModeTooLarge("exact leakage needs |Z|^n M1 M1' M2 M2' <= 1e8, got " + std::to_string(terms));
    }
}

// Product law over z^n of a per-letter sequence of distributions, first
// symbol most significant.
void product_law(std::vector<double>& out, std::vector<double>& scratch, int n, int nz,
                 const std::function<const double*(int)>& letter)
{
    out.assign(1, 1.0);
    for (int i = 0; i < n; ++i) {
        const double* w = letter(i);
        scratch.assign(out.size() * nz, 0.0);
        for (std::size_t k = 0; k < out.size(); ++k) {
            if (out[k] == 0.0) continue;
            for (int z = 0; z < nz; ++z) scratch[k * nz + z] = out[k] * w[z];
        }
        out.swap(scratch);
    }
}

double divergence_bits(const double* p, const double* q, std::size_t size)
{
    double d = 0.0;
    for (std::size_t k = 0; k < size; ++k) {
        if (p[k] <= 0.0) continue;
        if (q[k] <= 0.0) return INFINITY;
        d += p[k] * std::log2(p[k] / q[k]);
    }
    return std::max(0.0, d);
}

// Digits of every sequence in [0, base^n), first symbol most significant.
std::vector<std::uint8_t> sequence_digits(int base, int n)
{
    const std::size_t count = ipow(base, n);
    std::vector<std::uint8_t> d(count * n);
    for (std::size_t s = 0; s < count; ++s) {
        std::size_t v = s;
        for (int i = n - 1; i >= 0; --i) {
            d[s * n + i] = static_cast<std::uint8_t>(v % base);
            v /= base;
        }
    }
    return d;
}

// Argmax over codewords with ties to the lowest index.
int ml_pick(const std::vector<double>& lik)
{
    int best = 0;
    for (int m = 1; m < static_cast<int>(lik.size()); ++m) {
        if (lik[m] > lik[best] * (1.0 + kTieTol)) best = m;
    }
    return best;
}

struct DecoderKernels {
    std::vector<double> py;  // [x1][x2][y1][y2]
    std::vector<double> wa;  // receiver 1: [c2][x1][y1]
    std::vector<double> wb;  // receiver 2: [c1][x2][y2]
};

DecoderKernels decoder_kernels(const DmcSpec& d, const PrefixSpec& pre)
{
    DecoderKernels k;
    k.py.assign(static_cast<std::size_t>(d.nx1) * d.nx2 * d.ny1 * d.ny2, 0.0);
    for (int x1 = 0; x1 < d.nx1; ++x1)
        for (int x2 = 0; x2 < d.nx2; ++x2)
            for (int y1 = 0; y1 < d.ny1; ++y1)
                for (int y2 = 0; y2 < d.ny2; ++y2) {
                    double s = 0.0;
                    for (int z = 0; z < d.nz; ++z) s += d.p(x1, x2, y1, y2, z);
                    k.py[((static_cast<std::size_t>(x1) * d.nx2 + x2) * d.ny1 + y1) * d.ny2 + y2] = s;
                }
    auto py = [&](int x1, int x2, int y1, int y2) {
        return k.py[((static_cast<std::size_t>(x1) * d.nx2 + x2) * d.ny1 + y1) * d.ny2 + y2];
    };
    k.wa.assign(static_cast<std::size_t>(pre.nc2()) * d.nx1 * d.ny1, 0.0);
    for (int c2 = 0; c2 < pre.nc2(); ++c2)
        for (int x1 = 0; x1 < d.nx1; ++x1)
            for (int y1 = 0; y1 < d.ny1; ++y1) {
                double s = 0.0;
                for (int x2 = 0; x2 < d.nx2; ++x2)
                    for (int y2 = 0; y2 < d.ny2; ++y2) s += pre.p2(c2, x2) * py(x1, x2, y1, y2);
                k.wa[(static_cast<std::size_t>(c2) * d.nx1 + x1) * d.ny1 + y1] = s;
            }
    k.wb.assign(static_cast<std::size_t>(pre.nc1()) * d.nx2 * d.ny2, 0.0);
    for (int c1 = 0; c1 < pre.nc1(); ++c1)
        for (int x2 = 0; x2 < d.nx2; ++x2)
            for (int y2 = 0; y2 < d.ny2; ++y2) {
                double s = 0.0;
                for (int x1 = 0; x1 < d.nx1; ++x1)
                    for (int y1 = 0; y1 < d.ny1; ++y1) s += pre.p1(c1, x1) * py(x1, x2, y1, y2);
                k.wb[(static_cast<std::size_t>(c1) * d.nx2 + x2) * d.ny2 + y2] = s;
            }
    return k;
}

// Flat codeword list (label = m * mp_count + mp) as symbol rows.
const std::uint8_t* codeword(const std::vector<std::uint8_t>& book, int label, int n)
{
    return book.data() + static_cast<std::size_t>(label) * n;
}

ErrorEstimate exact_error(const Code& code, const DmcSpec& d, const PrefixSpec& pre)
{
    const int n = code.n;
    const double terms = std::pow(static_cast<double>(d.nx1) * d.nx2 * d.ny1 * d.ny2, n);
    const double dec_terms = std::pow(static_cast<double>(d.nx1) * d.ny1, n) * code.total2() * n +
                             std::pow(static_cast<double>(d.nx2) * d.ny2, n) * code.total1() * n;
    if (terms > kExactGuard || dec_terms > kExactGuard) {
        throw ExactModeTooLarge("exact error needs (|X1||X2||Y1||Y2|)^n <= 1e8");
    }
    const DecoderKernels k = decoder_kernels(d, pre);
    const int t1 = code.total1();
    const int t2 = code.total2();
    const std::size_t sx1 = ipow(d.nx1, n), sx2 = ipow(d.nx2, n);
    const std::size_t sy1 = ipow(d.ny1, n), sy2 = ipow(d.ny2, n);
    const auto dx1 = sequence_digits(d.nx1, n), dx2 = sequence_digits(d.nx2, n);
    const auto dy1 = sequence_digits(d.ny1, n), dy2 = sequence_digits(d.ny2, n);

    // p(x^n | codeword) through the prefix.
    std::vector<double> px1(static_cast<std::size_t>(t1) * sx1), px2(static_cast<std::size_t>(t2) * sx2);
    for (int m = 0; m < t1; ++m) {
        const auto* c = codeword(code.c1, m, n);
        for (std::size_t s = 0; s < sx1; ++s) {
            double p = 1.0;
            for (int i = 0; i < n; ++i) p *= pre.p1(c[i], dx1[s * n + i]);
            px1[m * sx1 + s] = p;
        }
    }
    for (int m = 0; m < t2; ++m) {
        const auto* c = codeword(code.c2, m, n);
        for (std::size_t s = 0; s < sx2; ++s) {
            double p = 1.0;
            for (int i = 0; i < n; ++i) p *= pre.p2(c[i], dx2[s * n + i]);
            px2[m * sx2 + s] = p;
        }
    }

    // Receiver 1 decodes user 2's codeword from (x1^n, y1^n); receiver 2 symmetric.
    std::vector<int> dec_a(sx1 * sy1), dec_b(sx2 * sy2);
    std::vector<double> lik;
    lik.resize(t2);
    for (std::size_t a = 0; a < sx1; ++a)
        for (std::size_t b = 0; b < sy1; ++b) {
            for (int m = 0; m < t2; ++m) {
                const auto* c = codeword(code.c2, m, n);
                double p = 1.0;
                for (int i = 0; i < n; ++i)
                    p *= k.wa[(static_cast<std::size_t>(c[i]) * d.nx1 + dx1[a * n + i]) * d.ny1 + dy1[b * n + i]];
                lik[m] = p;
            }
            dec_a[a * sy1 + b] = ml_pick(lik);
        }
    lik.resize(t1);
    for (std::size_t a = 0; a < sx2; ++a)
        for (std::size_t b = 0; b < sy2; ++b) {
            for (int m = 0; m < t1; ++m) {
                const auto* c = codeword(code.c1, m, n);
                double p = 1.0;
                for (int i = 0; i < n; ++i)
                    p *= k.wb[(static_cast<std::size_t>(c[i]) * d.nx2 + dx2[a * n + i]) * d.ny2 + dy2[b * n + i]];
                lik[m] = p;
            }
            dec_b[a * sy2 + b] = ml_pick(lik);
        }

    // P(correct) = 1/(t1 t2) sum_{x,y} p(y|x) p(x1|c1[dec_b]) p(x2|c2[dec_a]).
    double correct = 0.0;
    const std::size_t ny = static_cast<std::size_t>(d.ny1) * d.ny2;
    for (std::size_t a1 = 0; a1 < sx1; ++a1) {
        for (std::size_t a2 = 0; a2 < sx2; ++a2) {
            const std::uint8_t* x1 = &dx1[a1 * n];
            const std::uint8_t* x2 = &dx2[a2 * n];
            double acc = 0.0;
            std::function<void(int, std::size_t, std::size_t, double)> dfs = [&](int i, std::size_t y1, std::size_t y2,
                                                                               double p) {
                if (i == n) {
                    acc += p * px1[dec_b[a2 * sy2 + y2] * sx1 + a1] * px2[dec_a[a1 * sy1 + y1] * sx2 + a2];
                    return;
                }
                for (std::size_t j = 0; j < ny; ++j) {
                    const int v1 = static_cast<int>(j / d.ny2);
                    const int v2 = static_cast<int>(j % d.ny2);
                    const double q =
                        k.py[((static_cast<std::size_t>(x1[i]) * d.nx2 + x2[i]) * d.ny1 + v1) * d.ny2 + v2];
                    if (q == 0.0) continue;
                    dfs(i + 1, y1 * d.ny1 + v1, y2 * d.ny2 + v2, p * q);
                }
            };
            dfs(0, 0, 0, 1.0);
            correct += acc;
        }
    }
    ErrorEstimate out;
    out.mode = ErrorMode::exact;
    out.pe = std::clamp(1.0 - correct / (static_cast<double>(t1) * t2), 0.0, 1.0);
    return out;
}

ErrorEstimate monte_carlo_error(const Code& code, const DmcSpec& d, const PrefixSpec& pre, std::uint64_t trials,
                                std::uint64_t seed)
{
    if (trials == 0) throw ParameterError("Monte-Carlo error needs at least one trial");
    const DecoderKernels k = decoder_kernels(d, pre);
    const int n = code.n;
    const int t1 = code.total1();
    const int t2 = code.total2();
    const int ny = d.ny1 * d.ny2;
    std::mt19937_64 rng(seed);
    std::vector<int> x1(n), x2(n), y1(n), y2(n);
    std::uint64_t errors = 0;
    std::vector<double> lik;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const int mu1 = std::min(t1 - 1, static_cast<int>(unit_draw(rng) * t1));
        const int mu2 = std::min(t2 - 1, static_cast<int>(unit_draw(rng) * t2));
        const auto* c1 = codeword(code.c1, mu1, n);
        const auto* c2 = codeword(code.c2, mu2, n);
        for (int i = 0; i < n; ++i) {
            x1[i] = sample_index(&pre.p1.data[static_cast<std::size_t>(c1[i]) * d.nx1], d.nx1, unit_draw(rng));
            x2[i] = sample_index(&pre.p2.data[static_cast<std::size_t>(c2[i]) * d.nx2], d.nx2, unit_draw(rng));
            const double* row = &k.py[(static_cast<std::size_t>(x1[i]) * d.nx2 + x2[i]) * ny];
            const int j = sample_index(row, ny, unit_draw(rng));
            y1[i] = j / d.ny2;
            y2[i] = j % d.ny2;
        }
        lik.assign(t2, 1.0);
        for (int m = 0; m < t2; ++m) {
            const auto* c = codeword(code.c2, m, n);
            for (int i = 0; i < n; ++i)
                lik[m] *= k.wa[(static_cast<std::size_t>(c[i]) * d.nx1 + x1[i]) * d.ny1 + y1[i]];
        }
        const int hat2 = ml_pick(lik);
        lik.assign(t1, 1.0);
        for (int m = 0; m < t1; ++m) {
            const auto* c = codeword(code.c1, m, n);
            for (int i = 0; i < n; ++i)
                lik[m] *= k.wb[(static_cast<std::size_t>(c[i]) * d.nx2 + x2[i]) * d.ny2 + y2[i]];
        }
        const int hat1 = ml_pick(lik);
        if (hat1 != mu1 || hat2 != mu2) ++errors;
    }
    ErrorEstimate out;
    out.mode = ErrorMode::monte_carlo;
    out.trials = trials;
    out.pe = static_cast<double>(errors) / static_cast<double>(trials);
    out.half_width = 1.96 * std::sqrt(out.pe * (1.0 - out.pe) / static_cast<double>(trials));
    return out;
}

}  // namespace

void DmcSpec::validate() const
{
    for (int s : {nx1, nx2, ny1, ny2, nz}) {
        if (s < 1 || s > kMaxExactAlphabet) throw ParameterError("alphabet sizes must lie in [1, 4]");
    }
    if (tensor.size() != size()) throw ParameterError("transition tensor has the wrong number of entries");
    for (double v : tensor) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw ParameterError("transition probabilities must be finite and >= 0");
    }
    const std::size_t block = static_cast<std::size_t>(ny1) * ny2 * nz;
    for (std::size_t r = 0; r < tensor.size() / block; ++r) {
        double s = 0.0;
        for (std::size_t k = 0; k < block; ++k) s += tensor[r * block + k];
        if (std::abs(s - 1.0) > kNormTol) {
            throw ParameterError("transition law for input pair " + std::to_string(r) + " does not sum to 1");
        }
    }
}

Stochastic Stochastic::identity(int n)
{
    Stochastic s;
    s.rows = s.cols = n;
    s.data.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) s.data[static_cast<std::size_t>(i) * n + i] = 1.0;
    return s;
}

void Stochastic::validate(const std::string& what) const
{
    if (rows < 1 || rows > 255 || cols < 1) throw ParameterError(what + " must have 1..255 rows and >= 1 column");
    if (data.size() != static_cast<std::size_t>(rows) * cols) throw ParameterError(what + " has the wrong shape");
    for (int r = 0; r < rows; ++r) {
        check_distribution(std::vector<double>(data.begin() + static_cast<std::ptrdiff_t>(r) * cols,
                                               data.begin() + static_cast<std::ptrdiff_t>(r + 1) * cols),
                           what + " row " + std::to_string(r));
    }
}

PrefixSpec PrefixSpec::identity(const DmcSpec& dmc)
{
    return {Stochastic::identity(dmc.nx1), Stochastic::identity(dmc.nx2)};
}

void PrefixSpec::validate(const DmcSpec& dmc) const
{
    p1.validate("prefix1");
    p2.validate("prefix2");
    if (p1.cols != dmc.nx1 || p2.cols != dmc.nx2) {
        throw ParameterError("prefix output alphabets must match the channel input alphabets");
    }
}

void CodeParams::validate() const
{
    if (n < 1 || n > kMaxBlockLength) throw ParameterError("block length must lie in [1, 8]");
    if (m1 < 1 || m1p < 1 || m2 < 1 || m2p < 1) throw ParameterError("message counts must be >= 1");
    check_distribution(pc1, "pc1");
    check_distribution(pc2, "pc2");
    if (pc1.size() > 255 || pc2.size() > 255) throw ParameterError("input alphabets are limited to 255 symbols");
    const double symbols = (static_cast<double>(m1) * m1p + static_cast<double>(m2) * m2p) * n;
    if (symbols > kExactGuard) throw ExactModeTooLarge("codebooks exceed 1e8 symbols");
}

Code generate_code(const CodeParams& params)
{
    params.validate();
    Code c;
    c.n = params.n;
    c.m1 = params.m1;
    c.m1p = params.m1p;
    c.m2 = params.m2;
    c.m2p = params.m2p;
    c.pc1 = params.pc1;
    c.pc2 = params.pc2;
    c.seed = params.seed;
    std::mt19937_64 rng(params.seed);
    const int k1 = static_cast<int>(params.pc1.size());
    const int k2 = static_cast<int>(params.pc2.size());
    c.c1.resize(static_cast<std::size_t>(c.total1()) * c.n);
    for (auto& s : c.c1) s = static_cast<std::uint8_t>(sample_index(params.pc1.data(), k1, unit_draw(rng)));
    c.c2.resize(static_cast<std::size_t>(c.total2()) * c.n);
    for (auto& s : c.c2) s = static_cast<std::uint8_t>(sample_index(params.pc2.data(), k2, unit_draw(rng)));
    return c;
}

EveDistributions eve_distributions(const Code& code, const DmcSpec& dmc, const PrefixSpec& prefix)
{
    check_code_against(code, dmc, prefix);
    leakage_guard(code, dmc);
    const std::vector<double> w = eve_kernel(dmc, prefix);
    const int n = code.n;
    const int nz = dmc.nz;
    const int nc2 = prefix.nc2();

    EveDistributions out;
    out.m1 = code.m1;
    out.m2 = code.m2;
    out.outcomes = ipow(nz, n);
    out.cond.assign(static_cast<std::size_t>(code.m1) * code.m2 * out.outcomes, 0.0);
    out.mixture.assign(out.outcomes, 0.0);

    const double aux_weight = 1.0 / (static_cast<double>(code.m1p) * code.m2p);
    std::vector<double> law, scratch;
    for (int a = 0; a < code.m1; ++a)
        for (int b = 0; b < code.m2; ++b) {
            double* row = out.cond.data() + (static_cast<std::size_t>(a) * code.m2 + b) * out.outcomes;
            for (int ap = 0; ap < code.m1p; ++ap)
                for (int bp = 0; bp < code.m2p; ++bp) {
                    product_law(law, scratch, n, nz, [&](int i) {
                        return &w[(static_cast<std::size_t>(code.sym1(a, ap, i)) * nc2 + code.sym2(b, bp, i)) * nz];
                    });
                    for (std::size_t z = 0; z < out.outcomes; ++z) row[z] += aux_weight * law[z];
                }
        }
    const double msg_weight = 1.0 / (static_cast<double>(code.m1) * code.m2);
    for (std::size_t r = 0; r < static_cast<std::size_t>(code.m1) * code.m2; ++r)
        for (std::size_t z = 0; z < out.outcomes; ++z) out.mixture[z] += msg_weight * out.cond[r * out.outcomes + z];
    return out;
}

LeakageResult exact_leakage(const Code& code, const DmcSpec& dmc, const PrefixSpec& prefix)
{
    const EveDistributions ev = eve_distributions(code, dmc, prefix);

    // Single-letter output law under the code's input distributions.
    const std::vector<double> w = eve_kernel(dmc, prefix);
    const int nc1 = prefix.nc1(), nc2 = prefix.nc2();
    if (static_cast<int>(code.pc1.size()) != nc1 || static_cast<int>(code.pc2.size()) != nc2) {
        throw ParameterError("code input distributions must match the prefix alphabets");
    }
    std::vector<double> pz(dmc.nz, 0.0);
    for (int c1 = 0; c1 < nc1; ++c1)
        for (int c2 = 0; c2 < nc2; ++c2)
            for (int z = 0; z < dmc.nz; ++z)
                pz[z] += code.pc1[c1] * code.pc2[c2] * w[(static_cast<std::size_t>(c1) * nc2 + c2) * dmc.nz + z];
    std::vector<double> target, scratch;
    product_law(target, scratch, code.n, dmc.nz, [&](int) { return pz.data(); });

    LeakageResult out;
    const int pairs = code.m1 * code.m2;
    out.divergence_to_mixture.resize(pairs);
    out.divergence_to_product.resize(pairs);
    double sum = 0.0;
    for (int r = 0; r < pairs; ++r) {
        const double* row = ev.cond.data() + static_cast<std::size_t>(r) * ev.outcomes;
        out.divergence_to_mixture[r] = divergence_bits(row, ev.mixture.data(), ev.outcomes);
        out.divergence_to_product[r] = divergence_bits(row, target.data(), ev.outcomes);
        sum += out.divergence_to_mixture[r];
    }
    out.bits = std::clamp(sum / pairs, 0.0, std::log2(static_cast<double>(pairs)));
    return out;
}

double leakage_from_joint_table(const Code& code, const DmcSpec& dmc, const PrefixSpec& prefix)
{
    check_code_against(code, dmc, prefix);
    leakage_guard(code, dmc);
    const int n = code.n;
    const std::size_t outcomes = ipow(dmc.nz, n);
    const auto zd = sequence_digits(dmc.nz, n);
    const int pairs = code.m1 * code.m2;
    const double weight = 1.0 / (static_cast<double>(pairs) * code.m1p * code.m2p);

    // p(m1, m2, z^n) accumulated codeword by codeword, each z^n enumerated
    // directly through the prefix and channel sums.
    std::vector<double> joint(static_cast<std::size_t>(pairs) * outcomes, 0.0);
    for (int a = 0; a < code.m1; ++a)
        for (int ap = 0; ap < code.m1p; ++ap)
            for (int b = 0; b < code.m2; ++b)
                for (int bp = 0; bp < code.m2p; ++bp)
                    for (std::size_t s = 0; s < outcomes; ++s) {
                        double p = weight;
                        for (int i = 0; i < n && p > 0.0; ++i) {
                            const int z = zd[s * n + i];
                            double letter = 0.0;
                            for (int x1 = 0; x1 < dmc.nx1; ++x1)
                                for (int x2 = 0; x2 < dmc.nx2; ++x2) {
                                    const double q = prefix.p1(code.sym1(a, ap, i), x1) *
                                                     prefix.p2(code.sym2(b, bp, i), x2);
                                    if (q == 0.0) continue;
                                    for (int y1 = 0; y1 < dmc.ny1; ++y1)
                                        for (int y2 = 0; y2 < dmc.ny2; ++y2) letter += q * dmc.p(x1, x2, y1, y2, z);
                                }
                            p *= letter;
                        }
                        joint[(static_cast<std::size_t>(a) * code.m2 + b) * outcomes + s] += p;
                    }

    std::vector<double> pm(pairs, 0.0), pz(outcomes, 0.0);
    for (int r = 0; r < pairs; ++r)
        for (std::size_t s = 0; s < outcomes; ++s) {
            pm[r] += joint[r * outcomes + s];
            pz[s] += joint[r * outcomes + s];
        }
    return entropy_bits(pm) + entropy_bits(pz) - entropy_bits(joint);
}

ErrorEstimate ml_error(const Code& code, const DmcSpec& dmc, const PrefixSpec& prefix, ErrorMode mode,
                       std::uint64_t trials, std::uint64_t seed)
{
    check_code_against(code, dmc, prefix);
    if (mode == ErrorMode::exact) return exact_error(code, dmc, prefix);
    return monte_carlo_error(code, dmc, prefix, trials, seed);
}

MiProfile single_letter_mi(const DmcSpec& dmc, const PrefixSpec& prefix, const std::vector<double>& pc1,
                           const std::vector<double>& pc2)
{
    dmc.validate();
    prefix.validate(dmc);
    check_distribution(pc1, "pc1");
    check_distribution(pc2, "pc2");
    if (static_cast<int>(pc1.size()) != prefix.nc1() || static_cast<int>(pc2.size()) != prefix.nc2()) {
        throw ParameterError("input distributions must match the prefix alphabets");
    }

    enum Axis { C1, C2, X1, X2, Y1, Y2, Z, kAxes };
    const std::array<int, kAxes> dims{prefix.nc1(), prefix.nc2(), dmc.nx1, dmc.nx2, dmc.ny1, dmc.ny2, dmc.nz};
    std::size_t total = 1;
    for (int d : dims) total *= static_cast<std::size_t>(d);

    std::vector<double> joint(total);
    std::vector<std::array<int, kAxes>> digits(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t v = idx;
        auto& g = digits[idx];
        for (int ax = kAxes - 1; ax >= 0; --ax) {
            g[ax] = static_cast<int>(v % dims[ax]);
            v /= dims[ax];
        }
        joint[idx] = pc1[g[C1]] * pc2[g[C2]] * prefix.p1(g[C1], g[X1]) * prefix.p2(g[C2], g[X2]) *
                     dmc.p(g[X1], g[X2], g[Y1], g[Y2], g[Z]);
    }

    std::map<unsigned, double> cache;
    auto h = [&](std::initializer_list<int> axes) {
        unsigned mask = 0;
        for (int a : axes) mask |= 1u << a;
        if (auto it = cache.find(mask); it != cache.end()) return it->second;
        std::map<std::size_t, double> marg;
        for (std::size_t idx = 0; idx < total; ++idx) {
            std::size_t key = 0;
            for (int ax = 0; ax < kAxes; ++ax) {
                if (mask & (1u << ax)) key = key * dims[ax] + digits[idx][ax];
            }
            marg[key] += joint[idx];
        }
        double e = 0.0;
        for (const auto& [k, p] : marg) {
            if (p > 0.0) e -= p * std::log2(p);
        }
        cache[mask] = e;
        return e;
    };

    MiProfile mi;
    mi.a1 = h({Y2, X2}) + h({C1, X2}) - h({C1, Y2, X2}) - h({X2});
    mi.a2 = h({Y1, X1}) + h({C2, X1}) - h({C2, Y1, X1}) - h({X1});
    mi.e1 = h({C1}) + h({Z}) - h({C1, Z});
    mi.e2 = h({C2}) + h({Z}) - h({C2, Z});
    mi.e12 = h({C1, C2}) + h({Z}) - h({C1, C2, Z});
    mi.e1c = h({C1, C2}) + h({C2, Z}) - h({C1, C2, Z}) - h({C2});
    mi.e2c = h({C1, C2}) + h({C1, Z}) - h({C1, C2, Z}) - h({C1});
    for (double* v : {&mi.a1, &mi.a2, &mi.e1, &mi.e2, &mi.e12, &mi.e1c, &mi.e2c}) *v = std::max(0.0, *v);
    return mi;
}

std::uint64_t one_time_pad(std::uint64_t message, std::uint64_t key, std::uint64_t modulus)
{
    if (modulus == 0 || message >= modulus || key >= modulus) {
        throw ParameterError("one-time pad needs 0 <= message, key < K");
    }
    return message >= modulus - key ? message - (modulus - key) : message + key;
}

std::uint64_t one_time_pad_decrypt(std::uint64_t cipher, std::uint64_t key, std::uint64_t modulus)
{
    if (modulus == 0 || cipher >= modulus || key >= modulus) {
        throw ParameterError("one-time pad needs 0 <= cipher, key < K");
    }
    return cipher >= key ? cipher - key : cipher + (modulus - key);
}

int message_count(int n, double rate)
{
    if (!(rate >= 0.0) || !std::isfinite(rate)) throw ParameterError("rates must be finite and >= 0");
    const double v = std::ceil(std::exp2(n * rate) - 1e-9);
    if (v > 1e9) throw ExactModeTooLarge("message count overflows");
    return std::max(1, static_cast<int>(v));
}

std::uint64_t replica_seed(std::uint64_t base, int n, int replica)
{
    const std::uint64_t tag = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(n)) << 32) |
                              static_cast<std::uint32_t>(replica);
    return splitmix64(base ^ splitmix64(tag));
}

ThresholdTable threshold_experiment(const DmcSpec& dmc, const PrefixSpec& prefix, const std::vector<double>& pc1,
                                    const std::vector<double>& pc2, const RateSpec& rates,
                                    const ThresholdOptions& opts)
{
    if (opts.codes_per_n < 1) throw ParameterError("codes_per_n must be >= 1");
    ThresholdTable table;
    table.rates = rates;
    table.thresholds = single_letter_mi(dmc, prefix, pc1, pc2);

    for (int n : opts.n_list) {
        ThresholdCell cell;
        cell.n = n;
        if (n < 1 || n > kMaxBlockLength) {
            cell.skipped = true;
            cell.note = "block length outside [1, 8]";
            table.cells.push_back(std::move(cell));
            continue;
        }
        cell.m1 = message_count(n, rates.r1);
        cell.m1p = message_count(n, rates.r1p);
        cell.m2 = message_count(n, rates.r2);
        cell.m2p = message_count(n, rates.r2p);
        const double terms =
            std::pow(static_cast<double>(dmc.nz), n) * cell.m1 * cell.m1p * cell.m2 * cell.m2p;
        if (terms > kExactGuard) {
            cell.skipped = true;
            cell.note = "exact-mode guard: |Z|^n M1 M1' M2 M2' = " + std::to_string(terms) + " > 1e8";
            table.cells.push_back(std::move(cell));
            continue;
        }
        const bool exact_error_ok =
            std::pow(static_cast<double>(dmc.nx1) * dmc.nx2 * dmc.ny1 * dmc.ny2, n) <= kExactGuard;
        for (int r = 0; r < opts.codes_per_n; ++r) {
            CodeParams cp{n, cell.m1, cell.m1p, cell.m2, cell.m2p, pc1, pc2, replica_seed(opts.seed, n, r)};
            const Code code = generate_code(cp);
            const LeakageResult lk = exact_leakage(code, dmc, prefix);
            SecrecyReport rep;
            rep.n = n;
            rep.replica = r;
            rep.seed = cp.seed;
            rep.leakage_bits = lk.bits;
            rep.divergence_to_mixture = lk.divergence_to_mixture;
            rep.divergence_to_product = lk.divergence_to_product;
            if (opts.compute_error) {
                try {
                    rep.error = exact_error_ok
                                    ? ml_error(code, dmc, prefix, ErrorMode::exact)
                                    : ml_error(code, dmc, prefix, ErrorMode::monte_carlo, opts.mc_trials,
                                               splitmix64(cp.seed));
                } catch (const ExactModeTooLarge&) {
                    rep.error = ml_error(code, dmc, prefix, ErrorMode::monte_carlo, opts.mc_trials,
                                         splitmix64(cp.seed));
                }
            }
            cell.mean_leakage += lk.bits / opts.codes_per_n;
            cell.mean_pe += rep.error.pe / opts.codes_per_n;
            cell.replicas.push_back(std::move(rep));
        }
        table.cells.push_back(std::move(cell));
    }
    return table;
}

}  // namespace wtc2
