#pragma once

#include <cmath>
#include <functional>
#include <string>

#include "wtc2/dmc_sim.hpp"

namespace fixtures {

using Law = std::function<double(int x1, int x2, int y1, int y2, int z)>;

inline wtc2::DmcSpec make_dmc(int nx1, int nx2, int ny1, int ny2, int nz, const Law& law)
{
    wtc2::DmcSpec d{nx1, nx2, ny1, ny2, nz, {}};
    for (int x1 = 0; x1 < nx1; ++x1)
        for (int x2 = 0; x2 < nx2; ++x2)
            for (int y1 = 0; y1 < ny1; ++y1)
                for (int y2 = 0; y2 < ny2; ++y2)
                    for (int z = 0; z < nz; ++z) d.tensor.push_back(law(x1, x2, y1, y2, z));
    return d;
}

inline double bsc(int out, int in, double eps)
{
    return out == in ? 1.0 - eps : eps;
}

/// Binary inputs; each receiver sees the other input through BSC(eps_leg);
/// Eve sees X1 + X2 in {0,1,2}, replaced by a uniform symbol with
/// probability eps_eve.
inline wtc2::DmcSpec binary_adder(double eps_leg, double eps_eve)
{
    return make_dmc(2, 2, 2, 2, 3, [=](int x1, int x2, int y1, int y2, int z) {
        const double pz = (1.0 - eps_eve) * (z == x1 + x2 ? 1.0 : 0.0) + eps_eve / 3.0;
        return bsc(y1, x2, eps_leg) * bsc(y2, x1, eps_leg) * pz;
    });
}

/// The pinned threshold fixture.
inline wtc2::DmcSpec threshold_channel()
{
    return binary_adder(0.001, 0.8);
}
inline constexpr wtc2::RateSpec kThresholdRates{0.1, 0.1, 0.75, 0.75};
inline constexpr std::uint64_t kThresholdSeed = 20240607;

/// Noiseless legitimate links and Z = (X1, X2).
inline wtc2::DmcSpec identity_channel()
{
    return make_dmc(2, 2, 2, 2, 4, [](int x1, int x2, int y1, int y2, int z) {
        return (y1 == x2 && y2 == x1 && z == 2 * x1 + x2) ? 1.0 : 0.0;
    });
}

/// Noiseless legitimate links, Eve sees a constant.
inline wtc2::DmcSpec blind_eve_channel()
{
    return make_dmc(2, 2, 2, 2, 1, [](int x1, int x2, int y1, int y2, int) {
        return (y1 == x2 && y2 == x1) ? 1.0 : 0.0;
    });
}

/// Every output uniform and independent of the inputs.
inline wtc2::DmcSpec uninformative_channel()
{
    return make_dmc(2, 2, 2, 2, 2, [](int, int, int, int, int) { return 1.0 / 8.0; });
}

inline wtc2::Stochastic bsc_matrix(double q)
{
    return {2, 2, {1.0 - q, q, q, 1.0 - q}};
}

inline const std::vector<double> kUniform2{0.5, 0.5};

inline std::string source_path(const std::string& rel)
{
    return std::string(WTC2_SOURCE_DIR) + "/" + rel;
}

}  // namespace fixtures
