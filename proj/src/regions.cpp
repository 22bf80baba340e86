#include "wtc2/regions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>

#include "wtc2/errors.hpp"

namespace wtc2 {
namespace {

void require_ledger(bool ok, const std::string& what)
{
    if (!ok) throw LedgerError(what);
}

Polygon2 orthant_box(Point2 p)
{
    const double x = std::max(0.0, p.r1);
    const double y = std::max(0.0, p.r2);
    return Polygon2({{0.0, 0.0}, {x, 0.0}, {0.0, y}, {x, y}});
}

// Keeps the running point cloud small by replacing it with its hull.
void compress(std::vector<Point2>& pts)
{
    if (pts.size() > 64) pts = convex_hull(std::move(pts));
}

double grid_value(double rho, int i, int n)
{
    if (i == n - 1) return rho;
    return rho * static_cast<double>(i) / static_cast<double>(n - 1);
}

}  // namespace

void RateSplitLedger::validate_budgets(double tol) const
{
    for (int i : {1, 2}) {
        const User& u = user(i);
        for (double v : {u.rs, u.rk, u.ro, u.re, u.rd, u.rg}) {
            require_ledger(v >= -tol, "ledger rates must be >= 0 (user " + std::to_string(i) + ")");
        }
    }
    require_ledger(u1.re <= u2.rk + tol, "user 1 encrypts more than the key user 2 sends");
    require_ledger(u2.re <= u1.rk + tol, "user 2 encrypts more than the key user 1 sends");
}

void RateSplitLedger::validate_channel(const MiProfile& mi, double tol) const
{
    require_ledger(u1.secret_rate() + u1.aux_rate() <= mi.a1 + tol, "user 1 exceeds I(Y2;C1|X2)");
    require_ledger(u2.secret_rate() + u2.aux_rate() <= mi.a2 + tol, "user 2 exceeds I(Y1;C2|X1)");
    require_ledger(u1.aux_rate() + u2.aux_rate() >= mi.e12 - tol, "auxiliary rates below I(C1C2;Z)");
    require_ledger(u1.aux_rate() >= mi.e1 - tol, "user 1 auxiliary rate below I(C1;Z)");
    require_ledger(u2.aux_rate() >= mi.e2 - tol, "user 2 auxiliary rate below I(C2;Z)");
}

KeyExchange saturating_exchange(const RatePoint4& p, double rk1, double rk2)
{
    return {rk1, rk2, std::min(rk2, p.r1p), std::min(rk1, p.r2p)};
}

KeyExchangeResult key_exchange_ledger(const RatePoint4& p, const KeyExchange& kx)
{
    require_ledger(kx.rk1 <= p.r1 + kGeomTol && kx.rk2 <= p.r2 + kGeomTol, "key rate exceeds the secret rate");
    require_ledger(kx.re1 <= p.r1p + kGeomTol && kx.re2 <= p.r2p + kGeomTol,
                   "encrypted rate exceeds the auxiliary rate");
    KeyExchangeResult out;
    RateSplitLedger& l = out.ledger;
    l.u1 = {p.r1 - kx.rk1, kx.rk1, p.r1p - kx.re1, kx.re1};
    l.u2 = {p.r2 - kx.rk2, kx.rk2, p.r2p - kx.re2, kx.re2};
    l.validate_budgets();
    out.effective = l.effective();
    return out;
}

HalfspaceSystem prop1_system(const MiProfile& mi)
{
    HalfspaceSystem s(4);
    s.add_le({1, 0, 1, 0}, mi.a1);
    s.add_le({0, 1, 0, 1}, mi.a2);
    s.add_ge({0, 0, 1, 1}, mi.e12);
    s.add_ge({0, 0, 1, 0}, mi.e1);
    s.add_ge({0, 0, 0, 1}, mi.e2);
    s.add_nonnegativity();
    return s;
}

HalfspaceSystem ty_aux_system(const MiProfile& mi)
{
    HalfspaceSystem s(4);
    s.add_le({1, 0, 1, 0}, mi.a1);
    s.add_le({0, 1, 0, 1}, mi.a2);
    s.add_eq({0, 0, 1, 1}, mi.e12);
    s.add_le({0, 0, 1, 0}, mi.e1c);
    s.add_le({0, 0, 0, 1}, mi.e2c);
    s.add_nonnegativity();
    return s;
}

Polygon2 corollary1_polygon(const MiProfile& mi)
{
    HalfspaceSystem s(2);
    s.add_le({1, 0}, mi.a1 - mi.e1);
    s.add_le({0, 1}, mi.a2 - mi.e2);
    s.add_le({1, 1}, mi.a1 + mi.a2 - mi.e12);
    s.add_nonnegativity();
    return vertices_2d(s);
}

Polygon2 kx_polygon(const MiProfile& mi)
{
    // If no auxiliary split covers Eve there is no ledger to exchange keys on.
    if (mi.a1 < mi.e1 - kGeomTol || mi.a2 < mi.e2 - kGeomTol) return {};
    HalfspaceSystem s(2);
    s.add_le({1, 0}, mi.a1);
    s.add_le({0, 1}, mi.a2);
    s.add_le({1, 1}, mi.a1 + mi.a2 - mi.e12);
    s.add_nonnegativity();
    return vertices_2d(s);
}

bool projection_equivalence_check(const MiProfile& mi)
{
    constexpr std::array<int, 2> keep{kR1, kR2};
    const Polygon2 direct = vertices_2d(project_fm(prop1_system(mi), keep));
    const Polygon2 ty = vertices_2d(project_fm(ty_aux_system(mi), keep));
    return same_vertices(direct, ty) && same_vertices(direct, corollary1_polygon(mi));
}

KgOutcome kg_augment(const MiProfile& mi, const KeyRateCurve& curve, const KgConfig& cfg,
                     const RateSplitLedger& base)
{
    if (cfg.encryptor != 1 && cfg.encryptor != 2) {
        throw ParameterError("encryptor must be user 1 or 2");
    }
    base.validate_budgets();
    base.validate_channel(mi);

    const int c = cfg.communicator();
    const int e = cfg.encryptor;
    const double open_c = std::max(0.0, base.user(c).ro);
    const double open_e = std::max(0.0, base.user(e).ro);

    KeyRatePoint use;
    if (c == e) {
        use = curve.best_with_shared_budget(open_c);
    } else {
        use.rk = std::min(curve.at(open_c), open_e);
        use.rp = std::min(open_c, curve.public_rate_for(use.rk));
    }

    KgOutcome out;
    out.ledger = base;
    out.public_rate = use.rp;
    out.key_rate = use.rk;
    auto& uc = out.ledger.user(c);
    uc.ro = std::max(0.0, uc.ro - use.rp);
    uc.rd += use.rp;
    auto& ue = out.ledger.user(e);
    ue.ro = std::max(0.0, ue.ro - use.rk);
    ue.rg += use.rk;
    // The discussion and the generated-key ciphertext still count as auxiliary rate.
    out.ledger.validate_budgets();
    out.ledger.validate_channel(mi);
    out.region = orthant_box(out.ledger.effective());
    return out;
}

KgOutcome kg_augment(const MiProfile& mi, const InducedDmsCov& dms, const KgConfig& cfg,
                     const RateSplitLedger& base)
{
    const ScalarDegradedSource src = reduce_dms(dms, cfg.chain);
    return kg_augment(mi, key_rate_curve(src), cfg, base);
}

std::vector<RateSplitLedger> ledger_corners(const MiProfile& mi, int exchange_steps)
{
    if (exchange_steps < 1) throw ParameterError("exchange_steps must be >= 1");
    std::vector<RateSplitLedger> out;
    for (const auto& v : vertices_nd(prop1_system(mi))) {
        RatePoint4 p;
        p.r1 = std::max(0.0, v[kR1]);
        p.r2 = std::max(0.0, v[kR2]);
        p.r1p = std::max(v[kR1p], mi.a1 - p.r1);
        p.r2p = std::max(v[kR2p], mi.a2 - p.r2);

        out.push_back(key_exchange_ledger(p, {}).ledger);
        for (int s = 1; s <= exchange_steps; ++s) {
            const double f = static_cast<double>(s) / exchange_steps;
            const double k12 = f * std::min(p.r1, p.r2p);
            if (k12 > 0.0) out.push_back(key_exchange_ledger(p, saturating_exchange(p, k12, 0.0)).ledger);
            const double k21 = f * std::min(p.r2, p.r1p);
            if (k21 > 0.0) out.push_back(key_exchange_ledger(p, saturating_exchange(p, 0.0, k21)).ledger);
        }
    }
    return out;
}

RegionSet sweep_regions(const ChannelParams& params, const SweepOptions& opts)
{
    params.validate();
    if (opts.grid < 2) throw ParameterError("grid must be >= 2");

    RegionSet out;
    std::vector<Point2> cj_pts;
    std::vector<Point2> kx_pts;
    std::vector<Point2> kg_pts;
    const int n = opts.grid;
    out.cells.reserve(static_cast<std::size_t>(n) * n);

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const PowerSplit split{grid_value(params.rho1, i, n), grid_value(params.rho2, j, n)};
            const MiProfile mi = mi_profile(params, split);
            out.cells.push_back({split, mi});

            if (opts.want_cj) {
                const Polygon2 cj = corollary1_polygon(mi);
                cj_pts.insert(cj_pts.end(), cj.vertices().begin(), cj.vertices().end());
            }
            if (!opts.want_kx && !opts.want_kg) continue;
            const Polygon2 kx = kx_polygon(mi);
            if (opts.want_kx) kx_pts.insert(kx_pts.end(), kx.vertices().begin(), kx.vertices().end());
            if (!opts.want_kg) continue;

            // Key generation without public discussion reproduces key exchange.
            kg_pts.insert(kg_pts.end(), kx.vertices().begin(), kx.vertices().end());

            const InducedDmsCov dms = induced_dms_cov(params, split);
            std::optional<KeyRateCurve> curves[2];
            for (Chain ch : {Chain::A, Chain::B}) {
                const double hidden = ch == Chain::A ? split.rho1n : split.rho2n;
                if (hidden > 0.0) {
                    curves[ch == Chain::A ? 0 : 1] = key_rate_curve(reduce_dms(dms, ch), opts.test_channels);
                }
            }
            if (!curves[0] && !curves[1]) continue;

            for (const auto& base : ledger_corners(mi, opts.exchange_steps)) {
                for (const KgConfig& cfg : kAllKgConfigs) {
                    const auto& curve = curves[cfg.chain == Chain::A ? 0 : 1];
                    if (!curve) continue;
                    const KgOutcome o = kg_augment(mi, *curve, cfg, base);
                    kg_pts.insert(kg_pts.end(), o.region.vertices().begin(), o.region.vertices().end());
                }
            }
            compress(kg_pts);
        }
        compress(cj_pts);
        compress(kx_pts);
    }
    out.cj = Polygon2(std::move(cj_pts));
    out.kx = Polygon2(std::move(kx_pts));
    out.kg = Polygon2(std::move(kg_pts));
    return out;
}

bool prop4_condition(const ChannelParams& params)
{
    params.validate();
    if (params.h1 == 0.0 || params.h2 == 0.0) return false;
    const double bound1 = (params.h2 - 1.0) / params.h1;
    const double bound2 = (params.h1 - 1.0) / params.h2;
    return 0.0 < params.rho1 && params.rho1 < bound1 && 0.0 < params.rho2 && params.rho2 < bound2;
}

double multi_round_rate(double r_first, double r_steady, int rounds)
{
    if (rounds < 1) throw ParameterError("number of rounds must be >= 1");
    return (r_first + (rounds - 1) * r_steady) / rounds;
}

}  // namespace wtc2
