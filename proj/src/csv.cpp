#include "wtc2/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace wtc2 {

std::string format_number(double v)
{
    if (v == 0.0) v = 0.0;  // drops the sign of -0
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 12);
    std::string s(buf.data(), res.ptr);
    if (s == "-0") s = "0";
    return s;
}

void write_polygon_csv(std::ostream& os, const Polygon2& poly)
{
    // Round-off residue around the axes prints as 0.
    auto snap = [](double v) { return std::abs(v) < 1e-12 ? 0.0 : v; };
    os << "R1,R2\n";
    for (const auto& p : poly.vertices()) os << format_number(snap(p.r1)) << ',' << format_number(snap(p.r2)) << '\n';
}

void write_sweep_csv(std::ostream& os, std::span<const SweepCell> cells)
{
    os << "rho1n,rho2n,a1,a2,e1,e2,e12\n";
    for (const auto& c : cells) {
        os << format_number(c.split.rho1n) << ',' << format_number(c.split.rho2n) << ',' << format_number(c.mi.a1)
           << ',' << format_number(c.mi.a2) << ',' << format_number(c.mi.e1) << ',' << format_number(c.mi.e2) << ','
           << format_number(c.mi.e12) << '\n';
    }
}

void write_keyrate_csv(std::ostream& os, std::span<const KeyRatePoint> pts)
{
    os << "rp,rk\n";
    for (const auto& p : pts) os << format_number(p.rp) << ',' << format_number(p.rk) << '\n';
}

bool trivial_region(const Polygon2& poly, double tol)
{
    for (const auto& p : poly.vertices()) {
        if (p.r1 > tol || p.r2 > tol) return false;
    }
    return true;
}

}  // namespace wtc2
