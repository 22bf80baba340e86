#pragma once

#include <ostream>
#include <span>
#include <string>

#include "wtc2/key_agreement.hpp"
#include "wtc2/polytope.hpp"
#include "wtc2/regions.hpp"

namespace wtc2 {

/// Locale-independent shortest form with at most 12 significant digits; -0 prints as 0.
std::string format_number(double v);

/// Hull vertices counterclockwise under the header "R1,R2"; coordinates
/// within 1e-12 of zero print as 0.
void write_polygon_csv(std::ostream& os, const Polygon2& poly);
/// "rho1n,rho2n,a1,a2,e1,e2,e12", one row per grid cell.
void write_sweep_csv(std::ostream& os, std::span<const SweepCell> cells);
/// "rp,rk".
void write_keyrate_csv(std::ostream& os, std::span<const KeyRatePoint> pts);

/// A polygon that is empty or reduced to the origin carries no positive rate.
bool trivial_region(const Polygon2& poly, double tol = kGeomTol);

}  // namespace wtc2
