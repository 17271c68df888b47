#pragma once

#include <cstdlib>
#include <string>

namespace liepower {

/// Relative singular-value cutoff used for nilspace rank decisions.
/// LIEPOWER_TOL overrides the default of 1e-9; it is read once per process.
inline double global_tolerance() {
    static const double tol = [] {
        if (const char* env = std::getenv("LIEPOWER_TOL")) {
            char* end = nullptr;
            const double v = std::strtod(env, &end);
            if (end != env && v > 0.0 && v < 1.0) return v;
        }
        return 1e-9;
    }();
    return tol;
}

// Fixed thresholds for the eigenvalue dichotomies.
inline constexpr double kUnitRootWindow = 1e-8;
inline constexpr double kUnitRootExact = 1e-12;
inline constexpr double kNilspaceGapRatio = 10.0;
inline constexpr double kMembershipTol = 1e-8;
// Smallest singular value of Ad_g - 1 that regularity may treat as zero without abstaining.
inline constexpr double kMaxRegularityCutoff = 1e-3;

}  // namespace liepower
