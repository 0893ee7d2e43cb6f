#pragma once

#include <cmath>
#include <sstream>

#include "mgt/errors.hpp"

namespace mgt::numerics {

inline constexpr double kPi = 3.14159265358979323846;

/// Bisection on a bracketed sign change. Stops when the bracket is narrower
/// than `abs_tol` or the residual is exactly zero.
template <class F>
double bisect(F&& f, double lo, double hi, double abs_tol, int max_iter = 200) {
    double f_lo = f(lo);
    double f_hi = f(hi);
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if ((f_lo > 0.0) == (f_hi > 0.0)) {
        std::ostringstream msg;
        msg << "bisection: no sign change on [" << lo << ", " << hi << "] (f = " << f_lo << ", "
            << f_hi << ")";
        throw SolverError(msg.str(), {f_lo, f_hi});
    }
    for (int it = 0; it < max_iter; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = f(mid);
        if (f_mid == 0.0) return mid;
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
        if (hi - lo <= abs_tol) return 0.5 * (lo + hi);
    }
    std::ostringstream msg;
    msg << "bisection: no convergence after " << max_iter << " iterations, bracket width "
        << (hi - lo);
    throw SolverError(msg.str(), {f_lo});
}

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

}  // namespace mgt::numerics
