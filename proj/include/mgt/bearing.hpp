#pragma once

// Spiral-groove thrust air bearing: isothermal compressible Reynolds equation
// on the annulus, finite-volume discretization in log-spiral coordinates.
//
//   s   = ln(r / r_in)           (radial)
//   phi = theta - kappa s        (groove edges lie on phi = const)
//
// Unknown P = p / p_a with Psi = P^2 / 2, film H = h / c. In these coordinates
//
//   d/ds [ H^3 Psi_s - kappa H^3 Psi_phi ] +
//   d/dphi [ (1 + kappa^2) H^3 Psi_phi - kappa H^3 Psi_s - Lambda rt^2 P H ] = 0
//
// with rt = r / r_out and Lambda = 6 mu omega r_out^2 / (p_a c^2). The s-flux is
// rewritten through the phi-flux so that the only quantity differenced across a
// groove edge is the (continuous) phi-flux, which takes exact harmonic link
// averages of the step film. The residual splits as R = D Psi - Lambda E P with
// D, E constant, so the Newton Jacobian is D diag(P) - Lambda E.

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "mgt/errors.hpp"
#include "mgt/numerics.hpp"

namespace mgt::bearing {

using numerics::kPi;

enum class PumpDirection { pump_in, pump_out };

inline const char* to_string(PumpDirection d) { return d == PumpDirection::pump_in ? "pump-in" : "pump-out"; }

struct SpiralGrooveBearing {
    double inner_radius = 1.0e-3;   // m
    double outer_radius = 2.2e-3;   // m
    double groove_depth = 15.0e-6;  // m
    int groove_count = 12;
    double spiral_angle = 20.0;     // deg from circumferential
    double groove_width_fraction = 0.5;
    PumpDirection pump_direction = PumpDirection::pump_in;

    // dtheta/ds along a groove edge.
    double spiral_slope() const {
        const double k = 1.0 / std::tan(numerics::deg_to_rad(spiral_angle));
        return pump_direction == PumpDirection::pump_in ? -k : k;
    }

    double log_span() const { return std::log(outer_radius / inner_radius); }

    std::vector<std::string> violations() const {
        std::vector<std::string> v;
        if (!(inner_radius > 0.0)) v.push_back("bearing inner_radius must be > 0");
        if (!(outer_radius > inner_radius)) v.push_back("bearing outer_radius must exceed inner_radius");
        if (!(groove_depth >= 0.0)) v.push_back("bearing groove_depth must be >= 0");
        if (groove_count < 4) v.push_back("bearing groove_count must be >= 4");
        if (!(spiral_angle > 5.0 && spiral_angle < 85.0)) v.push_back("bearing spiral_angle must lie in (5, 85) deg");
        if (!(groove_width_fraction > 0.0 && groove_width_fraction < 1.0))
            v.push_back("bearing groove_width_fraction must lie in (0, 1)");
        return v;
    }

    void validate() const {
        auto v = violations();
        if (!v.empty()) throw ParameterError(v.front());
    }
};

struct FilmState {
    double nominal_clearance = 5.0e-6;  // m
    double rpm = 15000.0;               // signed; negative reverses the runner
    double ambient_pressure = 101325.0; // Pa
    double viscosity = 1.85e-5;         // Pa s

    double omega() const { return 2.0 * kPi * rpm / 60.0; }

    std::vector<std::string> violations() const {
        std::vector<std::string> v;
        if (!(nominal_clearance > 0.0)) v.push_back("film nominal_clearance must be > 0");
        if (!(ambient_pressure > 0.0)) v.push_back("film ambient_pressure must be > 0");
        if (!(viscosity > 0.0)) v.push_back("film viscosity must be > 0");
        if (!std::isfinite(rpm)) v.push_back("film rpm must be finite");
        return v;
    }

    void validate() const {
        auto v = violations();
        if (!v.empty()) throw ParameterError(v.front());
    }
};

// Node spacing is graded as x^q / (x^q + (1 - x)^q) toward both rims (radial)
// and toward both edges of every groove and land (angular). q = 1 is uniform.
// Angular grading needs cell faces on the groove edges: n_theta a multiple of
// groove_count with groove_width_fraction * n_theta / groove_count integral.
struct GridSpec {
    int n_r = 65;
    int n_theta = 192;
    double radial_grading = 2.0;
    double angular_grading = 2.0;
};

/// Compressibility number 6 mu omega r_out^2 / (p_a c^2); signed with rpm.
inline double compressibility_number(const SpiralGrooveBearing& b, const FilmState& f) {
    return 6.0 * f.viscosity * f.omega() * b.outer_radius * b.outer_radius /
           (f.ambient_pressure * f.nominal_clearance * f.nominal_clearance);
}

namespace detail {

// Groove length contained in [0, x] of the phi axis (x may be negative).
inline double groove_measure(const SpiralGrooveBearing& b, double x) {
    const double pitch = 2.0 * kPi / b.groove_count;
    const double k = std::floor(x / pitch);
    const double loc = x - k * pitch;
    return k * b.groove_width_fraction * pitch + std::min(loc, b.groove_width_fraction * pitch);
}

// Exact mean of f(H) over [lo, hi] of the phi axis for the step film.
template <class F>
double film_mean(const SpiralGrooveBearing& b, double delta, double lo, double hi, F&& f) {
    const double g = groove_measure(b, hi) - groove_measure(b, lo);
    return (g * f(1.0 + delta) + (hi - lo - g) * f(1.0)) / (hi - lo);
}

inline double wrap_angle(double x) {
    double y = std::fmod(x, 2.0 * kPi);
    if (y < 0.0) y += 2.0 * kPi;
    return y;
}

}  // namespace detail

/// Local film thickness at (r, theta).
inline double film_thickness(const SpiralGrooveBearing& b, const FilmState& f, double r, double theta) {
    if (!(r >= b.inner_radius && r <= b.outer_radius)) {
        std::ostringstream msg;
        msg << "radius " << r << " m outside the bearing annulus [" << b.inner_radius << ", " << b.outer_radius << "]";
        throw DomainError(msg.str());
    }
    const double phi = detail::wrap_angle(theta - b.spiral_slope() * std::log(r / b.inner_radius));
    const double pitch = 2.0 * kPi / b.groove_count;
    const double frac = phi / pitch - std::floor(phi / pitch);
    return frac < b.groove_width_fraction ? f.nominal_clearance + b.groove_depth : f.nominal_clearance;
}

inline double graded(double x, double q) {
    if (q == 1.0) return x;
    const double a = std::pow(x, q), b = std::pow(1.0 - x, q);
    return a / (a + b);
}

/// Radial nodes in s = ln(r / r_in).
inline std::vector<double> radial_nodes(double span, int n_r, double grading) {
    std::vector<double> s(n_r);
    for (int i = 0; i < n_r; ++i) s[i] = span * graded(static_cast<double>(i) / (n_r - 1), grading);
    s.front() = 0.0;
    s.back() = span;
    return s;
}

/// n_theta + 1 cell faces on [0, 2 pi] of the phi axis.
inline std::vector<double> angular_faces(const SpiralGrooveBearing& b, int n_theta, double grading) {
    std::vector<double> f(n_theta + 1);
    if (grading == 1.0) {
        for (int j = 0; j <= n_theta; ++j) f[j] = 2.0 * kPi * j / n_theta;
        return f;
    }
    const int per_pitch = n_theta / b.groove_count;
    const double groove_cells = b.groove_width_fraction * per_pitch;
    const int mg = static_cast<int>(std::lround(groove_cells));
    if (per_pitch * b.groove_count != n_theta || std::abs(groove_cells - mg) > 1e-9 || mg < 1 || mg >= per_pitch) {
        std::ostringstream msg;
        msg << "angular grading needs groove edges on cell faces; n_theta = " << n_theta << " does not fit "
            << b.groove_count << " grooves of width fraction " << b.groove_width_fraction;
        throw ParameterError(msg.str());
    }
    const int ml = per_pitch - mg;
    const double pitch = 2.0 * kPi / b.groove_count, wg = b.groove_width_fraction * pitch;
    int j = 0;
    for (int k = 0; k < b.groove_count; ++k) {
        const double base = k * pitch;
        for (int i = 0; i < mg; ++i) f[j++] = base + wg * graded(static_cast<double>(i) / mg, grading);
        for (int i = 0; i < ml; ++i) f[j++] = base + wg + (pitch - wg) * graded(static_cast<double>(i) / ml, grading);
    }
    f[n_theta] = 2.0 * kPi;
    return f;
}

// Exact integrals of e^{2s} against the piecewise-linear hat of each node.
inline std::vector<double> load_weights(const std::vector<double>& s) {
    std::vector<double> w(s.size(), 0.0);
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        const double d = s[i + 1] - s[i];
        const double e2a = std::exp(2.0 * s[i]);
        const double e2d = std::exp(2.0 * d);
        const double total = e2a * (e2d - 1.0) / 2.0;
        const double rise = e2a / d * (d * e2d / 2.0 - (e2d - 1.0) / 4.0);
        w[i + 1] += rise;
        w[i] += total - rise;
    }
    return w;
}

struct PressureField {
    int n_r = 0;
    int n_theta = 0;
    std::vector<double> radii;      // n_r, m
    std::vector<double> angles;     // n_r * n_theta, rad in [0, 2 pi)
    std::vector<double> pressures;  // n_r * n_theta, Pa, row-major over (r, theta)
    std::vector<double> cell_widths;  // n_theta, angular extent of each node's cell
    double ambient_pressure = 0.0;
    std::vector<double> residual_history;  // max relative nodal residual per iterate
    int iterations = 0;
    int step_halvings = 0;

    double p(int i, int j) const { return pressures[static_cast<std::size_t>(i) * n_theta + j]; }
    double theta(int i, int j) const { return angles[static_cast<std::size_t>(i) * n_theta + j]; }
    double max_relative_residual() const { return residual_history.empty() ? 0.0 : residual_history.back(); }
};

namespace detail {

struct Operators {
    Eigen::SparseMatrix<double> D;  // acts on Psi
    Eigen::SparseMatrix<double> E;  // acts on P, scaled by Lambda
    std::vector<char> boundary;
    std::vector<double> s;
    std::vector<double> faces;   // n_theta + 1
    std::vector<double> nodes;   // n_theta, cell centres on the phi axis
    std::vector<double> widths;  // n_theta
    double kappa = 0.0;
};

inline Operators build_operators(const SpiralGrooveBearing& b, double delta, const GridSpec& g) {
    const int nr = g.n_r, np = g.n_theta;
    const int n = nr * np;
    Operators op;
    op.s = radial_nodes(b.log_span(), nr, g.radial_grading);
    op.faces = angular_faces(b, np, g.angular_grading);
    op.nodes.resize(np);
    op.widths.resize(np);
    for (int j = 0; j < np; ++j) {
        op.nodes[j] = 0.5 * (op.faces[j] + op.faces[j + 1]);
        op.widths[j] = op.faces[j + 1] - op.faces[j];
    }
    op.kappa = b.spiral_slope();
    const auto& s = op.s;
    const auto& cw = op.widths;
    const double kap = op.kappa, K = 1.0 + kap * kap;
    const double ratio2 = std::pow(b.inner_radius / b.outer_radius, 2);
    auto r2 = [&](double sv) { return ratio2 * std::exp(2.0 * sv); };

    // link l joins nodes l and l+1 (wrapping) across face l+1; cell j spans faces j, j+1
    std::vector<double> hm3(np), hq(np), h3c(np), h1c(np), len(np), alpha(np);
    for (int l = 0; l < np; ++l) {
        const double a = op.nodes[l];
        const double e = l + 1 < np ? op.nodes[l + 1] : op.nodes[0] + 2.0 * kPi;
        len[l] = e - a;
        alpha[l] = (op.faces[l + 1] - a) / len[l];
        const double i3 = film_mean(b, delta, a, e, [](double H) { return 1.0 / (H * H * H); });
        const double i2 = film_mean(b, delta, a, e, [](double H) { return 1.0 / (H * H); });
        hm3[l] = 1.0 / i3;
        hq[l] = i2 / i3;
        h3c[l] = film_mean(b, delta, op.faces[l], op.faces[l + 1], [](double H) { return H * H * H; });
        h1c[l] = film_mean(b, delta, op.faces[l], op.faces[l + 1], [](double H) { return H; });
    }

    auto node = [np](int i, int j) { return i * np + ((j % np) + np) % np; };
    std::vector<Eigen::Triplet<double>> td, te;
    td.reserve(static_cast<std::size_t>(n) * 40);
    te.reserve(static_cast<std::size_t>(n) * 24);
    int row = 0;
    auto psi = [&](int col, double v) { td.emplace_back(row, col, v); };
    auto pp = [&](int col, double v) { te.emplace_back(row, col, v); };

    using Weights = std::vector<std::pair<int, double>>;
    // phi-face flux on link l at the radial position given by row weights
    auto gphi = [&](double scale, const Weights& rows, const Weights& dsw, int l, double r2v) {
        const int lp = l + 1;
        const double al = alpha[l];
        for (auto [i, wt] : rows) {
            psi(node(i, lp), scale * hm3[l] * K * wt / len[l]);
            psi(node(i, l), -scale * hm3[l] * K * wt / len[l]);
            pp(node(i, l), scale * (1.0 - al) * wt * r2v * hq[l]);
            pp(node(i, lp), scale * al * wt * r2v * hq[l]);
        }
        for (auto [i, wt] : dsw) {
            psi(node(i, l), -scale * hm3[l] * kap * wt * (1.0 - al));
            psi(node(i, lp), -scale * hm3[l] * kap * wt * al);
        }
    };
    // s-face flux between rows i and i+1 of cell j
    auto gs = [&](double scale, int i, int j) {
        const double d = s[i + 1] - s[i];
        const double r2v = r2(0.5 * (s[i] + s[i + 1]));
        const Weights rows{{i, 0.5}, {i + 1, 0.5}};
        const Weights dsr{{i, -1.0 / d}, {i + 1, 1.0 / d}};
        for (auto [ii, wt] : dsr) psi(node(ii, j), scale * h3c[j] * wt / K);
        const int jm = ((j - 1) % np + np) % np;
        gphi(-scale * kap / K * 0.5, rows, dsr, jm, r2v);
        gphi(-scale * kap / K * 0.5, rows, dsr, j, r2v);
        for (auto [ii, wt] : rows) pp(node(ii, j), scale * kap / K * r2v * h1c[j] * wt);
    };

    for (int i = 1; i < nr - 1; ++i) {
        const double hm = s[i] - s[i - 1], hp = s[i + 1] - s[i];
        const Weights dsw{{i - 1, -hp / (hm * (hm + hp))}, {i, (hp - hm) / (hm * hp)}, {i + 1, hm / (hp * (hm + hp))}};
        const Weights rows{{i, 1.0}};
        const double hs = 0.5 * (s[i + 1] - s[i - 1]);
        const double r2v = r2(s[i]);
        for (int j = 0; j < np; ++j) {
            row = node(i, j);
            gs(cw[j], i, j);
            gs(-cw[j], i - 1, j);
            gphi(hs, rows, dsw, j, r2v);
            gphi(-hs, rows, dsw, ((j - 1) % np + np) % np, r2v);
        }
    }
    op.D.resize(n, n);
    op.E.resize(n, n);
    op.D.setFromTriplets(td.begin(), td.end());
    op.E.setFromTriplets(te.begin(), te.end());
    op.boundary.assign(n, 0);
    for (int j = 0; j < np; ++j) {
        op.boundary[node(0, j)] = 1;
        op.boundary[node(nr - 1, j)] = 1;
    }
    return op;
}

// Max over nodes of |R| / (sum of |terms| in that node's balance).
inline double max_relative_residual(const Operators& op, double lambda, const Eigen::VectorXd& P,
                                    Eigen::VectorXd* residual = nullptr) {
    const Eigen::VectorXd psi = 0.5 * P.array().square().matrix();
    Eigen::VectorXd R = op.D * psi - lambda * (op.E * P);
    const Eigen::VectorXd scale =
        op.D.cwiseAbs() * psi.cwiseAbs() + std::abs(lambda) * (op.E.cwiseAbs() * P.cwiseAbs());
    double worst = 0.0;
    for (Eigen::Index k = 0; k < R.size(); ++k) {
        if (op.boundary[k]) {
            R[k] = P[k] - 1.0;
            worst = std::max(worst, std::abs(R[k]));
        } else if (scale[k] > 0.0) {
            worst = std::max(worst, std::abs(R[k]) / scale[k]);
        }
    }
    if (residual) *residual = std::move(R);
    return worst;
}

}  // namespace detail

struct SolverOptions {
    double tolerance = 1e-9;  // relative nodal residual
    int max_iterations = 50;
    int max_halvings = 30;
};

/// Steady film pressure. Newton from the ambient field; steps that would make
/// any pressure non-positive (or raise the residual) are halved.
inline PressureField solve_reynolds(const SpiralGrooveBearing& b, const FilmState& f, const GridSpec& grid = {},
                                    const SolverOptions& opt = {}) {
    b.validate();
    f.validate();
    if (grid.n_r < 32 || grid.n_theta < 64) {
        std::ostringstream msg;
        msg << "bearing grid " << grid.n_r << " x " << grid.n_theta << " is below the 32 x 64 minimum";
        throw ParameterError(msg.str());
    }
    if (!(grid.radial_grading >= 1.0 && grid.angular_grading >= 1.0))
        throw ParameterError("grid grading exponents must be >= 1");

    const double delta = b.groove_depth / f.nominal_clearance;
    const double lambda = compressibility_number(b, f);
    const auto op = detail::build_operators(b, delta, grid);
    const int n = grid.n_r * grid.n_theta;

    Eigen::SparseMatrix<double> I(n, n);
    {
        std::vector<Eigen::Triplet<double>> t;
        for (int k = 0; k < n; ++k)
            if (op.boundary[k]) t.emplace_back(k, k, 1.0);
        I.setFromTriplets(t.begin(), t.end());
    }
    const Eigen::SparseMatrix<double> lamE = lambda * op.E;

    PressureField out;
    Eigen::VectorXd P = Eigen::VectorXd::Ones(n);
    Eigen::VectorXd R;
    double res = detail::max_relative_residual(op, lambda, P, &R);
    out.residual_history.push_back(res);

    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    bool pattern_ready = false;
    while (res > opt.tolerance) {
        if (out.iterations >= opt.max_iterations) {
            std::ostringstream msg;
            msg << "Reynolds solver did not converge in " << opt.max_iterations << " Newton iterations (residual "
                << res << ")";
            throw SolverError(msg.str(), out.residual_history);
        }
        Eigen::SparseMatrix<double> J = op.D * P.asDiagonal();
        J = J - lamE + I;
        J.makeCompressed();
        if (!pattern_ready) {
            lu.analyzePattern(J);
            pattern_ready = true;
        }
        lu.factorize(J);
        if (lu.info() != Eigen::Success) throw SolverError("Reynolds Jacobian factorization failed", out.residual_history);
        const Eigen::VectorXd dP = lu.solve(-R);

        double step = 1.0;
        Eigen::VectorXd trial, R_trial;
        double res_trial = std::numeric_limits<double>::infinity();
        for (int h = 0;; ++h) {
            trial = P + step * dP;
            if (trial.minCoeff() > 0.0) {
                res_trial = detail::max_relative_residual(op, lambda, trial, &R_trial);
                if (res_trial < res || h >= opt.max_halvings) break;
            } else if (h >= opt.max_halvings) {
                throw SolverError("Reynolds solver could not keep pressures positive", out.residual_history);
            }
            step *= 0.5;
            ++out.step_halvings;
        }
        ++out.iterations;
        const bool stalled = !(res_trial < res);
        P = std::move(trial);
        R = std::move(R_trial);
        res = res_trial;
        out.residual_history.push_back(res);
        if (stalled && res > opt.tolerance) {
            std::ostringstream msg;
            msg << "Reynolds solver stalled at residual " << res;
            throw SolverError(msg.str(), out.residual_history);
        }
    }

    const int nr = grid.n_r, np = grid.n_theta;
    out.n_r = nr;
    out.n_theta = np;
    out.ambient_pressure = f.ambient_pressure;
    out.cell_widths = op.widths;
    out.radii.resize(nr);
    out.angles.resize(n);
    out.pressures.resize(n);
    for (int i = 0; i < nr; ++i) {
        out.radii[i] = b.inner_radius * std::exp(op.s[i]);
        for (int j = 0; j < np; ++j) {
            const int k = i * np + j;
            out.angles[k] = detail::wrap_angle(op.nodes[j] + op.kappa * op.s[i]);
            out.pressures[k] = P[k] * f.ambient_pressure;
        }
    }
    // rim rows are ambient by construction
    for (int j = 0; j < np; ++j) {
        out.pressures[j] = f.ambient_pressure;
        out.pressures[static_cast<std::size_t>(nr - 1) * np + j] = f.ambient_pressure;
    }
    return out;
}

/// Max relative nodal residual of the discrete equations at a given field.
inline double residual_of(const SpiralGrooveBearing& b, const FilmState& f, const GridSpec& grid,
                          const PressureField& field) {
    const auto op = detail::build_operators(b, b.groove_depth / f.nominal_clearance, grid);
    Eigen::VectorXd P(static_cast<Eigen::Index>(field.pressures.size()));
    for (std::size_t k = 0; k < field.pressures.size(); ++k) P[k] = field.pressures[k] / field.ambient_pressure;
    return detail::max_relative_residual(op, compressibility_number(b, f), P);
}

/// Integral of p - p_a over the annulus, N.
inline double load_capacity(const PressureField& field) {
    if (field.n_r < 2 || field.n_theta < 1) throw ParameterError("pressure field is empty");
    const double r_in = field.radii.front();
    std::vector<double> s(field.n_r);
    for (int i = 0; i < field.n_r; ++i) s[i] = std::log(field.radii[i] / r_in);
    s.front() = 0.0;
    const auto w = load_weights(s);
    if (field.cell_widths.size() != static_cast<std::size_t>(field.n_theta))
        throw ParameterError("pressure field lacks angular cell widths");
    double sum = 0.0;
    for (int i = 0; i < field.n_r; ++i) {
        double row = 0.0;
        for (int j = 0; j < field.n_theta; ++j) row += field.cell_widths[j] * (field.p(i, j) - field.ambient_pressure);
        sum += w[i] * row;
    }
    return sum * r_in * r_in;
}

inline double load(const SpiralGrooveBearing& b, const FilmState& f, const GridSpec& grid = {}) {
    return load_capacity(solve_reynolds(b, f, grid));
}

struct NarrowGrooveResult {
    double load;  // N
    bool applicable;
    std::string warning;
};

/// Infinite-groove-number, incompressible spiral-groove load.
inline NarrowGrooveResult narrow_groove_reference(const SpiralGrooveBearing& b, const FilmState& f) {
    b.validate();
    f.validate();
    const double hg = f.nominal_clearance + b.groove_depth, hl = f.nominal_clearance;
    const double w = b.groove_width_fraction;
    auto avg = [&](auto fn) { return w * fn(hg) + (1.0 - w) * fn(hl); };
    const double beta = numerics::deg_to_rad(b.spiral_angle);
    const double sb = std::sin(beta), cb = std::cos(beta);
    const double h3 = avg([](double h) { return h * h * h; });
    const double hm3 = avg([](double h) { return 1.0 / (h * h * h); });
    const double hm2 = avg([](double h) { return 1.0 / (h * h); });
    const double h1 = avg([](double h) { return h; });
    const double a = (h3 * sb * sb + cb * cb / hm3) / (12.0 * f.viscosity);
    const double sense = b.pump_direction == PumpDirection::pump_in ? -1.0 : 1.0;
    const double bc = sense * sb * cb / 2.0 * (h1 - hm2 / hm3);
    const double ro = b.outer_radius, ri = b.inner_radius;
    const double A = ro * ro - ri * ri, L = std::log(ro / ri);
    const double W = 2.0 * kPi * (bc * f.omega() / a) * A * (A * (1.0 + 1.0 / L) / 8.0 - ro * ro / 4.0);
    NarrowGrooveResult out{W, true, ""};
    if (b.groove_count < 12) {
        out.applicable = false;
        out.warning = "narrow-groove theory assumes many grooves; groove_count " + std::to_string(b.groove_count) +
                      " < 12";
    }
    return out;
}

/// -dW/dc by central difference with relative step on the clearance.
inline double axial_stiffness(const SpiralGrooveBearing& b, const FilmState& f, const GridSpec& grid = {},
                              double relative_step = 1e-3) {
    const double dc = relative_step * f.nominal_clearance;
    FilmState lo = f, hi = f;
    lo.nominal_clearance -= dc;
    hi.nominal_clearance += dc;
    return -(load(b, hi, grid) - load(b, lo, grid)) / (2.0 * dc);
}

struct AxialEquilibrium {
    double top_clearance;     // m
    double bottom_clearance;  // m
    double top_load;          // N
    double bottom_load;       // N
    double net_load;          // top - bottom, N
    bool converged;
    int evaluations;
};

struct EquilibriumOptions {
    double load_tolerance = 1e-6;     // N
    double clearance_tolerance = 1e-12;  // m
    double min_fraction = 0.05;       // search window as a fraction of the total gap
    int max_evaluations = 200;
};

/// Clearance split where top load - bottom load = external_load. Each bearing
/// is solved in the frame of its own stator face, so the bottom bearing sees
/// the runner turning the other way. external_load is positive toward the top
/// bearing (a rotor weight acting toward the bottom bearing enters negative).
inline AxialEquilibrium axial_equilibrium(const SpiralGrooveBearing& top, const SpiralGrooveBearing& bottom,
                                          double total_gap, double external_load, double rpm, double ambient_pressure,
                                          double viscosity = 1.85e-5, const GridSpec& grid = {},
                                          const EquilibriumOptions& opt = {}) {
    if (!(total_gap > 0.0)) throw ParameterError("total axial gap must be > 0");
    int evals = 0;
    struct Eval {
        double c, top, bottom, f;
    };
    auto evaluate = [&](double c_top) {
        ++evals;
        FilmState ft{c_top, rpm, ambient_pressure, viscosity};
        FilmState fb{total_gap - c_top, -rpm, ambient_pressure, viscosity};
        const double wt = load(top, ft, grid);
        const double wb = load(bottom, fb, grid);
        return Eval{c_top, wt, wb, wt - wb - external_load};
    };
    auto finish = [&](const Eval& e, bool ok) {
        return AxialEquilibrium{e.c, total_gap - e.c, e.top, e.bottom, e.top - e.bottom, ok, evals};
    };

    const double lo_c = opt.min_fraction * total_gap, hi_c = (1.0 - opt.min_fraction) * total_gap;
    Eval mid = evaluate(0.5 * total_gap);
    if (std::abs(mid.f) <= opt.load_tolerance) return finish(mid, true);

    // f falls as c_top grows: search toward larger c_top when f > 0
    const double dir = mid.f > 0.0 ? 1.0 : -1.0;
    const double edge = dir > 0.0 ? hi_c : lo_c;
    Eval a = mid, bnd = mid;
    bool bracketed = false;
    for (double frac : {0.25, 0.5, 0.75, 1.0}) {
        bnd = evaluate(mid.c + frac * (edge - mid.c));
        if (std::abs(bnd.f) <= opt.load_tolerance) return finish(bnd, true);
        if ((bnd.f > 0.0) != (a.f > 0.0)) {
            bracketed = true;
            break;
        }
        a = bnd;
    }
    if (!bracketed) {
        const Eval other = evaluate(dir > 0.0 ? lo_c : hi_c);
        std::ostringstream msg;
        msg.precision(6);
        msg << "no axial equilibrium in c_top = [" << lo_c << ", " << hi_c << "] m: load imbalance "
            << (dir > 0.0 ? other.f : bnd.f) << " N at the low end, " << (dir > 0.0 ? bnd.f : other.f)
            << " N at the high end";
        throw SolverError(msg.str(), {other.f, bnd.f});
    }
    Eval l = a, h = bnd;
    while (evals < opt.max_evaluations) {
        const Eval m = evaluate(0.5 * (l.c + h.c));
        if (std::abs(m.f) <= opt.load_tolerance) return finish(m, true);
        ((m.f > 0.0) == (l.f > 0.0) ? l : h) = m;
        if (std::abs(h.c - l.c) <= opt.clearance_tolerance) return finish(m, false);
    }
    return finish(std::abs(l.f) < std::abs(h.f) ? l : h, false);
}

}  // namespace mgt::bearing
