#include "hydrospec/resonance.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "hydrospec/circle_disc.hpp"
#include "hydrospec/segment_disc.hpp"

namespace hydrospec {

double distance_to_curve(Complex c, const std::vector<Complex>& curve) {
    double best = std::numeric_limits<double>::infinity();
    for (const Complex& s : curve) best = std::min(best, std::abs(c - s));
    return best;
}

namespace {

// ---------------------------------------------------------------------------
// Adaptive Dormand-Prince 5(4) for the 2-state complex Rayleigh system,
// integrated in the contour parameter x with the gamma' Jacobian.
// ---------------------------------------------------------------------------

using State = std::array<Complex, 2>; // (psi, dpsi/dz)

struct RayleighSystem {
    const ShearProfile& profile;
    const DeformedContour& contour;
    double alpha;
    Complex c;

    State rhs(double x, const State& y) const {
        const Complex g = contour.map(x, 0);
        const Complex dg = contour.map(x, 1);
        const Complex u = profile.eval(g, 0);
        const Complex d2u = profile.eval(g, 2);
        const Complex coeff = alpha * alpha + d2u / (u - c);
        return {dg * y[1], dg * coeff * y[0]};
    }
};

State dp45_integrate(const RayleighSystem& sys, State y, double x0, double x1, double tol) {
    // Dormand-Prince coefficients.
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    const double span = x1 - x0;
    double x = x0;
    double h = span / 64.0;
    const double hmin = std::abs(span) * 1e-14;
    int steps = 0;

    State k1 = sys.rhs(x, y);
    while ((span > 0 && x < x1) || (span < 0 && x > x1)) {
        if (++steps > 1000000) throw numerical_error("wronskian: integrator exceeded step budget");
        if (std::abs(h) < hmin)
            throw numerical_error("wronskian: integrator step size underflow (tolerance not met)");
        if ((span > 0 && x + h > x1) || (span < 0 && x + h < x1)) h = x1 - x;

        auto axpy = [&](std::initializer_list<std::pair<double, const State*>> terms) {
            State out = y;
            for (auto& [w, k] : terms) {
                out[0] += h * w * (*k)[0];
                out[1] += h * w * (*k)[1];
            }
            return out;
        };

        const State k2 = sys.rhs(x + c2 * h, axpy({{a21, &k1}}));
        const State k3 = sys.rhs(x + c3 * h, axpy({{a31, &k1}, {a32, &k2}}));
        const State k4 = sys.rhs(x + c4 * h, axpy({{a41, &k1}, {a42, &k2}, {a43, &k3}}));
        const State k5 = sys.rhs(x + c5 * h, axpy({{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
        const State k6 = sys.rhs(
            x + h, axpy({{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
        const State y5 = axpy({{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
        const State k7 = sys.rhs(x + h, y5);

        double err = 0.0, scale = 0.0;
        for (int i = 0; i < 2; ++i) {
            const Complex e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                   e6 * k6[i] + e7 * k7[i]);
            err = std::max(err, std::abs(e));
            scale = std::max(scale, std::max(std::abs(y[i]), std::abs(y5[i])));
        }
        const double bound = tol * std::max(1.0, scale);

        if (err <= bound) {
            x += h;
            y = y5;
            k1 = k7; // FSAL
        }
        const double factor = 0.9 * std::pow(bound / std::max(err, 1e-300), 0.2);
        h *= std::clamp(factor, 0.2, 5.0);
    }
    return y;
}

void check_shooting_preconditions(const ShearProfile& profile, const DeformedContour& contour,
                                  double alpha, Complex c) {
    if (!profile.domain().is_segment())
        throw config_error("wronskian shooting is defined on segment domains only");
    if (profile.domain() != contour.domain())
        throw config_error("profile and contour domains differ");
    if (!(alpha > 0.0)) throw config_error("wronskian requires alpha > 0");

    // Ellipticity margin along the contour; the shot blows up on the curve.
    const Domain& dom = profile.domain();
    double margin = std::numeric_limits<double>::infinity();
    const int n = 1024;
    for (int i = 0; i <= n; ++i) {
        const double x = dom.a + (dom.b - dom.a) * i / n;
        margin = std::min(margin, std::abs(profile.eval(contour.map(x, 0)) - c));
    }
    if (margin <= 1e-8)
        throw numerical_error("wronskian: U(gamma) - c has margin " + std::to_string(margin) +
                              "; c is too close to the ellipticity curve");
}

} // namespace

Complex wronskian(const ShearProfile& profile, const DeformedContour& contour, double alpha,
                  Complex c, double tol) {
    check_shooting_preconditions(profile, contour, alpha, c);
    const Domain& dom = profile.domain();
    RayleighSystem sys{profile, contour, alpha, c};
    const State end = dp45_integrate(sys, State{0.0, 1.0}, dom.a, dom.b, tol);
    return end[0];
}

Complex refine_resonance(const ShearProfile& profile, const DeformedContour& contour, double alpha,
                         Complex c_init, double target, int max_iter) {
    // Newton needs residuals well below the target; integrate tighter.
    const double tol = std::min(1e-12, target * 1e-2);
    Complex c = c_init;
    Complex w = wronskian(profile, contour, alpha, c, tol);
    if (!std::isfinite(std::abs(w))) throw numerical_error("refine_resonance: W(c_init) not finite");

    for (int it = 0; it < max_iter; ++it) {
        if (std::abs(w) < target) return c;
        const double h = 1e-6 * std::max(1.0, std::abs(c));
        const Complex wp = wronskian(profile, contour, alpha, c + h, tol);
        const Complex wm = wronskian(profile, contour, alpha, c - h, tol);
        const Complex dw = (wp - wm) / (2.0 * h);
        if (std::abs(dw) < 1e-14)
            throw numerical_error("refine_resonance: W' ~ 0 (multiple root?); use the winding count");
        const Complex step = w / dw;
        c -= step;
        w = wronskian(profile, contour, alpha, c, tol);
    }
    if (std::abs(w) < target) return c;
    throw numerical_error("refine_resonance: no convergence after " + std::to_string(max_iter) +
                          " iterations (|W| = " + std::to_string(std::abs(w)) + ")");
}

int multiplicity_winding(const ShearProfile& profile, const DeformedContour& contour, double alpha,
                         Complex center, double radius, int min_nodes) {
    if (!(radius > 0.0)) throw config_error("multiplicity_winding requires radius > 0");
    int nodes = std::max(min_nodes, 16);
    const double tol = 1e-10;

    for (int attempt = 0; attempt < 4; ++attempt) {
        std::vector<double> phase(nodes + 1);
        bool jump_too_large = false;
        double prev_arg = 0.0;
        double total = 0.0;
        for (int i = 0; i <= nodes; ++i) {
            const double t = 2.0 * M_PI * i / nodes;
            const Complex c = center + radius * Complex(std::cos(t), std::sin(t));
            const Complex w = wronskian(profile, contour, alpha, c, tol);
            if (std::abs(w) < 1e-10)
                throw numerical_error("multiplicity_winding: W ~ 0 on the contour circle");
            const double a = std::arg(w);
            if (i > 0) {
                double d = a - prev_arg;
                while (d > M_PI) d -= 2.0 * M_PI;
                while (d < -M_PI) d += 2.0 * M_PI;
                if (std::abs(d) > 0.5 * M_PI) jump_too_large = true;
                total += d;
            }
            prev_arg = a;
        }
        if (!jump_too_large) {
            const double winding = total / (2.0 * M_PI);
            const long rounded = std::lround(winding);
            if (std::abs(winding - rounded) > 0.1)
                throw numerical_error("multiplicity_winding: non-integer winding " +
                                      std::to_string(winding));
            return static_cast<int>(rounded);
        }
        nodes *= 2;
    }
    throw numerical_error("multiplicity_winding: phase jumps persist after refinement");
}

std::vector<ResonanceRecord> resonances_in_window(const ShearProfile& profile,
                                                  const DeformedContour& contour, double alpha,
                                                  int N, const Window& window, double band,
                                                  bool want_states, double cluster_radius) {
    if (!(band > 0.0)) throw config_error("resonances_in_window requires band > 0");
    const bool on_segment = profile.domain().is_segment();

    FourierGrid fgrid;
    Spectrum spec = [&] {
        if (on_segment) return eig(assemble_rayleigh_q(profile, contour, alpha, N), want_states);
        fgrid = fourier_grid(N);
        return eig(assemble_q_circle(profile, contour, alpha, 0.0, N), want_states);
    }();
    spec.meta = {N, 0.0, contour.tau, alpha};

    const std::vector<Complex> curve = ellipticity_samples(profile, contour, 1024);

    std::vector<int> kept;
    for (int i = 0; i < spec.values.size(); ++i) {
        const Complex c = spec.values(i);
        if (!window.contains(c)) continue;
        if (distance_to_curve(c, curve) <= band) continue;
        kept.push_back(i);
    }

    // Group kept eigenvalues into clusters of radius `cluster_radius`.
    std::vector<bool> used(kept.size(), false);
    std::vector<ResonanceRecord> records;
    for (size_t i = 0; i < kept.size(); ++i) {
        if (used[i]) continue;
        std::vector<int> group{kept[i]};
        used[i] = true;
        for (size_t j = i + 1; j < kept.size(); ++j) {
            if (used[j]) continue;
            if (std::abs(spec.values(kept[j]) - spec.values(kept[i])) <= cluster_radius) {
                group.push_back(kept[j]);
                used[j] = true;
            }
        }
        Complex mean = 0.0;
        for (int idx : group) mean += spec.values(idx);
        mean /= static_cast<double>(group.size());

        ResonanceRecord rec;
        rec.c = mean;
        rec.multiplicity = static_cast<int>(group.size());
        rec.via_eigen = true;
        rec.dist_to_curve = distance_to_curve(mean, curve);
        if (want_states && spec.vectors) {
            rec.eigen_residual = spec.residuals(group.front());
            // Convert the Q eigenvector v = (d^2 - a^2) psi back to the state psi.
            if (on_segment) {
                const ChebGrid grid = cheb_grid(N);
                const MatrixXcd H = helmholtz_dirichlet(deform_D(grid, contour), alpha);
                rec.state = H.partialPivLu().solve(VectorXcd(spec.vectors->col(group.front())));
            } else {
                const MatrixXcd L = helmholtz_circle(fgrid, contour, alpha);
                const VectorXcd psi_coeff =
                    L.partialPivLu().solve(VectorXcd(spec.vectors->col(group.front())));
                rec.state = fgrid.to_samples(psi_coeff);
            }
        }
        records.push_back(std::move(rec));
    }

    // Wronskian cross-check on the segment.
    if (on_segment) {
        for (auto& rec : records) {
            try {
                rec.wronskian_abs = std::abs(wronskian(profile, contour, alpha, rec.c));
                rec.via_wronskian = rec.wronskian_abs < 1e-5;
            } catch (const numerical_error&) {
                // Too close to the curve for the shot; leave the flag unset.
            }
        }
    }

    std::sort(records.begin(), records.end(), [](const ResonanceRecord& a, const ResonanceRecord& b) {
        const double ia = std::abs(a.c.imag()), ib = std::abs(b.c.imag());
        if (ia != ib) return ia < ib;
        return a.c.real() < b.c.real();
    });
    return records;
}

} // namespace hydrospec
