#include "hydrospec/contour.hpp"

#include <algorithm>
#include <cmath>

namespace hydrospec {

std::string to_string(EscapeKind kind) {
    switch (kind) {
    case EscapeKind::TrigCutoff: return "trig_cutoff";
    case EscapeKind::SinPeriodic: return "sin_periodic";
    case EscapeKind::NegCos: return "neg_cos";
    case EscapeKind::CpTilt: return "cp_tilt";
    }
    return "?";
}

EscapeKind escape_kind_from_string(const std::string& name) {
    if (name == "trig_cutoff") return EscapeKind::TrigCutoff;
    if (name == "sin_periodic") return EscapeKind::SinPeriodic;
    if (name == "neg_cos") return EscapeKind::NegCos;
    if (name == "cp_tilt") return EscapeKind::CpTilt;
    throw config_error("unknown escape function kind: " + name);
}

namespace {
void require_standard_segment(const Domain& domain, const char* who) {
    if (!domain.is_segment() || std::abs(domain.a + 1.0) > 1e-15 ||
        std::abs(domain.b - 1.0) > 1e-15)
        throw config_error(std::string(who) +
                           " escape is defined on the segment [-1,1]; rescale the profile first");
}
} // namespace

EscapeFunction EscapeFunction::trig_cutoff(double omega, double theta, const Domain& domain) {
    require_standard_segment(domain, "trig_cutoff");
    EscapeFunction e(EscapeKind::TrigCutoff, domain);
    e.omega_ = omega;
    e.theta_ = theta;
    return e;
}

EscapeFunction EscapeFunction::sin_periodic(double omega, const Domain& domain) {
    if (!domain.is_segment()) throw config_error("sin_periodic escape lives on a segment");
    // Needs sin(omega a) = sin(omega b) = 0 so the endpoints stay fixed.
    const double qa = std::abs(std::sin(omega * domain.a));
    const double qb = std::abs(std::sin(omega * domain.b));
    if (qa > 1e-12 || qb > 1e-12)
        throw config_error("sin_periodic escape must vanish at the segment endpoints");
    EscapeFunction e(EscapeKind::SinPeriodic, domain);
    e.omega_ = omega;
    return e;
}

EscapeFunction EscapeFunction::neg_cos(int k, const Domain& domain) {
    if (!domain.is_circle()) throw config_error("neg_cos escape lives on a circle");
    if (k <= 0) throw config_error("neg_cos escape requires a positive integer k");
    EscapeFunction e(EscapeKind::NegCos, domain);
    e.k_ = k;
    return e;
}

EscapeFunction EscapeFunction::cp_tilt(double theta, const Domain& domain) {
    require_standard_segment(domain, "cp_tilt");
    EscapeFunction e(EscapeKind::CpTilt, domain);
    e.theta_ = theta;
    return e;
}

EscapeFunction EscapeFunction::for_profile(const ShearProfile& profile) {
    switch (profile.kind()) {
    case ProfileKind::Couette: return cp_tilt(0.0, profile.domain());
    case ProfileKind::CouettePoiseuille: return cp_tilt(profile.theta(), profile.domain());
    case ProfileKind::Trig:
        return trig_cutoff(profile.omega(), profile.theta(), profile.domain());
    case ProfileKind::Kolmogorov: return neg_cos(profile.k(), profile.domain());
    }
    throw config_error("unreachable profile kind");
}

double EscapeFunction::m0(double x) const {
    switch (kind_) {
    case EscapeKind::TrigCutoff: return -std::cos(omega_ * x + theta_) * std::cos(0.5 * M_PI * x);
    case EscapeKind::SinPeriodic: return std::sin(omega_ * x);
    case EscapeKind::NegCos: return -std::cos(k_ * x);
    case EscapeKind::CpTilt: return (2.0 * theta_ * x + theta_ - 1.0) * std::cos(0.5 * M_PI * x);
    }
    return 0.0;
}

double EscapeFunction::dm0(double x) const {
    switch (kind_) {
    case EscapeKind::TrigCutoff:
        return omega_ * std::sin(omega_ * x + theta_) * std::cos(0.5 * M_PI * x) +
               0.5 * M_PI * std::cos(omega_ * x + theta_) * std::sin(0.5 * M_PI * x);
    case EscapeKind::SinPeriodic: return omega_ * std::cos(omega_ * x);
    case EscapeKind::NegCos: return k_ * std::sin(k_ * x);
    case EscapeKind::CpTilt:
        return 2.0 * theta_ * std::cos(0.5 * M_PI * x) -
               0.5 * M_PI * (2.0 * theta_ * x + theta_ - 1.0) * std::sin(0.5 * M_PI * x);
    }
    return 0.0;
}

std::string EscapeFunction::id() const {
    switch (kind_) {
    case EscapeKind::TrigCutoff:
        return "trig_cutoff(omega=" + std::to_string(omega_) + ",theta=" + std::to_string(theta_) +
               ")";
    case EscapeKind::SinPeriodic: return "sin_periodic(omega=" + std::to_string(omega_) + ")";
    case EscapeKind::NegCos: return "neg_cos(k=" + std::to_string(k_) + ")";
    case EscapeKind::CpTilt: return "cp_tilt(theta=" + std::to_string(theta_) + ")";
    }
    return "?";
}

EscapeFunction make_escape(const std::string& kind, const std::map<std::string, double>& params,
                           const Domain& domain) {
    auto get = [&](const std::string& key) {
        auto it = params.find(key);
        if (it == params.end()) throw config_error("escape parameter missing: " + key);
        return it->second;
    };
    switch (escape_kind_from_string(kind)) {
    case EscapeKind::TrigCutoff:
        return EscapeFunction::trig_cutoff(get("omega"), get("theta"), domain);
    case EscapeKind::SinPeriodic: return EscapeFunction::sin_periodic(get("omega"), domain);
    case EscapeKind::NegCos: {
        const double k = get("k");
        if (std::abs(k - std::round(k)) > 1e-12 || k < 0.5)
            throw config_error("neg_cos parameter k must be a positive integer");
        return EscapeFunction::neg_cos(static_cast<int>(std::llround(k)), domain);
    }
    case EscapeKind::CpTilt: return EscapeFunction::cp_tilt(get("theta"), domain);
    }
    throw config_error("unreachable escape kind");
}

Complex DeformedContour::map(double x, int order) const {
    if (order == 0) return Complex(x, tau * escape.m0(x));
    if (order == 1) return Complex(1.0, tau * escape.dm0(x));
    throw config_error("contour map order must be 0 or 1");
}

std::string DeformedContour::id() const {
    return escape.id() + "@tau=" + std::to_string(tau);
}

std::vector<double> real_roots(const ShearProfile& profile, double c0, int nx) {
    const Domain& dom = profile.domain();
    const double lo = dom.is_segment() ? dom.a : 0.0;
    const double hi = dom.is_segment() ? dom.b : dom.period;
    auto f = [&](double x) { return profile.eval(Complex(x, 0.0)).real() - c0; };

    std::vector<double> roots;
    double xprev = lo, fprev = f(lo);
    for (int i = 1; i <= nx; ++i) {
        const double x = lo + (hi - lo) * i / nx;
        const double fx = f(x);
        if (fprev == 0.0) {
            roots.push_back(xprev);
        } else if (fprev * fx < 0.0) {
            double a = xprev, b = x, fa = fprev;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (a + b);
                const double fm = f(mid);
                if (fa * fm <= 0.0)
                    b = mid;
                else {
                    a = mid;
                    fa = fm;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        xprev = x;
        fprev = fx;
    }
    // Keep roots strictly inside a segment.
    if (dom.is_segment()) {
        std::erase_if(roots, [&](double r) { return r <= dom.a + 1e-12 || r >= dom.b - 1e-12; });
    }
    return roots;
}

ValidationReport validate_contour(const ShearProfile& profile, const DeformedContour& contour,
                                  double c0, double delta, int nx, int nt) {
    if (!(delta > 0.0)) throw config_error("validate_contour requires delta > 0");
    if (nx < 64 || nt < 2) throw config_error("validate_contour grids must have nx >= 64, nt >= 2");
    if (profile.domain() != contour.domain())
        throw config_error("profile and contour domains differ");

    const Domain& dom = profile.domain();
    if (dom.is_segment()) {
        if (std::abs(profile.value_at_left() - c0) < 1e-10 ||
            std::abs(profile.value_at_right() - c0) < 1e-10)
            throw validation_error("c0 coincides with a boundary value of U");
    }

    ValidationReport report;
    const double lo = dom.is_segment() ? dom.a : 0.0;
    const double hi = dom.is_segment() ? dom.b : dom.period;
    const double tau = contour.tau;

    std::vector<double> xs(nx + 1);
    for (int i = 0; i <= nx; ++i) xs[i] = lo + (hi - lo) * i / nx;

    // C1: |arg(1 + i tau m0')| < pi/4, endpoints included.
    {
        double worst = 0.0, wx = xs[0];
        for (double x : xs) {
            const double a = std::abs(std::arg(contour.map(x, 1)));
            if (a > worst) {
                worst = a;
                wx = x;
            }
        }
        report.arg_margin = 0.25 * M_PI - worst;
        if (!(worst < 0.25 * M_PI))
            report.failures.push_back({"C1", wx, worst, "|arg gamma'| >= pi/4"});
    }

    // C2: m0 U' <= 0 on the grid, strictly negative at the real roots of U - c0.
    {
        double worst = -std::numeric_limits<double>::infinity(), wx = xs[0];
        for (double x : xs) {
            const double s = contour.escape.m0(x) * profile.eval(Complex(x, 0.0), 1).real();
            if (s > worst) {
                worst = s;
                wx = x;
            }
        }
        report.sign_margin = -worst;
        if (worst > 1e-12) report.failures.push_back({"C2", wx, worst, "m0 U' > 0 on grid"});
        for (double r : real_roots(profile, c0)) {
            const double s = contour.escape.m0(r) * profile.eval(Complex(r, 0.0), 1).real();
            if (!(s < 0.0))
                report.failures.push_back({"C2", r, s, "m0 U' not strictly negative at root of U - c0"});
        }
    }

    // C3: ellipticity margin along the deformed contour for c near c0.  A zero
    // of U(gamma) - c can hide between samples, so the margin is measured
    // against the largest consecutive jump of the curve (a grid-resolution
    // Lipschitz estimate).
    {
        double margin = std::numeric_limits<double>::infinity();
        double max_jump = 0.0;
        double wx = xs[0];
        Complex u_prev = profile.eval(contour.map(xs[0], 0));
        for (size_t i = 0; i < xs.size(); ++i) {
            const Complex u = profile.eval(contour.map(xs[i], 0));
            if (i > 0) max_jump = std::max(max_jump, std::abs(u - u_prev));
            u_prev = u;
            for (double c : {c0 - delta, c0, c0 + delta}) {
                const double d = std::abs(u - c);
                if (d < margin) {
                    margin = d;
                    wx = xs[i];
                }
            }
        }
        report.ellipticity_margin = margin;
        if (!(margin > max_jump))
            report.failures.push_back(
                {"C3", wx, margin,
                 "U - c comes within one grid jump (" + std::to_string(max_jump) +
                     ") of zero on the deformed contour"});
    }

    // C4: Im U(x + i t tau m0(x)) <= tol along the homotopy real line -> contour.
    {
        const double tol = 1e-10 * (1.0 + tau);
        double worst = -std::numeric_limits<double>::infinity(), wx = xs[0];
        for (int j = 0; j < nt; ++j) {
            const double t = static_cast<double>(j) / (nt - 1);
            for (double x : xs) {
                const double im = profile.eval(Complex(x, t * tau * contour.escape.m0(x))).imag();
                if (im > worst) {
                    worst = im;
                    wx = x;
                }
            }
        }
        report.im_max = worst;
        if (worst > tol)
            report.failures.push_back({"C4", wx, worst, "Im U > 0 along the deformation homotopy"});
    }

    report.ok = report.failures.empty();
    return report;
}

} // namespace hydrospec
