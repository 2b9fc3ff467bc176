#include "hydrospec/profiles.hpp"

#include <cmath>

namespace hydrospec {

Domain Domain::segment(double a, double b) {
    if (!(a < b)) throw config_error("segment domain requires a < b");
    Domain d;
    d.type = Type::Segment;
    d.a = a;
    d.b = b;
    return d;
}

Domain Domain::circle(double period) {
    if (!(period > 0.0)) throw config_error("circle domain requires period > 0");
    Domain d;
    d.type = Type::Circle;
    d.a = 0.0;
    d.b = period;
    d.period = period;
    return d;
}

std::string to_string(ProfileKind kind) {
    switch (kind) {
    case ProfileKind::Couette: return "couette";
    case ProfileKind::CouettePoiseuille: return "couette_poiseuille";
    case ProfileKind::Trig: return "trig";
    case ProfileKind::Kolmogorov: return "kolmogorov";
    }
    return "?";
}

ProfileKind profile_kind_from_string(const std::string& name) {
    if (name == "couette") return ProfileKind::Couette;
    if (name == "couette_poiseuille") return ProfileKind::CouettePoiseuille;
    if (name == "trig") return ProfileKind::Trig;
    if (name == "kolmogorov") return ProfileKind::Kolmogorov;
    throw config_error("unknown profile kind: " + name);
}

ShearProfile ShearProfile::couette(const Domain& domain) {
    if (!domain.is_segment()) throw config_error("couette profile lives on a segment");
    return ShearProfile(ProfileKind::Couette, domain);
}

ShearProfile ShearProfile::couette_poiseuille(double theta, const Domain& domain) {
    if (!domain.is_segment()) throw config_error("couette_poiseuille profile lives on a segment");
    ShearProfile p(ProfileKind::CouettePoiseuille, domain);
    p.theta_ = theta;
    return p;
}

ShearProfile ShearProfile::trig(double omega, double theta, const Domain& domain) {
    if (!domain.is_segment()) throw config_error("trig profile lives on a segment");
    ShearProfile p(ProfileKind::Trig, domain);
    p.omega_ = omega;
    p.theta_ = theta;
    return p;
}

ShearProfile ShearProfile::kolmogorov(int k, const Domain& domain) {
    if (!domain.is_circle()) throw config_error("kolmogorov profile lives on a circle");
    if (k <= 0) throw config_error("kolmogorov profile requires a positive integer k");
    // sin(kx) must close up over one period.
    const double turns = domain.period * k / (2.0 * M_PI);
    if (std::abs(turns - std::round(turns)) > 1e-12)
        throw config_error("kolmogorov profile requires k*L to be a multiple of 2*pi");
    ShearProfile p(ProfileKind::Kolmogorov, domain);
    p.k_ = k;
    return p;
}

Complex ShearProfile::eval(Complex z, int order) const {
    if (order < 0 || order > 2) throw config_error("profile derivative order must be 0, 1 or 2");
    switch (kind_) {
    case ProfileKind::Couette:
        switch (order) {
        case 0: return z;
        case 1: return 1.0;
        default: return 0.0;
        }
    case ProfileKind::CouettePoiseuille: {
        // (1-theta) x + theta (1 - x^2)
        const double t = theta_;
        switch (order) {
        case 0: return (1.0 - t) * z + t * (1.0 - z * z);
        case 1: return (1.0 - t) - 2.0 * t * z;
        default: return -2.0 * t;
        }
    }
    case ProfileKind::Trig: {
        const Complex arg = omega_ * z + theta_;
        switch (order) {
        case 0: return std::sin(arg);
        case 1: return omega_ * std::cos(arg);
        default: return -omega_ * omega_ * std::sin(arg);
        }
    }
    case ProfileKind::Kolmogorov: {
        const Complex arg = static_cast<double>(k_) * z;
        switch (order) {
        case 0: return std::sin(arg);
        case 1: return static_cast<double>(k_) * std::cos(arg);
        default: return -static_cast<double>(k_ * k_) * std::sin(arg);
        }
    }
    }
    throw config_error("unreachable profile kind");
}

double ShearProfile::value_at_left() const {
    if (!domain_.is_segment()) throw config_error("boundary values only exist on a segment");
    return eval(domain_.a).real();
}

double ShearProfile::value_at_right() const {
    if (!domain_.is_segment()) throw config_error("boundary values only exist on a segment");
    return eval(domain_.b).real();
}

std::string ShearProfile::id() const {
    switch (kind_) {
    case ProfileKind::Couette: return "couette";
    case ProfileKind::CouettePoiseuille: return "couette_poiseuille(theta=" + std::to_string(theta_) + ")";
    case ProfileKind::Trig:
        return "trig(omega=" + std::to_string(omega_) + ",theta=" + std::to_string(theta_) + ")";
    case ProfileKind::Kolmogorov: return "kolmogorov(k=" + std::to_string(k_) + ")";
    }
    return "?";
}

namespace {

double require_param(const std::map<std::string, double>& params, const std::string& key) {
    auto it = params.find(key);
    if (it == params.end()) throw config_error("profile parameter missing: " + key);
    return it->second;
}

void reject_unknown(const std::map<std::string, double>& params,
                    std::initializer_list<std::string> known) {
    for (const auto& [key, value] : params) {
        bool ok = false;
        for (const auto& k : known)
            if (key == k) ok = true;
        if (!ok) throw config_error("unexpected profile parameter: " + key);
    }
}

} // namespace

StandardizedProfile rescale_to_standard(const ShearProfile& profile) {
    const Domain& dom = profile.domain();
    if (dom.is_circle()) {
        const double q = dom.period / (2.0 * M_PI);
        if (std::abs(q - 1.0) < 1e-15) return {profile, 1.0, 1.0};
        // sin(k (q s)) = sin((k q) s); the rescaled wavenumber must be integral.
        const double kq = profile.k() * q;
        if (std::abs(kq - std::round(kq)) > 1e-12)
            throw config_error("circle rescaling needs k * period to be a multiple of 2*pi");
        const ShearProfile rescaled = ShearProfile::kolmogorov(
            static_cast<int>(std::llround(kq)), Domain::circle(2.0 * M_PI));
        return {rescaled, q, 1.0 / std::sqrt(q)};
    }
    const double q = 0.5 * (dom.b - dom.a);
    const double p = 0.5 * (dom.b + dom.a);
    if (std::abs(q - 1.0) < 1e-15 && std::abs(p) < 1e-15)
        return {profile, 1.0, 1.0};
    if (profile.kind() != ProfileKind::Trig)
        throw config_error("only trig profiles are closed under domain rescaling; pose " +
                           to_string(profile.kind()) + " on [-1,1] directly");
    // sin(omega (p + q s) + theta) = sin((omega q) s + (theta + omega p)).
    const ShearProfile rescaled =
        ShearProfile::trig(profile.omega() * q, profile.theta() + profile.omega() * p,
                           Domain::segment(-1.0, 1.0));
    return {rescaled, q, 1.0 / std::sqrt(q)};
}

ShearProfile make_profile(const std::string& kind, const std::map<std::string, double>& params,
                          const Domain& domain) {
    switch (profile_kind_from_string(kind)) {
    case ProfileKind::Couette:
        reject_unknown(params, {});
        return ShearProfile::couette(domain);
    case ProfileKind::CouettePoiseuille:
        reject_unknown(params, {"theta"});
        return ShearProfile::couette_poiseuille(require_param(params, "theta"), domain);
    case ProfileKind::Trig:
        reject_unknown(params, {"omega", "theta"});
        return ShearProfile::trig(require_param(params, "omega"), require_param(params, "theta"),
                                  domain);
    case ProfileKind::Kolmogorov: {
        reject_unknown(params, {"k"});
        const double kraw = require_param(params, "k");
        if (std::abs(kraw - std::round(kraw)) > 1e-12 || kraw < 0.5)
            throw config_error("kolmogorov parameter k must be a positive integer");
        return ShearProfile::kolmogorov(static_cast<int>(std::llround(kraw)), domain);
    }
    }
    throw config_error("unreachable profile kind");
}

} // namespace hydrospec
