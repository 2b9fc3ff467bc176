#pragma once

#include <complex>
#include <map>
#include <string>

#include "hydrospec/errors.hpp"

namespace hydrospec {

using Complex = std::complex<double>;

// 1D domain of a shear profile: a real segment [a,b] or a circle R/LZ.
struct Domain {
    enum class Type { Segment, Circle };

    Type type = Type::Segment;
    double a = -1.0;
    double b = 1.0;
    double period = 0.0;

    static Domain segment(double a, double b);
    static Domain circle(double period);

    bool is_segment() const { return type == Type::Segment; }
    bool is_circle() const { return type == Type::Circle; }
    double length() const { return is_segment() ? b - a : period; }

    bool operator==(const Domain&) const = default;
};

enum class ProfileKind { Couette, CouettePoiseuille, Trig, Kolmogorov };

std::string to_string(ProfileKind kind);
ProfileKind profile_kind_from_string(const std::string& name);

// Background shear velocity U as a closed-form analytic bundle: evaluable,
// together with its first two derivatives, at complex arguments.  Arbitrary
// sampled profiles are rejected by design; the deformation method needs
// values of U off the real axis.
class ShearProfile {
public:
    static ShearProfile couette(const Domain& domain);
    static ShearProfile couette_poiseuille(double theta, const Domain& domain);
    // U(x) = sin(omega x + theta)
    static ShearProfile trig(double omega, double theta, const Domain& domain);
    // U(x) = sin(k x) on the circle of period 2*pi
    static ShearProfile kolmogorov(int k, const Domain& domain);

    ProfileKind kind() const { return kind_; }
    const Domain& domain() const { return domain_; }

    double omega() const { return omega_; }
    double theta() const { return theta_; }
    int k() const { return k_; }

    // U(z), U'(z) or U''(z) via the closed-form analytic expression.
    Complex eval(Complex z, int order = 0) const;

    double value_at_left() const;  // U(a); segment only
    double value_at_right() const; // U(b); segment only

    std::string id() const; // stable identifier for output metadata

private:
    ShearProfile(ProfileKind kind, const Domain& domain) : kind_(kind), domain_(domain) {}

    ProfileKind kind_;
    Domain domain_;
    double omega_ = 0.0; // trig
    double theta_ = 0.0; // trig phase, or Couette-Poiseuille mixing weight
    int k_ = 0;          // kolmogorov
};

// Generic constructor used by config files and bindings.  `params` keys:
//   couette            : (none)
//   couette_poiseuille : theta
//   trig               : omega, theta
//   kolmogorov         : k (positive integer)
ShearProfile make_profile(const std::string& kind, const std::map<std::string, double>& params,
                          const Domain& domain);

// Affine change of variable x = p + q s mapping [a,b] onto [-1,1].  Multiplying
// the stability operator by q^2 shows the spectral parameter c is unchanged
// when alpha and eps are rescaled by the stated factors.  Only the trig family
// is closed under this map; other kinds must be posed on [-1,1] directly.
struct StandardizedProfile {
    ShearProfile profile;     // equivalent profile on [-1,1]
    double alpha_factor;      // alpha_std = alpha * alpha_factor = alpha (b-a)/2
    double eps_factor;        // eps_std = eps * eps_factor = eps / sqrt((b-a)/2)
};

StandardizedProfile rescale_to_standard(const ShearProfile& profile);

} // namespace hydrospec
