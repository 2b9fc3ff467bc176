#pragma once

#include <map>
#include <string>
#include <vector>

#include "hydrospec/profiles.hpp"

namespace hydrospec {

enum class EscapeKind {
    // m0(x) = -cos(omega x + theta) cos(pi x / 2); segment.  For U = sin(omega x + theta)
    // this has the sign m0 U' <= 0 everywhere and vanishes at x = +-1.
    TrigCutoff,
    // m0(x) = sin(omega x); segment, omega an integer multiple of pi.
    SinPeriodic,
    // m0(x) = -cos(k x); circle.
    NegCos,
    // m0(x) = (2 theta x + theta - 1) cos(pi x / 2); segment (Couette-Poiseuille family).
    CpTilt,
};

std::string to_string(EscapeKind kind);
EscapeKind escape_kind_from_string(const std::string& name);

// Deformation direction m0: real-valued on the real domain, vanishing at the
// endpoints of a segment, with m0 U' <= 0 where it matters.
class EscapeFunction {
public:
    static EscapeFunction trig_cutoff(double omega, double theta, const Domain& domain);
    static EscapeFunction sin_periodic(double omega, const Domain& domain);
    static EscapeFunction neg_cos(int k, const Domain& domain);
    static EscapeFunction cp_tilt(double theta, const Domain& domain);

    // Escape function matched to a built-in profile (the pairings used in the
    // worked examples).
    static EscapeFunction for_profile(const ShearProfile& profile);

    EscapeKind kind() const { return kind_; }
    const Domain& domain() const { return domain_; }

    double m0(double x) const;
    double dm0(double x) const;

    std::string id() const;

private:
    EscapeFunction(EscapeKind kind, const Domain& domain) : kind_(kind), domain_(domain) {}

    EscapeKind kind_;
    Domain domain_;
    double omega_ = 0.0;
    double theta_ = 0.0;
    int k_ = 0;
};

EscapeFunction make_escape(const std::string& kind, const std::map<std::string, double>& params,
                           const Domain& domain);

// gamma_tau(x) = x + i tau m0(x)
struct DeformedContour {
    EscapeFunction escape;
    double tau = 0.0;

    DeformedContour(EscapeFunction esc, double tau_) : escape(std::move(esc)), tau(tau_) {
        if (tau < 0.0) throw config_error("contour deformation requires tau >= 0");
    }

    const Domain& domain() const { return escape.domain(); }

    // order 0: gamma_tau(x); order 1: gamma_tau'(x) = 1 + i tau m0'(x)
    Complex map(double x, int order = 0) const;

    std::string id() const;
};

struct ValidationFailure {
    std::string condition; // "C1".."C4" or "hypothesis"
    double where = 0.0;    // worst grid point (x)
    double value = 0.0;    // worst value of the violated quantity
    std::string detail;
};

struct ValidationReport {
    bool ok = false;
    std::vector<ValidationFailure> failures;
    // Reported margins so callers can decide whether to tighten grids.
    double arg_margin = 0.0;         // pi/4 - max |arg gamma'|          (C1)
    double sign_margin = 0.0;        // -max m0 U' over grid             (C2)
    double ellipticity_margin = 0.0; // min |U(gamma) - c|               (C3)
    double im_max = 0.0;             // max Im U(x + i t tau m0(x))      (C4)
};

// Certify, on sampling grids, that the (profile, contour) pair is usable to
// study the spectral window around c0:
//   C1  |arg gamma'| < pi/4 everywhere
//   C2  m0 U' <= 0 everywhere, strictly < 0 at the real roots of U - c0
//   C3  |U(gamma(x)) - c| > 0 for c in {c0 - delta, c0, c0 + delta}
//   C4  Im U(x + i t tau m0(x)) <= tol for t in {0, 1/4, 1/2, 3/4, 1}
// Nothing is proven; margins are reported.
ValidationReport validate_contour(const ShearProfile& profile, const DeformedContour& contour,
                                  double c0, double delta, int nx = 512, int nt = 5);

// Real roots of U - c0 in the open domain, located by sign changes plus bisection.
std::vector<double> real_roots(const ShearProfile& profile, double c0, int nx = 2048);

} // namespace hydrospec
