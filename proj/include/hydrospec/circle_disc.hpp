#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hydrospec/contour.hpp"
#include "hydrospec/profiles.hpp"

namespace hydrospec {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using Eigen::VectorXi;

// Equispaced grid on R/2piZ with the dense DFT pair.  Coefficient vectors are
// ordered by the wavenumber list (0, 1, ..., N/2-1, -N/2, ..., -1); `forward`
// maps samples at the nodes to coefficients and `inverse` maps back.
struct FourierGrid {
    int N = 0;
    VectorXd nodes;       // 2 pi j / N
    VectorXi wavenumbers; // (0..N/2-1, -N/2..-1)
    MatrixXcd forward;    // coefficients from samples
    MatrixXcd inverse;    // samples from coefficients

    VectorXcd to_coefficients(const VectorXcd& samples) const { return forward * samples; }
    VectorXcd to_samples(const VectorXcd& coefficients) const { return inverse * coefficients; }
};

FourierGrid fourier_grid(int N); // requires even N >= 4

// Coefficient-space matrix for D(tau) = (1 + i tau m0')^{-1} d/dx:
//   forward * diag(1/gamma'(x_j)) * inverse * diag(i k).
// The sign and ordering conventions are pinned by the analytic probes below,
// never assumed.
MatrixXcd fourier_deformed_D(const FourierGrid& grid, const DeformedContour& contour);

// Coefficient-space multiplication operator by f(gamma(x)).
MatrixXcd fourier_mult(const FourierGrid& grid, const DeformedContour& contour,
                       const ShearProfile& profile, int order);

// Q = (i eps^2 / alpha) L + M_U - M_{U''} L^{-1} with L = D(tau)^2 - alpha^2.
// Eigenvalues approximate the viscous spectrum (eps > 0) or the resonances
// (eps = 0) in the study window.
MatrixXcd assemble_q_circle(const ShearProfile& profile, const DeformedContour& contour,
                            double alpha, double eps, int N);

// L = D(tau)^2 - alpha^2 in coefficient space (exposed for resonant-state
// reconstruction: an eigenvector v of Q corresponds to the state psi = L^{-1} v).
MatrixXcd helmholtz_circle(const FourierGrid& grid, const DeformedContour& contour, double alpha);

struct ProbeResult {
    bool ok = false;
    double worst_error = 0.0;
    std::vector<std::pair<std::string, double>> checks; // (probe id, max error)
};

// Analytic probes pinning the transform/derivative conventions: constants are
// annihilated, e^{+-ix} and e^{i3x} are multiplied by ik, the Helmholtz symbol
// is -k^2-alpha^2, and forward/inverse round-trip is the identity.  Assembly
// refuses to proceed when a probe fails.
ProbeResult fourier_convention_probe(int N);

} // namespace hydrospec
