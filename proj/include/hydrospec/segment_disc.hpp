#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "hydrospec/contour.hpp"
#include "hydrospec/profiles.hpp"

namespace hydrospec {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

// Chebyshev collocation grid on [-1,1]: points x_j = cos(j pi / N), j = 0..N
// (so x_0 = 1, x_N = -1), with the (N+1)x(N+1) differentiation matrix.  The
// diagonal uses the negative-sum trick.
struct ChebGrid {
    int N = 0;
    VectorXd points; // size N+1
    MatrixXd D;      // size (N+1)x(N+1)
};

ChebGrid cheb_grid(int N); // requires N >= 2

namespace detail {
// Raw entry formulas, valid for N >= 1; used by cheb_grid and by tests.
MatrixXd cheb_diff_matrix(int N);
VectorXd cheb_points(int N);
} // namespace detail

// Barycentric evaluation of the Chebyshev interpolant of samples f at t.
Complex chebyshev_interp(const VectorXd& points, const VectorXcd& f, double t);

// Deformed differentiation matrix D_tau = diag(1/gamma'(x_j)) D, the grid
// realization of (1 + i tau m0')^{-1} d/dx.
MatrixXcd deform_D(const ChebGrid& grid, const DeformedContour& contour);

// Interior (Dirichlet) block of D_tau^2 - alpha^2 I, size (N-1)x(N-1).
MatrixXcd helmholtz_dirichlet(const MatrixXcd& D_tau, double alpha);

// Independent oracle for Helmholtz solves on the straight segment: applies the
// explicit sinh kernel of the inverse by Clenshaw-Curtis quadrature.  Input and
// output are samples at the Chebyshev points of `grid`.
VectorXcd greens_oracle(double alpha, const VectorXcd& f, const ChebGrid& grid);

// Interior block of the clamped (Dirichlet + Neumann) bilaplacian along the
// contour, built out of interpolants p(x) = (1 - gamma^2(x)) q(x):
//   (diag(1-gamma^2) D_tau^4 - 8 diag(gamma) D_tau^3 - 12 D_tau^2) diag(1/(1-gamma^2))
// with the last factor set to 0 at the endpoints.
MatrixXcd clamped_bilaplacian(const MatrixXcd& D_tau, const DeformedContour& contour,
                              const ChebGrid& grid);

struct PencilMeta {
    int N = 0;
    double alpha = 0.0;
    double eps = 0.0;
    double tau = 0.0;
    std::string profile_id;
    std::string contour_id;
};

// Dense pencil (A, B) on the interior nodes whose generalized eigenvalues
// approximate the viscous spectrum in the study window:
//   A = (i eps^2 / alpha)(D4 - 2 alpha^2 D2 + alpha^4 I)
//       + diag(U(gamma)) (D2 - alpha^2 I) - diag(U''(gamma))
//   B = D2 - alpha^2 I
struct DiscretePencil {
    MatrixXcd A;
    MatrixXcd B;
    PencilMeta meta;
};

DiscretePencil assemble_os_pencil(const ShearProfile& profile, const DeformedContour& contour,
                                  double alpha, double eps, int N);

// Q = diag(U(gamma)) - diag(U''(gamma)) (D2 - alpha^2 I)^{-1}: eigenvalues in
// the window are resonance candidates (the eps = 0 route).
MatrixXcd assemble_rayleigh_q(const ShearProfile& profile, const DeformedContour& contour,
                              double alpha, int N);

// Samples of {U(gamma_tau(x))} on a uniform grid: the curve of non-elliptic
// parameters near which discrete eigenvalues are spurious.
std::vector<Complex> ellipticity_samples(const ShearProfile& profile,
                                         const DeformedContour& contour, int n_samples);

} // namespace hydrospec
