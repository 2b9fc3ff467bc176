#include "hydrospec/perturb.hpp"

#include <algorithm>
#include <cmath>

#include "hydrospec/circle_disc.hpp"
#include "hydrospec/eigs.hpp"
#include "hydrospec/quadrature.hpp"
#include "hydrospec/segment_disc.hpp"

namespace hydrospec {

namespace {

Complex branch_sqrt(Complex square, int sign, const char* who) {
    Complex s = std::sqrt(square);
    if (std::abs(s.real()) <= 1e-12 * std::abs(s))
        throw numerical_error(std::string(who) +
                              ": square root lies on the branch ambiguity set (Re = 0)");
    if ((sign < 0 && s.real() > 0.0) || (sign > 0 && s.real() < 0.0)) s = -s;
    return s;
}

// Eigenvector of M nearest to c1; the cluster in radius `radius` must be simple.
VectorXcd simple_eigenvector_near(const MatrixXcd& M, Complex c1, double radius,
                                  Complex* value_out) {
    const Spectrum spec = eig(M, true);
    const ClusterResult cl = cluster(spec, c1, radius);
    if (cl.count == 0)
        throw numerical_error("no discrete eigenvalue within " + std::to_string(radius) +
                              " of the seed resonance");
    if (cl.count != 1)
        throw numerical_error("resonance is not simple (cluster count " +
                              std::to_string(cl.count) + ")");
    if (value_out) *value_out = spec.values(cl.indices[0]);
    return spec.vectors->col(cl.indices[0]);
}

} // namespace

BoundaryConstants boundary_constants(const ShearProfile& profile, double alpha, Complex c) {
    if (!(alpha > 0.0)) throw config_error("boundary_constants requires alpha > 0");
    const double ua = profile.value_at_left();
    const double ub = profile.value_at_right();
    if (std::abs(ua - c.real()) < 1e-12 || std::abs(ub - c.real()) < 1e-12)
        throw numerical_error("boundary_constants: U at an endpoint equals Re c");

    const Complex i(0.0, 1.0);
    BoundaryConstants out;
    out.lambda = 1.0 / branch_sqrt(i * alpha * (ua - c), -1, "boundary_constants");
    out.mu = 1.0 / branch_sqrt(i * alpha * (ub - c), +1, "boundary_constants");
    return out;
}

Complex first_order_segment(const ShearProfile& profile, const DeformedContour& contour,
                            double alpha, Complex c1, int N) {
    if (!profile.domain().is_segment())
        throw config_error("first_order_segment expects a segment profile");

    const MatrixXcd Q = assemble_rayleigh_q(profile, contour, alpha, N);
    VectorXcd v = simple_eigenvector_near(Q, c1, 1e-4, nullptr);

    const ChebGrid grid = cheb_grid(N);
    const MatrixXcd D_tau = deform_D(grid, contour);
    const MatrixXcd H = helmholtz_dirichlet(D_tau, alpha);

    // v = (d^2 - alpha^2) psi on the interior; recover and normalize the state.
    VectorXcd psi_int = H.partialPivLu().solve(v);
    int peak = 0;
    psi_int.cwiseAbs().maxCoeff(&peak);
    const Complex scale = 1.0 / psi_int(peak);
    psi_int *= scale;
    v *= scale;

    VectorXcd psi(N + 1);
    psi(0) = 0.0;
    psi.segment(1, N - 1) = psi_int;
    psi(N) = 0.0;

    // Endpoint derivatives from the full differentiation matrix; Chebyshev
    // ordering runs from x_0 = 1 = b down to x_N = -1 = a.
    const VectorXcd dpsi = D_tau * psi;
    const Complex dpsi_a = dpsi(N);
    const Complex dpsi_b = dpsi(0);

    const BoundaryConstants bc = boundary_constants(profile, alpha, c1);
    const Complex numerator = bc.lambda * dpsi_a * dpsi_a - bc.mu * dpsi_b * dpsi_b;

    // Contour integral by Clenshaw-Curtis with the gamma' Jacobian.  The
    // integrand has poles at the complex roots of U - c1 near the contour, so
    // the quadrature runs on a refined Chebyshev grid; the state is carried
    // over by barycentric interpolation (it is analytic and well resolved at
    // N), and (d^2 - alpha^2) psi0 is eliminated through the Rayleigh identity
    // (d^2 - alpha^2) psi0 = U'' psi0 / (U - c1).
    const int K = std::max(512, 4 * N);
    const VectorXd wq = clenshaw_curtis_weights(K);
    const VectorXd xq = detail::cheb_points(K);
    Complex denominator = 0.0;
    for (int j = 0; j <= K; ++j) {
        const double x = xq(j);
        const Complex z = contour.map(x, 0);
        const Complex u = profile.eval(z, 0);
        const Complex d2u = profile.eval(z, 2);
        const Complex pj = chebyshev_interp(grid.points, psi, x);
        const Complex ratio = pj / (u - c1);
        denominator += wq(j) * d2u * ratio * ratio * contour.map(x, 1);
    }
    if (std::abs(denominator) < 1e-10)
        throw numerical_error("first_order_segment: contour integral is numerically zero");

    return numerator / denominator;
}

Complex cos_flow_first_order(double omega, int quad_nodes) {
    if (!(omega > 0.5 * M_PI && omega < M_PI))
        throw config_error("cos_flow_first_order requires omega in (pi/2, pi)");
    if (quad_nodes < 8) throw config_error("cos_flow_first_order requires quad_nodes >= 8");
    const double alpha = std::sqrt(omega * omega - 0.25 * M_PI * M_PI);

    auto f = [&](double x) {
        const double c = std::cos(0.5 * M_PI * x);
        return c * c / std::cos(omega * x);
    };

    // Roots of cos(omega x) in (-1,1); omega < pi keeps them at +-pi/(2 omega).
    const double r = 0.5 * M_PI / omega;
    const std::vector<double> roots = {-r, r};
    const GaussLegendreRule gl = gauss_legendre(quad_nodes);

    auto plain = [&](double lo, double hi) {
        const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
        double acc = 0.0;
        for (int i = 0; i < gl.nodes.size(); ++i) acc += gl.weights(i) * f(mid + half * gl.nodes(i));
        return acc * half;
    };
    // Symmetric pair around a simple pole: the odd part integrates to zero, so
    // int_0^d (f(r+t) + f(r-t)) dt is regular.
    auto symmetric = [&](double root, double d) {
        const double half = 0.5 * d, mid = 0.5 * d;
        double acc = 0.0;
        for (int i = 0; i < gl.nodes.size(); ++i) {
            const double t = mid + half * gl.nodes(i);
            acc += gl.weights(i) * (f(root + t) + f(root - t));
        }
        return acc * half;
    };

    // Panel half-widths bounded by the midpoints between roots and endpoints.
    std::vector<double> mids = {-1.0, 0.0, 1.0};
    double pv = 0.0;
    double cursor = -1.0;
    for (size_t i = 0; i < roots.size(); ++i) {
        const double d = 0.9 * std::min(roots[i] - mids[i], mids[i + 1] - roots[i]);
        pv += plain(cursor, roots[i] - d);
        pv += symmetric(roots[i], d);
        cursor = roots[i] + d;
    }
    pv += plain(cursor, 1.0);

    const double cos_term = std::cos(M_PI * M_PI / (4.0 * omega));
    const Complex denom = pv + Complex(0.0, 2.0 * M_PI / omega) * cos_term * cos_term;
    const Complex prefactor = M_PI * M_PI * std::polar(1.0, 0.25 * M_PI) /
                              (2.0 * omega * omega * std::sqrt(alpha * std::abs(std::cos(omega))));
    return prefactor / denom;
}

Complex second_order_circle(const ShearProfile& profile, const DeformedContour& contour,
                            double alpha, Complex c1, int N) {
    if (!profile.domain().is_circle())
        throw config_error("second_order_circle expects a circle profile");

    const MatrixXcd Q = assemble_q_circle(profile, contour, alpha, 0.0, N);
    const VectorXcd v = simple_eigenvector_near(Q, c1, 1e-4, nullptr);

    const FourierGrid grid = fourier_grid(N);
    const MatrixXcd L = helmholtz_circle(grid, contour, alpha);
    VectorXcd psi_coeff = L.partialPivLu().solve(v);
    psi_coeff /= psi_coeff.norm();

    const VectorXcd psi = grid.to_samples(psi_coeff);
    const VectorXcd lap2_psi = grid.to_samples(L * (L * psi_coeff));

    // Trapezoidal contour quadrature (spectrally accurate on the circle).
    const double h = 2.0 * M_PI / N;
    Complex num = 0.0, den = 0.0;
    for (int j = 0; j < N; ++j) {
        const double x = grid.nodes(j);
        const Complex dg = contour.map(x, 1);
        const Complex u = profile.eval(contour.map(x, 0), 0);
        const Complex d2u = profile.eval(contour.map(x, 0), 2);
        const Complex ratio = psi(j) / (u - c1);
        num += h * ratio * lap2_psi(j) * dg;
        den += h * d2u * ratio * ratio * dg;
    }
    if (std::abs(den) < 1e-10)
        throw numerical_error("second_order_circle: contour integral is numerically zero");

    return Complex(0.0, 1.0 / alpha) * num / den;
}

namespace {

Complex nearest_eigenvalue(const VectorXcd& values, Complex target, double* dist_out) {
    int best = 0;
    double bestd = std::numeric_limits<double>::infinity();
    for (int i = 0; i < values.size(); ++i) {
        const double d = std::abs(values(i) - target);
        if (d < bestd) {
            bestd = d;
            best = i;
        }
    }
    if (dist_out) *dist_out = bestd;
    return values(best);
}

VectorXcd spectrum_at_eps(const ShearProfile& profile, const DeformedContour& contour,
                          double alpha, double eps, int N) {
    if (profile.domain().is_segment()) {
        const DiscretePencil pencil = assemble_os_pencil(profile, contour, alpha, eps, N);
        return eig_pencil(pencil.A, pencil.B).values;
    }
    return eig(assemble_q_circle(profile, contour, alpha, eps, N)).values;
}

} // namespace

TrackedBranch track_branch(const ShearProfile& profile, const DeformedContour& contour,
                           double alpha, Complex c1, std::span<const double> eps_grid, int N) {
    if (eps_grid.size() < 2) throw config_error("track_branch requires at least two eps values");
    if (eps_grid[0] != 0.0) throw config_error("track_branch eps grid must start at 0");
    for (size_t i = 1; i < eps_grid.size(); ++i)
        if (!(eps_grid[i] > eps_grid[i - 1]))
            throw config_error("track_branch eps grid must be strictly ascending");

    TrackedBranch branch;
    branch.alpha = alpha;
    branch.tau = contour.tau;
    branch.N = N;
    branch.profile_id = profile.id();
    branch.eps.push_back(0.0);
    branch.c.push_back(c1);
    branch.match_dist.push_back(0.0);

    double eps_prev = 0.0;
    Complex c_prev = c1;
    double jump_prev = std::numeric_limits<double>::infinity();

    auto step_to = [&](double eps_target) {
        // Walk from (eps_prev, c_prev) to eps_target, bisecting on suspicious jumps.
        int bisections = 0;
        double lo = eps_prev;
        Complex c_lo = c_prev;
        double jump_lo = jump_prev;
        double target = eps_target;
        while (true) {
            const VectorXcd values = spectrum_at_eps(profile, contour, alpha, target, N);
            double dist = 0.0;
            const Complex sel = nearest_eigenvalue(values, c_lo, &dist);
            const double bound = 5.0 * jump_lo + 1e-12 * (1.0 + std::abs(c_lo));
            if (dist <= bound) {
                lo = target;
                c_lo = sel;
                jump_lo = dist;
                if (target == eps_target) break;
                target = eps_target;
            } else {
                if (++bisections > 8)
                    throw numerical_error(
                        "track_branch: branch collision unresolved after 8 bisections near eps = " +
                        std::to_string(target));
                target = 0.5 * (lo + target);
            }
        }
        eps_prev = lo;
        c_prev = c_lo;
        jump_prev = jump_lo;
    };

    for (size_t i = 1; i < eps_grid.size(); ++i) {
        step_to(eps_grid[i]);
        branch.eps.push_back(eps_grid[i]);
        branch.c.push_back(c_prev);
        branch.match_dist.push_back(jump_prev);
    }
    return branch;
}

std::vector<double> default_eps_grid(double eps_max, int count) {
    if (!(eps_max > 0.0)) throw config_error("default_eps_grid requires eps_max > 0");
    if (count < 2) throw config_error("default_eps_grid requires count >= 2");
    std::vector<double> grid{0.0};
    for (int j = count - 1; j >= 0; --j) grid.push_back(eps_max * std::pow(2.0, -j));
    return grid;
}

TaylorFit fit_taylor(const TrackedBranch& branch, int degree, FitParity parity) {
    const int n = static_cast<int>(branch.eps.size());
    if (degree < 1) throw config_error("fit_taylor requires degree >= 1");
    if (n < degree + 2) throw config_error("fit_taylor requires at least degree + 2 branch points");

    std::vector<int> powers;
    for (int k = 1; k <= degree; ++k) {
        if (parity == FitParity::Even && k % 2 != 0) continue;
        powers.push_back(k);
    }
    if (powers.empty()) throw config_error("fit_taylor: no basis powers for the requested parity");

    const double eps_max = branch.eps.back();
    if (!(eps_max > 0.0)) throw config_error("fit_taylor: branch has no positive eps values");

    const int m = static_cast<int>(powers.size());
    Eigen::MatrixXd V(n, m);
    VectorXcd rhs(n);
    const Complex seed = branch.c.front();
    for (int i = 0; i < n; ++i) {
        const double s = branch.eps[i] / eps_max;
        for (int j = 0; j < m; ++j) V(i, j) = std::pow(s, powers[j]);
        rhs(i) = branch.c[i] - seed;
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(V, Eigen::ComputeThinU | Eigen::ComputeThinV);
    TaylorFit fit;
    fit.condition = svd.singularValues()(0) / svd.singularValues()(m - 1);
    if (!std::isfinite(fit.condition) || fit.condition > 1e14)
        throw numerical_error("fit_taylor: Vandermonde system is numerically singular");

    const Eigen::VectorXd sol_re = svd.solve(rhs.real().matrix().eval());
    const Eigen::VectorXd sol_im = svd.solve(rhs.imag().matrix().eval());
    const VectorXcd scaled = sol_re + Complex(0.0, 1.0) * sol_im;
    fit.coefficients.assign(degree + 1, Complex(0.0, 0.0));
    fit.coefficients[0] = seed;
    for (int j = 0; j < m; ++j)
        fit.coefficients[powers[j]] = scaled(j) / std::pow(eps_max, powers[j]);

    double ss = 0.0;
    for (int i = 0; i < n; ++i) {
        Complex model = seed;
        for (int k = 1; k <= degree; ++k)
            model += fit.coefficients[k] * std::pow(branch.eps[i], k);
        ss += std::norm(model - branch.c[i]);
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

} // namespace hydrospec
