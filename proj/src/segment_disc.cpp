#include "hydrospec/segment_disc.hpp"

#include <cmath>

#include "hydrospec/quadrature.hpp"

namespace hydrospec {

namespace detail {

VectorXd cheb_points(int N) {
    VectorXd x(N + 1);
    for (int j = 0; j <= N; ++j) x(j) = std::cos(M_PI * j / N);
    return x;
}

MatrixXd cheb_diff_matrix(int N) {
    const VectorXd x = cheb_points(N);
    VectorXd c = VectorXd::Ones(N + 1);
    c(0) = 2.0;
    c(N) = 2.0;
    MatrixXd D(N + 1, N + 1);
    for (int j = 0; j <= N; ++j) {
        for (int k = 0; k <= N; ++k) {
            if (j == k) continue;
            const double sign = ((j + k) % 2 == 0) ? 1.0 : -1.0;
            D(j, k) = sign * c(j) / (c(k) * (x(j) - x(k)));
        }
    }
    // Diagonal by the negative-sum trick: rows annihilate constants exactly.
    for (int j = 0; j <= N; ++j) {
        double s = 0.0;
        for (int k = 0; k <= N; ++k)
            if (k != j) s += D(j, k);
        D(j, j) = -s;
    }
    return D;
}

} // namespace detail

ChebGrid cheb_grid(int N) {
    if (N < 2) throw config_error("cheb_grid requires N >= 2");
    ChebGrid g;
    g.N = N;
    g.points = detail::cheb_points(N);
    g.D = detail::cheb_diff_matrix(N);
    return g;
}

MatrixXcd deform_D(const ChebGrid& grid, const DeformedContour& contour) {
    if (!contour.domain().is_segment())
        throw config_error("deform_D expects a segment contour");
    const int n = grid.N + 1;
    VectorXcd scale(n);
    for (int j = 0; j < n; ++j) {
        const Complex dg = contour.map(grid.points(j), 1);
        if (std::abs(dg) < 1e-14)
            throw numerical_error("gamma' vanishes at a grid point; contour is unusable");
        scale(j) = 1.0 / dg;
    }
    return scale.asDiagonal() * grid.D.cast<Complex>();
}

MatrixXcd helmholtz_dirichlet(const MatrixXcd& D_tau, double alpha) {
    if (!(alpha > 0.0)) throw config_error("helmholtz_dirichlet requires alpha > 0");
    const int n = static_cast<int>(D_tau.rows());
    const MatrixXcd D2 = D_tau * D_tau;
    return D2.block(1, 1, n - 2, n - 2) - alpha * alpha * MatrixXcd::Identity(n - 2, n - 2);
}

Complex chebyshev_interp(const VectorXd& points, const VectorXcd& f, double t) {
    const int N = static_cast<int>(points.size()) - 1;
    Complex num = 0.0, den = 0.0;
    for (int j = 0; j <= N; ++j) {
        const double d = t - points(j);
        if (std::abs(d) < 1e-14) return f(j);
        double w = (j % 2 == 0) ? 1.0 : -1.0;
        if (j == 0 || j == N) w *= 0.5;
        const double r = w / d;
        num += r * f(j);
        den += r;
    }
    return num / den;
}

VectorXcd greens_oracle(double alpha, const VectorXcd& f, const ChebGrid& grid) {
    if (!(alpha > 0.0)) throw config_error("greens_oracle requires alpha > 0");
    if (f.size() != grid.N + 1) throw config_error("greens_oracle sample size mismatch");
    const double a = -1.0, b = 1.0;
    const double sh = std::sinh(alpha * (b - a));

    // Fixed Clenshaw-Curtis panel, mapped to each partial interval.
    const int K = std::max(64, 2 * grid.N);
    const VectorXd wcc = clenshaw_curtis_weights(K);
    const VectorXd xcc = detail::cheb_points(K);

    auto integrate = [&](double lo, double hi, auto&& kernel) {
        // int_lo^hi kernel(t) f(t) dt with f the Chebyshev interpolant.
        const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
        Complex acc = 0.0;
        for (int j = 0; j <= K; ++j) {
            const double t = mid + half * xcc(j);
            acc += wcc(j) * kernel(t) * chebyshev_interp(grid.points, f, t);
        }
        return acc * half;
    };

    VectorXcd u(grid.N + 1);
    for (int j = 0; j <= grid.N; ++j) {
        const double x = grid.points(j);
        const Complex right =
            integrate(x, b, [&](double t) { return std::sinh(alpha * (b - t)); });
        const Complex left = integrate(a, x, [&](double t) { return std::sinh(alpha * (t - a)); });
        u(j) = -std::sinh(alpha * (x - a)) / (alpha * sh) * right -
               std::sinh(alpha * (b - x)) / (alpha * sh) * left;
    }
    return u;
}

MatrixXcd clamped_bilaplacian(const MatrixXcd& D_tau, const DeformedContour& contour,
                              const ChebGrid& grid) {
    const Domain& dom = contour.domain();
    if (!dom.is_segment() || std::abs(dom.a + 1.0) > 1e-14 || std::abs(dom.b - 1.0) > 1e-14)
        throw config_error("clamped_bilaplacian expects the segment [-1,1]");
    const int n = grid.N + 1;

    VectorXcd gamma(n);
    for (int j = 0; j < n; ++j) gamma(j) = contour.map(grid.points(j), 0);

    const MatrixXcd D2 = D_tau * D_tau;
    const MatrixXcd D3 = D2 * D_tau;
    const MatrixXcd D4 = D3 * D_tau;

    VectorXcd one_minus_g2(n), s(n);
    for (int j = 0; j < n; ++j) {
        one_minus_g2(j) = 1.0 - gamma(j) * gamma(j);
        s(j) = (j == 0 || j == n - 1) ? Complex(0.0) : 1.0 / one_minus_g2(j);
    }

    const MatrixXcd outer =
        one_minus_g2.asDiagonal() * D4 - 8.0 * (gamma.asDiagonal() * D3) - 12.0 * D2;
    const MatrixXcd full = outer * MatrixXcd(s.asDiagonal());
    return full.block(1, 1, n - 2, n - 2);
}

namespace {

struct ContourSamples {
    VectorXcd U_int;   // U(gamma(x_j)) at interior nodes
    VectorXcd D2U_int; // U''(gamma(x_j)) at interior nodes
};

ContourSamples sample_profile(const ShearProfile& profile, const DeformedContour& contour,
                              const ChebGrid& grid) {
    const int n = grid.N + 1;
    ContourSamples out;
    out.U_int.resize(n - 2);
    out.D2U_int.resize(n - 2);
    for (int j = 1; j < n - 1; ++j) {
        const Complex g = contour.map(grid.points(j), 0);
        out.U_int(j - 1) = profile.eval(g, 0);
        out.D2U_int(j - 1) = profile.eval(g, 2);
    }
    return out;
}

void check_segment_inputs(const ShearProfile& profile, const DeformedContour& contour, int N) {
    if (!profile.domain().is_segment() || !contour.domain().is_segment())
        throw config_error("segment discretization expects segment domains");
    if (profile.domain() != contour.domain())
        throw config_error("profile and contour domains differ");
    const Domain& dom = profile.domain();
    if (std::abs(dom.a + 1.0) > 1e-14 || std::abs(dom.b - 1.0) > 1e-14)
        throw config_error("segment discretization is fixed to [-1,1]; rescale the profile");
    if (N < 4) throw config_error("segment discretization requires N >= 4");
}

} // namespace

DiscretePencil assemble_os_pencil(const ShearProfile& profile, const DeformedContour& contour,
                                  double alpha, double eps, int N) {
    check_segment_inputs(profile, contour, N);
    if (!(alpha > 0.0)) throw config_error("assemble_os_pencil requires alpha > 0");
    if (eps < 0.0) throw config_error("assemble_os_pencil requires eps >= 0");

    const ChebGrid grid = cheb_grid(N);
    const MatrixXcd D_tau = deform_D(grid, contour);
    const MatrixXcd D2_int = helmholtz_dirichlet(D_tau, alpha) +
                             alpha * alpha * MatrixXcd::Identity(N - 1, N - 1); // interior D_tau^2
    const MatrixXcd I = MatrixXcd::Identity(N - 1, N - 1);
    const ContourSamples s = sample_profile(profile, contour, grid);

    DiscretePencil pencil;
    pencil.B = D2_int - alpha * alpha * I;
    pencil.A = s.U_int.asDiagonal() * pencil.B - MatrixXcd(s.D2U_int.asDiagonal());
    if (eps > 0.0) {
        const MatrixXcd D4_dn = clamped_bilaplacian(D_tau, contour, grid);
        pencil.A += Complex(0.0, 1.0) * (eps * eps / alpha) *
                    (D4_dn - 2.0 * alpha * alpha * D2_int +
                     alpha * alpha * alpha * alpha * I);
    }
    pencil.meta = {N, alpha, eps, contour.tau, profile.id(), contour.id()};
    return pencil;
}

MatrixXcd assemble_rayleigh_q(const ShearProfile& profile, const DeformedContour& contour,
                              double alpha, int N) {
    check_segment_inputs(profile, contour, N);
    if (!(alpha > 0.0)) throw config_error("assemble_rayleigh_q requires alpha > 0");

    const ChebGrid grid = cheb_grid(N);
    const MatrixXcd D_tau = deform_D(grid, contour);
    const MatrixXcd H = helmholtz_dirichlet(D_tau, alpha);
    const ContourSamples s = sample_profile(profile, contour, grid);

    Eigen::PartialPivLU<MatrixXcd> lu(H);
    const MatrixXcd Hinv = lu.solve(MatrixXcd::Identity(N - 1, N - 1));
    const double resid = (H * Hinv - MatrixXcd::Identity(N - 1, N - 1)).norm();
    if (!std::isfinite(resid) || resid > 1e-6)
        throw numerical_error("Helmholtz block is numerically singular (residual " +
                              std::to_string(resid) + "); increase N or fix the contour");

    return MatrixXcd(s.U_int.asDiagonal()) - s.D2U_int.asDiagonal() * Hinv;
}

std::vector<Complex> ellipticity_samples(const ShearProfile& profile,
                                         const DeformedContour& contour, int n_samples) {
    if (n_samples < 64) throw config_error("ellipticity_samples requires at least 64 samples");
    if (profile.domain() != contour.domain())
        throw config_error("profile and contour domains differ");
    const Domain& dom = profile.domain();
    const double lo = dom.is_segment() ? dom.a : 0.0;
    const double hi = dom.is_segment() ? dom.b : dom.period;
    std::vector<Complex> out;
    out.reserve(n_samples + 1);
    for (int i = 0; i <= n_samples; ++i) {
        const double x = lo + (hi - lo) * i / n_samples;
        out.push_back(profile.eval(contour.map(x, 0)));
    }
    return out;
}

} // namespace hydrospec
