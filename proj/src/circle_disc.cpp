#include "hydrospec/circle_disc.hpp"

#include <cmath>
#include <mutex>
#include <set>

namespace hydrospec {

FourierGrid fourier_grid(int N) {
    if (N < 4 || N % 2 != 0) throw config_error("fourier_grid requires an even N >= 4");
    FourierGrid g;
    g.N = N;
    g.nodes.resize(N);
    g.wavenumbers.resize(N);
    for (int j = 0; j < N; ++j) g.nodes(j) = 2.0 * M_PI * j / N;
    for (int k = 0; k < N / 2; ++k) g.wavenumbers(k) = k;
    for (int k = N / 2; k < N; ++k) g.wavenumbers(k) = k - N;

    g.forward.resize(N, N);
    g.inverse.resize(N, N);
    for (int m = 0; m < N; ++m) {
        const double k = g.wavenumbers(m);
        for (int j = 0; j < N; ++j) {
            const double phase = k * g.nodes(j);
            g.inverse(j, m) = Complex(std::cos(phase), std::sin(phase));
            g.forward(m, j) = Complex(std::cos(phase), -std::sin(phase)) / static_cast<double>(N);
        }
    }
    return g;
}

MatrixXcd fourier_deformed_D(const FourierGrid& grid, const DeformedContour& contour) {
    if (!contour.domain().is_circle())
        throw config_error("fourier_deformed_D expects a circle contour");
    if (std::abs(contour.domain().period - 2.0 * M_PI) > 1e-12)
        throw config_error("circle discretization is fixed to period 2*pi; rescale the profile");
    const int N = grid.N;
    VectorXcd scale(N);
    for (int j = 0; j < N; ++j) {
        const Complex dg = contour.map(grid.nodes(j), 1);
        if (std::abs(dg) < 1e-14)
            throw numerical_error("gamma' vanishes at a grid node; contour is unusable");
        scale(j) = 1.0 / dg;
    }
    VectorXcd ik(N);
    for (int m = 0; m < N; ++m) ik(m) = Complex(0.0, static_cast<double>(grid.wavenumbers(m)));
    return grid.forward * scale.asDiagonal() * grid.inverse * MatrixXcd(ik.asDiagonal());
}

MatrixXcd fourier_mult(const FourierGrid& grid, const DeformedContour& contour,
                       const ShearProfile& profile, int order) {
    const int N = grid.N;
    VectorXcd vals(N);
    for (int j = 0; j < N; ++j) vals(j) = profile.eval(contour.map(grid.nodes(j), 0), order);
    return grid.forward * vals.asDiagonal() * grid.inverse;
}

MatrixXcd helmholtz_circle(const FourierGrid& grid, const DeformedContour& contour, double alpha) {
    if (!(alpha > 0.0)) throw config_error("helmholtz_circle requires alpha > 0");
    const MatrixXcd D = fourier_deformed_D(grid, contour);
    return D * D - alpha * alpha * MatrixXcd::Identity(grid.N, grid.N);
}

namespace {

// The probe set is cheap but not free; run it once per grid size.
bool probe_passed(int N) {
    static std::mutex mu;
    static std::set<int> passed;
    {
        std::lock_guard<std::mutex> lock(mu);
        if (passed.count(N)) return true;
    }
    const ProbeResult probe = fourier_convention_probe(N);
    if (!probe.ok) return false;
    std::lock_guard<std::mutex> lock(mu);
    passed.insert(N);
    return true;
}

} // namespace

MatrixXcd assemble_q_circle(const ShearProfile& profile, const DeformedContour& contour,
                            double alpha, double eps, int N) {
    if (!profile.domain().is_circle() || !contour.domain().is_circle())
        throw config_error("circle discretization expects circle domains");
    if (profile.domain() != contour.domain())
        throw config_error("profile and contour domains differ");
    if (std::abs(profile.domain().period - 2.0 * M_PI) > 1e-12)
        throw config_error("circle discretization is fixed to period 2*pi; rescale the profile");
    if (!(alpha > 0.0)) throw config_error("assemble_q_circle requires alpha > 0");
    if (eps < 0.0) throw config_error("assemble_q_circle requires eps >= 0");
    if (!probe_passed(N))
        throw numerical_error("Fourier convention probe failed at N = " + std::to_string(N));

    const FourierGrid grid = fourier_grid(N);
    const MatrixXcd L = helmholtz_circle(grid, contour, alpha);

    Eigen::PartialPivLU<MatrixXcd> lu(L);
    const MatrixXcd Linv = lu.solve(MatrixXcd::Identity(N, N));
    const double resid = (L * Linv - MatrixXcd::Identity(N, N)).norm();
    if (!std::isfinite(resid) || resid > 1e-6)
        throw numerical_error("circle Helmholtz operator is numerically singular");

    const MatrixXcd M_U = fourier_mult(grid, contour, profile, 0);
    const MatrixXcd M_D2U = fourier_mult(grid, contour, profile, 2);

    MatrixXcd Q = M_U - M_D2U * Linv;
    if (eps > 0.0) Q += Complex(0.0, 1.0) * (eps * eps / alpha) * L;
    return Q;
}

ProbeResult fourier_convention_probe(int N) {
    ProbeResult result;
    const FourierGrid grid = fourier_grid(N);
    // Undeformed contour on the standard circle.
    const DeformedContour flat(EscapeFunction::neg_cos(1, Domain::circle(2.0 * M_PI)), 0.0);
    const MatrixXcd D = fourier_deformed_D(grid, flat);
    const double alpha = 1.0;
    const MatrixXcd L = helmholtz_circle(grid, flat, alpha);

    auto samples_of = [&](int k) {
        VectorXcd v(N);
        for (int j = 0; j < N; ++j) {
            const double phase = k * grid.nodes(j);
            v(j) = Complex(std::cos(phase), std::sin(phase));
        }
        return v;
    };

    auto check = [&](const std::string& name, double err) {
        result.checks.emplace_back(name, err);
        result.worst_error = std::max(result.worst_error, err);
    };

    // Round trip.
    {
        VectorXcd v = samples_of(3) + 0.5 * samples_of(-1);
        check("roundtrip", (grid.inverse * (grid.forward * v) - v).norm());
    }
    // Derivative on constants and pure modes; errors measured relative to the
    // operator scale (entries of D grow like N/2).
    const double dscale = 0.5 * N;
    for (int k : {0, 1, -1, 3}) {
        const VectorXcd coeff = grid.forward * samples_of(k);
        const VectorXcd got = D * coeff;
        const VectorXcd want = Complex(0.0, static_cast<double>(k)) * coeff;
        check("derivative(k=" + std::to_string(k) + ")", (got - want).norm() / dscale);
    }
    // Helmholtz symbol on samples; the operator scale is (N/2)^2 + alpha^2.
    const double lscale = 0.25 * N * N + alpha * alpha;
    for (int k : {0, 1, -1, 3}) {
        const VectorXcd v = samples_of(k);
        const VectorXcd got = grid.inverse * (L * (grid.forward * v));
        const VectorXcd want = (-static_cast<double>(k) * k - alpha * alpha) * v;
        check("helmholtz(k=" + std::to_string(k) + ")", (got - want).norm() / lscale);
    }

    result.ok = result.worst_error < 1e-11;
    return result;
}

} // namespace hydrospec
