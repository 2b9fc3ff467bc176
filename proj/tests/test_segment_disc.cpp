#include <doctest.h>

#include <cmath>
#include <random>

#include "hydrospec/eigs.hpp"
#include "hydrospec/quadrature.hpp"
#include "hydrospec/segment_disc.hpp"

using namespace hydrospec;

namespace {

const Domain seg = Domain::segment(-1.0, 1.0);

DeformedContour contour_A(double tau) {
    return DeformedContour(EscapeFunction::trig_cutoff(0.7 * M_PI, M_PI / 2, seg), tau);
}

ShearProfile profile_A() { return ShearProfile::trig(0.7 * M_PI, M_PI / 2, seg); }

const double alpha_A = std::sqrt(0.7 * 0.7 - 0.25) * M_PI; // omega^2 - alpha^2 = (pi/2)^2

} // namespace

TEST_CASE("Chebyshev entry formulas at N = 1") {
    const MatrixXd D = detail::cheb_diff_matrix(1);
    CHECK(D(0, 0) == doctest::Approx(0.5));
    CHECK(D(0, 1) == doctest::Approx(-0.5));
    CHECK(D(1, 0) == doctest::Approx(0.5));
    CHECK(D(1, 1) == doctest::Approx(-0.5));
}

TEST_CASE("cheb_grid differentiates polynomials exactly") {
    CHECK_THROWS_AS(cheb_grid(1), config_error);

    const ChebGrid g = cheb_grid(8);
    const VectorXd ones = VectorXd::Ones(9);
    CHECK((g.D * ones).cwiseAbs().maxCoeff() < 1e-12);

    const VectorXd x3 = g.points.array().cube();
    const VectorXd want = 3.0 * g.points.array().square();
    CHECK((g.D * x3 - want).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("cheb_grid invariants at N = 16") {
    const int N = 16;
    const ChebGrid g = cheb_grid(N);
    CHECK((g.D * VectorXd::Ones(N + 1)).cwiseAbs().maxCoeff() < 1e-12 * N * N);
    for (int m = 1; m <= N; ++m) {
        const VectorXd xm = g.points.array().pow(m);
        const VectorXd want = m * g.points.array().pow(m - 1);
        CHECK((g.D * xm - want).cwiseAbs().maxCoeff() < 1e-10 * std::pow(N, 4));
    }
}

TEST_CASE("deform_D reduces to D at tau = 0 and obeys the chain rule") {
    const ChebGrid g32 = cheb_grid(32);
    const MatrixXcd D0 = deform_D(g32, contour_A(0.0));
    CHECK((D0 - g32.D.cast<Complex>()).cwiseAbs().maxCoeff() < 1e-14);

    // f(z) = z^2 sampled along the contour: derivative must be 2 gamma(x).
    const DeformedContour ct = contour_A(0.1);
    VectorXcd samples(33), want(33);
    for (int j = 0; j <= 32; ++j) {
        const Complex z = ct.map(g32.points(j), 0);
        samples(j) = z * z;
        want(j) = 2.0 * z;
    }
    CHECK((deform_D(g32, ct) * samples - want).cwiseAbs().maxCoeff() < 1e-8);

    // f(z) = e^{2z} at N = 48.
    const ChebGrid g48 = cheb_grid(48);
    VectorXcd se(49), we(49);
    for (int j = 0; j <= 48; ++j) {
        const Complex z = ct.map(g48.points(j), 0);
        se(j) = std::exp(2.0 * z);
        we(j) = 2.0 * std::exp(2.0 * z);
    }
    CHECK((deform_D(g48, ct) * se - we).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("helmholtz_dirichlet solves the analytic Dirichlet problem") {
    const int N = 32;
    const ChebGrid g = cheb_grid(N);
    const MatrixXcd D0 = deform_D(g, contour_A(0.0));

    // alpha = 1, f = -(pi^2+1) sin(pi x) -> u = sin(pi x).
    {
        const MatrixXcd H = helmholtz_dirichlet(D0, 1.0);
        VectorXcd f(N - 1), want(N - 1);
        for (int j = 1; j < N; ++j) {
            f(j - 1) = -(M_PI * M_PI + 1.0) * std::sin(M_PI * g.points(j));
            want(j - 1) = std::sin(M_PI * g.points(j));
        }
        const VectorXcd u = H.partialPivLu().solve(f);
        CHECK((u - want).cwiseAbs().maxCoeff() < 1e-8);
    }
    // alpha = 2, f = 0 -> u = 0.
    {
        const MatrixXcd H = helmholtz_dirichlet(D0, 2.0);
        const VectorXcd u = H.partialPivLu().solve(VectorXcd::Zero(N - 1));
        CHECK(u.cwiseAbs().maxCoeff() == 0.0);
    }
    // alpha = 1, f = 1 against the sinh-kernel oracle.
    {
        const MatrixXcd H = helmholtz_dirichlet(D0, 1.0);
        const VectorXcd u = H.partialPivLu().solve(VectorXcd::Ones(N - 1));
        const VectorXcd oracle = greens_oracle(1.0, VectorXcd::Ones(N + 1), g);
        CHECK((u - oracle.segment(1, N - 1)).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("greens_oracle reproduces analytic solutions and the matrix solve") {
    const int N = 48;
    const ChebGrid g = cheb_grid(N);

    CHECK(greens_oracle(1.0, VectorXcd::Zero(N + 1), g).cwiseAbs().maxCoeff() < 1e-14);

    VectorXcd f(N + 1), want(N + 1);
    for (int j = 0; j <= N; ++j) {
        f(j) = -(M_PI * M_PI + 1.0) * std::sin(M_PI * g.points(j));
        want(j) = std::sin(M_PI * g.points(j));
    }
    CHECK((greens_oracle(1.0, f, g) - want).cwiseAbs().maxCoeff() < 1e-7);

    // Smooth pseudo-random right-hand side: oracle vs matrix route.
    std::mt19937 rng(19);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    const double a0 = coeff(rng), a1 = coeff(rng), a2 = coeff(rng);
    VectorXcd fr(N + 1);
    for (int j = 0; j <= N; ++j) {
        const double x = g.points(j);
        fr(j) = a0 * std::exp(x) + a1 * std::cos(2.0 * x) + a2 * x * x;
    }
    const MatrixXcd H = helmholtz_dirichlet(deform_D(g, contour_A(0.0)), 1.0);
    const VectorXcd um = H.partialPivLu().solve(VectorXcd(fr.segment(1, N - 1)));
    const VectorXcd uo = greens_oracle(1.0, fr, g);
    CHECK((um - uo.segment(1, N - 1)).cwiseAbs().maxCoeff() < 1e-7);
}

TEST_CASE("clamped_bilaplacian is exact on clamped polynomials") {
    const int N = 16;
    const ChebGrid g = cheb_grid(N);
    const DeformedContour flat = contour_A(0.0);
    const MatrixXcd B4 = clamped_bilaplacian(deform_D(g, flat), flat, g);

    // p = (1-x^2)^2: p'''' = 24.
    {
        VectorXcd p(N - 1);
        for (int j = 1; j < N; ++j) {
            const double x = g.points(j);
            p(j - 1) = std::pow(1.0 - x * x, 2.0);
        }
        const VectorXcd out = B4 * p;
        for (int j = 0; j < N - 1; ++j) CHECK(std::abs(out(j) - Complex(24.0)) < 1e-8);
    }
    // p = (1-x^2)^2 x: p'''' = 120 x.
    {
        VectorXcd p(N - 1), want(N - 1);
        for (int j = 1; j < N; ++j) {
            const double x = g.points(j);
            p(j - 1) = std::pow(1.0 - x * x, 2.0) * x;
            want(j - 1) = 120.0 * x;
        }
        CHECK((B4 * p - want).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("clamped_bilaplacian along a deformed contour") {
    const int N = 48;
    const ChebGrid g = cheb_grid(N);
    const DeformedContour ct = contour_A(0.1);
    const MatrixXcd B4 = clamped_bilaplacian(deform_D(g, ct), ct, g);

    // g(z) = (1-z^2)^2 has g'''' = 24 identically.
    VectorXcd p(N - 1);
    for (int j = 1; j < N; ++j) {
        const Complex z = ct.map(g.points(j), 0);
        p(j - 1) = std::pow(1.0 - z * z, 2.0);
    }
    const VectorXcd out = B4 * p;
    for (int j = 0; j < N - 1; ++j) CHECK(std::abs(out(j) - Complex(24.0)) < 1e-6);
}

TEST_CASE("assemble_os_pencil at eps = 0 is the Rayleigh pencil") {
    const int N = 24;
    const ShearProfile p = profile_A();
    const DeformedContour ct = contour_A(0.1);
    const DiscretePencil pencil = assemble_os_pencil(p, ct, alpha_A, 0.0, N);

    const ChebGrid g = cheb_grid(N);
    const MatrixXcd D_tau = deform_D(g, ct);
    const MatrixXcd B = helmholtz_dirichlet(D_tau, alpha_A);
    VectorXcd U(N - 1), D2U(N - 1);
    for (int j = 1; j < N; ++j) {
        const Complex z = ct.map(g.points(j), 0);
        U(j - 1) = p.eval(z, 0);
        D2U(j - 1) = p.eval(z, 2);
    }
    const MatrixXcd A_ray = U.asDiagonal() * B - MatrixXcd(D2U.asDiagonal());
    CHECK((pencil.A - A_ray).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((pencil.B - B).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("cos(0.7 pi x) has a generalized eigenvalue at zero") {
    const DiscretePencil pencil = assemble_os_pencil(profile_A(), contour_A(0.1), alpha_A, 0.0, 64);
    const Spectrum spec = eig_pencil(pencil.A, pencil.B);
    double best = 1e9;
    for (int i = 0; i < spec.values.size(); ++i) best = std::min(best, std::abs(spec.values(i)));
    CHECK(best < 1e-6);
}

TEST_CASE("Couette pencil spectrum stays on the ellipticity curve") {
    const ShearProfile p = ShearProfile::couette(seg);
    const DeformedContour ct(EscapeFunction::cp_tilt(0.0, seg), 0.1);
    const auto curve = ellipticity_samples(p, ct, 2048);
    for (double alpha : {0.5, 1.0, 2.0}) {
        const DiscretePencil pencil = assemble_os_pencil(p, ct, alpha, 0.0, 64);
        const Spectrum spec = eig_pencil(pencil.A, pencil.B);
        for (int i = 0; i < spec.values.size(); ++i) {
            const Complex c = spec.values(i);
            if (std::abs(c - Complex(0.2, 0.0)) < 0.05) {
                double dist = 1e9;
                for (const Complex& s : curve) dist = std::min(dist, std::abs(c - s));
                CHECK(dist < 0.02);
            }
        }
    }
}

TEST_CASE("assemble_rayleigh_q for Couette is the contour multiplication operator") {
    const ShearProfile p = ShearProfile::couette(seg);
    const DeformedContour ct(EscapeFunction::cp_tilt(0.0, seg), 0.1);
    const int N = 24;
    const MatrixXcd Q = assemble_rayleigh_q(p, ct, 1.0, N);
    const ChebGrid g = cheb_grid(N);
    for (int j = 1; j < N; ++j) {
        CHECK(std::abs(Q(j - 1, j - 1) - ct.map(g.points(j), 0)) < 1e-13);
        for (int k = 1; k < N; ++k)
            if (k != j) CHECK(std::abs(Q(j - 1, k - 1)) < 1e-13);
    }
}

TEST_CASE("cos(3 pi x) resonance via the Q route") {
    const ShearProfile p = ShearProfile::trig(3.0 * M_PI, M_PI / 2, seg);
    const DeformedContour ct(EscapeFunction::sin_periodic(3.0 * M_PI, seg), 0.1);
    const double alpha = 0.5 * std::sqrt(35.0) * M_PI;
    const MatrixXcd Q = assemble_rayleigh_q(p, ct, alpha, 96);
    const Spectrum spec = eig(Q);
    double best = 1e9;
    for (int i = 0; i < spec.values.size(); ++i) best = std::min(best, std::abs(spec.values(i)));
    CHECK(best < 1e-6);
}

TEST_CASE("Q route agrees with the eps = 0 pencil route") {
    const int N = 64;
    const ShearProfile p = profile_A();
    const DeformedContour ct = contour_A(0.1);
    const MatrixXcd Q = assemble_rayleigh_q(p, ct, alpha_A, N);
    const DiscretePencil pencil = assemble_os_pencil(p, ct, alpha_A, 0.0, N);
    const Spectrum sq = eig(Q);
    const Spectrum sp = eig_pencil(pencil.A, pencil.B);
    CHECK(multiset_distance(sq.values, sp.values) < 1e-8);
}

TEST_CASE("spectral convergence of the located resonance") {
    auto locate = [](const ShearProfile& p, const DeformedContour& ct, double alpha, int N) {
        const Spectrum spec = eig(assemble_rayleigh_q(p, ct, alpha, N));
        Complex best = spec.values(0);
        for (int i = 1; i < spec.values.size(); ++i)
            if (std::abs(spec.values(i)) < std::abs(best)) best = spec.values(i);
        return best;
    };
    {
        const ShearProfile p = profile_A();
        const DeformedContour ct = contour_A(0.1);
        CHECK(std::abs(locate(p, ct, alpha_A, 64) - locate(p, ct, alpha_A, 128)) < 1e-8);
    }
    {
        const ShearProfile p = ShearProfile::trig(3.0 * M_PI, M_PI / 2, seg);
        const DeformedContour ct(EscapeFunction::sin_periodic(3.0 * M_PI, seg), 0.1);
        const double alpha = 0.5 * std::sqrt(35.0) * M_PI;
        CHECK(std::abs(locate(p, ct, alpha, 64) - locate(p, ct, alpha, 128)) < 1e-8);
    }
    {
        const ShearProfile p = ShearProfile::trig(1.7 * M_PI, 0.3, seg);
        const DeformedContour ct(EscapeFunction::trig_cutoff(1.7 * M_PI, 0.3, seg), 0.1);
        const double alpha = std::sqrt(1.7 * 1.7 - 2.25) * M_PI;
        CHECK(std::abs(locate(p, ct, alpha, 64) - locate(p, ct, alpha, 128)) < 1e-8);
    }
}

TEST_CASE("ellipticity_samples") {
    // Couette at tau = 0: real samples filling [-1,1].
    {
        const ShearProfile p = ShearProfile::couette(seg);
        const DeformedContour ct(EscapeFunction::cp_tilt(0.0, seg), 0.0);
        for (const Complex& s : ellipticity_samples(p, ct, 128)) {
            CHECK(std::abs(s.imag()) < 1e-15);
            CHECK(std::abs(s.real()) <= 1.0 + 1e-15);
        }
    }
    // cos(0.7 pi x) at tau = 0.1: never above the real axis.
    {
        for (const Complex& s : ellipticity_samples(profile_A(), contour_A(0.1), 256))
            CHECK(s.imag() <= 1e-10);
    }
    // Kolmogorov circle at tau = 0.15: lower half-plane, touching R only where m0 = 0.
    {
        const Domain circ = Domain::circle(2.0 * M_PI);
        const ShearProfile p = ShearProfile::kolmogorov(3, circ);
        const EscapeFunction esc = EscapeFunction::neg_cos(3, circ);
        const DeformedContour ct(esc, 0.15);
        const int n = 512;
        const auto samples = ellipticity_samples(p, ct, n);
        for (int i = 0; i <= n; ++i) {
            const double x = 2.0 * M_PI * i / n;
            CHECK(samples[i].imag() <= 1e-10);
            if (std::abs(esc.m0(x)) > 0.2) CHECK(samples[i].imag() < 0.0);
        }
    }
    CHECK_THROWS_AS(ellipticity_samples(profile_A(), contour_A(0.1), 32), config_error);
}

TEST_CASE("clenshaw_curtis_weights integrate smooth functions") {
    for (int N : {16, 17, 32}) {
        const VectorXd w = clenshaw_curtis_weights(N);
        const VectorXd x = detail::cheb_points(N);
        CHECK(w.sum() == doctest::Approx(2.0).epsilon(1e-13));
        double integral = 0.0;
        for (int j = 0; j <= N; ++j) integral += w(j) * std::exp(x(j));
        CHECK(integral == doctest::Approx(std::exp(1.0) - std::exp(-1.0)).epsilon(1e-12));
    }
}

TEST_CASE("gauss_legendre integrates polynomials of degree 2n-1") {
    const GaussLegendreRule rule = gauss_legendre(8);
    double integral = 0.0;
    for (int i = 0; i < 8; ++i) integral += rule.weights(i) * std::pow(rule.nodes(i), 14.0);
    CHECK(integral == doctest::Approx(2.0 / 15.0).epsilon(1e-13));
}
