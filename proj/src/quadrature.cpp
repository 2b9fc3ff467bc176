#include "hydrospec/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace hydrospec {

Eigen::VectorXd clenshaw_curtis_weights(int N) {
    if (N < 1) throw std::invalid_argument("clenshaw_curtis_weights requires N >= 1");
    Eigen::VectorXd w = Eigen::VectorXd::Zero(N + 1);
    if (N == 1) {
        w(0) = w(1) = 1.0;
        return w;
    }
    Eigen::VectorXd theta(N + 1);
    for (int j = 0; j <= N; ++j) theta(j) = M_PI * j / N;

    Eigen::VectorXd v = Eigen::VectorXd::Ones(N - 1);
    if (N % 2 == 0) {
        w(0) = w(N) = 1.0 / (N * N - 1.0);
        for (int k = 1; k <= N / 2 - 1; ++k)
            for (int j = 1; j < N; ++j) v(j - 1) -= 2.0 * std::cos(2.0 * k * theta(j)) / (4.0 * k * k - 1.0);
        for (int j = 1; j < N; ++j) v(j - 1) -= std::cos(N * theta(j)) / (N * N - 1.0);
    } else {
        w(0) = w(N) = 1.0 / (N * N);
        for (int k = 1; k <= (N - 1) / 2; ++k)
            for (int j = 1; j < N; ++j) v(j - 1) -= 2.0 * std::cos(2.0 * k * theta(j)) / (4.0 * k * k - 1.0);
    }
    for (int j = 1; j < N; ++j) w(j) = 2.0 * v(j - 1) / N;
    return w;
}

GaussLegendreRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre requires n >= 1");
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev-based initial guess, then Newton on P_n.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes(i) = -x;
        rule.nodes(n - 1 - i) = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights(i) = w;
        rule.weights(n - 1 - i) = w;
    }
    return rule;
}

} // namespace hydrospec
