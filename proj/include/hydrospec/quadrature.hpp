#pragma once

#include <Eigen/Dense>

namespace hydrospec {

// Clenshaw-Curtis weights for the N+1 Chebyshev points cos(j pi / N) on [-1,1],
// ordered like the points (x_0 = 1 down to x_N = -1).
Eigen::VectorXd clenshaw_curtis_weights(int N);

struct GaussLegendreRule {
    Eigen::VectorXd nodes;   // on (-1,1)
    Eigen::VectorXd weights;
};

// n-point Gauss-Legendre rule on [-1,1] (Newton iteration on P_n).
GaussLegendreRule gauss_legendre(int n);

} // namespace hydrospec
