#include "hydrospec/eigs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hydrospec {

namespace {

void check_square_finite(const MatrixXcd& M, const char* who) {
    if (M.rows() != M.cols()) throw config_error(std::string(who) + ": matrix must be square");
    if (!M.allFinite()) throw numerical_error(std::string(who) + ": matrix has non-finite entries");
}

VectorXd pair_residuals(const MatrixXcd& A, const MatrixXcd& B, const VectorXcd& values,
                        const MatrixXcd& vectors) {
    const int n = static_cast<int>(values.size());
    VectorXd res(n);
    for (int i = 0; i < n; ++i) {
        const VectorXcd v = vectors.col(i);
        res(i) = (A * v - values(i) * (B * v)).norm() / v.norm();
    }
    return res;
}

} // namespace

Spectrum eig(const MatrixXcd& M, bool want_vectors) {
    check_square_finite(M, "eig");
    Eigen::ComplexEigenSolver<MatrixXcd> solver(M, want_vectors);
    if (solver.info() != Eigen::Success)
        throw numerical_error("eig: complex Schur iteration did not converge");
    Spectrum s;
    s.values = solver.eigenvalues();
    if (want_vectors) {
        s.vectors = solver.eigenvectors();
        s.residuals = pair_residuals(M, MatrixXcd::Identity(M.rows(), M.cols()), s.values,
                                     *s.vectors);
    }
    return s;
}

Spectrum eig_pencil(const MatrixXcd& A, const MatrixXcd& B, bool want_vectors) {
    check_square_finite(A, "eig_pencil");
    check_square_finite(B, "eig_pencil");
    if (A.rows() != B.rows()) throw config_error("eig_pencil: A and B sizes differ");

    const int n = static_cast<int>(A.rows());
    Eigen::PartialPivLU<MatrixXcd> lu(B);
    const MatrixXcd Binv = lu.solve(MatrixXcd::Identity(n, n));
    const double cond_est = B.cwiseAbs().rowwise().sum().maxCoeff() *
                            Binv.cwiseAbs().rowwise().sum().maxCoeff();
    if (!std::isfinite(cond_est) || cond_est > 1e14)
        throw numerical_error("eig_pencil: B is numerically singular (condition estimate " +
                              std::to_string(cond_est) + ")");

    Eigen::ComplexEigenSolver<MatrixXcd> solver(Binv * A, want_vectors);
    if (solver.info() != Eigen::Success)
        throw numerical_error("eig_pencil: complex Schur iteration did not converge");
    Spectrum s;
    s.values = solver.eigenvalues();
    if (want_vectors) {
        s.vectors = solver.eigenvectors();
        s.residuals = pair_residuals(A, B, s.values, *s.vectors);
    }
    return s;
}

ClusterResult cluster(const Spectrum& spectrum, Complex center, double radius) {
    if (!(radius > 0.0)) throw config_error("cluster requires radius > 0");
    ClusterResult out;
    for (int i = 0; i < spectrum.values.size(); ++i) {
        if (std::abs(spectrum.values(i) - center) <= radius) {
            out.indices.push_back(i);
            out.members.push_back(spectrum.values(i));
        }
    }
    out.count = static_cast<int>(out.indices.size());
    return out;
}

double multiset_distance(const VectorXcd& a, const VectorXcd& b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    std::vector<Complex> rest(b.data(), b.data() + b.size());
    double worst = 0.0;
    for (int i = 0; i < a.size(); ++i) {
        auto it = std::min_element(rest.begin(), rest.end(), [&](Complex u, Complex v) {
            return std::abs(u - a(i)) < std::abs(v - a(i));
        });
        worst = std::max(worst, std::abs(*it - a(i)));
        rest.erase(it);
    }
    return worst;
}

} // namespace hydrospec
