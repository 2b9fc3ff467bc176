#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "hydrospec/errors.hpp"
#include "hydrospec/profiles.hpp"

namespace hydrospec {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

struct SpectrumMeta {
    int N = 0;
    double eps = 0.0;
    double tau = 0.0;
    double alpha = 0.0;
};

// Dense non-Hermitian spectrum with per-pair residuals ||A v - lambda B v|| / ||v||
// (B = I for the standard problem) when eigenvectors were requested.
struct Spectrum {
    VectorXcd values;
    std::optional<MatrixXcd> vectors; // columns aligned with `values`
    VectorXd residuals;               // empty unless vectors were requested
    SpectrumMeta meta;
};

Spectrum eig(const MatrixXcd& M, bool want_vectors = false);

// Generalized problem via reduction to eig(B^{-1} A); fails with a condition
// estimate when B is numerically singular.
Spectrum eig_pencil(const MatrixXcd& A, const MatrixXcd& B, bool want_vectors = false);

struct ClusterResult {
    int count = 0;
    std::vector<int> indices; // positions into the spectrum
    std::vector<Complex> members;
};

// Eigenvalues within `radius` of `center`; the count is the multiplicity estimate.
ClusterResult cluster(const Spectrum& spectrum, Complex center, double radius);

// Greedy nearest pairing between two eigenvalue multisets.  Returns the max
// pairing distance, or +inf when sizes differ.
double multiset_distance(const VectorXcd& a, const VectorXcd& b);

} // namespace hydrospec
