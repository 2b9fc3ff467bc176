#include <doctest.h>

#include <cmath>

#include "hydrospec/eigs.hpp"

using namespace hydrospec;

TEST_CASE("eig on reference matrices") {
    {
        const Spectrum s = eig(MatrixXcd::Identity(5, 5), true);
        for (int i = 0; i < 5; ++i) CHECK(std::abs(s.values(i) - Complex(1.0)) < 1e-14);
        CHECK(s.residuals.maxCoeff() < 1e-8 * 1.0);
    }
    {
        VectorXcd d(3);
        d << 1.0, 2.0, 3.0;
        const Spectrum s = eig(MatrixXcd(d.asDiagonal()), true);
        VectorXcd want(3);
        want << 1.0, 2.0, 3.0;
        CHECK(multiset_distance(s.values, want) < 1e-14);
    }
    {
        // Companion matrix of z^2 + 1.
        MatrixXcd C = MatrixXcd::Zero(2, 2);
        C(0, 1) = -1.0;
        C(1, 0) = 1.0;
        const Spectrum s = eig(C, true);
        VectorXcd want(2);
        want << Complex(0.0, 1.0), Complex(0.0, -1.0);
        CHECK(multiset_distance(s.values, want) < 1e-14);
        CHECK(s.residuals.maxCoeff() < 1e-8 * C.norm());
    }
}

TEST_CASE("eig input validation") {
    CHECK_THROWS_AS(eig(MatrixXcd::Zero(2, 3)), config_error);
    MatrixXcd bad = MatrixXcd::Zero(2, 2);
    bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(eig(bad), numerical_error);
}

TEST_CASE("eig_pencil on reference pencils") {
    {
        VectorXcd da(2), db(2);
        da << 2.0, 4.0;
        db << 1.0, 2.0;
        const Spectrum s = eig_pencil(MatrixXcd(da.asDiagonal()), MatrixXcd(db.asDiagonal()), true);
        CHECK(std::abs(s.values(0) - Complex(2.0)) < 1e-14);
        CHECK(std::abs(s.values(1) - Complex(2.0)) < 1e-14);
        CHECK(s.residuals.maxCoeff() < 1e-8 * 4.0);
    }
    {
        MatrixXcd A(3, 3);
        A << Complex(1, 2), Complex(0, 1), Complex(3, 0), Complex(0, -1), Complex(2, 0),
            Complex(1, 1), Complex(0.5, 0), Complex(0, 0.5), Complex(-1, 1);
        const Spectrum via_pencil = eig_pencil(A, MatrixXcd::Identity(3, 3));
        const Spectrum direct = eig(A);
        CHECK(multiset_distance(via_pencil.values, direct.values) < 1e-10);
    }
}

TEST_CASE("eig_pencil rejects singular B with a condition estimate") {
    const MatrixXcd A = MatrixXcd::Identity(3, 3);
    MatrixXcd B = MatrixXcd::Zero(3, 3);
    B(0, 0) = 1.0;
    B(1, 1) = 1.0; // rank 2
    CHECK_THROWS_AS(eig_pencil(A, B), numerical_error);
}

TEST_CASE("cluster counts members in a disk") {
    Spectrum s;
    s.values.resize(3);
    s.values << Complex(0.0), Complex(1.0), Complex(2.0);
    CHECK(cluster(s, Complex(0.0), 0.5).count == 1);
    CHECK(cluster(s, Complex(10.0), 0.5).count == 0);

    Spectrum empty;
    empty.values.resize(0);
    CHECK(cluster(empty, Complex(0.0), 0.5).count == 0);
    CHECK_THROWS_AS(cluster(s, Complex(0.0), 0.0), config_error);
}
