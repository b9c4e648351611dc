#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "catlab/error.hpp"
#include "catlab/quadrature.hpp"

using namespace catlab;

namespace {

// Golub-Welsch: nodes are eigenvalues of the Jacobi matrix of the Hermite
// recurrence, weights sqrt(pi) times the squared first eigenvector components.
QuadratureRule golub_welsch(int n) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) j(k - 1, k) = j(k, k - 1) = std::sqrt(k / 2.0);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
    QuadratureRule r;
    for (int k = 0; k < n; ++k) {
        r.nodes.push_back(es.eigenvalues()(k));
        r.weights.push_back(std::sqrt(std::numbers::pi) * es.eigenvectors()(0, k) * es.eigenvectors()(0, k));
    }
    return r;
}

// Integral of x^k e^{-x^2} over the real line.
double moment(int k) { return k % 2 == 1 ? 0.0 : std::tgamma((k + 1) / 2.0); }

}  // namespace

TEST(GaussHermite, RejectsZeroNodes) {
    EXPECT_THROW(gauss_hermite(0), InvalidArgument);
    EXPECT_THROW(gauss_hermite(-3), InvalidArgument);
}

TEST(GaussHermite, SingleNode) {
    const auto r = gauss_hermite(1);
    ASSERT_EQ(r.nodes.size(), 1u);
    EXPECT_NEAR(r.nodes[0], 0.0, 1e-15);
    EXPECT_NEAR(r.weights[0], std::sqrt(std::numbers::pi), 1e-14);
}

TEST(GaussHermite, MatchesGolubWelsch) {
    for (int n : {2, 3, 5, 8, 13, 24, 48, 96}) {
        const auto r = gauss_hermite(n);
        const auto ref = golub_welsch(n);
        ASSERT_EQ(r.nodes.size(), static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            EXPECT_NEAR(r.nodes[k], ref.nodes[k], 1e-11 * std::max(1.0, std::abs(ref.nodes[k]))) << n << " " << k;
            EXPECT_NEAR(r.weights[k], ref.weights[k], 1e-11 * std::max(1e-3, ref.weights[k])) << n << " " << k;
        }
    }
}

TEST(GaussHermite, AscendingAndSymmetric) {
    for (int n = 1; n <= 64; ++n) {
        const auto r = gauss_hermite(n);
        EXPECT_TRUE(std::is_sorted(r.nodes.begin(), r.nodes.end())) << n;
        for (int k = 0; k < n; ++k) {
            EXPECT_NEAR(r.nodes[k], -r.nodes[n - 1 - k], 1e-13) << n;
            EXPECT_NEAR(r.weights[k], r.weights[n - 1 - k], 1e-15) << n;
            EXPECT_GT(r.weights[k], 0.0);
        }
    }
}

TEST(GaussHermite, WeightsSumToSqrtPi) {
    for (int n : {1, 2, 7, 24, 48, 100}) {
        const auto r = gauss_hermite(n);
        double s = 0.0;
        for (double w : r.weights) s += w;
        EXPECT_NEAR(s, std::sqrt(std::numbers::pi), 1e-13) << n;
    }
}

// An n-point rule integrates every polynomial of degree < 2n exactly.
TEST(GaussHermite, ExactOnMoments) {
    for (int n : {3, 6, 12, 24}) {
        const auto r = gauss_hermite(n);
        for (int k = 0; k < 2 * n && k <= 30; ++k) {
            double s = 0.0;
            double scale = 0.0;  // odd moments cancel between large terms
            for (int i = 0; i < n; ++i) {
                s += r.weights[i] * std::pow(r.nodes[i], k);
                scale += r.weights[i] * std::abs(std::pow(r.nodes[i], k));
            }
            EXPECT_NEAR(s, moment(k), 1e-12 * std::max(1.0, scale)) << "n=" << n << " k=" << k;
        }
    }
}

TEST(GaussHermite, GaussianCharacteristicFunction) {
    // Integral of cos(t x) e^{-x^2} = sqrt(pi) e^{-t^2/4}.
    const auto r = gauss_hermite(24);
    for (double t : {0.0, 0.5, 1.0, 2.0, 3.0}) {
        double s = 0.0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::cos(t * r.nodes[i]);
        EXPECT_NEAR(s, std::sqrt(std::numbers::pi) * std::exp(-t * t / 4), 1e-13) << t;
    }
}
