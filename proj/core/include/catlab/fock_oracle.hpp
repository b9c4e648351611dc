#pragma once

// Brute-force reference engine on spin (x) truncated number basis.
//
// Vectors are spin-major: entries [0, n_max] hold the Up block and
// [n_max + 1, 2 n_max + 1] the Down block. Nothing here calls into the
// coherent-label operators; the only shared code is program parsing.

#include <Eigen/Dense>
#include <utility>

#include "catlab/program.hpp"

namespace catlab::fock {

constexpr int kMaxTruncation = 512;

struct FockState {
    int n_max;
    Eigen::VectorXcd vec;

    Eigen::Index block_size() const noexcept { return n_max + 1; }
    auto up() const { return vec.head(block_size()); }
    auto down() const { return vec.tail(block_size()); }
};

struct TruncationReport {
    double leaked_norm;  // upper bound on the squared norm cut off by the truncation
    int n_max;
};

/// ceil(|a|^2 + 6|a| + 10) for the largest label, capped at kMaxTruncation.
int recommended_n_max(const SpinMotionState& psi);

/// Truncation large enough for every label a program can reach from `initial`.
int auto_n_max(const PulseProgram& program, const SpinMotionState& initial, double eta);

std::pair<FockState, TruncationReport> encode(const SpinMotionState& psi, int n_max);

/// <n|a> for n = 0..n_max.
Eigen::VectorXcd coherent_amplitudes(Complex alpha, int n_max);

/// Glauber displacement exp(g a^dag - conj(g) a) on the (n_max+1)-dim number basis,
/// from the closed-form Laguerre matrix elements.
Eigen::MatrixXcd displacement_matrix(Complex gamma, int n_max);

/// Full spin-motion SDK: e^{i phi} sigma_+ D[i d eta] + e^{-i phi} sigma_- D[-i d eta].
Eigen::MatrixXcd sdk_matrix(const KickParams& k, int n_max);

/// Diagonal e^{-i n theta} on both spin blocks.
Eigen::MatrixXcd evolve_matrix(double theta, int n_max);

/// Microwave rotation of area `area` and phase `phi_mu` tensored with identity.
Eigen::MatrixXcd uwave_matrix(double phi_mu, double area, int n_max);

struct OracleRun {
    FockState state;
    double norm_drift;  // | ||final||^2 - ||initial||^2 |
};

OracleRun oracle_run(const PulseProgram& program, const FockState& initial, const ExecutionContext& ctx);

/// ||Up block||^2 / ||vec||^2.
double brightness(const FockState& s);

}  // namespace catlab::fock
