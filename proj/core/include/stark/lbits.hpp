#pragma once

#include <array>
#include <string>
#include <vector>

#include "stark/hamiltonians.hpp"
#include "stark/propagation.hpp"

namespace stark {

// Analytic dynamical l-bit seed: a three-site eigenoperator of the adjoint
// action, [H'_eff, A_k(j)] = omega_k A_k(j). Spin-1/2 factors, identity on
// any phonon block. Interior sites only (the seeds reference j-1 and j+1).
struct LbitSeed {
    int k = 1;       // 1..4
    int site = 2;    // 1-based chain site j
    SparseOperator op;
    double freq = 0.0;  // omega_k(j) in units of J
};

// A1 = S+_j - 4 Sz_{j-1} S+_j Sz_{j+1}                      omega = Wj
// A2 = Sz_{j-1} S+_j - S+_j Sz_{j+1}                        omega = Wj
// A3 = S+_j + 2 Sz_{j-1} S+_j + 2 S+_j Sz_{j+1} + 4 Sz S+ Sz, omega = Wj + J
// A4 = S+_j - 2 Sz_{j-1} S+_j - 2 S+_j Sz_{j+1} + 4 Sz S+ Sz, omega = Wj - J
LbitSeed build_seed(int k, int j, const ModelParams& p);

// ||[H, A] - omega A||_F / ||A||_F.
double eigenoperator_residual(const SparseOperator& h, const SparseOperator& a,
                              double omega);

// Spectral-filter construction of the numerical l-bit:
// tau_mn = A_mn sinc[(E_m - E_n - omega) T] in the eigenbasis of H, then
// normalized to unit Hilbert-Schmidt norm. `raw_norm` is the HS norm of the
// filtered operator before normalization (off resonance it collapses).
struct TauResult {
    Eigen::MatrixXcd tau;  // eigenbasis of the H used for the filter
    double raw_norm = 0.0;
};

TauResult construct_tau(const LbitSeed& seed, const EigenDecomposition& eig, double t_horizon);
TauResult construct_tau(const Eigen::MatrixXcd& a_tilde, const Eigen::VectorXd& energies,
                        double omega, double t_horizon);

// Rotate an eigenbasis matrix back to the computational basis: U m U^dag.
Eigen::MatrixXcd to_original_basis(const EigenDecomposition& eig,
                                   const Eigen::MatrixXcd& m);

// Per-site weight distribution of an operator: phonon factor traced out with
// uniform weight, spin part expanded over the orthonormal product basis
// {I, sqrt2 S+, sqrt2 S-, 2 Sz}; weight of site i sums |coeff|^2 over strings
// non-identity at i, normalized so the weights sum to 1.
struct LocalityProfile {
    std::vector<double> weights;  // one per site, sums to 1
    double normalization = 0.0;   // total non-identity HS weight before scaling
    std::string method = "phonon-traced";
};

// `tau` in the computational (product) basis.
LocalityProfile locality_profile(const Eigen::MatrixXcd& tau, const SpaceSpec& spec);

// Same profile for a matrix still in the eigenbasis of `eig`; the phonon
// partial trace is done blockwise against the eigenvector matrix so the
// full-dimension operator is never rotated back.
LocalityProfile locality_profile(const Eigen::MatrixXcd& tau_eigenbasis,
                                 const EigenDecomposition& eig, const SpaceSpec& spec);

// Renormalized seed frequencies in the spin-3/2 (|3/2>,|-1/2>) sector,
// i.e. against build_spin32_sector's pseudo-spin Hamiltonian. Interior j.
std::array<double, 4> spin32_frequencies(const ModelParams& p, int j);

}  // namespace stark
