#pragma once

#include <string>
#include <utility>
#include <vector>

#include "stark/operators.hpp"

namespace stark {

// Physical couplings in units of J with hbar = 1. Single Holstein mode per
// site: phonon energy omega0, transverse (spin-flip) coupling lambda_perp,
// longitudinal coupling lambda_par.
struct ModelParams {
    double J = 1.0;
    double Delta = 1.0;        // zz-anisotropy, default isotropic (Delta = J)
    double W = 0.0;            // tilt gradient per site
    double omega0 = 0.0;       // phonon energy
    double lambda_perp = 0.0;  // S+ a + S- a^dag coupling
    double lambda_par = 0.0;   // (a + a^dag) S^z coupling
    SpaceSpec spec;

    // Polaron shift g = lambda_par^2 / omega0 of the effective Hamiltonian.
    double polaron_shift() const;

    void validate() const;
};

// H_s = sum_j (J/2)(S+_j S-_{j+1} + S-_j S+_{j+1}) + Delta Sz_j Sz_{j+1}
//     + sum_j j W Sz_j, open boundaries.
SparseOperator build_system(const ModelParams& p);

// H_sb = sum_j omega0 n_j + lambda_perp (S+_j a_j + S-_j a_j^dag)
//      + lambda_par (a_j + a_j^dag) Sz_j. Requires boson_levels >= 2.
SparseOperator build_bath_coupling(const ModelParams& p);

// Full H = H_s + H_sb (just H_s on a phononless space).
SparseOperator build_full(const ModelParams& p);

// Tilt operator M = sum_j j W Sz_j.
SparseOperator build_tilt(const ModelParams& p);

// Effective Hamiltonian H'_eff = sum_j [J Sz_j Sz_{j+1} - g (Sz_j)^2 + W j Sz_j],
// acting on the spin factor (identity on any boson factor). Diagonal in the
// product S^z basis; for spin-1/2 the anisotropy term is a kept constant.
SparseOperator build_effective(const ModelParams& p);

// X-gate window Hamiltonian: H'_eff with the tilt switched off plus the
// logical transverse term Sigma^x(j) = A2(j) + A2^dag(j) at the working site.
SparseOperator build_effective_notilt_x(const ModelParams& p, int site);

struct ResidualReport {
    std::vector<std::pair<std::string, double>> residuals;
    double max_residual() const;
};

// Frobenius residuals of the tilt commutator identities
// [M,K] = -WK, [M,K^dag] = WK^dag, [M,H_ZZ] = 0,
// [M,h_j^perp] = jW h_j^perp, [M,h_j^perp^dag] = -jW h_j^perp^dag, [M,h_j^par] = 0.
ResidualReport verify_tilt_commutators(const ModelParams& p);

struct PolaronReport {
    double decoupling_residual;   // |P H P^dag - (omega0 sum n - g sum Sz^2)|_F
    double ground_energy;         // lowest eigenvalue of the single-site model
    double ground_energy_target;  // -g/4 for spin-1/2
};

// Displacement unitary P = exp[sum_j (lambda_par/omega0)(a_j^dag - a_j) Sz_j]
// applied to H_ZZ^sb + omega0 sum n_j; the residual against
// -g sum (Sz_j)^2 + omega0 sum n_j is truncation-limited.
PolaronReport verify_polaron_decoupling(const ModelParams& p);

struct Spin32Sector {
    SparseOperator op;  // on the 2^N pseudo-spin space
    double constant;    // scalar part, returned separately
};

// Restriction of H'_eff (spin-3/2 parent) to the per-site (|3/2>, |-1/2>)
// pair under Sz -> sigma^z + 1/2 with sigma^z the Pauli matrix. The mapping
// is exact including boundary sites; the scalar part is split off.
Spin32Sector build_spin32_sector(const ModelParams& p);

}  // namespace stark
