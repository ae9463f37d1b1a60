#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "stark/operators.hpp"

namespace stark {

// Refuse dense diagonalization above this dimension (memory guard).
inline constexpr std::int64_t kDenseEigDimCeiling = 20000;

// Full spectral decomposition H = U diag(E) U^dag of a Hermitian operator.
struct EigenDecomposition {
    Eigen::VectorXd energies;   // ascending
    Eigen::MatrixXcd vectors;   // columns are eigenvectors

    std::int64_t dim() const { return vectors.rows(); }
};

EigenDecomposition dense_eig(const SparseOperator& h);

// Rotate an operator into the eigenbasis: U^dag A U.
Eigen::MatrixXcd to_eigenbasis(const EigenDecomposition& eig, const SparseOperator& a);

// Heisenberg-picture operator A(t) = e^{iHt} A e^{-iHt}, assembled from the
// spectral decomposition.
Eigen::MatrixXcd heisenberg_op(const EigenDecomposition& eig, const SparseOperator& a,
                               double t);

// State evolution e^{-iHt} psi0 through the spectral decomposition.
Eigen::VectorXcd evolve_state(const EigenDecomposition& eig, const Eigen::VectorXcd& psi0,
                              double t);

// Lanczos (Krylov) propagator controls. `m` is the subspace dimension, `tol`
// the per-subspace error target on the small exponential, `dt` a nominal
// macro step used when no finer grid structure constrains the stride.
struct KrylovParams {
    int m = 30;
    double dt = 0.05;
    double tol = 1e-9;
};

// e^{-iHt} psi0 via adaptive Lanczos stepping with full reorthogonalization.
Eigen::VectorXcd evolve_state(const SparseOperator& h, const Eigen::VectorXcd& psi0,
                              double t, const KrylovParams& kp = {});

// Evolve through a sorted, non-negative time grid; `emit(i, psi)` is called
// once per grid point in order. Each Krylov subspace serves as many grid
// points as its error estimate allows before the state is advanced.
void evolve_on_grid(const SparseOperator& h, const Eigen::VectorXcd& psi0,
                    const std::vector<double>& times, const KrylovParams& kp,
                    const std::function<void(std::size_t, const Eigen::VectorXcd&)>& emit);

// Incremental Lanczos propagator: holds the current state and serves
// monotonically increasing times. A built subspace is reused for every
// request inside its validated reach, so several propagators can be
// advanced in lock step without storing whole state grids.
class KrylovPropagator {
public:
    KrylovPropagator(const SparseOperator& h, Eigen::VectorXcd psi0, double horizon,
                     const KrylovParams& kp = {});
    ~KrylovPropagator();
    KrylovPropagator(KrylovPropagator&&) noexcept;
    KrylovPropagator& operator=(KrylovPropagator&&) noexcept;

    // e^{-iHt} psi0 for t >= any previously requested time.
    Eigen::VectorXcd advance_to(double t);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace stark
