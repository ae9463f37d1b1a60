#include "stark/propagation.hpp"

#include <cmath>
#include <stdexcept>

namespace stark {

namespace {
constexpr Complex kI{0.0, 1.0};

struct LanczosFactorization {
    Eigen::MatrixXcd basis;   // dim x k, orthonormal columns
    Eigen::VectorXd evals;    // eigenvalues of the k x k tridiagonal block
    Eigen::MatrixXd evecs;    // eigenvectors of the tridiagonal block (real)
    bool breakdown = false;   // invariant subspace found: propagation is exact
};

LanczosFactorization lanczos(const SpMat& h, const Eigen::VectorXcd& v0, int m) {
    const std::int64_t n = v0.size();
    Eigen::MatrixXcd v(n, m);
    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(m);
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(m > 1 ? m - 1 : 0);
    bool breakdown = false;

    v.col(0) = v0;
    Eigen::VectorXcd w = h * v.col(0);
    alpha(0) = v.col(0).dot(w).real();
    w -= alpha(0) * v.col(0);

    int k = 1;
    for (int j = 1; j < m; ++j) {
        const double b = w.norm();
        if (b < 1e-14) {
            breakdown = true;
            break;
        }
        beta(j - 1) = b;
        v.col(j) = w / b;
        // full reorthogonalization against the accumulated basis
        v.col(j) -= v.leftCols(j) * (v.leftCols(j).adjoint() * v.col(j)).eval();
        v.col(j).normalize();
        w = h * v.col(j);
        alpha(j) = v.col(j).dot(w).real();
        w -= alpha(j) * v.col(j) + beta(j - 1) * v.col(j - 1);
        k = j + 1;
    }

    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i) t(i, i) = alpha(i);
    for (int i = 0; i + 1 < k; ++i) {
        t(i, i + 1) = beta(i);
        t(i + 1, i) = beta(i);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);

    LanczosFactorization f;
    f.basis = v.leftCols(k);
    f.evals = es.eigenvalues();
    f.evecs = es.eigenvectors();
    f.breakdown = breakdown;
    return f;
}

// Coefficients of e^{-iT tau} e1 in the Lanczos basis.
Eigen::VectorXcd small_state(const LanczosFactorization& f, double tau) {
    const int k = static_cast<int>(f.evals.size());
    Eigen::VectorXcd u(k);
    for (int i = 0; i < k; ++i)
        u(i) = std::exp(-kI * f.evals(i) * tau) * f.evecs(0, i);
    return f.evecs.cast<Complex>() * u;
}

double step_error(const LanczosFactorization& f, double tau) {
    const Eigen::VectorXcd u = small_state(f, tau);
    return std::abs(u(u.size() - 1));
}
}  // namespace

EigenDecomposition dense_eig(const SparseOperator& h) {
    if (h.dim() > kDenseEigDimCeiling)
        throw std::invalid_argument("dense_eig: dimension exceeds dense ceiling");
    if (!h.is_hermitian())
        throw std::invalid_argument("dense_eig: operator is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.dense());
    if (es.info() != Eigen::Success)
        throw std::runtime_error("dense_eig: eigensolver failed");
    EigenDecomposition eig;
    eig.energies = es.eigenvalues();
    eig.vectors = es.eigenvectors();
    return eig;
}

Eigen::MatrixXcd to_eigenbasis(const EigenDecomposition& eig, const SparseOperator& a) {
    if (a.dim() != eig.dim())
        throw std::invalid_argument("to_eigenbasis: dimension mismatch");
    return eig.vectors.adjoint() * (a.matrix() * eig.vectors);
}

Eigen::MatrixXcd heisenberg_op(const EigenDecomposition& eig, const SparseOperator& a,
                               double t) {
    const std::int64_t n = eig.dim();
    Eigen::VectorXcd phase(n);
    for (std::int64_t i = 0; i < n; ++i) phase(i) = std::exp(kI * eig.energies(i) * t);
    Eigen::MatrixXcd tilde = to_eigenbasis(eig, a);
    tilde = phase.asDiagonal() * tilde * phase.conjugate().asDiagonal();
    return eig.vectors * tilde * eig.vectors.adjoint();
}

Eigen::VectorXcd evolve_state(const EigenDecomposition& eig, const Eigen::VectorXcd& psi0,
                              double t) {
    if (psi0.size() != eig.dim())
        throw std::invalid_argument("evolve_state: dimension mismatch");
    Eigen::VectorXcd c = eig.vectors.adjoint() * psi0;
    for (std::int64_t i = 0; i < eig.dim(); ++i)
        c(i) *= std::exp(-kI * eig.energies(i) * t);
    return eig.vectors * c;
}

struct KrylovPropagator::Impl {
    const SparseOperator* h;
    KrylovParams kp;
    double horizon;

    Eigen::VectorXcd psi;   // state at t_base
    double psi_norm;
    double t_base = 0.0;
    LanczosFactorization fact;
    double reach = -1.0;    // validated stride of `fact`; < 0 means no factorization

    void refactorize() {
        psi_norm = psi.norm();
        fact = lanczos(h->matrix(), psi / psi_norm, kp.m);
        double tau = std::max(horizon - t_base, kp.dt);
        if (!fact.breakdown) {
            while (tau > 1e-12 && step_error(fact, tau) > kp.tol) tau *= 0.5;
            if (tau <= 1e-12)
                throw std::runtime_error("KrylovPropagator: step collapsed below 1e-12");
        }
        reach = tau;
    }

    Eigen::VectorXcd state_at(double t) {
        return psi_norm * (fact.basis * small_state(fact, t - t_base));
    }
};

KrylovPropagator::KrylovPropagator(const SparseOperator& h, Eigen::VectorXcd psi0,
                                   double horizon, const KrylovParams& kp)
    : impl_(std::make_unique<Impl>()) {
    if (psi0.size() != h.dim())
        throw std::invalid_argument("KrylovPropagator: dimension mismatch");
    if (!h.is_hermitian())
        throw std::invalid_argument("KrylovPropagator: operator is not Hermitian");
    if (kp.m < 2 || kp.tol <= 0.0)
        throw std::invalid_argument("KrylovPropagator: bad Krylov parameters");
    impl_->h = &h;
    impl_->kp = kp;
    impl_->horizon = horizon;
    impl_->psi = std::move(psi0);
}

KrylovPropagator::~KrylovPropagator() = default;
KrylovPropagator::KrylovPropagator(KrylovPropagator&&) noexcept = default;
KrylovPropagator& KrylovPropagator::operator=(KrylovPropagator&&) noexcept = default;

Eigen::VectorXcd KrylovPropagator::advance_to(double t) {
    Impl& s = *impl_;
    if (t < s.t_base - 1e-12)
        throw std::invalid_argument("KrylovPropagator: times must be non-decreasing");
    if (t <= 1e-12 && s.reach < 0.0) return s.psi;
    if (s.reach < 0.0) s.refactorize();
    while (t > s.t_base + s.reach + 1e-12) {
        s.psi = s.state_at(s.t_base + s.reach);
        s.t_base += s.reach;
        s.refactorize();
    }
    return s.state_at(t);
}

void evolve_on_grid(const SparseOperator& h, const Eigen::VectorXcd& psi0,
                    const std::vector<double>& times, const KrylovParams& kp,
                    const std::function<void(std::size_t, const Eigen::VectorXcd&)>& emit) {
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < 0.0 || (i > 0 && times[i] < times[i - 1]))
            throw std::invalid_argument("evolve_on_grid: grid must be sorted, >= 0");
    }
    if (times.empty()) return;
    KrylovPropagator prop(h, psi0, times.back(), kp);
    for (std::size_t i = 0; i < times.size(); ++i) emit(i, prop.advance_to(times[i]));
}

Eigen::VectorXcd evolve_state(const SparseOperator& h, const Eigen::VectorXcd& psi0,
                              double t, const KrylovParams& kp) {
    if (t == 0.0) return psi0;
    Eigen::VectorXcd out;
    evolve_on_grid(h, psi0, {t},
                   kp, [&](std::size_t, const Eigen::VectorXcd& psi) { out = psi; });
    return out;
}

}  // namespace stark
