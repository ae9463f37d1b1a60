#include "stark/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace stark {

namespace {
constexpr Complex kI{0.0, 1.0};

SpMat pruned(SpMat m) {
    m.prune([](std::int64_t, std::int64_t, const Complex& v) {
        return std::abs(v) > kPruneThreshold;
    });
    m.makeCompressed();
    return m;
}
}  // namespace

Eigen::MatrixXcd spin_matrix(SpinOp kind, int spin_levels) {
    if (spin_levels < 2) throw std::invalid_argument("spin_matrix: spin_levels must be >= 2");
    const int d = spin_levels;
    const double S = (d - 1) / 2.0;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    switch (kind) {
        case SpinOp::I:
            return Eigen::MatrixXcd::Identity(d, d);
        case SpinOp::Sz:
            for (int i = 0; i < d; ++i) m(i, i) = S - i;
            return m;
        case SpinOp::Sp:
            // S+|m> = sqrt(S(S+1) - m(m+1)) |m+1>, row i holds m = S - i
            for (int col = 1; col < d; ++col) {
                const double mval = S - col;
                m(col - 1, col) = std::sqrt(S * (S + 1) - mval * (mval + 1));
            }
            return m;
        case SpinOp::Sm:
            return spin_matrix(SpinOp::Sp, d).adjoint();
        case SpinOp::Sx:
            return 0.5 * (spin_matrix(SpinOp::Sp, d) + spin_matrix(SpinOp::Sm, d));
        case SpinOp::Sy:
            return -0.5 * kI * (spin_matrix(SpinOp::Sp, d) - spin_matrix(SpinOp::Sm, d));
    }
    throw std::invalid_argument("spin_matrix: unknown kind");
}

Eigen::MatrixXcd boson_matrix(BosonOp kind, int boson_levels) {
    if (boson_levels < 1)
        throw std::invalid_argument("boson_matrix: boson_levels must be >= 1");
    const int d = boson_levels;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    switch (kind) {
        case BosonOp::I:
            return Eigen::MatrixXcd::Identity(d, d);
        case BosonOp::a:
            for (int k = 1; k < d; ++k) m(k - 1, k) = std::sqrt(static_cast<double>(k));
            return m;
        case BosonOp::adag:
            return boson_matrix(BosonOp::a, d).adjoint();
        case BosonOp::n:
            for (int k = 0; k < d; ++k) m(k, k) = k;
            return m;
    }
    throw std::invalid_argument("boson_matrix: unknown kind");
}

SparseOperator::SparseOperator(SpMat m) : mat_(pruned(std::move(m))) {}

SparseOperator::SparseOperator(
    std::int64_t dim, const std::vector<Eigen::Triplet<Complex, std::int64_t>>& triplets) {
    SpMat m(dim, dim);
    m.setFromTriplets(triplets.begin(), triplets.end());
    mat_ = pruned(std::move(m));
}

SparseOperator SparseOperator::identity(std::int64_t dim) {
    SpMat m(dim, dim);
    m.setIdentity();
    return SparseOperator(std::move(m));
}

SparseOperator SparseOperator::zero(std::int64_t dim) {
    return SparseOperator(SpMat(dim, dim));
}

bool SparseOperator::is_hermitian() const {
    if (herm_cache_ < 0) {
        SpMat diff = mat_ - SpMat(mat_.adjoint());
        double maxabs = 0.0;
        for (int64_t k = 0; k < diff.outerSize(); ++k)
            for (SpMat::InnerIterator it(diff, k); it; ++it)
                maxabs = std::max(maxabs, std::abs(it.value()));
        herm_cache_ = maxabs < kHermTolerance ? 1 : 0;
    }
    return herm_cache_ == 1;
}

SparseOperator SparseOperator::adjoint() const {
    return SparseOperator(SpMat(mat_.adjoint()));
}

Complex SparseOperator::trace() const {
    Complex t = 0.0;
    for (std::int64_t k = 0; k < mat_.outerSize(); ++k)
        for (SpMat::InnerIterator it(mat_, k); it; ++it)
            if (it.row() == it.col()) t += it.value();
    return t;
}

SparseOperator operator+(const SparseOperator& a, const SparseOperator& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("operator+: dimension mismatch");
    return SparseOperator(SpMat(a.mat_ + b.mat_));
}

SparseOperator operator-(const SparseOperator& a, const SparseOperator& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("operator-: dimension mismatch");
    return SparseOperator(SpMat(a.mat_ - b.mat_));
}

SparseOperator operator*(const SparseOperator& a, const SparseOperator& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("operator*: dimension mismatch");
    return SparseOperator(SpMat(a.mat_ * b.mat_));
}

SparseOperator operator*(Complex s, const SparseOperator& a) {
    return SparseOperator(SpMat(s * a.mat_));
}

SparseOperator operator*(double s, const SparseOperator& a) {
    return operator*(Complex(s, 0.0), a);
}

SparseOperator embed(int site, const Eigen::MatrixXcd& local_op, Factor factor,
                     const SpaceSpec& spec) {
    spec.validate();
    if (site < 1 || site > spec.n_sites) throw std::out_of_range("embed: site out of range");
    const std::int64_t d_site =
        factor == Factor::spin ? spec.spin_levels : spec.boson_levels;
    if (factor == Factor::boson && !spec.has_bosons())
        throw std::invalid_argument("embed: space has no boson factor");
    if (local_op.rows() != d_site || local_op.cols() != d_site)
        throw std::invalid_argument("embed: local operator dimension mismatch");

    // index = pre * (d_site * post) + loc * post + rest
    std::int64_t pre = 1, post = 1;
    if (factor == Factor::spin) {
        for (int k = 1; k < site; ++k) pre *= spec.spin_levels;
        for (int k = site; k < spec.n_sites; ++k) post *= spec.spin_levels;
        post *= spec.boson_dim();
    } else {
        pre = spec.spin_dim();
        for (int k = 1; k < site; ++k) pre *= spec.boson_levels;
        for (int k = site; k < spec.n_sites; ++k) post *= spec.boson_levels;
    }

    std::vector<Eigen::Triplet<Complex, std::int64_t>> trips;
    std::int64_t nnz_local = 0;
    for (std::int64_t r = 0; r < d_site; ++r)
        for (std::int64_t c = 0; c < d_site; ++c)
            if (std::abs(local_op(r, c)) > kPruneThreshold) ++nnz_local;
    trips.reserve(nnz_local * pre * post);

    for (std::int64_t r = 0; r < d_site; ++r) {
        for (std::int64_t c = 0; c < d_site; ++c) {
            const Complex v = local_op(r, c);
            if (std::abs(v) <= kPruneThreshold) continue;
            for (std::int64_t p = 0; p < pre; ++p) {
                const std::int64_t row0 = (p * d_site + r) * post;
                const std::int64_t col0 = (p * d_site + c) * post;
                for (std::int64_t q = 0; q < post; ++q)
                    trips.emplace_back(row0 + q, col0 + q, v);
            }
        }
    }
    return SparseOperator(spec.total_dim(), trips);
}

Complex hs_inner(const SparseOperator& a, const SparseOperator& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("hs_inner: dimension mismatch");
    return a.matrix().conjugate().cwiseProduct(b.matrix()).sum() /
           static_cast<double>(a.dim());
}

Complex hs_inner(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("hs_inner: dimension mismatch");
    return (a.conjugate().cwiseProduct(b)).sum() / static_cast<double>(a.rows());
}

SparseOperator commutator(const SparseOperator& a, const SparseOperator& b) {
    return a * b - b * a;
}

SparseOperator anticommutator(const SparseOperator& a, const SparseOperator& b) {
    return a * b + b * a;
}

}  // namespace stark
