#pragma once

#include <complex>
#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "stark/space.hpp"

namespace stark {

using Complex = std::complex<double>;
using SpMat = Eigen::SparseMatrix<Complex, Eigen::RowMajor, std::int64_t>;

// Entries smaller than this are dropped on construction.
inline constexpr double kPruneThreshold = 1e-15;

// Hermiticity check tolerance (entrywise max |A - A^dag|).
inline constexpr double kHermTolerance = 1e-12;

enum class SpinOp { Sx, Sy, Sz, Sp, Sm, I };
enum class BosonOp { a, adag, n, I };

// Spin matrices in the S^z eigenbasis ordered m = +S down to -S.
Eigen::MatrixXcd spin_matrix(SpinOp kind, int spin_levels);

// Truncated Fock-space ladder operators, basis |0>..|N_B-1>.
Eigen::MatrixXcd boson_matrix(BosonOp kind, int boson_levels);

// Sparse complex operator on the full chain space, the currency every
// module trades in. Immutable after construction; the hermiticity flag is
// computed lazily and cached.
class SparseOperator {
public:
    SparseOperator() = default;
    explicit SparseOperator(SpMat m);
    SparseOperator(std::int64_t dim,
                   const std::vector<Eigen::Triplet<Complex, std::int64_t>>& triplets);

    static SparseOperator identity(std::int64_t dim);
    static SparseOperator zero(std::int64_t dim);

    std::int64_t dim() const { return mat_.rows(); }
    std::int64_t nonzeros() const { return mat_.nonZeros(); }
    const SpMat& matrix() const { return mat_; }

    bool is_hermitian() const;

    SparseOperator adjoint() const;
    double frobenius_norm() const { return mat_.norm(); }
    Complex trace() const;

    Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(mat_); }
    Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const { return mat_ * v; }

    friend SparseOperator operator+(const SparseOperator& a, const SparseOperator& b);
    friend SparseOperator operator-(const SparseOperator& a, const SparseOperator& b);
    friend SparseOperator operator*(const SparseOperator& a, const SparseOperator& b);
    friend SparseOperator operator*(Complex s, const SparseOperator& a);
    friend SparseOperator operator*(double s, const SparseOperator& a);

private:
    SpMat mat_;
    mutable int herm_cache_ = -1;  // -1 unknown, 0 no, 1 yes
};

// Tensor-product lift of a single-site operator: identity everywhere except
// `site` (1-based) on the chosen factor.
SparseOperator embed(int site, const Eigen::MatrixXcd& local_op, Factor factor,
                     const SpaceSpec& spec);

// Normalized Hilbert-Schmidt inner product Tr(A^dag B) / dim.
Complex hs_inner(const SparseOperator& a, const SparseOperator& b);
Complex hs_inner(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

SparseOperator commutator(const SparseOperator& a, const SparseOperator& b);
SparseOperator anticommutator(const SparseOperator& a, const SparseOperator& b);

}  // namespace stark
