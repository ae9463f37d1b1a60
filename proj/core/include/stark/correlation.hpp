#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stark/operators.hpp"
#include "stark/propagation.hpp"

namespace stark {

// Infinite-temperature fluctuation function F_QB(t) = Tr{Q(t),B}/(2 dim)
// on a uniform time grid. `samples` is filled by the typicality backend
// (one series per random vector) so callers can form error bars.
struct CorrelationSeries {
    std::vector<double> times;
    std::vector<Complex> values;
    std::string method;  // "exact" | "typicality(R=..,seed=..)"
    std::vector<std::vector<Complex>> samples;
};

// Uniform grid 0, dt, 2dt, ..., including the last point <= t_max + dt/2.
std::vector<double> uniform_grid(double dt, double t_max);

// Exact evaluation in the eigenbasis: with R_mn = Qt_mn Bt_nm / dim,
// F(t) = sum_mn R_mn e^{i(E_m - E_n)t}. One basis change per operator,
// then the whole grid costs a single matrix product.
CorrelationSeries fluctuation_exact(const SparseOperator& q, const SparseOperator& b,
                                    const EigenDecomposition& eig,
                                    const std::vector<double>& times);

// Same evaluation from operators already rotated into the eigenbasis
// (lets tau matrices built there be correlated without rotating back).
CorrelationSeries fluctuation_exact(const Eigen::MatrixXcd& q_tilde,
                                    const Eigen::MatrixXcd& b_tilde,
                                    const Eigen::VectorXd& energies,
                                    const std::vector<double>& times);

// Typicality estimate: mean over `samples` Haar-random Gaussian unit vectors
// psi of (<U psi|Q|U B psi> + <U Bdag psi|Q|U psi>)/2, each trajectory
// propagated by the Krylov engine. Deterministic for a given seed; sample
// r draws from a stream derived from (seed, r).
CorrelationSeries fluctuation_typicality(const SparseOperator& q, const SparseOperator& b,
                                         const SparseOperator& h,
                                         const std::vector<double>& times, int samples,
                                         std::uint64_t seed, const KrylovParams& kp = {});

// Standard error of the sample mean at each grid point (typicality series
// with >= 2 samples; real parts).
std::vector<double> standard_errors(const CorrelationSeries& s);

enum class Window { none, hann };

// DFT magnitude of a correlation series. Signed frequency axis
// omega_k = 2 pi k / (n dt) with bins above n/2 folded to negative.
struct SpectrumSeries {
    std::vector<double> frequencies;
    std::vector<double> magnitudes;
    std::string window;
};

SpectrumSeries spectrum(const CorrelationSeries& series, Window window = Window::none);

// Index of the largest-magnitude bin excluding DC.
std::size_t dominant_bin(const SpectrumSeries& sp);

// Shannon entropy of the normalized magnitude distribution.
double spectral_entropy(const SpectrumSeries& sp);

// Mean of |F| over the local maxima inside [begin, end) of the grid
// (falls back to the range maximum when no interior peak exists).
double envelope_amplitude(const CorrelationSeries& s, std::size_t begin, std::size_t end);

}  // namespace stark
