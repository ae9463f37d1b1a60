#include "stark/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace stark {

namespace {
constexpr Complex kI{0.0, 1.0};

// SplitMix64 step; used to derive independent per-sample RNG streams.
std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Eigen::VectorXcd haar_gaussian(std::int64_t dim, std::uint64_t stream) {
    std::mt19937_64 rng(stream);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXcd psi(dim);
    for (std::int64_t i = 0; i < dim; ++i) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        psi(i) = Complex(re, im);
    }
    psi.normalize();
    return psi;
}

void check_grid(const std::vector<double>& times) {
    if (times.empty()) throw std::invalid_argument("correlation: empty time grid");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (times[i] <= times[i - 1])
            throw std::invalid_argument("correlation: times must be strictly increasing");
}
}  // namespace

std::vector<double> uniform_grid(double dt, double t_max) {
    if (dt <= 0.0 || t_max < 0.0)
        throw std::invalid_argument("uniform_grid: need dt > 0 and t_max >= 0");
    const auto n = static_cast<std::size_t>(std::llround(t_max / dt));
    std::vector<double> t(n + 1);
    for (std::size_t i = 0; i <= n; ++i) t[i] = static_cast<double>(i) * dt;
    return t;
}

CorrelationSeries fluctuation_exact(const Eigen::MatrixXcd& q_tilde,
                                    const Eigen::MatrixXcd& b_tilde,
                                    const Eigen::VectorXd& energies,
                                    const std::vector<double>& times) {
    const std::int64_t dim = energies.size();
    if (q_tilde.rows() != dim || q_tilde.cols() != dim || b_tilde.rows() != dim ||
        b_tilde.cols() != dim)
        throw std::invalid_argument("fluctuation_exact: dimension mismatch");
    check_grid(times);

    // R_mn = Qt_mn Bt_nm / dim carries all the weight; the time dependence
    // is a pure phase factor e^{i(E_m - E_n) t}.
    Eigen::MatrixXcd r = q_tilde.cwiseProduct(b_tilde.transpose()) /
                         static_cast<double>(dim);

    CorrelationSeries out;
    out.times = times;
    out.values.resize(times.size());
    out.method = "exact";

    // Chunk the grid so the phase matrices stay small next to R itself.
    const std::size_t chunk = 256;
    Eigen::MatrixXcd wmat(dim, std::min(chunk, times.size()));
    for (std::size_t k0 = 0; k0 < times.size(); k0 += chunk) {
        const std::size_t nk = std::min(chunk, times.size() - k0);
        for (std::size_t k = 0; k < nk; ++k)
            for (std::int64_t n = 0; n < dim; ++n)
                wmat(n, k) = std::exp(-kI * energies(n) * times[k0 + k]);
        Eigen::MatrixXcd c = r * wmat.leftCols(nk);
        for (std::size_t k = 0; k < nk; ++k) {
            Complex f = 0.0;
            for (std::int64_t m = 0; m < dim; ++m)
                f += std::exp(kI * energies(m) * times[k0 + k]) * c(m, k);
            out.values[k0 + k] = f;
        }
    }
    return out;
}

CorrelationSeries fluctuation_exact(const SparseOperator& q, const SparseOperator& b,
                                    const EigenDecomposition& eig,
                                    const std::vector<double>& times) {
    if (q.dim() != eig.dim() || b.dim() != eig.dim())
        throw std::invalid_argument("fluctuation_exact: dimension mismatch");
    Eigen::MatrixXcd qt = to_eigenbasis(eig, q);
    Eigen::MatrixXcd bt = to_eigenbasis(eig, b);
    return fluctuation_exact(qt, bt, eig.energies, times);
}

CorrelationSeries fluctuation_typicality(const SparseOperator& q, const SparseOperator& b,
                                         const SparseOperator& h,
                                         const std::vector<double>& times, int samples,
                                         std::uint64_t seed, const KrylovParams& kp) {
    if (q.dim() != h.dim() || b.dim() != h.dim())
        throw std::invalid_argument("fluctuation_typicality: dimension mismatch");
    if (samples < 1) throw std::invalid_argument("fluctuation_typicality: samples >= 1");
    check_grid(times);

    const std::int64_t dim = h.dim();
    const bool b_hermitian = b.is_hermitian();
    const double horizon = times.back();

    CorrelationSeries out;
    out.times = times;
    out.method = "typicality(R=" + std::to_string(samples) +
                 ",seed=" + std::to_string(seed) + ")";
    out.values.assign(times.size(), Complex(0.0, 0.0));
    out.samples.assign(samples, std::vector<Complex>(times.size()));

    for (int r = 0; r < samples; ++r) {
        const std::uint64_t stream =
            splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(r) + 1));
        Eigen::VectorXcd psi = haar_gaussian(dim, stream);

        KrylovPropagator p1(h, psi, horizon, kp);
        KrylovPropagator p2(h, b.apply(psi), horizon, kp);
        std::unique_ptr<KrylovPropagator> p3;
        if (!b_hermitian)
            p3 = std::make_unique<KrylovPropagator>(h, b.adjoint().apply(psi), horizon, kp);

        for (std::size_t k = 0; k < times.size(); ++k) {
            const Eigen::VectorXcd v1 = p1.advance_to(times[k]);
            const Eigen::VectorXcd v2 = p2.advance_to(times[k]);
            const Eigen::VectorXcd v3 = b_hermitian ? v2 : p3->advance_to(times[k]);
            // (<v1|Q|v2> + <v3|Q|v1>)/2 estimates Tr(Q(t)B + B Q(t)) / (2 dim)
            const Complex val = 0.5 * (v1.dot(q.apply(v2)) + v3.dot(q.apply(v1)));
            out.samples[r][k] = val;
            out.values[k] += val;
        }
    }
    for (auto& v : out.values) v /= static_cast<double>(samples);
    return out;
}

std::vector<double> standard_errors(const CorrelationSeries& s) {
    const std::size_t r = s.samples.size();
    if (r < 2) throw std::invalid_argument("standard_errors: needs >= 2 samples");
    std::vector<double> se(s.times.size(), 0.0);
    for (std::size_t k = 0; k < s.times.size(); ++k) {
        double mean = 0.0;
        for (std::size_t i = 0; i < r; ++i) mean += s.samples[i][k].real();
        mean /= static_cast<double>(r);
        double var = 0.0;
        for (std::size_t i = 0; i < r; ++i) {
            const double d = s.samples[i][k].real() - mean;
            var += d * d;
        }
        var /= static_cast<double>(r - 1);
        se[k] = std::sqrt(var / static_cast<double>(r));
    }
    return se;
}

SpectrumSeries spectrum(const CorrelationSeries& series, Window window) {
    check_grid(series.times);
    const std::size_t n = series.times.size();
    if (n < 2) throw std::invalid_argument("spectrum: need at least two samples");
    const double dt = series.times[1] - series.times[0];
    for (std::size_t i = 1; i < n; ++i)
        if (std::abs(series.times[i] - series.times[i - 1] - dt) > 1e-9 * std::max(dt, 1.0))
            throw std::invalid_argument("spectrum: non-uniform time grid");

    std::vector<Complex> x(n);
    for (std::size_t j = 0; j < n; ++j) {
        double w = 1.0;
        if (window == Window::hann)
            w = 0.5 * (1.0 - std::cos(2.0 * M_PI * static_cast<double>(j) /
                                      static_cast<double>(n - 1)));
        x[j] = w * series.values[j];
    }

    SpectrumSeries sp;
    sp.window = window == Window::hann ? "hann" : "none";
    sp.frequencies.resize(n);
    sp.magnitudes.resize(n);
    const double domega = 2.0 * M_PI / (static_cast<double>(n) * dt);
    for (std::size_t k = 0; k < n; ++k) {
        Complex acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double phase = -2.0 * M_PI * static_cast<double>(j) *
                                 static_cast<double>(k) / static_cast<double>(n);
            acc += x[j] * Complex(std::cos(phase), std::sin(phase));
        }
        const double kk = k <= n / 2 ? static_cast<double>(k)
                                     : static_cast<double>(k) - static_cast<double>(n);
        sp.frequencies[k] = kk * domega;
        sp.magnitudes[k] = std::abs(acc) / static_cast<double>(n);
    }
    return sp;
}

std::size_t dominant_bin(const SpectrumSeries& sp) {
    if (sp.magnitudes.size() < 2)
        throw std::invalid_argument("dominant_bin: spectrum too short");
    std::size_t best = 1;
    for (std::size_t k = 2; k < sp.magnitudes.size(); ++k)
        if (sp.magnitudes[k] > sp.magnitudes[best]) best = k;
    return best;
}

double spectral_entropy(const SpectrumSeries& sp) {
    double total = 0.0;
    for (double m : sp.magnitudes) total += m;
    if (total <= 0.0) return 0.0;
    double h = 0.0;
    for (double m : sp.magnitudes) {
        if (m <= 0.0) continue;
        const double p = m / total;
        h -= p * std::log(p);
    }
    return h;
}

double envelope_amplitude(const CorrelationSeries& s, std::size_t begin, std::size_t end) {
    end = std::min(end, s.values.size());
    if (begin + 1 >= end) throw std::invalid_argument("envelope_amplitude: empty range");
    double acc = 0.0;
    std::size_t count = 0;
    double range_max = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
        const double a = std::abs(s.values[i]);
        range_max = std::max(range_max, a);
        if (i == 0 || i + 1 >= s.values.size()) continue;
        if (i > begin && i + 1 < end) {
            const double prev = std::abs(s.values[i - 1]);
            const double next = std::abs(s.values[i + 1]);
            if (a >= prev && a > next) {
                acc += a;
                ++count;
            }
        }
    }
    return count > 0 ? acc / static_cast<double>(count) : range_max;
}

}  // namespace stark
