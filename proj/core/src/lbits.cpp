#include "stark/lbits.hpp"

#include <cmath>
#include <stdexcept>

namespace stark {

namespace {
double sinc(double x) { return std::abs(x) < 1e-12 ? 1.0 : std::sin(x) / x; }

void require_interior(int j, const SpaceSpec& s, const char* who) {
    if (s.spin_levels != 2)
        throw std::invalid_argument(std::string(who) + ": spin-1/2 chains only");
    if (j < 2 || j > s.n_sites - 1)
        throw std::out_of_range(std::string(who) + ": seeds exist for interior sites only");
}

// Normalized Hilbert-Schmidt weight |X|_F^2 / dim of a dense matrix.
double hs_weight(const Eigen::MatrixXcd& x) {
    return x.squaredNorm() / static_cast<double>(x.rows());
}

// Partial trace of a spin-space matrix over one site (spin-1/2 digits,
// site 1 most significant).
Eigen::MatrixXcd trace_out_site(const Eigen::MatrixXcd& m, int n_sites, int site) {
    const std::int64_t dim = m.rows();
    const std::int64_t post = std::int64_t{1} << (n_sites - site);  // place value of the digit
    const std::int64_t red = dim / 2;
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(red, red);
    for (std::int64_t a = 0; a < red; ++a) {
        const std::int64_t ahi = (a / post) * (2 * post), alo = a % post;
        for (std::int64_t b = 0; b < red; ++b) {
            const std::int64_t bhi = (b / post) * (2 * post), blo = b % post;
            r(a, b) = m(ahi + alo, bhi + blo) + m(ahi + post + alo, bhi + post + blo);
        }
    }
    return r;
}

LocalityProfile profile_of_spin_matrix(const Eigen::MatrixXcd& tau_spin, int n_sites) {
    const std::int64_t dim = tau_spin.rows();
    const double total = hs_weight(tau_spin);
    const Complex c_id = tau_spin.trace() / static_cast<double>(dim);

    LocalityProfile out;
    out.weights.assign(n_sites, 0.0);
    out.normalization = std::max(total - std::norm(c_id), 0.0);

    double sum = 0.0;
    for (int i = 1; i <= n_sites; ++i) {
        // orthogonal projection onto strings with identity at site i is
        // (1/2) I_i (x) Tr_i(tau); its weight is |Tr_i tau|_F^2 / (2 dim)
        const Eigen::MatrixXcd red = trace_out_site(tau_spin, n_sites, i);
        const double kept = red.squaredNorm() / (2.0 * static_cast<double>(dim));
        const double w = std::max(total - kept, 0.0);
        out.weights[i - 1] = w;
        sum += w;
    }
    if (sum > 0.0)
        for (double& w : out.weights) w /= sum;
    return out;
}
}  // namespace

LbitSeed build_seed(int k, int j, const ModelParams& p) {
    require_interior(j, p.spec, "build_seed");
    if (k < 1 || k > 4) throw std::invalid_argument("build_seed: k in 1..4");
    const SpaceSpec& s = p.spec;
    auto op = [&](int site, SpinOp kind) {
        return embed(site, spin_matrix(kind, 2), Factor::spin, s);
    };
    SparseOperator sp = op(j, SpinOp::Sp);
    SparseOperator zl = op(j - 1, SpinOp::Sz);
    SparseOperator zr = op(j + 1, SpinOp::Sz);

    LbitSeed seed;
    seed.k = k;
    seed.site = j;
    switch (k) {
        case 1:
            seed.op = sp - 4.0 * (zl * sp * zr);
            seed.freq = p.W * j;
            break;
        case 2:
            seed.op = zl * sp - sp * zr;
            seed.freq = p.W * j;
            break;
        case 3:
            seed.op = sp + 2.0 * (zl * sp) + 2.0 * (sp * zr) + 4.0 * (zl * sp * zr);
            seed.freq = p.W * j + p.J;
            break;
        case 4:
            seed.op = sp - 2.0 * (zl * sp) - 2.0 * (sp * zr) + 4.0 * (zl * sp * zr);
            seed.freq = p.W * j - p.J;
            break;
    }
    return seed;
}

double eigenoperator_residual(const SparseOperator& h, const SparseOperator& a,
                              double omega) {
    if (h.dim() != a.dim())
        throw std::invalid_argument("eigenoperator_residual: dimension mismatch");
    const double norm_a = a.frobenius_norm();
    if (norm_a == 0.0) return 0.0;
    return (commutator(h, a) - omega * a).frobenius_norm() / norm_a;
}

TauResult construct_tau(const Eigen::MatrixXcd& a_tilde, const Eigen::VectorXd& energies,
                        double omega, double t_horizon) {
    const std::int64_t dim = energies.size();
    if (a_tilde.rows() != dim || a_tilde.cols() != dim)
        throw std::invalid_argument("construct_tau: dimension mismatch");
    if (t_horizon <= 0.0) throw std::invalid_argument("construct_tau: T must be > 0");

    TauResult out;
    out.tau = a_tilde;
    for (std::int64_t n = 0; n < dim; ++n)
        for (std::int64_t m = 0; m < dim; ++m)
            out.tau(m, n) *= sinc((energies(m) - energies(n) - omega) * t_horizon);
    out.raw_norm = std::sqrt(hs_weight(out.tau));
    if (out.raw_norm > 0.0) out.tau /= out.raw_norm;
    return out;
}

TauResult construct_tau(const LbitSeed& seed, const EigenDecomposition& eig,
                        double t_horizon) {
    if (seed.op.dim() != eig.dim())
        throw std::invalid_argument("construct_tau: dimension mismatch");
    Eigen::MatrixXcd a_tilde = to_eigenbasis(eig, seed.op);
    return construct_tau(a_tilde, eig.energies, seed.freq, t_horizon);
}

Eigen::MatrixXcd to_original_basis(const EigenDecomposition& eig,
                                   const Eigen::MatrixXcd& m) {
    return eig.vectors * m * eig.vectors.adjoint();
}

LocalityProfile locality_profile(const Eigen::MatrixXcd& tau, const SpaceSpec& spec) {
    spec.validate();
    if (spec.spin_levels != 2)
        throw std::invalid_argument("locality_profile: spin-1/2 chains only");
    if (tau.rows() != spec.total_dim())
        throw std::invalid_argument("locality_profile: dimension mismatch");

    if (!spec.has_bosons()) return profile_of_spin_matrix(tau, spec.n_sites);

    const std::int64_t db = spec.boson_dim();
    const std::int64_t sd = spec.spin_dim();
    Eigen::MatrixXcd tau_spin = Eigen::MatrixXcd::Zero(sd, sd);
    for (std::int64_t s = 0; s < sd; ++s)
        for (std::int64_t sp = 0; sp < sd; ++sp) {
            Complex acc = 0.0;
            for (std::int64_t b = 0; b < db; ++b) acc += tau(s * db + b, sp * db + b);
            tau_spin(s, sp) = acc / static_cast<double>(db);
        }
    return profile_of_spin_matrix(tau_spin, spec.n_sites);
}

LocalityProfile locality_profile(const Eigen::MatrixXcd& tau_eigenbasis,
                                 const EigenDecomposition& eig, const SpaceSpec& spec) {
    spec.validate();
    if (spec.spin_levels != 2)
        throw std::invalid_argument("locality_profile: spin-1/2 chains only");
    if (tau_eigenbasis.rows() != eig.dim() || eig.dim() != spec.total_dim())
        throw std::invalid_argument("locality_profile: dimension mismatch");
    if (!spec.has_bosons())
        return profile_of_spin_matrix(to_original_basis(eig, tau_eigenbasis),
                                      spec.n_sites);

    // Phonon partial trace done block-by-block against U so the rotated
    // full-dimension matrix never materializes:
    // tau_spin(s,s') = (1/DB) sum_b [U (tau U^dag)]_{s DB + b, s' DB + b}.
    const std::int64_t db = spec.boson_dim();
    const std::int64_t sd = spec.spin_dim();
    Eigen::MatrixXcd tau_spin(sd, sd);
    for (std::int64_t sp = 0; sp < sd; ++sp) {
        const Eigen::MatrixXcd x =
            tau_eigenbasis * eig.vectors.middleRows(sp * db, db).adjoint();
        const Eigen::MatrixXcd z = eig.vectors * x;
        for (std::int64_t s = 0; s < sd; ++s) {
            Complex acc = 0.0;
            for (std::int64_t b = 0; b < db; ++b) acc += z(s * db + b, b);
            tau_spin(s, sp) = acc / static_cast<double>(db);
        }
    }
    return profile_of_spin_matrix(tau_spin, spec.n_sites);
}

std::array<double, 4> spin32_frequencies(const ModelParams& p, int j) {
    if (p.spec.spin_levels != 4)
        throw std::invalid_argument("spin32_frequencies: spin-3/2 parent model required");
    if (j < 2 || j > p.spec.n_sites - 1)
        throw std::out_of_range("spin32_frequencies: interior sites only");
    const double g = p.polaron_shift();
    // In the (|3/2>,|-1/2>) sector, Sz -> sigma^z + 1/2 turns H'_eff into a
    // pseudo-spin-1/2 chain with zz coupling 4J and interior field
    // 2(Wj + J - g); the seed frequencies follow the spin-1/2 pattern.
    const double base = 2.0 * (p.W * j + p.J - g);
    return {base, base, base + 4.0 * p.J, base - 4.0 * p.J};
}

}  // namespace stark
