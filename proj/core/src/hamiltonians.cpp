#include "stark/hamiltonians.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stark {

namespace {

SparseOperator spin_at(int site, SpinOp kind, const SpaceSpec& spec) {
    return embed(site, spin_matrix(kind, spec.spin_levels), Factor::spin, spec);
}

SparseOperator boson_at(int site, BosonOp kind, const SpaceSpec& spec) {
    return embed(site, boson_matrix(kind, spec.boson_levels), Factor::boson, spec);
}

// Hopping part K = sum_j (J/2) S+_j S-_{j+1}, so that H_s = K + K^dag + H_ZZ + M.
SparseOperator build_hopping(const ModelParams& p) {
    const SpaceSpec& s = p.spec;
    SparseOperator k = SparseOperator::zero(s.total_dim());
    for (int j = 1; j < s.n_sites; ++j)
        k = k + 0.5 * p.J * (spin_at(j, SpinOp::Sp, s) * spin_at(j + 1, SpinOp::Sm, s));
    return k;
}

SparseOperator build_zz(const ModelParams& p) {
    const SpaceSpec& s = p.spec;
    SparseOperator h = SparseOperator::zero(s.total_dim());
    for (int j = 1; j < s.n_sites; ++j)
        h = h + p.Delta * (spin_at(j, SpinOp::Sz, s) * spin_at(j + 1, SpinOp::Sz, s));
    return h;
}

}  // namespace

double ModelParams::polaron_shift() const {
    if (lambda_par == 0.0) return 0.0;
    if (omega0 <= 0.0)
        throw std::invalid_argument("polaron_shift: omega0 must be positive");
    return lambda_par * lambda_par / omega0;
}

void ModelParams::validate() const {
    spec.validate();
    if (!std::isfinite(J) || !std::isfinite(Delta) || !std::isfinite(W) ||
        !std::isfinite(omega0) || !std::isfinite(lambda_perp) || !std::isfinite(lambda_par))
        throw std::invalid_argument("ModelParams: couplings must be finite");
    if (spec.has_bosons() && omega0 < 0.0)
        throw std::invalid_argument("ModelParams: omega0 must be >= 0");
    if ((lambda_perp != 0.0 || lambda_par != 0.0) && !spec.has_bosons())
        throw std::invalid_argument("ModelParams: spin-phonon coupling on phononless space");
}

SparseOperator build_system(const ModelParams& p) {
    p.validate();
    SparseOperator k = build_hopping(p);
    return k + k.adjoint() + build_zz(p) + build_tilt(p);
}

SparseOperator build_bath_coupling(const ModelParams& p) {
    p.validate();
    if (!p.spec.has_bosons())
        throw std::invalid_argument("build_bath_coupling: space has no boson factor");
    const SpaceSpec& s = p.spec;
    SparseOperator h = SparseOperator::zero(s.total_dim());
    for (int j = 1; j <= s.n_sites; ++j) {
        h = h + p.omega0 * boson_at(j, BosonOp::n, s);
        if (p.lambda_perp != 0.0) {
            SparseOperator flip =
                p.lambda_perp * (spin_at(j, SpinOp::Sp, s) * boson_at(j, BosonOp::a, s));
            h = h + flip + flip.adjoint();
        }
        if (p.lambda_par != 0.0) {
            SparseOperator disp = boson_at(j, BosonOp::a, s);
            h = h + p.lambda_par * ((disp + disp.adjoint()) * spin_at(j, SpinOp::Sz, s));
        }
    }
    return h;
}

SparseOperator build_full(const ModelParams& p) {
    p.validate();
    if (!p.spec.has_bosons()) return build_system(p);
    return build_system(p) + build_bath_coupling(p);
}

SparseOperator build_tilt(const ModelParams& p) {
    const SpaceSpec& s = p.spec;
    SparseOperator m = SparseOperator::zero(s.total_dim());
    for (int j = 1; j <= s.n_sites; ++j)
        m = m + (static_cast<double>(j) * p.W) * spin_at(j, SpinOp::Sz, s);
    return m;
}

SparseOperator build_effective(const ModelParams& p) {
    p.validate();
    const SpaceSpec& s = p.spec;
    const double g = p.polaron_shift();
    SparseOperator h = SparseOperator::zero(s.total_dim());
    for (int j = 1; j < s.n_sites; ++j)
        h = h + p.J * (spin_at(j, SpinOp::Sz, s) * spin_at(j + 1, SpinOp::Sz, s));
    for (int j = 1; j <= s.n_sites; ++j) {
        SparseOperator sz = spin_at(j, SpinOp::Sz, s);
        h = h + (-g) * (sz * sz) + (static_cast<double>(j) * p.W) * sz;
    }
    return h;
}

SparseOperator build_effective_notilt_x(const ModelParams& p, int site) {
    p.validate();
    const SpaceSpec& s = p.spec;
    if (s.spin_levels != 2)
        throw std::invalid_argument("build_effective_notilt_x: spin-1/2 chains only");
    if (site < 2 || site > s.n_sites - 1)
        throw std::out_of_range("build_effective_notilt_x: working site must be interior");
    ModelParams q = p;
    q.W = 0.0;
    // Pauli-normalized lowering A2(j) = 2 (Sz_{j-1} S+_j - S+_j Sz_{j+1})
    SparseOperator a2 =
        2.0 * (spin_at(site - 1, SpinOp::Sz, s) * spin_at(site, SpinOp::Sp, s) -
               spin_at(site, SpinOp::Sp, s) * spin_at(site + 1, SpinOp::Sz, s));
    return build_effective(q) + a2 + a2.adjoint();
}

double ResidualReport::max_residual() const {
    double m = 0.0;
    for (const auto& [name, r] : residuals) m = std::max(m, r);
    return m;
}

ResidualReport verify_tilt_commutators(const ModelParams& p) {
    p.validate();
    const SpaceSpec& s = p.spec;
    ResidualReport rep;

    auto rel = [](const SparseOperator& lhs, const SparseOperator& rhs) {
        const double scale = std::max(rhs.frobenius_norm(), 1.0);
        return (lhs - rhs).frobenius_norm() / scale;
    };

    SparseOperator m = build_tilt(p);
    SparseOperator k = build_hopping(p);
    rep.residuals.emplace_back("[M,K]+WK", rel(commutator(m, k), (-p.W) * k));
    rep.residuals.emplace_back("[M,Kdag]-WKdag",
                               rel(commutator(m, k.adjoint()), p.W * k.adjoint()));
    rep.residuals.emplace_back(
        "[M,Hzz]", rel(commutator(m, build_zz(p)), SparseOperator::zero(s.total_dim())));

    if (s.has_bosons()) {
        for (int j = 1; j <= s.n_sites; ++j) {
            SparseOperator hperp = spin_at(j, SpinOp::Sp, s) * boson_at(j, BosonOp::a, s);
            const double w = static_cast<double>(j) * p.W;
            rep.residuals.emplace_back("[M,hperp_" + std::to_string(j) + "]-jW hperp",
                                       rel(commutator(m, hperp), w * hperp));
            SparseOperator disp = boson_at(j, BosonOp::a, s);
            SparseOperator hpar = (disp + disp.adjoint()) * spin_at(j, SpinOp::Sz, s);
            rep.residuals.emplace_back("[M,hpar_" + std::to_string(j) + "]",
                                       rel(commutator(m, hpar),
                                           SparseOperator::zero(s.total_dim())));
        }
    }
    return rep;
}

PolaronReport verify_polaron_decoupling(const ModelParams& p) {
    p.validate();
    if (!p.spec.has_bosons() || p.omega0 <= 0.0)
        throw std::invalid_argument("verify_polaron_decoupling: needs omega0 > 0 and bosons");
    const SpaceSpec& s = p.spec;
    const double g = p.polaron_shift();
    const std::int64_t dim = s.total_dim();

    // Generator G = (lambda_par/omega0) sum_j (a_j^dag - a_j) Sz_j is
    // anti-Hermitian; exponentiate via the eigenbasis of iG.
    SparseOperator gop = SparseOperator::zero(dim);
    for (int j = 1; j <= s.n_sites; ++j) {
        SparseOperator ad = boson_at(j, BosonOp::adag, s);
        gop = gop + (p.lambda_par / p.omega0) *
                        ((ad - ad.adjoint()) * spin_at(j, SpinOp::Sz, s));
    }
    Eigen::MatrixXcd ig = Complex(0.0, 1.0) * gop.dense();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(ig);
    Eigen::VectorXcd phases(dim);
    for (std::int64_t i = 0; i < dim; ++i)
        phases(i) = std::exp(Complex(0.0, -es.eigenvalues()(i)));
    Eigen::MatrixXcd pmat =
        es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();

    // Longitudinal model: phonon energy plus the lambda_par coupling.
    SparseOperator h = SparseOperator::zero(dim);
    SparseOperator target = SparseOperator::zero(dim);
    for (int j = 1; j <= s.n_sites; ++j) {
        SparseOperator n = boson_at(j, BosonOp::n, s);
        SparseOperator sz = spin_at(j, SpinOp::Sz, s);
        SparseOperator disp = boson_at(j, BosonOp::a, s);
        h = h + p.omega0 * n + p.lambda_par * ((disp + disp.adjoint()) * sz);
        target = target + p.omega0 * n + (-g) * (sz * sz);
    }

    Eigen::MatrixXcd rotated = pmat * h.dense() * pmat.adjoint();
    PolaronReport rep;
    rep.decoupling_residual = (rotated - target.dense()).norm();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eh(h.dense());
    rep.ground_energy = eh.eigenvalues()(0);
    const double spin = (s.spin_levels - 1) / 2.0;
    rep.ground_energy_target = -g * spin * spin;
    return rep;
}

Spin32Sector build_spin32_sector(const ModelParams& p) {
    p.validate();
    const SpaceSpec& s = p.spec;
    if (s.spin_levels != 4 || s.has_bosons())
        throw std::invalid_argument(
            "build_spin32_sector: needs a phononless spin-3/2 chain");
    const int n = s.n_sites;
    const double g = p.polaron_shift();

    // Scalar part of the substitution m_j = sigma_j + 1/2 (sigma = +-1):
    // (N-1) J/4 - 5gN/4 + W N(N+1)/4.
    const double constant = (n - 1) * p.J / 4.0 - 5.0 * g * n / 4.0 +
                            p.W * n * (n + 1) / 4.0;

    const std::int64_t dim = std::int64_t{1} << n;
    std::vector<Eigen::Triplet<Complex, std::int64_t>> trips;
    trips.reserve(dim);
    for (std::int64_t c = 0; c < dim; ++c) {
        // bit 0 of site j (1-based, site 1 most significant) -> m = 3/2,
        // bit 1 -> m = -1/2, matching parent levels 0 and 2.
        double diag = 0.0;
        auto mval = [&](int j) {
            const int bit = static_cast<int>((c >> (n - j)) & 1);
            return bit == 0 ? 1.5 : -0.5;
        };
        for (int j = 1; j < n; ++j) diag += p.J * mval(j) * mval(j + 1);
        for (int j = 1; j <= n; ++j)
            diag += -g * mval(j) * mval(j) + p.W * j * mval(j);
        trips.emplace_back(c, c, Complex(diag - constant, 0.0));
    }
    return Spin32Sector{SparseOperator(dim, trips), constant};
}

}  // namespace stark
