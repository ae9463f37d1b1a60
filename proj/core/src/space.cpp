#include "stark/space.hpp"

#include <stdexcept>

namespace stark {

namespace {
std::int64_t ipow(std::int64_t base, int exp) {
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}
}  // namespace

void SpaceSpec::validate() const {
    if (n_sites < 1) throw std::invalid_argument("SpaceSpec: n_sites must be >= 1");
    if (spin_levels < 2) throw std::invalid_argument("SpaceSpec: spin_levels must be >= 2");
    if (boson_levels < 0) throw std::invalid_argument("SpaceSpec: boson_levels must be >= 0");
}

std::int64_t SpaceSpec::spin_dim() const { return ipow(spin_levels, n_sites); }

std::int64_t SpaceSpec::boson_dim() const {
    return boson_levels > 0 ? ipow(boson_levels, n_sites) : 1;
}

std::int64_t SpaceSpec::total_dim() const { return spin_dim() * boson_dim(); }

std::int64_t SpaceSpec::compose(const SiteIndices& idx) const {
    if (static_cast<int>(idx.spin.size()) != n_sites)
        throw std::invalid_argument("compose: wrong number of spin digits");
    std::int64_t s = 0;
    for (int j = 0; j < n_sites; ++j) {
        if (idx.spin[j] < 0 || idx.spin[j] >= spin_levels)
            throw std::out_of_range("compose: spin digit out of range");
        s = s * spin_levels + idx.spin[j];
    }
    if (!has_bosons()) {
        if (!idx.boson.empty()) throw std::invalid_argument("compose: boson digits on phononless space");
        return s;
    }
    if (static_cast<int>(idx.boson.size()) != n_sites)
        throw std::invalid_argument("compose: wrong number of boson digits");
    std::int64_t b = 0;
    for (int j = 0; j < n_sites; ++j) {
        if (idx.boson[j] < 0 || idx.boson[j] >= boson_levels)
            throw std::out_of_range("compose: boson digit out of range");
        b = b * boson_levels + idx.boson[j];
    }
    return s * boson_dim() + b;
}

SpaceSpec::SiteIndices SpaceSpec::decompose(std::int64_t index) const {
    if (index < 0 || index >= total_dim()) throw std::out_of_range("decompose: index out of range");
    SiteIndices out;
    out.spin.resize(n_sites);
    std::int64_t s = index, b = 0;
    if (has_bosons()) {
        b = index % boson_dim();
        s = index / boson_dim();
        out.boson.resize(n_sites);
        for (int j = n_sites - 1; j >= 0; --j) {
            out.boson[j] = static_cast<int>(b % boson_levels);
            b /= boson_levels;
        }
        b = index % boson_dim();
    }
    for (int j = n_sites - 1; j >= 0; --j) {
        out.spin[j] = static_cast<int>(s % spin_levels);
        s /= spin_levels;
    }
    return out;
}

}  // namespace stark
