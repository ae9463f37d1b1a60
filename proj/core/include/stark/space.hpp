#pragma once

#include <cstdint>
#include <vector>

namespace stark {

// Which tensor factor of a site an operator acts on.
enum class Factor { spin, boson };

// Composition of the chain Hilbert space: N sites, each carrying a spin
// level (dimension 2S+1) and optionally a truncated boson mode (dimension
// N_B, Fock states |0>..|N_B-1>). Global ordering is the spin block of all
// sites first, then the boson block: index = spin_index * N_B^N + boson_index,
// with site 1 the most significant digit within each block.
struct SpaceSpec {
    int n_sites = 1;
    int spin_levels = 2;
    int boson_levels = 0;  // 0 = phononless space

    void validate() const;

    std::int64_t spin_dim() const;
    std::int64_t boson_dim() const;  // 1 when phononless
    std::int64_t total_dim() const;

    bool has_bosons() const { return boson_levels > 0; }

    struct SiteIndices {
        std::vector<int> spin;   // length n_sites, digit of each site
        std::vector<int> boson;  // empty when phononless
    };

    std::int64_t compose(const SiteIndices& idx) const;
    SiteIndices decompose(std::int64_t index) const;
};

}  // namespace stark
