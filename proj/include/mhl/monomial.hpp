#pragma once

#include "mhl/errors.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mhl {

// A basis monomial of Lambda(x_1..x_n) (x) F2[y_1..y_n]: an exterior factor
// x_S encoded as a bit mask (bit i-1 for x_i) and a y-exponent vector.
// Topological degree is |S| + 2*sum(e); the weight grading is a function of
// the monomial and is never stored.
struct Monomial {
    std::uint32_t n = 0;
    std::uint64_t xmask = 0;
    std::vector<std::uint32_t> yexp;  // length n

    bool operator==(const Monomial& o) const = default;
};

// Per-variable bit counts alpha_i and per-bit-position column sums omega_j
// of the numbers eps_i + 2*e_i. omega is trimmed to its highest nonzero
// entry; sum_j 2^j * omega_j recovers the degree.
struct WeightProfile {
    std::vector<std::uint32_t> alpha;  // length n
    std::vector<std::uint32_t> omega;  // omega_0, omega_1, ...

    std::uint32_t omega_at(std::size_t j) const {
        return j < omega.size() ? omega[j] : 0;
    }
    bool operator==(const WeightProfile& o) const = default;
};

Monomial unit_monomial(std::uint32_t n);

std::uint64_t degree(const Monomial& m);
WeightProfile weight_profile(const Monomial& m);

// nullopt when the exterior factors overlap (x_i^2 = 0).
std::optional<Monomial> multiply(const Monomial& a, const Monomial& b);

// Canonical order: exterior size ascending, then xmask ascending as an
// integer, then yexp lexicographically ascending. Bases enumerated below
// follow this order, which makes cached subspaces bit exact across runs.
bool canonical_less(const Monomial& a, const Monomial& b);

// Text form: "x{1,2} y[1,2,3]"; the unit monomial is "1".
std::string to_string(const Monomial& m);

// All monomials with |xmask| = a and sum(yexp) = b, canonically ordered.
// Count is C(n,a) * C(b+n-1, n-1).
std::vector<Monomial> enumerate_component(std::uint32_t n, std::uint32_t a, std::uint64_t b);

// An ordered degree-d slice of the algebra together with index lookup.
// For a full degree basis `components` records one contiguous block per
// exterior size a in increasing order.
struct DegreeBasis {
    struct Block {
        std::uint32_t a = 0;
        std::size_t offset = 0;
        std::size_t size = 0;
    };

    std::uint32_t n = 0;
    std::uint64_t d = 0;
    std::vector<Monomial> items;
    std::vector<Block> components;

    std::size_t size() const { return items.size(); }
    std::optional<std::size_t> index_of(const Monomial& m) const;
    const Block* block_of_exterior(std::uint32_t a) const;
};

DegreeBasis enumerate_degree(std::uint32_t n, std::uint64_t d);

// Single component Lambda^a (x) Y^{2b} as a basis of its own.
DegreeBasis component_basis(std::uint32_t n, std::uint32_t a, std::uint64_t b);

// C(n,k) saturating at UINT64_MAX, for resource checks.
std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t k);
std::uint64_t component_count_saturating(std::uint32_t n, std::uint32_t a, std::uint64_t b);
std::uint64_t degree_count_saturating(std::uint32_t n, std::uint64_t d);

// All size-a subsets of {0..n-1} as masks, ascending.
std::vector<std::uint64_t> subset_masks(std::uint32_t n, std::uint32_t a);

}  // namespace mhl
