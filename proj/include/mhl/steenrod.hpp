#pragma once

#include "mhl/f2linalg.hpp"
#include "mhl/monomial.hpp"

#include <cstdint>
#include <vector>

namespace mhl {

// An F2 linear combination of basis monomials in one degree.
struct ElementVector {
    const DegreeBasis* basis = nullptr;
    BitVector coeffs;
};

ElementVector zero_element(const DegreeBasis& basis);
ElementVector monomial_element(const DegreeBasis& basis, const Monomial& m);

// 1 iff C(e, c) is odd (Lucas: no borrows in e - c).
inline int binom_mod2(std::uint64_t e, std::uint64_t c) {
    return (c <= e && ((c & (e - c)) == 0)) ? 1 : 0;
}

// Bockstein on a monomial, as a derivation with Q0(x_i) = y_i, Q0(y_i) = 0:
// one term per exterior factor, all distinct. Degree rises by 1.
std::vector<Monomial> q0_terms(const Monomial& m);

// Reduced power P^a on a monomial: the exterior factor is untouched and the
// y-part picks up every exponent increment c with sum(c) = a and all
// per-variable binomials odd. Degree rises by 2a; a = 0 is the identity.
std::vector<Monomial> pa_terms(std::uint64_t a, const Monomial& m);

BitVector q0_row(const Monomial& m, const DegreeBasis& target);
BitVector pa_row(std::uint64_t a, const Monomial& m, const DegreeBasis& target);
ElementVector q0(const Monomial& m, const DegreeBasis& target);
ElementVector pa(std::uint64_t a, const Monomial& m, const DegreeBasis& target);

// Echelonized span of all generator images landing in degree d: Q0 rows
// first (sources of degree d-1 in canonical order), then P^a rows by
// increasing a. Since the algebra is generated by Q0 and the P^a, this
// equals the full positive-action subspace in that degree.
Subspace hit_subspace(std::uint32_t n, std::uint64_t d, const Limits& limits = {},
                      const SubspaceStore* store = nullptr);

// Restriction of the hit subspace to the Lambda^a block, sound because Q0
// lowers exterior degree by exactly one and P^a preserves it.
Subspace hit_component_subspace(std::uint32_t n, std::uint64_t d, std::uint32_t a,
                                const Limits& limits = {},
                                const SubspaceStore* store = nullptr);

// Membership of u in the hit subspace of its degree. Elements supported in a
// single exterior block are tested against the block subspace.
bool is_hit(std::uint32_t n, std::uint64_t d, const ElementVector& u,
            const Limits& limits = {}, const SubspaceStore* store = nullptr);

// Span of reduced-power images inside the pure-y part of even degree D.
// This is only the P-action: Q0 images are deliberately excluded, because
// the y-variables with the P-action mirror the classical polynomial algebra
// with the full Steenrod action.
Subspace y_hit_subspace(std::uint32_t n, std::uint64_t D, const Limits& limits = {});

// Dimension of the classical hit quotient QP_n^d computed on the y-side:
// pure-y monomials of degree 2d modulo reduced-power images.
std::uint64_t classical_hit_quotient_dim(std::uint32_t n, std::uint64_t d,
                                         const Limits& limits = {});

// Cache keys for the persisted subspaces.
std::string hit_cache_name(std::uint32_t n, std::uint64_t d);
std::string hit_cache_name(std::uint32_t n, std::uint64_t d, std::uint32_t a);

}  // namespace mhl
