#pragma once

#include "mhl/f2linalg.hpp"
#include "mhl/monomial.hpp"
#include "mhl/rng.hpp"
#include "mhl/steenrod.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace mhl {

// A monotone injection {1..k} -> {1..n}, identified with its image, a
// k-subset listed in increasing order.
struct MonotoneInjection {
    std::uint32_t n = 0;
    std::uint32_t k = 0;
    std::vector<std::uint32_t> image;  // 1-based, strictly increasing

    std::uint64_t mask() const;  // bit i-1 per element i
    std::string to_string() const;

    bool operator==(const MonotoneInjection& o) const = default;
};

// All k-subsets of {1..n} in lexicographic order on the sorted tuples.
std::vector<MonotoneInjection> mono_injections(std::uint32_t n, std::uint32_t k);

// The distinguished monomial x_1..x_k * prod_{j<=k} y_j^{2^k - 2^{k-j} - 1}
// * prod_{j>k} y_j^{2^k - 1}, of degree (n-1)(2^{k+1}-2) + k.
Monomial zk(std::uint32_t n, std::uint32_t k);

// Relabelled copy of zk along sigma: the x-factor sits on im(sigma),
// position sigma(j) carries the exponent of y_j, and indices outside the
// image carry 2^k - 1. Same degree and weight profile as zk.
Monomial translate_zk(std::uint32_t n, std::uint32_t k, const MonotoneInjection& sigma);

// The subspace G of the pure-y part in degree D: reduced-power images
// together with all monomials whose (omega_1..omega_k) is lexicographically
// below (n-1, ..., n-1).
Subspace gn_subspace(std::uint32_t n, std::uint32_t k, std::uint64_t D,
                     const Limits& limits = {});

// Everything fixed by a choice of (n, k) at the distinguished degree
// d = k + 2*d1, d1 = (n-1)(2^k - 1): the bases, the tensored G rows, the
// M0/M1 split of the quotient, and the projection matrix theta onto the
// span of the translates.
struct TopLayerContext {
    std::uint32_t n = 0, k = 0;
    std::uint64_t d1 = 0, d = 0;
    std::size_t N = 0;  // C(n,k), dimension of the target of theta

    DegreeBasis full;  // degree-d basis
    DegreeBasis comp;  // Lambda^k (x) Y^{2 d1} block
    std::size_t comp_offset = 0;

    std::vector<MonotoneInjection> sigmas;
    std::unordered_map<std::uint64_t, std::size_t> sigma_index;  // image mask -> slot

    Subspace gn;                  // tensored G rows in component coordinates
    std::vector<std::size_t> m1;  // component indices of the translates
    std::vector<std::size_t> m0;  // component indices completing the quotient basis
    std::size_t quotient_dim = 0;

    // theta on each component basis monomial; zero off the component.
    std::vector<BitVector> theta_cols;
};

// Builds the context and verifies the direct-sum decomposition; throws
// DecompositionFailure rather than re-choosing a complement, because theta
// depends on the complement.
TopLayerContext build_context(std::uint32_t n, std::uint32_t k, const Limits& limits = {});

// theta on an element of the full degree-d space; length-N output.
BitVector theta(const TopLayerContext& ctx, const ElementVector& u);
// theta of a sum of degree-d monomials (terms off the component contribute 0).
BitVector theta_of_terms(const TopLayerContext& ctx, const std::vector<Monomial>& terms);

// Parity functional on the translate coordinates.
int epsilon(const TopLayerContext& ctx, const BitVector& v);

// Image of theta over all hit generators landing in degree d. Only rows
// meeting the Lambda^k block are applied; everything else dies under the
// component projection.
Subspace theta_hit_image(const TopLayerContext& ctx, const Limits& limits = {});

// Sum of translates over S, as an element of the full degree-d space.
ElementVector translate_sum(const TopLayerContext& ctx,
                            const std::vector<std::size_t>& sigma_slots);

// is_hit on a sum of translates; callers assert false for odd |S|.
bool odd_parity_nonhit_check(const TopLayerContext& ctx,
                             const std::vector<std::size_t>& sigma_slots,
                             const Limits& limits = {},
                             const SubspaceStore* store = nullptr);

// One verifier outcome; `details` uses stable keys. Elapsed time is kept
// out of the JSON so identical runs serialize identically.
struct VerificationReport {
    std::string check;
    bool passed = false;
    nlohmann::json details;
    double elapsed_ms = 0.0;

    nlohmann::json to_json() const;
};

nlohmann::json context_summary(const TopLayerContext& ctx);

// theta(hit) == ker(epsilon): subspace equality, odd-parity non-hit
// witnesses, and constructive realization of each even basis vector.
VerificationReport verify_parity_theorem(const TopLayerContext& ctx, Rng& rng,
                                         const Limits& limits = {},
                                         const SubspaceStore* store = nullptr);

// Every theta(Q0(z)) has even parity, their span is the whole even
// hyperplane, and a witness monomial mapping onto the explicit adjacent
// pair of translates is searched for and reported.
VerificationReport verify_q0_edge_structure(const TopLayerContext& ctx,
                                            const Limits& limits = {});

// theta annihilates every reduced-power image, exhaustively over all a >= 1
// and all source monomials of degree d - 2a.
VerificationReport verify_reduced_power_vanishing(const TopLayerContext& ctx,
                                                  const Limits& limits = {});

// Closure of the explicit pair under adjacent transpositions covers every
// pair of k-subsets differing in one element, and the graph is connected.
VerificationReport johnson_orbit_check(std::uint32_t n, std::uint32_t k);

// theta commutes with the variable permutation action.
VerificationReport s_n_equivariance_check(const TopLayerContext& ctx, std::size_t trials,
                                          Rng& rng);

}  // namespace mhl
