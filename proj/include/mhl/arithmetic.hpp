#pragma once

#include "mhl/errors.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mhl {

// Arbitrary-size natural number held as 64-bit words, least significant
// first, no trailing zero words. Supports exactly what the degree formulas
// need: add, subtract, shift, small-scalar multiply, compare, popcount.
class BitNat {
  public:
    BitNat() = default;

    static BitNat from_u64(std::uint64_t v);
    static BitNat pow2(std::uint64_t e);
    static BitNat from_decimal(std::string_view text);

    bool is_zero() const { return w_.empty(); }
    std::uint64_t bit_length() const;
    std::uint64_t popcount() const;
    bool bit(std::uint64_t i) const;

    BitNat& add(const BitNat& o);
    BitNat& add_u64(std::uint64_t v);
    BitNat& sub(const BitNat& o);  // InvalidArgs when the result would be negative
    BitNat& sub_u64(std::uint64_t v);
    BitNat& shl(std::uint64_t bits);
    BitNat& mul_u64(std::uint64_t v);

    static int cmp(const BitNat& a, const BitNat& b);
    bool operator==(const BitNat& o) const { return w_ == o.w_; }
    bool operator<(const BitNat& o) const { return cmp(*this, o) < 0; }
    bool operator<=(const BitNat& o) const { return cmp(*this, o) <= 0; }

    std::uint64_t to_u64() const;  // InvalidArgs when out of range
    std::string to_decimal() const;
    // "2^a" or "2^a - b" when the value is that close to a power of two,
    // otherwise empty.
    std::string pow2_shorthand() const;

  private:
    void normalize();
    std::vector<std::uint64_t> w_;
};

inline BitNat operator+(BitNat a, const BitNat& b) { return a.add(b); }
inline BitNat operator-(BitNat a, const BitNat& b) { return a.sub(b); }

// Number of ones in the binary expansion.
std::uint64_t alpha_of(const BitNat& t);
std::uint64_t alpha_of(std::uint64_t t);

// Least s >= 1 with d a sum of s numbers of the form 2^i - 1, computed via
// the search characterization min{ s : alpha(d+s) <= s }.
std::uint64_t beta_of(std::uint64_t d);
std::uint64_t beta_of(const BitNat& d);

// beta(d) > n, tested as alpha(d+n) > n.
bool beta_exceeds(const BitNat& d, std::uint64_t n);

// Degree of the distinguished monomial: (n-1)(2^{k+1} - 2) + k, exact.
BitNat zk_degree(std::uint64_t n, std::uint64_t k);
// d1 = (n-1)(2^k - 1), with d = k + 2*d1.
BitNat d1_of(std::uint64_t n, std::uint64_t k);
bool identity_check(std::uint64_t n, std::uint64_t k);

// One certified row of a counterexample family scan.
struct FamilyRecord {
    std::string family;  // "nm4" or "nm3"
    std::optional<std::uint32_t> r;
    std::uint64_t n = 0;
    std::uint64_t k = 0;
    BitNat d;
    std::uint64_t alpha_d_plus_n = 0;
    bool beta_exceeds_n = false;
    std::optional<bool> kameko_condition_holds;  // nm3 only: alpha(n-2) >= 3
};

// n = 2^r + 1, k = n-4 for r in [rmin, rmax]. Each row recomputes d + n by
// addition and checks it against the closed form 2^{r+n-3} - 2 before
// trusting the popcount. Needs rmin >= 2 so that k >= 1.
std::vector<FamilyRecord> scan_family_nm4(std::uint32_t rmin, std::uint32_t rmax);

// k = n-3 family; records whether alpha(n-2) >= 3 and whether beta(d) > n.
FamilyRecord check_family_nm3(std::uint64_t n);

}  // namespace mhl
