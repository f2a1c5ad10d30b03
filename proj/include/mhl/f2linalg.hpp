#pragma once

#include "mhl/errors.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mhl {

// Fixed-length vector over F2, packed into 64-bit words. Column index j
// lives in word j/64, bit j%64.
class BitVector {
  public:
    BitVector() = default;
    explicit BitVector(std::size_t len) : len_(len), w_((len + 63) / 64, 0) {}

    static BitVector unit(std::size_t len, std::size_t i);
    static BitVector from_bits(std::string_view bits);  // "1011", index 0 first

    std::size_t size() const { return len_; }

    bool get(std::size_t i) const {
        check_index(i);
        return (w_[i >> 6] >> (i & 63)) & 1;
    }
    void set(std::size_t i, bool v = true) {
        check_index(i);
        if (v)
            w_[i >> 6] |= 1ull << (i & 63);
        else
            w_[i >> 6] &= ~(1ull << (i & 63));
    }
    void flip(std::size_t i) {
        check_index(i);
        w_[i >> 6] ^= 1ull << (i & 63);
    }

    // XOR accumulate; the elimination workhorse.
    void xor_with(const BitVector& o);

    std::size_t popcount() const;
    bool is_zero() const;
    std::optional<std::size_t> first_set() const;

    // Visit set bits in increasing column order.
    template <typename F>
    void for_each_set(F&& f) const {
        for (std::size_t wi = 0; wi < w_.size(); ++wi) {
            std::uint64_t w = w_[wi];
            while (w) {
                std::uint64_t b = w & (~w + 1);
                f(wi * 64 + static_cast<std::size_t>(bit_index(b)));
                w ^= b;
            }
        }
    }

    BitVector slice(std::size_t begin, std::size_t len) const;

    // Hex form used by the cache format: value sum_j bit_j * 2^j printed
    // with exactly ceil(len/4) lowercase digits, most significant first.
    std::string to_hex() const;
    static BitVector from_hex(std::string_view hex, std::size_t len);

    bool operator==(const BitVector& o) const = default;

  private:
    void check_index(std::size_t i) const {
        if (i >= len_)
            throw LengthMismatch("bit index " + std::to_string(i) +
                                 " out of range for length " + std::to_string(len_));
    }
    static int bit_index(std::uint64_t single_bit);

    std::size_t len_ = 0;
    std::vector<std::uint64_t> w_;
};

// Parity of the coordinate sum, i.e. popcount mod 2.
inline int parity(const BitVector& v) { return static_cast<int>(v.popcount() & 1); }

// A subspace of F2^ncols held as its reduced row-echelon basis. RREF is the
// canonical representative of a span, so equality of Subspace values is
// plain row-list equality.
struct Subspace {
    std::size_t ncols = 0;
    std::vector<BitVector> rows;     // RREF, pivots strictly increasing
    std::vector<std::size_t> pivots;

    std::size_t rank() const { return rows.size(); }

    // Residue of v after reduction against all pivot rows.
    BitVector reduce(BitVector v) const;
    bool contains(const BitVector& v) const { return reduce(v).is_zero(); }

    bool operator==(const Subspace& o) const = default;
};

// Incremental RREF construction. Rows are reduced on entry and the existing
// rows are back-reduced, so the invariant holds after every add.
class EchelonBuilder {
  public:
    explicit EchelonBuilder(std::size_t ncols) : ncols_(ncols) {}

    // Returns true when the row enlarged the span.
    bool add(BitVector v);
    BitVector reduce(BitVector v) const;
    bool contains(const BitVector& v) const { return reduce(v).is_zero(); }

    std::size_t ncols() const { return ncols_; }
    std::size_t rank() const { return rows_.size(); }

    Subspace take() &&;
    Subspace snapshot() const;

  private:
    std::size_t ncols_;
    std::vector<BitVector> rows_;
    std::vector<std::size_t> pivots_;
};

// RREF elimination with a side vector carried along each row; pivots are
// chosen in the value part only. Used to express reduced vectors as
// combinations of tagged input rows.
class TaggedEchelonBuilder {
  public:
    TaggedEchelonBuilder(std::size_t ncols, std::size_t tag_cols)
        : ncols_(ncols), tag_cols_(tag_cols) {}

    // Returns true when the value part enlarged the span. A row whose value
    // reduces to zero is dropped (its tag records a dependency).
    bool add(BitVector v, BitVector tag);

    // Reduce v; on return .first is the residue and .second the XOR of the
    // tags of all rows used.
    std::pair<BitVector, BitVector> reduce(BitVector v) const;

    std::size_t rank() const { return rows_.size(); }

  private:
    std::size_t ncols_, tag_cols_;
    std::vector<BitVector> rows_;
    std::vector<BitVector> tags_;
    std::vector<std::size_t> pivots_;
};

// Reduced row-echelon basis of the span of the given rows. Deterministic,
// idempotent, and independent of input order up to span.
Subspace echelonize(const std::vector<BitVector>& rows);
Subspace echelonize(std::size_t ncols, const std::vector<BitVector>& rows);

bool member(const Subspace& s, const BitVector& v);
bool subspace_equal(const Subspace& a, const Subspace& b);

// Indicator vector c over the generators with sum_{i: c_i} generators[i] ==
// target, or nullopt. The returned solution is re-summed before return.
std::optional<BitVector> solve_preimage(const std::vector<BitVector>& generators,
                                        const BitVector& target);

// Echelon form of span{e_1 + e_i : 2 <= i <= N}: the even-parity hyperplane,
// rank N-1.
Subspace even_parity_subspace(std::size_t N);

// Cache file format, bit exact:
//   F2SUBSPACE v1 cols=<ncols> rank=<r>
//   <hex row> x r
void write_subspace(std::ostream& os, const Subspace& s);
Subspace read_subspace(std::istream& is);

// Directory-backed persistence for named subspaces (no directory: disabled).
class SubspaceStore {
  public:
    SubspaceStore() = default;
    explicit SubspaceStore(std::string dir) : dir_(std::move(dir)) {}

    bool enabled() const { return !dir_.empty(); }
    std::optional<Subspace> load(const std::string& name, std::size_t expect_cols) const;
    void save(const std::string& name, const Subspace& s) const;

  private:
    std::string dir_;
};

}  // namespace mhl
