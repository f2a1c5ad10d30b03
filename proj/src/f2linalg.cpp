#include "mhl/f2linalg.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace mhl {

BitVector BitVector::unit(std::size_t len, std::size_t i) {
    BitVector v(len);
    v.set(i);
    return v;
}

BitVector BitVector::from_bits(std::string_view bits) {
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1')
            v.set(i);
        else if (bits[i] != '0')
            throw FormatError("bit string may contain only 0 and 1");
    }
    return v;
}

int BitVector::bit_index(std::uint64_t single_bit) {
    return std::countr_zero(single_bit);
}

void BitVector::xor_with(const BitVector& o) {
    if (o.len_ != len_)
        throw LengthMismatch("xor of vectors of lengths " + std::to_string(len_) +
                             " and " + std::to_string(o.len_));
    for (std::size_t i = 0; i < w_.size(); ++i)
        w_[i] ^= o.w_[i];
}

std::size_t BitVector::popcount() const {
    std::size_t c = 0;
    for (std::uint64_t w : w_)
        c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

bool BitVector::is_zero() const {
    for (std::uint64_t w : w_)
        if (w)
            return false;
    return true;
}

std::optional<std::size_t> BitVector::first_set() const {
    for (std::size_t i = 0; i < w_.size(); ++i)
        if (w_[i])
            return i * 64 + static_cast<std::size_t>(std::countr_zero(w_[i]));
    return std::nullopt;
}

BitVector BitVector::slice(std::size_t begin, std::size_t len) const {
    if (begin + len > len_)
        throw LengthMismatch("slice [" + std::to_string(begin) + ", +" +
                             std::to_string(len) + ") out of range");
    BitVector out(len);
    for (std::size_t i = 0; i < len; ++i)
        if (get(begin + i))
            out.set(i);
    return out;
}

std::string BitVector::to_hex() const {
    const std::size_t digits = (len_ + 3) / 4;
    std::string out(digits, '0');
    static const char* hexchars = "0123456789abcdef";
    for (std::size_t t = 0; t < digits; ++t) {
        const std::size_t q = digits - 1 - t;  // nibble index, LSB first
        unsigned nib = 0;
        for (unsigned b = 0; b < 4; ++b) {
            const std::size_t j = 4 * q + b;
            if (j < len_ && get(j))
                nib |= 1u << b;
        }
        out[t] = hexchars[nib];
    }
    return out;
}

BitVector BitVector::from_hex(std::string_view hex, std::size_t len) {
    const std::size_t digits = (len + 3) / 4;
    if (hex.size() != digits)
        throw FormatError("expected " + std::to_string(digits) + " hex digits, got " +
                          std::to_string(hex.size()));
    BitVector v(len);
    for (std::size_t t = 0; t < digits; ++t) {
        const char c = hex[t];
        unsigned nib;
        if (c >= '0' && c <= '9')
            nib = static_cast<unsigned>(c - '0');
        else if (c >= 'a' && c <= 'f')
            nib = static_cast<unsigned>(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F')
            nib = static_cast<unsigned>(c - 'A' + 10);
        else
            throw FormatError(std::string("bad hex digit '") + c + "'");
        const std::size_t q = digits - 1 - t;
        for (unsigned b = 0; b < 4; ++b) {
            if (!(nib & (1u << b)))
                continue;
            const std::size_t j = 4 * q + b;
            if (j >= len)
                throw FormatError("padding bits above column " + std::to_string(len) +
                                  " must be zero");
            v.set(j);
        }
    }
    return v;
}

BitVector Subspace::reduce(BitVector v) const {
    if (v.size() != ncols)
        throw LengthMismatch("vector length " + std::to_string(v.size()) +
                             " vs subspace with " + std::to_string(ncols) + " columns");
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (v.get(pivots[i]))
            v.xor_with(rows[i]);
    return v;
}

bool EchelonBuilder::add(BitVector v) {
    if (v.size() != ncols_)
        throw LengthMismatch("row length " + std::to_string(v.size()) + " vs " +
                             std::to_string(ncols_) + " columns");
    for (std::size_t i = 0; i < rows_.size(); ++i)
        if (v.get(pivots_[i]))
            v.xor_with(rows_[i]);
    auto p = v.first_set();
    if (!p)
        return false;
    // Back-reduce existing rows so the pivot column stays exclusive.
    for (std::size_t i = 0; i < rows_.size(); ++i)
        if (rows_[i].get(*p))
            rows_[i].xor_with(v);
    const auto at = std::lower_bound(pivots_.begin(), pivots_.end(), *p) - pivots_.begin();
    pivots_.insert(pivots_.begin() + at, *p);
    rows_.insert(rows_.begin() + at, std::move(v));
    return true;
}

BitVector EchelonBuilder::reduce(BitVector v) const {
    if (v.size() != ncols_)
        throw LengthMismatch("vector length " + std::to_string(v.size()) + " vs " +
                             std::to_string(ncols_) + " columns");
    for (std::size_t i = 0; i < rows_.size(); ++i)
        if (v.get(pivots_[i]))
            v.xor_with(rows_[i]);
    return v;
}

Subspace EchelonBuilder::take() && {
    return Subspace{ncols_, std::move(rows_), std::move(pivots_)};
}

Subspace EchelonBuilder::snapshot() const {
    return Subspace{ncols_, rows_, pivots_};
}

bool TaggedEchelonBuilder::add(BitVector v, BitVector tag) {
    if (v.size() != ncols_ || tag.size() != tag_cols_)
        throw LengthMismatch("tagged row dimensions do not match builder");
    for (std::size_t i = 0; i < rows_.size(); ++i)
        if (v.get(pivots_[i])) {
            v.xor_with(rows_[i]);
            tag.xor_with(tags_[i]);
        }
    auto p = v.first_set();
    if (!p)
        return false;
    for (std::size_t i = 0; i < rows_.size(); ++i)
        if (rows_[i].get(*p)) {
            rows_[i].xor_with(v);
            tags_[i].xor_with(tag);
        }
    const auto at = std::lower_bound(pivots_.begin(), pivots_.end(), *p) - pivots_.begin();
    pivots_.insert(pivots_.begin() + at, *p);
    rows_.insert(rows_.begin() + at, std::move(v));
    tags_.insert(tags_.begin() + at, std::move(tag));
    return true;
}

std::pair<BitVector, BitVector> TaggedEchelonBuilder::reduce(BitVector v) const {
    if (v.size() != ncols_)
        throw LengthMismatch("vector length does not match tagged builder");
    BitVector tag(tag_cols_);
    for (std::size_t i = 0; i < rows_.size(); ++i)
        if (v.get(pivots_[i])) {
            v.xor_with(rows_[i]);
            tag.xor_with(tags_[i]);
        }
    return {std::move(v), std::move(tag)};
}

Subspace echelonize(std::size_t ncols, const std::vector<BitVector>& rows) {
    EchelonBuilder b(ncols);
    for (const BitVector& r : rows)
        b.add(r);
    return std::move(b).take();
}

Subspace echelonize(const std::vector<BitVector>& rows) {
    return echelonize(rows.empty() ? 0 : rows.front().size(), rows);
}

bool member(const Subspace& s, const BitVector& v) { return s.contains(v); }

bool subspace_equal(const Subspace& a, const Subspace& b) {
    if (a.ncols != b.ncols)
        throw LengthMismatch("comparing subspaces of " + std::to_string(a.ncols) +
                             " and " + std::to_string(b.ncols) + " columns");
    return a.pivots == b.pivots && a.rows == b.rows;
}

std::optional<BitVector> solve_preimage(const std::vector<BitVector>& generators,
                                        const BitVector& target) {
    const std::size_t len = target.size();
    TaggedEchelonBuilder b(len, generators.size());
    for (std::size_t i = 0; i < generators.size(); ++i) {
        if (generators[i].size() != len)
            throw LengthMismatch("generator " + std::to_string(i) +
                                 " has mismatched length");
        b.add(generators[i], BitVector::unit(generators.size(), i));
    }
    auto [res, tag] = b.reduce(target);
    if (!res.is_zero())
        return std::nullopt;
    // Re-sum before returning: the solution must reproduce the target.
    BitVector check(len);
    tag.for_each_set([&](std::size_t i) { check.xor_with(generators[i]); });
    if (!(check == target))
        throw std::logic_error("solve_preimage produced a non-solution");
    return tag;
}

Subspace even_parity_subspace(std::size_t N) {
    std::vector<BitVector> rows;
    for (std::size_t i = 1; i < N; ++i) {
        BitVector v(N);
        v.set(0);
        v.set(i);
        rows.push_back(std::move(v));
    }
    return echelonize(N, rows);
}

void write_subspace(std::ostream& os, const Subspace& s) {
    os << "F2SUBSPACE v1 cols=" << s.ncols << " rank=" << s.rank() << "\n";
    for (const BitVector& r : s.rows)
        os << r.to_hex() << "\n";
}

Subspace read_subspace(std::istream& is) {
    std::string header;
    if (!std::getline(is, header))
        throw FormatError("missing F2SUBSPACE header");
    std::istringstream hs(header);
    std::string magic, version, colsfield, rankfield;
    hs >> magic >> version >> colsfield >> rankfield;
    if (hs.fail() || magic != "F2SUBSPACE")
        throw FormatError("not an F2SUBSPACE file");
    if (version != "v1")
        throw FormatError("unsupported F2SUBSPACE version: " + version);
    auto field_value = [](const std::string& f, std::string_view key) -> std::size_t {
        if (f.size() <= key.size() || f.compare(0, key.size(), key) != 0)
            throw FormatError("bad F2SUBSPACE header field: " + f);
        std::size_t v = 0;
        for (std::size_t i = key.size(); i < f.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(f[i])))
                throw FormatError("bad F2SUBSPACE header field: " + f);
            v = v * 10 + static_cast<std::size_t>(f[i] - '0');
        }
        return v;
    };
    const std::size_t ncols = field_value(colsfield, "cols=");
    const std::size_t rank = field_value(rankfield, "rank=");
    std::vector<BitVector> rows;
    rows.reserve(rank);
    for (std::size_t i = 0; i < rank; ++i) {
        std::string line;
        if (!std::getline(is, line))
            throw FormatError("truncated F2SUBSPACE file: expected " +
                              std::to_string(rank) + " rows");
        rows.push_back(BitVector::from_hex(line, ncols));
    }
    Subspace s = echelonize(ncols, rows);
    if (s.rank() != rank)
        throw FormatError("F2SUBSPACE rows are not an independent echelon basis");
    // Rows must already be canonical so that files round-trip bit exactly.
    if (s.rows != rows)
        throw FormatError("F2SUBSPACE rows are not in reduced echelon form");
    return s;
}

std::optional<Subspace> SubspaceStore::load(const std::string& name,
                                            std::size_t expect_cols) const {
    if (!enabled())
        return std::nullopt;
    const std::filesystem::path path = std::filesystem::path(dir_) / name;
    std::ifstream in(path);
    if (!in)
        return std::nullopt;
    Subspace s = read_subspace(in);
    if (s.ncols != expect_cols)
        throw FormatError("cache file " + path.string() + " has " +
                          std::to_string(s.ncols) + " columns, expected " +
                          std::to_string(expect_cols));
    return s;
}

void SubspaceStore::save(const std::string& name, const Subspace& s) const {
    if (!enabled())
        return;
    std::filesystem::create_directories(dir_);
    const std::filesystem::path path = std::filesystem::path(dir_) / name;
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw FormatError("cannot write cache file " + path.string());
    write_subspace(out, s);
}

}  // namespace mhl
