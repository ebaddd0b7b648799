#pragma once

#include <cstdint>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace wiretap {

/// Packed bit vector, 64 bits per word. Bits past size() are kept zero.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(int n) : n_(n), w_((n + 63) / 64, 0) {}

    int size() const { return n_; }
    int words() const { return int(w_.size()); }

    bool get(int i) const { return (w_[size_t(i) >> 6] >> (i & 63)) & 1u; }
    void set(int i, bool v) {
        uint64_t m = uint64_t(1) << (i & 63);
        if (v) w_[size_t(i) >> 6] |= m; else w_[size_t(i) >> 6] &= ~m;
    }
    void clear() { for (auto& x : w_) x = 0; }

    int popcount() const;
    bool any() const { for (auto x : w_) if (x) return true; return false; }

    uint64_t* data() { return w_.data(); }
    const uint64_t* data() const { return w_.data(); }

    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }

private:
    int n_ = 0;
    std::vector<uint64_t> w_;
};

/// Erasure pattern over n channel outputs; bit i set means output i is erased.
using ErasurePattern = BitVec;

/// Dense binary matrix over GF(2), row-major, bit-packed (one bit per entry).
class BinMatrix {
public:
    BinMatrix() = default;
    BinMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), wpr_((cols + 63) / 64),
          bits_(size_t(rows) * size_t(wpr_), 0) {}

    static BinMatrix identity(int n);
    /// Parse rows from strings of '0'/'1', e.g. {"10","11"}.
    static BinMatrix from_rows(const std::vector<std::string>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int words_per_row() const { return wpr_; }

    bool get(int r, int c) const {
        return (row(r)[size_t(c) >> 6] >> (c & 63)) & 1u;
    }
    void set(int r, int c, bool v) {
        uint64_t m = uint64_t(1) << (c & 63);
        if (v) row(r)[size_t(c) >> 6] |= m; else row(r)[size_t(c) >> 6] &= ~m;
    }

    uint64_t* row(int r) { return bits_.data() + size_t(r) * wpr_; }
    const uint64_t* row(int r) const { return bits_.data() + size_t(r) * wpr_; }

    void xor_row(int dst, int src);   // row[dst] ^= row[src]
    void swap_rows(int a, int b);

    int ones() const;                 // total population count

    bool operator==(const BinMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && bits_ == o.bits_;
    }
    bool operator!=(const BinMatrix& o) const { return !(*this == o); }

private:
    int rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<uint64_t> bits_;
};

/// Kronecker product over GF(2); block (i,j) of the result is a[i][j]*b.
BinMatrix kron(const BinMatrix& a, const BinMatrix& b);

/// Matrix product over GF(2).
BinMatrix mul(const BinMatrix& a, const BinMatrix& b);

BinMatrix transpose(const BinMatrix& a);

/// Reorder columns: column j of the result is column order[j] of a.
BinMatrix permute_columns(const BinMatrix& a, const std::vector<int>& order);

/// y = a * x over GF(2); x indexed by columns of a.
BitVec mat_vec(const BinMatrix& a, const BitVec& x);

/// Rank over GF(2) by elimination on packed rows.
int rank(const BinMatrix& a);

/// True iff a is square with full rank. Throws on non-square input.
bool is_invertible(const BinMatrix& a);

/// Inverse over GF(2), or nullopt if singular.
std::optional<BinMatrix> inverse(const BinMatrix& a);

/// Uniform Bernoulli(1/2) matrix, resampled until invertible. Entries for
/// attempt t depend only on (seed, t), so the result is reproducible.
BinMatrix random_invertible(int n, uint64_t seed);

/// Per-index decodability under successive solving, backward insertion:
/// entry i is true iff column i of g, restricted to the unerased rows,
/// is linearly independent of columns i+1..n on the same rows. g must be
/// square and invertible.
std::vector<bool> suffix_decodable_profile(const BinMatrix& g,
                                           const ErasurePattern& erased);

/// Same, but only the columns in `active` participate (both as candidates
/// and as later-column interference); entries outside `active` are false.
/// Models successive solving when the inactive inputs are already known.
std::vector<bool> suffix_decodable_profile_active(const BinMatrix& g,
                                                  const ErasurePattern& erased,
                                                  const BitVec& active);

/// Per-thread scratch space for SuffixEngine::profile.
struct SuffixWorkspace {
    std::vector<uint64_t> slots;     // n pivot slots, wpr words each
    std::vector<uint64_t> occupied;  // pivot occupancy bitmap
    std::vector<uint64_t> scratch;   // one vector
    std::vector<uint64_t> mask;      // erasure / unerased mask
};

/// Batch decodability engine for a fixed invertible transform: precomputes
/// column bitmaps and the inverse so each erasure pattern costs one small
/// echelonization over whichever of the erased/unerased sides is smaller.
/// Results are identical to suffix_decodable_profile.
class SuffixEngine {
public:
    explicit SuffixEngine(const BinMatrix& g);

    int n() const { return n_; }

    /// Fills `undecodable` (packed, n bits): bit i set iff input i is NOT
    /// recoverable under `erased`. Thread-safe given distinct workspaces.
    void profile(const ErasurePattern& erased, SuffixWorkspace& ws,
                 BitVec& undecodable) const;

    SuffixWorkspace make_workspace() const;

private:
    int n_ = 0, wpr_ = 0;
    BinMatrix g_;          // rows of g (unerased side)
    BinMatrix inv_t_;      // rows = columns of g^-1 (erased side)
};

} // namespace wiretap
