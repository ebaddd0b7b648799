#include "wiretap/gf2.hpp"
#include "wiretap/rng.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace wiretap {

namespace {

// Zero out bits >= n in the last word of an n-bit row.
inline uint64_t tail_mask(int n) {
    int r = n & 63;
    return r ? ((uint64_t(1) << r) - 1) : ~uint64_t(0);
}

inline int lowest_bit(const uint64_t* v, int words) {
    for (int w = 0; w < words; ++w)
        if (v[w]) return w * 64 + std::countr_zero(v[w]);
    return -1;
}

inline int highest_bit(const uint64_t* v, int words) {
    for (int w = words - 1; w >= 0; --w)
        if (v[w]) return w * 64 + 63 - std::countl_zero(v[w]);
    return -1;
}

} // namespace

int BitVec::popcount() const {
    int c = 0;
    for (auto x : w_) c += std::popcount(x);
    return c;
}

BinMatrix BinMatrix::identity(int n) {
    BinMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

BinMatrix BinMatrix::from_rows(const std::vector<std::string>& rows) {
    if (rows.empty()) throw std::invalid_argument("from_rows: empty");
    BinMatrix m(int(rows.size()), int(rows[0].size()));
    for (int r = 0; r < m.rows(); ++r) {
        if (int(rows[r].size()) != m.cols())
            throw std::invalid_argument("from_rows: ragged rows");
        for (int c = 0; c < m.cols(); ++c) {
            char ch = rows[r][c];
            if (ch != '0' && ch != '1')
                throw std::invalid_argument("from_rows: expected 0/1");
            if (ch == '1') m.set(r, c, true);
        }
    }
    return m;
}

void BinMatrix::xor_row(int dst, int src) {
    uint64_t* d = row(dst);
    const uint64_t* s = row(src);
    for (int w = 0; w < wpr_; ++w) d[w] ^= s[w];
}

void BinMatrix::swap_rows(int a, int b) {
    if (a == b) return;
    uint64_t* ra = row(a);
    uint64_t* rb = row(b);
    for (int w = 0; w < wpr_; ++w) std::swap(ra[w], rb[w]);
}

int BinMatrix::ones() const {
    int c = 0;
    for (auto x : bits_) c += std::popcount(x);
    return c;
}

BinMatrix kron(const BinMatrix& a, const BinMatrix& b) {
    BinMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (int ia = 0; ia < a.rows(); ++ia)
        for (int ja = 0; ja < a.cols(); ++ja) {
            if (!a.get(ia, ja)) continue;
            for (int ib = 0; ib < b.rows(); ++ib)
                for (int jb = 0; jb < b.cols(); ++jb)
                    if (b.get(ib, jb))
                        r.set(ia * b.rows() + ib, ja * b.cols() + jb, true);
        }
    return r;
}

BinMatrix mul(const BinMatrix& a, const BinMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("mul: shape mismatch");
    BinMatrix r(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        uint64_t* out = r.row(i);
        for (int k = 0; k < a.cols(); ++k)
            if (a.get(i, k)) {
                const uint64_t* src = b.row(k);
                for (int w = 0; w < b.words_per_row(); ++w) out[w] ^= src[w];
            }
    }
    return r;
}

BinMatrix transpose(const BinMatrix& a) {
    BinMatrix r(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (a.get(i, j)) r.set(j, i, true);
    return r;
}

BinMatrix permute_columns(const BinMatrix& a, const std::vector<int>& order) {
    if (int(order.size()) != a.cols())
        throw std::invalid_argument("permute_columns: bad order length");
    std::vector<bool> seen(order.size(), false);
    for (int c : order) {
        if (c < 0 || c >= a.cols() || seen[size_t(c)])
            throw std::invalid_argument("permute_columns: not a permutation");
        seen[size_t(c)] = true;
    }
    BinMatrix r(a.rows(), a.cols());
    for (int j = 0; j < a.cols(); ++j)
        for (int i = 0; i < a.rows(); ++i)
            if (a.get(i, order[j])) r.set(i, j, true);
    return r;
}

BitVec mat_vec(const BinMatrix& a, const BitVec& x) {
    if (x.size() != a.cols()) throw std::invalid_argument("mat_vec: shape mismatch");
    BitVec y(a.rows());
    for (int i = 0; i < a.rows(); ++i) {
        const uint64_t* row = a.row(i);
        uint64_t acc = 0;
        for (int w = 0; w < a.words_per_row(); ++w) acc ^= row[w] & x.data()[w];
        y.set(i, std::popcount(acc) & 1);
    }
    return y;
}

int rank(const BinMatrix& a) {
    int wpr = a.words_per_row();
    std::vector<uint64_t> slots(size_t(a.cols()) * wpr, 0);
    std::vector<bool> occupied(a.cols(), false);
    std::vector<uint64_t> v(wpr);
    int rk = 0;
    for (int r = 0; r < a.rows(); ++r) {
        const uint64_t* src = a.row(r);
        for (int w = 0; w < wpr; ++w) v[w] = src[w];
        for (;;) {
            int p = lowest_bit(v.data(), wpr);
            if (p < 0) break;
            uint64_t* slot = slots.data() + size_t(p) * wpr;
            if (!occupied[size_t(p)]) {
                for (int w = 0; w < wpr; ++w) slot[w] = v[w];
                occupied[size_t(p)] = true;
                ++rk;
                break;
            }
            for (int w = p >> 6; w < wpr; ++w) v[w] ^= slot[w];
        }
    }
    return rk;
}

bool is_invertible(const BinMatrix& a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("is_invertible: matrix not square");
    return rank(a) == a.rows();
}

std::optional<BinMatrix> inverse(const BinMatrix& a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("inverse: matrix not square");
    int n = a.rows();
    BinMatrix work = a;
    BinMatrix inv = BinMatrix::identity(n);
    for (int c = 0; c < n; ++c) {
        int pivot = -1;
        for (int r = c; r < n; ++r)
            if (work.get(r, c)) { pivot = r; break; }
        if (pivot < 0) return std::nullopt;
        work.swap_rows(c, pivot);
        inv.swap_rows(c, pivot);
        for (int r = 0; r < n; ++r)
            if (r != c && work.get(r, c)) {
                work.xor_row(r, c);
                inv.xor_row(r, c);
            }
    }
    return inv;
}

BinMatrix random_invertible(int n, uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random_invertible: n < 1");
    for (uint64_t attempt = 0;; ++attempt) {
        BinMatrix m(n, n);
        uint64_t last = tail_mask(n);
        for (int r = 0; r < n; ++r) {
            uint64_t* row = m.row(r);
            for (int w = 0; w < m.words_per_row(); ++w)
                row[w] = mix4(seed, attempt, uint64_t(r), uint64_t(w));
            row[m.words_per_row() - 1] &= last;
        }
        if (rank(m) == n) return m;
    }
}

std::vector<bool> suffix_decodable_profile(const BinMatrix& g,
                                           const ErasurePattern& erased) {
    BitVec all(g.cols());
    for (int i = 0; i < g.cols(); ++i) all.set(i, true);
    return suffix_decodable_profile_active(g, erased, all);
}

std::vector<bool> suffix_decodable_profile_active(const BinMatrix& g,
                                                  const ErasurePattern& erased,
                                                  const BitVec& active) {
    if (g.rows() != g.cols())
        throw std::invalid_argument("suffix_decodable_profile: matrix not square");
    if (!is_invertible(g))
        throw std::invalid_argument("suffix_decodable_profile: singular transform");
    if (erased.size() != g.rows() || active.size() != g.cols())
        throw std::invalid_argument("suffix_decodable_profile: size mismatch");

    int n = g.rows();
    BinMatrix cols = transpose(g);   // row i = column i of g
    int wpr = cols.words_per_row();

    // Restriction to unerased rows: zero the erased coordinates. A set of
    // vectors is independent on the unerased coordinates iff the masked
    // vectors are independent.
    std::vector<uint64_t> mask(size_t(wpr), 0);
    for (int w = 0; w < wpr; ++w) mask[size_t(w)] = ~erased.data()[w];
    mask[size_t(wpr) - 1] &= tail_mask(n);

    std::vector<uint64_t> slots(size_t(n) * wpr, 0);
    std::vector<bool> occupied(size_t(n), false);
    std::vector<uint64_t> v(size_t(wpr), 0);
    std::vector<bool> out(size_t(n), false);

    for (int i = n - 1; i >= 0; --i) {
        if (!active.get(i)) continue;
        const uint64_t* src = cols.row(i);
        for (int w = 0; w < wpr; ++w) v[size_t(w)] = src[w] & mask[size_t(w)];
        for (;;) {
            int p = highest_bit(v.data(), wpr);
            if (p < 0) break;                       // dependent (or zero)
            uint64_t* slot = slots.data() + size_t(p) * wpr;
            if (!occupied[size_t(p)]) {
                for (int w = 0; w <= (p >> 6); ++w) slot[w] = v[size_t(w)];
                occupied[size_t(p)] = true;
                out[size_t(i)] = true;              // insertion raised the rank
                break;
            }
            for (int w = 0; w <= (p >> 6); ++w) v[size_t(w)] ^= slot[w];
        }
    }
    return out;
}

SuffixEngine::SuffixEngine(const BinMatrix& g) {
    if (g.rows() != g.cols())
        throw std::invalid_argument("SuffixEngine: matrix not square");
    auto inv = inverse(g);
    if (!inv)
        throw std::invalid_argument("SuffixEngine: singular transform");
    n_ = g.rows();
    wpr_ = g.words_per_row();
    g_ = g;
    inv_t_ = transpose(*inv);
}

SuffixWorkspace SuffixEngine::make_workspace() const {
    SuffixWorkspace ws;
    ws.slots.assign(size_t(n_) * wpr_, 0);
    ws.occupied.assign(size_t(wpr_), 0);
    ws.scratch.assign(size_t(wpr_), 0);
    ws.mask.assign(size_t(wpr_), 0);
    return ws;
}

// Two equivalent formulations, picked by cost:
//  - erased side: the inputs that are NOT recoverable are exactly the
//    minimum-support pivots of span{columns of g^-1 at erased rows};
//  - unerased side: the recoverable inputs are exactly the maximum-support
//    pivots of the row space of g restricted to unerased rows.
// Each costs one echelonization over |side| vectors.
void SuffixEngine::profile(const ErasurePattern& erased, SuffixWorkspace& ws,
                           BitVec& undecodable) const {
    if (erased.size() != n_)
        throw std::invalid_argument("SuffixEngine::profile: pattern size mismatch");
    if (undecodable.size() != n_) undecodable = BitVec(n_);

    int ne = erased.popcount();
    bool erased_side = ne * 2 <= n_;

    for (int w = 0; w < wpr_; ++w) ws.occupied[size_t(w)] = 0;
    uint64_t* out = undecodable.data();

    if (erased_side) {
        for (int w = 0; w < wpr_; ++w) out[w] = 0;
        for (int rw = 0; rw < wpr_; ++rw) {
            uint64_t bits = erased.data()[rw];
            while (bits) {
                int r = rw * 64 + std::countr_zero(bits);
                bits &= bits - 1;
                const uint64_t* src = inv_t_.row(r);
                uint64_t* v = ws.scratch.data();
                for (int w = 0; w < wpr_; ++w) v[w] = src[w];
                for (;;) {
                    int p = lowest_bit(v, wpr_);
                    if (p < 0) break;               // unreachable for invertible g
                    uint64_t* slot = ws.slots.data() + size_t(p) * wpr_;
                    if (!(ws.occupied[size_t(p) >> 6] >> (p & 63) & 1u)) {
                        for (int w = p >> 6; w < wpr_; ++w) slot[w] = v[w];
                        ws.occupied[size_t(p) >> 6] |= uint64_t(1) << (p & 63);
                        out[size_t(p) >> 6] |= uint64_t(1) << (p & 63);
                        break;
                    }
                    for (int w = p >> 6; w < wpr_; ++w) v[w] ^= slot[w];
                }
            }
        }
    } else {
        // decodable set accumulated in `out`, complemented at the end
        for (int w = 0; w < wpr_; ++w) out[w] = 0;
        for (int rw = 0; rw < wpr_; ++rw) {
            uint64_t bits = ~erased.data()[rw];
            if (rw == wpr_ - 1) bits &= tail_mask(n_);
            while (bits) {
                int r = rw * 64 + std::countr_zero(bits);
                bits &= bits - 1;
                const uint64_t* src = g_.row(r);
                uint64_t* v = ws.scratch.data();
                for (int w = 0; w < wpr_; ++w) v[w] = src[w];
                for (;;) {
                    int p = highest_bit(v, wpr_);
                    if (p < 0) break;               // dependent row
                    uint64_t* slot = ws.slots.data() + size_t(p) * wpr_;
                    if (!(ws.occupied[size_t(p) >> 6] >> (p & 63) & 1u)) {
                        for (int w = 0; w <= (p >> 6); ++w) slot[w] = v[w];
                        ws.occupied[size_t(p) >> 6] |= uint64_t(1) << (p & 63);
                        out[size_t(p) >> 6] |= uint64_t(1) << (p & 63);
                        break;
                    }
                    for (int w = 0; w <= (p >> 6); ++w) v[w] ^= slot[w];
                }
            }
        }
        for (int w = 0; w < wpr_; ++w) out[w] = ~out[w];
        out[size_t(wpr_) - 1] &= tail_mask(n_);
    }
}

} // namespace wiretap
