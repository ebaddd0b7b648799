#include "wiretap/transforms.hpp"
#include "wiretap/bitchannel.hpp"
#include "wiretap/rng.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace wiretap {

KernelSpec KernelSpec::from_matrix(const BinMatrix& m, std::string name) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("KernelSpec: matrix not square");
    if (m.rows() > 20)
        throw std::invalid_argument("KernelSpec: size > 20 (erasure table blow-up)");
    if (!is_invertible(m))
        throw std::invalid_argument("KernelSpec: singular matrix");

    KernelSpec k;
    k.size_ = m.rows();
    k.name_ = std::move(name);
    k.matrix_ = m;

    int l = k.size_;
    SuffixEngine engine(m);
    SuffixWorkspace ws = engine.make_workspace();
    k.table_.resize(size_t(1) << l);
    k.counts_.assign(size_t(l) * (l + 1), 0);
    ErasurePattern pat(l);
    BitVec und(l);
    for (uint32_t mask = 0; mask < (uint32_t(1) << l); ++mask) {
        pat.data()[0] = mask;
        engine.profile(pat, ws, und);
        uint32_t u = uint32_t(und.data()[0]);
        k.table_[mask] = ~u & ((uint32_t(1) << l) - 1);
        int w = std::popcount(mask);
        for (int i = 0; i < l; ++i)
            if ((u >> i) & 1u) ++k.counts_[size_t(i) * (l + 1) + w];
    }
    return k;
}

const KernelSpec& KernelSpec::g2() {
    static const KernelSpec k =
        KernelSpec::from_matrix(BinMatrix::from_rows({"11", "01"}), "G2");
    return k;
}

std::vector<double> KernelSpec::erasure_map(double q) const {
    int l = size_;
    std::vector<double> qpow(size_t(l) + 1, 1.0), ppow(size_t(l) + 1, 1.0);
    for (int i = 1; i <= l; ++i) {
        qpow[size_t(i)] = qpow[size_t(i) - 1] * q;
        ppow[size_t(i)] = ppow[size_t(i) - 1] * (1.0 - q);
    }
    std::vector<double> f(size_t(l), 0.0);
    for (int i = 0; i < l; ++i)
        for (int w = 0; w <= l; ++w) {
            int64_t c = counts_[size_t(i) * (l + 1) + w];
            if (c) f[size_t(i)] += double(c) * qpow[size_t(w)] * ppow[size_t(l - w)];
        }
    return f;
}

std::vector<int64_t> KernelSpec::erasure_polynomial(int i) const {
    int l = size_;
    // binomial table up to l
    std::vector<std::vector<int64_t>> ch(size_t(l) + 1);
    for (int a = 0; a <= l; ++a) {
        ch[size_t(a)].assign(size_t(a) + 1, 1);
        for (int b = 1; b < a; ++b)
            ch[size_t(a)][size_t(b)] =
                ch[size_t(a) - 1][size_t(b) - 1] + ch[size_t(a) - 1][size_t(b)];
    }
    // sum_w c_w q^w (1-q)^(l-w) expanded into powers of q
    std::vector<int64_t> coeff(size_t(l) + 1, 0);
    for (int w = 0; w <= l; ++w) {
        int64_t c = counts_[size_t(i) * (l + 1) + w];
        if (!c) continue;
        for (int d = 0; d <= l - w; ++d) {
            int64_t term = c * ch[size_t(l - w)][size_t(d)];
            coeff[size_t(w + d)] += (d & 1) ? -term : term;
        }
    }
    return coeff;
}

KernelSpec load_kernel(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_kernel: cannot open " + path);
    int l = 0;
    if (!(in >> l) || l < 1)
        throw std::runtime_error("load_kernel: bad size line in " + path);
    std::vector<std::string> rows;
    for (int r = 0; r < l; ++r) {
        std::string line;
        if (!(in >> line) || int(line.size()) != l)
            throw std::runtime_error("load_kernel: bad row in " + path);
        rows.push_back(line);
    }
    BinMatrix m = BinMatrix::from_rows(rows);
    if (!is_invertible(m))
        throw std::runtime_error("load_kernel: singular kernel in " + path);
    std::string name = path;
    auto slash = name.find_last_of('/');
    if (slash != std::string::npos) name = name.substr(slash + 1);
    return KernelSpec::from_matrix(m, name);
}

void save_kernel(const BinMatrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_kernel: cannot open " + path);
    out << m.rows() << "\n";
    for (int r = 0; r < m.rows(); ++r) {
        for (int c = 0; c < m.cols(); ++c) out << (m.get(r, c) ? '1' : '0');
        out << "\n";
    }
}

const char* family_name(Family f) {
    switch (f) {
        case Family::polar: return "polar";
        case Family::rm:    return "rm";
        case Family::mk:    return "mk";
        case Family::abs:   return "abs";
        case Family::rl:    return "rl";
    }
    return "?";
}

Family family_from_name(const std::string& s) {
    if (s == "polar") return Family::polar;
    if (s == "rm")    return Family::rm;
    if (s == "mk")    return Family::mk;
    if (s == "abs")   return Family::abs;
    if (s == "rl")    return Family::rl;
    throw std::invalid_argument("unknown family: " + s);
}

CodeConstruction polar_transform(int m) {
    if (m < 1) throw std::invalid_argument("polar_transform: m < 1");
    BinMatrix g = KernelSpec::g2().matrix();
    BinMatrix t = g;
    for (int i = 1; i < m; ++i) t = kron(t, g);
    CodeConstruction c;
    c.n = 1 << m;
    c.family = Family::polar;
    c.transform = std::move(t);
    c.provenance.kernel_names.assign(size_t(m), "G2");
    c.provenance.kernel_sizes.assign(size_t(m), 2);
    return c;
}

CodeConstruction rm_transform(int m) {
    CodeConstruction base = polar_transform(m);
    int n = base.n;
    std::vector<int> weight(size_t(n), 0);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            if (base.transform.get(i, j)) ++weight[size_t(j)];
    std::vector<int> order(size_t(n), 0);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return weight[size_t(a)] < weight[size_t(b)];
    });
    CodeConstruction c;
    c.n = n;
    c.family = Family::rm;
    c.transform = permute_columns(base.transform, order);
    c.provenance = base.provenance;
    c.provenance.column_weight_ordered = true;
    c.provenance.decode_order = order;
    return c;
}

CodeConstruction mk_transform(const std::vector<KernelSpec>& kernels) {
    if (kernels.empty())
        throw std::invalid_argument("mk_transform: empty kernel list");
    BinMatrix t = kernels[0].matrix();
    for (size_t i = 1; i < kernels.size(); ++i) t = kron(t, kernels[i].matrix());
    CodeConstruction c;
    c.n = t.rows();
    c.family = Family::mk;
    c.transform = std::move(t);
    for (const auto& k : kernels) {
        c.provenance.kernel_names.push_back(k.name());
        c.provenance.kernel_sizes.push_back(k.size());
    }
    return c;
}

CodeConstruction rl_transform(int n, uint64_t seed) {
    CodeConstruction c;
    c.n = n;
    c.family = Family::rl;
    c.transform = random_invertible(n, seed);
    c.provenance.seed = seed;
    return c;
}

namespace {

// Right-multiply by the stage-t butterfly layer I_{2^(t-1)} x G2 x I_{2^(m-t)}:
// within each block pair, the plus column absorbs the minus column.
void apply_stage(BinMatrix& m, int t, int mstages) {
    int half = 1 << (mstages - t);
    int outer = 1 << (t - 1);
    for (int a = 0; a < outer; ++a)
        for (int b = 0; b < half; ++b) {
            int c1 = a * 2 * half + b;
            int c2 = c1 + half;
            for (int r = 0; r < m.rows(); ++r)
                if (m.get(r, c1)) m.set(r, c2, !m.get(r, c2));
        }
}

void swap_column_blocks(BinMatrix& m, int block_size, int b1, int b2) {
    for (int k = 0; k < block_size; ++k) {
        int c1 = b1 * block_size + k;
        int c2 = b2 * block_size + k;
        for (int r = 0; r < m.rows(); ++r) {
            bool v1 = m.get(r, c1);
            bool v2 = m.get(r, c2);
            m.set(r, c1, v2);
            m.set(r, c2, v1);
        }
    }
}

std::vector<double> eval_params(const BinMatrix& m, const Bec& ch,
                                const AbsEvalBudget& budget, int depth,
                                uint64_t channel_tag) {
    if (m.rows() <= budget.exhaustive_max_n)
        return exhaustive_profile(m, ch).erasure;
    return mc_profile(m, ch, budget.mc_samples,
                      mix3(budget.base_seed, uint64_t(depth), channel_tag),
                      budget.threads)
        .erasure;
}

std::vector<double> block_means(const std::vector<double>& v, int blocks) {
    int bs = int(v.size()) / blocks;
    std::vector<double> out(size_t(blocks), 0.0);
    for (int b = 0; b < blocks; ++b) {
        double s = 0.0;
        for (int k = 0; k < bs; ++k) s += v[size_t(b) * bs + k];
        out[size_t(b)] = s / bs;
    }
    return out;
}

} // namespace

AbsBuildResult abs_transform_traced(int m, const Bec& p_b, const Bec& p_e,
                                    const AbsEvalBudget& budget) {
    if (m < 1) throw std::invalid_argument("abs_transform: m < 1");
    int n = 1 << m;
    AbsBuildResult res;
    BinMatrix work = BinMatrix::identity(n);
    std::vector<std::pair<int, int>> schedule;

    for (int t = 1; t <= m; ++t) {
        int depth = t - 1;
        int blocks = 1 << depth;
        if (blocks >= 4) {
            // candidate swaps cross the butterfly pairs formed by stage t-1
            AbsBoundary tr;
            tr.depth = depth;
            tr.pb_params = block_means(eval_params(work, p_b, budget, depth, 0), blocks);
            tr.pe_params = block_means(eval_params(work, p_e, budget, depth, 1), blocks);
            int block_size = n / blocks;
            for (int b1 = 1; b1 + 1 < blocks; b1 += 2) {
                int b2 = b1 + 1;
                bool bob_ok = tr.pb_params[size_t(b1)] <= tr.pb_params[size_t(b2)];
                bool eve_ok = tr.pe_params[size_t(b1)] <= tr.pe_params[size_t(b2)];
                if (bob_ok && eve_ok) {
                    swap_column_blocks(work, block_size, b1, b2);
                    schedule.emplace_back(depth, b1);
                    tr.applied.push_back(b1);
                }
            }
            res.trace.push_back(std::move(tr));
        }
        apply_stage(work, t, m);
    }

    res.code.n = n;
    res.code.family = Family::abs;
    res.code.transform = std::move(work);
    res.code.provenance.seed = budget.base_seed;
    res.code.provenance.swaps = std::move(schedule);
    res.code.provenance.kernel_names.assign(size_t(m), "G2");
    res.code.provenance.kernel_sizes.assign(size_t(m), 2);
    return res;
}

CodeConstruction abs_transform(int m, const Bec& p_b, const Bec& p_e,
                               const AbsEvalBudget& budget) {
    return abs_transform_traced(m, p_b, p_e, budget).code;
}

} // namespace wiretap
