#include "wiretap/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace wiretap {

WiretapDesign design_from_partition(std::vector<int> set_a, std::vector<int> set_r,
                                    std::vector<int> set_b, int n) {
    WiretapDesign d;
    d.set_a = std::move(set_a);
    d.set_r = std::move(set_r);
    d.set_b = std::move(set_b);
    std::sort(d.set_a.begin(), d.set_a.end());
    std::sort(d.set_r.begin(), d.set_r.end());
    std::sort(d.set_b.begin(), d.set_b.end());
    if (int(d.set_a.size() + d.set_r.size() + d.set_b.size()) != n)
        throw std::invalid_argument("design_from_partition: sets do not cover 1..n");
    std::vector<bool> seen(size_t(n), false);
    for (const auto* s : {&d.set_a, &d.set_r, &d.set_b})
        for (int i : *s) {
            if (i < 0 || i >= n || seen[size_t(i)])
                throw std::invalid_argument("design_from_partition: not a partition");
            seen[size_t(i)] = true;
        }
    d.k_e = int(d.set_a.size());
    d.k_b = d.k_e + int(d.set_r.size());
    d.secrecy_rate = n ? double(d.k_e) / n : 0.0;
    return d;
}

double exact_leakage(const CodeConstruction& code, const WiretapDesign& design,
                     const Bec& p_e, const BitVec* frozen) {
    int n = code.n;
    int k = int(design.set_a.size());
    int r = int(design.set_r.size());
    if (n > 12)
        throw std::invalid_argument("exact_leakage: n > 12");
    if (k + r > 16)
        throw std::invalid_argument("exact_leakage: |A| + |R| > 16");
    if (frozen && frozen->size() != n)
        throw std::invalid_argument("exact_leakage: frozen vector size mismatch");
    if (k == 0) return 0.0;

    double q = p_e.erasure_prob;
    std::vector<double> qpow(size_t(n) + 1, 1.0), ppow(size_t(n) + 1, 1.0);
    for (int i = 1; i <= n; ++i) {
        qpow[size_t(i)] = qpow[size_t(i) - 1] * q;
        ppow[size_t(i)] = ppow[size_t(i) - 1] * (1.0 - q);
    }

    // codewords for every (message, random fill) combination
    uint32_t base = 0;
    if (frozen)
        for (int i : design.set_b)
            if (frozen->get(i)) base |= uint32_t(1) << i;
    uint64_t mv_count = uint64_t(1) << (k + r);
    std::vector<uint32_t> codeword(mv_count);
    BitVec u(n);
    for (uint64_t mv = 0; mv < mv_count; ++mv) {
        uint64_t m = mv >> r;
        uint64_t v = mv & ((uint64_t(1) << r) - 1);
        for (int w = 0; w < u.words(); ++w) u.data()[w] = 0;
        u.data()[0] = base;
        for (int t = 0; t < k; ++t)
            if ((m >> t) & 1) u.set(design.set_a[size_t(t)], true);
        for (int t = 0; t < r; ++t)
            if ((v >> t) & 1) u.set(design.set_r[size_t(t)], true);
        BitVec x = mat_vec(code.transform, u);
        codeword[mv] = uint32_t(x.data()[0]);
    }

    // joint mass over (observation z, message m); z = (erasure mask, visible bits)
    double unit = 1.0 / double(mv_count);
    std::unordered_map<uint64_t, double> joint;
    std::unordered_map<uint64_t, std::pair<double, uint32_t>> zmass; // p(z), #messages seen
    joint.reserve(size_t(mv_count) * 4);
    uint32_t full = n == 32 ? ~uint32_t(0) : ((uint32_t(1) << n) - 1);
    for (uint32_t e = 0;; ++e) {
        int wgt = std::popcount(e);
        double pe_pat = qpow[size_t(wgt)] * ppow[size_t(n - wgt)];
        if (pe_pat > 0.0) {
            for (uint64_t mv = 0; mv < mv_count; ++mv) {
                uint32_t vis = codeword[mv] & ~e & full;
                uint64_t zkey = (uint64_t(e) << n) | vis;
                uint64_t key = (zkey << k) | (mv >> r);
                joint[key] += pe_pat * unit;
            }
        }
        if (e == full) break;
    }
    for (const auto& [key, p] : joint) {
        auto& zm = zmass[key >> k];
        zm.first += p;
        zm.second += 1;
    }

    double s = 0.0;
    double inv_msgs = 1.0 / double(uint64_t(1) << k);
    for (const auto& [key, p] : joint) {
        double pz = zmass[key >> k].first;
        s += std::abs(p - inv_msgs * pz);
    }
    for (const auto& [zkey, zm] : zmass) {
        uint32_t missing = uint32_t((uint64_t(1) << k) - zm.second);
        s += double(missing) * inv_msgs * zm.first;
    }
    return 0.5 * s;
}

double exact_block_error(const CodeConstruction& code, const WiretapDesign& design,
                         const Bec& p_b, bool remark1) {
    int n = code.n;
    if (n > 20)
        throw std::invalid_argument("exact_block_error: n > 20");

    // decoded indices whose failure counts as a block error
    std::vector<bool> check(size_t(n), false);
    if (remark1) {
        if (!design.set_a.empty()) {
            int imax = *std::max_element(design.set_a.begin(), design.set_a.end());
            for (int i : design.set_a) check[size_t(i)] = true;
            for (int i : design.set_r)
                if (i <= imax) check[size_t(i)] = true;
        }
    } else {
        for (int i : design.set_a) check[size_t(i)] = true;
        for (int i : design.set_r) check[size_t(i)] = true;
    }
    // unknown inputs: frozen bits are known and never interfere
    std::vector<bool> active(size_t(n), true);
    for (int i : design.set_b) active[size_t(i)] = false;

    if (!is_invertible(code.transform))
        throw std::invalid_argument("exact_block_error: singular transform");
    BinMatrix cols = transpose(code.transform);

    double q = p_b.erasure_prob;
    std::vector<double> qpow(size_t(n) + 1, 1.0), ppow(size_t(n) + 1, 1.0);
    for (int i = 1; i <= n; ++i) {
        qpow[size_t(i)] = qpow[size_t(i) - 1] * q;
        ppow[size_t(i)] = ppow[size_t(i) - 1] * (1.0 - q);
    }

    std::vector<uint32_t> slots(size_t(n), 0);
    double err = 0.0;
    uint64_t full = (uint64_t(1) << n) - 1;
    for (uint64_t e = 0; e <= full; ++e) {
        int wgt = std::popcount(e);
        double prob = qpow[size_t(wgt)] * ppow[size_t(n - wgt)];
        if (prob == 0.0) continue;
        uint32_t unerased = uint32_t(~e & full);
        uint32_t occupied = 0;
        bool error = false;
        for (int i = n - 1; i >= 0 && !error; --i) {
            if (!active[size_t(i)]) continue;
            uint32_t v = uint32_t(cols.row(i)[0]) & unerased;
            bool indep = false;
            while (v) {
                int p = 31 - std::countl_zero(v);
                if (!((occupied >> p) & 1u)) {
                    slots[size_t(p)] = v;
                    occupied |= uint32_t(1) << p;
                    indep = true;
                    break;
                }
                v ^= slots[size_t(p)];
            }
            if (!indep && check[size_t(i)]) error = true;
        }
        if (error) err += prob;
    }
    return err;
}

std::vector<double> exact_permuted_tvds(const CodeConstruction& code,
                                        const std::vector<int>& order,
                                        const Bec& p_e) {
    BitChannelProfile p = permuted_exhaustive_profile(code, order, p_e);
    std::vector<double> tvds(size_t(p.n));
    for (int i = 0; i < p.n; ++i) tvds[size_t(i)] = 1.0 - p.erasure[size_t(i)];
    return tvds;
}

LeakageReport make_leakage_report(const CodeConstruction& code,
                                  const WiretapDesign& design, const Bec& p_b,
                                  const Bec& p_e) {
    LeakageReport rep;
    BitChannelProfile eve = exhaustive_profile(code, p_e);
    BitChannelProfile bob = exhaustive_profile(code, p_b);

    rep.exact_leakage = exact_leakage(code, design, p_e);
    rep.exact_pe = exact_block_error(code, design, p_b);
    rep.bound2 = bound2_value(design.set_a, design.set_b, eve);
    std::vector<int> g = design.set_a;
    g.insert(g.end(), design.set_r.begin(), design.set_r.end());
    rep.pe_bound = pe_bound_value(g, bob);

    int n = code.n;
    // natural order over A u B (conditioning only on earlier A u B elements)
    std::vector<int> ab = design.set_a;
    ab.insert(ab.end(), design.set_b.begin(), design.set_b.end());
    std::sort(ab.begin(), ab.end());
    std::vector<int> order1 = ab;
    order1.insert(order1.end(), design.set_r.begin(), design.set_r.end());
    std::vector<double> tv1 = exact_permuted_tvds(code, order1, p_e);
    for (size_t j = 0; j < ab.size(); ++j) rep.bound1_natural += 0.5 * tv1[j];

    // frozen first, then message bits by increasing marginal TVD
    std::vector<int> a_sorted = design.set_a;
    std::stable_sort(a_sorted.begin(), a_sorted.end(), [&](int x, int y) {
        if (eve.tvd(x) != eve.tvd(y)) return eve.tvd(x) < eve.tvd(y);
        return x < y;
    });
    std::vector<int> order2 = design.set_b;
    order2.insert(order2.end(), a_sorted.begin(), a_sorted.end());
    order2.insert(order2.end(), design.set_r.begin(), design.set_r.end());
    std::vector<double> tv2 = exact_permuted_tvds(code, order2, p_e);
    size_t nab = design.set_b.size() + a_sorted.size();
    for (size_t j = 0; j < nab; ++j) rep.bound1_permuted += 0.5 * tv2[j];
    (void)n;
    return rep;
}

} // namespace wiretap
