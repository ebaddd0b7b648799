#include "wiretap/design.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace wiretap {

SecrecyOperatingPoint::SecrecyOperatingPoint(double pb, double pe, int n_,
                                             double e, double d)
    : p_b(pb), p_e(pe), n(n_), eps(e), delta(d) {
    if (!(pb >= 0.0 && pb <= 1.0 && pe >= 0.0 && pe <= 1.0))
        throw std::invalid_argument("SecrecyOperatingPoint: probabilities outside [0,1]");
    if (!(pb < pe))
        throw std::invalid_argument("SecrecyOperatingPoint: requires p_b < p_e");
    if (n_ < 1) throw std::invalid_argument("SecrecyOperatingPoint: n < 1");
    if (!(e > 0.0 && e < 1.0 && d > 0.0 && d < 1.0))
        throw std::invalid_argument("SecrecyOperatingPoint: eps, delta must be in (0,1)");
}

const char* design_variant_name(DesignVariant v) {
    switch (v) {
        case DesignVariant::bound1:     return "bound1";
        case DesignVariant::bound2:     return "bound2";
        case DesignVariant::asymptotic: return "asymptotic";
    }
    return "?";
}

namespace {

// Point estimates widened by z standard errors (no-op for exact profiles).
std::vector<double> adjusted_erasure(const BitChannelProfile& p, double z, int sign) {
    std::vector<double> v = p.erasure;
    if (z > 0.0 && !p.std_err.empty())
        for (size_t i = 0; i < v.size(); ++i)
            v[i] = std::min(1.0, std::max(0.0, v[i] + sign * z * p.std_err[i]));
    return v;
}

std::vector<int> sorted_indices(const std::vector<double>& key) {
    std::vector<int> idx(key.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return key[size_t(a)] < key[size_t(b)]; });
    return idx;
}

} // namespace

WiretapDesign design_bound2(const BitChannelProfile& bob,
                            const BitChannelProfile& eve,
                            const SecrecyOperatingPoint& op,
                            double conservative_z) {
    if (bob.n != eve.n || bob.n != op.n)
        throw std::invalid_argument("design_bound2: blocklength mismatch");
    int n = op.n;
    // conservative mode: Bob's channels look worse, Eve's less erased
    std::vector<double> zb = adjusted_erasure(bob, conservative_z, +1);
    std::vector<double> ee = adjusted_erasure(eve, conservative_z, -1);
    std::vector<double> te(size_t(n), 0.0);
    for (int i = 0; i < n; ++i) te[size_t(i)] = 1.0 - ee[size_t(i)];

    std::vector<int> ib = sorted_indices(zb);
    int k_b = 0;
    double zsum = 0.0, pe_bound = 0.0;
    for (int j = 0; j < n; ++j) {
        zsum += zb[size_t(ib[size_t(j)])];
        if (zsum < op.eps) { k_b = j + 1; pe_bound = zsum; }
        else break;
    }

    std::vector<int> g(ib.begin(), ib.begin() + k_b);
    std::vector<int> b_set(ib.begin() + k_b, ib.end());

    double delta0 = 0.0;
    for (int i : b_set) delta0 += 0.5 * te[size_t(i)];

    std::vector<double> te_in_g(g.size(), 0.0);
    for (size_t j = 0; j < g.size(); ++j) te_in_g[j] = te[size_t(g[j])];
    std::vector<int> ie_local = sorted_indices(te_in_g);  // positions within g

    int k_e = 0;
    double leakage = delta0;
    if (delta0 <= op.delta) {
        double tsum = 0.0;
        for (size_t j = 0; j < g.size(); ++j) {
            tsum += 0.5 * te_in_g[size_t(ie_local[j])];
            if (delta0 + tsum < op.delta) { k_e = int(j) + 1; leakage = delta0 + tsum; }
            else break;
        }
    }

    WiretapDesign d;
    d.variant = DesignVariant::bound2;
    d.set_a.reserve(size_t(k_e));
    for (int j = 0; j < k_e; ++j) d.set_a.push_back(g[size_t(ie_local[size_t(j)])]);
    for (size_t j = size_t(k_e); j < g.size(); ++j)
        d.set_r.push_back(g[size_t(ie_local[j])]);
    d.set_b = b_set;
    std::sort(d.set_a.begin(), d.set_a.end());
    std::sort(d.set_r.begin(), d.set_r.end());
    std::sort(d.set_b.begin(), d.set_b.end());
    d.k_b = k_b;
    d.k_e = k_e;
    d.secrecy_rate = double(k_e) / n;
    d.delta0 = delta0;
    d.leakage_bound = leakage;
    d.pe_bound = pe_bound;
    d.feasible = k_e >= 1 && leakage < op.delta && pe_bound < op.eps;
    return d;
}

WiretapDesign design_bound1(const CodeConstruction& code,
                            const BitChannelProfile& bob,
                            const BitChannelProfile& eve,
                            const SecrecyOperatingPoint& op,
                            const Bound1Eval& eval,
                            double conservative_z) {
    if (bob.n != eve.n || bob.n != op.n || code.n != op.n)
        throw std::invalid_argument("design_bound1: blocklength mismatch");
    int n = op.n;
    std::vector<double> zb = adjusted_erasure(bob, conservative_z, +1);
    std::vector<double> ee = adjusted_erasure(eve, conservative_z, -1);
    std::vector<double> te(size_t(n), 0.0);
    for (int i = 0; i < n; ++i) te[size_t(i)] = 1.0 - ee[size_t(i)];

    // stage 1 as in design_bound2: fix G and B
    std::vector<int> ib = sorted_indices(zb);
    int k_b = 0;
    double zsum = 0.0, pe_bound = 0.0;
    for (int j = 0; j < n; ++j) {
        zsum += zb[size_t(ib[size_t(j)])];
        if (zsum < op.eps) { k_b = j + 1; pe_bound = zsum; }
        else break;
    }
    std::vector<int> g(ib.begin(), ib.begin() + k_b);
    std::vector<int> b_set(ib.begin() + k_b, ib.end());
    std::sort(b_set.begin(), b_set.end());

    // g sorted by increasing marginal TVD, ties by natural index
    std::vector<int> g_sorted = g;
    std::stable_sort(g_sorted.begin(), g_sorted.end(), [&](int a, int b) {
        if (te[size_t(a)] != te[size_t(b)]) return te[size_t(a)] < te[size_t(b)];
        return a < b;
    });

    std::vector<int> order;
    order.reserve(size_t(n));
    order.insert(order.end(), b_set.begin(), b_set.end());
    order.insert(order.end(), g_sorted.begin(), g_sorted.end());

    BitChannelProfile cond =
        eval.samples == 0
            ? permuted_exhaustive_profile(code, order, Bec(op.p_e))
            : permuted_profile(code, order, Bec(op.p_e), eval.samples,
                               eval.seed, eval.threads);
    std::vector<double> pe_tilde = adjusted_erasure(cond, conservative_z, -1);

    int nb = int(b_set.size());
    double delta0 = 0.0;
    for (int j = 0; j < nb; ++j) delta0 += 0.5 * (1.0 - pe_tilde[size_t(j)]);

    int k_e = 0;
    double leakage = delta0;
    if (delta0 <= op.delta) {
        double tsum = 0.0;
        for (int j = 0; j < k_b; ++j) {
            tsum += 0.5 * (1.0 - pe_tilde[size_t(nb + j)]);
            if (delta0 + tsum < op.delta) { k_e = j + 1; leakage = delta0 + tsum; }
            else break;
        }
    }

    WiretapDesign d;
    d.variant = DesignVariant::bound1;
    d.set_a.assign(g_sorted.begin(), g_sorted.begin() + k_e);
    d.set_r.assign(g_sorted.begin() + k_e, g_sorted.end());
    d.set_b = b_set;
    std::sort(d.set_a.begin(), d.set_a.end());
    std::sort(d.set_r.begin(), d.set_r.end());
    std::sort(d.set_b.begin(), d.set_b.end());
    d.k_b = k_b;
    d.k_e = k_e;
    d.secrecy_rate = double(k_e) / n;
    d.delta0 = delta0;
    d.leakage_bound = leakage;
    d.pe_bound = pe_bound;
    d.order = std::move(order);
    d.feasible = k_e >= 1 && leakage < op.delta && pe_bound < op.eps;
    return d;
}

WiretapDesign design_asymptotic(const BitChannelProfile& bob,
                                const BitChannelProfile& eve, double beta,
                                double delta_n) {
    if (bob.n != eve.n)
        throw std::invalid_argument("design_asymptotic: blocklength mismatch");
    if (!(beta > 0.0 && beta < 0.5))
        throw std::invalid_argument("design_asymptotic: beta outside (0, 1/2)");
    int n = bob.n;
    double z_thresh = std::exp2(-std::pow(double(n), beta)) / n;

    WiretapDesign d;
    d.variant = DesignVariant::asymptotic;
    double leak = 0.0;
    for (int i = 0; i < n; ++i) {
        bool reliable = bob.erasure[size_t(i)] < z_thresh;
        bool secure = eve.tvd(i) <= delta_n;
        if (secure) leak += eve.tvd(i);
        if (secure && reliable) d.set_a.push_back(i);
        else if (!secure) d.set_r.push_back(i);
        else d.set_b.push_back(i);
    }
    d.k_e = int(d.set_a.size());
    d.k_b = d.k_e + int(d.set_r.size());
    d.secrecy_rate = double(d.k_e) / n;
    d.leakage_bound = leak;
    for (int i : d.set_b) d.delta0 += 0.5 * eve.tvd(i);
    for (int i : d.set_a) d.pe_bound += bob.erasure[size_t(i)];
    for (int i : d.set_r) d.pe_bound += bob.erasure[size_t(i)];
    d.feasible = d.k_e >= 1;
    return d;
}

double bound2_value(const std::vector<int>& set_a, const std::vector<int>& set_b,
                    const BitChannelProfile& eve) {
    double s = 0.0;
    for (int i : set_a) s += eve.tvd(i);
    for (int i : set_b) s += eve.tvd(i);
    return 0.5 * s;
}

double pe_bound_value(const std::vector<int>& g, const BitChannelProfile& bob) {
    double s = 0.0;
    for (int i : g) s += bob.erasure[size_t(i)];
    return s;
}

double pe_bound_remark1(const std::vector<int>& set_a,
                        const std::vector<int>& set_r,
                        const BitChannelProfile& bob) {
    if (set_a.empty()) return 0.0;
    int imax = *std::max_element(set_a.begin(), set_a.end());
    double s = 0.0;
    for (int i : set_a) s += bob.erasure[size_t(i)];
    for (int i : set_r)
        if (i <= imax) s += bob.erasure[size_t(i)];
    return s;
}

double secrecy_capacity(double p_b, double p_e) {
    if (p_b > p_e)
        throw std::invalid_argument("secrecy_capacity: p_b > p_e");
    return p_e - p_b;
}

double secrecy_capacity(const SecrecyOperatingPoint& op) {
    return secrecy_capacity(op.p_b, op.p_e);
}

double qfunc_inv(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("qfunc_inv: p outside (0,1)");
    auto q = [](double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); };
    double lo = -10.0, hi = 10.0;
    while (hi - lo > 1e-10) {
        double mid = 0.5 * (lo + hi);
        if (q(mid) > p) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

SecondOrderBounds second_order_bounds(const SecrecyOperatingPoint& op) {
    if (!(op.eps + op.delta < 1.0))
        throw std::invalid_argument("second_order_bounds: eps + delta >= 1");
    double cs = op.p_e - op.p_b;
    double vb = op.p_b * (1.0 - op.p_b);
    double ve = op.p_e * (1.0 - op.p_e);
    double vc = cs * (1.0 - cs);
    double rn = std::sqrt(1.0 / op.n);
    SecondOrderBounds b;
    b.upper = cs - std::sqrt(vc) * rn * qfunc_inv(op.eps + op.delta);
    b.lower = cs - std::sqrt(vb) * rn * qfunc_inv(op.eps) -
              std::sqrt(ve) * rn * qfunc_inv(op.delta);
    b.negative_tail = op.eps + op.delta > 0.5;
    return b;
}

} // namespace wiretap
