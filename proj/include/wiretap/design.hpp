#pragma once

#include "wiretap/bitchannel.hpp"
#include "wiretap/channel.hpp"
#include "wiretap/transforms.hpp"

#include <cstdint>
#include <vector>

namespace wiretap {

/// One design problem: Bob's and Eve's erasure probabilities, blocklength,
/// error budget eps and leakage budget delta. Requires p_b < p_e.
struct SecrecyOperatingPoint {
    double p_b, p_e;
    int n;
    double eps, delta;
    SecrecyOperatingPoint(double pb, double pe, int n_, double e, double d);
};

enum class DesignVariant { bound1, bound2, asymptotic };

const char* design_variant_name(DesignVariant v);

/// The partition (A, R, B): message indices, random-fill indices, frozen
/// indices. Index sets are stored sorted ascending.
struct WiretapDesign {
    std::vector<int> set_a, set_r, set_b;
    int k_b = 0;                 // |A| + |R|
    int k_e = 0;                 // |A|
    double secrecy_rate = 0.0;   // |A| / n
    double delta0 = 0.0;         // frozen-set leakage term
    double leakage_bound = 0.0;
    double pe_bound = 0.0;
    DesignVariant variant = DesignVariant::bound2;
    std::vector<int> order;      // decode-order permutation (bound1 only)
    bool feasible = false;       // k_e >= 1 with both budgets met strictly
};

/// Greedy two-stage selection on marginal bit-channel parameters:
/// largest G with Bhattacharyya sum < eps, then largest A within G with
/// delta0 + half the TVD sum < delta. Ties broken by natural index.
/// conservative_z > 0 widens Monte-Carlo point estimates by z standard
/// errors before thresholding.
WiretapDesign design_bound2(const BitChannelProfile& bob,
                            const BitChannelProfile& eve,
                            const SecrecyOperatingPoint& op,
                            double conservative_z = 0.0);

/// How design_bound1 estimates the sequential-conditioning TVDs: exhaustive
/// enumeration when samples == 0 (n <= 20), Monte-Carlo otherwise.
struct Bound1Eval {
    uint64_t samples = 100000;
    uint64_t seed = 0;
    int threads = 0;
};

/// Bound-2 stages fix G and B; the decode order is then rebuilt as (B in
/// natural order, then G by increasing marginal TVD) and the selection of A
/// reruns on the conditional TVDs of that order.
WiretapDesign design_bound1(const CodeConstruction& code,
                            const BitChannelProfile& bob,
                            const BitChannelProfile& eve,
                            const SecrecyOperatingPoint& op,
                            const Bound1Eval& eval,
                            double conservative_z = 0.0);

/// Threshold-set selection: A is the set reliable for Bob
/// (Z < 2^(-n^beta)/n) and secure against Eve (T <= delta_n); R is the
/// complement of the secure set, B the rest. The reported leakage bound is
/// the un-halved TVD sum over the secure set.
WiretapDesign design_asymptotic(const BitChannelProfile& bob,
                                const BitChannelProfile& eve, double beta,
                                double delta_n);

/// Half the TVD sum over A u B on Eve's profile.
double bound2_value(const std::vector<int>& set_a, const std::vector<int>& set_b,
                    const BitChannelProfile& eve);

/// Bhattacharyya union bound over the decoded set G.
double pe_bound_value(const std::vector<int>& g, const BitChannelProfile& bob);

/// Same, restricted to A u {i in R : i <= max(A)}; indices past the last
/// message bit are never decoded.
double pe_bound_remark1(const std::vector<int>& set_a,
                        const std::vector<int>& set_r,
                        const BitChannelProfile& bob);

double secrecy_capacity(double p_b, double p_e);
double secrecy_capacity(const SecrecyOperatingPoint& op);

struct SecondOrderBounds {
    double upper = 0.0;
    double lower = 0.0;
    bool negative_tail = false;  // eps + delta > 1/2, inverse tail < 0
};

/// Gaussian-approximation benchmarks on the maximal secrecy rate, with the
/// O(log n / n) terms dropped. Requires eps + delta < 1.
SecondOrderBounds second_order_bounds(const SecrecyOperatingPoint& op);

/// Inverse of Q(x) = P(N(0,1) > x), bisection on [-10, 10] to 1e-10.
double qfunc_inv(double p);

} // namespace wiretap
