#pragma once

#include "wiretap/bitchannel.hpp"
#include "wiretap/channel.hpp"
#include "wiretap/design.hpp"
#include "wiretap/gf2.hpp"
#include "wiretap/transforms.hpp"

#include <vector>

namespace wiretap {

/// Ground-truth numbers for one (code, partition, channel pair) instance.
struct LeakageReport {
    double exact_leakage = 0.0;
    double bound1_natural = 0.0;
    double bound1_permuted = 0.0;
    double bound2 = 0.0;
    double exact_pe = 0.0;
    double pe_bound = 0.0;
};

/// Builds a design record from a raw partition (no budgets attached).
WiretapDesign design_from_partition(std::vector<int> set_a, std::vector<int> set_r,
                                    std::vector<int> set_b, int n);

/// Exact TVD between (message, Eve's observation) and the product of the
/// marginals, by full enumeration of messages, random fill bits and erasure
/// patterns. Frozen bits default to zero; a full-length vector can override
/// them (only positions in B are read). Budget: n <= 12, |A| + |R| <= 16.
double exact_leakage(const CodeConstruction& code, const WiretapDesign& design,
                     const Bec& p_e, const BitVec* frozen = nullptr);

/// Exact probability that successive solving fails on some decoded index,
/// over all 2^n erasure patterns (n <= 20). Frozen bits beyond the current
/// index are known and drop out of the interference span. With remark1 the
/// decoded set shrinks to A u {i in R : i <= max(A)}.
double exact_block_error(const CodeConstruction& code, const WiretapDesign& design,
                         const Bec& p_b, bool remark1 = false);

/// Exact conditional TVDs of the column-permuted transform, one per decode
/// position: 1 minus the exhaustive erasure parameter (n <= 20).
std::vector<double> exact_permuted_tvds(const CodeConstruction& code,
                                        const std::vector<int>& order,
                                        const Bec& p_e);

/// All report fields from exhaustive computations (no sampling anywhere).
LeakageReport make_leakage_report(const CodeConstruction& code,
                                  const WiretapDesign& design, const Bec& p_b,
                                  const Bec& p_e);

} // namespace wiretap
