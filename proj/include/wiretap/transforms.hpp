#pragma once

#include "wiretap/channel.hpp"
#include "wiretap/gf2.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace wiretap {

/// Polarizing kernel with its precomputed erasure behaviour: for every
/// output-erasure pattern of the kernel, which inputs stay solvable.
class KernelSpec {
public:
    /// Builds the decodability table from the matrix (oriented so that
    /// natural decode order polarizes). Rejects singular matrices and
    /// sizes above 20 (table blow-up).
    static KernelSpec from_matrix(const BinMatrix& m, std::string name);

    /// Arikan kernel in the encoder orientation used here: rows 11 / 01.
    static const KernelSpec& g2();

    int size() const { return size_; }
    const std::string& name() const { return name_; }
    const BinMatrix& matrix() const { return matrix_; }

    /// Bitmask of decodable inputs under a given output-erasure mask.
    uint32_t decodable_mask(uint32_t erasure_mask) const {
        return table_[erasure_mask];
    }

    /// Number of erasure patterns of weight w under which input i is lost.
    int64_t undecodable_count(int i, int w) const {
        return counts_[size_t(i) * (size_ + 1) + w];
    }

    /// Erasure parameters of the kernel's bit-channels when each output is
    /// erased independently with probability q: f_i(q).
    std::vector<double> erasure_map(double q) const;

    /// f_i as monomial coefficients (index = power of q).
    std::vector<int64_t> erasure_polynomial(int i) const;

private:
    int size_ = 0;
    std::string name_;
    BinMatrix matrix_;
    std::vector<uint32_t> table_;   // per erasure mask: decodable inputs
    std::vector<int64_t> counts_;   // (i, w) -> undecodable pattern count
};

/// Kernel file: first line is the size l, then l lines of l characters
/// from {0,1}. Rejects singular matrices.
KernelSpec load_kernel(const std::string& path);
void save_kernel(const BinMatrix& m, const std::string& path);

enum class Family { polar, rm, mk, abs, rl };

const char* family_name(Family f);
Family family_from_name(const std::string& s);

/// How construction-time bit-channel evaluation is performed for ABS:
/// exhaustive pattern enumeration up to exhaustive_max_n, Monte-Carlo
/// otherwise, seeded from (base_seed, depth, channel).
struct AbsEvalBudget {
    int exhaustive_max_n = 16;
    uint64_t mc_samples = 20000;
    uint64_t base_seed = 0;
    int threads = 0;
};

struct Provenance {
    uint64_t seed = 0;
    std::vector<std::string> kernel_names;
    std::vector<int> kernel_sizes;
    /// ABS swap schedule: (depth, pos) = virtual channels (pos, pos+1)
    /// swapped after `depth` butterfly stages were applied (0-based pos).
    std::vector<std::pair<int, int>> swaps;
    bool column_weight_ordered = false;
    /// Column permutation applied to the base construction; position j of
    /// the decode order carries base column decode_order[j]. Empty = natural.
    std::vector<int> decode_order;
};

/// A code family instance: the n x n encoder transform (decode order baked
/// into column order) plus how it was built.
struct CodeConstruction {
    int n = 0;
    Family family = Family::polar;
    BinMatrix transform;
    Provenance provenance;
};

/// Arikan construction, n = 2^m: the Kronecker power oriented so that
/// bit-channel 0 is the degraded one (n=2 profile over BEC(p) is
/// (2p-p^2, p^2)). No bit-reversal.
CodeConstruction polar_transform(int m);

/// Polar transform with decode order re-sorted by increasing Hamming weight
/// of the generator directions (stable ties by natural index).
CodeConstruction rm_transform(int m);

/// Kronecker product of the given kernels, in order (leftmost = outermost
/// polarization stage). n is the product of the kernel sizes.
CodeConstruction mk_transform(const std::vector<KernelSpec>& kernels);

/// Random Bernoulli invertible transform, natural decode order.
CodeConstruction rl_transform(int n, uint64_t seed);

/// Trace of one ABS boundary decision: block-averaged erasure parameters of
/// the partial construction for both channels, and the swaps applied.
struct AbsBoundary {
    int depth = 0;                 // stages applied when the decision was made
    std::vector<double> pb_params; // one per virtual channel (block)
    std::vector<double> pe_params;
    std::vector<int> applied;      // first block index of each applied swap
};

struct AbsBuildResult {
    CodeConstruction code;
    std::vector<AbsBoundary> trace;
};

/// Polar construction with adjacent virtual-channel swaps between butterfly
/// stages, applied only when both channels' parameters are non-increasing
/// across the pair (over BEC this is the both-channel polarization-speed
/// criterion). Deterministic given the budget's seed.
CodeConstruction abs_transform(int m, const Bec& p_b, const Bec& p_e,
                               const AbsEvalBudget& budget);
AbsBuildResult abs_transform_traced(int m, const Bec& p_b, const Bec& p_e,
                                    const AbsEvalBudget& budget);

} // namespace wiretap
