#pragma once

#include "wiretap/channel.hpp"
#include "wiretap/gf2.hpp"
#include "wiretap/transforms.hpp"

#include <cstdint>
#include <vector>

namespace wiretap {

enum class ProfileMethod { recursion, exhaustive, monte_carlo };

const char* profile_method_name(ProfileMethod m);

/// Per-index erasure parameters of the n synthesized bit-channels of one
/// underlying BEC. Over a BEC every bit-channel is again a BEC, so
/// T_i = C_i = 1 - erasure[i] and Z_i = erasure[i].
struct BitChannelProfile {
    int n = 0;
    std::vector<double> erasure;
    ProfileMethod method = ProfileMethod::recursion;
    uint64_t samples = 0;            // monte-carlo only
    std::vector<double> std_err;     // monte-carlo only
    Bec channel;

    double tvd(int i) const { return 1.0 - erasure[size_t(i)]; }
    double bhattacharyya(int i) const { return erasure[size_t(i)]; }
    double capacity(int i) const { return 1.0 - erasure[size_t(i)]; }
};

/// Exact polar bit-channel parameters: m-fold application of
/// q -> (2q - q^2, q^2) in decode order. n = 2^m, m >= 0.
BitChannelProfile arikan_recursion(const Bec& eps, int m);

/// Exact profile of a Kronecker kernel stack, composing each kernel's
/// erasure map across stages in decode order.
BitChannelProfile kernel_recursion(const std::vector<KernelSpec>& kernels,
                                   const Bec& eps);

/// Exact profile of an arbitrary invertible transform by enumerating all
/// 2^n erasure patterns (n <= 20).
BitChannelProfile exhaustive_profile(const BinMatrix& transform, const Bec& eps);
BitChannelProfile exhaustive_profile(const CodeConstruction& code, const Bec& eps);

/// Monte-Carlo profile: i.i.d. Bernoulli(eps) erasure patterns, one
/// suffix-rank pass each. Sample j depends only on (seed, j), so the result
/// is bit-identical for any thread count (threads = 0 picks hardware).
BitChannelProfile mc_profile(const BinMatrix& transform, const Bec& eps,
                             uint64_t samples, uint64_t seed, int threads = 0);
BitChannelProfile mc_profile(const CodeConstruction& code, const Bec& eps,
                             uint64_t samples, uint64_t seed, int threads = 0);

/// As mc_profile but on the column-permuted transform: decode position j
/// carries original input order[j]. Entry j of the result is the erasure
/// parameter of position j in the new order.
BitChannelProfile permuted_profile(const CodeConstruction& code,
                                   const std::vector<int>& order,
                                   const Bec& eps, uint64_t samples,
                                   uint64_t seed, int threads = 0);

/// Exhaustive variant of permuted_profile (n <= 20).
BitChannelProfile permuted_exhaustive_profile(const CodeConstruction& code,
                                              const std::vector<int>& order,
                                              const Bec& eps);

} // namespace wiretap
