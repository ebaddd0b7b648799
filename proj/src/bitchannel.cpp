#include "wiretap/bitchannel.hpp"
#include "wiretap/rng.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace wiretap {

const char* profile_method_name(ProfileMethod m) {
    switch (m) {
        case ProfileMethod::recursion:   return "recursion";
        case ProfileMethod::exhaustive:  return "exhaustive";
        case ProfileMethod::monte_carlo: return "monte-carlo";
    }
    return "?";
}

BitChannelProfile arikan_recursion(const Bec& eps, int m) {
    if (m < 0) throw std::invalid_argument("arikan_recursion: m < 0");
    std::vector<double> cur{eps.erasure_prob};
    for (int t = 0; t < m; ++t) {
        std::vector<double> next(cur.size() * 2);
        for (size_t i = 0; i < cur.size(); ++i) {
            double q = cur[i];
            next[2 * i]     = 2.0 * q - q * q;
            next[2 * i + 1] = q * q;
        }
        cur = std::move(next);
    }
    BitChannelProfile p;
    p.n = int(cur.size());
    p.erasure = std::move(cur);
    p.method = ProfileMethod::recursion;
    p.channel = eps;
    return p;
}

BitChannelProfile kernel_recursion(const std::vector<KernelSpec>& kernels,
                                   const Bec& eps) {
    if (kernels.empty())
        throw std::invalid_argument("kernel_recursion: empty kernel list");
    std::vector<double> cur{eps.erasure_prob};
    for (const auto& k : kernels) {
        std::vector<double> next;
        next.reserve(cur.size() * size_t(k.size()));
        for (double q : cur) {
            auto f = k.erasure_map(q);
            next.insert(next.end(), f.begin(), f.end());
        }
        cur = std::move(next);
    }
    BitChannelProfile p;
    p.n = int(cur.size());
    p.erasure = std::move(cur);
    p.method = ProfileMethod::recursion;
    p.channel = eps;
    return p;
}

BitChannelProfile exhaustive_profile(const BinMatrix& transform, const Bec& eps) {
    int n = transform.rows();
    if (n > 20)
        throw std::invalid_argument("exhaustive_profile: n > 20");
    SuffixEngine engine(transform);
    SuffixWorkspace ws = engine.make_workspace();

    double q = eps.erasure_prob;
    std::vector<double> qpow(size_t(n) + 1, 1.0), ppow(size_t(n) + 1, 1.0);
    for (int i = 1; i <= n; ++i) {
        qpow[size_t(i)] = qpow[size_t(i) - 1] * q;
        ppow[size_t(i)] = ppow[size_t(i) - 1] * (1.0 - q);
    }

    std::vector<double> acc(size_t(n), 0.0);
    ErasurePattern pat(n);
    BitVec und(n);
    for (uint64_t mask = 0; mask < (uint64_t(1) << n); ++mask) {
        pat.data()[0] = mask;
        int w = std::popcount(mask);
        double prob = qpow[size_t(w)] * ppow[size_t(n - w)];
        if (prob == 0.0) continue;
        engine.profile(pat, ws, und);
        uint64_t bits = und.data()[0];
        while (bits) {
            int i = std::countr_zero(bits);
            bits &= bits - 1;
            acc[size_t(i)] += prob;
        }
    }

    BitChannelProfile p;
    p.n = n;
    p.erasure = std::move(acc);
    p.method = ProfileMethod::exhaustive;
    p.channel = eps;
    return p;
}

BitChannelProfile exhaustive_profile(const CodeConstruction& code, const Bec& eps) {
    return exhaustive_profile(code.transform, eps);
}

namespace {

// Erasure pattern of sample j: bit i erased iff hash(seed, j, i) < threshold.
inline void sample_pattern(uint64_t seed, uint64_t j, double q, int n,
                           ErasurePattern& pat) {
    uint64_t* w = pat.data();
    int words = pat.words();
    if (q <= 0.0) {
        for (int k = 0; k < words; ++k) w[k] = 0;
        return;
    }
    if (q >= 1.0) {
        for (int k = 0; k < words; ++k) w[k] = ~uint64_t(0);
        int r = n & 63;
        if (r) w[words - 1] &= (uint64_t(1) << r) - 1;
        return;
    }
    uint64_t thresh = uint64_t(q * 18446744073709551616.0);
    uint64_t key = mix2(seed, j);
    for (int k = 0; k < words; ++k) {
        uint64_t word = 0;
        int lim = std::min(64, n - k * 64);
        for (int b = 0; b < lim; ++b)
            if (mix2(key, uint64_t(k) * 64 + b) < thresh)
                word |= uint64_t(1) << b;
        w[k] = word;
    }
}

} // namespace

BitChannelProfile mc_profile(const BinMatrix& transform, const Bec& eps,
                             uint64_t samples, uint64_t seed, int threads) {
    if (samples < 1) throw std::invalid_argument("mc_profile: samples < 1");
    int n = transform.rows();
    SuffixEngine engine(transform);

    unsigned hw = std::thread::hardware_concurrency();
    int nthreads = threads > 0 ? threads : int(hw ? hw : 1);
    if (uint64_t(nthreads) > samples) nthreads = int(samples);

    std::vector<std::vector<uint64_t>> counts(
        size_t(nthreads), std::vector<uint64_t>(size_t(n), 0));

    auto worker = [&](int t) {
        uint64_t lo = samples * uint64_t(t) / uint64_t(nthreads);
        uint64_t hi = samples * uint64_t(t + 1) / uint64_t(nthreads);
        SuffixWorkspace ws = engine.make_workspace();
        ErasurePattern pat(n);
        BitVec und(n);
        auto& local = counts[size_t(t)];
        for (uint64_t j = lo; j < hi; ++j) {
            sample_pattern(seed, j, eps.erasure_prob, n, pat);
            engine.profile(pat, ws, und);
            const uint64_t* uw = und.data();
            for (int k = 0; k < und.words(); ++k) {
                uint64_t bits = uw[k];
                while (bits) {
                    int b = std::countr_zero(bits);
                    bits &= bits - 1;
                    ++local[size_t(k) * 64 + b];
                }
            }
        }
    };

    if (nthreads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(size_t(nthreads));
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }

    BitChannelProfile p;
    p.n = n;
    p.method = ProfileMethod::monte_carlo;
    p.samples = samples;
    p.channel = eps;
    p.erasure.resize(size_t(n));
    p.std_err.resize(size_t(n));
    for (int i = 0; i < n; ++i) {
        uint64_t c = 0;
        for (int t = 0; t < nthreads; ++t) c += counts[size_t(t)][size_t(i)];
        double e = double(c) / double(samples);
        p.erasure[size_t(i)] = e;
        p.std_err[size_t(i)] = std::sqrt(e * (1.0 - e) / double(samples));
    }
    return p;
}

BitChannelProfile mc_profile(const CodeConstruction& code, const Bec& eps,
                             uint64_t samples, uint64_t seed, int threads) {
    return mc_profile(code.transform, eps, samples, seed, threads);
}

BitChannelProfile permuted_profile(const CodeConstruction& code,
                                   const std::vector<int>& order,
                                   const Bec& eps, uint64_t samples,
                                   uint64_t seed, int threads) {
    return mc_profile(permute_columns(code.transform, order), eps, samples,
                      seed, threads);
}

BitChannelProfile permuted_exhaustive_profile(const CodeConstruction& code,
                                              const std::vector<int>& order,
                                              const Bec& eps) {
    return exhaustive_profile(permute_columns(code.transform, order), eps);
}

} // namespace wiretap
