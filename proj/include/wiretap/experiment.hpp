#pragma once

#include "wiretap/design.hpp"
#include "wiretap/oracle.hpp"
#include "wiretap/transforms.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace wiretap {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

struct FamilyConfig {
    Family family = Family::polar;
    uint64_t seed = 0;                 // extra entropy folded into row seeds
    std::vector<std::string> kernels;  // mk: leading kernel files, padded with G2
    uint64_t abs_mc_samples = 20000;
};

/// One batch run: operating point, family list, blocklengths, bound
/// variants, sampling budget. CLI flags override config-file keys.
struct ExperimentConfig {
    double pb = 0.05;
    double pe = 0.3;
    double eps = 0.001;
    double delta = 0.01;
    std::vector<int> blocklengths{128, 256, 512, 1024};
    std::vector<FamilyConfig> families;   // empty = polar, rm, abs, rl (+ mk if kernels given)
    bool bound1 = true;
    bool bound2 = true;
    uint64_t samples = 100000;
    uint64_t seed = 1;
    int threads = 0;
    double conservative_z = 0.0;
};

/// Parse a JSON config file; unknown keys are rejected.
ExperimentConfig load_config(const std::string& path);

/// Default family list used when the config names none.
std::vector<FamilyConfig> default_families();

struct SweepRow {
    int n = 0;
    std::string family;
    std::string variant;
    int k_b = 0;
    int k_e = 0;
    double r_s = 0.0;
    double pe_bound = 0.0;
    double leakage_bound = 0.0;
    double cs = 0.0;
    double upper2nd = 0.0;
    double lower2nd = 0.0;
    uint64_t samples = 0;
    uint64_t seed = 0;
    std::string status = "ok";   // ok | skipped:<reason> | error:<reason>
};

struct SweepResult {
    std::vector<SweepRow> rows;
};

/// One row per (n, family, variant), rows in deterministic sorted order.
SweepResult run_sweep(const ExperimentConfig& config);
std::string sweep_to_csv(const SweepResult& result);

/// Single-point design report (JSON text): design, profile summaries,
/// bound values, second-order benchmarks, provenance. `feasible` is true
/// only if every requested variant met both budgets.
struct DesignReport {
    std::string json;
    bool feasible = false;
};
DesignReport run_design(const ExperimentConfig& config, Family family, int n);

struct OracleSuiteConfig {
    int n = 8;
    int cases = 50;
    double pb = 0.1;
    std::vector<double> pe_grid{0.3, 0.5, 0.8};
    uint64_t seed = 7;
};

struct OracleSuiteResult {
    std::string json;
    bool all_pass = false;
    int cases_run = 0;
};

/// Random-partition ground-truth suite: checks the leakage bound chain
/// (exact <= bound1_natural <= bound2, exact <= bound1_permuted) and the
/// error bound (exact_pe <= pe_bound) on every case. Budget: n <= 12.
OracleSuiteResult run_oracle_suite(const OracleSuiteConfig& config);

/// Kernel analysis (JSON text): erasure polynomial per input plus sampled
/// f_i(q) values on a q-grid.
std::string run_kernel_analysis(const std::string& kernel_path);

} // namespace wiretap
