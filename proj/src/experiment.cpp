#include "wiretap/experiment.hpp"
#include "wiretap/bitchannel.hpp"
#include "wiretap/rng.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <stdexcept>

namespace wiretap {

using ordered_json = nlohmann::ordered_json;

namespace {

bool is_pow2(int n) { return n >= 1 && (n & (n - 1)) == 0; }

int log2_exact(int n) {
    int m = 0;
    while ((1 << m) < n) ++m;
    return m;
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

FamilyConfig parse_family(const nlohmann::json& j) {
    FamilyConfig f;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        if (key == "name") f.family = family_from_name(it.value().get<std::string>());
        else if (key == "seed") f.seed = it.value().get<uint64_t>();
        else if (key == "kernels") f.kernels = it.value().get<std::vector<std::string>>();
        else if (key == "abs_mc_samples") f.abs_mc_samples = it.value().get<uint64_t>();
        else throw std::runtime_error("config: unknown family key '" + key + "'");
    }
    return f;
}

struct BuiltCode {
    CodeConstruction code;
    BitChannelProfile bob;
    BitChannelProfile eve;
    uint64_t mc_samples = 0;   // 0 when profiles are exact
};

// Kernel sequence for an MK row: configured kernels, padded with G2 up to n.
std::vector<KernelSpec> mk_kernels_for(const FamilyConfig& fam, int n,
                                       std::map<std::string, KernelSpec>& cache) {
    if (fam.kernels.empty())
        throw std::runtime_error("mk requires a kernel file (none configured)");
    std::vector<KernelSpec> ks;
    long prod = 1;
    for (const auto& name : fam.kernels) {
        if (name == "G2") {
            ks.push_back(KernelSpec::g2());
        } else {
            auto it = cache.find(name);
            if (it == cache.end())
                it = cache.emplace(name, load_kernel(name)).first;
            ks.push_back(it->second);
        }
        prod *= ks.back().size();
        if (prod > n) throw std::runtime_error("mk kernel product exceeds n");
    }
    while (prod < n) {
        ks.push_back(KernelSpec::g2());
        prod *= 2;
    }
    if (prod != n) throw std::runtime_error("mk kernel product does not divide n");
    return ks;
}

BuiltCode build_code(const ExperimentConfig& cfg, const FamilyConfig& fam, int n,
                     uint64_t row_seed, std::map<std::string, KernelSpec>& cache) {
    BuiltCode out;
    Bec wb(cfg.pb), we(cfg.pe);
    switch (fam.family) {
        case Family::polar: {
            if (!is_pow2(n) || n < 2) throw std::runtime_error("polar needs n = 2^m");
            out.code = polar_transform(log2_exact(n));
            out.bob = arikan_recursion(wb, log2_exact(n));
            out.eve = arikan_recursion(we, log2_exact(n));
            return out;
        }
        case Family::mk: {
            auto ks = mk_kernels_for(fam, n, cache);
            out.code = mk_transform(ks);
            out.bob = kernel_recursion(ks, wb);
            out.eve = kernel_recursion(ks, we);
            return out;
        }
        case Family::rm: {
            if (!is_pow2(n) || n < 2) throw std::runtime_error("rm needs n = 2^m");
            out.code = rm_transform(log2_exact(n));
            break;
        }
        case Family::abs: {
            if (!is_pow2(n) || n < 2) throw std::runtime_error("abs needs n = 2^m");
            AbsEvalBudget budget;
            budget.mc_samples = fam.abs_mc_samples;
            budget.base_seed = mix2(row_seed, 4);
            budget.threads = cfg.threads;
            out.code = abs_transform(log2_exact(n), wb, we, budget);
            break;
        }
        case Family::rl: {
            out.code = rl_transform(n, mix2(row_seed, 5));
            break;
        }
    }
    out.bob = mc_profile(out.code, wb, cfg.samples, mix2(row_seed, 1), cfg.threads);
    out.eve = mc_profile(out.code, we, cfg.samples, mix2(row_seed, 2), cfg.threads);
    out.mc_samples = cfg.samples;
    return out;
}

ordered_json profile_json(const BitChannelProfile& p) {
    ordered_json j;
    j["method"] = profile_method_name(p.method);
    j["samples"] = p.samples;
    j["erasure_prob"] = p.channel.erasure_prob;
    if (p.n <= 64) {
        j["erasure"] = p.erasure;
    } else {
        double mn = 1.0, mx = 0.0, mean = 0.0;
        for (double e : p.erasure) {
            mn = std::min(mn, e);
            mx = std::max(mx, e);
            mean += e;
        }
        j["erasure_summary"] = {{"min", mn}, {"max", mx}, {"mean", mean / p.n}};
    }
    return j;
}

ordered_json design_json(const WiretapDesign& d) {
    ordered_json j;
    j["variant"] = design_variant_name(d.variant);
    j["k_b"] = d.k_b;
    j["k_e"] = d.k_e;
    j["secrecy_rate"] = d.secrecy_rate;
    j["delta0"] = d.delta0;
    j["leakage_bound"] = d.leakage_bound;
    j["pe_bound"] = d.pe_bound;
    j["feasible"] = d.feasible;
    j["set_a"] = d.set_a;
    j["set_r"] = d.set_r;
    j["set_b"] = d.set_b;
    if (!d.order.empty()) j["order"] = d.order;
    return j;
}

ordered_json provenance_json(const CodeConstruction& c) {
    ordered_json j;
    j["family"] = family_name(c.family);
    j["seed"] = c.provenance.seed;
    j["kernel_names"] = c.provenance.kernel_names;
    j["column_weight_ordered"] = c.provenance.column_weight_ordered;
    ordered_json swaps = ordered_json::array();
    for (auto [depth, pos] : c.provenance.swaps)
        swaps.push_back({{"depth", depth}, {"pos", pos}});
    j["swaps"] = swaps;
    return j;
}

} // namespace

std::vector<FamilyConfig> default_families() {
    std::vector<FamilyConfig> fams(4);
    fams[0].family = Family::polar;
    fams[1].family = Family::rm;
    fams[2].family = Family::abs;
    fams[3].family = Family::rl;
    return fams;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    ExperimentConfig cfg;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        if (key == "schema_version") {
            if (it.value().get<int>() != kSchemaVersion)
                throw std::runtime_error("config: unsupported schema_version");
        } else if (key == "pb") cfg.pb = it.value().get<double>();
        else if (key == "pe") cfg.pe = it.value().get<double>();
        else if (key == "eps") cfg.eps = it.value().get<double>();
        else if (key == "delta") cfg.delta = it.value().get<double>();
        else if (key == "blocklengths") cfg.blocklengths = it.value().get<std::vector<int>>();
        else if (key == "families") {
            cfg.families.clear();
            for (const auto& f : it.value()) cfg.families.push_back(parse_family(f));
        } else if (key == "bounds") {
            cfg.bound1 = cfg.bound2 = false;
            for (const auto& b : it.value()) {
                std::string s = b.get<std::string>();
                if (s == "bound1") cfg.bound1 = true;
                else if (s == "bound2") cfg.bound2 = true;
                else throw std::runtime_error("config: unknown bound '" + s + "'");
            }
        } else if (key == "samples") cfg.samples = it.value().get<uint64_t>();
        else if (key == "seed") cfg.seed = it.value().get<uint64_t>();
        else if (key == "threads") cfg.threads = it.value().get<int>();
        else if (key == "conservative_z") cfg.conservative_z = it.value().get<double>();
        else throw std::runtime_error("config: unknown key '" + key + "'");
    }
    return cfg;
}

SweepResult run_sweep(const ExperimentConfig& config) {
    SweepResult result;
    std::map<std::string, KernelSpec> kernel_cache;
    std::vector<FamilyConfig> families =
        config.families.empty() ? default_families() : config.families;
    std::vector<int> lengths = config.blocklengths;
    std::sort(lengths.begin(), lengths.end());

    for (int n : lengths) {
        double cs = 0.0, upper = 0.0, lower = 0.0;
        std::string point_status = "ok";
        try {
            SecrecyOperatingPoint op(config.pb, config.pe, n, config.eps, config.delta);
            cs = secrecy_capacity(op);
            SecondOrderBounds so = second_order_bounds(op);
            upper = so.upper;
            lower = so.lower;
        } catch (const std::exception& e) {
            point_status = std::string("error: ") + e.what();
            for (auto& ch : point_status)
                if (ch == ',' || ch == '\n') ch = ';';
        }

        for (size_t fi = 0; fi < families.size(); ++fi) {
            const FamilyConfig& fam = families[fi];
            uint64_t row_seed = mix4(config.seed, uint64_t(fi), uint64_t(n), fam.seed);

            auto emit = [&](const char* variant, const WiretapDesign* d,
                            uint64_t samples, const std::string& status) {
                SweepRow row;
                row.n = n;
                row.family = family_name(fam.family);
                row.variant = variant;
                row.cs = cs;
                row.upper2nd = upper;
                row.lower2nd = lower;
                row.samples = samples;
                row.seed = row_seed;
                row.status = status;
                if (d) {
                    row.k_b = d->k_b;
                    row.k_e = d->k_e;
                    row.r_s = d->secrecy_rate;
                    row.pe_bound = d->pe_bound;
                    row.leakage_bound = d->leakage_bound;
                }
                result.rows.push_back(std::move(row));
            };

            if (point_status != "ok") {
                if (config.bound1) emit("bound1", nullptr, 0, point_status);
                if (config.bound2) emit("bound2", nullptr, 0, point_status);
                continue;
            }

            try {
                BuiltCode built = build_code(config, fam, n, row_seed, kernel_cache);
                SecrecyOperatingPoint op(config.pb, config.pe, n, config.eps, config.delta);
                if (config.bound1) {
                    Bound1Eval ev;
                    ev.samples = config.samples;
                    ev.seed = mix2(row_seed, 3);
                    ev.threads = config.threads;
                    WiretapDesign d1 = design_bound1(built.code, built.bob, built.eve,
                                                     op, ev, config.conservative_z);
                    emit("bound1", &d1, config.samples, "ok");
                }
                if (config.bound2) {
                    WiretapDesign d2 = design_bound2(built.bob, built.eve, op,
                                                     config.conservative_z);
                    emit("bound2", &d2, built.mc_samples, "ok");
                }
            } catch (const std::exception& e) {
                std::string status = std::string("skipped: ") + e.what();
                for (auto& ch : status)
                    if (ch == ',' || ch == '\n') ch = ';';
                if (config.bound1) emit("bound1", nullptr, 0, status);
                if (config.bound2) emit("bound2", nullptr, 0, status);
            }
        }
    }
    return result;
}

std::string sweep_to_csv(const SweepResult& result) {
    std::string csv =
        "n,family,variant,k_b,k_e,R_s,pe_bound,leakage_bound,cs,upper2nd,"
        "lower2nd,samples,seed,status\n";
    for (const auto& r : result.rows) {
        csv += std::to_string(r.n) + ',' + r.family + ',' + r.variant + ',' +
               std::to_string(r.k_b) + ',' + std::to_string(r.k_e) + ',' +
               fmt_double(r.r_s) + ',' + fmt_double(r.pe_bound) + ',' +
               fmt_double(r.leakage_bound) + ',' + fmt_double(r.cs) + ',' +
               fmt_double(r.upper2nd) + ',' + fmt_double(r.lower2nd) + ',' +
               std::to_string(r.samples) + ',' + std::to_string(r.seed) + ',' +
               r.status + '\n';
    }
    return csv;
}

DesignReport run_design(const ExperimentConfig& config, Family family, int n) {
    std::map<std::string, KernelSpec> kernel_cache;
    std::vector<FamilyConfig> families =
        config.families.empty() ? default_families() : config.families;
    FamilyConfig fam;
    bool found = false;
    for (size_t fi = 0; fi < families.size(); ++fi)
        if (families[fi].family == family) {
            fam = families[fi];
            found = true;
            break;
        }
    if (!found) {
        fam.family = family;
    }
    uint64_t row_seed = mix4(config.seed, uint64_t(0xD0), uint64_t(n), fam.seed);
    BuiltCode built = build_code(config, fam, n, row_seed, kernel_cache);
    SecrecyOperatingPoint op(config.pb, config.pe, n, config.eps, config.delta);

    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["tool_version"] = kToolVersion;
    j["config"] = {{"pb", config.pb},   {"pe", config.pe},
                   {"eps", config.eps}, {"delta", config.delta},
                   {"n", n},            {"family", family_name(family)},
                   {"samples", config.samples}, {"seed", config.seed},
                   {"conservative_z", config.conservative_z}};
    j["provenance"] = provenance_json(built.code);
    j["profiles"] = {{"bob", profile_json(built.bob)},
                     {"eve", profile_json(built.eve)}};

    bool all_feasible = true;
    ordered_json designs = ordered_json::array();
    if (config.bound2) {
        WiretapDesign d2 = design_bound2(built.bob, built.eve, op, config.conservative_z);
        designs.push_back(design_json(d2));
        all_feasible = all_feasible && d2.feasible;
    }
    if (config.bound1) {
        Bound1Eval ev;
        ev.samples = config.samples;
        ev.seed = mix2(row_seed, 3);
        ev.threads = config.threads;
        WiretapDesign d1 =
            design_bound1(built.code, built.bob, built.eve, op, ev, config.conservative_z);
        designs.push_back(design_json(d1));
        all_feasible = all_feasible && d1.feasible;
    }
    j["designs"] = designs;

    SecondOrderBounds so = second_order_bounds(op);
    j["second_order"] = {{"cs", secrecy_capacity(op)},
                         {"upper", so.upper},
                         {"lower", so.lower},
                         {"negative_tail", so.negative_tail},
                         {"log_terms_dropped", true}};

    DesignReport rep;
    rep.json = j.dump(2) + "\n";
    rep.feasible = all_feasible;
    return rep;
}

OracleSuiteResult run_oracle_suite(const OracleSuiteConfig& config) {
    if (config.n > 12)
        throw std::invalid_argument("oracle suite: n > 12 exceeds the exact-leakage budget");
    if (!is_pow2(config.n) || config.n < 2)
        throw std::invalid_argument("oracle suite: n must be a power of two >= 2");
    if (config.cases < 0)
        throw std::invalid_argument("oracle suite: negative case count");

    CodeConstruction code = polar_transform(log2_exact(config.n));
    ordered_json cases = ordered_json::array();
    bool all_pass = true;
    const double slack = 1e-9;

    for (int c = 0; c < config.cases; ++c) {
        std::vector<int> a, r, b;
        for (int i = 0; i < config.n; ++i) {
            switch (mix3(config.seed, uint64_t(c), uint64_t(i)) % 3) {
                case 0: a.push_back(i); break;
                case 1: r.push_back(i); break;
                default: b.push_back(i); break;
            }
        }
        WiretapDesign d = design_from_partition(a, r, b, config.n);
        ordered_json jc;
        jc["case"] = c;
        jc["set_a"] = d.set_a;
        jc["set_r"] = d.set_r;
        jc["set_b"] = d.set_b;
        ordered_json evals = ordered_json::array();
        for (double pe : config.pe_grid) {
            LeakageReport rep = make_leakage_report(code, d, Bec(config.pb), Bec(pe));
            bool chain = rep.exact_leakage <= rep.bound1_natural + slack &&
                         rep.bound1_natural <= rep.bound2 + slack &&
                         rep.exact_leakage <= rep.bound1_permuted + slack;
            bool pe_ok = rep.exact_pe <= rep.pe_bound + slack;
            all_pass = all_pass && chain && pe_ok;
            evals.push_back({{"pe", pe},
                             {"exact_leakage", rep.exact_leakage},
                             {"bound1_natural", rep.bound1_natural},
                             {"bound1_permuted", rep.bound1_permuted},
                             {"bound2", rep.bound2},
                             {"exact_pe", rep.exact_pe},
                             {"pe_bound", rep.pe_bound},
                             {"chain_ok", chain},
                             {"pe_ok", pe_ok}});
        }
        jc["evals"] = evals;
        cases.push_back(std::move(jc));
    }

    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["tool_version"] = kToolVersion;
    j["config"] = {{"n", config.n},
                   {"cases", config.cases},
                   {"pb", config.pb},
                   {"pe_grid", config.pe_grid},
                   {"seed", config.seed}};
    j["cases"] = cases;
    j["all_pass"] = all_pass;
    j["vacuous"] = config.cases == 0;

    OracleSuiteResult res;
    res.json = j.dump(2) + "\n";
    res.all_pass = all_pass;
    res.cases_run = config.cases;
    return res;
}

std::string run_kernel_analysis(const std::string& kernel_path) {
    KernelSpec k = load_kernel(kernel_path);
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["tool_version"] = kToolVersion;
    j["name"] = k.name();
    j["size"] = k.size();
    ordered_json bits = ordered_json::array();
    for (int i = 0; i < k.size(); ++i) {
        ordered_json jb;
        jb["index"] = i;
        jb["poly_coeffs"] = k.erasure_polynomial(i);
        std::vector<int64_t> counts(size_t(k.size()) + 1);
        for (int w = 0; w <= k.size(); ++w) counts[size_t(w)] = k.undecodable_count(i, w);
        jb["undecodable_weight_counts"] = counts;
        bits.push_back(std::move(jb));
    }
    j["bit_channels"] = bits;
    ordered_json grid = ordered_json::array();
    for (int t = 0; t <= 10; ++t) {
        double q = t / 10.0;
        grid.push_back({{"q", q}, {"f", k.erasure_map(q)}});
    }
    j["erasure_grid"] = grid;
    return j.dump(2) + "\n";
}

} // namespace wiretap
