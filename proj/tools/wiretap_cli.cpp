// Batch front-end: wiretap code design over binary erasure wiretap channels.
// Subcommands: design | sweep | oracle | kernel.
// Exit codes: 0 success, 2 invalid input, 3 ran but infeasible / checks failed.

#include "wiretap/experiment.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

namespace {

void write_out(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    out << text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wiretap code design toolkit for binary erasure wiretap channels"};
    app.require_subcommand(1);

    std::string config_path, out_path, family_str, bound_str, kernel_file;
    double pb = -1.0, pe = -1.0, eps = -1.0, delta = -1.0;
    int n = 0, threads = -1;
    int64_t samples = -1, seed = -1;
    int oracle_cases = 50;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file");
        cmd->add_option("--out", out_path, "output file (default stdout)");
        cmd->add_option("--seed", seed, "base seed");
        cmd->add_option("--samples", samples, "Monte-Carlo samples per profile");
        cmd->add_option("--bound", bound_str, "bound variant: 1, 2 or both")
            ->check(CLI::IsMember({"1", "2", "both"}));
        cmd->add_option("--pb", pb, "Bob's erasure probability");
        cmd->add_option("--pe", pe, "Eve's erasure probability");
        cmd->add_option("--eps", eps, "error budget");
        cmd->add_option("--delta", delta, "leakage budget");
        cmd->add_option("--threads", threads, "worker threads (0 = hardware)");
        cmd->add_option("--kernel-file", kernel_file, "16x16 kernel file for mk");
    };

    CLI::App* cmd_design = app.add_subcommand("design", "single-point design report (JSON)");
    add_common(cmd_design);
    cmd_design->add_option("--family", family_str, "code family")->required();
    cmd_design->add_option("--n", n, "blocklength")->required();

    CLI::App* cmd_sweep = app.add_subcommand("sweep", "rate table across blocklengths (CSV)");
    add_common(cmd_sweep);
    cmd_sweep->add_option("--family", family_str, "restrict to one family");
    cmd_sweep->add_option("--n", n, "single blocklength instead of the grid");

    CLI::App* cmd_oracle = app.add_subcommand("oracle", "exhaustive validation suite (JSON)");
    add_common(cmd_oracle);
    cmd_oracle->add_option("--n", n, "oracle blocklength (<= 12)");
    cmd_oracle->add_option("--cases", oracle_cases, "number of random partitions");

    std::string kernel_path;
    CLI::App* cmd_kernel = app.add_subcommand("kernel", "kernel erasure analysis (JSON)");
    cmd_kernel->add_option("file", kernel_path, "kernel file")->required();
    cmd_kernel->add_option("--out", out_path, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        wiretap::ExperimentConfig cfg;
        if (!config_path.empty()) cfg = wiretap::load_config(config_path);
        if (pb >= 0.0) cfg.pb = pb;
        if (pe >= 0.0) cfg.pe = pe;
        if (eps >= 0.0) cfg.eps = eps;
        if (delta >= 0.0) cfg.delta = delta;
        if (samples >= 0) cfg.samples = uint64_t(samples);
        if (seed >= 0) cfg.seed = uint64_t(seed);
        if (threads >= 0) cfg.threads = threads;
        if (!bound_str.empty()) {
            cfg.bound1 = bound_str != "2";
            cfg.bound2 = bound_str != "1";
        }
        if (!kernel_file.empty()) {
            bool has_mk = false;
            for (auto& f : cfg.families)
                if (f.family == wiretap::Family::mk) {
                    f.kernels = {kernel_file};
                    has_mk = true;
                }
            if (!has_mk) {
                if (cfg.families.empty()) cfg.families = wiretap::default_families();
                wiretap::FamilyConfig mk;
                mk.family = wiretap::Family::mk;
                mk.kernels = {kernel_file};
                cfg.families.push_back(mk);
            }
        }

        if (cmd_design->parsed()) {
            if (family_str.empty()) throw std::invalid_argument("design: empty family");
            wiretap::Family fam = wiretap::family_from_name(family_str);
            auto rep = wiretap::run_design(cfg, fam, n);
            write_out(rep.json, out_path);
            return rep.feasible ? 0 : 3;
        }
        if (cmd_sweep->parsed()) {
            if (!family_str.empty()) {
                wiretap::Family fam = wiretap::family_from_name(family_str);
                std::vector<wiretap::FamilyConfig> all =
                    cfg.families.empty() ? wiretap::default_families() : cfg.families;
                cfg.families.clear();
                for (auto& f : all)
                    if (f.family == fam) cfg.families.push_back(f);
                if (cfg.families.empty()) {
                    wiretap::FamilyConfig fc;
                    fc.family = fam;
                    cfg.families.push_back(fc);
                }
            }
            if (n > 0) cfg.blocklengths = {n};
            auto result = wiretap::run_sweep(cfg);
            write_out(wiretap::sweep_to_csv(result), out_path);
            return 0;
        }
        if (cmd_oracle->parsed()) {
            wiretap::OracleSuiteConfig oc;
            if (n > 0) oc.n = n;
            oc.cases = oracle_cases;
            if (seed >= 0) oc.seed = uint64_t(seed);
            if (pb >= 0.0) oc.pb = pb;
            if (pe >= 0.0) oc.pe_grid = {pe};
            auto res = wiretap::run_oracle_suite(oc);
            write_out(res.json, out_path);
            return res.all_pass ? 0 : 3;
        }
        if (cmd_kernel->parsed()) {
            write_out(wiretap::run_kernel_analysis(kernel_path), out_path);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
