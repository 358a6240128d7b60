// Command-line front end: construct, verify, encode, repair, reconstruct,
// simulate, and report, with JSON artifacts for reproducibility.
//
// Exit codes: 0 success, 1 verification/simulation failure, 2 usage or
// input error.

#include <cstdint>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "msrkit/msrkit.hpp"

namespace {

using namespace msrkit;

std::vector<felt_t> random_file(const CodeSpec& spec, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<felt_t> file(spec.file_size());
    for (auto& v : file) v = felt_t(rng() % spec.q);
    return file;
}

CodeSpec load_spec(const std::string& path) { return make_code_spec(aset_from_json(load_json_file(path))); }

int cmd_construct(int r, int m, const std::string& variant, const std::string& parity,
                  std::optional<int> q, const std::string& out) {
    if (r != 2 && r != 3) throw Error("--r must be 2 or 3");
    if (variant != "access-optimal" && variant != "long") throw Error("--variant must be access-optimal or long");
    if (r == 2 && variant == "long") throw Error("the long variant exists only for r = 3");
    if (r == 2 && (m < 2 || m > 7)) throw Error("--m must be in [2, 7] for r = 2");
    if (r == 3 && (m < 1 || m > 4)) throw Error("--m must be in [1, 4] for r = 3");
    Parity par = parity == "odd" ? Parity::Odd : parity == "even" ? Parity::Even : Parity::Any;

    ASSet set;
    if (r == 2)
        set = build_r2_auto(m, q);
    else if (variant == "long")
        set = build_r3plus_auto(m, q);
    else
        set = build_r3_auto(m, par, q);

    write_json_file(out, aset_to_json(set));
    std::cout << "variant=" << set.variant << " q=" << set.q() << " k=" << set.k()
              << " ell=" << set.ell << " n=" << set.k() + set.r << " -> " << out << "\n";
    return 0;
}

void print_certificate_summary(const Certificate& cert) {
    int inv_fail = 0, ind_fail = 0, ns_fail = 0;
    for (bool b : cert.independence) ind_fail += !b;
    for (const auto& [i, j, b] : cert.invariance) inv_fail += !b;
    for (const auto& c : cert.nonsingular)
        if (!c.ok) {
            ++ns_fail;
            std::cout << "  failed: " << c.desc << "\n";
        }
    for (size_t i = 0; i < cert.independence.size(); ++i)
        if (!cert.independence[i]) std::cout << "  failed: independence(S" << i + 1 << ")\n";
    for (const auto& [i, j, b] : cert.invariance)
        if (!b) std::cout << "  failed: invariance(S" << i + 1 << ", A" << j + 1 << ")\n";
    std::cout << "independence: " << cert.independence.size() - ind_fail << "/" << cert.independence.size()
              << "  invariance: " << cert.invariance.size() - inv_fail << "/" << cert.invariance.size()
              << "  nonsingular: " << cert.nonsingular.size() - ns_fail << "/" << cert.nonsingular.size()
              << "  (" << std::fixed << std::setprecision(3) << cert.timing_seconds << " s)\n";
}

int cmd_verify(const std::string& spec_path, const std::string& out) {
    ASSet set = aset_from_json(load_json_file(spec_path));
    Certificate cert = full_certificate(set);
    write_json_file(out, certificate_to_json(cert));
    print_certificate_summary(cert);
    std::cout << (cert.passed ? "PASSED" : "FAILED") << " -> " << out << "\n";
    return cert.passed ? 0 : 1;
}

struct SubsetGen {
    // k-subsets of {1..n}: all of them when C(n,k) <= cap, otherwise
    // `cap` pseudo-random ones.
    static std::vector<std::vector<int>> subsets(int n, int k, int cap, std::mt19937_64& rng) {
        long count = 1;
        for (int i = 0; i < k; ++i) count = count * (n - i) / (i + 1);
        std::vector<std::vector<int>> out;
        if (count <= cap) {
            std::vector<int> idx(k);
            for (int i = 0; i < k; ++i) idx[i] = i + 1;
            while (true) {
                out.push_back(idx);
                int i = k - 1;
                while (i >= 0 && idx[i] == n - (k - 1 - i)) --i;
                if (i < 0) break;
                ++idx[i];
                for (int t = i + 1; t < k; ++t) idx[t] = idx[t - 1] + 1;
            }
        } else {
            std::vector<int> all(n);
            for (int i = 0; i < n; ++i) all[i] = i + 1;
            for (int s = 0; s < cap; ++s) {
                std::vector<int> pool = all;
                std::vector<int> pick;
                for (int t = 0; t < k; ++t) {
                    size_t at = rng() % pool.size();
                    pick.push_back(pool[at]);
                    pool.erase(pool.begin() + at);
                }
                std::sort(pick.begin(), pick.end());
                out.push_back(std::move(pick));
            }
        }
        return out;
    }
};

int cmd_simulate(const std::string& spec_path, int trials, std::uint64_t seed, const std::string& out) {
    CodeSpec spec = load_spec(spec_path);
    Certificate cert = full_certificate(spec.aset);
    if (!cert.passed) {
        std::cout << "spec is not certified, refusing to simulate\n";
        print_certificate_summary(cert);
        return 1;
    }
    auto budget = bandwidth_budget(spec);
    std::vector<RepairPlan> plans;
    for (int j = 1; j <= spec.k; ++j) plans.push_back(make_repair_plan(spec, j));

    std::mt19937_64 rng(seed);
    std::vector<bool> node_exact(spec.k, true);
    std::vector<long> node_sent(spec.k, 0);
    bool all_repairs = true;
    for (int t = 0; t < trials; ++t) {
        auto file = random_file(spec, rng());
        auto store = encode(spec, file);
        for (int j = 1; j <= spec.k; ++j) {
            auto tr = repair_with_plan(spec, plans[j - 1], store);
            node_sent[j - 1] = tr.symbols_sent;
            bool ok = tr.recovered == store.columns[j - 1] && tr.symbols_sent == budget.total;
            node_exact[j - 1] = node_exact[j - 1] && ok;
            all_repairs = all_repairs && ok;
        }
    }
    long subset_count = 1;
    for (int i = 0; i < spec.k; ++i) subset_count = subset_count * (spec.n - i) / (i + 1);
    const bool exhaustive = subset_count <= 50;
    auto subsets = SubsetGen::subsets(spec.n, spec.k, 50, rng);
    bool all_recon = true;
    {
        auto file = random_file(spec, rng());
        auto store = encode(spec, file);
        for (const auto& sub : subsets) {
            std::vector<std::pair<int, std::vector<felt_t>>> cols;
            for (int idx : sub) cols.emplace_back(idx, store.columns[idx - 1]);
            all_recon = all_recon && reconstruct(spec, cols) == file;
        }
    }

    json repairs = json::array();
    std::cout << "node  sent  access/helper  optimal  exact\n";
    for (int j = 1; j <= spec.k; ++j) {
        repairs.push_back(json{{"node", j},
                               {"symbols_sent", node_sent[j - 1]},
                               {"expected_sent", budget.total},
                               {"access_per_helper", plans[j - 1].access_per_helper},
                               {"optimal_access", budget.beta},
                               {"exact", bool(node_exact[j - 1])}});
        std::cout << std::setw(4) << j << "  " << std::setw(4) << node_sent[j - 1] << "  "
                  << std::setw(13) << plans[j - 1].access_per_helper << "  " << std::setw(7)
                  << budget.beta << "  " << (node_exact[j - 1] ? "yes" : "NO") << "\n";
    }
    bool passed = all_repairs && all_recon;
    json report{{"seed", seed},
                {"trials", trials},
                {"spec", json{{"variant", spec.aset.variant},
                              {"q", spec.q},
                              {"ell", spec.ell},
                              {"k", spec.k},
                              {"n", spec.n},
                              {"access_optimal", spec.access_optimal}}},
                {"bandwidth", json{{"per_helper", budget.beta}, {"total", budget.total}}},
                {"repairs", std::move(repairs)},
                {"reconstruct",
                 json{{"subsets", subsets.size()}, {"exhaustive", exhaustive}, {"all_exact", all_recon}}},
                {"passed", passed}};
    write_json_file(out, report);
    std::cout << "repairs " << (all_repairs ? "exact" : "FAILED") << ", " << subsets.size()
              << " reconstructions " << (all_recon ? "exact" : "FAILED") << " -> " << out << "\n";
    return passed ? 0 : 1;
}

json reference_rows(int r) {
    if (r == 2)
        return json::array({json{{"scheme", "optimal-update-framework"}, {"ell", "2^m"}, {"k", "2m"},
                                 {"access", "m of 2m nodes"}, {"q", "m+1, even"}},
                            json{{"scheme", "long-mds"}, {"ell", "2^m"}, {"k", "3m"},
                                 {"access", "2m of 3m nodes"}, {"q", "2m+1"}},
                            json{{"scheme", "optimal-access"}, {"ell", "2^m"}, {"k", "2m"},
                                 {"access", "all"}, {"q", "2m+1"}},
                            json{{"scheme", "zigzag"}, {"ell", "2^m"}, {"k", "m+1"},
                                 {"access", "all"}, {"q", "3"}}});
    return json::array({json{{"scheme", "long-mds"}, {"ell", "3^m"}, {"k", "4m"},
                             {"access", "3m of 4m nodes"}, {"q", "m^2*3^(m+1)+1"}},
                        json{{"scheme", "optimal-access"}, {"ell", "3^m"}, {"k", "3m"},
                             {"access", "all"}, {"q", "C(3m+3,3)*3^(m+1)"}},
                        json{{"scheme", "zigzag"}, {"ell", "3^m"}, {"k", "m+1"},
                             {"access", "all"}, {"q", "4"}}});
}

int cmd_report(const std::vector<std::string>& spec_paths, const std::string& out) {
    json rows = json::array();
    std::cout << std::left << std::setw(24) << "spec" << std::setw(20) << "variant" << std::setw(6)
              << "ell" << std::setw(5) << "k" << std::setw(6) << "q" << "access\n";
    bool any_r2 = false, any_r3 = false;
    for (const auto& path : spec_paths) {
        CodeSpec spec = load_spec(path);
        any_r2 = any_r2 || spec.r == 2;
        any_r3 = any_r3 || spec.r == 3;
        rows.push_back(json{{"file", path},
                            {"variant", spec.aset.variant},
                            {"ell", spec.ell},
                            {"k", spec.k},
                            {"q", spec.q},
                            {"access_optimal", spec.access_optimal}});
        std::cout << std::left << std::setw(24) << path << std::setw(20) << spec.aset.variant
                  << std::setw(6) << spec.ell << std::setw(5) << spec.k << std::setw(6) << spec.q
                  << (spec.access_optimal ? "yes" : "no") << "\n";
    }
    json refs = json::object();
    if (any_r2) refs["r2"] = reference_rows(2);
    if (any_r3) refs["r3"] = reference_rows(3);
    write_json_file(out, json{{"rows", std::move(rows)}, {"reference", std::move(refs)}});
    std::cout << "-> " << out << "\n";
    return 0;
}

int cmd_encode(const std::string& spec_path, std::uint64_t seed, const std::string& data,
               const std::string& out) {
    CodeSpec spec = load_spec(spec_path);
    std::vector<felt_t> file =
        data.empty() ? random_file(spec, seed) : column_from_hex(data, spec.q);
    NodeArray store = encode(spec, file);
    json j = node_array_to_json(store);
    j["seed"] = seed;
    write_json_file(out, j);
    std::cout << "encoded " << spec.file_size() << " symbols over GF(" << spec.q << ") into "
              << spec.n << " nodes -> " << out << "\n";
    return 0;
}

int cmd_repair(const std::string& spec_path, const std::string& store_path, int node,
               const std::string& out) {
    CodeSpec spec = load_spec(spec_path);
    NodeArray store = node_array_from_json(load_json_file(store_path));
    RepairTranscript tr = repair(spec, store, node);
    write_json_file(out, transcript_to_json(tr, spec.q));
    bool exact = int(store.columns.size()) >= node && tr.recovered == store.columns[node - 1];
    auto budget = bandwidth_budget(spec);
    std::cout << "node " << node << ": sent " << tr.symbols_sent << "/" << budget.total
              << " symbols, access/helper " << tr.symbols_accessed.front().second << " (optimal "
              << budget.beta << "), " << (exact ? "exact" : "MISMATCH") << " -> " << out << "\n";
    return exact ? 0 : 1;
}

int cmd_reconstruct(const std::string& spec_path, const std::string& store_path,
                    const std::string& nodes_csv, const std::string& out) {
    CodeSpec spec = load_spec(spec_path);
    NodeArray store = node_array_from_json(load_json_file(store_path));
    std::vector<std::pair<int, std::vector<felt_t>>> cols;
    std::stringstream ss(nodes_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        int idx = std::stoi(tok);
        if (idx < 1 || idx > int(store.columns.size())) throw BadSubset("node index out of range");
        cols.emplace_back(idx, store.columns[idx - 1]);
    }
    auto file = reconstruct(spec, cols);
    std::ofstream f(out);
    if (!f) throw Error("cannot write " + out);
    f << column_to_hex(file, spec.q) << "\n";
    std::cout << "reconstructed " << file.size() << " symbols from nodes {" << nodes_csv << "} -> "
              << out << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-field MSR code toolkit"};
    app.require_subcommand(1);

    int r = 2, m = 2, node = 1, trials = 20;
    std::uint64_t seed = 1;
    int q_flag = 0;
    std::string variant = "access-optimal", parity, out, spec_path, store_path, nodes_csv, data;
    std::vector<std::string> spec_paths;

    auto* construct = app.add_subcommand("construct", "build a code spec");
    construct->add_option("--r", r, "parities (2 or 3)")->required();
    construct->add_option("--m", m, "matchings; ell = r^m")->required();
    construct->add_option("--q", q_flag, "field size override");
    construct->add_option("--variant", variant, "access-optimal (default) or long");
    construct->add_option("--parity", parity, "odd or even field size class (r = 3)");
    construct->add_option("--out", out, "output file")->default_val("codespec.json");

    auto* verify = app.add_subcommand("verify", "certify a code spec");
    verify->add_option("--spec", spec_path, "code spec file")->required();
    verify->add_option("--out", out, "certificate file")->default_val("certificate.json");

    auto* simulate = app.add_subcommand("simulate", "run encode/repair/reconstruct rounds");
    simulate->add_option("--spec", spec_path, "code spec file")->required();
    simulate->add_option("--trials", trials, "random files per node");
    simulate->add_option("--seed", seed, "rng seed");
    simulate->add_option("--out", out, "report file")->default_val("simreport.json");

    auto* report = app.add_subcommand("report", "tabulate code specs");
    report->add_option("--spec", spec_paths, "code spec files")->required();
    report->add_option("--out", out, "report file")->default_val("report.json");

    auto* encode_cmd = app.add_subcommand("encode", "store a file across the nodes");
    encode_cmd->add_option("--spec", spec_path, "code spec file")->required();
    encode_cmd->add_option("--seed", seed, "rng seed for a random file");
    encode_cmd->add_option("--data", data, "file symbols as hex instead of a random file");
    encode_cmd->add_option("--out", out, "node array file")->default_val("store.json");

    auto* repair_cmd = app.add_subcommand("repair", "repair one systematic node");
    repair_cmd->add_option("--spec", spec_path, "code spec file")->required();
    repair_cmd->add_option("--store", store_path, "node array file")->required();
    repair_cmd->add_option("--node", node, "failed systematic node (1-based)")->required();
    repair_cmd->add_option("--out", out, "transcript file")->default_val("transcript.json");

    auto* recon = app.add_subcommand("reconstruct", "rebuild the file from k nodes");
    recon->add_option("--spec", spec_path, "code spec file")->required();
    recon->add_option("--store", store_path, "node array file")->required();
    recon->add_option("--nodes", nodes_csv, "comma-separated 1-based node indices")->required();
    recon->add_option("--out", out, "output hex file")->default_val("file.hex");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (construct->parsed())
            return cmd_construct(r, m, variant, parity,
                                 q_flag ? std::optional<int>(q_flag) : std::nullopt, out);
        if (verify->parsed()) return cmd_verify(spec_path, out);
        if (simulate->parsed()) return cmd_simulate(spec_path, trials, seed, out);
        if (report->parsed()) return cmd_report(spec_paths, out);
        if (encode_cmd->parsed()) return cmd_encode(spec_path, seed, data, out);
        if (repair_cmd->parsed()) return cmd_repair(spec_path, store_path, node, out);
        if (recon->parsed()) return cmd_reconstruct(spec_path, store_path, nodes_csv, out);
    } catch (const msrkit::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
