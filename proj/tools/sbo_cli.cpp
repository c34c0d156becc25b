// Command line front end: sampling, classification reports, the exact
// identity suite, and statistics pipelines.  All artifacts are deterministic
// functions of the full configuration including the seed.

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sbo/classifier.hpp"
#include "sbo/probkernel.hpp"
#include "sbo/samplers.hpp"
#include "sbo/stats.hpp"
#include "sbo/threads.hpp"
#include "sbo/verify.hpp"

using nlohmann::json;

namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DescriptorFlags {
    std::string config_path;
    std::string family;
    std::vector<std::string> params;
};

void add_descriptor_flags(CLI::App* cmd, DescriptorFlags& flags) {
    cmd->add_option("--config", flags.config_path,
                    "Descriptor JSON file (canonical config format)");
    cmd->add_option("--family", flags.family,
                    "Size family: constant, geometric, power, log_power, "
                    "log_plus_two_loglog, karamata_stirling, explicit_table");
    cmd->add_option("--param", flags.params, "Family parameter as key=value (repeatable)");
}

sbo::SizeFunction build_descriptor(const DescriptorFlags& flags) {
    if (!flags.config_path.empty()) {
        if (!flags.family.empty() || !flags.params.empty()) {
            throw ConfigError("--config excludes --family/--param");
        }
        std::ifstream in(flags.config_path);
        if (!in) throw ConfigError("cannot open config file: " + flags.config_path);
        json j;
        in >> j;
        return sbo::SizeFunction::from_json(j);
    }
    if (flags.family.empty()) throw ConfigError("a descriptor is required (--family or --config)");

    std::map<std::string, double> kv;
    for (const std::string& p : flags.params) {
        const std::size_t eq = p.find('=');
        if (eq == std::string::npos) throw ConfigError("malformed --param (want key=value): " + p);
        try {
            kv[p.substr(0, eq)] = std::stod(p.substr(eq + 1));
        } catch (const std::exception&) {
            throw ConfigError("malformed --param value: " + p);
        }
    }
    json j;
    j["family"] = flags.family;
    j["params"] = kv;
    if (flags.family == "explicit_table") {
        throw ConfigError("explicit_table requires --config with a \"table\" array");
    }
    return sbo::SizeFunction::from_json(j);
}

class Output {
  public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw ConfigError("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json json_beta(const std::optional<double>& beta) {
    if (!beta.has_value()) return nullptr;
    if (std::isinf(*beta)) return "inf";
    return *beta;
}

json accumulation_json(const sbo::AccumulationSet& acc) {
    json a = json::array();
    if (acc.zero) a.push_back("zero");
    if (acc.infinity) a.push_back("infinity");
    if (acc.interior) a.push_back("interior");
    return a;
}

// ---------------------------------------------------------------- sample ---

int run_sample(const sbo::SizeFunction& desc, std::int64_t n, std::int64_t replicates,
               std::uint64_t seed, const std::string& sampler, bool lehmer,
               const std::string& format, const std::string& out_path) {
    if (lehmer && sampler != "insertion") throw ConfigError("--lehmer needs --sampler insertion");
    Output out(out_path);
    std::ostream& os = out.stream();

    const bool as_json = format == "json";
    json doc;
    if (as_json) {
        doc["schema_version"] = 1;
        doc["descriptor"] = desc.to_json();
        doc["seed"] = seed;
    }

    if (sampler == "scatter") {
        json rows = json::array();
        if (!as_json) os << "replicate,strip,t,x\n";
        for (std::int64_t r = 1; r <= replicates; ++r) {
            const auto s = sbo::sample_poisson_scatter(desc, n, sbo::derive_seed(seed, static_cast<std::uint64_t>(r - 1)));
            for (std::size_t i = 0; i < s.points.size(); ++i) {
                if (as_json) {
                    rows.push_back({r, i + 1, s.points[i].t, s.points[i].x});
                } else {
                    os << r << ',' << (i + 1) << ',' << fmt_double(s.points[i].t) << ','
                       << fmt_double(s.points[i].x) << '\n';
                }
            }
        }
        if (as_json) {
            doc["points"] = rows;
            os << doc.dump(2) << '\n';
        }
        return 0;
    }

    if (lehmer) {
        json rows = json::array();
        if (!as_json) {
            os << "replicate";
            for (std::int64_t i = 1; i <= n; ++i) os << ",r" << i;
            os << '\n';
        }
        for (std::int64_t r = 1; r <= replicates; ++r) {
            const auto s = sbo::sample_by_insertion(desc, n, sbo::derive_seed(seed, static_cast<std::uint64_t>(r - 1)));
            if (as_json) {
                rows.push_back(s.code.ranks);
            } else {
                os << r;
                for (int rank : s.code.ranks) os << ',' << rank;
                os << '\n';
            }
        }
        if (as_json) {
            doc["lehmer_codes"] = rows;
            os << doc.dump(2) << '\n';
        }
        return 0;
    }

    auto draw = [&](std::uint64_t s) -> sbo::FiniteOrder {
        if (sampler == "exponential") return sbo::sample_exponential(desc, n, s);
        if (sampler == "picks") return sbo::sample_by_picks(desc, n, s);
        if (sampler == "insertion") return sbo::sample_by_insertion(desc, n, s).order;
        throw ConfigError("unknown sampler: " + sampler);
    };

    json rows = json::array();
    if (!as_json) os << "replicate,position,label\n";
    for (std::int64_t r = 1; r <= replicates; ++r) {
        const sbo::FiniteOrder order = draw(sbo::derive_seed(seed, static_cast<std::uint64_t>(r - 1)));
        if (as_json) {
            rows.push_back(order.labels);
        } else {
            for (std::size_t pos = 0; pos < order.labels.size(); ++pos) {
                os << r << ',' << (pos + 1) << ',' << order.labels[pos] << '\n';
            }
        }
    }
    if (as_json) {
        doc["arrangements"] = rows;
        os << doc.dump(2) << '\n';
    }
    return 0;
}

// -------------------------------------------------------------- classify ---

int run_classify(const sbo::SizeFunction& desc, const std::string& out_path) {
    const bool heuristic = desc.family() == sbo::SizeFamily::ExplicitTable;
    const sbo::SizeMetadata meta =
        heuristic ? sbo::estimate_metadata(desc) : sbo::analytic_metadata(desc);
    const auto [type, ev] = sbo::classify(meta);

    json evidence;
    evidence["fired_case"] = ev.fired_case;
    evidence["beta"] = json_beta(ev.beta);
    evidence["dirichlet_converges_at_beta"] = sbo::tristate_name(ev.dirichlet_converges_at_beta);
    evidence["small_part_summable"] = sbo::tristate_name(ev.small_part_summable);
    evidence["total_summable"] = sbo::tristate_name(meta.total_summable);
    evidence["accumulation_points"] = accumulation_json(ev.accumulation);
    if (!ev.note.empty()) evidence["note"] = ev.note;

    // The integer-embeddability breakdown rides along only for analytic
    // metadata; heuristic table estimates must not feed it silently.
    if (!heuristic) {
        const sbo::AbtResult abt = sbo::abt_embeddable(meta);
        evidence["abt_embeddable"] = {
            {"embeddable", abt.embeddable},
            {"no_interior_accumulation", abt.no_interior_accumulation},
            {"small_part_summable", abt.small_part_summable},
            {"abscissa_zero", abt.abscissa_zero},
        };
    }

    json doc;
    doc["schema_version"] = 1;
    doc["type"] = sbo::to_string(type);
    doc["case"] = ev.fired_case;
    doc["beta"] = json_beta(ev.beta);
    doc["heuristic"] = heuristic;
    doc["evidence"] = evidence;

    Output out(out_path);
    out.stream() << doc.dump(2) << '\n';
    return 0;
}

// ---------------------------------------------------------------- verify ---

int run_verify(std::uint64_t seed, int tuples, const std::string& out_path) {
    const auto results = sbo::verify::run_all(seed, tuples);

    bool all_pass = true;
    json rows = json::array();
    for (const auto& r : results) {
        all_pass = all_pass && r.pass;
        std::printf("%s %-24s max_residual=%.3e tol=%.0e\n", r.pass ? "PASS" : "FAIL",
                    r.name.c_str(), r.max_residual, r.tolerance);
        rows.push_back({{"name", r.name},
                        {"max_residual", r.max_residual},
                        {"tolerance", r.tolerance},
                        {"pass", r.pass}});
    }
    std::printf("verify: %zu/%zu identities passed (seed %" PRIu64 ", %d tuples)\n",
                static_cast<std::size_t>(std::count_if(results.begin(), results.end(),
                                                       [](const auto& r) { return r.pass; })),
                results.size(), seed, tuples);

    if (!out_path.empty()) {
        json doc;
        doc["schema_version"] = 1;
        doc["seed"] = seed;
        doc["tuples"] = tuples;
        doc["identities"] = rows;
        Output out(out_path);
        out.stream() << doc.dump(2) << '\n';
    }
    return all_pass ? 0 : 1;
}

// ----------------------------------------------------------------- stats ---

int run_stats(const sbo::SizeFunction& desc, std::int64_t n, std::int64_t replicates,
              std::uint64_t seed, const std::string& format, const std::string& out_path) {
    std::vector<double> records(static_cast<std::size_t>(replicates));
    std::vector<double> inversions(static_cast<std::size_t>(replicates));

#pragma omp parallel for schedule(static) num_threads(sbo::max_workers())
    for (std::int64_t r = 0; r < replicates; ++r) {
        const sbo::FiniteOrder order =
            sbo::sample_exponential(desc, n, sbo::derive_seed(seed, static_cast<std::uint64_t>(r)));
        records[static_cast<std::size_t>(r)] =
            static_cast<double>(sbo::count_records(order).size());
        inversions[static_cast<std::size_t>(r)] =
            static_cast<double>(sbo::count_inversions(order).d_n);
    }

    auto mean_of = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x;
        return s / static_cast<double>(v.size());
    };

    json doc;
    doc["schema_version"] = 1;
    doc["descriptor"] = desc.to_json();
    doc["n"] = n;
    doc["replicates"] = replicates;
    doc["seed"] = seed;

    json rec;
    rec["mean_count"] = mean_of(records);
    {
        // Exact per-index record law, as deep as the weights stay representable.
        json exact = json::array();
        try {
            for (std::int64_t i = 1; i <= std::min<std::int64_t>(n, 20); ++i) {
                exact.push_back(sbo::record_prob(desc, i));
            }
        } catch (const std::exception&) {
            // leave the prefix that was representable
        }
        rec["exact_record_prob_prefix"] = exact;
    }
    doc["records"] = rec;

    json inv;
    inv["mean_d_n"] = mean_of(inversions);
    inv["mean_normalized"] = mean_of(inversions) / static_cast<double>(n);
    if (desc.family() == sbo::SizeFamily::Geometric && desc.param() < 1.0 && n >= 2) {
        inv["c_q"] = sbo::c_q(desc.param(), 1e-9).value;
        inv["expected_d_n"] = sbo::expected_inversions(desc, n);
    }
    doc["inversions"] = inv;

    doc["steele_grid"] = sbo::steele_Fn_grid(desc, n, 101);

    if (format == "csv") {
        Output out(out_path);
        std::ostream& os = out.stream();
        os << "replicate,records,inversions,normalized_inversions\n";
        for (std::int64_t r = 0; r < replicates; ++r) {
            os << (r + 1) << ',' << static_cast<std::int64_t>(records[static_cast<std::size_t>(r)])
               << ',' << static_cast<std::int64_t>(inversions[static_cast<std::size_t>(r)]) << ','
               << fmt_double(inversions[static_cast<std::size_t>(r)] / static_cast<double>(n))
               << '\n';
        }
        std::cout << doc.dump(2) << '\n';
    } else {
        json per = json::array();
        for (std::int64_t r = 0; r < replicates; ++r) {
            per.push_back({{"replicate", r + 1},
                           {"records", records[static_cast<std::size_t>(r)]},
                           {"inversions", inversions[static_cast<std::size_t>(r)]}});
        }
        doc["per_replicate"] = per;
        Output out(out_path);
        out.stream() << doc.dump(2) << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"size-biased order toolkit: samplers, classification, identities, statistics"};
    app.require_subcommand(1);

    DescriptorFlags desc_flags;
    std::int64_t n = 0;  // 0: use the descriptor's default prefix length
    std::int64_t replicates = 1;
    std::uint64_t seed = 42;
    std::string out_path;
    std::string format = "csv";
    std::string sampler = "exponential";
    bool lehmer = false;
    int tuples = 1000;

    CLI::App* sample = app.add_subcommand("sample", "Draw size-biased order prefixes");
    add_descriptor_flags(sample, desc_flags);
    sample->add_option("--n", n, "Prefix length (default: descriptor truncation default)");
    sample->add_option("--replicates", replicates, "Number of replicates")->check(CLI::PositiveNumber);
    sample->add_option("--seed", seed, "RNG seed");
    sample->add_option("--sampler", sampler, "exponential, picks, insertion, or scatter")
        ->check(CLI::IsMember({"exponential", "picks", "insertion", "scatter"}));
    sample->add_flag("--lehmer", lehmer, "Emit relative ranks instead of arrangements");
    sample->add_option("--out", out_path, "Output path (default stdout)");
    sample->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    CLI::App* classify = app.add_subcommand("classify", "Classify the order type");
    add_descriptor_flags(classify, desc_flags);
    classify->add_option("--out", out_path, "Output path (default stdout)");

    CLI::App* verify = app.add_subcommand("verify", "Run the exact identity suite");
    verify->add_option("--seed", seed, "RNG seed");
    verify->add_option("--tuples", tuples, "Random size tuples per identity")
        ->check(CLI::PositiveNumber);
    verify->add_option("--out", out_path, "Optional JSON results path");

    CLI::App* stats = app.add_subcommand("stats", "Records, inversions and F_n pipelines");
    add_descriptor_flags(stats, desc_flags);
    stats->add_option("--n", n, "Prefix length (default: descriptor truncation default)");
    stats->add_option("--replicates", replicates, "Number of replicates")->check(CLI::PositiveNumber);
    stats->add_option("--seed", seed, "RNG seed");
    stats->add_option("--out", out_path, "Output path (default stdout)");
    stats->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << json{{"error", e.what()}}.dump() << '\n';
        return 2;
    }

    try {
        if (verify->parsed()) return run_verify(seed, tuples, out_path);

        const sbo::SizeFunction desc = build_descriptor(desc_flags);
        if (n == 0) n = desc.truncation_default();
        if (n < 1) throw ConfigError("n must be >= 1");

        if (sample->parsed()) {
            const std::string fmt = sample->count("--format") ? format : "csv";
            return run_sample(desc, n, replicates, seed, sampler, lehmer, fmt, out_path);
        }
        if (classify->parsed()) return run_classify(desc, out_path);
        if (stats->parsed()) {
            const std::string fmt = stats->count("--format") ? format : "json";
            return run_stats(desc, n, replicates, seed, fmt, out_path);
        }
    } catch (const std::exception& e) {
        std::cerr << json{{"error", e.what()}}.dump() << '\n';
        return 2;
    }
    return 0;
}
