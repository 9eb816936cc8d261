// lgtft: run LG/TFT jobs, compare reports, manage the result cache.
//
// Exit codes: 0 success, 1 hard error, 2 invalid job or arguments.

#include "lgtft/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

lgtft::Json read_report(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw lgtft::JobError(path, "cannot open report");
    try {
        return lgtft::Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw lgtft::JobError(path, std::string("malformed JSON: ") + e.what());
    }
}

void apply_normalization(lgtft::JobSpec& spec, const std::vector<std::string>& settings) {
    for (const auto& s : settings) {
        auto eq = s.find('=');
        if (eq == std::string::npos) throw lgtft::JobError("--normalization", "expected key=value, got '" + s + "'");
        auto key = s.substr(0, eq);
        auto value = lgtft::detail::parse_rational(s.substr(eq + 1), "--normalization " + key);
        if (value.is_zero()) throw lgtft::JobError("--normalization " + key, "must be nonzero");
        if (key == "c_d") spec.c_d = value;
        else if (key == "bulk") spec.bulk_normalization = value;
        else throw lgtft::JobError("--normalization", "unknown key '" + key + "' (expected c_d or bulk)");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations for Landau-Ginzburg pairs and their matrix factorizations"};
    app.set_version_flag("--version", std::string(LGTFT_VERSION));
    app.require_subcommand(1);

    std::string job_path, output, format = "json";
    std::optional<long> degree_bound;
    std::vector<std::string> normalization;
    bool no_cache = false;
    auto* run = app.add_subcommand("run", "Run a job file and write its report");
    run->add_option("job", job_path, "Job file (JSON)")->required()->check(CLI::ExistingFile);
    run->add_option("--degree-bound", degree_bound, "Override the cohomology degree bound")->check(CLI::NonNegativeNumber);
    run->add_option("--normalization", normalization, "Override a trace normalization: c_d=<rational> or bulk=<rational>");
    run->add_flag("--no-cache", no_cache, "Neither read nor write the result cache");
    run->add_option("-o,--output", output, "Report path (default: the job's output field, else stdout)");
    run->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));

    std::string left, right;
    auto* diff = app.add_subcommand("diff", "Compare two reports field by field (timing is ignored)");
    diff->add_option("left", left, "First report")->required()->check(CLI::ExistingFile);
    diff->add_option("right", right, "Second report")->required()->check(CLI::ExistingFile);

    auto* clean = app.add_subcommand("clean-cache", "Delete every cached entry");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*run) {
            auto spec = lgtft::load_job(job_path);
            if (degree_bound) spec.degree_bound = degree_bound;
            apply_normalization(spec, normalization);
            lgtft::Cache cache = no_cache ? lgtft::Cache{} : lgtft::Cache{lgtft::Cache::default_directory()};
            auto result = lgtft::run_job(spec, cache);
            std::string text = format == "text" ? lgtft::render_summary(result.report) : result.report.dump(2) + "\n";
            std::string target = !output.empty() ? output : spec.output.value_or("");
            if (target.empty()) {
                std::cout << text;
            } else {
                std::ofstream out(target);
                if (!out) {
                    std::cerr << "error: cannot write " << target << "\n";
                    return 1;
                }
                out << text;
            }
            if (result.hard_error) std::cerr << "error: at least one section failed; see its \"error\" field\n";
            return result.hard_error ? 1 : 0;
        }
        if (*diff) {
            auto entries = lgtft::diff_reports(read_report(left), read_report(right));
            for (const auto& e : entries) std::cout << e.path << ": " << e.left.dump() << " -> " << e.right.dump() << "\n";
            if (entries.empty()) std::cout << "reports agree\n";
            return 0;
        }
        if (*clean) {
            lgtft::Cache cache(lgtft::Cache::default_directory());
            std::cout << "removed " << cache.clear() << " cache entries from " << lgtft::Cache::default_directory().string()
                      << "\n";
            return 0;
        }
    } catch (const lgtft::JobError& e) {
        std::cerr << "invalid job: " << e.what() << "\n";
        return 2;
    } catch (const lgtft::SchemaMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
