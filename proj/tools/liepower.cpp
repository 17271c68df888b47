#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "liepower/liepower.hpp"

using namespace liepower;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kUnsupported = 3, kConsistency = 4 };

// "a..b", "k" or "a,b,c"
std::vector<std::int64_t> parse_k_range(const std::string& text) {
    auto to_int = [&](const std::string& s) {
        std::size_t used = 0;
        std::int64_t v = 0;
        try {
            v = std::stoll(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (s.empty() || used != s.size()) throw ParseError(0, "bad k range '" + text + "'");
        if (v < 1) throw Error(ErrorKind::InvalidArgument, "k must be at least 1 in '" + text + "'");
        return v;
    };
    std::vector<std::int64_t> ks;
    if (const auto dots = text.find(".."); dots != std::string::npos) {
        const auto a = to_int(text.substr(0, dots)), b = to_int(text.substr(dots + 2));
        if (b < a) throw ParseError(dots, "empty k range '" + text + "'");
        if (b - a > 10000) throw Error(ErrorKind::InvalidArgument, "k range too long");
        for (auto k = a; k <= b; ++k) ks.push_back(k);
        return ks;
    }
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        ks.push_back(to_int(text.substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return ks;
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ParseError:
        case ErrorKind::InvalidArgument:
        case ErrorKind::InvalidCase:
        case ErrorKind::DimensionMismatch: return kUsage;
        case ErrorKind::UnsupportedFamily:
        case ErrorKind::UnsupportedGroup:
        case ErrorKind::UnsupportedShape:
        case ErrorKind::NoMatrixModel:
        case ErrorKind::NotLinear:
        case ErrorKind::NotFullRank: return kUnsupported;
        default: return kConsistency;
    }
}

int cmd_analyze(const std::string& desc, const std::string& krange, bool verify, int samples, std::uint64_t seed,
                bool machine) {
    const GroupDescriptor g = parse_descriptor(desc);
    const auto ks = parse_k_range(krange);
    const AnalysisReport r = analyze(g, ks, {verify, samples, seed});
    std::cout << (machine ? render_machine(r) : render_human(r));
    if (!monte_carlo_consistent(r)) {
        std::cerr << "error: Monte Carlo sampling contradicts the density verdict\n";
        return kConsistency;
    }
    return kOk;
}

int cmd_table(const std::string& which, std::optional<std::int64_t> n, const std::string& krange, bool machine) {
    const auto ks = parse_k_range(krange);
    const CaseTable t = case_table(which, n);
    std::cout << (machine ? render_case_table_machine(t, ks) : render_case_table_human(t, ks));
    return kOk;
}

int cmd_verify(const std::string& module, int samples, std::uint64_t seed) {
    std::vector<std::string> names = module.empty() ? suite_names() : std::vector<std::string>{module};
    std::string first_failure;
    for (const auto& name : names) {
        const SuiteResult s = run_suite(name, {samples, seed});
        std::cout << "suite " << s.name << ": " << (s.passed ? "PASS" : "FAIL") << "\n";
        for (const auto& line : s.lines) std::cout << "  " << line << "\n";
        if (!s.passed && first_failure.empty()) first_failure = s.name + ": " + s.first_failure;
    }
    if (!first_failure.empty()) {
        std::cout << "FAILED " << first_failure << "\n";
        return kVerifyFailed;
    }
    std::cout << "all " << names.size() << " suite(s) passed\n";
    return kOk;
}

int cmd_catalog() {
    for (const auto& g : catalog())
        std::cout << render(g) << (g.kind == GroupDescriptor::Kind::Matrix ? "" : "  (symbolic cover)") << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Density of power maps on real and complex Lie groups"};
    app.require_subcommand(1);

    std::string desc, krange, which, module;
    bool verify = false, machine = false, all = false;
    int samples = 1000, verify_samples = 200;
    std::uint64_t seed = 1, verify_seed = 7;
    std::optional<std::int64_t> n;

    auto* analyze_cmd = app.add_subcommand("analyze", "density verdicts for one group");
    analyze_cmd->add_option("descriptor", desc, "e.g. \"SL(2,R)\" or \"quotient(universal(PSL(2,R)), 3)\"")->required();
    analyze_cmd->add_option("--k", krange, "a..b, a single k, or a comma list")->required();
    analyze_cmd->add_flag("--verify", verify, "cross-check with Monte Carlo root search");
    analyze_cmd->add_option("--samples", samples, "Monte Carlo samples per k")->check(CLI::PositiveNumber);
    analyze_cmd->add_option("--seed", seed, "Monte Carlo seed");
    analyze_cmd->add_flag("--machine", machine, "line-oriented key=value output");

    auto* table_cmd = app.add_subcommand("table", "verdict table for the simple-group cases");
    table_cmd->add_option("--case", which, "1, 2a, 2b, 3, 4, 5 or all")->required();
    table_cmd->add_option("--n", n, "cyclic invariant for cases 2a, 2b and 5");
    table_cmd->add_option("--k", krange, "a..b, a single k, or a comma list")->required();
    table_cmd->add_flag("--machine", machine, "line-oriented key=value output");

    auto* verify_cmd = app.add_subcommand("verify", "run the invariant suites");
    auto* module_opt = verify_cmd->add_option("--module", module, "liealg, regularity, cartan, density or roots");
    verify_cmd->add_flag("--all", all, "run every suite (default)")->excludes(module_opt);
    verify_cmd->add_option("--samples", verify_samples, "samples per sampled property")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--seed", verify_seed, "seed");

    auto* catalog_cmd = app.add_subcommand("catalog", "list supported descriptors");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*analyze_cmd) return cmd_analyze(desc, krange, verify, samples, seed, machine);
        if (*table_cmd) return cmd_table(which, n, krange, machine);
        if (*verify_cmd) return cmd_verify(module, verify_samples, verify_seed);
        if (*catalog_cmd) return cmd_catalog();
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConsistency;
    }
    return kUsage;
}
