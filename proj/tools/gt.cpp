#include "gt/engine.hpp"
#include "gt/json_io.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

namespace {

// Exit codes shared by all subcommands.
constexpr int kOk = 0;
constexpr int kParseError = 1;
constexpr int kNotIncremental = 2;
constexpr int kInvalid = 3;
constexpr int kMismatch = 4;

struct LoadedSystem {
    gt::RuleSystem rs;
    gt::IncrementalityResult incr;
};

void print_counterexample(const gt::IncrementalityCounterexample& c) {
    std::cout << "not incremental: rule " << c.rule << "\n"
              << "  cospan: " << c.i1_label << " (from " << c.i1_src << "), " << c.i2_label
              << " (from " << c.i2_src << ")\n"
              << "  overlap at object " << c.object << ": rhs elements '" << c.x1 << "' and '"
              << c.x2 << "' collide with no common sub-rule\n";
}

// Parses and validates a rule system; fills `code` and returns nullopt on
// any failure.
std::optional<LoadedSystem> load_system(const std::string& path, bool need_incremental,
                                        int& code) {
    gt::RuleSystem rs = [&] { return gt::parse_rule_system(gt::read_file(path)); }();
    gt::RuleSystemReport report = gt::validate_rule_system(rs);
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
    if (!report.ok) {
        for (const auto& e : report.errors) std::cerr << "error: " << e << "\n";
        code = kInvalid;
        return std::nullopt;
    }
    gt::IncrementalityResult incr = gt::check_incremental(rs);
    if (need_incremental && !incr.incremental) {
        print_counterexample(*incr.counterexample);
        code = kNotIncremental;
        return std::nullopt;
    }
    return LoadedSystem{std::move(rs), std::move(incr)};
}

std::optional<gt::Presheaf> load_input(const std::string& path, const gt::RuleSystem& rs,
                                       int& code) {
    gt::Presheaf p = gt::parse_presheaf(gt::read_file(path), rs.base_ptr());
    gt::ValidationReport v = gt::validate_presheaf(rs.base(), p);
    if (!v.ok()) {
        std::cerr << "error: " << path << ": " << v.message << "\n";
        code = kInvalid;
        return std::nullopt;
    }
    return p;
}

int cmd_check(const std::string& rules_path) {
    int code = kOk;
    std::optional<LoadedSystem> sys = load_system(rules_path, false, code);
    if (!sys) return code;
    if (!sys->incr.incremental) {
        print_counterexample(*sys->incr.counterexample);
        return kNotIncremental;
    }
    std::cout << "ok: valid and incremental (" << sys->rs.rules().size() << " rules, "
              << sys->rs.closure().size() << " closure morphisms)\n";
    return kOk;
}

int cmd_run(const std::string& rules_path, const std::string& input_path, std::size_t steps,
            const std::string& output_path, bool unchecked) {
    int code = kOk;
    std::optional<LoadedSystem> sys = load_system(rules_path, !unchecked, code);
    if (!sys) return code;
    std::optional<gt::Presheaf> p = load_input(input_path, sys->rs, code);
    if (!p) return code;

    gt::OnlineResult stats;
    gt::Presheaf out = gt::iterate(sys->rs, *p, steps, &stats);
    if (stats.nonmono_inclusions > 0) {
        std::cerr << "note: " << stats.nonmono_inclusions
                  << " non-mono intermediate inclusion(s); accretiveness violated\n";
    }
    gt::write_file(output_path, gt::serialize_presheaf(out));
    return kOk;
}

int cmd_oracle(const std::string& rules_path, const std::string& input_path,
               const std::string& output_path) {
    int code = kOk;
    std::optional<LoadedSystem> sys = load_system(rules_path, false, code);
    if (!sys) return code;
    std::optional<gt::Presheaf> p = load_input(input_path, sys->rs, code);
    if (!p) return code;
    gt::BatchResult batch = gt::batch_step(sys->rs, *p);
    gt::write_file(output_path, gt::serialize_presheaf(batch.cocone.apex));
    return kOk;
}

int cmd_compare(const std::string& rules_path, const std::string& input_path, bool unchecked) {
    int code = kOk;
    std::optional<LoadedSystem> sys = load_system(rules_path, !unchecked, code);
    if (!sys) return code;
    std::optional<gt::Presheaf> p = load_input(input_path, sys->rs, code);
    if (!p) return code;

    gt::Presheaf online = gt::online_step(sys->rs, *p).result;
    gt::Presheaf batch = gt::batch_step(sys->rs, *p).cocone.apex;
    for (const auto& obj : sys->rs.base().objects()) {
        std::cout << obj << ": online " << online.elements(obj).size() << ", batch "
                  << batch.elements(obj).size() << "\n";
    }
    if (!gt::is_isomorphic(online, batch)) {
        std::cout << "MISMATCH: online and batch results are not isomorphic\n";
        return kMismatch;
    }
    std::cout << "online result isomorphic to batch result\n";
    return kOk;
}

int cmd_match(const std::string& pattern_path, const std::string& target_path,
              const std::string& rules_path) {
    int code = kOk;
    std::optional<LoadedSystem> sys = load_system(rules_path, false, code);
    if (!sys) return code;
    std::optional<gt::Presheaf> pattern = load_input(pattern_path, sys->rs, code);
    if (!pattern) return code;
    std::optional<gt::Presheaf> target = load_input(target_path, sys->rs, code);
    if (!target) return code;
    std::vector<gt::PresheafMorphism> monos = gt::find_monos(*pattern, *target);
    std::cout << monos.size() << "\n";
    for (const auto& m : monos) std::cout << gt::serialize_morphism(m);
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"gt - synchronous rule-based rewriting of finite presheaves"};
    app.require_subcommand(1);

    std::string rules_path, input_path, output_path, pattern_path, target_path;
    std::size_t steps = 1;
    bool unchecked = false;

    CLI::App* check = app.add_subcommand("check", "validate a rule system and decide incrementality");
    check->add_option("--rules", rules_path)->required();

    CLI::App* run = app.add_subcommand("run", "apply the online step repeatedly");
    run->add_option("--rules", rules_path)->required();
    run->add_option("--input", input_path)->required();
    run->add_option("--steps", steps)->required();
    run->add_option("--output", output_path)->required();
    run->add_flag("--unchecked", unchecked, "skip the incrementality gate");

    CLI::App* oracle = app.add_subcommand("oracle", "apply one batch (whole-colimit) step");
    oracle->add_option("--rules", rules_path)->required();
    oracle->add_option("--input", input_path)->required();
    oracle->add_option("--output", output_path)->required();

    CLI::App* compare = app.add_subcommand("compare", "check online against batch on one input");
    compare->add_option("--rules", rules_path)->required();
    compare->add_option("--input", input_path)->required();
    compare->add_flag("--unchecked", unchecked, "skip the incrementality gate");

    CLI::App* match = app.add_subcommand("match", "list monomorphisms pattern -> target");
    match->add_option("--pattern", pattern_path)->required();
    match->add_option("--target", target_path)->required();
    match->add_option("--rules", rules_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kParseError;
    }

    try {
        if (check->parsed()) return cmd_check(rules_path);
        if (run->parsed()) return cmd_run(rules_path, input_path, steps, output_path, unchecked);
        if (oracle->parsed()) return cmd_oracle(rules_path, input_path, output_path);
        if (compare->parsed()) return cmd_compare(rules_path, input_path, unchecked);
        if (match->parsed()) return cmd_match(pattern_path, target_path, rules_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParseError;
    }
    return kOk;
}
