// quatclass: exact spinor class numbers of orders in totally definite
// quaternion algebras. Subcommands: report (one prime, full report),
// batch (prime sweep with identity checking), invariant (raw quadratic
// field invariants), assisted (user-supplied field/order data).
//
// Exit codes: 0 success, 1 batch check failure, 2 invalid input,
// 3 internal integrality failure.

#include "quatclass/assisted.hpp"
#include "quatclass/json_io.hpp"
#include "quatclass/pipeline.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using namespace quatclass;

long pmax_ceiling() {
    if (const char* env = std::getenv("QUATCLASS_PMAX_CEILING")) {
        try {
            long v = std::stol(env);
            if (v > 0) return v;
        } catch (...) {
        }
        throw input_error("QUATCLASS_PMAX_CEILING must be a positive integer");
    }
    return kDefaultPMaxCeiling;
}

Int parse_integer_arg(const std::string& s, const std::string& what) {
    std::string t = s;
    if (!t.empty() && t[0] == '+') t = t.substr(1);
    bool ok = !t.empty();
    for (std::size_t i = (t[0] == '-' ? 1 : 0); i < t.size() && ok; ++i)
        ok = t[i] >= '0' && t[i] <= '9';
    if (!ok || t == "-") throw input_error(what + ": '" + s + "' is not an integer");
    return Int(t);
}

int run_report(const std::string& p_str, const std::string& format) {
    Int p = parse_integer_arg(p_str, "--p");
    if (!is_prime(p)) throw input_error("--p: " + p.get_str() + " is not prime");
    ClassNumberReport rep = report(p, pmax_ceiling());
    if (format == "json") {
        json inputs{{"p", p.get_str()}, {"format", format}};
        std::cout << envelope("report", inputs, report_to_json(rep), rep.identities).dump(2)
                  << "\n";
    } else {
        std::cout << report_to_text(rep);
    }
    return rep.all_pass(false) ? 0 : 3;
}

int run_batch(const std::string& pmax_str, const std::string& checks_str,
              const std::string& out_path, const std::string& format) {
    Int p_max = parse_integer_arg(pmax_str, "--p-max");
    BatchChecks checks = batch_checks_from_string(checks_str);
    BatchSummary summary = batch(Int(2), p_max, checks, pmax_ceiling());
    std::string body;
    if (format == "json") {
        json inputs{{"p_min", "2"}, {"p_max", p_max.get_str()}, {"checks", checks_str}};
        body = envelope("batch", inputs, batch_to_json(summary), {}).dump(2) + "\n";
    } else {
        body = batch_to_text(summary);
    }
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw input_error("--out: cannot write to " + out_path);
        out << body;
    } else {
        std::cout << body;
    }
    if (!summary.ok) {
        std::cerr << "batch: first failing prime " << summary.first_failure_p.get_str() << "\n"
                  << summary.failure_detail;
        return 1;
    }
    return 0;
}

int run_invariant(const std::string& what, const std::string& arg_str) {
    Int n = parse_integer_arg(arg_str, "--arg");
    if (what == "zeta") {
        if (!is_prime(n)) throw input_error("--arg: zeta expects a prime");
        std::cout << zeta_minus_one_real_quadratic(n).to_string() << "\n";
    } else if (what == "h-imag") {
        std::cout << h_imag(n).get_str() << "\n";
    } else if (what == "h-real") {
        if (!is_prime(n)) throw input_error("--arg: h-real expects a prime");
        std::cout << h_real(n).get_str() << "\n";
    } else if (what == "h-plus") {
        if (!is_prime(n)) throw input_error("--arg: h-plus expects a prime");
        std::cout << narrow_class_number(n).get_str() << "\n";
    } else if (what == "unit") {
        if (!is_prime(n)) throw input_error("--arg: unit expects a prime");
        std::cout << fundamental_unit(n).to_string(n) << "\n";
    } else {
        throw input_error("--what: unknown invariant '" + what +
                          "' (use zeta|h-imag|h-real|h-plus|unit)");
    }
    return 0;
}

int run_assisted(const std::string& config_path, const std::string& format) {
    std::ifstream in(config_path);
    if (!in) throw input_error("--config: cannot read " + config_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    AssistedConfig config = AssistedConfig::from_text(buf.str());
    AssistedResult result = evaluate(config);
    if (format == "json") {
        json inputs{{"config", config_path}, {"format", format}};
        std::cout << envelope("assisted", inputs, assisted_to_json(result), {}).dump(2) << "\n";
    } else {
        std::cout << assisted_to_text(result);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact spinor class numbers for orders in totally definite "
                 "quaternion algebras"};
    app.require_subcommand(1);

    std::string p_str, format = "text";
    auto* rep = app.add_subcommand("report", "full report for F = Q(sqrt p)");
    rep->add_option("--p", p_str, "prime p")->required();
    rep->add_option("--format", format, "json|text")
        ->check(CLI::IsMember({"json", "text"}));

    std::string pmax_str, checks_str = "all", out_path, batch_format = "text";
    auto* bat = app.add_subcommand("batch", "sweep primes 2..p-max with identity checks");
    bat->add_option("--p-max", pmax_str, "upper bound for p")->required();
    bat->add_option("--checks", checks_str, "all|identities|integrality")
        ->check(CLI::IsMember({"all", "identities", "integrality"}));
    bat->add_option("--out", out_path, "write the summary to a file");
    bat->add_option("--format", batch_format, "json|text")
        ->check(CLI::IsMember({"json", "text"}));

    std::string what, arg_str;
    auto* inv = app.add_subcommand("invariant", "raw quadratic field invariants");
    inv->add_option("--what", what, "zeta|h-imag|h-real|h-plus|unit")->required();
    inv->add_option("--arg", arg_str, "argument (prime p, or negative d for h-imag)")
        ->required();

    std::string config_path, assisted_format = "text";
    auto* ast = app.add_subcommand("assisted", "evaluate a user-supplied configuration");
    ast->add_option("--config", config_path, "path to the JSON configuration")->required();
    ast->add_option("--format", assisted_format, "json|text")
        ->check(CLI::IsMember({"json", "text"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (rep->parsed()) return run_report(p_str, format);
        if (bat->parsed()) return run_batch(pmax_str, checks_str, out_path, batch_format);
        if (inv->parsed()) return run_invariant(what, arg_str);
        if (ast->parsed()) return run_assisted(config_path, assisted_format);
        return 2;
    } catch (const quatclass::input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const quatclass::integrality_error& e) {
        std::cerr << "internal consistency failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
