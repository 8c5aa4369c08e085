// lambda: Li/Keiper coefficients from the command line.
//
//   lambda compute  --method eta --n 1..10 --stieltjes data/stieltjes_100.tsv
//   lambda compare  --method eta --against from_Z --n 1..30 --zeros zeros.txt --stieltjes g.tsv
//   lambda diagnose --method direct --synthetic 10000 --inject 0.7,2.0 --n 50..400 --fast

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "lilambda/cli.hpp"

namespace {

using namespace lilambda;
using namespace lilambda::cli;

struct RawOptions {
    std::string method = "eta";
    std::string against;
    std::string methods;  // "A,B" shorthand for --method A --against B
    std::string range = "1..10";
    std::string zeros;
    std::string stieltjes;
    std::size_t max_zeros = 0;
    std::size_t synthetic = 0;
    std::string digits = "auto";
    unsigned accuracy = 10;
    std::string model = "riemann";
    std::string inject;
    bool delta = false;
    bool fast = false;
    double tol = 1e-8;
    std::string output;
    std::string format = "csv";
};

void add_common(CLI::App* cmd, RawOptions& o) {
    cmd->add_option("--method", o.method, "direct | from_Z | eta | keiper");
    cmd->add_option("--n", o.range, "n range a..b");
    cmd->add_option("--zeros", o.zeros, "zero ordinates, one per line (default: $LI_LAMBDA_ZEROS)");
    cmd->add_option("--max-zeros", o.max_zeros, "read at most this many zeros");
    cmd->add_option("--synthetic", o.synthetic, "use K synthetic on-line zeros of the counting model");
    cmd->add_option("--stieltjes", o.stieltjes, "Stieltjes constants, 'k<TAB>gamma_k' per line");
    cmd->add_option("--digits", o.digits, "working digits or 'auto'");
    cmd->add_option("--accuracy", o.accuracy, "target correct digits under --digits auto");
    cmd->add_option("--model", o.model, "'riemann' or 'R2,R1'");
    cmd->add_option("--inject", o.inject, "off-axis zero beta,T[,multiplicity]");
    cmd->add_flag("--fast", o.fast, "direct sums in hardware doubles");
    cmd->add_option("--output,-o", o.output, "output file (default stdout)");
    cmd->add_option("--format", o.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
}

RunConfig to_config(Command command, const RawOptions& o) {
    RunConfig cfg;
    cfg.command = command;
    std::tie(cfg.n_min, cfg.n_max) = parse_range(o.range);
    try {
        if (!o.methods.empty()) {
            const auto comma = o.methods.find(',');
            if (comma == std::string::npos) throw CliError(exit_bad_comparison, "--methods expects A,B");
            cfg.method = parse_method(o.methods.substr(0, comma));
            cfg.against = parse_method(o.methods.substr(comma + 1));
        } else {
            cfg.method = parse_method(o.method);
            if (!o.against.empty()) cfg.against = parse_method(o.against);
        }
    } catch (const InvalidArgument& e) {
        throw CliError(exit_failure, e.what());
    }
    cfg.zeros_path = o.zeros;
    if (cfg.zeros_path.empty())
        if (const char* env = std::getenv("LI_LAMBDA_ZEROS")) cfg.zeros_path = env;
    cfg.stieltjes_path = o.stieltjes;
    if (o.max_zeros > 0) cfg.max_zeros = o.max_zeros;
    if (o.synthetic > 0) cfg.synthetic = o.synthetic;
    if (o.digits != "auto") {
        std::size_t used = 0;
        unsigned long d = 0;
        try {
            d = std::stoul(o.digits, &used);
        } catch (const std::logic_error&) {
            used = 0;
        }
        if (used == 0 || used != o.digits.size()) throw CliError(exit_failure, "--digits expects an integer or 'auto'");
        cfg.digits = static_cast<unsigned>(d);
    }
    cfg.accuracy = o.accuracy;
    cfg.model = parse_model(o.model);
    if (!o.inject.empty()) cfg.inject = parse_injection(o.inject);
    cfg.include_delta = o.delta;
    cfg.fast = o.fast;
    cfg.tol = o.tol;
    cfg.output = o.output;
    cfg.format = o.format == "json" ? Format::json : Format::csv;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Li/Keiper coefficients lambda_n of the Riemann zeta function"};
    app.require_subcommand(1);

    RawOptions compute_opts, compare_opts, diagnose_opts;
    auto* compute = app.add_subcommand("compute", "lambda_n over an n range by one method");
    add_common(compute, compute_opts);

    auto* compare = app.add_subcommand("compare", "per-n differences between two methods");
    add_common(compare, compare_opts);
    compare->add_option("--against", compare_opts.against, "second method");
    compare->add_option("--methods", compare_opts.methods, "both methods as A,B");
    compare->add_option("--tol", compare_opts.tol, "pass if max |delta| <= tol");

    auto* diagnose = app.add_subcommand("diagnose", "classify the large-n regime of a series");
    add_common(diagnose, diagnose_opts);
    diagnose_opts.method = "direct";
    diagnose->add_flag("--delta", diagnose_opts.delta, "add the constant 7/4 to the trend");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    return guarded(std::cerr, [&] {
        if (*compute) return run(to_config(Command::compute, compute_opts), std::cout, std::cerr);
        if (*compare) return run(to_config(Command::compare, compare_opts), std::cout, std::cerr);
        return run(to_config(Command::diagnose, diagnose_opts), std::cout, std::cerr);
    });
}
