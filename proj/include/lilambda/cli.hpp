#pragma once

// Front end of the `lambda` tool: compute a series by one route, compare two
// routes, or diagnose the large-n regime. Argument parsing lives in the tool;
// everything here takes a RunConfig and writes to the given streams.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lilambda/lilambda.hpp"

namespace lilambda::cli {

enum class Command { compute, compare, diagnose };
enum class Format { csv, json };

enum ExitCode : int {
    exit_ok = 0,
    exit_failure = 1,  // comparison outside tolerance, or any other error
    exit_missing_input = 2,
    exit_precision = 3,
    exit_bad_comparison = 4,
    exit_bad_range = 5,
};

struct Injection {
    double beta = 0.0;
    double height = 0.0;
    int multiplicity = 1;
};

struct RunConfig {
    Command command = Command::compute;
    int n_min = 1;
    int n_max = 10;
    LambdaMethod method = LambdaMethod::eta;
    std::optional<LambdaMethod> against;  // second route for compare
    std::string zeros_path;
    std::string stieltjes_path;
    std::optional<std::size_t> max_zeros;
    std::optional<std::size_t> synthetic;  // K synthetic on-line zeros instead of a file
    std::optional<unsigned> digits;        // nullopt = policy at n_max
    unsigned accuracy = 10;                // target correct digits for the policy
    CountingModel model = CountingModel::riemann_zeta();
    std::optional<Injection> inject;
    bool include_delta = false;
    bool fast = false;
    double tol = 1e-8;
    std::string output;  // empty = stdout
    Format format = Format::csv;
};

struct CliError : std::runtime_error {
    CliError(int code, const std::string& what) : std::runtime_error(what), code(code) {}
    int code;
};

/// "a..b" or a single "n".
inline std::pair<int, int> parse_range(const std::string& s) {
    const auto dots = s.find("..");
    try {
        std::size_t used = 0;
        if (dots == std::string::npos) {
            const int n = std::stoi(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return {n, n};
        }
        const std::string a = s.substr(0, dots), b = s.substr(dots + 2);
        const int lo = std::stoi(a, &used);
        if (used != a.size()) throw std::invalid_argument(s);
        const int hi = std::stoi(b, &used);
        if (used != b.size()) throw std::invalid_argument(s);
        return {lo, hi};
    } catch (const std::logic_error&) {
        throw CliError(exit_bad_range, "bad n range '" + s + "' (expected a..b)");
    }
}

inline std::vector<double> parse_doubles(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    ss.imbue(std::locale::classic());
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::logic_error&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw CliError(exit_failure, "not a number: '" + item + "'");
        out.push_back(v);
    }
    return out;
}

inline CountingModel parse_model(const std::string& s) {
    if (s == "riemann") return CountingModel::riemann_zeta();
    const auto v = parse_doubles(s);
    if (v.size() != 2) throw CliError(exit_failure, "--model expects 'riemann' or 'R2,R1'");
    return CountingModel::custom(v[0], v[1]);
}

inline Injection parse_injection(const std::string& s) {
    const auto v = parse_doubles(s);
    if (v.size() < 2 || v.size() > 3) throw CliError(exit_failure, "--inject expects beta,T[,mult]");
    Injection inj{v[0], v[1], 1};
    if (v.size() == 3) {
        if (v[2] != std::floor(v[2]) || v[2] < 1) throw CliError(exit_failure, "--inject: multiplicity must be a positive integer");
        inj.multiplicity = static_cast<int>(v[2]);
    }
    return inj;
}

namespace detail {

inline bool needs_catalog(LambdaMethod m) { return m == LambdaMethod::direct || m == LambdaMethod::from_Z; }

inline void check_range(const RunConfig& cfg) {
    if (cfg.n_min < 1) throw CliError(exit_bad_range, "n range must start at 1 or above");
    if (cfg.n_max < cfg.n_min) throw CliError(exit_bad_range, "n range is empty");
}

inline PrecisionContext context_for(const RunConfig& cfg, LambdaMethod m) {
    const auto n = static_cast<unsigned>(cfg.n_max);
    if (!cfg.digits) return PrecisionContext::for_alternating_sum(n, cfg.accuracy);
    if (*cfg.digits < PrecisionContext::min_digits)
        throw CliError(exit_precision, "--digits must be at least " + std::to_string(PrecisionContext::min_digits));
    PrecisionContext ctx(*cfg.digits, PrecisionMode::fixed);
    // the direct sum has no cancellation; every other route is an alternating binomial sum
    if (m != LambdaMethod::direct && !ctx.satisfies_policy(n))
        throw CliError(exit_precision, "--digits " + std::to_string(*cfg.digits) + " is below the minimum " +
                                           std::to_string(PrecisionContext::policy_digits(n, 0)) +
                                           " for n=" + std::to_string(n) + " with method " + method_name(m));
    return ctx;
}

inline ZeroCatalog catalog_for(const RunConfig& cfg) {
    ZeroCatalog cat;
    const unsigned digits = std::max(cfg.digits.value_or(PrecisionContext::min_digits), PrecisionContext::min_digits);
    if (cfg.synthetic) {
        cat = synthesize_online_catalog(cfg.model, *cfg.synthetic, digits);
    } else {
        if (cfg.zeros_path.empty())
            throw CliError(exit_missing_input, "no zeros file: pass --zeros or set LI_LAMBDA_ZEROS");
        if (!std::filesystem::is_regular_file(cfg.zeros_path))
            throw CliError(exit_missing_input, "zeros file not found: " + cfg.zeros_path);
        cat = load_zeros(cfg.zeros_path, digits, cfg.max_zeros.value_or(std::numeric_limits<std::size_t>::max()));
    }
    if (cfg.inject) cat = inject_off_axis(cat, cfg.inject->beta, cfg.inject->height, cfg.inject->multiplicity);
    return cat;
}

inline std::vector<Real> stieltjes_for(const RunConfig& cfg, unsigned digits) {
    if (cfg.stieltjes_path.empty()) throw CliError(exit_missing_input, "no Stieltjes table: pass --stieltjes");
    if (!std::filesystem::is_regular_file(cfg.stieltjes_path))
        throw CliError(exit_missing_input, "Stieltjes table not found: " + cfg.stieltjes_path);
    auto g = load_stieltjes(cfg.stieltjes_path, digits);
    if (g.size() < static_cast<std::size_t>(cfg.n_max))
        throw CliError(exit_missing_input, "Stieltjes table has " + std::to_string(g.size()) +
                                               " constants; n=" + std::to_string(cfg.n_max) + " needs " +
                                               std::to_string(cfg.n_max));
    return g;
}

}  // namespace detail

/// The lambda series of one route over cfg's n range.
inline LambdaSeries compute_series(const RunConfig& cfg, LambdaMethod method) {
    detail::check_range(cfg);
    const PrecisionContext ctx = detail::context_for(cfg, method);
    LambdaSeries s;
    s.method = method;
    s.precision_used = ctx.digits();

    if (detail::needs_catalog(method)) {
        const ZeroCatalog cat = detail::catalog_for(cfg);
        s.truncation = "K=" + std::to_string(cat.online_count());
        if (method == LambdaMethod::direct) {
            for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
                auto v = lambda_direct(n, cat, cfg.model, ctx, cfg.fast);
                s.add(n, std::move(v.value), v.tail_estimate);
            }
        } else {
            SecondaryZetaEvaluator ev(cat, cfg.model);
            const auto zs = ev.z_values_integer(cfg.n_max, ctx);
            std::vector<Real> zv;
            zv.reserve(zs.size());
            for (const auto& z : zs) zv.push_back(z.value);
            for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
                // |d lambda_n / d Z(j)| times the Z(j) tail budget
                double est = 0.0;
                for (int j = 1; j <= n; ++j)
                    est += static_cast<double>(n) / j * static_cast<double>(binomial(n + j - 1, 2 * j - 1)) *
                           zs[static_cast<std::size_t>(j - 1)].tail_estimate;
                s.add(n, lambda_from_Z(n, zv, ctx), est);
            }
        }
        return s;
    }

    if (!cfg.model.riemann)
        throw CliError(exit_failure, "method " + method_name(method) + " is specific to the Riemann zeta function");
    if (cfg.inject) throw CliError(exit_failure, "--inject needs a zero-catalog method (direct or from_Z)");
    const auto gammas = detail::stieltjes_for(cfg, ctx.digits());
    const EtaTable eta = eta_from_stieltjes(gammas, ctx, static_cast<std::size_t>(cfg.n_max));
    const ExplicitTerms ex = explicit_terms(cfg.n_max, ctx);
    s.truncation = "J=" + std::to_string(cfg.n_max);
    for (int n = cfg.n_min; n <= cfg.n_max; ++n)
        s.add(n, method == LambdaMethod::eta ? lambda_from_eta(n, eta, ex, ctx) : lambda_keiper(n, eta, ex, ctx), 0.0);
    return s;
}

namespace detail {

class OutputSink {
public:
    OutputSink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw CliError(exit_failure, "cannot write " + path);
            out_ = &file_;
        }
        out_->imbue(std::locale::classic());
    }
    std::ostream& stream() { return *out_; }

private:
    std::ofstream file_;
    std::ostream* out_;
};

inline std::string tail_text(double e) { return to_decimal(e, 6); }

}  // namespace detail

inline void write_series(const LambdaSeries& s, Format fmt, std::ostream& out) {
    if (fmt == Format::csv) {
        out << "n,lambda,method,precision_digits,truncation,tail_estimate\n";
        for (const auto& [n, v] : s.values)
            out << n << ',' << to_decimal(v, s.precision_used) << ',' << method_name(s.method) << ','
                << s.precision_used << ',' << s.truncation << ',' << detail::tail_text(s.tail_estimates.at(n)) << '\n';
        return;
    }
    nlohmann::ordered_json j;
    j["method"] = method_name(s.method);
    j["precision_digits"] = s.precision_used;
    j["truncation"] = s.truncation;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& [n, v] : s.values)
        j["rows"].push_back({{"n", n},
                             {"lambda", to_decimal(v, s.precision_used)},
                             {"tail_estimate", detail::tail_text(s.tail_estimates.at(n))}});
    out << j.dump(2) << '\n';
}

inline nlohmann::ordered_json report_json(const DiagnosisReport& r) {
    nlohmann::ordered_json j;
    j["regime"] = regime_name(r.regime);
    j["A"] = r.A;
    j["B"] = r.B;
    j["envelope_rate"] = r.envelope_rate;
    j["envelope_fit_r2"] = r.envelope_r2;
    j["sign_changes"] = r.sign_changes;
    j["max_residual_over_n"] = r.max_residual_ratio;
    j["n_range"] = {r.n_min, r.n_max};
    return j;
}

/// Maps library exceptions onto exit codes and a one-line message.
template <class F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const CliError& e) {
        err << "lambda: " << e.what() << '\n';
        return e.code;
    } catch (const PrecisionError& e) {
        err << "lambda: " << e.what() << '\n';
        return exit_precision;
    } catch (const FormatError& e) {
        err << "lambda: " << e.what() << '\n';
        return exit_missing_input;
    } catch (const ValidationError& e) {
        err << "lambda: " << e.what() << '\n';
        return exit_missing_input;
    } catch (const std::exception& e) {
        err << "lambda: " << e.what() << '\n';
        return exit_failure;
    }
}

inline int run_compute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const LambdaSeries s = compute_series(cfg, cfg.method);
        detail::OutputSink sink(cfg.output, out);
        write_series(s, cfg.format, sink.stream());
        return static_cast<int>(exit_ok);
    });
}

inline int run_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (!cfg.against) throw CliError(exit_bad_comparison, "compare needs a second method (--against)");
        if (*cfg.against == cfg.method)
            throw CliError(exit_bad_comparison, "compare: both methods are " + method_name(cfg.method));
        const LambdaSeries a = compute_series(cfg, cfg.method);
        const LambdaSeries b = compute_series(cfg, *cfg.against);
        const unsigned shown = std::min(a.precision_used, b.precision_used);
        Real max_delta = 0;
        std::vector<std::pair<int, Real>> deltas;
        {
            PrecisionGuard g(std::max(a.precision_used, b.precision_used));
            for (const auto& [n, va] : a.values) {
                Real d = va - b.values.at(n);
                if (abs(d) > max_delta) max_delta = abs(d);
                deltas.emplace_back(n, std::move(d));
            }
        }
        const bool pass = static_cast<double>(max_delta) <= cfg.tol;
        detail::OutputSink sink(cfg.output, out);
        auto& os = sink.stream();
        const std::string ma = method_name(a.method), mb = method_name(b.method);
        if (cfg.format == Format::csv) {
            os << "n,lambda_" << ma << ",lambda_" << mb << ",delta\n";
            for (const auto& [n, d] : deltas)
                os << n << ',' << to_decimal(a.values.at(n), shown) << ',' << to_decimal(b.values.at(n), shown) << ','
                   << to_decimal(d, 6) << '\n';
            os << "# max_abs_delta=" << to_decimal(max_delta, 6) << " tol=" << to_decimal(cfg.tol, 6)
               << " result=" << (pass ? "pass" : "fail") << '\n';
        } else {
            nlohmann::ordered_json j;
            j["methods"] = {ma, mb};
            j["rows"] = nlohmann::ordered_json::array();
            for (const auto& [n, d] : deltas) j["rows"].push_back({{"n", n}, {"delta", to_decimal(d, 6)}});
            j["max_abs_delta"] = to_decimal(max_delta, 6);
            j["tol"] = cfg.tol;
            j["result"] = pass ? "pass" : "fail";
            os << j.dump(2) << '\n';
        }
        return static_cast<int>(pass ? exit_ok : exit_failure);
    });
}

inline int run_diagnose(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        detail::check_range(cfg);
        const ClassifierThresholds th;
        if (cfg.n_max - cfg.n_min + 1 < th.min_range)
            throw CliError(exit_bad_range, "diagnose needs an n range of at least " + std::to_string(th.min_range));
        const LambdaSeries s = compute_series(cfg, cfg.method);
        AsymptoticModel am;
        am.counting = cfg.model;
        am.include_delta = cfg.include_delta;
        const DiagnosisReport rep = classify(s, am, th);
        auto j = report_json(rep);
        j["method"] = method_name(s.method);
        j["truncation"] = s.truncation;
        detail::OutputSink sink(cfg.output, out);
        sink.stream() << j.dump(2) << '\n';
        return static_cast<int>(exit_ok);
    });
}

inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    switch (cfg.command) {
        case Command::compute: return run_compute(cfg, out, err);
        case Command::compare: return run_compare(cfg, out, err);
        case Command::diagnose: return run_diagnose(cfg, out, err);
    }
    return exit_failure;
}

}  // namespace lilambda::cli
