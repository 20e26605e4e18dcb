#include "polysep/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "polysep/analytic_sep.hpp"
#include "polysep/errors.hpp"
#include "polysep/geometry.hpp"
#include "polysep/metrics.hpp"
#include "polysep/montecarlo.hpp"
#include "polysep/snr.hpp"
#include "polysep/specfun.hpp"

namespace polysep {

namespace {

// Values from a --config file (simple `key = value` lines). Flags override
// these; these override built-in defaults.
struct FileConfig {
    std::optional<std::uint64_t> trials, seed;
    std::optional<int> workers, digits;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

FileConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    FileConfig fc;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "trials")
                fc.trials = std::stoull(value);
            else if (key == "seed")
                fc.seed = std::stoull(value);
            else if (key == "workers")
                fc.workers = std::stoi(value);
            else if (key == "digits")
                fc.digits = std::stoi(value);
            else
                throw std::invalid_argument("config line " + std::to_string(lineno) +
                                            ": unknown key '" + key + "'");
        } catch (const std::invalid_argument&) {
            throw;
        } catch (const std::exception&) {
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": bad value for '" + key + "'");
        }
    }
    return fc;
}

// Pre-scan for --config so file values can act as defaults during resolution.
FileConfig prescan_config(const std::vector<std::string>& args) {
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a == "--config") {
            if (i + 1 >= args.size())
                throw std::invalid_argument("--config requires a path");
            return load_config(args[i + 1]);
        }
        if (a.rfind("--config=", 0) == 0) return load_config(a.substr(9));
    }
    return {};
}

std::string fmt_prob(long double v, int digits) {
    if (!(v > 1e-300L)) return "0";  // stability floor: tiny tails print as 0
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.*Lg", digits, v);
    return buf;
}

std::string fmt_real(double v, int digits) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

// Size flag resolution: polygon takes --m, the n-parameterized kinds take
// --n, the fixed polytopes take neither.
int resolve_size(Kind kind, bool has_n, int n, bool has_m, int m) {
    const bool wants_n = kind == Kind::cube || kind == Kind::crosspolytope ||
                         kind == Kind::simplex;
    const bool wants_m = kind == Kind::polygon;
    if (wants_n) {
        if (!has_n)
            throw std::invalid_argument("--n is required for " + kind_to_string(kind));
        if (has_m) throw std::invalid_argument("--m is not valid for " + kind_to_string(kind));
        return n;
    }
    if (wants_m) {
        if (!has_m) throw std::invalid_argument("--m is required for polygon");
        if (has_n) throw std::invalid_argument("--n is not valid for polygon");
        return m;
    }
    if (has_n || has_m)
        throw std::invalid_argument(kind_to_string(kind) + " takes neither --n nor --m");
    return 0;
}

template <typename Fn>
int with_output(const std::string& path, std::ostream& fallback, Fn fn) {
    if (path.empty() || path == "-") return fn(fallback);
    std::ofstream f(path);
    if (!f) throw std::invalid_argument("cannot open output file: " + path);
    return fn(f);
}

Method method_from_string(const std::string& s) {
    if (s == "naive") return Method::naive_exact;
    if (s == "stable" || s == "exact") return Method::stable_exact;
    if (s == "ub" || s == "union-bound" || s == "union_bound") return Method::union_bound_m;
    throw std::invalid_argument("unknown method '" + s + "' (naive|stable|exact|ub)");
}

// ---- gen ----------------------------------------------------------------

int cmd_gen(Kind kind, int size, Orientation orient, const std::string& format,
            std::ostream& os) {
    const Constellation c = generate(kind, size, orient);
    if (format == "json") {
        nlohmann::ordered_json j;
        j["kind"] = kind_to_string(kind);
        j["n"] = c.n;
        j["M"] = c.m;
        j["Es"] = c.symbol_energy;
        j["points"] = c.points;
        os << j.dump(2) << "\n";
        return 0;
    }
    for (int k = 0; k < c.n; ++k) os << (k ? "," : "") << "x" << (k + 1);
    os << "\n";
    for (const auto& p : c.points) {
        for (int k = 0; k < c.n; ++k) os << (k ? "," : "") << fmt_real(p[k], 17);
        os << "\n";
    }
    return 0;
}

// ---- params -------------------------------------------------------------

int cmd_params(Kind kind, int size, std::ostream& os) {
    const TableParams tp = table_params(kind, size);
    os << "M,A,d_over_sqrtEs,Gb_dB,S\n";
    os << tp.m << "," << tp.a << "," << fmt_real(tp.d_over_sqrt_es, 12) << ","
       << fmt_real(tp.gb_db, 12) << "," << fmt_real(tp.s, 12) << "\n";
    return 0;
}

// ---- sweep --------------------------------------------------------------

struct SweepCol {
    std::string header;
    Kind kind;
    int size;
    Method method;
    double log2_m;
};

SweepCol make_col(Kind kind, int size, Method method) {
    const TableParams tp = table_params(kind, size);
    std::string name = kind_to_string(kind);
    if (kind == Kind::polygon || kind == Kind::cube ||
        kind == Kind::crosspolytope || kind == Kind::simplex)
        name += std::to_string(size);
    switch (method) {
        case Method::naive_exact: name += "_naive"; break;
        case Method::stable_exact: name += "_exact"; break;
        case Method::union_bound_m: name += "_ub"; break;
        default: throw std::invalid_argument("sweep: unsupported method");
    }
    return {name, kind, size, method, std::log2(double(tp.m))};
}

std::vector<SweepCol> figure_columns(const std::string& figure) {
    std::vector<SweepCol> cols;
    if (figure == "1a") {
        for (int m : {3, 4, 8, 16}) cols.push_back(make_col(Kind::polygon, m, Method::stable_exact));
    } else if (figure == "1b") {
        cols.push_back(make_col(Kind::cube, 3, Method::stable_exact));
        cols.push_back(make_col(Kind::crosspolytope, 3, Method::stable_exact));
        cols.push_back(make_col(Kind::simplex, 3, Method::stable_exact));
        cols.push_back(make_col(Kind::icosahedron, 0, Method::union_bound_m));
        cols.push_back(make_col(Kind::dodecahedron, 0, Method::union_bound_m));
    } else if (figure == "1c") {
        cols.push_back(make_col(Kind::cube, 4, Method::stable_exact));
        cols.push_back(make_col(Kind::crosspolytope, 4, Method::stable_exact));
        cols.push_back(make_col(Kind::simplex, 4, Method::stable_exact));
        cols.push_back(make_col(Kind::cell24, 0, Method::stable_exact));
        cols.push_back(make_col(Kind::cell600, 0, Method::union_bound_m));
        cols.push_back(make_col(Kind::cell120, 0, Method::union_bound_m));
    } else if (figure == "1d") {
        cols.push_back(make_col(Kind::cube, 5, Method::stable_exact));
        cols.push_back(make_col(Kind::crosspolytope, 5, Method::stable_exact));
        cols.push_back(make_col(Kind::simplex, 5, Method::stable_exact));
    } else {
        throw std::invalid_argument("unknown figure '" + figure + "' (1a|1b|1c|1d)");
    }
    return cols;
}

int cmd_sweep(const std::vector<SweepCol>& cols, bool axis_gamma_b, double x_min,
              double x_max, double x_step, int digits, std::ostream& os) {
    if (!(x_min < x_max)) throw std::invalid_argument("sweep: x-min < x-max required");
    if (!(x_step > 0)) throw std::invalid_argument("sweep: x-step > 0 required");

    os << (axis_gamma_b ? "gamma_b_db" : "gamma_db");
    for (const auto& c : cols) os << "," << c.header;
    os << ",bpsk_ref\n";

    const int steps = int(std::floor((x_max - x_min) / x_step + 1e-9));
    for (int i = 0; i <= steps; ++i) {
        const double x = x_min + i * x_step;
        os << fmt_real(x, 12);
        for (const auto& c : cols) {
            const SnrPoint snr = axis_gamma_b ? SnrPoint::from_gamma_b_db(x, c.log2_m)
                                              : SnrPoint::from_db(x);
            const SepValue v = sep_dispatch(c.kind, c.size, snr, c.method);
            os << "," << fmt_prob(v.p, digits);
        }
        const SnrPoint ref = axis_gamma_b ? SnrPoint::from_gamma_b_db(x, 1.0)
                                          : SnrPoint::from_db(x);
        os << "," << fmt_prob(sep_cube(1, ref, Form::stable).p, digits) << "\n";
    }
    return 0;
}

// ---- simulate -----------------------------------------------------------

int cmd_simulate(Kind kind, int size, Orientation orient, double gamma,
                 std::uint64_t trials, std::uint64_t seed, int workers,
                 bool uniform_symbol, int digits, std::ostream& os) {
    const Constellation c = generate(kind, size, orient);
    const McEstimate e = simulate_sep(c, SnrPoint::from_linear(gamma), trials, seed,
                                      workers, uniform_symbol);
    const auto wilson = confidence_interval(e.errors, e.trials, 0.95);
    os << "trials,errors,p_hat,ci95_halfwidth,wilson_lo,wilson_hi,seed\n";
    os << e.trials << "," << e.errors << "," << fmt_real(e.p_hat, digits) << ","
       << fmt_real(e.ci95_halfwidth, digits) << "," << fmt_real(wilson.first, digits)
       << "," << fmt_real(wilson.second, digits) << "," << e.seed << "\n";
    return 0;
}

// ---- gap ----------------------------------------------------------------

int cmd_gap(int nmax, std::ostream& os, std::ostream& err) {
    if (nmax < 2) throw std::invalid_argument("gap: --nmax >= 2 required");
    os << "n,gap_db\n";
    int argmax = 2;
    double best = cp_simplex_gap(2.0);
    for (int n = 2; n <= nmax; ++n) {
        const double v = cp_simplex_gap(double(n));
        if (v > best) {
            best = v;
            argmax = n;
        }
        os << n << "," << fmt_real(10.0 * std::log10(v), 12) << "\n";
    }
    // Real maximizer by golden-section search around the integer argmax.
    const double lo = std::max(2.0, double(argmax) - 1.0);
    const double hi = std::min(double(nmax), double(argmax) + 1.0);
    const double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
    double f1 = cp_simplex_gap(x1), f2 = cp_simplex_gap(x2);
    while (b - a > 1e-8) {
        if (f1 < f2) {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = cp_simplex_gap(x2);
        } else {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = cp_simplex_gap(x1);
        }
    }
    const double n_real = 0.5 * (a + b);
    const bool boundary = argmax == 2 || argmax == nmax;
    os << "# argmax_n=" << argmax << ",n_real=" << fmt_real(n_real, 12)
       << ",peak_db=" << fmt_real(10.0 * std::log10(best), 12)
       << (boundary ? ",boundary=true" : "") << "\n";
    if (boundary)
        err << "warning: maximum at domain boundary n=" << argmax
            << "; increase --nmax for an interior maximizer\n";
    return 0;
}

// ---- wiring ---------------------------------------------------------------

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    const FileConfig cfg = prescan_config(args);

    CLI::App app{"symbol error probabilities of regular-polytope constellations"};
    app.name("polysep");
    app.require_subcommand(1);

    std::string kind_str, orient_str = "rotated", format = "csv", out_path;
    std::string figure, method_str = "stable", axis_str = "gamma_b_db", config_path;
    int n_val = 0, m_val = 0, digits = 17, workers = 1, nmax = 1000;
    double x_min = 0.0, x_max = 12.0, x_step = 0.25;
    double gamma_db = 0.0, gamma_b_db = 0.0;
    std::uint64_t trials = 1000000, seed = 12345;

    const auto add_common = [&](CLI::App* sub, bool with_size) {
        sub->add_option("--out", out_path, "output file path, or - for stdout");
        sub->add_option("--config", config_path, "key = value config file");
        if (with_size) {
            sub->add_option("--n", n_val, "dimension for cube|crosspolytope|simplex");
            sub->add_option("--m", m_val, "vertex count for polygon");
        }
    };

    CLI::App* gen = app.add_subcommand("gen", "emit constellation vertices");
    gen->add_option("kind", kind_str, "constellation kind")->required();
    gen->add_option("--orientation", orient_str, "cell24 embedding: rotated|standard")
        ->check(CLI::IsMember({"rotated", "standard"}));
    gen->add_option("--format", format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    add_common(gen, true);

    CLI::App* params = app.add_subcommand("params", "closed-form parameter row");
    params->add_option("kind", kind_str, "constellation kind")->required();
    add_common(params, true);

    CLI::App* sweep = app.add_subcommand("sweep", "SEP-vs-SNR CSV table");
    sweep->add_option("kind", kind_str, "constellation kind (omit with --figure)");
    sweep->add_option("--figure", figure, "preset panel: 1a|1b|1c|1d");
    sweep->add_option("--method", method_str, "naive|stable|exact|ub");
    sweep->add_option("--x-axis", axis_str, "gamma_b_db|gamma_db")
        ->check(CLI::IsMember({"gamma_b_db", "gamma_db"}));
    sweep->add_option("--x-min", x_min, "start of the dB grid");
    sweep->add_option("--x-max", x_max, "end of the dB grid");
    sweep->add_option("--x-step", x_step, "dB grid step");
    CLI::Option* sweep_digits = sweep->add_option("--digits", digits, "significant digits");
    add_common(sweep, true);

    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo SEP estimate");
    simulate->add_option("kind", kind_str, "constellation kind")->required();
    simulate->add_option("--orientation", orient_str, "cell24 embedding")
        ->check(CLI::IsMember({"rotated", "standard"}));
    CLI::Option* opt_gdb = simulate->add_option("--gamma-db", gamma_db, "symbol SNR in dB");
    CLI::Option* opt_gbdb = simulate->add_option("--gamma-b-db", gamma_b_db, "bit SNR in dB");
    CLI::Option* opt_trials = simulate->add_option("--trials", trials, "number of trials");
    CLI::Option* opt_seed = simulate->add_option("--seed", seed, "RNG seed");
    CLI::Option* opt_workers = simulate->add_option("--workers", workers, "worker threads");
    simulate->add_flag("--uniform-symbol", "draw the transmitted symbol uniformly");
    CLI::Option* sim_digits = simulate->add_option("--digits", digits, "significant digits");
    add_common(simulate, true);

    CLI::App* gap = app.add_subcommand("gap", "crosspolytope-vs-simplex gap table");
    gap->add_option("--nmax", nmax, "largest dimension tabulated");
    add_common(gap, false);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    // flags > config file > built-ins
    if (opt_trials->count() == 0 && cfg.trials) trials = *cfg.trials;
    if (opt_seed->count() == 0 && cfg.seed) seed = *cfg.seed;
    if (opt_workers->count() == 0 && cfg.workers) workers = *cfg.workers;
    if (sweep_digits->count() == 0 && sim_digits->count() == 0 && cfg.digits)
        digits = *cfg.digits;
    if (digits < 1 || digits > 36) throw std::invalid_argument("--digits must be 1..36");

    const Orientation orient =
        orient_str == "standard" ? Orientation::standard : Orientation::rotated;

    if (*gen) {
        const Kind kind = kind_from_string(kind_str);
        const int size = resolve_size(kind, gen->count("--n") > 0, n_val,
                                      gen->count("--m") > 0, m_val);
        return with_output(out_path, out,
                           [&](std::ostream& os) { return cmd_gen(kind, size, orient, format, os); });
    }
    if (*params) {
        const Kind kind = kind_from_string(kind_str);
        const int size = resolve_size(kind, params->count("--n") > 0, n_val,
                                      params->count("--m") > 0, m_val);
        return with_output(out_path, out,
                           [&](std::ostream& os) { return cmd_params(kind, size, os); });
    }
    if (*sweep) {
        const bool have_kind = sweep->count("kind") > 0;
        const bool have_fig = sweep->count("--figure") > 0;
        if (have_kind == have_fig)
            throw std::invalid_argument("sweep: give exactly one of <kind> or --figure");
        std::vector<SweepCol> cols;
        if (have_fig) {
            cols = figure_columns(figure);
        } else {
            const Kind kind = kind_from_string(kind_str);
            const int size = resolve_size(kind, sweep->count("--n") > 0, n_val,
                                          sweep->count("--m") > 0, m_val);
            cols.push_back(make_col(kind, size, method_from_string(method_str)));
        }
        const bool axis_gamma_b = axis_str == "gamma_b_db";
        return with_output(out_path, out, [&](std::ostream& os) {
            return cmd_sweep(cols, axis_gamma_b, x_min, x_max, x_step, digits, os);
        });
    }
    if (*simulate) {
        const Kind kind = kind_from_string(kind_str);
        const int size = resolve_size(kind, simulate->count("--n") > 0, n_val,
                                      simulate->count("--m") > 0, m_val);
        if ((opt_gdb->count() > 0) == (opt_gbdb->count() > 0))
            throw std::invalid_argument(
                "simulate: give exactly one of --gamma-db or --gamma-b-db");
        double gamma;
        if (opt_gdb->count() > 0) {
            gamma = SnrPoint::from_db(gamma_db).gamma;
        } else {
            const TableParams tp = table_params(kind, size);
            gamma = SnrPoint::from_gamma_b_db(gamma_b_db, std::log2(double(tp.m))).gamma;
        }
        const bool uniform = simulate->count("--uniform-symbol") > 0;
        return with_output(out_path, out, [&](std::ostream& os) {
            return cmd_simulate(kind, size, orient, gamma, trials, seed, workers,
                                uniform, digits, os);
        });
    }
    // gap is the only remaining subcommand
    return with_output(out_path, out,
                       [&](std::ostream& os) { return cmd_gap(nmax, os, err); });
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
    try {
        return run_cli(args, out, err);
    } catch (const NonConvergence& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace polysep
