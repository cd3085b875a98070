// SPDX-License-Identifier: Apache-2.0
//
// dirbf: directional beamforming analysis for sparse mmWave MIMO channels
// Copyright (C) 2026 The dirbf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "dirbf/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <system_error>
#include <vector>

#include <CLI11.hpp>
#include <omp.h>

#include "dirbf/closedform.hpp"
#include "dirbf/errors.hpp"
#include "dirbf/montecarlo.hpp"
#include "dirbf/numfmt.hpp"
#include "dirbf/rng.hpp"
#include "dirbf/steering.hpp"
#include "dirbf/verify.hpp"

namespace dirbf::cli {

namespace {

using closedform::TwoPathParams;
using Params = std::map<std::string, std::string>;

constexpr const char *kVersion = DIRBF_VERSION;

struct OptionSpec {
    const char *key;
    const char *default_value;
    const char *help;
};

const std::vector<OptionSpec> kTwoPathOptions = {
    {"a1", "1", "|alpha_1|"}, // first: sweeps derive it from K
    {"a2", "1", "|alpha_2|"},
    {"uu", "", "|u_1^H u_2| in [0, 1]; defaults to the value the case requires, else 0"},
    {"vv", "", "|v_1^H v_2| in [0, 1]; defaults to the value the case requires, else 0"},
    {"phase-diff-deg", "0", "angle(alpha_1) - angle(alpha_2), degrees"},
    {"uu-phase-deg", "0", "angle(u_1^H u_2), degrees"},
    {"vv-phase-deg", "0", "angle(v_1^H v_2), degrees"},
};

const std::vector<OptionSpec> kSweepOptions = {
    {"k-min", "1", "smallest K = |alpha_1| / |alpha_2|"},
    {"k-max", "10", "largest K"},
    {"points", "10", "number of K values"},
    {"k-scale", "linear", "K spacing: linear or log"},
};

const std::vector<OptionSpec> kCcdfOptions = {
    {"paths", "2", "number of paths L"},
    {"nt", "64", "transmit antennas"},
    {"nr", "4", "receive antennas"},
    {"spacing", "0.5", "element spacing in wavelengths"},
    {"trials", "10000", "Monte Carlo trials"},
    {"seed", "42", "64-bit RNG seed"},
    {"fov-deg", "120", "azimuth field of view centred on broadside, degrees"},
    {"scheme", "bidirectional", "bidirectional, dominant_tx_mf_rx or equal_power"},
    {"gain-model", "complex_gaussian", "path gain distribution"},
    {"threads", "0", "OpenMP threads; 0 keeps the runtime default"},
};

const std::vector<OptionSpec> kVerifyOptions = {
    {"trials", "0", "random draws; 0 selects the suite default"},
    {"seed", "42", "64-bit RNG seed"},
};

// ---- strict scalar parsing -------------------------------------------------

double get_double(const Params &p, const std::string &key) {
    const std::string &s = p.at(key);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
        throw ArgumentError("--" + key + ": expected a finite number, got '" + s + "'");
    return v;
}

template <typename Int> Int get_int(const Params &p, const std::string &key) {
    const std::string &s = p.at(key);
    Int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ArgumentError("--" + key + ": expected an integer, got '" + s + "'");
    return v;
}

// ---- closed-form cases -----------------------------------------------------

enum class Case { v_orth, u_orth, v_parallel, u_parallel, equal_power };

Case parse_case(std::string_view name) {
    if (name == "v-orth")
        return Case::v_orth;
    if (name == "u-orth")
        return Case::u_orth;
    if (name == "v-parallel")
        return Case::v_parallel;
    if (name == "u-parallel")
        return Case::u_parallel;
    if (name == "equal-power")
        return Case::equal_power;
    throw ArgumentError("unknown case '" + std::string(name) +
                        "' (expected v-orth, u-orth, v-parallel, u-parallel or equal-power)");
}

// Inner-product magnitude a case pins, if any.
std::optional<double> required_uu(Case c) {
    if (c == Case::u_orth)
        return 0.0;
    if (c == Case::u_parallel)
        return 1.0;
    return std::nullopt;
}

std::optional<double> required_vv(Case c) {
    if (c == Case::v_orth)
        return 0.0;
    if (c == Case::v_parallel)
        return 1.0;
    return std::nullopt;
}

void resolve_inner_product(Params &p, const std::string &key, std::optional<double> required) {
    if (p[key].empty()) {
        p[key] = required ? format_double(*required) : "0";
        return;
    }
    const double v = get_double(p, key);
    if (required && std::abs(v - *required) > closedform::kRegimeTol)
        throw RegimeError("case '" + p.at("case") + "' requires --" + key + " " + format_double(*required) + ", got " +
                          p.at(key));
}

TwoPathParams two_path_params(const Params &p, double mag_a1) {
    TwoPathParams t;
    t.mag_a1 = mag_a1;
    t.mag_a2 = get_double(p, "a2");
    t.uu_mag = get_double(p, "uu");
    t.vv_mag = get_double(p, "vv");
    t.phase_diff = deg_to_rad(get_double(p, "phase-diff-deg"));
    t.uu_phase = deg_to_rad(get_double(p, "uu-phase-deg"));
    t.vv_phase = deg_to_rad(get_double(p, "vv-phase-deg"));
    t.validate();
    return t;
}

struct CaseResult {
    std::optional<closedform::AllocationPoint> alloc;
    closedform::DeltaSnr delta;
    std::string delta_meaning;
    double snr_optimal = 0.0;
    std::optional<double> snr_scheme;
};

CaseResult evaluate_case(Case c, const TwoPathParams &p) {
    CaseResult r;
    r.snr_optimal = closedform::snr_optimal(p);
    switch (c) {
    case Case::v_orth:
        r.alloc = closedform::beta_opt_v_orth(p);
        r.delta = closedform::delta_snr_v_orth(p);
        r.delta_meaning = "optimal over dominant-path beamforming";
        break;
    case Case::u_orth:
        r.alloc = closedform::beta_opt_u_orth(p);
        r.delta = closedform::delta_snr_u_orth(p);
        r.delta_meaning = "optimal over dominant-path beamforming";
        break;
    case Case::v_parallel:
        r.snr_scheme = closedform::snr_v_parallel(p);
        r.delta = closedform::delta_snr_v_parallel(p);
        r.delta_meaning = "optimal over dominant-path beamforming";
        break;
    case Case::u_parallel:
        r.alloc = closedform::beta_opt_u_parallel(p);
        r.snr_optimal = closedform::snr_u_parallel_optimal(p);
        r.delta = closedform::delta_snr_u_parallel(p);
        r.delta_meaning = "optimal over dominant-path beamforming";
        break;
    case Case::equal_power: {
        const double dominant = closedform::snr_dominant_path(p);
        const double equal = closedform::snr_equal_power_coherent(p);
        r.snr_scheme = equal;
        r.delta.ratio = dominant / equal;
        r.delta_meaning = "dominant-path over equal-power beamforming";
        break;
    }
    }
    return r;
}

// ---- config resolution -----------------------------------------------------

McConfig mc_config(const Params &p) {
    McConfig mc;
    mc.num_paths = get_int<int>(p, "paths");
    mc.nt = get_int<int>(p, "nt");
    mc.nr = get_int<int>(p, "nr");
    mc.spacing_wavelengths = get_double(p, "spacing");
    mc.trials = get_int<std::uint64_t>(p, "trials");
    mc.seed = get_int<std::uint64_t>(p, "seed");
    mc.fov_deg = get_double(p, "fov-deg");
    mc.scheme = parse_scheme(p.at("scheme"));
    mc.gain_model = parse_gain_model(p.at("gain-model"));
    return mc;
}

void resolve(RunConfig &cfg) {
    Params &p = cfg.parameters;
    switch (cfg.command) {
    case Command::closedform:
    case Command::sweep: {
        const Case c = parse_case(p.at("case"));
        resolve_inner_product(p, "uu", required_uu(c));
        resolve_inner_product(p, "vv", required_vv(c));
        if (cfg.command == Command::closedform) {
            two_path_params(p, get_double(p, "a1"));
            break;
        }
        const double k_min = get_double(p, "k-min");
        const double k_max = get_double(p, "k-max");
        const auto points = get_int<int>(p, "points");
        if (!(k_min > 0.0) || k_max < k_min)
            throw ArgumentError("K range must satisfy 0 < k-min <= k-max");
        if (points < 1 || (points == 1 && k_max != k_min))
            throw ArgumentError("--points must be at least 2 for a nonempty K range");
        const std::string &scale = p.at("k-scale");
        if (scale != "linear" && scale != "log")
            throw ArgumentError("--k-scale must be linear or log");
        two_path_params(p, k_min * get_double(p, "a2"));
        break;
    }
    case Command::ccdf: {
        mc_config(p).validate();
        if (get_int<int>(p, "threads") < 0)
            throw ArgumentError("--threads must be nonnegative");
        break;
    }
    case Command::verify: {
        const verify::Suite s = verify::parse_suite(p.at("suite"));
        get_int<std::uint64_t>(p, "seed");
        if (get_int<std::uint64_t>(p, "trials") == 0)
            p["trials"] = std::to_string(verify::default_trials(s));
        break;
    }
    }
}

// ---- argument parser -------------------------------------------------------

class Parser {
  public:
    Parser() : app_("dirbf: directional beamforming analysis for sparse mmWave MIMO channels", "dirbf") {
        app_.set_version_flag("--version", kVersion);
        app_.set_config("--config", "", "key-value (TOML) config file; flags override its values");
        app_.allow_config_extras(CLI::config_extras_mode::error);
        app_.require_subcommand(1);

        Sub &cf = add_sub(Command::closedform, "Evaluate a two-path closed-form case", "json");
        add_required(cf, "case", "v-orth, u-orth, v-parallel, u-parallel or equal-power");
        add_options(cf, kTwoPathOptions);

        Sub &sw = add_sub(Command::sweep, "Tabulate a closed-form loss against K = |alpha_1| / |alpha_2|", "csv");
        add_required(sw, "case", "v-orth, u-orth, v-parallel, u-parallel or equal-power");
        add_options(sw, kSweepOptions);
        add_options(sw, std::vector<OptionSpec>(kTwoPathOptions.begin() + 1, kTwoPathOptions.end()));

        Sub &cc = add_sub(Command::ccdf, "Monte Carlo CCDF of the SNR loss against the optimal beamformer", "csv");
        add_options(cc, kCcdfOptions);

        Sub &vf = add_sub(Command::verify, "Check closed forms and eigen-structure against independent oracles", "json");
        add_required(vf, "suite", "prop1, prop2, prop3, prop4 or bounds");
        add_options(vf, kVerifyOptions);
    }

    RunConfig parse(int argc, const char *const *argv) {
        app_.parse(argc, argv);
        for (const auto &sub : subs_) {
            if (!sub->app->parsed())
                continue;
            RunConfig cfg;
            cfg.command = sub->command;
            cfg.parameters = sub->values;
            cfg.output_path = sub->out;
            cfg.format = parse_format(sub->format);
            resolve(cfg);
            return cfg;
        }
        throw CLI::RequiredError("a subcommand");
    }

    int exit(const CLI::Error &e, std::ostream &out, std::ostream &err) { return app_.exit(e, out, err); }

  private:
    struct Sub {
        Command command;
        CLI::App *app = nullptr;
        Params values;
        std::string out;
        std::string format;
    };

    Sub &add_sub(Command command, const std::string &help, const char *default_format) {
        auto sub = std::make_unique<Sub>();
        sub->command = command;
        sub->format = default_format;
        sub->app = app_.add_subcommand(to_string(command), help);
        sub->app->configurable();
        sub->app->add_option("--out", sub->out, "output file; stdout when omitted");
        sub->app->add_option("--format", sub->format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
        subs_.push_back(std::move(sub));
        return *subs_.back();
    }

    static void add_required(Sub &s, const char *key, const char *help) {
        s.app->add_option(std::string("--") + key, s.values[key], help)->required();
    }

    static void add_options(Sub &s, const std::vector<OptionSpec> &specs) {
        for (const auto &o : specs) {
            std::string &slot = s.values[o.key];
            slot = o.default_value;
            s.app->add_option(std::string("--") + o.key, slot, o.help)->capture_default_str();
        }
    }

    CLI::App app_;
    std::vector<std::unique_ptr<Sub>> subs_;
};

// ---- output ----------------------------------------------------------------

std::string comment_block(const std::vector<std::string> &lines) {
    std::string s;
    for (const auto &l : lines)
        s += "# " + l + "\n";
    return s;
}

std::string csv_preamble(const RunConfig &cfg, const std::vector<std::string> &extra = {}) {
    std::vector<std::string> lines{std::string("dirbf ") + kVersion};
    lines.insert(lines.end(), extra.begin(), extra.end());
    lines.emplace_back("config:");
    std::istringstream toml(to_toml(cfg));
    for (std::string line; std::getline(toml, line);)
        lines.push_back(line);
    return comment_block(lines);
}

nlohmann::json json_envelope(const RunConfig &cfg) {
    return {{"dirbf_version", kVersion}, {"config", to_json(cfg)}};
}

std::string json_text(const nlohmann::json &doc) { return doc.dump(2) + "\n"; }

void emit(const RunConfig &cfg, const std::string &text, std::ostream &out) {
    if (cfg.output_path.empty()) {
        out << text;
        out.flush();
        return;
    }
    std::ofstream f(cfg.output_path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw IoError("cannot open '" + cfg.output_path + "' for writing");
    f << text;
    f.close();
    if (!f)
        throw IoError("failed writing '" + cfg.output_path + "'");
}

std::string csv_number(std::optional<double> v) { return v ? format_double(*v) : std::string(); }

int run_closedform(const RunConfig &cfg, std::ostream &out) {
    const Params &p = cfg.parameters;
    const Case c = parse_case(p.at("case"));
    const TwoPathParams params = two_path_params(p, get_double(p, "a1"));
    const CaseResult r = evaluate_case(c, params);

    std::vector<std::pair<std::string, std::optional<double>>> rows;
    if (r.alloc) {
        rows.emplace_back("beta_sq", r.alloc->beta_sq());
        rows.emplace_back("beta", r.alloc->beta);
        rows.emplace_back("theta_deg", rad_to_deg(r.alloc->theta));
    }
    rows.emplace_back("nu_deg", rad_to_deg(params.nu()));
    rows.emplace_back("snr_optimal", r.snr_optimal);
    if (r.snr_scheme)
        rows.emplace_back("snr_scheme", *r.snr_scheme);
    rows.emplace_back("delta_snr", r.delta.unbounded ? std::numeric_limits<double>::infinity() : r.delta.ratio);
    rows.emplace_back("delta_snr_db", r.delta.db());

    if (cfg.format == Format::json) {
        nlohmann::json doc = json_envelope(cfg);
        nlohmann::json res;
        res["case"] = p.at("case");
        for (const auto &[k, v] : rows)
            res[k] = std::isfinite(*v) ? nlohmann::json(*v) : nlohmann::json(format_double(*v));
        res["delta_meaning"] = r.delta_meaning;
        res["paths_swapped"] = r.delta.swapped;
        res["unbounded"] = r.delta.unbounded;
        doc["result"] = res;
        emit(cfg, json_text(doc), out);
    } else {
        std::string text = csv_preamble(cfg, {"delta_snr: " + r.delta_meaning}) + "quantity,value\n";
        for (const auto &[k, v] : rows)
            text += k + "," + csv_number(v) + "\n";
        emit(cfg, text, out);
    }
    return kExitOk;
}

int run_sweep(const RunConfig &cfg, std::ostream &out) {
    const Params &p = cfg.parameters;
    const Case c = parse_case(p.at("case"));
    const double k_min = get_double(p, "k-min");
    const double k_max = get_double(p, "k-max");
    const int points = get_int<int>(p, "points");
    const bool log_scale = p.at("k-scale") == "log";

    struct Row {
        double k;
        std::optional<double> beta_sq;
        double ratio;
        double db;
    };
    std::vector<Row> rows;
    std::string meaning;
    for (int i = 0; i < points; ++i) {
        double k = k_min;
        if (points > 1) {
            const double t = static_cast<double>(i) / (points - 1);
            k = log_scale ? k_min * std::pow(k_max / k_min, t) : k_min + (k_max - k_min) * t;
            if (i == points - 1)
                k = k_max;
        }
        const CaseResult r = evaluate_case(c, two_path_params(p, k * get_double(p, "a2")));
        meaning = r.delta_meaning;
        std::optional<double> bsq;
        if (r.alloc)
            bsq = r.alloc->beta_sq();
        rows.push_back({k, bsq, r.delta.unbounded ? std::numeric_limits<double>::infinity() : r.delta.ratio,
                        r.delta.db()});
    }

    if (cfg.format == Format::json) {
        nlohmann::json doc = json_envelope(cfg);
        doc["delta_meaning"] = meaning;
        doc["rows"] = nlohmann::json::array();
        for (const auto &row : rows) {
            nlohmann::json j{{"k", row.k}};
            j["beta_sq"] = row.beta_sq ? nlohmann::json(*row.beta_sq) : nlohmann::json(nullptr);
            j["delta_snr"] = std::isfinite(row.ratio) ? nlohmann::json(row.ratio) : nlohmann::json("inf");
            j["delta_snr_db"] = std::isfinite(row.db) ? nlohmann::json(row.db) : nlohmann::json("inf");
            doc["rows"].push_back(j);
        }
        emit(cfg, json_text(doc), out);
    } else {
        std::string text = csv_preamble(cfg, {"delta_snr: " + meaning}) + "k,beta_sq,delta_snr,delta_snr_db\n";
        for (const auto &row : rows)
            text += format_double(row.k) + "," + csv_number(row.beta_sq) + "," + format_double(row.ratio) + "," +
                    format_double(row.db) + "\n";
        emit(cfg, text, out);
    }
    return kExitOk;
}

int run_ccdf_command(const RunConfig &cfg, std::ostream &out) {
    const McConfig mc = mc_config(cfg.parameters);
    if (const int threads = get_int<int>(cfg.parameters, "threads"); threads > 0)
        omp_set_num_threads(threads);
    const CcdfTable table = run_ccdf(mc);

    if (cfg.format == Format::json) {
        nlohmann::json doc = json_envelope(cfg);
        doc["result"] = ccdf_to_json(table, mc);
        emit(cfg, json_text(doc), out);
    } else {
        const std::vector<std::string> extra{
            std::string("rng: ") + TrialRng::kAlgorithm,
            "resampled_trials: " + std::to_string(table.resampled_trials),
            "nonconverged_trials: " + std::to_string(table.nonconverged_trials),
        };
        emit(cfg, ccdf_to_csv(table, csv_preamble(cfg, extra)), out);
    }
    return kExitOk;
}

int run_verify(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    const Params &p = cfg.parameters;
    const verify::VerifyReport report = verify::run(verify::parse_suite(p.at("suite")),
                                                    get_int<std::uint64_t>(p, "trials"),
                                                    get_int<std::uint64_t>(p, "seed"));
    if (cfg.format == Format::json) {
        nlohmann::json doc = json_envelope(cfg);
        doc["result"] = report.to_json();
        emit(cfg, json_text(doc), out);
    } else {
        std::string text = csv_preamble(cfg) + "check,cases,failures,worst,tolerance,passed\n";
        for (const auto &c : report.checks)
            text += c.name + "," + std::to_string(c.cases) + "," + std::to_string(c.failures) + "," +
                    format_double(c.worst) + "," + format_double(c.tolerance) + "," +
                    (c.passed() ? "true" : "false") + "\n";
        emit(cfg, text, out);
    }
    for (const auto &c : report.checks)
        err << (c.passed() ? "PASS " : "FAIL ") << c.name << ": " << c.cases - c.failures << "/" << c.cases
            << " within " << format_double(c.tolerance) << ", worst " << format_double(c.worst) << "\n";
    return report.passed() ? kExitOk : kExitVerifyFailed;
}

void error_record(std::ostream &err, const char *kind, int code, const std::string &message) {
    const nlohmann::json rec{{"error", {{"kind", kind}, {"exit_code", code}, {"message", message}}}};
    err << rec.dump() << "\n";
}

} // namespace

std::string to_string(Command c) {
    switch (c) {
    case Command::closedform:
        return "closedform";
    case Command::sweep:
        return "sweep";
    case Command::ccdf:
        return "ccdf";
    case Command::verify:
        return "verify";
    }
    return "?";
}

std::string to_string(Format f) { return f == Format::csv ? "csv" : "json"; }

Command parse_command(std::string_view name) {
    for (const Command c : {Command::closedform, Command::sweep, Command::ccdf, Command::verify})
        if (name == to_string(c))
            return c;
    throw ArgumentError("unknown command '" + std::string(name) + "'");
}

Format parse_format(std::string_view name) {
    if (name == "csv")
        return Format::csv;
    if (name == "json")
        return Format::json;
    throw ArgumentError("unknown format '" + std::string(name) + "'");
}

RunConfig parse_args(int argc, const char *const *argv) {
    Parser parser;
    return parser.parse(argc, argv);
}

std::string to_toml(const RunConfig &cfg) {
    auto quoted = [](const std::string &v) { return "\"" + v + "\""; };
    std::string s = "[" + to_string(cfg.command) + "]\n";
    for (const auto &[k, v] : cfg.parameters)
        s += k + " = " + quoted(v) + "\n";
    s += "out = " + quoted(cfg.output_path) + "\n";
    s += "format = " + quoted(to_string(cfg.format)) + "\n";
    return s;
}

nlohmann::json to_json(const RunConfig &cfg) {
    return {{"command", to_string(cfg.command)},
            {"parameters", cfg.parameters},
            {"out", cfg.output_path},
            {"format", to_string(cfg.format)}};
}

RunConfig run_config_from_json(const nlohmann::json &doc) {
    RunConfig cfg;
    cfg.command = parse_command(doc.at("command").get<std::string>());
    cfg.parameters = doc.at("parameters").get<Params>();
    cfg.output_path = doc.at("out").get<std::string>();
    cfg.format = parse_format(doc.at("format").get<std::string>());
    return cfg;
}

int run(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    switch (cfg.command) {
    case Command::closedform:
        return run_closedform(cfg, out);
    case Command::sweep:
        return run_sweep(cfg, out);
    case Command::ccdf:
        return run_ccdf_command(cfg, out);
    case Command::verify:
        return run_verify(cfg, out, err);
    }
    return kExitUsage;
}

int main(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    Parser parser;
    try {
        const RunConfig cfg = parser.parse(argc, argv);
        return run(cfg, out, err);
    } catch (const CLI::FileError &e) {
        error_record(err, "io", kExitIo, e.what());
        return kExitIo;
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0)
            return parser.exit(e, out, err);
        error_record(err, "usage", kExitUsage, e.what());
        return kExitUsage;
    } catch (const IoError &e) {
        error_record(err, "io", kExitIo, e.what());
        return kExitIo;
    } catch (const ArgumentError &e) {
        error_record(err, "usage", kExitUsage, e.what());
        return kExitUsage;
    } catch (const RegimeError &e) {
        error_record(err, "usage", kExitUsage, e.what());
        return kExitUsage;
    } catch (const UnsupportedError &e) {
        error_record(err, "usage", kExitUsage, e.what());
        return kExitUsage;
    } catch (const std::exception &e) {
        error_record(err, "internal", 1, e.what());
        return 1;
    }
}

} // namespace dirbf::cli
