#include "hydrospec/runner.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "hydrospec/circle_disc.hpp"
#include "hydrospec/eigs.hpp"
#include "hydrospec/perturb.hpp"
#include "hydrospec/segment_disc.hpp"

namespace hydrospec {

using nlohmann::json;

Command command_from_string(const std::string& name) {
    if (name == "spectrum") return Command::Spectrum;
    if (name == "resonances") return Command::Resonances;
    if (name == "track") return Command::Track;
    if (name == "validate") return Command::Validate;
    if (name == "sweep-alpha") return Command::SweepAlpha;
    if (name == "sweep-tau") return Command::SweepTau;
    throw config_error("unknown command: " + name);
}

std::string to_string(Command cmd) {
    switch (cmd) {
    case Command::Spectrum: return "spectrum";
    case Command::Resonances: return "resonances";
    case Command::Track: return "track";
    case Command::Validate: return "validate";
    case Command::SweepAlpha: return "sweep-alpha";
    case Command::SweepTau: return "sweep-tau";
    }
    return "?";
}

int ExperimentConfig::resolved_N() const {
    if (N > 0) return N;
    return profile->domain().is_segment() ? 64 : 128;
}

DeformedContour ExperimentConfig::contour() const {
    const EscapeFunction esc = escape ? *escape : EscapeFunction::for_profile(*profile);
    return DeformedContour(esc, tau);
}

namespace {

// ---------------------------------------------------------------------------
// Config parsing
// ---------------------------------------------------------------------------

double number_at(const json& j, const std::string& key, std::optional<double> fallback = {}) {
    if (!j.contains(key)) {
        if (fallback) return *fallback;
        throw config_error("config field missing: " + key);
    }
    if (!j.at(key).is_number()) throw config_error("config field must be a number: " + key);
    return j.at(key).get<double>();
}

Domain parse_domain(const json& j) {
    const std::string type = j.value("type", "segment");
    if (type == "segment") return Domain::segment(number_at(j, "a", -1.0), number_at(j, "b", 1.0));
    if (type == "circle") return Domain::circle(number_at(j, "period", 2.0 * M_PI));
    throw config_error("domain type must be 'segment' or 'circle'");
}

std::map<std::string, double> parse_params(const json& j) {
    std::map<std::string, double> params;
    if (!j.contains("params")) return params;
    for (const auto& [key, value] : j.at("params").items()) {
        if (!value.is_number()) throw config_error("profile/escape parameters must be numbers");
        params[key] = value.get<double>();
    }
    return params;
}

std::vector<double> parse_number_list(const json& j, const std::string& key) {
    std::vector<double> out;
    for (const auto& v : j.at(key)) {
        if (!v.is_number()) throw config_error(key + " must hold numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

} // namespace

ExperimentConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw config_error(std::string("config is not valid JSON: ") + e.what());
    }

    ExperimentConfig cfg;
    if (!j.contains("command")) throw config_error("config field missing: command");
    cfg.command = command_from_string(j.at("command").get<std::string>());

    if (!j.contains("profile")) throw config_error("config field missing: profile");
    const json& jp = j.at("profile");
    if (!jp.contains("kind")) throw config_error("profile.kind missing");
    const Domain domain = jp.contains("domain") ? parse_domain(jp.at("domain"))
                                                : Domain::segment(-1.0, 1.0);
    cfg.profile = make_profile(jp.at("kind").get<std::string>(), parse_params(jp), domain);

    if (j.contains("escape")) {
        const json& je = j.at("escape");
        if (!je.contains("kind")) throw config_error("escape.kind missing");
        cfg.escape = make_escape(je.at("kind").get<std::string>(), parse_params(je), domain);
    }

    cfg.tau = number_at(j, "tau", 0.1);
    if (cfg.tau < 0.0) throw config_error("tau must be >= 0");

    if (j.contains("alpha")) cfg.alpha = number_at(j, "alpha");
    if (j.contains("alpha_values")) cfg.alpha_values = parse_number_list(j, "alpha_values");
    if (j.contains("tau_values")) cfg.tau_values = parse_number_list(j, "tau_values");

    cfg.eps = number_at(j, "epsilon", 0.0);
    if (cfg.eps < 0.0) throw config_error("epsilon must be >= 0");
    if (j.contains("epsilon_grid")) {
        const json& jg = j.at("epsilon_grid");
        if (jg.is_array()) {
            cfg.eps_grid = parse_number_list(j, "epsilon_grid");
        } else {
            const double eps_max = number_at(jg, "max");
            if (!(eps_max > 0.0)) throw config_error("epsilon_grid.max must be > 0");
            const int count = static_cast<int>(number_at(jg, "count", 9.0));
            cfg.eps_grid = default_eps_grid(eps_max, count);
        }
        if (cfg.eps_grid.size() < 2 || cfg.eps_grid.front() != 0.0)
            throw config_error("epsilon_grid must start at 0 and hold at least two values");
        for (size_t i = 1; i < cfg.eps_grid.size(); ++i)
            if (!(cfg.eps_grid[i] > cfg.eps_grid[i - 1]))
                throw config_error("epsilon_grid must be strictly ascending");
    }

    cfg.N = static_cast<int>(number_at(j, "N", 0.0));
    if (cfg.N < 0 || (cfg.N > 0 && cfg.N < 8)) throw config_error("N must be 0 (default) or >= 8");

    if (j.contains("window")) {
        const json& jw = j.at("window");
        const auto re = parse_number_list(jw, "re");
        const auto im = parse_number_list(jw, "im");
        if (re.size() != 2 || im.size() != 2 || !(re[0] < re[1]) || !(im[0] < im[1]))
            throw config_error("window must hold ordered pairs re=[lo,hi], im=[lo,hi]");
        cfg.window = Window{re[0], re[1], im[0], im[1]};
    }

    cfg.band = number_at(j, "band", 0.02);
    if (!(cfg.band > 0.0)) throw config_error("band must be > 0");
    cfg.c0 = number_at(j, "c0", 0.0);
    cfg.delta = number_at(j, "delta", 0.1);
    if (!(cfg.delta > 0.0)) throw config_error("delta must be > 0");
    if (j.contains("seed")) {
        const json& js = j.at("seed");
        cfg.seed = Complex(number_at(js, "re", 0.0), number_at(js, "im", 0.0));
    }

    // Command-specific requirements.
    if (cfg.command == Command::Track && cfg.eps_grid.empty())
        throw config_error("track requires epsilon_grid");
    if (cfg.command == Command::SweepAlpha && cfg.alpha_values.empty())
        throw config_error("sweep-alpha requires alpha_values");
    if (cfg.command == Command::SweepTau && cfg.tau_values.empty())
        throw config_error("sweep-tau requires tau_values");
    for (double a : cfg.alpha_values)
        if (!(a > 0.0)) throw config_error("alpha_values must be positive");
    for (double t : cfg.tau_values)
        if (t < 0.0) throw config_error("tau_values must be >= 0");
    if (!(cfg.alpha > 0.0)) throw config_error("alpha must be > 0");

    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

namespace {

// ---------------------------------------------------------------------------
// Deterministic output helpers
// ---------------------------------------------------------------------------

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct CsvWriter {
    std::ofstream out;
    explicit CsvWriter(const std::filesystem::path& path) : out(path) {
        if (!out) throw numerical_error("cannot open output file: " + path.string());
    }
    void header(const std::vector<std::string>& cols) {
        for (size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
        out << "\n";
    }
    void row(const std::vector<double>& vals) {
        for (size_t i = 0; i < vals.size(); ++i) out << (i ? "," : "") << fmt(vals[i]);
        out << "\n";
    }
};

struct PlotWriter {
    std::ofstream out;
    explicit PlotWriter(const std::filesystem::path& path) : out(path) {
        if (!out) throw numerical_error("cannot open output file: " + path.string());
    }
    void point(const std::string& series, double eps, double alpha, double tau, Complex c) {
        out << "{\"series\":\"" << series << "\",\"epsilon\":" << fmt(eps)
            << ",\"alpha\":" << fmt(alpha) << ",\"tau\":" << fmt(tau)
            << ",\"re\":" << fmt(c.real()) << ",\"im\":" << fmt(c.imag()) << "}\n";
    }
};

int worker_count() {
    if (const char* env = std::getenv("HYDROSPEC_WORKERS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs f(i) for i in [0, n) on the worker pool; rethrows the first exception.
template <typename F> void parallel_for(int n, F&& f) {
    const int workers = std::min(worker_count(), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mu);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

json probe_summary(const ExperimentConfig& cfg, int N) {
    json probes;
    if (cfg.profile->domain().is_circle()) {
        const ProbeResult probe = fourier_convention_probe(N);
        probes["fourier"] = {{"ok", probe.ok}, {"worst_error", probe.worst_error}};
        json checks = json::array();
        for (const auto& [name, err] : probe.checks) checks.push_back({{"id", name}, {"error", err}});
        probes["fourier"]["checks"] = checks;
    } else {
        const ChebGrid grid = cheb_grid(std::min(N, 32));
        const VectorXd ones = VectorXd::Ones(grid.N + 1);
        const double const_err = (grid.D * ones).cwiseAbs().maxCoeff();
        const VectorXd x3 = grid.points.array().cube();
        const VectorXd want = 3.0 * grid.points.array().square();
        const double poly_err = (grid.D * x3 - want).cwiseAbs().maxCoeff();
        probes["chebyshev"] = {{"ok", const_err < 1e-12 && poly_err < 1e-10},
                               {"constants_error", const_err},
                               {"monomial_error", poly_err}};
    }
    return probes;
}

json config_echo(const ExperimentConfig& cfg, int N, const DeformedContour& contour) {
    json meta;
    meta["command"] = to_string(cfg.command);
    meta["profile"] = cfg.profile->id();
    meta["contour"] = contour.id();
    meta["tau"] = cfg.tau;
    meta["alpha"] = cfg.alpha;
    meta["epsilon"] = cfg.eps;
    meta["N"] = N;
    meta["band"] = cfg.band;
    meta["c0"] = cfg.c0;
    meta["delta"] = cfg.delta;
    meta["window"] = {{"re", {cfg.window.re_lo, cfg.window.re_hi}},
                      {"im", {cfg.window.im_lo, cfg.window.im_hi}}};
    if (!cfg.alpha_values.empty()) meta["alpha_values"] = cfg.alpha_values;
    if (!cfg.tau_values.empty()) meta["tau_values"] = cfg.tau_values;
    if (!cfg.eps_grid.empty()) meta["epsilon_grid"] = cfg.eps_grid;
    return meta;
}

std::vector<double> resonance_row(const ResonanceRecord& rec) {
    return {rec.c.real(), rec.c.imag(), static_cast<double>(rec.multiplicity), rec.dist_to_curve,
            rec.wronskian_abs};
}

void write_ellipticity_csv(const std::filesystem::path& path,
                           const std::vector<std::pair<double, std::vector<Complex>>>& curves,
                           const std::string& sweep_col) {
    CsvWriter csv(path);
    if (sweep_col.empty()) {
        csv.header({"re_c", "im_c"});
        for (const Complex& s : curves.front().second) csv.row({s.real(), s.imag()});
    } else {
        csv.header({sweep_col, "re_c", "im_c"});
        for (const auto& [value, curve] : curves)
            for (const Complex& s : curve) csv.row({value, s.real(), s.imag()});
    }
}

} // namespace

std::string render_report(const ValidationReport& report) {
    std::ostringstream os;
    os << "contour validation: " << (report.ok ? "ok" : "FAILED") << "\n";
    os << "  C1 margin (pi/4 - max|arg gamma'|): " << fmt(report.arg_margin) << "\n";
    os << "  C2 margin (-max m0 U'):             " << fmt(report.sign_margin) << "\n";
    os << "  C3 ellipticity margin:              " << fmt(report.ellipticity_margin) << "\n";
    os << "  C4 max Im U along homotopy:         " << fmt(report.im_max) << "\n";
    for (const auto& f : report.failures)
        os << "  violated " << f.condition << " at x = " << fmt(f.where)
           << " (value " << fmt(f.value) << "): " << f.detail << "\n";
    return os.str();
}

RunResult run_experiment(const ExperimentConfig& config, const RunOptions& options) {
    ExperimentConfig cfg = config;
    if (options.N_override) cfg.N = *options.N_override;
    if (options.tau_override) cfg.tau = *options.tau_override;
    if (!cfg.profile) throw config_error("config has no profile");

    // Discretizations are fixed to [-1,1] and period 2*pi; other domains are
    // folded onto them by rescaling the profile, alpha and eps.  The spectral
    // parameter c is unchanged, so outputs keep the caller's eps values.
    const std::vector<double> requested_eps_grid = cfg.eps_grid;
    const Domain& dom = cfg.profile->domain();
    const bool standard = dom.is_segment()
                              ? (std::abs(dom.a + 1.0) < 1e-15 && std::abs(dom.b - 1.0) < 1e-15)
                              : std::abs(dom.period - 2.0 * M_PI) < 1e-12;
    if (!standard) {
        if (cfg.escape)
            throw config_error(
                "explicit escape functions require the standard domain; drop 'escape' "
                "or pose the profile on [-1,1] / period 2*pi");
        const StandardizedProfile rescaled = rescale_to_standard(*cfg.profile);
        cfg.profile = rescaled.profile;
        cfg.alpha *= rescaled.alpha_factor;
        for (double& a : cfg.alpha_values) a *= rescaled.alpha_factor;
        cfg.eps *= rescaled.eps_factor;
        for (double& e : cfg.eps_grid) e *= rescaled.eps_factor;
    }

    const int N = cfg.resolved_N();
    const DeformedContour contour = cfg.contour();
    const ShearProfile& profile = *cfg.profile;

    std::filesystem::create_directories(options.out_dir);
    RunResult result;
    result.csv = options.out_dir / (to_string(cfg.command) + ".csv");
    result.plot = options.out_dir / "plot.jsonl";
    result.meta = options.out_dir / "run_meta.json";

    // Contour certification gates every command.
    result.validation = validate_contour(profile, contour, cfg.c0, cfg.delta);
    if (cfg.command == Command::Validate) {
        json meta = config_echo(cfg, N, contour);
        meta["version"] = kVersion;
        meta["probes"] = probe_summary(cfg, N);
        meta["validation"] = {{"ok", result.validation.ok},
                              {"report", render_report(result.validation)},
                              {"arg_margin", result.validation.arg_margin},
                              {"sign_margin", result.validation.sign_margin},
                              {"ellipticity_margin", result.validation.ellipticity_margin},
                              {"im_max", result.validation.im_max}};
        std::ofstream(result.meta) << meta.dump(2) << "\n";
        if (!result.validation.ok)
            throw validation_error(render_report(result.validation));
        // A trivial CSV so the output contract is uniform.
        CsvWriter csv(result.csv);
        csv.header({"ok"});
        csv.row({1.0});
        PlotWriter plot(result.plot);
        for (const Complex& s : ellipticity_samples(profile, contour, 1024))
            plot.point("ellipticity", 0.0, cfg.alpha, cfg.tau, s);
        return result;
    }
    if (!result.validation.ok) throw validation_error(render_report(result.validation));

    PlotWriter plot(result.plot);
    std::vector<std::pair<double, std::vector<Complex>>> curves;

    switch (cfg.command) {
    case Command::Spectrum: {
        Spectrum spec;
        if (profile.domain().is_segment()) {
            const DiscretePencil pencil = assemble_os_pencil(profile, contour, cfg.alpha, cfg.eps, N);
            spec = eig_pencil(pencil.A, pencil.B, true);
        } else {
            spec = eig(assemble_q_circle(profile, contour, cfg.alpha, cfg.eps, N), true);
        }
        struct Entry {
            Complex c;
            double residual;
        };
        std::vector<Entry> entries;
        for (int i = 0; i < spec.values.size(); ++i)
            if (cfg.window.contains(spec.values(i)))
                entries.push_back({spec.values(i), spec.residuals(i)});
        std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
            if (a.c.real() != b.c.real()) return a.c.real() < b.c.real();
            return a.c.imag() < b.c.imag();
        });
        CsvWriter csv(result.csv);
        csv.header({"re_c", "im_c", "residual"});
        for (const Entry& e : entries) {
            csv.row({e.c.real(), e.c.imag(), e.residual});
            plot.point("spectrum", cfg.eps, cfg.alpha, cfg.tau, e.c);
        }
        break;
    }
    case Command::Resonances: {
        auto records = resonances_in_window(profile, contour, cfg.alpha, N, cfg.window, cfg.band);
        std::sort(records.begin(), records.end(), [](const ResonanceRecord& a, const ResonanceRecord& b) {
            if (a.c.real() != b.c.real()) return a.c.real() < b.c.real();
            return a.c.imag() < b.c.imag();
        });
        CsvWriter csv(result.csv);
        csv.header({"re_c", "im_c", "multiplicity", "dist_to_curve", "wronskian_abs"});
        for (const auto& rec : records) {
            csv.row(resonance_row(rec));
            plot.point("resonances", 0.0, cfg.alpha, cfg.tau, rec.c);
        }
        curves.emplace_back(0.0, ellipticity_samples(profile, contour, 1024));
        break;
    }
    case Command::Track: {
        // Locate the seed resonance, then continue it.
        const auto records =
            resonances_in_window(profile, contour, cfg.alpha, N, cfg.window, cfg.band);
        if (records.empty())
            throw numerical_error("track: no resonance found in the window to continue");
        const auto nearest = std::min_element(
            records.begin(), records.end(), [&](const ResonanceRecord& a, const ResonanceRecord& b) {
                return std::abs(a.c - cfg.seed) < std::abs(b.c - cfg.seed);
            });
        const TrackedBranch branch =
            track_branch(profile, contour, cfg.alpha, nearest->c, cfg.eps_grid, N);
        CsvWriter csv(result.csv);
        csv.header({"epsilon", "re_c", "im_c", "match_dist"});
        for (size_t i = 0; i < branch.eps.size(); ++i) {
            const double eps_out = requested_eps_grid.empty() ? branch.eps[i]
                                                              : requested_eps_grid[i];
            csv.row({eps_out, branch.c[i].real(), branch.c[i].imag(), branch.match_dist[i]});
            plot.point("branch", eps_out, cfg.alpha, cfg.tau, branch.c[i]);
        }
        break;
    }
    case Command::SweepAlpha:
    case Command::SweepTau: {
        const bool over_alpha = cfg.command == Command::SweepAlpha;
        const std::vector<double>& sweep = over_alpha ? cfg.alpha_values : cfg.tau_values;
        std::vector<std::vector<ResonanceRecord>> per_value(sweep.size());
        std::vector<DeformedContour> contours;
        for (double value : sweep)
            contours.push_back(over_alpha ? contour
                                          : DeformedContour(contour.escape, value));
        // Each sweep contour must itself certify.
        for (const auto& ct : contours) {
            const ValidationReport rep = validate_contour(profile, ct, cfg.c0, cfg.delta);
            if (!rep.ok) throw validation_error(render_report(rep));
        }
        parallel_for(static_cast<int>(sweep.size()), [&](int i) {
            const double alpha = over_alpha ? sweep[i] : cfg.alpha;
            per_value[i] =
                resonances_in_window(profile, contours[i], alpha, N, cfg.window, cfg.band);
        });
        CsvWriter csv(result.csv);
        csv.header({over_alpha ? "alpha" : "tau", "re_c", "im_c", "multiplicity", "dist_to_curve",
                    "wronskian_abs"});
        for (size_t i = 0; i < sweep.size(); ++i) {
            auto records = per_value[i];
            std::sort(records.begin(), records.end(),
                      [](const ResonanceRecord& a, const ResonanceRecord& b) {
                          if (a.c.real() != b.c.real()) return a.c.real() < b.c.real();
                          return a.c.imag() < b.c.imag();
                      });
            const std::string series =
                (over_alpha ? "alpha=" : "tau=") + fmt(sweep[i]);
            for (const auto& rec : records) {
                std::vector<double> row = resonance_row(rec);
                row.insert(row.begin(), sweep[i]);
                csv.row(row);
                plot.point(series, 0.0, over_alpha ? sweep[i] : cfg.alpha,
                           over_alpha ? cfg.tau : sweep[i], rec.c);
            }
            curves.emplace_back(sweep[i], ellipticity_samples(profile, contours[i], 1024));
        }
        break;
    }
    case Command::Validate: break; // handled above
    }

    if (!curves.empty()) {
        result.ellipticity = options.out_dir / "ellipticity.csv";
        const std::string sweep_col = cfg.command == Command::SweepAlpha ? "alpha"
                                      : cfg.command == Command::SweepTau ? "tau"
                                                                         : "";
        write_ellipticity_csv(*result.ellipticity,
                              sweep_col.empty()
                                  ? decltype(curves){curves.front()}
                                  : curves,
                              sweep_col);
        for (const auto& [value, curve] : curves) {
            const std::string series = sweep_col.empty()
                                           ? std::string("ellipticity")
                                           : "ellipticity@" + sweep_col + "=" + fmt(value);
            for (const Complex& s : curve)
                plot.point(series, 0.0, cfg.alpha,
                           cfg.command == Command::SweepTau ? value : cfg.tau, s);
        }
    }

    json meta = config_echo(cfg, N, contour);
    meta["version"] = kVersion;
    meta["domain_rescaled"] = !standard;
    meta["probes"] = probe_summary(cfg, N);
    meta["validation"] = {{"ok", result.validation.ok},
                          {"arg_margin", result.validation.arg_margin},
                          {"sign_margin", result.validation.sign_margin},
                          {"ellipticity_margin", result.validation.ellipticity_margin},
                          {"im_max", result.validation.im_max}};
    std::ofstream(result.meta) << meta.dump(2) << "\n";
    return result;
}

} // namespace hydrospec
