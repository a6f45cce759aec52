#include "svw/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>

namespace svw::cli {

namespace {

constexpr double kCrossCheckTolerance = 1e-8;
constexpr int kFigure1Points = 513;
constexpr int kFigure2Points = 1025;

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
    const auto workers = std::min<std::size_t>(static_cast<std::size_t>(worker_count()), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = next++; i < count; i = next++) {
                    body(i);
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

std::filesystem::path svg_path_for(const std::filesystem::path& csv) {
    auto p = csv;
    p.replace_extension(".svg");
    return p;
}

std::string optional_field(const std::optional<double>& v) {
    return v ? output::format_number(*v) : std::string{};
}

} // namespace

double RunConfig::effective_tau_max() const {
    return tau_max ? *tau_max : 2.0 * std::numbers::pi / n_total;
}

void RunConfig::validate() const {
    if (n_total < 2) {
        throw UsageError("--n must be at least 2");
    }
    if (m_excited < 0 || m_excited > n_total) {
        throw UsageError("--m must lie in [0, N]");
    }
    if (steps < 2) {
        throw UsageError("--steps must be at least 2");
    }
    if (tau_max && !(*tau_max > 0.0 && std::isfinite(*tau_max))) {
        throw UsageError("--tau-max must be positive");
    }
    if (n_min < 2 || n_max < n_min) {
        throw UsageError("need 2 <= --n-min <= --n-max");
    }
    if (samples < 1) {
        throw UsageError("--samples must be positive");
    }
}

int worker_count() {
    if (const char* env = std::getenv("SVW_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            return static_cast<int>(v);
        }
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

output::CsvTable evolve_table(const RunConfig& config) {
    config.validate();
    const ModelSpec spec(config.n_total, config.m_excited);
    std::vector<std::string> header{"tau"};
    for (int m = 0; m <= spec.m_prime(); ++m) {
        header.push_back(fmt::format("P_{}", m));
    }
    header.emplace_back("entropy");

    const auto grid = linspace(0.0, config.effective_tau_max(), config.steps);
    output::CsvTable table(std::move(header));
    for (const auto& sample : entropy_series(spec, grid)) {
        std::vector<double> row{sample.tau};
        row.insert(row.end(), sample.spectrum.probabilities.begin(), sample.spectrum.probabilities.end());
        row.push_back(sample.entropy);
        table.add_numeric_row(row);
    }
    return table;
}

output::CsvTable maxima_table(const std::vector<MaximumRow>& rows) {
    output::CsvTable table({"N", "tau_prime", "tau_double_prime", "max_entropy", "argmax_tau"});
    for (const auto& r : rows) {
        table.add_row({std::to_string(r.n_total), optional_field(r.tau_prime),
                       output::format_number(r.tau_double_prime), output::format_number(r.max_entropy),
                       output::format_number(r.argmax_tau)});
    }
    return table;
}

std::vector<oracle::VerificationReport> run_verification(const RunConfig& config) {
    config.validate();
    if (config.n_max > oracle::kMaxSectorSites) {
        throw UsageError(fmt::format("verify supports N <= {}, got --n-max {}", oracle::kMaxSectorSites,
                                     config.n_max));
    }
    std::vector<ModelSpec> specs;
    for (int n = config.n_min; n <= config.n_max; ++n) {
        if (config.verify_m) {
            if (*config.verify_m >= 0 && *config.verify_m <= n) {
                specs.emplace_back(n, *config.verify_m);
            }
        } else {
            for (int m = 0; m <= n / 2; ++m) {
                specs.emplace_back(n, m);
            }
        }
    }
    if (specs.empty()) {
        throw UsageError("no (N, M) pair in range; --m must not exceed --n-max");
    }

    std::vector<std::optional<oracle::VerificationReport>> slots(specs.size());
    parallel_for(specs.size(), [&](std::size_t i) {
        const auto& spec = specs[i];
        std::mt19937_64 rng(config.seed + 1000U * static_cast<std::uint64_t>(spec.n_total()) +
                            static_cast<std::uint64_t>(spec.m_excited()));
        std::uniform_real_distribution<double> dist(0.0, 4.0 * std::numbers::pi);
        std::vector<double> taus(static_cast<std::size_t>(config.samples));
        for (auto& t : taus) {
            t = dist(rng);
        }
        slots[i] = oracle::verify_closed_form(spec, taus);
    });

    std::vector<oracle::VerificationReport> reports;
    reports.reserve(slots.size());
    for (auto& s : slots) {
        reports.push_back(*s);
    }
    return reports;
}

std::string verification_text(const std::vector<oracle::VerificationReport>& reports) {
    std::string out = "closed form vs exact diagonalization (tolerance 1e-9)\n";
    std::size_t failed = 0;
    for (const auto& r : reports) {
        out += fmt::format("N={:>2} M={:>2} samples={:<4} spectrum_dev={:.3e} entropy_dev={:.3e} {}\n",
                           r.spec.n_total(), r.spec.m_excited(), r.samples, r.max_spectrum_deviation,
                           r.max_entropy_deviation, r.passed() ? "PASS" : "FAIL");
        failed += r.passed() ? 0 : 1;
    }
    out += fmt::format("{} of {} configurations passed\n", reports.size() - failed, reports.size());
    return out;
}

output::CsvTable figure1_table(std::vector<output::Series>* plot) {
    output::CsvTable table({"N", "tau", "P_1", "P_2", "entropy"});
    for (int n = 2; n <= 8; ++n) {
        const ModelSpec spec(n, 1);
        const auto grid = linspace(0.0, modulus_period(spec), kFigure1Points);
        output::Series p1{fmt::format("P_1 N={}", n), {}, {}};
        output::Series p2{fmt::format("P_2 N={}", n), {}, {}};
        output::Series e{fmt::format("E N={}", n), {}, {}};
        for (const auto& s : entropy_series(spec, grid)) {
            const double transferred = s.spectrum.probabilities[1];
            const double retained = s.spectrum.probabilities[0];
            table.add_row({std::to_string(n), output::format_number(s.tau), output::format_number(transferred),
                           output::format_number(retained), output::format_number(s.entropy)});
            for (auto* series : {&p1, &p2, &e}) {
                series->x.push_back(s.tau);
            }
            p1.y.push_back(transferred);
            p2.y.push_back(retained);
            e.y.push_back(s.entropy);
        }
        if (plot) {
            plot->push_back(std::move(p1));
            plot->push_back(std::move(p2));
            plot->push_back(std::move(e));
        }
    }
    return table;
}

output::CsvTable figure2_table(std::vector<output::Series>* plot) {
    output::CsvTable table({"N", "tau", "rescaled_tau", "entropy"});
    for (int n = 2; n <= 10; ++n) {
        const ModelSpec spec(n, 1);
        // Uniform in N*tau over one period, plus the analytic extrema so the
        // sampled curve contains its true peaks.
        auto rescaled = linspace(0.0, 2.0 * std::numbers::pi, kFigure2Points);
        const auto times = critical_times_m1(spec);
        rescaled.push_back(n * times.t_double_prime);
        if (times.t_prime) {
            rescaled.push_back(n * *times.t_prime);
            rescaled.push_back(2.0 * std::numbers::pi - n * *times.t_prime);
        }
        std::sort(rescaled.begin(), rescaled.end());
        rescaled.erase(std::unique(rescaled.begin(), rescaled.end(),
                                   [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                       rescaled.end());

        std::vector<double> taus;
        taus.reserve(rescaled.size());
        for (double x : rescaled) {
            taus.push_back(x / n);
        }
        output::Series curve{fmt::format("N={}", n), {}, {}};
        const auto samples = entropy_series(spec, taus);
        for (std::size_t i = 0; i < samples.size(); ++i) {
            table.add_row({std::to_string(n), output::format_number(samples[i].tau),
                           output::format_number(rescaled[i]), output::format_number(samples[i].entropy)});
            curve.x.push_back(rescaled[i]);
            curve.y.push_back(samples[i].entropy);
        }
        if (plot) {
            plot->push_back(std::move(curve));
        }
    }
    return table;
}

output::CsvTable figure3_table(std::vector<output::Series>* plot) {
    const auto rows = magic_number_scan(30, 2);
    if (plot) {
        output::Series s{"max E", {}, {}};
        for (const auto& r : rows) {
            s.x.push_back(r.n_total);
            s.y.push_back(r.max_entropy);
        }
        plot->push_back(std::move(s));
    }
    return maxima_table(rows);
}

int cmd_evolve(const RunConfig& config, std::ostream& out, std::ostream& err) {
    if (config.format == Format::svg_plot && config.output_path == "-") {
        throw UsageError("--svg needs a file path in --out");
    }
    const auto table = evolve_table(config);
    output::write_text(config.output_path, table.str(), out);

    if (config.format == Format::svg_plot) {
        const ModelSpec spec(config.n_total, config.m_excited);
        const auto grid = linspace(0.0, config.effective_tau_max(), config.steps);
        const auto samples = entropy_series(spec, grid);
        output::SvgLinePlot plot(fmt::format("N={} M={}", spec.n_total(), spec.m_excited()), "tau = kappa t",
                                 "probability / ebits");
        for (int m = 0; m <= spec.m_prime() + 1; ++m) {
            output::Series s{m <= spec.m_prime() ? fmt::format("P_{}", m) : std::string("entropy"), {}, {}};
            for (const auto& sample : samples) {
                s.x.push_back(sample.tau);
                s.y.push_back(m <= spec.m_prime() ? sample.spectrum.probabilities[m] : sample.entropy);
            }
            plot.add_series(std::move(s));
        }
        output::write_text(svg_path_for(config.output_path), plot.render());
    }
    (void)err;
    return kExitOk;
}

int cmd_maxima(const RunConfig& config, std::ostream& out, std::ostream& err) {
    config.validate();
    if (config.m_excited != 1) {
        throw UsageError("maxima: the critical-time analysis exists only for a single initial "
                         "excitation (--m 1)");
    }
    const auto rows = magic_number_scan(config.n_max, config.n_min);
    output::write_text(config.output_path, maxima_table(rows).str(), out);
    for (const auto& r : rows) {
        if (r.cross_check_deviation() > kCrossCheckTolerance) {
            err << fmt::format("maxima: N={} analytic maximum {:.15g} disagrees with numeric search {:.15g}\n",
                               r.n_total, r.max_entropy, r.numeric.entropy);
            return kExitFailure;
        }
    }
    return kExitOk;
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const auto reports = run_verification(config);
    const auto text = verification_text(reports);
    out << text;
    if (config.output_path != "-") {
        output::write_text(config.output_path, text);
    }
    const bool ok = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed(); });
    if (!ok) {
        err << "verify: closed form deviates from the oracle\n";
    }
    return ok ? kExitOk : kExitFailure;
}

int cmd_figures(const RunConfig& config, std::ostream& err) {
    const auto dir = config.output_path == "-" ? std::filesystem::path(".") : config.output_path;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create " + dir.string() + ": " + ec.message());
    }
    const bool svg = config.format == Format::svg_plot;

    struct Figure {
        const char* name;
        output::CsvTable (*build)(std::vector<output::Series>*);
        const char* title;
        const char* x_label;
        const char* y_label;
    };
    const Figure figures[] = {
        {"fig1", figure1_table, "Schmidt coefficients and entanglement, M=1", "tau = kappa t",
         "probability / ebits"},
        {"fig2", figure2_table, "Entanglement vs rescaled time, M=1", "N kappa t", "E (ebits)"},
        {"fig3", figure3_table, "Maximum entanglement vs N, M=1", "N", "max E (ebits)"},
    };
    for (const auto& f : figures) {
        std::vector<output::Series> series;
        const auto table = f.build(svg ? &series : nullptr);
        output::write_text(dir / (std::string(f.name) + ".csv"), table.str());
        if (svg) {
            output::SvgLinePlot plot(f.title, f.x_label, f.y_label);
            for (auto& s : series) {
                plot.add_series(std::move(s));
            }
            output::write_text(dir / (std::string(f.name) + ".svg"), plot.render());
        }
    }
    (void)err;
    return kExitOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Entanglement dynamics of N equivalent-neighbor spin-1/2 dots (XY model)"};
    app.set_config("--config", "", "INI file of key=value defaults; use [evolve] style sections");
    app.require_subcommand(1);

    RunConfig cfg;
    double tau_max = 0.0;
    bool svg = false;
    int verify_m = -1;
    std::string out_path = "-";

    auto* evolve = app.add_subcommand("evolve", "Schmidt coefficients and entropy on a time grid (CSV)");
    evolve->add_option("--n", cfg.n_total, "Number of dots N")->capture_default_str();
    evolve->add_option("--m", cfg.m_excited, "Initially excited dots M")->capture_default_str();
    auto* tau_opt = evolve->add_option("--tau-max", tau_max, "Grid end in units of 1/kappa (default 2pi/N)");
    evolve->add_option("--steps", cfg.steps, "Grid points including both ends")->capture_default_str();
    evolve->add_option("--out", out_path, "Output CSV path, - for stdout")->capture_default_str();
    evolve->add_flag("--svg", svg, "Also write an SVG plot next to the CSV");

    auto* maxima = app.add_subcommand("maxima", "Maximal single-excitation entanglement versus N");
    maxima->add_option("--n-min", cfg.n_min)->capture_default_str();
    maxima->add_option("--n-max", cfg.n_max)->capture_default_str();
    maxima->add_option("--m", cfg.m_excited, "Must be 1")->capture_default_str();
    maxima->add_option("--out", out_path, "Output CSV path, - for stdout")->capture_default_str();

    auto* verify = app.add_subcommand("verify", "Check closed forms against exact diagonalization");
    verify->add_option("--n-min", cfg.n_min)->capture_default_str();
    verify->add_option("--n-max", cfg.n_max)->capture_default_str();
    verify->add_option("--m", verify_m, "Single M to check (default: every M <= N/2)");
    verify->add_option("--samples", cfg.samples, "Random times per (N, M)")->capture_default_str();
    verify->add_option("--seed", cfg.seed)->capture_default_str();
    verify->add_option("--out", out_path, "Also write the report here");

    auto* figures = app.add_subcommand("figures", "Write fig1/fig2/fig3 data sets");
    figures->add_option("--out-dir", out_path, "Directory for the CSV (and SVG) files")->required();
    figures->add_flag("--svg", svg, "Also write SVG plots");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (tau_opt->count() > 0) {
        cfg.tau_max = tau_max;
    }
    if (verify_m >= 0) {
        cfg.verify_m = verify_m;
    }
    cfg.output_path = out_path;
    cfg.format = svg ? Format::svg_plot : Format::csv;

    try {
        if (evolve->parsed()) {
            cfg.command = Command::evolve;
            return cmd_evolve(cfg, out, err);
        }
        if (maxima->parsed()) {
            cfg.command = Command::maxima;
            return cmd_maxima(cfg, out, err);
        }
        if (verify->parsed()) {
            cfg.command = Command::verify;
            return cmd_verify(cfg, out, err);
        }
        cfg.command = Command::figures;
        return cmd_figures(cfg, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

} // namespace svw::cli
