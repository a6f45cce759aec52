#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "svw/entanglement.hpp"
#include "svw/oracle.hpp"
#include "svw/output.hpp"

namespace svw::cli {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Bad flag combination or out-of-budget request; maps to kExitUsage.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Command { evolve, maxima, verify, figures };
enum class Format { csv, svg_plot };

struct RunConfig {
    Command command = Command::evolve;
    int n_total = 4;
    int m_excited = 1;
    /// Defaults to one modulus period, 2 pi / N for a single excitation.
    std::optional<double> tau_max;
    int steps = 512;
    std::filesystem::path output_path = "-";
    Format format = Format::csv;
    int n_min = 2;
    int n_max = 7;
    /// verify: restrict to one M; otherwise every M <= N/2.
    std::optional<int> verify_m;
    int samples = 64;
    std::uint64_t seed = 20010611;

    double effective_tau_max() const;
    /// Throws UsageError.
    void validate() const;
};

/// Worker threads for grid and verification sweeps; SVW_WORKERS overrides the hardware count.
int worker_count();

// Pure builders, exposed for golden tests.
output::CsvTable evolve_table(const RunConfig& config);
output::CsvTable maxima_table(const std::vector<MaximumRow>& rows);
std::vector<oracle::VerificationReport> run_verification(const RunConfig& config);
std::string verification_text(const std::vector<oracle::VerificationReport>& reports);

/// Figure data sets written by `figures`.
output::CsvTable figure1_table(std::vector<output::Series>* plot = nullptr);
output::CsvTable figure2_table(std::vector<output::Series>* plot = nullptr);
output::CsvTable figure3_table(std::vector<output::Series>* plot = nullptr);

int cmd_evolve(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_maxima(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_figures(const RunConfig& config, std::ostream& err);

/// Parses argv and dispatches; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace svw::cli
