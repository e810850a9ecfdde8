#ifndef VORTEXWAVE_SCENARIO_HPP
#define VORTEXWAVE_SCENARIO_HPP

#include "vortexwave/vortex.hpp"

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace vortexwave::cli {

enum class Scenario { Classical, Exact, Quasi, Compare, Verify };
enum class OutputFormat { Csv, Json };

struct PhiGrid {
    int count = 721;
    double lo = 0.0; // defaults set to (-pi, pi) during validation
    double hi = 0.0;
    bool mask_peaks = false;
};

struct SweepSpec {
    std::string param; // eta | flux_ratio | k_rc
    std::vector<double> values;
};

struct ScenarioConfig {
    Scenario scenario = Scenario::Exact;
    double eta = 0.0;
    double flux_ratio = 0.0;
    Spin spin = Spin::spinless();
    double k_rc = 1.0;
    double r_c = 1.0;
    double xi_c = 1.0;
    PhiGrid phi_grid;
    std::optional<SweepSpec> sweep;
    double tol = 1e-10;
    long term_budget = 0;
    std::optional<double> wavefunction_kr;
    OutputFormat format = OutputFormat::Csv;
    std::string out_path = "-";

    VortexConfig vortex() const;
    WaveState wave() const;
    /// resolved config re-serialized in the input syntax (round-trippable)
    std::string canonical_text() const;
};

/// Parse the line-oriented `key = value` document (dotted nested keys,
/// '#' comments), apply --set overrides, validate, fill defaults.
/// Unknown keys and malformed values raise ConfigError with a line number.
ScenarioConfig parse_config(
    const std::string& text,
    const std::vector<std::pair<std::string, std::string>>& overrides = {});

struct ResultRow {
    std::optional<double> sweep_value;
    double phi = 0.0;
    std::vector<std::optional<double>> values; // aligned with table columns
    std::string label;  // region or flag column, may be empty
    std::string source; // equation label, e.g. "Eq45"
};

struct ResultTable {
    std::vector<std::string> columns; // value column names (phi excluded)
    bool has_label = false;
    std::string label_name;
    std::vector<ResultRow> rows;
};

struct CheckResult {
    std::string name;
    bool pass;
    double value;
    double threshold;
    std::string detail;
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    std::vector<std::pair<std::string, double>> scalars; // insertion-ordered
    bool all_pass() const;
    void add_scalar(const std::string& name, double v) { scalars.emplace_back(name, v); }
};

struct RunOutput {
    ResultTable table;
    VerificationReport report;
};

/// Execute the configured scenario. Grid points may be evaluated on
/// `threads` workers; output is ordered by grid index regardless.
RunOutput run_scenario(const ScenarioConfig& cfg, int threads = 1);

std::string emit_csv(const RunOutput& out, const ScenarioConfig& cfg);
std::string emit_json(const RunOutput& out, const ScenarioConfig& cfg);
/// Write to cfg.out_path ("-" = the provided stream).
void emit(const RunOutput& out, const ScenarioConfig& cfg, std::ostream& fallback);

/// One point of the exact-vs-quasiclassical comparison. rel_error compares
/// the two |f|^2 averaged over an integer number of Fraunhofer oscillation
/// periods (~0.45 rad); peak neighborhoods (half the averaging window plus
/// the Airy shoulder ~3 (k r_c (1-eta))^{-1/3}) and, for eta < 0, the
/// classical shadow band are masked.
struct ComparePoint {
    double phi;
    double dsigma_exact; // raw |f_exact|^2
    double dsigma_quasi; // raw |composed|^2 (peak forms included)
    bool masked;
    double rel_error; // smoothed comparison; meaningful when !masked
};

std::vector<ComparePoint> compare_profile(const VortexConfig& cfg, const WaveState& k,
                                          int count, double lo, double hi,
                                          int threads = 1);

/// Invariant suite at one parameter point (the Verify scenario body).
VerificationReport verify_point(const ScenarioConfig& cfg, int threads = 1);

} // namespace vortexwave::cli

#endif
