#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "signdir/bootstrap.hpp"
#include "signdir/corpus.hpp"
#include "signdir/direction.hpp"
#include "signdir/inequality.hpp"
#include "signdir/lorenz.hpp"
#include "signdir/resampling.hpp"

namespace signdir {

inline constexpr const char* kReportSchema = "signdir.report/1";

struct SweepSettings {
    std::vector<std::size_t> sizes;  // empty: 1-2-5 steps up to the corpus size
    std::size_t samples_per_size = 1000;
};

struct AnalysisSettings {
    std::vector<int> orders{1, 2};
    std::size_t realizations = 1000;
    std::size_t resamples = 1000;
    double level = 0.95;
    double band_width = 2.0;
    IntervalMethod method = IntervalMethod::bca;
    std::uint64_t seed = 1;
    VerdictBasis basis = VerdictBasis::delta_g;
    bool basis_pinned = false;
    int verdict_order = 1;
    AsymmetryOptions asymmetry;
    std::optional<SweepSettings> sweep;
    bool include_replicates = true;
    std::size_t low_power_below = 100;  // sequences
    unsigned threads = 0;  // not part of the report
};

struct CorpusSummary {
    std::string label;
    CountingMode counting_mode = CountingMode::unique_words;
    std::size_t sequences = 0;
    double total_weight = 0.0;
    std::size_t total_signs = 0;
    std::size_t signary_size = 0;
    double mean_length = 0.0;
    std::size_t min_length = 0;
    std::size_t max_length = 0;
    std::string reading_order_note;
    std::uint64_t fingerprint = 0;
    LoadStats load_stats;
};

CorpusSummary summarize_corpus(const SignCorpus& corpus, std::string label);

struct OrderAnalysis {
    int n = 1;
    std::optional<AsymmetryResult> asymmetry;
    std::string error;  // why asymmetry is absent
    std::optional<SurrogateEnsembles> surrogates;
    BootstrapCIs bootstrap;
    LorenzCurve lorenz_left;
    LorenzCurve lorenz_right;
};

struct AnalysisReport {
    std::string schema = kReportSchema;
    std::string tool_version;
    CorpusSummary corpus;
    AnalysisSettings settings;
    std::vector<OrderAnalysis> orders;
    std::optional<DirectionVerdict> verdict;
    std::string verdict_error;
    std::vector<SweepPoint> sweep;
    std::vector<std::string> warnings;
    std::map<std::string, std::string> exports;  // artifact name -> relative path

    const OrderAnalysis* order(int n) const;
};

AnalysisReport build_report(const SignCorpus& corpus, const std::string& label,
                            const AnalysisSettings& settings);

nlohmann::json to_json(const AnalysisReport& report);
nlohmann::json to_json(const AsymmetryResult& result);
nlohmann::json to_json(const SurrogateEnsemble& ensemble, bool include_replicates);
nlohmann::json to_json(const BootstrapCI& ci);
nlohmann::json to_json(const DirectionVerdict& verdict);
nlohmann::json to_json(const SweepPoint& point);

// Pretty JSON with sorted keys and a trailing newline.
std::string dump_json(const nlohmann::json& doc);

void write_text_summary(std::ostream& out, const AnalysisReport& report);

// Numbers rounded to 12 significant digits; NaN and infinities become null.
nlohmann::json json_number(double value);
std::string hex64(std::uint64_t value);

}  // namespace signdir
