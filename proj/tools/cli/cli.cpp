#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "signdir/corpus_config.hpp"
#include "signdir/numeric_format.hpp"
#include "signdir/positional.hpp"
#include "signdir/report.hpp"
#include "signdir/version.hpp"

namespace signdir::cli {

namespace fs = std::filesystem;
using nlohmann::json;

int exit_status(ErrorCode code) {
    switch (code) {
    case ErrorCode::io: return kIo;
    case ErrorCode::config: return kConfig;
    case ErrorCode::empty_corpus: return kEmptyCorpus;
    case ErrorCode::malformed_line: return kMalformedLine;
    case ErrorCode::no_ngrams:
    case ErrorCode::filter_emptied:
    case ErrorCode::invalid_argument:
    case ErrorCode::provenance_mismatch: return kAnalysis;
    }
    return kInternal;
}

namespace {

std::string code_name(int status) {
    switch (status) {
    case kUsage: return "usage";
    case kPartial: return "partial";
    case kInternal: return "internal";
    default: return "error";
    }
}

std::string record(const std::string& code, int status, const std::string& message, std::size_t line,
                   const std::string& path) {
    json e = {{"code", code}, {"exit_status", status}, {"message", message}};
    if (line) e["line"] = line;
    if (!path.empty()) e["path"] = path;
    return json{{"error", e}}.dump();
}

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr const char* kExitCodes =
    "Exit status:\n"
    "  0  success\n"
    "  1  internal error\n"
    "  2  usage error (bad flag or value)\n"
    "  3  file missing or unreadable\n"
    "  4  malformed corpus config\n"
    "  5  empty corpus\n"
    "  6  malformed line in a word list\n"
    "  7  analysis error (no n-grams, undefined statistic, mismatched inputs)\n"
    "  8  partial: compare finished but some corpora failed\n"
    "Failures also write a one-line JSON error record to stderr.";

struct Options {
    std::vector<std::string> corpora;
    std::vector<int> orders{1, 2};
    std::size_t realizations = 1000;
    std::size_t resamples = 1000;
    double level = 0.95;
    double band = 2.0;
    std::vector<std::size_t> sweep;
    std::size_t sweep_samples = 1000;
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "json";
    unsigned threads = 0;
    std::string basis = "delta_g";
    bool pin_basis = false;
    std::string method = "bca";
    std::string rare_filter = "position";
    double threshold = 0.2;
    bool no_replicates = false;
    bool reverse = false;
    bool sweep_requested = false;
    std::string statistic = "delta_g";
};

struct LoadedCorpus {
    std::string label;
    std::string path;
    std::optional<SignCorpus> corpus;
};

// A .json path is a corpus config; anything else is read as a Format A
// word list with the default per-character tokenizer.
LoadedCorpus load(const std::string& path, bool reverse) {
    LoadedCorpus loaded;
    loaded.path = path;
    const fs::path p(path);
    loaded.label = p.stem().string();
    if (p.extension() == ".json") {
        const auto config = load_corpus_config(p);
        loaded.label = config.label;
        loaded.corpus = load_corpus(config);
    } else {
        loaded.corpus = load_word_list(p, LoadOptions{});
    }
    if (reverse) {
        loaded.corpus = reverse_corpus(*loaded.corpus);
        loaded.label += " (reversed)";
    }
    return loaded;
}

AnalysisSettings settings_from(const Options& o, bool with_sweep) {
    if (!(o.level > 0.0 && o.level < 1.0)) throw UsageError("--level must lie in (0, 1)");
    if (!(o.band >= 0.0)) throw UsageError("--band must be >= 0");
    if (o.realizations < 1) throw UsageError("--realizations must be >= 1");
    if (o.resamples < 100) throw UsageError("--resamples must be >= 100");
    if (o.orders.empty()) throw UsageError("--n needs at least one order");
    for (int n : o.orders) {
        if (n < 1) throw UsageError("--n orders must be >= 1");
    }
    if (!(o.threshold >= 0.0)) throw UsageError("--rare-threshold must be >= 0");

    AnalysisSettings s;
    s.orders = o.orders;
    s.realizations = o.realizations;
    s.resamples = o.resamples;
    s.level = o.level;
    s.band_width = o.band;
    s.seed = o.seed;
    s.threads = o.threads;
    s.basis = *parse_verdict_basis(o.basis);
    s.basis_pinned = o.pin_basis;
    s.method = *parse_interval_method(o.method);
    s.include_replicates = !o.no_replicates;
    s.verdict_order = *std::min_element(o.orders.begin(), o.orders.end());
    auto& entropy = s.asymmetry.entropy;
    entropy.rare_filter = o.rare_filter != "off";
    entropy.base = o.rare_filter == "corpus" ? RareFilterBase::corpus : RareFilterBase::position;
    entropy.threshold = o.threshold;
    if (with_sweep) {
        if (o.sweep_samples < 1) throw UsageError("--sweep-samples must be >= 1");
        s.sweep = SweepSettings{o.sweep, o.sweep_samples};
    }
    return s;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::io, "cannot write '" + path.string() + "'");
    f << content;
    if (!f) throw Error(ErrorCode::io, "failed writing '" + path.string() + "'");
}

fs::path prepare_out(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::io, "cannot create output directory '" + dir + "': " + ec.message());
    return fs::path(dir);
}

std::string lorenz_name(int n, PositionClass position) {
    return "lorenz_n" + std::to_string(n) + "_" + std::string(to_string(position)) + ".csv";
}

std::string lorenz_csv(const LorenzCurve& curve) {
    std::ostringstream s;
    write_lorenz_csv(s, curve);
    return s.str();
}

// One summary row per order; shared by analyze --format csv and compare.
struct Row {
    std::string label;
    int n = 0;
    std::string path;
    std::optional<AnalysisReport> report;
    std::string error;
    int status = kOk;
};

const char* kRowHeader =
    "label,n,delta_g,ci_lower,ci_upper,surrogate_mean,surrogate_std,delta_s,direction,significant,status";

std::string num_or_empty(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

std::vector<std::string> row_fields(const Row& row) {
    std::vector<std::string> f{row.label, std::to_string(row.n)};
    if (!row.report) {
        f.insert(f.end(), {"", "", "", "", "", "", "", "", "error: " + row.error});
        return f;
    }
    const auto* o = row.report->order(row.n);
    if (!o || !o->asymmetry) {
        f.insert(f.end(), {"", "", "", "", "", "", "", "", "error: " + (o ? o->error : std::string("order missing"))});
        return f;
    }
    const auto& a = *o->asymmetry;
    f.push_back(num_or_empty(statistic_value(a, Statistic::delta_g)));
    if (o->bootstrap.delta_g) {
        f.push_back(format_number(o->bootstrap.delta_g->lower));
        f.push_back(format_number(o->bootstrap.delta_g->upper));
    } else {
        f.insert(f.end(), {"", ""});
    }
    f.push_back(format_number(o->surrogates->delta_g.mean));
    f.push_back(format_number(o->surrogates->delta_g.std));
    f.push_back(num_or_empty(statistic_value(a, Statistic::delta_s)));
    const auto& report = *row.report;
    if (row.n == report.settings.verdict_order && report.verdict) {
        f.push_back(std::string(to_string(report.verdict->direction)));
        f.push_back(report.verdict->significant ? "true" : "false");
    } else {
        f.insert(f.end(), {"", ""});
    }
    f.push_back("ok");
    return f;
}

std::string rows_csv(const std::vector<Row>& rows) {
    std::ostringstream s;
    s << kRowHeader << '\n';
    for (const auto& row : rows) {
        const auto f = row_fields(row);
        for (std::size_t k = 0; k < f.size(); ++k) s << (k ? "," : "") << csv_field(f[k]);
        s << '\n';
    }
    return s.str();
}

std::string rows_text(const std::vector<Row>& rows) {
    std::vector<std::vector<std::string>> table;
    std::vector<std::string> header;
    std::stringstream h(kRowHeader);
    for (std::string cell; std::getline(h, cell, ',');) header.push_back(cell);
    table.push_back(header);
    for (const auto& row : rows) table.push_back(row_fields(row));
    std::vector<std::size_t> width(header.size(), 0);
    for (const auto& r : table) {
        for (std::size_t k = 0; k < r.size(); ++k) width[k] = std::max(width[k], r[k].size());
    }
    std::ostringstream s;
    for (const auto& r : table) {
        for (std::size_t k = 0; k < r.size(); ++k) {
            s << (k ? "  " : "") << std::left << std::setw(static_cast<int>(k + 1 < r.size() ? width[k] : 0)) << r[k];
        }
        s << '\n';
    }
    return s.str();
}

json rows_json(const std::vector<Row>& rows) {
    json out = json::array();
    for (const auto& row : rows) {
        json j = {{"label", row.label}, {"n", row.n}};
        if (!row.report) {
            j["error"] = row.error;
            out.push_back(j);
            continue;
        }
        const auto* o = row.report->order(row.n);
        if (!o || !o->asymmetry) {
            j["error"] = o ? o->error : "order missing";
            out.push_back(j);
            continue;
        }
        j["asymmetry"] = to_json(*o->asymmetry);
        j["ci"] = o->bootstrap.delta_g ? to_json(*o->bootstrap.delta_g) : json(nullptr);
        j["surrogate"] = to_json(o->surrogates->delta_g, false);
        if (row.n == row.report->settings.verdict_order && row.report->verdict) {
            j["verdict"] = to_json(*row.report->verdict);
        }
        out.push_back(j);
    }
    return out;
}

std::vector<Row> report_rows(const AnalysisReport& report, const std::string& path) {
    std::vector<Row> rows;
    for (const auto& o : report.orders) {
        Row row;
        row.label = report.corpus.label;
        row.n = o.n;
        row.path = path;
        row.report = report;
        rows.push_back(std::move(row));
    }
    return rows;
}

int cmd_analyze(const Options& o, std::ostream& out) {
    if (o.corpora.size() != 1) throw UsageError("analyze takes exactly one --corpus");
    const auto settings = settings_from(o, o.sweep_requested);
    const auto loaded = load(o.corpora.front(), o.reverse);
    auto report = build_report(*loaded.corpus, loaded.label, settings);

    if (o.out.empty()) {
        if (o.format == "json") {
            out << dump_json(to_json(report));
        } else if (o.format == "csv") {
            out << rows_csv(report_rows(report, loaded.path));
        } else {
            write_text_summary(out, report);
        }
        return kOk;
    }

    const auto dir = prepare_out(o.out);
    for (const auto& order : report.orders) {
        if (!order.asymmetry) continue;
        for (auto [position, curve] : {std::pair{PositionClass::left_terminal, &order.lorenz_left},
                                       std::pair{PositionClass::right_terminal, &order.lorenz_right}}) {
            const auto name = lorenz_name(order.n, position);
            write_file(dir / name, lorenz_csv(*curve));
            report.exports["lorenz_n" + std::to_string(order.n) + "_" + std::string(to_string(position))] = name;
        }
    }
    if (!report.sweep.empty()) {
        std::ostringstream s;
        write_sweep_csv(s, report.sweep);
        write_file(dir / "sweep.csv", s.str());
        report.exports["sweep"] = "sweep.csv";
    }
    if (o.format == "csv") {
        write_file(dir / "summary.csv", rows_csv(report_rows(report, loaded.path)));
        report.exports["summary"] = "summary.csv";
    } else if (o.format == "text") {
        std::ostringstream s;
        write_text_summary(s, report);
        write_file(dir / "summary.txt", s.str());
        report.exports["summary"] = "summary.txt";
    }
    write_file(dir / "report.json", dump_json(to_json(report)));
    out << (dir / "report.json").string() << '\n';
    return kOk;
}

int cmd_lorenz(const Options& o, std::ostream& out) {
    if (o.corpora.size() != 1) throw UsageError("lorenz takes exactly one --corpus");
    if (o.format == "text") throw UsageError("lorenz writes csv or json");
    const auto loaded = load(o.corpora.front(), o.reverse);
    const auto& corpus = *loaded.corpus;
    auto orders = o.orders;
    std::sort(orders.begin(), orders.end());
    orders.erase(std::unique(orders.begin(), orders.end()), orders.end());

    std::optional<fs::path> dir;
    if (!o.out.empty()) dir = prepare_out(o.out);
    json doc = json::object();
    std::ostringstream long_csv;
    long_csv << "n,position,F,L\n";
    for (int n : orders) {
        for (auto position : {PositionClass::left_terminal, PositionClass::right_terminal}) {
            const auto dist = positional_distribution(corpus, n, position);
            const auto curve = lorenz_points(dist);
            const std::string pos(to_string(position));
            if (dir) {
                write_file(*dir / lorenz_name(n, position), lorenz_csv(curve));
                std::ostringstream d;
                write_distribution_csv(d, dist, corpus.signary());
                write_file(*dir / ("distribution_n" + std::to_string(n) + "_" + pos + ".csv"), d.str());
            }
            json points = json::array({json::array({0, 0})});
            long_csv << n << ',' << pos << ",0,0\n";
            for (const auto& p : curve.points) {
                points.push_back(json::array({json_number(p.f), json_number(p.l)}));
                long_csv << n << ',' << pos << ',' << format_number(p.f) << ',' << format_number(p.l) << '\n';
            }
            doc["n" + std::to_string(n)][pos] = {{"gini", json_number(gini(dist))}, {"points", points}};
        }
    }
    if (dir) {
        write_file(*dir / "lorenz.json", dump_json(doc));
        out << dir->string() << '\n';
    } else if (o.format == "json") {
        out << dump_json(doc);
    } else {
        out << long_csv.str();
    }
    return kOk;
}

int cmd_sweep(const Options& o, std::ostream& out) {
    if (o.corpora.size() != 1) throw UsageError("sweep takes exactly one --corpus");
    if (o.sweep_samples < 1) throw UsageError("--sweep-samples must be >= 1");
    const auto loaded = load(o.corpora.front(), o.reverse);
    const auto& corpus = *loaded.corpus;
    const int n = *std::min_element(o.orders.begin(), o.orders.end());
    auto sizes = o.sweep.empty() ? default_sweep_sizes(corpus.size()) : o.sweep;
    for (std::size_t size : sizes) {
        if (size < 1 || size > corpus.size()) {
            throw UsageError("sweep size " + std::to_string(size) + " outside [1, " + std::to_string(corpus.size()) +
                             "]");
        }
    }
    ResamplingOptions options;
    options.threads = o.threads;
    options.asymmetry = settings_from(o, false).asymmetry;
    const auto points = sample_size_sweep(corpus, n, sizes, o.sweep_samples, o.seed, options);

    std::ostringstream s;
    if (o.format == "json") {
        json doc = {{"label", loaded.label}, {"n", n}, {"seed", o.seed}, {"samples_per_size", o.sweep_samples}};
        json pts = json::array();
        for (const auto& p : points) pts.push_back(to_json(p));
        doc["points"] = pts;
        s << dump_json(doc);
    } else if (o.format == "csv") {
        write_sweep_csv(s, points);
    } else {
        s << "N  empirical mean/std  randomized mean/std\n";
        for (const auto& p : points) {
            s << p.sample_size << "  " << format_number(p.empirical_mean) << " / " << format_number(p.empirical_std)
              << "  " << format_number(p.randomized_mean) << " / " << format_number(p.randomized_std)
              << (bands_separated(p) ? "  separated" : "") << '\n';
        }
    }
    if (o.out.empty()) {
        out << s.str();
    } else {
        const auto dir = prepare_out(o.out);
        const auto name = o.format == "json" ? "sweep.json" : o.format == "csv" ? "sweep.csv" : "sweep.txt";
        write_file(dir / name, s.str());
        out << (dir / name).string() << '\n';
    }
    return kOk;
}

int cmd_surrogate(const Options& o, std::ostream& out) {
    if (o.corpora.size() != 1) throw UsageError("surrogate takes exactly one --corpus");
    if (o.realizations < 1) throw UsageError("--realizations must be >= 1");
    const auto loaded = load(o.corpora.front(), o.reverse);
    ResamplingOptions options;
    options.threads = o.threads;
    options.asymmetry = settings_from(o, false).asymmetry;
    const auto statistic = *parse_statistic(o.statistic);

    auto orders = o.orders;
    std::sort(orders.begin(), orders.end());
    orders.erase(std::unique(orders.begin(), orders.end()), orders.end());
    json doc = {{"label", loaded.label}, {"seed", o.seed}, {"ensembles", json::array()}};
    std::ostringstream csv;
    csv << "n,statistic,empirical,mean,std,n_realizations,missing\n";
    std::ostringstream text;
    for (int n : orders) {
        const auto empirical = statistic_value(asymmetry(*loaded.corpus, n, options.asymmetry), statistic);
        const auto e = surrogate_ensemble(*loaded.corpus, n, statistic, o.realizations, o.seed, options);
        auto j = to_json(e, !o.no_replicates);
        j["empirical"] = empirical ? json_number(*empirical) : json(nullptr);
        doc["ensembles"].push_back(j);
        csv << n << ',' << to_string(statistic) << ',' << num_or_empty(empirical) << ',' << format_number(e.mean)
            << ',' << format_number(e.std) << ',' << e.n_realizations << ',' << e.missing << '\n';
        text << "n=" << n << "  " << to_string(statistic) << " empirical " << num_or_empty(empirical)
             << "  surrogate mean " << format_number(e.mean) << " std " << format_number(e.std) << " ("
             << e.n_realizations << " realizations, " << e.missing << " missing)\n";
    }
    const std::string body = o.format == "json" ? dump_json(doc) : o.format == "csv" ? csv.str() : text.str();
    if (o.out.empty()) {
        out << body;
    } else {
        const auto dir = prepare_out(o.out);
        const auto name = "surrogate." + std::string(o.format == "text" ? "txt" : o.format);
        write_file(dir / name, body);
        out << (dir / name).string() << '\n';
    }
    return kOk;
}

int cmd_compare(const Options& o, std::ostream& out, std::ostream& err) {
    if (o.corpora.empty()) throw UsageError("compare needs at least one --corpus");
    const auto settings = settings_from(o, false);
    std::vector<Row> rows;
    std::vector<int> failures;
    for (const auto& path : o.corpora) {
        try {
            const auto loaded = load(path, o.reverse);
            const auto report = build_report(*loaded.corpus, loaded.label, settings);
            for (auto& row : report_rows(report, path)) rows.push_back(std::move(row));
        } catch (const Error& e) {
            Row row;
            row.label = fs::path(path).stem().string();
            row.n = settings.verdict_order;
            row.path = path;
            row.error = e.what();
            row.status = exit_status(e.code());
            const auto* line = dynamic_cast<const LineError*>(&e);
            err << error_record(e.code(), e.what(), line ? line->line() : 0, path) << '\n';
            failures.push_back(row.status);
            rows.push_back(std::move(row));
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.label != b.label) return a.label < b.label;
        if (a.n != b.n) return a.n < b.n;
        return a.path < b.path;
    });

    const std::string csv = rows_csv(rows);
    const std::string text = rows_text(rows);
    if (o.out.empty()) {
        if (o.format == "json") {
            out << dump_json(rows_json(rows));
        } else {
            out << (o.format == "csv" ? csv : text);
        }
    } else {
        const auto dir = prepare_out(o.out);
        write_file(dir / "compare.csv", csv);
        write_file(dir / "compare.txt", text);
        write_file(dir / "compare.json", dump_json(rows_json(rows)));
        out << (dir / "compare.csv").string() << '\n';
    }
    if (failures.empty()) return kOk;
    if (failures.size() == o.corpora.size()) return failures.front();
    return kPartial;
}

void add_corpus(CLI::App* cmd, Options& o, bool many) {
    auto* opt = cmd->add_option("--corpus", o.corpora,
                                many ? "Corpus config (.json) or Format A word list; repeatable"
                                     : "Corpus config (.json) or Format A word list")
                    ->required();
    if (!many) opt->expected(1);
    cmd->add_flag("--reverse", o.reverse, "Analyze the reversed orientation");
}

void add_orders(CLI::App* cmd, Options& o) {
    cmd->add_option("--n", o.orders, "n-gram orders, comma separated")->delimiter(',')->capture_default_str();
}

void add_entropy(CLI::App* cmd, Options& o) {
    cmd->add_option("--rare-filter", o.rare_filter, "Rare-sign filter for entropy")
        ->check(CLI::IsMember({"position", "corpus", "off"}))
        ->capture_default_str();
    cmd->add_option("--rare-threshold", o.threshold, "Fraction of the mean frequency a sign needs")
        ->capture_default_str();
}

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--seed", o.seed, "Master RNG seed")->capture_default_str();
    cmd->add_option("--out", o.out, "Output directory (default: print to stdout)");
    cmd->add_option("--threads", o.threads, "Worker threads, 0 = all cores; never changes results")
        ->capture_default_str();
}

void add_analysis(CLI::App* cmd, Options& o) {
    cmd->add_option("--realizations", o.realizations, "Surrogate realizations")->capture_default_str();
    cmd->add_option("--resamples", o.resamples, "Bootstrap resamples (>= 100)")->capture_default_str();
    cmd->add_option("--level", o.level, "Confidence level in (0, 1)")->capture_default_str();
    cmd->add_option("--band", o.band, "Surrogate band half-width in stds")->capture_default_str();
    cmd->add_option("--basis", o.basis, "Statistic the verdict rests on")
        ->check(CLI::IsMember({"delta_g", "delta_s", "both"}))
        ->capture_default_str();
    cmd->add_flag("--pin-basis", o.pin_basis, "Keep the basis verdict even if delta_g and delta_s disagree");
    cmd->add_option("--method", o.method, "Bootstrap interval")
        ->check(CLI::IsMember({"bca", "percentile"}))
        ->capture_default_str();
    cmd->add_flag("--no-replicates", o.no_replicates, "Omit surrogate replicate values from the report");
    add_entropy(cmd, o);
}

void add_format(CLI::App* cmd, Options& o, std::string fallback) {
    o.format = fallback;
    cmd->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
}

}  // namespace

std::string error_record(ErrorCode code, const std::string& message, std::size_t line, const std::string& path) {
    return record(std::string(to_string(code)), exit_status(code), message, line, path);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"signdir: terminal-position sign inequality and writing direction"};
    app.set_version_flag("--version", std::string(kVersion));
    app.footer(kExitCodes);
    app.require_subcommand(1);

    Options analyze_o, lorenz_o, sweep_o, surrogate_o, compare_o;

    auto* analyze = app.add_subcommand("analyze", "Full analysis of one corpus: asymmetry, surrogates, bootstrap, verdict");
    add_corpus(analyze, analyze_o, false);
    add_orders(analyze, analyze_o);
    add_analysis(analyze, analyze_o);
    analyze->add_option("--sweep", analyze_o.sweep, "Sample sizes for the sweep, comma separated")->delimiter(',');
    analyze->add_option("--sweep-samples", analyze_o.sweep_samples, "Samples per sweep size")->capture_default_str();
    add_common(analyze, analyze_o);
    add_format(analyze, analyze_o, "json");

    auto* lorenz = app.add_subcommand("lorenz", "Lorenz curves and terminal distributions");
    add_corpus(lorenz, lorenz_o, false);
    add_orders(lorenz, lorenz_o);
    lorenz->add_option("--out", lorenz_o.out, "Output directory (default: print to stdout)");
    add_format(lorenz, lorenz_o, "csv");

    auto* sweep = app.add_subcommand("sweep", "Sample-size sweep of empirical vs randomized delta_g");
    add_corpus(sweep, sweep_o, false);
    sweep_o.orders = {1};
    add_orders(sweep, sweep_o);
    sweep->add_option("--sweep", sweep_o.sweep, "Sample sizes, comma separated (default 1-2-5 steps)")->delimiter(',');
    sweep->add_option("--sweep-samples", sweep_o.sweep_samples, "Samples per size")->capture_default_str();
    add_entropy(sweep, sweep_o);
    add_common(sweep, sweep_o);
    add_format(sweep, sweep_o, "csv");

    auto* surrogate = app.add_subcommand("surrogate", "Permutation-surrogate ensemble");
    add_corpus(surrogate, surrogate_o, false);
    add_orders(surrogate, surrogate_o);
    surrogate->add_option("--realizations", surrogate_o.realizations, "Realizations")->capture_default_str();
    surrogate->add_option("--statistic", surrogate_o.statistic, "Statistic")
        ->check(CLI::IsMember({"delta_g", "delta_s"}))
        ->capture_default_str();
    surrogate->add_flag("--no-replicates", surrogate_o.no_replicates, "Omit replicate values");
    add_entropy(surrogate, surrogate_o);
    add_common(surrogate, surrogate_o);
    add_format(surrogate, surrogate_o, "json");

    auto* compare = app.add_subcommand("compare", "One summary row per corpus and order, sorted by label");
    add_corpus(compare, compare_o, true);
    add_orders(compare, compare_o);
    add_analysis(compare, compare_o);
    add_common(compare, compare_o);
    add_format(compare, compare_o, "text");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return kOk;
        }
        err << record("usage", kUsage, e.what(), 0, {}) << '\n';
        err << "Run with --help for more information.\n";
        return kUsage;
    }

    analyze_o.sweep_requested = analyze->count("--sweep") > 0 || analyze->count("--sweep-samples") > 0;

    std::string current_path;
    try {
        if (*analyze) {
            current_path = analyze_o.corpora.front();
            return cmd_analyze(analyze_o, out);
        }
        if (*lorenz) {
            current_path = lorenz_o.corpora.front();
            return cmd_lorenz(lorenz_o, out);
        }
        if (*sweep) {
            current_path = sweep_o.corpora.front();
            return cmd_sweep(sweep_o, out);
        }
        if (*surrogate) {
            current_path = surrogate_o.corpora.front();
            return cmd_surrogate(surrogate_o, out);
        }
        if (*compare) return cmd_compare(compare_o, out, err);
    } catch (const UsageError& e) {
        err << record("usage", kUsage, e.what(), 0, {}) << '\n';
        return kUsage;
    } catch (const LineError& e) {
        err << error_record(e.code(), e.what(), e.line(), current_path) << '\n';
        return exit_status(e.code());
    } catch (const Error& e) {
        err << error_record(e.code(), e.what(), 0, current_path) << '\n';
        return exit_status(e.code());
    } catch (const std::exception& e) {
        err << record(code_name(kInternal), kInternal, e.what(), 0, current_path) << '\n';
        return kInternal;
    }
    return kUsage;
}

}  // namespace signdir::cli
