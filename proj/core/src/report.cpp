#include "signdir/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "signdir/error.hpp"
#include "signdir/numeric_format.hpp"
#include "signdir/positional.hpp"
#include "signdir/version.hpp"

namespace signdir {

using nlohmann::json;

json json_number(double value) {
    if (!std::isfinite(value)) return nullptr;
    return round_significant(value);
}

std::string hex64(std::uint64_t value) {
    char buffer[17];
    std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(value));
    return buffer;
}

std::string dump_json(const json& doc) { return doc.dump(2) + "\n"; }

const OrderAnalysis* AnalysisReport::order(int n) const {
    for (const auto& o : orders) {
        if (o.n == n) return &o;
    }
    return nullptr;
}

CorpusSummary summarize_corpus(const SignCorpus& corpus, std::string label) {
    CorpusSummary s;
    s.label = std::move(label);
    s.counting_mode = corpus.counting_mode();
    s.sequences = corpus.size();
    s.total_weight = corpus.total_weight();
    s.total_signs = corpus.total_signs();
    s.signary_size = corpus.signary().size();
    s.mean_length = corpus.mean_length();
    s.min_length = corpus.min_length();
    s.max_length = corpus.max_length();
    s.reading_order_note = corpus.reading_order_note();
    s.fingerprint = corpus.fingerprint();
    s.load_stats = corpus.load_stats();
    return s;
}

namespace {

std::string order_tag(int n) { return "n=" + std::to_string(n); }

DirectionVerdict undefined_verdict(VerdictBasis basis, double band_width, std::string reason) {
    DirectionVerdict v;
    v.basis = basis;
    v.band_width = band_width;
    v.reasons.push_back(std::move(reason));
    return v;
}

DirectionVerdict decide(const OrderAnalysis& o, const AnalysisSettings& settings) {
    const auto& asym = *o.asymmetry;
    const auto& sur = *o.surrogates;
    const auto& boot = o.bootstrap;
    if (settings.basis == VerdictBasis::both) {
        if (!boot.delta_g) return undefined_verdict(VerdictBasis::both, settings.band_width, "delta_g: " + boot.delta_g_issue);
        if (!boot.delta_s) {
            VerdictOptions options;
            options.band_width = settings.band_width;
            auto v = infer_direction(asym, *boot.delta_g, sur.delta_g, options);
            v.basis = VerdictBasis::both;
            v.direction = Direction::inconclusive;
            v.significant = false;
            v.reasons.push_back("delta_s: " + boot.delta_s_issue);
            return v;
        }
        return infer_direction_both(asym, *boot.delta_g, sur.delta_g, *boot.delta_s, sur.delta_s,
                                    settings.band_width);
    }
    const bool g = settings.basis == VerdictBasis::delta_g;
    const auto& ci = g ? boot.delta_g : boot.delta_s;
    if (!ci) {
        return undefined_verdict(settings.basis, settings.band_width,
                                 std::string(to_string(settings.basis)) + ": " +
                                     (g ? boot.delta_g_issue : boot.delta_s_issue));
    }
    VerdictOptions options;
    options.band_width = settings.band_width;
    options.basis = settings.basis;
    options.pinned = settings.basis_pinned;
    return infer_direction(asym, *ci, g ? sur.delta_g : sur.delta_s, options);
}

void collect_warnings(AnalysisReport& report) {
    auto& w = report.warnings;
    const auto& s = report.settings;
    if (report.corpus.sequences < s.low_power_below) {
        w.push_back("low power: " + std::to_string(report.corpus.sequences) + " sequences (< " +
                    std::to_string(s.low_power_below) + ")");
    }
    for (const auto& o : report.orders) {
        const std::string tag = order_tag(o.n);
        if (!o.error.empty()) w.push_back(tag + ": " + o.error);
        if (o.asymmetry && !o.asymmetry->entropy_issue.empty()) {
            w.push_back(tag + ": delta_s unavailable: " + o.asymmetry->entropy_issue);
        }
        if (o.asymmetry && o.asymmetry->delta_g_degenerate) w.push_back(tag + ": delta_g degenerate (G_L + G_R = 0)");
        if (o.surrogates) {
            for (const auto* e : {&o.surrogates->delta_g, &o.surrogates->delta_s}) {
                if (e->missing > 0 && e->missing < e->requested) {
                    w.push_back(tag + ": " + std::string(to_string(e->statistic)) + " surrogate realizations missing: " +
                                std::to_string(e->missing));
                }
            }
        }
        for (const auto* ci : {&o.bootstrap.delta_g, &o.bootstrap.delta_s}) {
            if (!*ci) continue;
            const std::string name = tag + ": " + std::string(to_string((*ci)->statistic));
            if ((*ci)->missing > 0) w.push_back(name + " bootstrap resamples missing: " + std::to_string((*ci)->missing));
            if ((*ci)->degenerate) w.push_back(name + " bootstrap interval degenerate");
            if ((*ci)->point_outside) {
                w.push_back(name + " point estimate outside its bootstrap interval (z0 = " +
                            format_number((*ci)->z0) + "); the replicates are biased for this statistic");
            }
        }
    }
    if (report.verdict && report.verdict->agreement_checked && !report.verdict->agreement) {
        w.push_back("delta_g and delta_s disagree on direction");
    }
    for (const auto& p : report.sweep) {
        if (p.empirical_missing || p.randomized_missing) {
            w.push_back("sweep N=" + std::to_string(p.sample_size) + ": degenerate samples excluded");
        }
    }
}

}  // namespace

AnalysisReport build_report(const SignCorpus& corpus, const std::string& label, const AnalysisSettings& settings) {
    if (settings.orders.empty()) throw Error(ErrorCode::invalid_argument, "no n-gram orders requested");
    for (int n : settings.orders) {
        if (n < 1) throw Error(ErrorCode::invalid_argument, "n-gram order must be >= 1");
    }

    AnalysisReport report;
    report.tool_version = kVersion;
    report.settings = settings;
    auto& orders = report.settings.orders;
    std::sort(orders.begin(), orders.end());
    orders.erase(std::unique(orders.begin(), orders.end()), orders.end());
    if (!std::binary_search(orders.begin(), orders.end(), settings.verdict_order)) {
        orders.insert(std::upper_bound(orders.begin(), orders.end(), settings.verdict_order), settings.verdict_order);
    }
    report.corpus = summarize_corpus(corpus, label);

    ResamplingOptions resampling;
    resampling.asymmetry = settings.asymmetry;
    resampling.threads = settings.threads;

    for (int n : orders) {
        OrderAnalysis o;
        o.n = n;
        try {
            o.asymmetry = asymmetry(corpus, n, settings.asymmetry);
            o.lorenz_left = lorenz_points(positional_distribution(corpus, n, PositionClass::left_terminal));
            o.lorenz_right = lorenz_points(positional_distribution(corpus, n, PositionClass::right_terminal));
            o.surrogates = surrogate_ensembles(corpus, n, settings.realizations, settings.seed, resampling);
            o.bootstrap = bootstrap_cis(corpus, n, settings.resamples, settings.level, settings.seed, resampling,
                                        settings.method);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::no_ngrams) throw;
            o = OrderAnalysis{};
            o.n = n;
            o.error = e.what();
        }
        report.orders.push_back(std::move(o));
    }

    const auto* primary = report.order(settings.verdict_order);
    if (primary && primary->asymmetry) {
        report.verdict = decide(*primary, settings);
    } else {
        report.verdict_error = primary ? primary->error : "verdict order missing";
    }

    if (settings.sweep) {
        std::vector<std::size_t> sizes;
        if (settings.sweep->sizes.empty()) {
            sizes = default_sweep_sizes(corpus.size());
        } else {
            for (std::size_t size : settings.sweep->sizes) {
                if (size >= 1 && size <= corpus.size()) {
                    sizes.push_back(size);
                } else {
                    report.warnings.push_back("sweep size " + std::to_string(size) + " skipped: corpus has " +
                                              std::to_string(corpus.size()) + " sequences");
                }
            }
        }
        report.settings.sweep->sizes = sizes;
        if (!sizes.empty()) {
            report.sweep = sample_size_sweep(corpus, settings.verdict_order, sizes, settings.sweep->samples_per_size,
                                             settings.seed, resampling);
        }
    }
    collect_warnings(report);
    return report;
}

json to_json(const AsymmetryResult& r) {
    json j;
    j["n"] = r.n;
    j["g_left"] = json_number(r.g_left);
    j["g_right"] = json_number(r.g_right);
    j["delta_g"] = json_number(r.delta_g);
    j["delta_g_degenerate"] = r.delta_g_degenerate;
    j["s_left"] = r.s_left ? json_number(*r.s_left) : json(nullptr);
    j["s_right"] = r.s_right ? json_number(*r.s_right) : json(nullptr);
    j["delta_s"] = r.delta_s ? json_number(*r.delta_s) : json(nullptr);
    j["delta_s_degenerate"] = r.delta_s_degenerate;
    if (!r.entropy_issue.empty()) j["delta_s_reason"] = r.entropy_issue;
    j["left_support"] = r.left_support;
    j["right_support"] = r.right_support;
    return j;
}

json to_json(const SurrogateEnsemble& e, bool include_replicates) {
    json j;
    j["statistic"] = to_string(e.statistic);
    j["n"] = e.n;
    j["mean"] = json_number(e.mean);
    j["std"] = json_number(e.std);
    j["n_realizations"] = e.n_realizations;
    j["requested"] = e.requested;
    j["missing"] = e.missing;
    j["seed"] = e.seed;
    if (include_replicates) {
        json values = json::array();
        for (double v : e.replicates) values.push_back(json_number(v));
        j["replicates"] = std::move(values);
    }
    return j;
}

json to_json(const BootstrapCI& ci) {
    json j;
    j["statistic"] = to_string(ci.statistic);
    j["n"] = ci.n;
    j["point_estimate"] = json_number(ci.point_estimate);
    j["lower"] = json_number(ci.lower);
    j["upper"] = json_number(ci.upper);
    j["level"] = json_number(ci.level);
    j["method"] = to_string(ci.method);
    j["n_resamples"] = ci.n_resamples;
    j["requested"] = ci.requested;
    j["missing"] = ci.missing;
    j["z0"] = json_number(ci.z0);
    j["a"] = json_number(ci.a);
    j["degenerate"] = ci.degenerate;
    j["point_outside"] = ci.point_outside;
    j["seed"] = ci.seed;
    return j;
}

json to_json(const DirectionVerdict& v) {
    json j;
    j["direction"] = to_string(v.direction);
    j["basis"] = to_string(v.basis);
    j["significant"] = v.significant;
    j["agreement"] = v.agreement;
    j["agreement_checked"] = v.agreement_checked;
    j["basis_pinned"] = v.pinned;
    j["band_width"] = json_number(v.band_width);
    j["reasons"] = v.reasons;
    j["band"] = {{"lower", json_number(v.band.lower)}, {"upper", json_number(v.band.upper)}};
    j["ci"] = {{"lower", json_number(v.ci.lower)}, {"upper", json_number(v.ci.upper)}};
    if (v.band_delta_s) {
        j["band_delta_s"] = {{"lower", json_number(v.band_delta_s->lower)},
                             {"upper", json_number(v.band_delta_s->upper)}};
    }
    if (v.ci_delta_s) {
        j["ci_delta_s"] = {{"lower", json_number(v.ci_delta_s->lower)}, {"upper", json_number(v.ci_delta_s->upper)}};
    }
    return j;
}

json to_json(const SweepPoint& p) {
    return {{"N", p.sample_size},
            {"n_samples", p.n_samples},
            {"empirical_mean", json_number(p.empirical_mean)},
            {"empirical_std", json_number(p.empirical_std)},
            {"randomized_mean", json_number(p.randomized_mean)},
            {"randomized_std", json_number(p.randomized_std)},
            {"empirical_missing", p.empirical_missing},
            {"randomized_missing", p.randomized_missing},
            {"separated", bands_separated(p)}};
}

namespace {

json settings_json(const AnalysisSettings& s) {
    json j;
    j["orders"] = s.orders;
    j["realizations"] = s.realizations;
    j["resamples"] = s.resamples;
    j["level"] = json_number(s.level);
    j["band_width"] = json_number(s.band_width);
    j["interval_method"] = to_string(s.method);
    j["seed"] = s.seed;
    j["basis"] = to_string(s.basis);
    j["basis_pinned"] = s.basis_pinned;
    j["verdict_order"] = s.verdict_order;
    j["rare_filter"] = {{"enabled", s.asymmetry.entropy.rare_filter},
                        {"base", s.asymmetry.entropy.base == RareFilterBase::position ? "position" : "corpus"},
                        {"threshold", json_number(s.asymmetry.entropy.threshold)}};
    j["low_power_below"] = s.low_power_below;
    if (s.sweep) {
        j["sweep"] = {{"sizes", s.sweep->sizes}, {"samples_per_size", s.sweep->samples_per_size}};
    } else {
        j["sweep"] = nullptr;
    }
    return j;
}

json corpus_json(const CorpusSummary& c) {
    json j;
    j["label"] = c.label;
    j["counting_mode"] = to_string(c.counting_mode);
    j["sequences"] = c.sequences;
    j["total_weight"] = json_number(c.total_weight);
    j["total_signs"] = c.total_signs;
    j["signary_size"] = c.signary_size;
    j["mean_length"] = json_number(c.mean_length);
    j["min_length"] = c.min_length;
    j["max_length"] = c.max_length;
    j["reading_order_note"] = c.reading_order_note;
    j["fingerprint"] = hex64(c.fingerprint);
    j["load"] = {{"lines", c.load_stats.lines},
                 {"blank_lines", c.load_stats.blank_lines},
                 {"dropped_short", c.load_stats.dropped_short},
                 {"duplicates", c.load_stats.duplicates},
                 {"below_min_frequency", c.load_stats.below_min_frequency}};
    return j;
}

}  // namespace

json to_json(const AnalysisReport& report) {
    const bool replicates = report.settings.include_replicates;
    json j;
    j["schema"] = report.schema;
    j["tool_version"] = report.tool_version;
    j["corpus"] = corpus_json(report.corpus);
    j["settings"] = settings_json(report.settings);

    json orders = json::array();
    for (const auto& o : report.orders) {
        json jo;
        jo["n"] = o.n;
        if (!o.asymmetry) {
            jo["error"] = o.error;
            orders.push_back(std::move(jo));
            continue;
        }
        jo["asymmetry"] = to_json(*o.asymmetry);
        jo["surrogate"] = {{"delta_g", to_json(o.surrogates->delta_g, replicates)},
                           {"delta_s", to_json(o.surrogates->delta_s, replicates)}};
        json boot;
        boot["delta_g"] = o.bootstrap.delta_g ? to_json(*o.bootstrap.delta_g) : json(nullptr);
        boot["delta_s"] = o.bootstrap.delta_s ? to_json(*o.bootstrap.delta_s) : json(nullptr);
        if (!o.bootstrap.delta_g) boot["delta_g_reason"] = o.bootstrap.delta_g_issue;
        if (!o.bootstrap.delta_s) boot["delta_s_reason"] = o.bootstrap.delta_s_issue;
        jo["bootstrap"] = std::move(boot);
        jo["lorenz"] = {{"left_points", o.lorenz_left.points.size()},
                        {"right_points", o.lorenz_right.points.size()}};
        orders.push_back(std::move(jo));
    }
    j["orders"] = std::move(orders);

    if (report.verdict) {
        j["verdict"] = to_json(*report.verdict);
        j["verdict"]["n"] = report.settings.verdict_order;
    } else {
        j["verdict"] = {{"direction", to_string(Direction::inconclusive)},
                        {"significant", false},
                        {"reasons", json::array({report.verdict_error})},
                        {"n", report.settings.verdict_order}};
    }

    if (report.settings.sweep) {
        json sweep = json::array();
        for (const auto& p : report.sweep) sweep.push_back(to_json(p));
        j["sweep"] = std::move(sweep);
    } else {
        j["sweep"] = nullptr;
    }
    j["warnings"] = report.warnings;
    j["exports"] = report.exports;
    return j;
}

void write_text_summary(std::ostream& out, const AnalysisReport& report) {
    const auto& c = report.corpus;
    out << "corpus      " << c.label << " (" << to_string(c.counting_mode) << ")\n";
    out << "sequences   " << c.sequences << ", signs " << c.signary_size << ", mean length "
        << format_number(round_significant(c.mean_length, 4)) << "\n";
    for (const auto& o : report.orders) {
        out << "\nn = " << o.n << "\n";
        if (!o.asymmetry) {
            out << "  error: " << o.error << "\n";
            continue;
        }
        const auto& a = *o.asymmetry;
        out << "  G_L " << format_number(a.g_left) << "  G_R " << format_number(a.g_right) << "  dG "
            << (a.delta_g_degenerate ? std::string("undefined") : format_number(a.delta_g)) << "\n";
        if (a.delta_s && !a.delta_s_degenerate) {
            out << "  S_L " << format_number(*a.s_left) << "  S_R " << format_number(*a.s_right) << "  dS "
                << format_number(*a.delta_s) << "\n";
        } else {
            out << "  dS unavailable" << (a.entropy_issue.empty() ? "" : ": " + a.entropy_issue) << "\n";
        }
        const auto& sg = o.surrogates->delta_g;
        out << "  surrogate dG mean " << format_number(sg.mean) << " std " << format_number(sg.std) << " ("
            << sg.n_realizations << " realizations)\n";
        if (o.bootstrap.delta_g) {
            const auto& ci = *o.bootstrap.delta_g;
            out << "  " << to_string(ci.method) << " " << format_number(ci.level * 100) << "% CI dG ["
                << format_number(ci.lower) << ", " << format_number(ci.upper) << "]\n";
        }
    }
    out << "\nverdict     ";
    if (report.verdict) {
        const auto& v = *report.verdict;
        out << to_string(v.direction) << " (basis " << to_string(v.basis) << ", "
            << (v.significant ? "significant" : "not significant") << ")\n";
        for (const auto& r : v.reasons) out << "  - " << r << "\n";
    } else {
        out << "Inconclusive\n  - " << report.verdict_error << "\n";
    }
    if (!report.sweep.empty()) {
        out << "\nsweep (N: empirical mean/std | randomized mean/std)\n";
        for (const auto& p : report.sweep) {
            out << "  " << p.sample_size << ": " << format_number(p.empirical_mean) << " / "
                << format_number(p.empirical_std) << " | " << format_number(p.randomized_mean) << " / "
                << format_number(p.randomized_std) << (bands_separated(p) ? "  separated" : "") << "\n";
        }
    }
    for (const auto& w : report.warnings) out << "warning: " << w << "\n";
}

}  // namespace signdir
