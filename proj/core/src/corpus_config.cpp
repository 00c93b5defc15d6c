#include "signdir/corpus_config.hpp"

#include <fstream>
#include <set>

#include "signdir/error.hpp"

namespace signdir {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& message) { throw Error(ErrorCode::config, message); }

template <class T>
T get_or(const json& obj, const char* key, T fallback) {
    if (!obj.contains(key) || obj.at(key).is_null()) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        bad(std::string("field '") + key + "' has the wrong type");
    }
}

std::vector<std::string> string_list(const json& obj, const char* key) {
    if (!obj.contains(key)) return {};
    const auto& v = obj.at(key);
    if (!v.is_array()) bad(std::string("field '") + key + "' must be an array of strings");
    std::vector<std::string> out;
    for (const auto& item : v) {
        if (!item.is_string()) bad(std::string("field '") + key + "' must be an array of strings");
        out.push_back(item.get<std::string>());
    }
    return out;
}

void reject_unknown(const json& obj, const std::set<std::string>& known, const char* where) {
    for (const auto& [key, _] : obj.items()) {
        if (!known.count(key)) bad(std::string("unknown field '") + key + "' in " + where);
    }
}

WordListFormat parse_format(const std::string& s) {
    if (s == "A") return WordListFormat::word_per_line;
    if (s == "B") return WordListFormat::word_with_count;
    if (s == "C") return WordListFormat::sign_tokens;
    bad("format must be one of A, B, C (got '" + s + "')");
}

}  // namespace

CorpusConfig parse_corpus_config(const json& doc, const std::filesystem::path& base_dir) {
    if (!doc.is_object()) bad("corpus config must be a JSON object");
    reject_unknown(doc,
                   {"label", "path", "format", "counting_mode", "min_frequency",
                    "reading_order_note", "tokenizer", "reverse"},
                   "corpus config");

    CorpusConfig cfg;
    cfg.label = get_or<std::string>(doc, "label", "");
    if (cfg.label.empty()) bad("corpus config needs a non-empty 'label'");
    const auto path = get_or<std::string>(doc, "path", "");
    if (path.empty()) bad("corpus config needs a 'path'");
    cfg.data_path = std::filesystem::path(path).is_absolute() ? std::filesystem::path(path)
                                                             : base_dir / path;
    cfg.load.format = parse_format(get_or<std::string>(doc, "format", "A"));
    cfg.reverse = get_or<bool>(doc, "reverse", false);
    cfg.load.reading_order_note = get_or<std::string>(doc, "reading_order_note", "");

    if (doc.contains("counting_mode")) {
        const auto mode = get_or<std::string>(doc, "counting_mode", "");
        if (mode == "unique-words") {
            cfg.load.counting_mode = CountingMode::unique_words;
        } else if (mode == "frequency-weighted") {
            cfg.load.counting_mode = CountingMode::frequency_weighted;
        } else {
            bad("counting_mode must be 'unique-words' or 'frequency-weighted'");
        }
    }
    if (doc.contains("min_frequency")) {
        const auto& v = doc.at("min_frequency");
        if (!v.is_number_unsigned()) bad("min_frequency must be a non-negative integer");
        cfg.load.min_frequency = v.get<std::uint64_t>();
    }

    TokenizerConfig& tok = cfg.load.tokenizer;
    if (cfg.load.format == WordListFormat::sign_tokens) tok.mode = TokenizerMode::delimiter_separated;
    if (doc.contains("tokenizer")) {
        const auto& t = doc.at("tokenizer");
        if (!t.is_object()) bad("'tokenizer' must be an object");
        reject_unknown(t, {"mode", "delimiter", "compound_table", "case_folding", "strip_marks"},
                       "tokenizer");
        if (t.contains("mode")) {
            const auto mode = get_or<std::string>(t, "mode", "");
            if (mode == "per-character") {
                tok.mode = TokenizerMode::per_character;
            } else if (mode == "delimiter-separated") {
                tok.mode = TokenizerMode::delimiter_separated;
            } else {
                bad("tokenizer.mode must be 'per-character' or 'delimiter-separated'");
            }
        }
        tok.delimiter = get_or<std::string>(t, "delimiter", tok.delimiter);
        tok.compound_table = string_list(t, "compound_table");
        tok.case_folding = get_or<bool>(t, "case_folding", true);
        tok.strip_marks = string_list(t, "strip_marks");
    }
    tok.validate();
    return cfg;
}

CorpusConfig load_corpus_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::io, "cannot open corpus config '" + path.string() + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        bad("corpus config '" + path.string() + "' is not valid JSON: " + e.what());
    }
    return parse_corpus_config(doc, path.parent_path());
}

json to_json(const CorpusConfig& config) {
    const auto& tok = config.load.tokenizer;
    json t = {
        {"mode", tok.mode == TokenizerMode::per_character ? "per-character" : "delimiter-separated"},
        {"delimiter", tok.delimiter},
        {"compound_table", tok.compound_table},
        {"case_folding", tok.case_folding},
        {"strip_marks", tok.strip_marks},
    };
    json doc = {
        {"label", config.label},
        {"path", config.data_path.generic_string()},
        {"format", std::string(to_string(config.load.format))},
        {"reverse", config.reverse},
        {"reading_order_note", config.load.reading_order_note},
        {"tokenizer", t},
    };
    if (config.load.counting_mode) doc["counting_mode"] = std::string(to_string(*config.load.counting_mode));
    if (config.load.min_frequency) doc["min_frequency"] = *config.load.min_frequency;
    return doc;
}

SignCorpus load_corpus(const CorpusConfig& config) {
    SignCorpus corpus = load_word_list(config.data_path, config.load);
    return config.reverse ? reverse_corpus(corpus) : corpus;
}

}  // namespace signdir
