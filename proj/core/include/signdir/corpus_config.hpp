#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "signdir/corpus.hpp"

namespace signdir {

// One corpus declaration. See docs/corpus_config.md for the JSON schema.
struct CorpusConfig {
    std::string label;
    std::filesystem::path data_path;  // resolved against the config file's directory
    LoadOptions load;
    bool reverse = false;             // analyze the reversed orientation
};

CorpusConfig parse_corpus_config(const nlohmann::json& doc,
                                 const std::filesystem::path& base_dir = {});
CorpusConfig load_corpus_config(const std::filesystem::path& path);
nlohmann::json to_json(const CorpusConfig& config);

SignCorpus load_corpus(const CorpusConfig& config);

}  // namespace signdir
