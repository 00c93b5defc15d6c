#include "test_support.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

#include <unistd.h>

namespace testsupport {

std::filesystem::path data_dir() { return SIGNDIR_TEST_DATA_DIR; }

double gini_pairwise(const std::vector<double>& w) {
    const double n = static_cast<double>(w.size());
    double total = 0.0;
    for (double x : w) total += x;
    const double mean = total / n;
    double diff = 0.0;
    for (double a : w) {
        for (double b : w) diff += std::abs(a - b);
    }
    return diff / (2.0 * n * n * mean);
}

double quantile_type7(std::vector<double> x, double p) {
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    const double h = (n - 1.0) * p + 1.0;  // 1-based position
    const double j = std::floor(h);
    const double g = h - j;
    auto at = [&](double k) { return x[static_cast<std::size_t>(std::clamp(k, 1.0, n)) - 1]; };
    return (1.0 - g) * at(j) + g * at(j + 1.0);
}

signdir::SignCorpus random_corpus(std::mt19937_64& rng, const RandomCorpusSpec& spec) {
    std::uniform_int_distribution<std::size_t> length(spec.min_length, spec.max_length);
    std::uniform_int_distribution<std::size_t> sign(0, spec.alphabet - 1);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::set<std::vector<std::string>> seen;
    std::vector<std::vector<std::string>> words;
    std::size_t attempts = 0;
    while (words.size() < spec.words) {
        if (++attempts > spec.words * 1000) throw std::runtime_error("random_corpus: alphabet too small");
        std::vector<std::string> word(length(rng));
        for (auto& s : word) s = "s" + std::to_string(sign(rng));
        if (coin(rng) < spec.left_skew) word.front() = "s0";
        if (coin(rng) < spec.right_skew) word.back() = "s1";
        if (seen.insert(word).second) words.push_back(std::move(word));
    }
    return signdir::SignCorpus::from_words(words);
}

signdir::SignCorpus corpus_of(const std::vector<std::string>& words) {
    std::vector<std::vector<std::string>> split;
    for (const auto& w : words) {
        std::vector<std::string> signs;
        for (char c : w) signs.emplace_back(1, c);
        split.push_back(std::move(signs));
    }
    return signdir::SignCorpus::from_words(split);
}

TempDir::TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("signdir-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
}

std::filesystem::path TempDir::write(const std::string& name, const std::string& content) const {
    const auto p = path_ / name;
    std::ofstream f(p, std::ios::binary);
    f << content;
    return p;
}

}  // namespace testsupport
