#include <doctest.h>

#include <sstream>

#include "signdir/corpus.hpp"
#include "signdir/corpus_config.hpp"
#include "signdir/error.hpp"
#include "signdir/positional.hpp"
#include "test_support.hpp"

using namespace signdir;
using Names = std::vector<std::string>;

namespace {

SignCorpus parse(const std::string& text, LoadOptions options = {}) {
    std::istringstream in(text);
    return parse_word_list(in, options);
}

LoadOptions format(WordListFormat f) {
    LoadOptions o;
    o.format = f;
    if (f == WordListFormat::sign_tokens) o.tokenizer.mode = TokenizerMode::delimiter_separated;
    return o;
}

}  // namespace

TEST_SUITE("corpus") {
    TEST_CASE("format A drops short words") {
        const auto c = parse("ab\ncb\nad\nx\n");
        CHECK(c.size() == 3);
        CHECK(c.signary().size() == 4);
        for (const char* s : {"a", "b", "c", "d"}) CHECK(c.signary().find(s).has_value());
        CHECK(c.load_stats().dropped_short == 1);
        CHECK(c.counting_mode() == CountingMode::unique_words);
        CHECK(c.sign_names(1) == Names{"c", "b"});
    }

    TEST_CASE("format A deduplicates and counts") {
        const auto c = parse("ab\r\nAB\n\nab\ncd\n");
        CHECK(c.size() == 2);
        CHECK(c.load_stats().duplicates == 2);
        CHECK(c.load_stats().blank_lines == 1);
        CHECK(c.total_weight() == 2.0);
    }

    TEST_CASE("byte order mark is ignored") {
        const auto c = parse("\xEF\xBB\xBF" "ab\n");
        CHECK(c.sign_names(0) == Names{"a", "b"});
    }

    TEST_CASE("format B weights and min frequency") {
        auto o = format(WordListFormat::word_with_count);
        o.min_frequency = 100000;
        const auto c = parse("the\t23135851162\nrare\t12\n", o);
        REQUIRE(c.size() == 1);
        CHECK(c.weight(0) == 23135851162ull);
        CHECK(c.counting_mode() == CountingMode::frequency_weighted);
        CHECK(c.load_stats().below_min_frequency == 1);
    }

    TEST_CASE("format B repeated words sum their counts") {
        const auto c = parse("ab\t3\nAb\t4\n", format(WordListFormat::word_with_count));
        REQUIRE(c.size() == 1);
        CHECK(c.weight(0) == 7);
    }

    TEST_CASE("format B malformed line carries its number") {
        try {
            parse("ab\t3\ncd\tmany\n", format(WordListFormat::word_with_count));
            FAIL("expected a line error");
        } catch (const LineError& e) {
            CHECK(e.line() == 2);
            CHECK(e.code() == ErrorCode::malformed_line);
        }
        CHECK_THROWS_AS(parse("ab 3\n", format(WordListFormat::word_with_count)), LineError);
    }

    TEST_CASE("format B in unique mode keeps one copy") {
        auto o = format(WordListFormat::word_with_count);
        o.counting_mode = CountingMode::unique_words;
        const auto c = parse("ab\t3\ncd\t9\n", o);
        CHECK(c.size() == 2);
        CHECK(c.weight(1) == 1);
    }

    TEST_CASE("format C sign tokens") {
        const auto c = parse("342 176 87\n342\n", format(WordListFormat::sign_tokens));
        REQUIRE(c.size() == 1);
        CHECK(c.sign_names(0) == Names{"342", "176", "87"});
    }

    TEST_CASE("empty corpus") {
        try {
            parse("x\n\ny\n");
            FAIL("expected empty corpus");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::empty_corpus);
            CHECK(std::string(e.what()) == "empty corpus");
        }
        CHECK_THROWS_AS(parse(""), Error);
    }

    TEST_CASE("weighted counting needs format B") {
        auto o = format(WordListFormat::word_per_line);
        o.counting_mode = CountingMode::frequency_weighted;
        CHECK_THROWS_AS(parse("ab\n", o), Error);
    }

    TEST_CASE("from_sequences invariants") {
        auto signary = std::make_shared<Signary>();
        const SignId a = signary->intern("a");
        const SignId b = signary->intern("b");
        CHECK_THROWS_AS(SignCorpus::from_sequences({{{a}, 1}}, signary, CountingMode::unique_words), Error);
        CHECK_THROWS_AS(SignCorpus::from_sequences({{{a, b}, 2}}, signary, CountingMode::unique_words), Error);
        CHECK_THROWS_AS(SignCorpus::from_sequences({{{a, b}, 1}, {{a, b}, 1}}, signary, CountingMode::unique_words),
                        Error);
        CHECK_NOTHROW(SignCorpus::from_sequences({{{a, b}, 1}, {{a, b}, 1}}, signary, CountingMode::unique_words, {},
                                                 DuplicatePolicy::allow));
        signary->intern("c");
        CHECK_THROWS_AS(SignCorpus::from_sequences({{{a, b}, 1}}, signary, CountingMode::unique_words), Error);
    }

    TEST_CASE("reverse_corpus") {
        const auto c = testsupport::corpus_of({"ab", "cb"});
        const auto r = reverse_corpus(c);
        CHECK(r.sign_names(0) == Names{"b", "a"});
        CHECK(r.sign_names(1) == Names{"b", "c"});
        CHECK(reverse_corpus(r) == c);
        CHECK(r.signary_ptr() == c.signary_ptr());

        const auto palindromes = testsupport::corpus_of({"aba", "cc", "abba"});
        CHECK(reverse_corpus(palindromes) == palindromes);
        CHECK(reverse_corpus(palindromes).fingerprint() == palindromes.fingerprint());
        CHECK(r.fingerprint() != c.fingerprint());
    }

    TEST_CASE("reversal preserves lengths, weights and the any-position distribution") {
        std::mt19937_64 rng(7);
        for (int trial = 0; trial < 20; ++trial) {
            const auto c = testsupport::random_corpus(rng, {});
            const auto r = reverse_corpus(c);
            REQUIRE(r.size() == c.size());
            for (std::size_t i = 0; i < c.size(); ++i) {
                CHECK(r.length(i) == c.length(i));
                CHECK(r.weight(i) == c.weight(i));
            }
            CHECK(positional_distribution(r, 1, PositionClass::any).counts() ==
                  positional_distribution(c, 1, PositionClass::any).counts());
        }
    }

    TEST_CASE("select_sequences rebuilds the signary") {
        const auto c = testsupport::corpus_of({"ab", "cd", "ef"});
        const std::vector<std::size_t> pick{1, 1};
        const auto s = select_sequences(c, pick);
        CHECK(s.size() == 2);
        CHECK(s.signary().size() == 2);
        CHECK(s.sign_names(1) == Names{"c", "d"});
    }

    TEST_CASE("corpus config") {
        testsupport::TempDir dir;
        dir.write("words.txt", "chico\nllama\nx\n");
        const auto cfg_path = dir.write("es.json", R"({
            "label": "Spanish sample",
            "path": "words.txt",
            "format": "A",
            "tokenizer": {"mode": "per-character", "compound_table": ["ch", "ll"]}
        })");
        const auto cfg = load_corpus_config(cfg_path);
        CHECK(cfg.label == "Spanish sample");
        const auto c = load_corpus(cfg);
        CHECK(c.sign_names(0) == Names{"ch", "i", "c", "o"});
        CHECK(c.sign_names(1) == Names{"ll", "a", "m", "a"});

        const auto round_trip = parse_corpus_config(to_json(cfg), dir.path());
        CHECK(round_trip.data_path == cfg.data_path);
        CHECK(round_trip.load.tokenizer.compound_table == cfg.load.tokenizer.compound_table);

        auto expect_config_error = [&](const std::string& text) {
            const auto p = dir.write("bad.json", text);
            try {
                load_corpus_config(p);
                FAIL("expected config error for " << text);
            } catch (const Error& e) {
                CHECK(e.code() == ErrorCode::config);
            }
        };
        expect_config_error("{");
        expect_config_error(R"({"path": "words.txt"})");
        expect_config_error(R"({"label": "x", "path": "words.txt", "colour": 1})");
        expect_config_error(R"({"label": "x", "path": "words.txt", "format": "D"})");
        expect_config_error(R"({"label": "x", "path": "words.txt", "tokenizer": {"mode": "delimiter-separated", "compound_table": ["ch"]}})");

        try {
            load_corpus_config(dir.path() / "missing.json");
            FAIL("expected io error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::io);
        }
    }

    TEST_CASE("shipped configs load") {
        for (const char* name : {"english.json", "english_weighted.json", "indus_like.json"}) {
            CAPTURE(name);
            const auto c = load_corpus(load_corpus_config(testsupport::data_dir() / name));
            CHECK(c.size() > 1000);
        }
    }
}
