#include <doctest.h>

#include <fstream>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli/cli.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using signdir::cli::run;

namespace {

struct Result {
    int status = 0;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "signdir");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    Result r;
    r.status = run(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

std::string word_list(std::size_t words, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto c = testsupport::random_corpus(rng, {words, 9, 2, 6, 0.0, 0.6});
    std::string text;
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (const auto& s : c.sign_names(i)) text += static_cast<char>('a' + std::stoi(s.substr(1)));
        text += '\n';
    }
    return text;
}

json error_of(const Result& r) {
    const auto line = r.err.substr(0, r.err.find('\n'));
    return json::parse(line)["error"];
}

const std::vector<std::string> kQuick{"--realizations", "100", "--resamples", "100"};

std::vector<std::string> with(std::vector<std::string> a, const std::vector<std::string>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("help lists exit codes") {
        const auto r = invoke({"--help"});
        CHECK(r.status == 0);
        CHECK(r.out.find("Exit status") != std::string::npos);
        CHECK(r.out.find("partial") != std::string::npos);
    }

    TEST_CASE("usage errors exit 2 with a record") {
        auto r = invoke({"analyze"});
        CHECK(r.status == 2);
        CHECK(error_of(r)["code"] == "usage");
        r = invoke({"frobnicate"});
        CHECK(r.status == 2);
        testsupport::TempDir dir;
        const auto list = dir.write("w.txt", word_list(50, 1));
        r = invoke({"analyze", "--corpus", list.string(), "--resamples", "50"});
        CHECK(r.status == 2);
        r = invoke({"analyze", "--corpus", list.string(), "--level", "1.5"});
        CHECK(r.status == 2);
        r = invoke({"analyze", "--corpus", list.string(), "--method", "nope"});
        CHECK(r.status == 2);
    }

    TEST_CASE("missing file exits 3") {
        const auto r = invoke({"analyze", "--corpus", "/nonexistent/words.txt"});
        CHECK(r.status == 3);
        const auto e = error_of(r);
        CHECK(e["code"] == "io");
        CHECK(e["exit_status"] == 3);
        CHECK(e["path"] == "/nonexistent/words.txt");
    }

    TEST_CASE("bad config exits 4") {
        testsupport::TempDir dir;
        const auto cfg = dir.write("bad.json", "{\"label\": 3");
        CHECK(invoke({"analyze", "--corpus", cfg.string()}).status == 4);
        const auto cfg2 = dir.write("bad2.json", "{\"label\": \"x\", \"path\": \"w.txt\", \"format\": \"Z\"}");
        CHECK(invoke({"analyze", "--corpus", cfg2.string()}).status == 4);
    }

    TEST_CASE("empty corpus exits 5") {
        testsupport::TempDir dir;
        const auto list = dir.write("empty.txt", "\n\na\n");
        const auto r = invoke({"analyze", "--corpus", list.string()});
        CHECK(r.status == 5);
        CHECK(error_of(r)["code"] == "empty_corpus");
    }

    TEST_CASE("malformed line exits 6 with its line number") {
        testsupport::TempDir dir;
        dir.write("w.tsv", "the\t10\nof\tmany\n");
        const auto cfg = dir.write("b.json",
                                   "{\"label\": \"B\", \"path\": \"w.tsv\", \"format\": \"B\", "
                                   "\"counting_mode\": \"frequency-weighted\"}");
        const auto r = invoke({"analyze", "--corpus", cfg.string()});
        CHECK(r.status == 6);
        CHECK(error_of(r)["line"] == 2);
    }

    TEST_CASE("analysis error exits 7") {
        testsupport::TempDir dir;
        const auto list = dir.write("w.txt", word_list(50, 2));
        const auto r = invoke({"surrogate", "--corpus", list.string(), "--n", "12"});
        CHECK(r.status == 7);
    }

    TEST_CASE("analyze writes the report and the files it lists") {
        testsupport::TempDir dir;
        const auto list = dir.write("w.txt", word_list(200, 3));
        const auto out = dir.path() / "out";
        auto r = invoke(with({"analyze", "--corpus", list.string(), "--out", out.string(), "--sweep", "10,100",
                              "--sweep-samples", "20"},
                             kQuick));
        REQUIRE(r.status == 0);
        const auto report = json::parse(slurp(out / "report.json"));
        CHECK(report["schema"] == "signdir.report/1");
        REQUIRE(report["exports"].size() >= 5);
        for (const auto& [name, file] : report["exports"].items()) {
            CHECK(fs::exists(out / file.get<std::string>()));
        }
        CHECK(slurp(out / "lorenz_n1_left.csv").rfind("F,L\n0,0\n", 0) == 0);
        CHECK(slurp(out / "sweep.csv").rfind("N,empirical_mean", 0) == 0);
    }

    TEST_CASE("same seed gives identical output, threads do not matter") {
        testsupport::TempDir dir;
        const auto list = dir.write("w.txt", word_list(150, 4));
        const auto a = invoke(with({"analyze", "--corpus", list.string(), "--threads", "1"}, kQuick));
        const auto b = invoke(with({"analyze", "--corpus", list.string(), "--threads", "3"}, kQuick));
        const auto c = invoke(with({"analyze", "--corpus", list.string(), "--seed", "2"}, kQuick));
        REQUIRE(a.status == 0);
        CHECK(a.out == b.out);
        CHECK(a.out != c.out);
    }

    TEST_CASE("compare sorts rows and reports opposite orientations") {
        testsupport::TempDir dir;
        const auto text = word_list(200, 5);
        const auto fwd = dir.write("zeta.txt", text);
        std::string reversed;
        std::istringstream in(text);
        for (std::string w; std::getline(in, w);) reversed += std::string(w.rbegin(), w.rend()) + "\n";
        const auto bwd = dir.write("alpha.txt", reversed);
        const auto r = invoke(with({"compare", "--corpus", fwd.string(), "--corpus", bwd.string(), "--format",
                                    "json", "--n", "1"},
                                   kQuick));
        REQUIRE(r.status == 0);
        const auto rows = json::parse(r.out);
        REQUIRE(rows.size() == 2);
        CHECK(rows[0]["label"] == "alpha");
        CHECK(rows[1]["label"] == "zeta");
        const double g0 = rows[0]["asymmetry"]["delta_g"];
        const double g1 = rows[1]["asymmetry"]["delta_g"];
        CHECK(g0 == doctest::Approx(-g1).epsilon(1e-12));
        CHECK(rows[0]["verdict"]["direction"] == "RightToLeft");
        CHECK(rows[1]["verdict"]["direction"] == "LeftToRight");
    }

    TEST_CASE("compare with a failing corpus exits 8") {
        testsupport::TempDir dir;
        const auto good = dir.write("good.txt", word_list(120, 6));
        const auto r = invoke(with({"compare", "--corpus", good.string(), "--corpus", "/nonexistent.txt", "--format",
                                    "csv", "--n", "1"},
                                   kQuick));
        CHECK(r.status == 8);
        CHECK(r.out.find("error:") != std::string::npos);
        CHECK(error_of(r)["code"] == "io");
        CHECK(invoke({"compare", "--corpus", "/nonexistent.txt"}).status == 3);
    }

    TEST_CASE("lorenz and sweep outputs") {
        testsupport::TempDir dir;
        const auto list = dir.write("w.txt", word_list(100, 7));
        auto r = invoke({"lorenz", "--corpus", list.string(), "--n", "1"});
        REQUIRE(r.status == 0);
        CHECK(r.out.rfind("n,position,F,L\n", 0) == 0);
        r = invoke({"sweep", "--corpus", list.string(), "--sweep", "10,50", "--sweep-samples", "10"});
        REQUIRE(r.status == 0);
        CHECK(r.out.rfind("N,empirical_mean,empirical_std,randomized_mean,randomized_std\n", 0) == 0);
        r = invoke({"sweep", "--corpus", list.string(), "--sweep", "1000"});
        CHECK(r.status == 2);
        r = invoke({"surrogate", "--corpus", list.string(), "--realizations", "20"});
        REQUIRE(r.status == 0);
        CHECK(json::parse(r.out).is_object());
    }
}
