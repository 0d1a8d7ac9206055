#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "idealdnf/cli.hpp"
#include "support.hpp"

using namespace idealdnf;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "idealdnf");
    std::vector<const char*> argv;
    for (auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(int(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch() {
    static const fs::path dir = [] {
        auto p = fs::temp_directory_path() / ("idealdnf_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

std::string write(const std::string& name, const std::string& text) {
    const auto p = scratch() / name;
    std::ofstream(p) << text;
    return p.string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const std::string kBreast = IDEALDNF_DATA_DIR "/breast_cancer_wisconsin.csv";

}  // namespace

TEST_CASE("train on planted data") {
    const auto csv = write("planted.csv", to_csv(testsupport::planted_dataset(2000, 0.0, 3)));
    const auto model = (scratch() / "planted_model.json").string();
    const auto r = run_cli({"train", "--data", csv, "--target", "q", "--out", model});
    REQUIRE(r.code == 0);
    const auto first_line = r.out.substr(0, r.out.find('\n'));
    const auto parsed = parse_dnf(first_line);
    CHECK(testsupport::is_planted(parsed.formula, parsed.names));
    const auto doc = nlohmann::json::parse(slurp(model));
    CHECK(doc["run"]["version"] == kVersion);
    CHECK(doc["run"]["config"]["data"]["target"] == "q");
}

TEST_CASE("train on constant data prints TRUE") {
    const auto csv = write("const.csv", to_csv(testsupport::constant_dataset(30, true, 1)));
    const auto r = run_cli({"train", "--data", csv, "--target", "q", "--out", (scratch() / "c.json").string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("TRUE\n", 0) == 0);
}

TEST_CASE("missing target column exits 2 naming it") {
    const auto r = run_cli({"train", "--data", kBreast, "--target", "diagnosis"});
    CHECK(r.code == 2);
    CHECK(r.err.find("diagnosis") != std::string::npos);
}

TEST_CASE("cv on breast cancer and determinism") {
    const auto out = (scratch() / "cv.json").string();
    const std::vector<std::string> args{"cv",     "--data", kBreast,     "--target", "class", "--positive-label",
                                        "benign", "--drop", "sample_id", "--k",      "10",    "--seed",
                                        "1",      "--out",  out};
    REQUIRE(run_cli(args).code == 0);
    const auto first = slurp(out);
    REQUIRE(run_cli(args).code == 0);
    CHECK(slurp(out) == first);

    auto doc = nlohmann::json::parse(first);
    CHECK(doc["fold_accuracies"].size() == 10);
    CHECK(doc["mean"].get<double>() >= 0.93);
    CHECK(doc["mean"].get<double>() <= 0.98);
    CHECK(doc["seed"] == 1);
    CHECK(doc["run"]["version"] == kVersion);
    CHECK(doc["run"]["config"]["k"] == 10);

    auto threaded = args;
    threaded.insert(threaded.end(), {"--threads", "3"});
    REQUIRE(run_cli(threaded).code == 0);
    auto other = nlohmann::json::parse(slurp(out));
    doc.erase("run");
    other.erase("run");
    CHECK(doc == other);
}

TEST_CASE("k larger than the row count exits 2") {
    const auto csv = write("tiny.csv", "a,q\n1,1\n2,0\n3,1\n");
    CHECK(run_cli({"cv", "--data", csv, "--target", "q", "--k", "4"}).code == 2);
}

TEST_CASE("loocv") {
    const auto csv = write("loo.csv", "p,q\ntrue,true\nfalse,false\ntrue,true\nfalse,false\ntrue,true\n");
    const auto r = run_cli({"loocv", "--data", csv, "--target", "q", "--json"});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["mean"] == 1.0);
    const auto one = write("one.csv", "p,q\ntrue,true\n");
    CHECK(run_cli({"loocv", "--data", one, "--target", "q"}).code != 0);
}

TEST_CASE("bound") {
    auto r = run_cli({"bound", "--tau", "3", "--epsilon", "0.05", "--delta", "0.01"});
    CHECK(r.code == 0);
    CHECK(r.out == "5903\n");
    r = run_cli({"bound", "--tau", "2", "--epsilon", "0.3", "--delta", "0.1", "--which", "theorem"});
    CHECK(r.out == "98\n");
    r = run_cli({"bound", "--tau", "3", "--epsilon", "0.05", "--delta", "0.01", "--which", "corollary"});
    CHECK(r.out == "377742\n");
    CHECK(run_cli({"bound", "--tau", "2", "--epsilon", "0.3", "--delta", "1"}).code == 2);
    CHECK(run_cli({"bound", "--tau", "2", "--epsilon", "0.3", "--delta", "0.1", "--which", "lemma"}).code == 2);
}

TEST_CASE("simplify") {
    CHECK(run_cli({"simplify", "(p & q) | (p & ~q)"}).out == "p\n");
    CHECK(run_cli({"simplify", "p3 | (p1 & p2)", "--vocabulary", "p1,p2,p3"}).out == "p3 | (p1 & p2)\n");
    const auto r = run_cli({"simplify",
                            "(~p1 & ~p2 & p3) | (~p1 & p2 & p3) | (p1 & ~p2 & p3) | (p1 & p2 & p3) | (p1 & p2 & ~p3)",
                            "--vocabulary", "p1,p2,p3"});
    CHECK(r.out == "p3 | (p1 & p2)\n");
    CHECK(run_cli({"simplify", "p & "}).code == 2);
}

TEST_CASE("predict") {
    const auto d = testsupport::planted_dataset(1000, 0.0, 8);
    const auto csv = write("train.csv", to_csv(d));
    const auto model = (scratch() / "m.json").string();
    REQUIRE(run_cli({"train", "--data", csv, "--target", "q", "--out", model}).code == 0);

    const auto r = run_cli({"predict", "--model", model, "--input", csv});
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::size_t i = 0;
    while (std::getline(lines, line)) {
        CHECK(line == (d.target(i) ? "true" : "false"));
        ++i;
    }
    CHECK(i == d.size());

    const auto bad = write("bad.csv", "x1,x2,x3\n1,2,3\n");
    CHECK(run_cli({"predict", "--model", model, "--input", bad}).code == 2);
}

TEST_CASE("config file with flag overrides") {
    const auto cfg = write("run.json", R"({
        "data": {"path": ")" + kBreast + R"(", "target": "class", "positive_label": "benign",
                 "drop_columns": ["sample_id"]},
        "pipeline": {"max_features": 3},
        "seed": 4, "k": 5
    })");
    const auto r = run_cli({"cv", "--config", cfg, "--seed", "6", "--json"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["seed"] == 6);
    CHECK(doc["k"] == 5);
    CHECK(doc["run"]["config"]["pipeline"]["max_features"] == 3);

    const auto typo = write("typo.json", R"({"seeds": 1})");
    CHECK(run_cli({"bound", "--config", typo}).code == 2);
    const auto broken = write("broken.json", "{");
    CHECK(run_cli({"bound", "--config", broken}).code == 2);
}

TEST_CASE("data errors exit 3") {
    const auto csv = write("ragged.csv", "a,q\n1,1\n2\n");
    CHECK(run_cli({"train", "--data", csv, "--target", "q"}).code == 3);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"frobnicate"}).code == 2);
    CHECK(run_cli({"bound", "--tau", "x"}).code == 2);
}

TEST_CASE("agreement") {
    const auto dist = write("mu.json", R"({"tau_size": 1, "types": [
        {"type": "1", "q": true, "probability": 0.5},
        {"type": "0", "q": false, "probability": 0.5}]})");
    const auto r = run_cli({"agreement", "--distribution", dist, "--n", "200", "--trials", "20", "--epsilon", "0.1"});
    CHECK(r.code == 0);
    CHECK(r.out == "1\n");
}
