#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "test_util.hpp"

namespace {

const std::string kCli = BLOGRANK_CLI_PATH;
const std::string kData = BLOGRANK_DATA_DIR;
const std::string kCorpus = kData + "/sample_corpus.jsonl";

testutil::CommandResult run(const std::string& args) {
    return testutil::run_command("'" + kCli + "' " + args);
}

const char* kGoodLine =
    "{\"post_id\":\"p1\",\"author_id\":\"ana\",\"published_at\":\"2008-03-01\","
    "\"comment_count\":2,\"outlink_count\":0,\"length_chars\":900,"
    "\"inlinks\":[{\"cited_at\":\"2008-03-02\"}]}\n";

struct Row {
    int rank;
    std::string author;
    double score;
    bool operator==(const Row&) const = default;
};

std::vector<Row> parse_csv_rows(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);  // header
    std::vector<Row> rows;
    while (std::getline(in, line)) {
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        rows.push_back({std::stoi(line.substr(0, c1)), line.substr(c1 + 1, c2 - c1 - 1),
                        std::stod(line.substr(c2 + 1))});
    }
    return rows;
}

std::vector<Row> parse_jsonl_rows(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<Row> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto j = nlohmann::json::parse(line);
        rows.push_back({j.at("rank").get<int>(), j.at("author_id").get<std::string>(),
                        j.at("score").get<double>()});
    }
    return rows;
}

}  // namespace

TEST_CASE("validate reports counts and exits cleanly on the bundled corpus") {
    const auto result = run("validate --corpus '" + kCorpus + "'");
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("posts") != std::string::npos);
    CHECK(result.output.find("2000") != std::string::npos);
    CHECK(result.output.find("bloggers") != std::string::npos);
    CHECK(result.output.find("warnings            0") != std::string::npos);
}

TEST_CASE("validate rejects a corrupt line, naming it") {
    testutil::TempFile file(std::string(kGoodLine) + "{\"post_id\": oops\n");
    const auto result = run("validate --corpus '" + file.path() + "'");
    CHECK(result.exit_code == 2);
    CHECK(result.output.find(":2:") != std::string::npos);
}

TEST_CASE("validate flags clamped inlinks as defects") {
    testutil::TempFile file(
        "{\"post_id\":\"p1\",\"author_id\":\"ana\",\"published_at\":\"2008-03-10\","
        "\"comment_count\":0,\"outlink_count\":0,"
        "\"inlinks\":[{\"cited_at\":\"2008-03-01\"}]}\n");
    const auto result = run("validate --corpus '" + file.path() + "'");
    CHECK(result.exit_code == 2);
    CHECK(result.output.find("warning") != std::string::npos);
    CHECK(result.output.find("clamped") != std::string::npos);
}

TEST_CASE("an empty corpus needs an explicit as-of") {
    testutil::TempFile file("# empty\n");
    CHECK(run("validate --corpus '" + file.path() + "'").exit_code == 2);
    const auto ok = run("validate --corpus '" + file.path() + "' --as-of 2008-12-05");
    CHECK(ok.exit_code == 0);
}

TEST_CASE("usage errors exit with code 1") {
    CHECK(run("rank --corpus '" + kCorpus + "' --method pagerank").exit_code == 1);
    CHECK(run("rank --method meibi").exit_code == 1);  // --corpus missing
    CHECK(run("frobnicate").exit_code == 1);
    CHECK(run("rank --corpus '" + kCorpus + "' --method meibi --k 0").exit_code == 1);
    CHECK(run("rank --corpus '" + kCorpus + "' --method meibi --gamma 0").exit_code == 1);
    CHECK(run("rank --corpus '" + kCorpus + "' --method influence-flow --w-in -1").exit_code == 1);
    CHECK(run("correlate --corpus '" + kCorpus + "' --method meibi").exit_code == 1);
    CHECK(run("--help").exit_code == 0);
}

TEST_CASE("rank --k 1 prints a single data row") {
    const auto result = run("rank --corpus '" + kCorpus + "' --method meibi --k 1 --format csv");
    CHECK(result.exit_code == 0);
    CHECK(parse_csv_rows(result.output).size() == 1);
}

TEST_CASE("rank output is byte-stable across runs") {
    const std::string cmd = "rank --corpus '" + kCorpus + "' --method meibix";
    const auto first = run(cmd);
    const auto second = run(cmd);
    CHECK(first.exit_code == 0);
    CHECK(first.output == second.output);
}

TEST_CASE("csv and jsonl rankings carry the same table") {
    const std::string base = "rank --corpus '" + kCorpus + "' --method h-index --k 15 --format ";
    const auto csv = run(base + "csv");
    const auto jsonl = run(base + "jsonl");
    REQUIRE(csv.exit_code == 0);
    REQUIRE(jsonl.exit_code == 0);
    const auto csv_rows = parse_csv_rows(csv.output);
    const auto jsonl_rows = parse_jsonl_rows(jsonl.output);
    CHECK(csv_rows.size() == 15);
    CHECK(csv_rows == jsonl_rows);
}

TEST_CASE("a cyclic corpus that cannot settle exits with code 3") {
    testutil::TempFile file(
        "{\"post_id\":\"u\",\"author_id\":\"ann\",\"published_at\":\"2008-03-01\","
        "\"comment_count\":1,\"outlink_count\":1,\"length_chars\":1000,"
        "\"inlinks\":[{\"source_post_id\":\"v\",\"cited_at\":\"2008-03-01\"}]}\n"
        "{\"post_id\":\"v\",\"author_id\":\"bob\",\"published_at\":\"2008-03-01\","
        "\"comment_count\":1,\"outlink_count\":1,\"length_chars\":1000,"
        "\"inlinks\":[{\"source_post_id\":\"u\",\"cited_at\":\"2008-03-01\"}]}\n");
    const auto result =
        run("rank --corpus '" + file.path() + "' --method influence-flow --w-out 0");
    CHECK(result.exit_code == 3);
    CHECK(result.output.find("residual") != std::string::npos);
}

TEST_CASE("correlate of the same method with itself is 1.000000") {
    const auto result = run("correlate --corpus '" + kCorpus + "' --method meibi --method meibi");
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("1.000000") != std::string::npos);
}

TEST_CASE("correlate reads external rank lists") {
    const auto full = run("correlate --ranks-file '" + kData + "/rankings_full.ranks'");
    CHECK(full.exit_code == 0);
    CHECK(full.output.find("0.951515") != std::string::npos);

    const auto november = run("correlate --ranks-file '" + kData + "/rankings_november.ranks'");
    CHECK(november.exit_code == 0);
    CHECK(november.output.find("0.987879") != std::string::npos);
}

TEST_CASE("correlate rejects a one-list ranks file") {
    testutil::TempFile file("[only]\nana\nbo\n", ".ranks");
    CHECK(run("correlate --ranks-file '" + file.path() + "'").exit_code == 2);
}

TEST_CASE("histogram prints the seven bucket labels") {
    const auto result = run("histogram --corpus '" + kCorpus + "'");
    CHECK(result.exit_code == 0);
    for (const char* label : {"0 days", "1 day", "between 1 and 7 days", "between 7 and 30 days",
                              "between 30 and 60 days", "between 60 and 365 days", "over 365 days"}) {
        CHECK(result.output.find(label) != std::string::npos);
    }
}

TEST_CASE("evolve renders one column per month with dashes for absences") {
    testutil::TempFile file(
        std::string(kGoodLine) +
        "{\"post_id\":\"p2\",\"author_id\":\"bo\",\"published_at\":\"2008-04-05\","
        "\"comment_count\":1,\"outlink_count\":0,"
        "\"inlinks\":[{\"cited_at\":\"2008-04-06\"}]}\n");
    const auto single =
        run("evolve --corpus '" + file.path() + "' --method meibi --from 2008-03 --to 2008-03 "
            "--as-of 2008-05-01 --format csv");
    CHECK(single.exit_code == 0);
    CHECK(single.output.find("author_id,2008-03\n") == 0);

    const auto both =
        run("evolve --corpus '" + file.path() + "' --method meibi --from 2008-03 --to 2008-04 "
            "--as-of 2008-05-01 --format csv");
    CHECK(both.exit_code == 0);
    CHECK(both.output.find("ana,1,-") != std::string::npos);
    CHECK(both.output.find("bo,-,1") != std::string::npos);
}

TEST_CASE("evolve jsonl rows carry one key per window") {
    testutil::TempFile file(
        std::string(kGoodLine) +
        "{\"post_id\":\"p2\",\"author_id\":\"bo\",\"published_at\":\"2008-04-05\","
        "\"comment_count\":1,\"outlink_count\":0,"
        "\"inlinks\":[{\"cited_at\":\"2008-04-06\"}]}\n");
    const auto result =
        run("evolve --corpus '" + file.path() + "' --method meibi --from 2008-03 --to 2008-04 "
            "--as-of 2008-05-01 --format jsonl");
    REQUIRE(result.exit_code == 0);
    std::istringstream in(result.output);
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto j = nlohmann::json::parse(line);
        CHECK(j.contains("author_id"));
        CHECK(j.contains("2008-03"));
        CHECK(j.contains("2008-04"));
        if (j.at("author_id") == "ana") {
            CHECK(j.at("2008-03") == 1);
            CHECK(j.at("2008-04").is_null());
        }
        ++rows;
    }
    CHECK(rows == 2);
}

TEST_CASE("validate csv lists counts as key,value rows") {
    const auto result = run("validate --corpus '" + kCorpus + "' --format csv");
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("key,value\n") == 0);
    CHECK(result.output.find("posts,2000") != std::string::npos);
    CHECK(result.output.find("warnings,0") != std::string::npos);
}

TEST_CASE("--out writes the report to a file") {
    testutil::TempFile out_file("", ".out");
    const auto result = run("rank --corpus '" + kCorpus + "' --method meibi --format csv --out '" +
                            out_file.path() + "'");
    CHECK(result.exit_code == 0);
    CHECK(result.output.empty());
    const std::string written = testutil::read_file(out_file.path());
    CHECK(written.find("rank,author_id,score\n") == 0);
}
