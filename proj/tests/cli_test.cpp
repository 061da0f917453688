#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "doctest.h"
#include "json.hpp"
#include "support/tables.hpp"
#include "udc/cli.hpp"

using namespace udc;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "udc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("udc_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

  std::string write(const std::string& name, const std::string& content) const {
    std::ofstream(path_ / name, std::ios::binary) << content;
    return (path_ / name).string();
  }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Drops '# ' metadata lines.
std::string body(const std::string& text) {
  std::string out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) {
    if (l.rfind("# ", 0) != 0) out += l + "\n";
  }
  return out;
}

}  // namespace

TEST_SUITE("parse command") {
  TEST_CASE("link trace") {
    const Run r = run({"parse", "022:11.203+11.204"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("colon ':' @3: 0->1") != std::string::npos);
    CHECK(r.out.find("plus '+' @10: 1->1") != std::string::npos);
    CHECK(r.out.find("classes leading: 0") != std::string::npos);
    CHECK(r.out.find("classes all: 0 1 1") != std::string::npos);
    CHECK(r.out.find("link count: 2") != std::string::npos);
  }

  TEST_CASE("auxiliary-internal connector") {
    const Run r = run({"parse", "(100+437)"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("suppressed: auxiliary-internal") != std::string::npos);
    CHECK(r.out.find("link count: 0") != std::string::npos);
  }

  TEST_CASE("invalid input exits with parse error") {
    CHECK(run({"parse", ""}).code == kExitParse);
    const Run r = run({"parse", "[1:2"});
    CHECK(r.code == kExitParse);
    CHECK(r.err.find("unbalanced-bracket") != std::string::npos);
  }

  TEST_CASE("usage errors") {
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"frobnicate"}).code == kExitUsage);
    CHECK(run({"parse", "1:2", "--operators", "plus,times"}).code == kExitUsage);
    CHECK(run({"profile", "x.txt"}).code == kExitUsage);  // --out missing
  }
}

TEST_SUITE("profile command") {
  TEST_CASE("oclc sample") {
    TempDir dir;
    const auto input = dir.write("sample.txt", testing::join_lines(testing::kOclcSample));
    const auto out = (dir.path() / "out").string();
    const Run r = run({"profile", input, "--format", "oclc", "--out", out});
    REQUIRE(r.code == kExitOk);

    CHECK(body(slurp(fs::path(out) / "class_distribution_leading.csv")) ==
          "class,count\n0,0\n1,0\n2,0\n3,0\n4,0\n5,2\n6,4\n7,0\n8,4\n9,0\nunclassed,0\n");
    CHECK(body(slurp(fs::path(out) / "class_distribution_all.csv")).find("6,7\n") !=
          std::string::npos);

    const auto summary = nlohmann::json::parse(slurp(fs::path(out) / "summary.json"));
    CHECK(summary["ingest"]["records_accepted"] == 10);
    CHECK(summary["settings"]["format"] == "oclc");
    CHECK(summary["settings"]["weights"] == "unique");

    const std::string tsv = slurp(fs::path(out) / "length_distribution.tsv");
    CHECK(tsv.find("# format=oclc\n") != std::string::npos);
    CHECK(body(tsv).rfind("3\t2\n", 0) == 0);
  }

  TEST_CASE("libis sample, lenient, with frequencies") {
    TempDir dir;
    const auto input = dir.write("libis.txt", testing::join_lines(testing::kLibisSample));
    const auto out = (dir.path() / "out").string();
    const Run r = run({"profile", input, "--lenient", "--weights", "frequency", "--out", out});
    REQUIRE(r.code == kExitOk);
    const auto summary = nlohmann::json::parse(slurp(fs::path(out) / "summary.json"));
    CHECK(summary["ingest"]["records_accepted"] == 6);
    // "18" (x2) and the (043) rows (x6, x3, x6) carry no class
    CHECK(summary["class_distribution"]["leading"]["unclassed"] == 17);
    CHECK(summary["class_distribution"]["leading"]["counts"]["0"] == 4);
  }

  TEST_CASE("empty file") {
    TempDir dir;
    const auto input = dir.write("empty.txt", "");
    const auto out = (dir.path() / "out").string();
    const Run r = run({"profile", input, "--format", "plain", "--out", out});
    REQUIRE(r.code == kExitOk);
    const auto summary = nlohmann::json::parse(slurp(fs::path(out) / "summary.json"));
    CHECK(summary["ingest"]["lines_read"] == 0);
    CHECK(summary["class_distribution"]["all"]["ticks"] == 0);
  }

  TEST_CASE("missing input and unwritable output") {
    TempDir dir;
    CHECK(run({"profile", (dir.path() / "nope.txt").string(), "--out",
               (dir.path() / "out").string()})
              .code == kExitIo);
    const auto input = dir.write("a.txt", "597\n");
    const auto blocker = dir.write("file", "x");
    CHECK(run({"profile", input, "--format", "plain", "--out", blocker + "/sub"}).code ==
          kExitIo);
  }
}

TEST_SUITE("cooccur command") {
  TEST_CASE("oclc sample") {
    TempDir dir;
    const auto input = dir.write("sample.txt", testing::join_lines(testing::kOclcSample));
    const fs::path out = dir.path() / "out";
    REQUIRE(run({"cooccur", input, "--format", "oclc", "--out", out.string()}).code == kExitOk);

    const std::string colon = body(slurp(out / "matrix_colon.csv"));
    CHECK(colon.find("6,0,0,0,0,0,0,3,0,0,0\n") != std::string::npos);
    CHECK(body(slurp(out / "edges_colon.tsv")) == "6\t6\t3\n");
    CHECK(body(slurp(out / "edges_plus.tsv")).empty());
    CHECK(body(slurp(out / "edges_stroke.tsv")).empty());
    CHECK_FALSE(fs::exists(out / "matrix_double-colon.csv"));
    CHECK(slurp(out / "network.dot").find("n6 -> n6") != std::string::npos);
  }

  TEST_CASE("direction and self-loops") {
    TempDir dir;
    const fs::path out = dir.path() / "out";
    const auto input = dir.write("c.txt", "1:2\n2:1\n51/52\n");
    REQUIRE(run({"cooccur", input, "--format", "plain", "--out", out.string()}).code == kExitOk);
    CHECK(body(slurp(out / "edges_colon.tsv")) == "1\t2\t1\n2\t1\t1\n");
    CHECK(body(slurp(out / "edges_stroke.tsv")) == "5\t5\t1\n");
  }

  TEST_CASE("operator selection, class 4 dropping, normalization") {
    TempDir dir;
    const fs::path out = dir.path() / "out";
    const auto input = dir.write("c.txt", "1::2\n3:437\n");
    REQUIRE(run({"cooccur", input, "--format", "plain", "--operators", "colon,double-colon",
                 "--drop-class4", "--normalize", "--out", out.string()})
                .code == kExitOk);
    CHECK(body(slurp(out / "edges_double-colon.tsv")) == "1\t2\t1\n");
    CHECK(body(slurp(out / "edges_colon.tsv")).empty());
    CHECK(body(slurp(out / "matrix_colon.csv")).find("3,0,0,0,0,1,") != std::string::npos);
    CHECK_FALSE(fs::exists(out / "edges_plus.tsv"));
    const std::string norm = slurp(out / "normalized_double-colon.csv");
    CHECK(norm.find("1,NA,0.000000,1.000000,0.000000,0.000000,NA,") != std::string::npos);
    const std::string dot = slurp(out / "network.dot");
    CHECK(dot.find("// drop_class4=true") != std::string::npos);
    CHECK(dot.find("n4 ") == std::string::npos);
  }
}
