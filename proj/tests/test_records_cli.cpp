#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "glq/cli.hpp"
#include "glq/factor.hpp"
#include "glq/records.hpp"

using namespace glq;
using namespace glq::records;

namespace {

int run_main(std::vector<std::string> args, std::string* out_str = nullptr,
             std::string* err_str = nullptr) {
  args.insert(args.begin(), "glq");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_str) *out_str = out.str();
  if (err_str) *err_str = err.str();
  return code;
}

}  // namespace

TEST_CASE("record writers and readers round-trip") {
  Record r1;
  r1.add("name", "alpha");
  r1.add("value", "1/3");
  r1.add("note", "has,comma and \"quotes\"");
  Record r2;
  r2.add("name", "beta");
  r2.add("value", "42");
  r2.add("note", "plain");

  std::ostringstream csv;
  RecordWriter w(csv, Format::csv);
  w.write(r1);
  w.write(r2);
  std::istringstream csv_in(csv.str());
  auto back = read_csv(csv_in);
  REQUIRE(back.size() == 2);
  CHECK(back[0] == r1);
  CHECK(back[1] == r2);

  std::ostringstream jsonl;
  RecordWriter wj(jsonl, Format::json_lines);
  wj.write(r1);
  wj.write(r2);
  std::istringstream jsonl_in(jsonl.str());
  auto back2 = read_json_lines(jsonl_in);
  REQUIRE(back2.size() == 2);
  CHECK(back2[0] == r1);
  CHECK(back2[1] == r2);
}

TEST_CASE("format names") {
  CHECK(format_from_name("csv") == Format::csv);
  CHECK(format_from_name("json-lines") == Format::json_lines);
  CHECK(format_from_name("plain") == Format::plain);
  CHECK_THROWS_AS(format_from_name("xml"), InvalidArgument);
  CHECK(format_name(Format::csv) == "csv");
}

TEST_CASE("parse_args fills the run config") {
  std::string help;
  auto cfg = cli::parse_args(
      {"density", "--n", "2", "--q", "3", "--format", "csv", "--workers", "4"},
      help);
  CHECK(cfg.verb == "density");
  CHECK(cfg.n == 2);
  CHECK(cfg.q == "3");
  CHECK(cfg.output_format == Format::csv);
  CHECK(cfg.worker_count == 4);

  auto lad = cli::parse_args({"avg", "ladder", "--mode", "ranks", "--q", "2",
                              "--xs", "16,32,64"},
                             help);
  CHECK(lad.verb == "avg");
  CHECK(lad.subverb == "ladder");
  REQUIRE(lad.xs.size() == 3);
  CHECK(lad.xs[2] == 64.0);

  CHECK_THROWS_AS(cli::parse_args({"density", "--bogus"}, help), InvalidArgument);
  auto h = cli::parse_args({"--help"}, help);
  CHECK(h.verb == "help");
  CHECK_FALSE(help.empty());
}

TEST_CASE("density record matches the pinned example") {
  cli::RunConfig cfg;
  cfg.verb = "density";
  cfg.n = 2;
  cfg.q = "3";
  cfg.output_format = Format::json_lines;
  std::ostringstream out, err;
  CHECK(cli::run(cfg, out, err) == 0);
  std::istringstream in(out.str());
  auto recs = read_json_lines(in);
  REQUIRE(recs.size() == 1);
  CHECK(*recs[0].find("phi") == "4");
  CHECK(*recs[0].find("numerator") == "4");
  CHECK(*recs[0].find("denominator") == "16");
  CHECK(*recs[0].find("density") == "1/4");
  CHECK(*recs[0].find("decimal") == "0.25");
}

TEST_CASE("series record: single-term example") {
  cli::RunConfig cfg;
  cfg.verb = "constants";
  cfg.subverb = "series";
  cfg.p = "2";
  cfg.r = 1;
  cfg.k = 1;
  cfg.output_format = Format::csv;
  std::ostringstream out, err;
  CHECK(cli::run(cfg, out, err) == 0);
  std::istringstream in(out.str());
  auto recs = read_csv(in);
  REQUIRE(recs.size() == 1);
  CHECK(*recs[0].find("estimate") == "1");
  CHECK(std::stod(*recs[0].find("error_bound")) > 0);
}

TEST_CASE("avg csv stream has exactly the pinned columns") {
  cli::RunConfig cfg;
  cfg.verb = "avg";
  cfg.subverb = "extensions";
  cfg.p = "2";
  cfg.n = 1;
  cfg.x = 5;
  cfg.output_format = Format::csv;
  std::ostringstream out, err;
  CHECK(cli::run(cfg, out, err) == 0);
  std::istringstream in(out.str());
  std::string header;
  std::getline(in, header);
  CHECK(header ==
        "mode,params,x,sample_size,raw_sum,empirical_mean,"
        "theoretical_estimate,theoretical_error_bound,discrepancy");
}

TEST_CASE("ecdf output rows round-trip and end at F = 1") {
  cli::RunConfig cfg;
  cfg.verb = "dist";
  cfg.subverb = "ecdf";
  cfg.mode = "extensions";
  cfg.p = "2";
  cfg.n = 1;
  cfg.x = 3;
  cfg.output_format = Format::csv;
  std::ostringstream out, err;
  CHECK(cli::run(cfg, out, err) == 0);
  std::istringstream in(out.str());
  auto recs = read_csv(in);
  REQUIRE(recs.size() == 3);
  CHECK(*recs[0].find("z") == "2/3");
  CHECK(*recs[0].find("F") == "1/3");
  CHECK(*recs[2].find("F") == "3/3");
}

TEST_CASE("identical configs give byte-identical output") {
  cli::RunConfig cfg;
  cfg.verb = "avg";
  cfg.subverb = "ranks";
  cfg.q = "2";
  cfg.x = 24;
  cfg.output_format = Format::json_lines;
  std::ostringstream out1, out2, err;
  cli::run(cfg, out1, err);
  cli::run(cfg, out2, err);
  CHECK(out1.str() == out2.str());
}

TEST_CASE("exit codes through main_entry") {
  std::string out, err;
  CHECK(run_main({"--help"}, &out, &err) == 0);
  CHECK_FALSE(out.empty());

  CHECK(run_main({"nonsense-command"}, &out, &err) == 2);
  CHECK(err.find("exit_code=2") != std::string::npos);

  // oracle cap exceeded -> distinct code 5
  CHECK(run_main({"oracle", "verify", "--n", "2", "--q", "41",
                  "--max-group-size", "1000"},
                 &out, &err) == 5);

  // range/overflow -> 3
  CHECK(run_main({"gl-order", "--n", "40", "--q", "251"}, &out, &err) == 3);

  // domain violation -> 2
  CHECK(run_main({"density", "--n", "0", "--q", "3"}, &out, &err) == 2);

  // happy path -> 0
  CHECK(run_main({"count", "--n", "2", "--q", "4"}, &out, &err) == 0);
  CHECK(out.find("singer_count=48") != std::string::npos);
}

TEST_CASE("cache flag loads and saves through a real run") {
  std::string path = "glq_cli_cache_test.txt";
  std::remove(path.c_str());
  std::string out, err;
  CHECK(run_main({"density", "--n", "2", "--q", "9", "--cache", path}, &out,
                 &err) == 0);
  std::ifstream check(path);
  REQUIRE(check.good());
  std::string contents((std::istreambuf_iterator<char>(check)),
                       std::istreambuf_iterator<char>());
  CHECK(contents.find("80 2 4 5 1") != std::string::npos);

  CHECK(run_main({"cache", "stats", "--cache", path}, &out, &err) == 0);
  CHECK(out.find("entries=") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("error records appear on the error stream in the chosen format") {
  std::string out, err;
  int code = run_main({"density", "--n", "2", "--q", "12", "--format",
                       "json-lines"},
                      &out, &err);
  CHECK(code == 2);
  std::istringstream err_in(err);
  auto recs = read_json_lines(err_in);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].find("error") != nullptr);
  CHECK(*recs[0].find("exit_code") == "2");
}
