#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "oppsim/io.hpp"

// Exercises the installed-style binary the way a user would, asserting the
// documented exit codes: 0 ok, 2 user error, 3 I/O error.

namespace {

std::string bin() { return std::string(OPPSIM_BIN); }

int run_cmd(const std::string& args) {
  const int rc = std::system((bin() + " " + args + " >/dev/null 2>&1").c_str());
  return WEXITSTATUS(rc);
}

std::filesystem::path work_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "oppsim_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("help is self-documenting and exits clean") {
  CHECK(run_cmd("--help") == 0);
  CHECK(run_cmd("run --help") == 0);
}

TEST_CASE("unknown flags and subcommands are fatal") {
  CHECK(run_cmd("run --preset jodel --no-such-flag") == 2);
  CHECK(run_cmd("frobnicate") == 2);
  CHECK(run_cmd("") == 2);  // a subcommand is required
}

TEST_CASE("dump-preset then validate round-trips") {
  const auto file = work_dir() / "jodel.scn";
  CHECK(run_cmd("dump-preset jodel " + file.string()) == 0);
  const std::string text = oppsim::read_file(file.string());
  CHECK(text.find("0.095") != std::string::npos);
  CHECK(run_cmd("validate " + file.string()) == 0);

  const auto em = work_dir() / "emergency.scn";
  CHECK(run_cmd("dump-preset emergency " + em.string()) == 0);
  CHECK(oppsim::read_file(em.string()).find("100:1") != std::string::npos);

  CHECK(run_cmd("dump-preset bogus " + file.string()) == 2);
}

TEST_CASE("validate flags bad files with the right exit codes") {
  CHECK(run_cmd("validate /no/such/file.scn") == 3);

  const auto bad = work_dir() / "bad.scn";
  {
    std::ofstream out(bad);
    out << "[scenario]\nuser_count = 750\n"
        << "[reactions]\nlabels = ignore, save\nbase = 0.9, 0.2\n"
        << "[messages]\npopularity = 0:0.7, 10-20:0.29, 50:0.02\n";
  }
  CHECK(run_cmd("validate " + bad.string()) == 2);

  const auto junk = work_dir() / "junk.scn";
  {
    std::ofstream out(junk);
    out << "[scenario]\nnot_a_key = 1\n";
  }
  CHECK(run_cmd("validate " + junk.string()) == 2);
}

TEST_CASE("run produces the documented artifacts") {
  const auto out = work_dir() / "run_out";
  std::filesystem::remove_all(out);
  CHECK(run_cmd("run --preset jodel --users 20 --horizon 600 --seed 4 "
                "--reps 2 --dump-events -o " +
                out.string()) == 0);
  CHECK(std::filesystem::exists(out / "rep-0" / "summary.json"));
  CHECK(std::filesystem::exists(out / "rep-0" / "per_user.csv"));
  CHECK(std::filesystem::exists(out / "rep-0" / "events.csv"));
  CHECK(std::filesystem::exists(out / "rep-1" / "summary.json"));
  CHECK(std::filesystem::exists(out / "aggregate.json"));
  // No stray temp files from the atomic writes.
  for (const auto& e :
       std::filesystem::recursive_directory_iterator(out)) {
    CHECK(e.path().string().find(".tmp") == std::string::npos);
  }
}

TEST_CASE("repeat runs are byte-identical") {
  const auto out_a = work_dir() / "det_a";
  const auto out_b = work_dir() / "det_b";
  std::filesystem::remove_all(out_a);
  std::filesystem::remove_all(out_b);
  const std::string args =
      "run --preset jodel --users 15 --horizon 900 --seed 21 --dump-events -o ";
  CHECK(run_cmd(args + out_a.string()) == 0);
  CHECK(run_cmd(args + out_b.string()) == 0);
  CHECK(oppsim::read_file((out_a / "rep-0" / "events.csv").string()) ==
        oppsim::read_file((out_b / "rep-0" / "events.csv").string()));
  CHECK(oppsim::read_file((out_a / "rep-0" / "summary.json").string()) ==
        oppsim::read_file((out_b / "rep-0" / "summary.json").string()));
}

TEST_CASE("run refuses invalid scenarios and missing files") {
  CHECK(run_cmd("run --preset jodel --users 0 -o /tmp/oppsim_cli_zero") == 2);
  CHECK(run_cmd("run --scenario /no/such/file.scn -o /tmp/oppsim_cli_none") ==
        3);
  CHECK(run_cmd("run -o /tmp/oppsim_cli_nopreset") == 2);  // neither source
}

TEST_SUITE_END();
