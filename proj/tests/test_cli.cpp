#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "scfs/csv.hpp"
#include "scfs/metrics.hpp"

namespace {

int run(const std::string& args, const std::string& log = "cli_stderr.txt") {
  const std::string cmd = std::string(SCFS_CLI_PATH) + " " + args + " > cli_stdout.txt 2> " + log;
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream(path) << text;
}

}  // namespace

TEST_CASE("synth: full-scale shape and cluster on it") {
  REQUIRE(run("synth --k 4 --p 8000 --s 500 --sigma-k 6 --n-over-logp 30 --noise gaussian "
              "--seed 1 --out-data big.csv --out-labels big_truth.csv --out-support big_support.csv") == 0);
  const auto table = scfs::csv::read_matrix("big.csv");
  CHECK(table.values.rows() == 270);
  CHECK(table.values.cols() == 8000);
  CHECK(table.header.size() == 8000);
  CHECK(scfs::csv::read_index_set("big_support.csv").size() == 500);

  REQUIRE(run("cluster --input big.csv --k 4 --variant scfs2 --tau 0.9 --seed 7 --out-labels l.csv") == 0);
  CHECK(scfs::csv::read_labels("l.csv").size() == 270);
  CHECK(slurp("cli_stdout.txt").find("n=270 p=8000 k=4") != std::string::npos);
}

TEST_CASE("synth: t2 noise and invalid specs") {
  CHECK(run("synth --k 3 --n 30 --p 20 --s 5 --noise t2 --seed 2 --out-data t2.csv "
            "--out-labels t2_truth.csv --out-support t2_support.csv") == 0);
  CHECK(run("synth --k 3 --n 0 --p 20 --s 5 --out-data x.csv") == 3);
  CHECK(run("synth --k 3 --n 30 --p 20 --s 50 --out-data x.csv") == 3);
  CHECK(run("synth --k 3 --n 30 --noise cauchy --out-data x.csv") == 3);
  CHECK(run("synth --bogus") == 3);
}

TEST_CASE("cluster: deterministic artifacts") {
  REQUIRE(run("synth --k 3 --n 80 --p 100 --s 10 --sigma-k 5 --seed 3 --out-data small.csv "
              "--out-labels small_truth.csv --out-support small_support.csv") == 0);
  const std::string flags =
      "cluster --input small.csv --k 3 --seed 4 --out-scores sc.csv --out-report rep.txt --out-labels ";
  REQUIRE(run(flags + "a.csv") == 0);
  const std::string scores_a = slurp("sc.csv"), report_a = slurp("rep.txt");
  REQUIRE(run(flags + "b.csv") == 0);
  CHECK(slurp("a.csv") == slurp("b.csv"));
  CHECK(slurp("sc.csv") == scores_a);
  CHECK(slurp("rep.txt") == report_a);
  CHECK(scores_a.rfind("feature_index,c,m,sc,selected\n", 0) == 0);
  CHECK(report_a.find("variant = scfs2\n") != std::string::npos);
}

TEST_CASE("cluster: error exit codes") {
  CHECK(run("cluster --input /nonexistent/data.csv --k 3", "err.txt") == 2);
  CHECK(slurp("err.txt").find("/nonexistent/data.csv") != std::string::npos);
  write_file("bad.csv", "1,2\n3,x\n");
  CHECK(run("cluster --input bad.csv --k 2") == 2);
  CHECK(run("cluster --input small.csv --k 3 --tau 1.5") == 3);
  CHECK(run("cluster --input small.csv --k three") == 3);
  CHECK(run("cluster --input small.csv --k 3 --variant scfs9") == 3);
  CHECK(run("cluster --k 3") == 3);
}

TEST_CASE("eval: matches library calls") {
  REQUIRE(run("cluster --input small.csv --k 3 --seed 4 --out-labels pred.csv") == 0);
  REQUIRE(run("eval --truth small_truth.csv --pred small_truth.csv") == 0);
  const std::string same = slurp("cli_stdout.txt");
  CHECK(same.find("misclustering = 0\n") != std::string::npos);
  CHECK(same.find("ari = 1\n") != std::string::npos);

  REQUIRE(run("eval --truth small_truth.csv --pred pred.csv --out eval.csv") == 0);
  const auto truth = scfs::csv::read_labels("small_truth.csv");
  const auto pred = scfs::csv::read_labels("pred.csv");
  std::ostringstream want;
  scfs::write_eval_csv(want, scfs::evaluate(truth, pred));
  CHECK(slurp("eval.csv") == want.str());

  write_file("est_support.csv", "0\n1\n2\n50\n");
  REQUIRE(run("eval --truth small_truth.csv --pred pred.csv --true-support small_support.csv "
              "--est-support est_support.csv --out eval_f1.csv") == 0);
  CHECK(slurp("eval_f1.csv").find(",f1,precision,recall") != std::string::npos);
  CHECK(slurp("cli_stdout.txt").find("precision = 0.75\n") != std::string::npos);
}

TEST_CASE("eval: length mismatch exits 4") {
  write_file("short.csv", "0\n1\n");
  CHECK(run("eval --truth small_truth.csv --pred short.csv") == 4);
  CHECK(run("eval --truth missing_truth.csv --pred short.csv") == 2);
}

TEST_CASE("experiment: config errors exit 5") {
  write_file("bad.conf", "kind = spectral_sweep\nsweep = p\nwhat = 1\n");
  CHECK(run("experiment --config bad.conf", "err.txt") == 5);
  CHECK(slurp("err.txt").find("line 3") != std::string::npos);
  CHECK(run("experiment --config no_such.conf") == 2);
}

TEST_CASE("experiment: small sweep writes a CSV") {
  write_file("sweep.conf",
             "kind = spectral_sweep\nk = 3\nn = 60\np = 40\ns = 40\nsigma_k = 3\n"
             "sweep = p\nsweep_values = 40, 80\nrepetitions = 2\nseed = 1\n");
  REQUIRE(run("experiment --config sweep.conf --out sweep.csv --jobs 2") == 0);
  const std::string csv = slurp("sweep.csv");
  CHECK(csv.rfind("p,mean_error,sd_error\n", 0) == 0);
  CHECK(slurp("cli_stdout.txt").find("slope=") != std::string::npos);
}
