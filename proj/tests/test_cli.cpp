#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>
#include <sys/wait.h>

#include "mchom/families.hpp"

using namespace mchom;

namespace {

struct RunResult {
  std::string out;
  int status = -1;
};

// Runs the CLI with stderr discarded; parse errors report through the exit
// code, structured errors through stdout.
RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(MCHOM_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  int rc = pclose(p);
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

void write_facets(const Complex& c, const std::string& path) {
  std::ofstream out(path);
  for (const Face& f : c.facets()) out << f.to_string() << "\n";
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("stirling values in both formats") {
  RunResult r = run_cli("stirling --n 7 --k 3 --assoc 2");
  CHECK(r.status == 0);
  CHECK(r.out == R"({
  "command": "stirling",
  "n": 7,
  "k": 3,
  "assoc": 2,
  "value": 105
}
)");
  RunResult t = run_cli("--format table stirling --n 9 --k 4");
  CHECK(t.status == 0);
  CHECK(t.out == "7770\n");
}

TEST_CASE("homology of X(4) with method agreement") {
  RunResult r = run_cli("homology --family X --n 4 --method both");
  CHECK(r.status == 0);
  CHECK(contains(r.out, "\"agreement\": true"));
  CHECK(contains(r.out, R"(    {
      "q": 1,
      "rank": 3,
      "torsion": []
    },)"));
  RunResult t = run_cli("--format table homology --family X --n 4 --method both");
  CHECK(t.status == 0);
  CHECK(t.out == R"(command: homology
family: X
n: 4
method: both
groups:
  q  rank  torsion
  0  0     []
  1  3     []
  2  0     []
  3  0     []
agreement: true
)");
}

TEST_CASE("torsion in the K7 matching complex") {
  RunResult r = run_cli("homology --family matching:K7 --n 7 --q 1 --method snf");
  CHECK(r.status == 0);
  CHECK(r.out == R"({
  "command": "homology",
  "family": "matching:K7",
  "n": 7,
  "method": "snf",
  "groups": [
    {
      "q": 1,
      "rank": 0,
      "torsion": [
        3
      ]
    }
  ]
}
)");
}

TEST_CASE("character of X(4) with decomposition") {
  RunResult r = run_cli("character --family X --n 4 --q 1 --decompose");
  CHECK(r.status == 0);
  CHECK(contains(r.out, R"(  "values": [
    -1,
    0,
    -1,
    1,
    3
  ],)"));
  CHECK(contains(r.out, R"(  "multiplicities": {
    "3+1": 1
  })"));
}

TEST_CASE("betti window with exact fit") {
  RunResult r = run_cli("betti --family X --q 1 --n-range 2..12 --fit");
  CHECK(r.status == 0);
  CHECK(contains(r.out, R"(  "fit": {
    "window": [
      3,
      12
    ],)"));
  CHECK(contains(r.out, R"(    "polys": {
      "1": [
        "-1",
        "-1"
      ],
      "2": [
        "1/2",
        "0"
      ]
    })"));
  RunResult t = run_cli("--format table betti --family X --q 1 --n-range 4..6");
  CHECK(t.status == 0);
  CHECK(contains(t.out, "  4  3\n  5  10\n  6  25\n"));
}

TEST_CASE("smith normal form from a matrix file") {
  std::string path = temp_path("mchom_cli_snf.txt");
  {
    std::ofstream out(path);
    out << "2 4 4\n-6 6 12\n10 -4 -16\n";
  }
  RunResult r = run_cli("snf --matrix " + path);
  CHECK(r.status == 0);
  CHECK(r.out == R"({
  "command": "snf",
  "rows": 3,
  "cols": 3,
  "rank": 3,
  "invariant_factors": [
    2,
    6,
    12
  ]
}
)");
  std::remove(path.c_str());
}

TEST_CASE("induced map on homology along a surjection") {
  RunResult r = run_cli("fs-map --family X --q 1 --f \"1 2 3 4 4\"");
  CHECK(r.status == 0);
  CHECK(contains(r.out, "\"rows\": 10"));
  CHECK(contains(r.out, "\"cols\": 3"));
  // The three signed unit entries of the golden matrix.
  CHECK(contains(r.out, "[\n      -1,\n      0,\n      0\n    ],"));
  CHECK(contains(r.out, "[\n      0,\n      -1,\n      0\n    ],"));
  CHECK(contains(r.out, "[\n      0,\n      0,\n      1\n    ],"));
}

TEST_CASE("shelling order round-trips through verify") {
  RunResult r = run_cli("shelling order --family X --n 4 --tie-break lex-asc");
  CHECK(r.status == 0);
  // Order starts at the discrete partition (index 13 in facet order).
  CHECK(contains(r.out, "\"facet_order\": [\n    13,"));
  // Rebuild the two input files: facets from the library (same index order
  // as the member), indices from table mode, which emits exactly an order
  // file.
  std::string fpath = temp_path("mchom_cli_x4.facets");
  std::string opath = temp_path("mchom_cli_x4.order");
  write_facets(build_X(4), fpath);
  RunResult tbl = run_cli("--format table shelling order --family X --n 4");
  CHECK(tbl.status == 0);
  {
    std::ofstream out(opath);
    out << tbl.out;
  }
  RunResult v = run_cli("shelling verify --facets " + fpath + " --order " + opath +
                        " --ground 4");
  CHECK(v.status == 0);
  CHECK(v.out == R"({
  "command": "shelling-verify",
  "is_shelling": true,
  "witness": null,
  "homology_facets_by_dim": {
    "1": [
      "1,2|3,4",
      "1,3|2,4",
      "1,4|2,3"
    ]
  }
}
)");
  // The reported order, reversed, puts the homology facets first and is
  // rejected with a witness.
  std::string rpath = temp_path("mchom_cli_x4.revorder");
  {
    std::istringstream lines(tbl.out);
    std::vector<std::string> idx;
    for (std::string line; std::getline(lines, line);)
      if (!line.empty()) idx.push_back(line);
    std::ofstream out(rpath);
    for (auto it = idx.rbegin(); it != idx.rend(); ++it) out << *it << "\n";
  }
  RunResult bad = run_cli("shelling verify --facets " + fpath + " --order " + rpath +
                          " --ground 4");
  CHECK(bad.status == 0);
  CHECK(contains(bad.out, "\"is_shelling\": false"));
  CHECK(contains(bad.out, "\"witness\": {"));
  std::remove(fpath.c_str());
  std::remove(opath.c_str());
  std::remove(rpath.c_str());
}

TEST_CASE("torsion scan over a closure seed") {
  std::string path = temp_path("mchom_cli_m7.facets");
  write_facets(matching_complex(complete_graph(7)), path);
  RunResult r = run_cli("torsion-scan --family closure:" + path + "@7 --q 1 --n-range 5..8");
  CHECK(r.status == 0);
  CHECK(contains(r.out, R"(    {
      "n": 7,
      "torsion": [
        3
      ],
      "exponent": 3
    },)"));
  CHECK(contains(r.out, "\"running_lcm\": 3"));
  CHECK(contains(r.out, "\"growth\": false"));
  std::remove(path.c_str());
}

TEST_CASE("family audits") {
  RunResult x = run_cli("family-audit --family X --n-max 5");
  CHECK(x.status == 0);
  CHECK(contains(x.out, "\"fibre_closed\": true"));
  CHECK(contains(x.out, "\"witness\": null"));
  RunResult k = run_cli("family-audit --family matching:K7 --n-max 5");
  CHECK(k.status == 0);
  CHECK(contains(k.out, "\"fibre_closed\": false"));
  CHECK(contains(k.out, R"(  "witness": {
    "a": 3,
    "b": 2,
    "f": "1 1 2",
    "sigma": "1,2",
    "preimage": "1,2,3"
  },)"));
}

TEST_CASE("exit codes and structured errors") {
  CHECK(run_cli("bogus").status == 2);
  CHECK(run_cli("betti --family X --q 1 --n-range 12..2").status == 2);
  CHECK(run_cli("homology --family X").status == 2);  // missing --n

  RunResult both = run_cli("homology --family matching:K7 --n 7 --q 1 --method both");
  CHECK(both.status == 3);
  CHECK(both.out == R"({
  "error": {
    "type": "precondition",
    "message": "singleton_shelling_order: facets must partition the ground set"
  }
}
)");

  RunResult pre = run_cli("fs-map --family matching:K7 --q 1 --f \"1 2 3 3 4 5\"");
  CHECK(pre.status == 3);
  CHECK(pre.out == R"({
  "error": {
    "type": "preimage",
    "message": "chain_map_matrix: preimage is not a face",
    "f": "1 2 3 3 4 5",
    "source": "1,2|3,4",
    "image": "1,2|3,4,5"
  }
}
)");
}

TEST_CASE("help exits zero everywhere") {
  CHECK(run_cli("--help").status == 0);
  for (const char* sub : {"homology", "betti", "character", "shelling", "stirling",
                          "snf", "fs-map", "torsion-scan", "family-audit"})
    CHECK(run_cli(std::string(sub) + " --help").status == 0);
  CHECK(run_cli("shelling verify --help").status == 0);
  CHECK(run_cli("shelling order --help").status == 0);
}

TEST_CASE("output is byte-stable across runs and thread counts") {
  std::string args = "homology --family X --n 6 --method both";
  RunResult a = run_cli(args);
  RunResult b = run_cli(args);
  CHECK(a.out == b.out);
  RunResult t1 = run_cli("--threads 1 " + args);
  RunResult t4 = run_cli("--threads 4 " + args);
  CHECK(t1.status == 0);
  CHECK(t1.out == t4.out);
  CHECK(t1.out == a.out);

  RunResult c1 = run_cli("--threads 1 character --family X --n 5 --q 1 --decompose");
  RunResult c4 = run_cli("--threads 4 character --family X --n 5 --q 1 --decompose");
  CHECK(c1.out == c4.out);
}
