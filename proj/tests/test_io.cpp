#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "pst/cli.hpp"
#include "pst/io.hpp"

using namespace pst;

namespace {

std::vector<std::string> corpus_lines() {
  std::ifstream f(PST_CORPUS_FILE);
  REQUIRE(f.good());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(f, line))
    if (!line.empty()) lines.push_back(line);
  return lines;
}

std::string write_temp(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream f(path);
  f << content;
  return path.string();
}

struct CliResult {
  int code;
  std::string out, err;
};

CliResult cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("parse_graph6 on worked examples") {
  auto k2 = parse_graph6("A_");
  CHECK(k2.n == 2);
  REQUIRE(k2.edges.size() == 1);
  CHECK(k2.edges[0] == std::pair<int, int>{0, 1});

  auto p3 = parse_graph6("Bg");
  CHECK(p3.n == 3);
  CHECK(p3.edges == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});

  auto k3 = parse_graph6("Bw");
  CHECK(k3.n == 3);
  CHECK(k3.edges == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}});

  CHECK(parse_graph6(">>graph6<<A_").n == 2);
  CHECK(parse_graph6("A_\r\n").n == 2);
  CHECK(parse_graph6("?").n == 0);
}

TEST_CASE("parse_graph6 rejects malformed lines") {
  CHECK_THROWS_AS(parse_graph6(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_graph6("B"), std::invalid_argument);        // truncated payload
  CHECK_THROWS_AS(parse_graph6("A__"), std::invalid_argument);      // trailing bytes
  CHECK_THROWS_AS(parse_graph6("~??"), std::invalid_argument);      // multi-byte size
  CHECK_THROWS_AS(parse_graph6("A\x20"), std::invalid_argument);    // payload byte < 63
  CHECK_THROWS_AS(parse_graph6("\x3a_"), std::invalid_argument);    // size byte < 63
}

TEST_CASE("graph6 round-trip over the whole corpus") {
  auto lines = corpus_lines();
  REQUIRE(lines.size() == 143);
  for (const auto& line : lines) {
    ParsedGraph g = parse_graph6(line);
    CHECK(encode_graph6(g.n, g.edges) == line);
  }
}

TEST_CASE("corpus file matches the exhaustive enumeration") {
  std::vector<std::string> expect;
  std::vector<std::size_t> per_n{1, 1, 2, 6, 21, 112};
  for (int n = 1; n <= 6; ++n) {
    auto masks = testutil::connected_graph_masks(n);
    CHECK(masks.size() == per_n[static_cast<std::size_t>(n - 1)]);
    for (unsigned mask : masks) expect.push_back(encode_graph6(n, testutil::mask_edges(n, mask)));
  }
  CHECK(expect == corpus_lines());
}

TEST_CASE("encode_graph6 guards") {
  CHECK_THROWS_AS(encode_graph6(63, {}), std::invalid_argument);
  CHECK_THROWS_AS(encode_graph6(2, {{0, 2}}), std::invalid_argument);
}

TEST_CASE("parse_edgelist") {
  auto k2 = parse_edgelist("n 2\n0 1\n");
  CHECK(k2.n == 2);
  CHECK(k2.edges == std::vector<std::pair<int, int>>{{0, 1}});

  auto inferred = parse_edgelist("0 1\n1 2\n");
  CHECK(inferred.n == 3);

  CHECK_THROWS_AS(parse_edgelist("n x\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_edgelist("0 a\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_edgelist("0 1 2\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_edgelist("0\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_edgelist(""), std::invalid_argument);
}

TEST_CASE("parse_matrix") {
  auto k2 = parse_matrix("0 1\n1 0\n");
  CHECK(k2.order() == 2);
  CHECK(k2.at(0, 1) == 1);

  CHECK_THROWS_AS(parse_matrix("0 2\n1 0\n"), std::invalid_argument);  // asymmetric
  CHECK_THROWS_AS(parse_matrix("0 1\n1\n"), std::invalid_argument);    // ragged
  CHECK_THROWS_AS(parse_matrix("0 x\nx 0\n"), std::invalid_argument);  // non-integer
  CHECK_THROWS_AS(parse_matrix("0 1 0\n1 0 1\n"), std::invalid_argument);  // not square

  auto big = parse_matrix("0 123456789012345678901234567890\n123456789012345678901234567890 0\n");
  CHECK(big.at(0, 1) == Int("123456789012345678901234567890"));
}

TEST_CASE("load_input model selection") {
  std::string g6 = write_temp("pst_load.g6", "A_\n");
  InputSpec lap{g6, Format::graph6, Model::laplacian};
  auto li = load_input(lap);
  CHECK(li.matrix.at(0, 0) == 1);
  CHECK(li.matrix.at(0, 1) == -1);
  CHECK(li.descriptor.graph6 == "A_");

  std::string mf = write_temp("pst_load.mat", "5 -1\n-1 2\n");
  auto raw = load_input(InputSpec{mf, Format::matrix, Model::raw});
  CHECK(raw.matrix.at(0, 0) == 5);
  REQUIRE(raw.descriptor.rows.has_value());

  // adjacency model over a 0/1 matrix file reconstructs the graph
  std::string adjf = write_temp("pst_adj.mat", "0 1\n1 0\n");
  auto adj = load_input(InputSpec{adjf, Format::matrix, Model::adjacency});
  CHECK(adj.descriptor.graph6 == "A_");
  CHECK_THROWS_AS(load_input(InputSpec{mf, Format::matrix, Model::adjacency}), std::invalid_argument);
  CHECK_THROWS_AS(load_input(InputSpec{g6, Format::graph6, Model::raw}), std::invalid_argument);
}

TEST_CASE("verdict JSON round-trips losslessly") {
  const auto P3 = build_adjacency({{0, 1}, {1, 2}}, 3);
  const auto P3L = build_laplacian({{0, 1}, {1, 2}}, 3);
  const auto K3 = build_adjacency({{0, 1}, {1, 2}, {0, 2}}, 3);
  const auto P4 = build_adjacency({{0, 1}, {1, 2}, {2, 3}}, 4);
  const auto C5 = build_adjacency({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}}, 5);

  for (PSTVerdict v : {decide_pst(P3, 0, 2), decide_pst(P3, 0, 1), decide_pst(P3L, 0, 2),
                       decide_pst(K3, 0, 1), decide_pst(P4, 0, 3), decide_pst(C5, 0, 2)}) {
    json j = verdict_to_json(v);
    CHECK(json(verdict_to_json(verdict_from_json(j))) == j);
    // schema stability
    CHECK(j.contains("status"));
    CHECK(j.contains("pair"));
    if (v.yes) {
      CHECK(j.contains("g"));
      CHECK(j.contains("delta"));
      CHECK(j.contains("time_numeric"));
      CHECK(j.contains("signs"));
    } else {
      CHECK(j.contains("failure"));
      CHECK(j.contains("witness"));
    }
  }
}

TEST_CASE("decide CLI emits the expected verdict record") {
  std::string g6 = write_temp("pst_k2.g6", "A_\n");
  auto res = cli({"decide", "--input", g6, "--pair", "0,1", "--verify"});
  REQUIRE(res.code == 0);
  json j = json::parse(res.out);
  REQUIRE(j.at("verdicts").size() == 1);
  const json& v = j.at("verdicts").at(0);
  CHECK(v.at("status") == "yes");
  CHECK(v.at("g") == 2);
  CHECK(v.at("delta") == 1);
  CHECK(v.at("time") == "pi/2");
  CHECK(v.at("time_numeric").get<double>() == Catch::Approx(1.5707963267948966).epsilon(1e-15));
  CHECK(j.at("oracle").at("all_ok") == true);
  // record round-trip
  CHECK(json(record_to_json(record_from_json(j))) == j);
}

TEST_CASE("scan CLI on P4 yields six NO verdicts") {
  std::string p4 = encode_graph6(4, {{0, 1}, {1, 2}, {2, 3}});
  std::string g6 = write_temp("pst_p4.g6", p4 + "\n");
  REQUIRE(parse_graph6(p4).edges.size() == 3);

  auto res = cli({"scan", "--input", g6});
  REQUIRE(res.code == 0);
  json j = json::parse(res.out);
  REQUIRE(j.at("verdicts").size() == 6);
  for (const auto& v : j.at("verdicts")) CHECK(v.at("status") == "no");
}

TEST_CASE("decide --all-pairs equals scan") {
  std::string c4 = encode_graph6(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  std::string g6 = write_temp("pst_c4b.g6", c4 + "\n");
  auto all = cli({"decide", "--input", g6, "--all-pairs"});
  REQUIRE(all.code == 0);
  json ja = json::parse(all.out);
  CHECK(ja.at("all_pairs") == true);
  CHECK(ja.at("verdicts").size() == 6);
  json js = json::parse(cli({"scan", "--input", g6}).out);
  CHECK(ja.at("verdicts") == js.at("verdicts"));
}

TEST_CASE("decide over an edge list with a standalone graph6 header upstream") {
  std::string el = write_temp("pst_k2.el", "n 2\n0 1\n");
  auto res = cli({"decide", "--input", el, "--format", "edgelist", "--pair", "0,1"});
  REQUIRE(res.code == 0);
  CHECK(json::parse(res.out).at("verdicts").at(0).at("status") == "yes");

  std::string headered = write_temp("pst_hdr.g6", ">>graph6<<\nA_\n");
  auto res2 = cli({"decide", "--input", headered, "--pair", "0,1"});
  REQUIRE(res2.code == 0);
  CHECK(json::parse(res2.out).at("input").at("graph6") == "A_");
}

TEST_CASE("usage and parse failures exit with code 1") {
  CHECK(cli({"nonsense"}).code == 1);
  CHECK(cli({"decide", "--input", "/nonexistent/file"}).code == 1);
  std::string g6 = write_temp("pst_k2b.g6", "A_\n");
  CHECK(cli({"decide", "--input", g6}).code == 1);  // missing --pair
  CHECK(cli({"decide", "--input", g6, "--pair", "0,0"}).code == 1);
  CHECK(cli({"decide", "--input", g6, "--pair", "0,7"}).code == 1);
  std::string bad = write_temp("pst_bad.g6", "A__\n");
  CHECK(cli({"decide", "--input", bad, "--pair", "0,1"}).code == 1);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("survey preserves input order regardless of --jobs") {
  auto lines = corpus_lines();
  std::ostringstream all;
  for (const auto& l : lines) all << l << "\n";
  std::string corpus = write_temp("pst_corpus.g6", all.str());

  auto seq = cli({"survey", "--input", corpus});
  REQUIRE(seq.code == 0);
  auto par = cli({"survey", "--input", corpus, "--jobs", "4"});
  REQUIRE(par.code == 0);

  auto strip = [](const std::string& out) {
    std::vector<json> records;
    std::istringstream in(out);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      json j = json::parse(line);
      j.erase("timing_ms");
      records.push_back(std::move(j));
    }
    return records;
  };
  auto a = strip(seq.out);
  auto b = strip(par.out);
  REQUIRE(a.size() == lines.size());
  REQUIRE(a == b);
  for (std::size_t i = 0; i < lines.size(); ++i)
    CHECK(a[i].at("input").at("graph6") == lines[i]);
}

TEST_CASE("verify CLI re-validates reports and flags forgeries") {
  std::string g6 = write_temp("pst_c4.g6", encode_graph6(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}) + "\n");
  auto scan = cli({"scan", "--input", g6});
  REQUIRE(scan.code == 0);
  std::string report = write_temp("pst_c4_report.jsonl", scan.out);
  auto ok = cli({"verify", "--input", report});
  CHECK(ok.code == 0);
  CHECK(json::parse(ok.out).at("ok") == true);

  // forge the time of the YES verdict: K2 at pi/4
  json rec = json::parse(cli({"decide", "--input", write_temp("pst_k2c.g6", "A_\n"), "--pair", "0,1"}).out);
  rec["verdicts"][0]["g"] = 4;
  rec["verdicts"][0]["time_numeric"] = 0.7853981633974483;
  std::string forged = write_temp("pst_forged.jsonl", rec.dump() + "\n");
  auto bad = cli({"verify", "--input", forged});
  CHECK(bad.code == 2);
  CHECK(json::parse(bad.out).at("failures") == 1);
}

TEST_CASE("mixing CLI") {
  std::string g6 = write_temp("pst_k2d.g6", "A_\n");
  auto res = cli({"mixing", "--input", g6, "--time", "0.7853981633974483", "--uniform", "1e-9"});
  REQUIRE(res.code == 0);
  json j = json::parse(res.out);
  CHECK(j.at("uniform") == true);
  CHECK(j.at("mixing").at(0).at(1).get<double>() == Catch::Approx(0.5).margin(1e-12));

  auto avg = cli({"mixing", "--input", g6, "--average"});
  REQUIRE(avg.code == 0);
  CHECK(json::parse(avg.out).at("average_mixing").at(0).at(0).get<double>() ==
        Catch::Approx(0.5).margin(1e-12));

  auto scan = cli({"mixing", "--input", g6, "--scan", "0,1", "--tmax", "6.29", "--step", "0.001"});
  REQUIRE(scan.code == 0);
  CHECK(json::parse(scan.out).at("scan").at("value").get<double>() >= 1.0 - 1e-5);

  CHECK(cli({"mixing", "--input", g6}).code == 1);  // no action selected
}
