// Input parsing (graph6, edge list, dense matrix), matrix-model selection and
// the line-delimited JSON report format shared by every CLI subcommand.

#pragma once

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pst/decider.hpp"
#include "pst/matrix.hpp"
#include "pst/oracle.hpp"

namespace pst {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// graph6

struct ParsedGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
};

/// Standard graph6 line with a single-byte size (n <= 62); the optional
/// ">>graph6<<" header is tolerated. Edge bits run column-major over the
/// upper triangle, packed big-endian into 6-bit groups offset by 63.
inline ParsedGraph parse_graph6(const std::string& line_in) {
  std::string line = line_in;
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r' || line.back() == ' '))
    line.pop_back();
  const std::string header = ">>graph6<<";
  if (line.rfind(header, 0) == 0) line = line.substr(header.size());
  if (line.empty()) throw std::invalid_argument("graph6: empty line");

  unsigned char b0 = static_cast<unsigned char>(line[0]);
  if (b0 == 126)
    throw std::invalid_argument("graph6: multi-byte size encodings (n > 62) are not supported");
  if (b0 < 63 || b0 > 126)
    throw std::invalid_argument("graph6: invalid size byte " + std::to_string(int(b0)));
  int n = int(b0) - 63;

  std::size_t nbits = static_cast<std::size_t>(n) * (n - 1) / 2;
  std::size_t nbytes = (nbits + 5) / 6;
  if (line.size() - 1 < nbytes) throw std::invalid_argument("graph6: truncated bit payload");
  if (line.size() - 1 > nbytes) throw std::invalid_argument("graph6: unexpected trailing bytes");

  ParsedGraph g;
  g.n = n;
  std::size_t bit = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++bit) {
      unsigned char byte = static_cast<unsigned char>(line[1 + bit / 6]);
      if (byte < 63 || byte > 126)
        throw std::invalid_argument("graph6: invalid payload byte " + std::to_string(int(byte)));
      unsigned value = byte - 63;
      if ((value >> (5 - bit % 6)) & 1u) g.edges.emplace_back(i, j);
    }
  }
  return g;
}

inline std::string encode_graph6(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n < 0 || n > 62) throw std::invalid_argument("encode_graph6: order must be in [0, 62]");
  std::vector<bool> adj(static_cast<std::size_t>(n) * n, false);
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n || u == v)
      throw std::invalid_argument("encode_graph6: bad edge");
    adj[static_cast<std::size_t>(u) * n + v] = adj[static_cast<std::size_t>(v) * n + u] = true;
  }
  std::string out(1, static_cast<char>(n + 63));
  unsigned group = 0;
  int filled = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      group = (group << 1) | (adj[static_cast<std::size_t>(i) * n + j] ? 1u : 0u);
      if (++filled == 6) {
        out.push_back(static_cast<char>(group + 63));
        group = 0;
        filled = 0;
      }
    }
  if (filled > 0) out.push_back(static_cast<char>((group << (6 - filled)) + 63));
  return out;
}

// ---------------------------------------------------------------------------
// edge list and dense matrix text

/// Lines of "u v" pairs, 0-indexed, with an optional first line "n <count>"
/// declaring the number of vertices.
inline ParsedGraph parse_edgelist(const std::string& text) {
  ParsedGraph g;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  int declared = -1;
  int max_seen = -1;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;  // blank line
    if (first && tok == "n") {
      if (!(ls >> declared) || declared < 1)
        throw std::invalid_argument("edgelist: bad vertex count header");
      std::string extra;
      if (ls >> extra) throw std::invalid_argument("edgelist: trailing tokens after header");
      first = false;
      continue;
    }
    first = false;
    int u, v;
    try {
      u = std::stoi(tok);
    } catch (const std::exception&) {
      throw std::invalid_argument("edgelist: non-integer token '" + tok + "'");
    }
    if (!(ls >> v)) throw std::invalid_argument("edgelist: expected 'u v' pair, got '" + line + "'");
    std::string extra;
    if (ls >> extra) throw std::invalid_argument("edgelist: trailing tokens in '" + line + "'");
    if (u < 0 || v < 0) throw std::invalid_argument("edgelist: negative vertex index");
    g.edges.emplace_back(u, v);
    max_seen = std::max(max_seen, std::max(u, v));
  }
  g.n = declared >= 0 ? declared : max_seen + 1;
  if (g.n < 1) throw std::invalid_argument("edgelist: no vertices");
  return g;
}

/// Whitespace-separated integer rows; must be square and symmetric.
inline IntSymMatrix parse_matrix(const std::string& text) {
  std::vector<std::vector<Int>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<Int> row;
    std::string tok;
    while (ls >> tok) {
      try {
        row.emplace_back(tok);
      } catch (const std::exception&) {
        throw std::invalid_argument("matrix: non-integer token '" + tok + "'");
      }
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("matrix: empty input");
  for (const auto& r : rows)
    if (r.size() != rows.size())
      throw std::invalid_argument("matrix: input is not a square table");
  return IntSymMatrix::from_rows(rows);
}

// ---------------------------------------------------------------------------
// input selection

enum class Format { graph6, edgelist, matrix };
enum class Model { adjacency, laplacian, raw };

inline const char* to_string(Format f) {
  switch (f) {
    case Format::graph6: return "graph6";
    case Format::edgelist: return "edgelist";
    case Format::matrix: return "matrix";
  }
  return "?";
}
inline const char* to_string(Model m) {
  switch (m) {
    case Model::adjacency: return "adjacency";
    case Model::laplacian: return "laplacian";
    case Model::raw: return "raw";
  }
  return "?";
}

inline Format format_from_string(const std::string& s) {
  if (s == "graph6") return Format::graph6;
  if (s == "edgelist") return Format::edgelist;
  if (s == "matrix") return Format::matrix;
  throw std::invalid_argument("unknown format '" + s + "'");
}
inline Model model_from_string(const std::string& s) {
  if (s == "adjacency") return Model::adjacency;
  if (s == "laplacian") return Model::laplacian;
  if (s == "raw") return Model::raw;
  throw std::invalid_argument("unknown model '" + s + "'");
}

struct InputSpec {
  std::string source;  // file path, or "-" for standard input
  Format format = Format::graph6;
  Model model = Model::adjacency;
};

/// Self-contained description of one decided input, enough to rebuild the
/// matrix when re-validating a report: a graph6 string plus model for graph
/// inputs, or the raw rows for matrix inputs.
struct InputDescriptor {
  std::string source;
  Format format = Format::graph6;
  Model model = Model::adjacency;
  std::optional<std::string> graph6;
  std::optional<std::vector<std::vector<Int>>> rows;

  IntSymMatrix matrix() const {
    if (graph6) {
      ParsedGraph g = parse_graph6(*graph6);
      if (model == Model::laplacian) return build_laplacian(g.edges, g.n);
      return build_adjacency(g.edges, g.n);
    }
    if (rows) return IntSymMatrix::from_rows(*rows);
    throw std::invalid_argument("report record carries no reconstructible input");
  }
};

struct LoadedInput {
  IntSymMatrix matrix;
  InputDescriptor descriptor;
};

inline std::string read_source(const std::string& source) {
  if (source == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream f(source);
  if (!f) throw std::invalid_argument("cannot open input '" + source + "'");
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

inline LoadedInput build_model(const ParsedGraph& g, const InputSpec& spec) {
  if (spec.model == Model::raw)
    throw std::invalid_argument("raw model requires matrix format");
  IntSymMatrix m = spec.model == Model::laplacian ? build_laplacian(g.edges, g.n)
                                                  : build_adjacency(g.edges, g.n);
  InputDescriptor d;
  d.source = spec.source;
  d.format = spec.format;
  d.model = spec.model;
  if (g.n <= 62) {
    d.graph6 = encode_graph6(g.n, g.edges);
  } else {
    std::vector<std::vector<Int>> rows(static_cast<std::size_t>(m.order()));
    for (int i = 0; i < m.order(); ++i)
      for (int j = 0; j < m.order(); ++j) rows[static_cast<std::size_t>(i)].push_back(m.at(i, j));
    d.rows = std::move(rows);
    d.model = Model::raw;
  }
  return LoadedInput{std::move(m), std::move(d)};
}

inline LoadedInput load_input(const InputSpec& spec) {
  std::string text = read_source(spec.source);
  switch (spec.format) {
    case Format::graph6: {
      std::istringstream in(text);
      std::string line, found;
      while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty() || line == ">>graph6<<") continue;
        found = line;
        break;
      }
      return build_model(parse_graph6(found), spec);
    }
    case Format::edgelist:
      return build_model(parse_edgelist(text), spec);
    case Format::matrix: {
      IntSymMatrix m = parse_matrix(text);
      if (spec.model == Model::raw) {
        InputDescriptor d;
        d.source = spec.source;
        d.format = spec.format;
        d.model = spec.model;
        std::vector<std::vector<Int>> rows(static_cast<std::size_t>(m.order()));
        for (int i = 0; i < m.order(); ++i)
          for (int j = 0; j < m.order(); ++j) rows[static_cast<std::size_t>(i)].push_back(m.at(i, j));
        d.rows = std::move(rows);
        return LoadedInput{std::move(m), std::move(d)};
      }
      // adjacency/laplacian over a matrix file: interpret the 0/1 entries as a graph
      ParsedGraph g;
      g.n = m.order();
      for (int i = 0; i < m.order(); ++i) {
        if (sign_of(m.at(i, i)) != 0)
          throw std::invalid_argument("matrix with diagonal entries cannot be read as a graph");
        for (int j = i + 1; j < m.order(); ++j) {
          if (m.at(i, j) == 1) g.edges.emplace_back(i, j);
          else if (sign_of(m.at(i, j)) != 0)
            throw std::invalid_argument("matrix with entries outside {0,1} cannot be read as a graph");
        }
      }
      return build_model(g, spec);
    }
  }
  throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------------------
// JSON serialization

inline json int_to_json(const Int& v) {
  if (fits_long(v)) return json(v.get_si());
  return json(v.get_str());
}
inline Int int_from_json(const json& j) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) return Int(j.get<std::string>());
  throw std::invalid_argument("expected integer or decimal string");
}

inline json poly_to_json(const IntPoly& f) {
  json a = json::array();
  for (const Int& c : f.coeffs()) a.push_back(int_to_json(c));
  return a;
}
inline IntPoly poly_from_json(const json& j) {
  std::vector<Int> c;
  for (const auto& x : j) c.push_back(int_from_json(x));
  return IntPoly(std::move(c));
}

inline json eigenvalue_to_json(const Eigenvalue& e) {
  return json{{"p", int_to_json(e.p)}, {"q", int_to_json(e.q)}, {"delta", int_to_json(e.delta)}};
}
inline Eigenvalue eigenvalue_from_json(const json& j) {
  return Eigenvalue(int_from_json(j.at("p")), int_from_json(j.at("q")), int_from_json(j.at("delta")));
}

inline NotPeriodicReason reason_from_string(const std::string& s) {
  for (auto r : {NotPeriodicReason::MixedIntegerQuadratic, NotPeriodicReason::OddDegreeRemainder,
                 NotPeriodicReason::NonIntegerSharedTrace, NotPeriodicReason::ZeroWithNonzeroTrace,
                 NotPeriodicReason::OddCoefficientAfterShift, NotPeriodicReason::MissingIntegerZRoot,
                 NotPeriodicReason::PerfectSquareZRoot, NotPeriodicReason::InconsistentDelta})
    if (s == to_string(r)) return r;
  throw std::invalid_argument("unknown witness reason '" + s + "'");
}

inline json verdict_to_json(const PSTVerdict& v) {
  json j;
  j["status"] = v.yes ? "yes" : "no";
  j["pair"] = {v.pair.first, v.pair.second};
  if (v.yes) {
    j["g"] = int_to_json(v.time->g);
    j["delta"] = int_to_json(v.time->delta);
    j["time"] = v.time->symbolic();
    j["time_numeric"] = v.time->numeric();
    json signs = json::array();
    for (const auto& [ev, s] : v.signs) {
      json e = eigenvalue_to_json(ev);
      e["sign"] = s;
      signs.push_back(std::move(e));
    }
    j["signs"] = std::move(signs);
    return j;
  }
  const Failure& f = *v.failure;
  j["failure"] = to_string(f.kind);
  json w;
  switch (f.kind) {
    case FailureKind::NotCospectral: {
      const auto& nc = std::get<NotCospectralWitness>(f.witness);
      w["phi_a"] = poly_to_json(nc.phi_a);
      w["phi_b"] = poly_to_json(nc.phi_b);
      break;
    }
    case FailureKind::PolesNotSimple: {
      const auto& pw = std::get<PoleWitness>(f.witness);
      if (const auto* ev = std::get_if<Eigenvalue>(&pw.repeated)) w["theta"] = eigenvalue_to_json(*ev);
      else w["factor"] = poly_to_json(std::get<IntPoly>(pw.repeated));
      break;
    }
    case FailureKind::NotPeriodic: {
      const auto& np = std::get<NotPeriodicWitness>(f.witness);
      w["reason"] = to_string(np.reason);
      w["poly"] = poly_to_json(np.poly);
      if (np.root) w["root"] = int_to_json(*np.root);
      break;
    }
    case FailureKind::SingletonSupport: {
      w["theta"] = eigenvalue_to_json(std::get<SingletonWitness>(f.witness).theta);
      break;
    }
    case FailureKind::SignParityMismatch: {
      const auto& sm = std::get<SignMismatchWitness>(f.witness);
      w["r"] = sm.r;
      w["theta"] = eigenvalue_to_json(sm.theta);
      w["d"] = int_to_json(sm.d);
      w["required_sign"] = sm.required_sign;
      w["got_sign"] = sm.got_sign;
      break;
    }
  }
  j["witness"] = std::move(w);
  return j;
}

inline PSTVerdict verdict_from_json(const json& j) {
  PSTVerdict v;
  v.pair = {j.at("pair").at(0).get<int>(), j.at("pair").at(1).get<int>()};
  v.yes = j.at("status").get<std::string>() == "yes";
  if (v.yes) {
    v.time = MinTime{int_from_json(j.at("g")), int_from_json(j.at("delta"))};
    for (const auto& e : j.at("signs"))
      v.signs.emplace_back(eigenvalue_from_json(e), e.at("sign").get<int>());
    return v;
  }
  std::string kind = j.at("failure").get<std::string>();
  const json& w = j.at("witness");
  if (kind == "NotCospectral") {
    v.failure = Failure{FailureKind::NotCospectral,
                        NotCospectralWitness{poly_from_json(w.at("phi_a")), poly_from_json(w.at("phi_b"))}};
  } else if (kind == "PolesNotSimple") {
    PoleWitness pw = w.contains("theta")
                         ? PoleWitness{eigenvalue_from_json(w.at("theta"))}
                         : PoleWitness{poly_from_json(w.at("factor"))};
    v.failure = Failure{FailureKind::PolesNotSimple, std::move(pw)};
  } else if (kind == "NotPeriodic") {
    NotPeriodicWitness np{reason_from_string(w.at("reason").get<std::string>()),
                          poly_from_json(w.at("poly")), std::nullopt};
    if (w.contains("root")) np.root = int_from_json(w.at("root"));
    v.failure = Failure{FailureKind::NotPeriodic, std::move(np)};
  } else if (kind == "SingletonSupport") {
    v.failure = Failure{FailureKind::SingletonSupport, SingletonWitness{eigenvalue_from_json(w.at("theta"))}};
  } else if (kind == "SignParityMismatch") {
    v.failure = Failure{FailureKind::SignParityMismatch,
                        SignMismatchWitness{w.at("r").get<int>(), eigenvalue_from_json(w.at("theta")),
                                            int_from_json(w.at("d")), w.at("required_sign").get<int>(),
                                            w.at("got_sign").get<int>()}};
  } else {
    throw std::invalid_argument("unknown failure kind '" + kind + "'");
  }
  return v;
}

// ---------------------------------------------------------------------------
// report records

struct OracleCheck {
  std::pair<int, int> pair;
  bool ok = false;
  std::optional<double> fidelity;  // YES verdicts only
};

struct OracleBlock {
  bool all_ok = true;
  std::vector<OracleCheck> checks;
};

struct ReportRecord {
  InputDescriptor input;
  bool all_pairs = false;
  std::optional<std::pair<int, int>> pair;
  std::vector<PSTVerdict> verdicts;
  std::optional<OracleBlock> oracle;
  double timing_ms = 0.0;
  long peak_coeff_bits = 0;
};

inline json record_to_json(const ReportRecord& r) {
  json in;
  in["source"] = r.input.source;
  in["format"] = to_string(r.input.format);
  in["model"] = to_string(r.input.model);
  if (r.input.graph6) in["graph6"] = *r.input.graph6;
  if (r.input.rows) {
    json rows = json::array();
    for (const auto& row : *r.input.rows) {
      json jr = json::array();
      for (const Int& v : row) jr.push_back(int_to_json(v));
      rows.push_back(std::move(jr));
    }
    in["matrix"] = std::move(rows);
  }
  json j;
  j["input"] = std::move(in);
  j["all_pairs"] = r.all_pairs;
  if (r.pair) j["pair"] = {r.pair->first, r.pair->second};
  json vs = json::array();
  for (const auto& v : r.verdicts) vs.push_back(verdict_to_json(v));
  j["verdicts"] = std::move(vs);
  if (r.oracle) {
    json ob;
    ob["all_ok"] = r.oracle->all_ok;
    json checks = json::array();
    for (const auto& c : r.oracle->checks) {
      json jc;
      jc["pair"] = {c.pair.first, c.pair.second};
      jc["ok"] = c.ok;
      if (c.fidelity) jc["fidelity"] = *c.fidelity;
      checks.push_back(std::move(jc));
    }
    ob["checks"] = std::move(checks);
    j["oracle"] = std::move(ob);
  }
  j["timing_ms"] = r.timing_ms;
  j["peak_coeff_bits"] = r.peak_coeff_bits;
  return j;
}

inline ReportRecord record_from_json(const json& j) {
  ReportRecord r;
  const json& in = j.at("input");
  r.input.source = in.at("source").get<std::string>();
  r.input.format = format_from_string(in.at("format").get<std::string>());
  r.input.model = model_from_string(in.at("model").get<std::string>());
  if (in.contains("graph6")) r.input.graph6 = in.at("graph6").get<std::string>();
  if (in.contains("matrix")) {
    std::vector<std::vector<Int>> rows;
    for (const auto& jr : in.at("matrix")) {
      std::vector<Int> row;
      for (const auto& v : jr) row.push_back(int_from_json(v));
      rows.push_back(std::move(row));
    }
    r.input.rows = std::move(rows);
  }
  r.all_pairs = j.at("all_pairs").get<bool>();
  if (j.contains("pair")) r.pair = {j.at("pair").at(0).get<int>(), j.at("pair").at(1).get<int>()};
  for (const auto& v : j.at("verdicts")) r.verdicts.push_back(verdict_from_json(v));
  if (j.contains("oracle")) {
    OracleBlock ob;
    ob.all_ok = j.at("oracle").at("all_ok").get<bool>();
    for (const auto& jc : j.at("oracle").at("checks")) {
      OracleCheck c;
      c.pair = {jc.at("pair").at(0).get<int>(), jc.at("pair").at(1).get<int>()};
      c.ok = jc.at("ok").get<bool>();
      if (jc.contains("fidelity")) c.fidelity = jc.at("fidelity").get<double>();
      ob.checks.push_back(std::move(c));
    }
    r.oracle = std::move(ob);
  }
  r.timing_ms = j.at("timing_ms").get<double>();
  r.peak_coeff_bits = j.at("peak_coeff_bits").get<long>();
  return r;
}

/// Shared record runner: decides one pair or all pairs, timing the exact
/// computation and logging the peak coefficient bit length; optionally
/// cross-validates every verdict against the oracle.
inline ReportRecord run_record(const IntSymMatrix& m, InputDescriptor descriptor, bool all_pairs,
                               std::pair<int, int> pair = {0, 0}, bool with_oracle = false) {
  ReportRecord rec;
  rec.input = std::move(descriptor);
  rec.all_pairs = all_pairs;
  if (!all_pairs) rec.pair = pair;

  auto t0 = std::chrono::steady_clock::now();
  DeciderContext ctx(m, /*batch=*/all_pairs);
  if (all_pairs) {
    for (int a = 0; a < m.order(); ++a)
      for (int b = a + 1; b < m.order(); ++b) rec.verdicts.push_back(ctx.decide(a, b));
  } else {
    rec.verdicts.push_back(ctx.decide(pair.first, pair.second));
  }
  auto t1 = std::chrono::steady_clock::now();
  rec.timing_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  rec.peak_coeff_bits = static_cast<long>(ctx.peak_coeff_bits());

  if (with_oracle) {
    OracleBlock ob;
    for (const auto& v : rec.verdicts) {
      OracleCheck c;
      c.pair = v.pair;
      c.ok = verify_certificate(m, v);
      if (v.yes && v.time) c.fidelity = fidelity(m, v.time->numeric(), v.pair.first, v.pair.second);
      ob.all_ok = ob.all_ok && c.ok;
      ob.checks.push_back(std::move(c));
    }
    rec.oracle = std::move(ob);
  }
  return rec;
}

}  // namespace pst
