// CLI entry points: decide, scan, survey, mixing, verify. Every subcommand
// emits line-delimited JSON on standard output. Exit codes: 0 success,
// 1 usage or parse error, 2 failed certificate re-validation or internal
// assertion.

#pragma once

#include <atomic>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "pst/io.hpp"

namespace pst {

namespace detail {

inline std::pair<int, int> parse_pair(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos)
    throw CLI::ValidationError("--pair", "expected 'a,b'");
  try {
    int a = std::stoi(s.substr(0, comma));
    int b = std::stoi(s.substr(comma + 1));
    return {a, b};
  } catch (const std::exception&) {
    throw CLI::ValidationError("--pair", "expected integer indices 'a,b'");
  }
}

inline std::vector<std::string> corpus_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line == ">>graph6<<") continue;
    lines.push_back(line);
  }
  return lines;
}

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact perfect state transfer decider with a floating-point quantum-walk oracle"};
  app.name("pst");
  app.require_subcommand(1);

  std::string input = "-";
  std::string format = "graph6";
  std::string model = "adjacency";
  std::string pair_arg;
  bool all_pairs = false;
  bool with_oracle = false;
  int jobs = 1;
  double time_arg = -1.0;
  bool average = false;
  std::string scan_pair;
  double tmax = 0.0, step = 0.0, uniform_tol = 0.0;

  auto add_input_opts = [&](CLI::App* cmd, bool with_format = true) {
    cmd->add_option("--input", input, "input file, or '-' for standard input");
    if (with_format) cmd->add_option("--format", format, "graph6 | edgelist | matrix");
    cmd->add_option("--model", model, "adjacency | laplacian | raw");
  };

  CLI::App* decide = app.add_subcommand("decide", "decide one pair (or all pairs with --all-pairs)");
  add_input_opts(decide);
  decide->add_option("--pair", pair_arg, "pair of indices 'a,b'");
  decide->add_flag("--all-pairs", all_pairs, "decide every unordered pair");
  decide->add_flag("--verify", with_oracle, "cross-validate the verdict against the oracle");

  CLI::App* scan = app.add_subcommand("scan", "all-pairs verdicts for one input");
  add_input_opts(scan);
  scan->add_flag("--verify", with_oracle, "cross-validate every verdict against the oracle");

  CLI::App* survey = app.add_subcommand("survey", "one JSON line per graph6 line of a corpus file");
  survey->add_option("--input", input, "graph6 corpus file, or '-' for standard input");
  survey->add_option("--model", model, "adjacency | laplacian");
  survey->add_option("--jobs", jobs, "worker threads (output order stays input order)")
      ->check(CLI::PositiveNumber);
  survey->add_flag("--verify", with_oracle, "cross-validate every verdict against the oracle");

  CLI::App* mixing = app.add_subcommand("mixing", "oracle outputs: mixing matrix, average mixing, fidelity scan");
  add_input_opts(mixing);
  mixing->add_option("--time", time_arg, "walk time for the mixing matrix N(t)");
  mixing->add_flag("--average", average, "emit the average mixing matrix");
  mixing->add_option("--scan", scan_pair, "fidelity scan for pair 'a,b' over a time grid");
  mixing->add_option("--tmax", tmax, "scan upper time bound");
  mixing->add_option("--step", step, "scan grid step");
  mixing->add_option("--uniform", uniform_tol, "with --time: also test uniform mixing at this tolerance");

  CLI::App* verify = app.add_subcommand("verify", "re-validate a previously emitted report file");
  verify->add_option("--input", input, "report file (JSON lines), or '-' for standard input");

  std::vector<const char*> argv;
  argv.push_back("pst");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (decide->parsed() || scan->parsed()) {
      InputSpec spec{input, format_from_string(format), model_from_string(model)};
      LoadedInput li = load_input(spec);
      bool all = scan->parsed() || all_pairs;
      std::pair<int, int> p{0, 0};
      if (!all) {
        if (pair_arg.empty()) throw std::invalid_argument("decide: --pair a,b is required (or --all-pairs)");
        p = detail::parse_pair(pair_arg);
        if (p.first < 0 || p.second < 0 || p.first >= li.matrix.order() || p.second >= li.matrix.order())
          throw std::invalid_argument("decide: pair out of range");
      }
      ReportRecord rec = run_record(li.matrix, li.descriptor, all, p, with_oracle);
      out << record_to_json(rec).dump() << "\n";
      if (rec.oracle && !rec.oracle->all_ok)
        throw std::logic_error("oracle cross-validation failed");
      return 0;
    }

    if (survey->parsed()) {
      Model mdl = model_from_string(model);
      if (mdl == Model::raw) throw std::invalid_argument("survey: model must be adjacency or laplacian");
      std::vector<std::string> lines = detail::corpus_lines(read_source(input));
      std::vector<std::string> results(lines.size());
      std::vector<std::string> errors(lines.size());
      std::atomic<std::size_t> next{0};
      auto worker = [&]() {
        while (true) {
          std::size_t i = next.fetch_add(1);
          if (i >= lines.size()) return;
          try {
            ParsedGraph g = parse_graph6(lines[i]);
            IntSymMatrix m = mdl == Model::laplacian ? build_laplacian(g.edges, g.n)
                                                     : build_adjacency(g.edges, g.n);
            InputDescriptor d;
            d.source = input + ":" + std::to_string(i + 1);
            d.format = Format::graph6;
            d.model = mdl;
            d.graph6 = encode_graph6(g.n, g.edges);
            ReportRecord rec;
            if (m.order() < 2) {
              rec.input = std::move(d);
              rec.all_pairs = true;  // no pairs to decide
            } else {
              rec = run_record(m, std::move(d), /*all_pairs=*/true, {0, 0}, with_oracle);
            }
            results[i] = record_to_json(rec).dump();
          } catch (const std::exception& e) {
            errors[i] = std::string("line ") + std::to_string(i + 1) + ": " + e.what();
          }
        }
      };
      int nthreads = std::max(1, jobs);
      std::vector<std::thread> pool;
      for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
      worker();
      for (auto& t : pool) t.join();
      for (const auto& e : errors)
        if (!e.empty()) throw std::invalid_argument("survey: " + e);
      for (const auto& r : results) out << r << "\n";
      return 0;
    }

    if (mixing->parsed()) {
      InputSpec spec{input, format_from_string(format), model_from_string(model)};
      LoadedInput li = load_input(spec);
      json j;
      bool did = false;
      if (time_arg >= 0) {
        MixingReport rep = mixing_matrix(li.matrix, time_arg);
        j["t"] = rep.t;
        j["mixing"] = rep.matrix;
        if (uniform_tol > 0) j["uniform"] = uniform_mixing_at(li.matrix, time_arg, uniform_tol);
        did = true;
      }
      if (average) {
        j["average_mixing"] = average_mixing(li.matrix);
        did = true;
      }
      if (!scan_pair.empty()) {
        if (tmax <= 0 || step <= 0)
          throw std::invalid_argument("mixing --scan requires --tmax and --step");
        auto [a, b] = detail::parse_pair(scan_pair);
        auto [tstar, value] = scan_fidelity(li.matrix, a, b, tmax, step);
        j["scan"] = {{"pair", {a, b}}, {"t_star", tstar}, {"value", value}};
        did = true;
      }
      if (!did) throw std::invalid_argument("mixing: pass --time, --average or --scan");
      out << j.dump() << "\n";
      return 0;
    }

    if (verify->parsed()) {
      std::istringstream in(read_source(input));
      std::string line;
      long records = 0, verdicts = 0, failures = 0;
      while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        ReportRecord rec = record_from_json(json::parse(line));
        IntSymMatrix m = rec.input.matrix();
        ++records;
        for (const auto& v : rec.verdicts) {
          ++verdicts;
          if (!verify_certificate(m, v)) ++failures;
        }
      }
      json j{{"records", records}, {"verdicts", verdicts}, {"failures", failures}, {"ok", failures == 0}};
      out << j.dump() << "\n";
      if (failures > 0) throw std::logic_error("report re-validation failed");
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::logic_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

inline int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace pst
