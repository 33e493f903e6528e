#pragma once

// Command-line front end. `run` is separate from main() so the test suites
// can drive it with in-memory streams.
//
//   analyze <file>                      every analysis, one section each
//   solve <file>                        g tables or a closed-path certificate (needs "f")
//   paths <file>                        bounded open-path search
//   tau <file>                          τ-iteration trace
//   gen <family>                        emit a configuration
//   oracle <file>                       exhaustive closed/open path enumeration
//   verify <file> --witness <w.json>    check a witness and evaluate its functional
//
// <file> may be "-" for standard input. Exit codes: 0 success (whatever the
// verdict), 1 input or usage error, 2 internal invariant violation.

#include "superpos/analysis.hpp"
#include "superpos/bolt2.hpp"
#include "superpos/detect.hpp"
#include "superpos/errors.hpp"
#include "superpos/harness.hpp"
#include "superpos/io.hpp"
#include "superpos/represent.hpp"
#include "superpos/tau.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

namespace superpos::cli {

namespace detail {

inline std::string read_source(const std::string& path, std::istream& in) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw InputError(InputErrorCode::InvalidArgument, "cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
}

struct Globals {
  bool json = false;
  bool quiet = false;
};

inline void emit_json(std::ostream& out, const Json& doc) { out << doc.dump(2) << '\n'; }

inline Json certificate_json(const Configuration& config, const Certificate& c) {
  Json out;
  out["witness"] = to_json(config, c.witness);
  out["functional_value"] = c.functional_value.str();
  return out;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Linear superposition analysis of finite point configurations", "superpos"};
  app.require_subcommand(1);
  detail::Globals globals;
  app.add_flag("--json", globals.json, "Machine-readable output with stable field order");
  app.add_flag("--quiet", globals.quiet, "Print only a one-line summary");

  std::string file;
  SearchOptions search;
  std::size_t max_report = search.max_report;

  auto* analyze_cmd = app.add_subcommand("analyze", "Run every analysis on a configuration");
  analyze_cmd->add_option("file", file, "Configuration JSON, or - for stdin")->required();
  analyze_cmd->add_option("--budget", search.budget, "Exceptional-set tuples to examine")
      ->check(CLI::PositiveNumber);
  analyze_cmd->add_option("--max-report", max_report, "Path witnesses to report");
  analyze_cmd->add_flag("--allow-degenerate", search.allow_degenerate,
                        "Keep paths whose points are exceptional for every projection");
  bool dot = false;
  analyze_cmd->add_flag("--dot", dot, "Print the two-projection level graph in Graphviz form");

  auto* solve_cmd = app.add_subcommand("solve", "Represent f as a sum of g_i(p_i) or certify that it is not");
  solve_cmd->add_option("file", file, "Configuration JSON with \"f\", or -")->required();
  bool all_certificates = false;
  solve_cmd->add_flag("--all-certificates", all_certificates,
                      "Also list every closed path of the left-kernel basis with its functional value");

  auto* paths_cmd = app.add_subcommand("paths", "Bounded search for paths");
  paths_cmd->add_option("file", file, "Configuration JSON, or -")->required();
  paths_cmd->add_option("--budget", search.budget, "Exceptional-set tuples to examine")
      ->check(CLI::PositiveNumber);
  paths_cmd->add_option("--max-report", max_report, "Path witnesses to report");
  paths_cmd->add_flag("--allow-degenerate", search.allow_degenerate,
                      "Keep paths whose points are exceptional for every projection");

  auto* tau_cmd = app.add_subcommand("tau", "Trace the tau iteration");
  tau_cmd->add_option("file", file, "Configuration JSON, or -")->required();

  auto* gen_cmd = app.add_subcommand("gen", "Emit a configuration from a family");
  std::string family;
  std::size_t gen_n = 6;
  std::size_t gen_rows = 2;
  std::size_t gen_cols = 2;
  std::size_t gen_k = 2;
  std::optional<std::size_t> gen_d;
  std::int64_t gen_max = 3;
  std::uint64_t gen_seed = 1;
  std::optional<std::uint64_t> f_seed;
  bool composed_f = false;
  gen_cmd->add_option("family", family, "cube5 | chain | grid | star | random")
      ->required()
      ->check(CLI::IsMember({"cube5", "chain", "grid", "star", "random"}));
  gen_cmd->add_option("--n", gen_n, "Points (chain, star, random)")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--rows", gen_rows, "Grid rows")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--cols", gen_cols, "Grid columns")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--k", gen_k, "Projections (random)")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--d", gen_d, "Coordinates per point (random; default k)");
  gen_cmd->add_option("--max-value", gen_max, "Values are drawn from 0..max-value (random)")
      ->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--seed", gen_seed, "Seed (random)");
  gen_cmd->add_option("--f-seed", f_seed, "Attach a random target function f with this seed");
  gen_cmd->add_flag("--composed", composed_f,
                    "With --f-seed: build f as a sum of random g_i(p_i), so it is representable");

  auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive path enumeration on small configurations");
  oracle_cmd->add_option("file", file, "Configuration JSON, or -")->required();
  std::int64_t bound = 2;
  oracle_cmd->add_option("--bound", bound, "Weights range over -B..B")->check(CLI::Range(1, 3));
  bool oracle_degenerate = false;
  oracle_cmd->add_flag("--allow-degenerate", oracle_degenerate, "Count degenerate paths");

  auto* verify_cmd = app.add_subcommand("verify", "Verify a path witness against a configuration");
  verify_cmd->add_option("file", file, "Configuration JSON, or -")->required();
  std::string witness_file;
  verify_cmd->add_option("--witness", witness_file, "Witness JSON")->required();

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }
  search.max_report = max_report;

  try {
    if (gen_cmd->parsed()) {
      FamilySpec spec;
      if (family == "cube5") {
        spec = Cube5Family{};
      } else if (family == "chain") {
        spec = ChainFamily{gen_n};
      } else if (family == "grid") {
        spec = GridFamily{gen_rows, gen_cols};
      } else if (family == "star") {
        spec = StarFamily{gen_n};
      } else {
        spec = RandomFamily{gen_n, gen_k, gen_d.value_or(gen_k), 0, gen_max, gen_seed};
      }
      const auto config = generate(spec);
      std::optional<FunctionData> f;
      if (f_seed) {
        if (composed_f) {
          const auto levels = build_levels(config);
          FunctionData tables = random_function(levels.total_atoms(), *f_seed);
          f = FunctionData{std::vector<Rational>(config.size())};
          std::size_t offset = 0;
          for (std::size_t i = 0; i < levels.projection_count(); ++i) {
            for (PointIndex j = 0; j < config.size(); ++j) {
              f->values[j] += tables.values[offset + levels.atom_of(i, j)];
            }
            offset += levels.atoms(i).size();
          }
        } else {
          f = random_function(config.size(), *f_seed);
        }
      }
      detail::emit_json(out, to_json(config, f ? &*f : nullptr));
      return 0;
    }

    const auto parsed = parse_configuration(detail::read_source(file, in));
    const auto& config = parsed.config;
    const auto levels = build_levels(config);

    if (analyze_cmd->parsed()) {
      if (dot) {
        out << to_dot(build_level_graph(levels), config);
        return 0;
      }
      const auto report = analyze(config, search);
      if (globals.json) {
        detail::emit_json(out, to_json(config, report));
      } else if (globals.quiet) {
        out << summary_line(report) << '\n';
      } else {
        render(out, config, report);
      }
      return 0;
    }

    if (solve_cmd->parsed()) {
      if (!parsed.f) {
        throw InputError(InputErrorCode::Schema, "solve needs a target function in field \"f\"");
      }
      const auto result = solve_representation(levels, *parsed.f);
      Json doc;
      if (const auto* g = std::get_if<GTables>(&result)) {
        doc["status"] = "representable";
        Json entries = Json::array();
        for (std::size_t i = 0; i < g->g.size(); ++i) {
          for (const auto& e : g->g[i]) {
            Json je;
            je["projection"] = i;
            je["atom"] = e.atom.str();
            je["value"] = e.value.str();
            entries.push_back(std::move(je));
          }
        }
        doc["g"] = std::move(entries);
      } else {
        const auto& c = std::get<Certificate>(result);
        doc["status"] = "certificate";
        doc["witness"] = to_json(config, c.witness);
        doc["functional_value"] = c.functional_value.str();
      }
      if (all_certificates) {
        Json basis = Json::array();
        for (const auto& c : certificate_basis(levels, *parsed.f)) {
          basis.push_back(detail::certificate_json(config, c));
        }
        doc["basis"] = std::move(basis);
      }
      if (globals.json) {
        detail::emit_json(out, doc);
      } else if (const auto* g = std::get_if<GTables>(&result)) {
        out << "representable\n";
        if (!globals.quiet) {
          for (std::size_t i = 0; i < g->g.size(); ++i) {
            for (const auto& e : g->g[i]) {
              out << "  g" << (i + 1) << '(' << e.atom << ") = " << e.value << '\n';
            }
          }
        }
      } else {
        const auto& c = std::get<Certificate>(result);
        out << "not representable: functional value " << c.functional_value << '\n';
        if (!globals.quiet) out << "  certificate " << describe(config, c.witness) << '\n';
      }
      if (all_certificates && !globals.json && !globals.quiet) {
        for (const auto& c : certificate_basis(levels, *parsed.f)) {
          out << "  basis " << describe(config, c.witness) << " value=" << c.functional_value << '\n';
        }
      }
      return 0;
    }

    if (paths_cmd->parsed()) {
      const auto report = search_open_paths(levels, search, parsed.f ? &*parsed.f : nullptr);
      const auto longest = longest_from_report(levels, report, search.allow_degenerate);
      std::optional<Rational> min_ratio;
      for (const auto& p : report.open_paths) {
        if (!min_ratio || p.functional.delta_ratio < *min_ratio) min_ratio = p.functional.delta_ratio;
      }
      if (globals.json) {
        Json doc;
        doc["closed_path"] = closed_json(config, ClosedPathResult{report.closed_path, report.kernel_dimension});
        doc["paths"] = paths_json(config, report, longest, min_ratio);
        detail::emit_json(out, doc);
      } else if (globals.quiet) {
        out << "paths=" << report.distinct_found << " longest=" << longest.length
            << (report.search_budget_exhausted ? " budget-exhausted" : " complete") << '\n';
      } else {
        render_paths(out, config, report, longest, min_ratio);
      }
      return 0;
    }

    if (tau_cmd->parsed()) {
      const auto trace = tau_iterate(levels);
      if (globals.json) {
        detail::emit_json(out, tau_json(config, trace));
      } else if (globals.quiet) {
        out << (trace.emptied() ? "emptied " : "fixed-point ") << trace.verdict.stage << '\n';
      } else {
        render_tau(out, config, trace);
      }
      return 0;
    }

    if (oracle_cmd->parsed()) {
      OracleOptions opts;
      opts.allow_degenerate = oracle_degenerate;
      const auto closed = oracle_closed_path(levels, bound, opts);
      const auto open = oracle_open_path(levels, bound, opts);
      if (globals.json) {
        Json doc;
        doc["bound"] = bound;
        Json jc;
        jc["found"] = closed.found;
        jc["count"] = closed.count;
        Json cw = Json::array();
        for (const auto& lambda : closed.witnesses) {
          Json v = Json::array();
          for (const auto& x : lambda) v.push_back(x.str());
          cw.push_back(std::move(v));
        }
        jc["witnesses"] = std::move(cw);
        doc["closed"] = std::move(jc);
        Json jo;
        jo["found"] = open.found;
        jo["count"] = open.count;
        Json ow = Json::array();
        for (const auto& w : open.witnesses) ow.push_back(to_json(config, w));
        jo["witnesses"] = std::move(ow);
        doc["open"] = std::move(jo);
        detail::emit_json(out, doc);
      } else {
        out << "oracle (weights in -" << bound << ".." << bound << "): closed paths " << closed.count
            << ", paths " << open.count << '\n';
        if (!globals.quiet) {
          for (const auto& lambda : closed.witnesses) {
            out << "  closed (";
            for (std::size_t j = 0; j < lambda.size(); ++j) out << (j ? "," : "") << lambda[j];
            out << ")\n";
          }
          for (const auto& w : open.witnesses) out << "  " << describe(config, w) << '\n';
        }
      }
      return 0;
    }

    if (verify_cmd->parsed()) {
      const auto w = parse_witness(config, detail::read_source(witness_file, in));
      const auto rep = verify_witness(config, levels, w);
      const auto f = parsed.f ? *parsed.f : sign_function(w, config.size());
      const auto fr = evaluate_functional(w, f);
      if (globals.json) {
        Json doc;
        doc["valid"] = rep.valid;
        Json res = Json::array();
        for (std::size_t i = 0; i < rep.residuals.size(); ++i) {
          for (const auto& r : rep.residuals[i]) {
            Json jr;
            jr["projection"] = i;
            jr["atom"] = r.atom_value.str();
            jr["full_sum"] = r.full_sum.str();
            jr["reduced_sum"] = r.reduced_sum.str();
            res.push_back(std::move(jr));
          }
        }
        doc["residuals"] = std::move(res);
        doc["functional"] = functional_json(fr);
        detail::emit_json(out, doc);
      } else {
        out << (rep.valid ? "valid " : "invalid ") << to_string(w.kind) << " path\n";
        if (!globals.quiet) {
          for (std::size_t i = 0; i < rep.residuals.size(); ++i) {
            for (const auto& r : rep.residuals[i]) {
              out << "  p" << (i + 1) << " atom " << r.atom_value << ": sum " << r.full_sum
                  << ", after exceptional points " << r.reduced_sum << '\n';
            }
          }
          out << "  functional value " << fr.value << " norm " << fr.norm << " b " << fr.b_lambda_k
              << " ratio " << fr.delta_ratio << '\n';
        }
      }
      return 0;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const InvariantError& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  }
  err << app.help();
  return 1;
}

}  // namespace superpos::cli
