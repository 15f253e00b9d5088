// Command-line front end.  Exit codes: 0 = success / proved / valid,
// 1 = refuted / countermodel / check failure, 2 = unknown, 3 = input error.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rbl/algebra.hpp"
#include "rbl/hilbert.hpp"
#include "rbl/kripke.hpp"
#include "rbl/mix.hpp"
#include "rbl/parser.hpp"
#include "rbl/proof.hpp"
#include "rbl/search.hpp"
#include "rbl/simple_calc.hpp"
#include "rbl/ternary.hpp"

namespace {

using nlohmann::json;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const json& j, bool as_json, const std::string& text) {
  if (as_json) std::cout << j.dump(2) << "\n";
  else std::cout << text;
}

rbl::Profile profile_from(const std::string& s) {
  if (s == "core") return rbl::Profile::Core;
  if (s == "lj") return rbl::Profile::LJ;
  if (s == "top-imp") return rbl::Profile::TopImp;
  throw CLI::ValidationError("--profile", "must be core, lj or top-imp");
}

int run_prove(const std::string& text, const rbl::SearchConfig& cfg, bool as_json,
              const std::string& out_file) {
  rbl::Sequent goal = rbl::parse_sequent(text);
  rbl::Verdict v = rbl::prove(goal, cfg);
  json j;
  j["command"] = "prove";
  j["sequent"] = rbl::to_string(goal);
  j["verdict"] = rbl::to_string(v.kind);
  std::string text_out;
  int code = 2;
  switch (v.kind) {
    case rbl::Verdict::Kind::Proved: {
      std::string pf = rbl::print_proof(*v.proof);
      j["proof"] = pf;
      j["proof_size"] = rbl::proof_size(*v.proof);
      text_out = "proved\n" + pf;
      if (!out_file.empty()) std::ofstream(out_file) << pf;
      code = 0;
      break;
    }
    case rbl::Verdict::Kind::Refuted: {
      j["model"] = rbl::to_json(*v.model);
      j["state"] = v.state;
      text_out = "refuted at state " + rbl::lifted_state_name(v.state) + "\n" +
                 rbl::to_json(*v.model).dump(2) + "\n";
      if (!out_file.empty()) std::ofstream(out_file) << rbl::to_json(*v.model).dump(2);
      code = 1;
      break;
    }
    case rbl::Verdict::Kind::Unknown: {
      j["bounds"] = {{"depth", v.report.depth_bound},
                     {"contraction_budget", v.report.contraction_budget},
                     {"countermodel_size", v.report.countermodel_size},
                     {"nodes", v.report.nodes_used},
                     {"node_capped", v.report.node_capped}};
      text_out = "unknown (depth " + std::to_string(v.report.depth_bound) + ", budget " +
                 std::to_string(v.report.contraction_budget) + ", countermodels up to " +
                 std::to_string(v.report.countermodel_size) + " states)\n";
      code = 2;
      break;
    }
  }
  emit(j, as_json, text_out);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for residuated basic logic: parsing, proof search, "
               "proof checking, model checking and finite algebra tools"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable JSON on stdout");

  std::string profile_name = "core";
  int depth = 14, budget = 2, max_size = 8;
  std::string input, out_file, system_name = "srbl", goal_text, sequent_text;

  auto add_search_flags = [&](CLI::App* cmd) {
    cmd->add_option("--profile", profile_name, "rule profile: core, lj or top-imp");
    cmd->add_option("--depth", depth, "backward search depth bound");
    cmd->add_option("--contraction-budget", budget, "contractions per branch");
    cmd->add_option("--max-size", max_size, "max ternary countermodel states");
    cmd->add_option("--out", out_file, "write the main artifact to this file");
  };

  auto* parse_cmd = app.add_subcommand("parse", "parse a formula or sequent and reprint it");
  parse_cmd->add_option("text", input)->required();

  auto* prove_cmd = app.add_subcommand("prove", "backward proof search for a sequent");
  prove_cmd->add_option("sequent", input)->required();
  add_search_flags(prove_cmd);

  auto* countermodel_cmd =
      app.add_subcommand("countermodel", "search lifted models for a refutation");
  countermodel_cmd->add_option("sequent", input)->required();
  countermodel_cmd->add_option("--max-size", max_size, "max ternary states");
  countermodel_cmd->add_option("--out", out_file, "write the model JSON here");

  auto* checkproof_cmd = app.add_subcommand("check-proof", "check a stored proof tree");
  checkproof_cmd->add_option("file", input)->required();
  checkproof_cmd->add_option("--profile", profile_name, "rule profile");

  auto* checksimple_cmd =
      app.add_subcommand("check-simple", "check a simple-sequent derivation file");
  checksimple_cmd->add_option("file", input)->required();
  checksimple_cmd->add_option("--system", system_name, "srbl or sstar");

  auto* checkhilbert_cmd = app.add_subcommand("check-hilbert", "check a Hilbert proof file");
  checkhilbert_cmd->add_option("file", input)->required();
  checkhilbert_cmd->add_option("--goal", goal_text, "goal formula")->required();

  auto* checkmodel_cmd = app.add_subcommand("check-model", "well-formedness of a binary model");
  checkmodel_cmd->add_option("file", input)->required();

  auto* checkternary_cmd =
      app.add_subcommand("check-ternary", "load a ternary model; optionally test a sequent");
  checkternary_cmd->add_option("file", input)->required();
  checkternary_cmd->add_option("--sequent", sequent_text, "simple sequent 'A => B' to evaluate");

  auto* lift_cmd = app.add_subcommand("lift", "lift a binary model to a ternary one");
  lift_cmd->add_option("file", input)->required();
  lift_cmd->add_option("--out", out_file, "write the ternary model here");

  auto* enum_cmd = app.add_subcommand("enumerate-algebras", "enumerate finite algebras");
  int enum_max = 3;
  std::string enum_dir;
  enum_cmd->add_option("--max-size", enum_max, "largest carrier size (up to 5)");
  enum_cmd->add_option("--out", enum_dir, "directory for algebra_N.json dumps");

  auto* validate_cmd = app.add_subcommand("validate-algebra", "check algebra axioms from JSON");
  validate_cmd->add_option("file", input)->required();

  auto* elim_cmd = app.add_subcommand("eliminate-mix", "normalize a proof: only top/bot mixes remain");
  elim_cmd->add_option("file", input)->required();
  elim_cmd->add_option("--out", out_file, "write the normalized proof here");

  auto* corpus_cmd = app.add_subcommand("corpus", "run every .seq file in a directory; TSV summary");
  corpus_cmd->add_option("dir", input)->required();
  add_search_flags(corpus_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    rbl::SearchConfig cfg;
    cfg.profile = profile_from(profile_name);
    cfg.depth_bound = depth;
    cfg.contraction_budget = budget;
    cfg.countermodel_size = max_size;

    if (parse_cmd->parsed()) {
      json j;
      j["command"] = "parse";
      std::string pretty;
      if (input.find("|-") != std::string::npos) {
        rbl::Sequent s = rbl::parse_sequent(input);
        j["kind"] = "sequent";
        pretty = rbl::to_string(s);
      } else if (input.find("=>") != std::string::npos) {
        rbl::SimpleSequent s = rbl::parse_simple_sequent(input);
        j["kind"] = "simple-sequent";
        pretty = rbl::to_string(s);
      } else {
        rbl::FormulaPtr f = rbl::parse_formula(input);
        j["kind"] = "formula";
        pretty = rbl::to_string(f);
      }
      j["pretty"] = pretty;
      emit(j, as_json, pretty + "\n");
      return 0;
    }

    if (prove_cmd->parsed()) return run_prove(input, cfg, as_json, out_file);

    if (countermodel_cmd->parsed()) {
      rbl::Sequent goal = rbl::parse_sequent(input);
      auto cm = rbl::find_lifted_countermodel(rbl::to_simple(goal), max_size);
      json j;
      j["command"] = "countermodel";
      if (cm) {
        j["verdict"] = "refuted";
        j["model"] = rbl::to_json(cm->first);
        j["state"] = cm->second;
        if (!out_file.empty()) std::ofstream(out_file) << rbl::to_json(cm->first).dump(2);
        emit(j, as_json,
             "countermodel at state " + rbl::lifted_state_name(cm->second) + "\n" +
                 rbl::to_json(cm->first).dump(2) + "\n");
        return 1;
      }
      j["verdict"] = "unknown";
      emit(j, as_json, "no countermodel up to " + std::to_string(max_size) + " states\n");
      return 2;
    }

    if (checkproof_cmd->parsed()) {
      rbl::ProofTree t = rbl::parse_proof(slurp(input));
      rbl::ProofCheckResult r = rbl::check_proof(t, cfg.profile);
      json j;
      j["command"] = "check-proof";
      j["ok"] = r.ok;
      if (!r.ok) {
        j["reason"] = r.reason;
        j["node"] = r.node;
      }
      emit(j, as_json, r.ok ? "ok\n" : "invalid: " + r.reason + " at [" + r.node + "]\n");
      return r.ok ? 0 : 1;
    }

    if (checksimple_cmd->parsed()) {
      rbl::SystemId sys;
      if (system_name == "srbl") sys = rbl::SystemId::SRBL;
      else if (system_name == "sstar") sys = rbl::SystemId::SStarRBL;
      else throw std::runtime_error("--system must be srbl or sstar");
      rbl::SimpleDerivation d = rbl::parse_simple_derivation(slurp(input));
      rbl::SimpleCheckResult r = rbl::check_simple(d, sys);
      json j;
      j["command"] = "check-simple";
      j["ok"] = r.ok;
      if (!r.ok) {
        j["reason"] = r.reason;
        j["node"] = r.failing_node;
      }
      emit(j, as_json, r.ok ? "ok\n" : "invalid: " + r.reason + " at [" + r.failing_node + "]\n");
      return r.ok ? 0 : 1;
    }

    if (checkhilbert_cmd->parsed()) {
      rbl::HilbertProof p = rbl::parse_hilbert_proof(slurp(input));
      rbl::HilbertCheckResult r = rbl::check_hilbert_proof(p, rbl::parse_formula(goal_text));
      json j;
      j["command"] = "check-hilbert";
      j["ok"] = r.ok;
      if (!r.ok) {
        j["step"] = r.bad_step;
        j["reason"] = r.reason;
      }
      emit(j, as_json,
           r.ok ? "ok\n" : "invalid at step " + std::to_string(r.bad_step) + ": " + r.reason + "\n");
      return r.ok ? 0 : 1;
    }

    if (checkmodel_cmd->parsed()) {
      rbl::BplModel m = rbl::bpl_model_from_json(json::parse(slurp(input)));
      auto diags = rbl::check_bpl_model(m);
      json j;
      j["command"] = "check-model";
      j["ok"] = diags.empty();
      auto arr = json::array();
      std::string text;
      for (const auto& d : diags) {
        arr.push_back(d.what);
        text += d.what + "\n";
      }
      j["diagnostics"] = arr;
      emit(j, as_json, diags.empty() ? "ok\n" : text);
      return diags.empty() ? 0 : 1;
    }

    if (checkternary_cmd->parsed()) {
      rbl::TernaryModel m = rbl::ternary_model_from_json(json::parse(slurp(input)));
      json j;
      j["command"] = "check-ternary";
      j["states"] = m.states;
      if (!sequent_text.empty()) {
        rbl::SimpleSequent s = rbl::parse_simple_sequent(sequent_text);
        int bad = rbl::sequent_failure_state(m, s);
        j["sequent"] = rbl::to_string(s);
        j["true"] = bad < 0;
        if (bad >= 0) j["failing_state"] = bad;
        emit(j, as_json,
             bad < 0 ? "true\n" : "false at state " + std::to_string(bad) + "\n");
        return bad < 0 ? 0 : 1;
      }
      emit(j, as_json, "ok (" + std::to_string(m.states) + " states)\n");
      return 0;
    }

    if (lift_cmd->parsed()) {
      rbl::BplModel m = rbl::bpl_model_from_json(json::parse(slurp(input)));
      rbl::TernaryModel t = rbl::lift_bpl(m);
      json j = rbl::to_json(t);
      if (!out_file.empty()) std::ofstream(out_file) << j.dump(2);
      emit(j, as_json, j.dump(2) + "\n");
      return 0;
    }

    if (enum_cmd->parsed()) {
      auto algs = rbl::enumerate_rbas(enum_max);
      json j;
      j["command"] = "enumerate-algebras";
      j["max_size"] = enum_max;
      j["count"] = algs.size();
      std::map<int, int> by_size;
      for (const auto& a : algs) by_size[a.size]++;
      json sizes = json::object();
      for (auto [sz, c] : by_size) sizes[std::to_string(sz)] = c;
      j["by_size"] = sizes;
      if (!enum_dir.empty()) {
        std::filesystem::create_directories(enum_dir);
        for (std::size_t i = 0; i < algs.size(); ++i)
          std::ofstream(enum_dir + "/algebra_" + std::to_string(i) + ".json")
              << rbl::to_json(algs[i]).dump(2);
      }
      std::string text = std::to_string(algs.size()) + " algebras\n";
      for (auto [sz, c] : by_size)
        text += "  size " + std::to_string(sz) + ": " + std::to_string(c) + "\n";
      emit(j, as_json, text);
      return 0;
    }

    if (validate_cmd->parsed()) {
      rbl::FiniteRba alg = rbl::finite_rba_from_json(json::parse(slurp(input)));
      auto diags = rbl::check_rba_axioms(alg);
      auto reduct = rbl::check_basic_reduct(alg);
      json j;
      j["command"] = "validate-algebra";
      j["ok"] = diags.empty() && reduct.empty();
      auto arr = json::array();
      std::string text;
      for (const auto* v : {&diags, &reduct})
        for (const auto& d : *v) {
          arr.push_back(d.what);
          text += d.what + "\n";
        }
      j["diagnostics"] = arr;
      emit(j, as_json, arr.empty() ? "ok\n" : text);
      return arr.empty() ? 0 : 1;
    }

    if (elim_cmd->parsed()) {
      rbl::ProofTree t = rbl::parse_proof(slurp(input));
      rbl::ProofTree n = rbl::eliminate_mix(t);
      rbl::ProofCheckResult r = rbl::check_proof(n, rbl::Profile::Core);
      if (!r.ok) throw std::runtime_error("internal: normalized proof fails to check: " + r.reason);
      std::string pf = rbl::print_proof(n);
      if (!out_file.empty()) std::ofstream(out_file) << pf;
      json j;
      j["command"] = "eliminate-mix";
      j["proof"] = pf;
      j["proof_size"] = rbl::proof_size(n);
      emit(j, as_json, pf);
      return 0;
    }

    if (corpus_cmd->parsed()) {
      std::vector<std::filesystem::path> files;
      for (const auto& e : std::filesystem::directory_iterator(input))
        if (e.path().extension() == ".seq") files.push_back(e.path());
      std::sort(files.begin(), files.end());
      std::cout << "name\tverdict\ttime_ms\tproof_size\n";
      for (const auto& f : files) {
        std::ifstream in(f);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
          ++lineno;
          std::size_t first = line.find_first_not_of(" \t\r");
          if (first == std::string::npos || line[first] == '#') continue;
          std::string name = f.stem().string() + ":" + std::to_string(lineno);
          auto start = std::chrono::steady_clock::now();
          rbl::Verdict v = rbl::prove(rbl::parse_sequent(line), cfg);
          auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
          int psize = v.proof ? rbl::proof_size(*v.proof) : 0;
          std::cout << name << "\t" << rbl::to_string(v.kind) << "\t" << ms << "\t" << psize
                    << "\n";
        }
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
