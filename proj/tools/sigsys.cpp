// Command-line front end. Exit codes: 0 = YES / success, 1 = NO / failed
// self-test, 2 = error. The `solve` subcommand follows the QDIMACS solver
// convention instead (10 = true, 20 = false).

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "sigsys.hpp"

namespace {

using namespace sigsys;

struct Options {
  std::string theory_path;
  std::string phi;
  std::string relation = "c";
  bool is_signed = false;
  bool hierarchic = false;
  std::string family = "t0";
  std::string ranking_path;
  std::string mode = "oracle";
  std::string format = "qbf";
  std::string solver_cmd;
  std::string output;
  std::string map_path;
  std::uint64_t seed = 1;
  unsigned atoms = 4;
  unsigned formulas = 4;
  unsigned trials = 200;
  unsigned threads = 1;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path);
}

void emit(const Options& o, const std::string& text) {
  if (o.output.empty())
    std::cout << text;
  else
    write_file(o.output, text);
}

QuerySpec make_spec(const Options& o) {
  QuerySpec s;
  s.mode = parse_mode(o.relation);
  s.is_signed = o.is_signed;
  s.hierarchic = o.hierarchic;
  s.family = parse_family(o.family);
  if (!o.ranking_path.empty()) {
    s.ranking = parse_ranking(read_file(o.ranking_path));
  } else if (s.hierarchic) {
    s.ranking = Ranking{};
  }
  s.validate();
  return s;
}

std::string names_of(const DefaultTheory& t, const GeneratingSet& c) {
  std::vector<std::string> names;
  for (std::size_t k : c) names.push_back(t.defaults.at(k).name());
  std::sort(names.begin(), names.end());
  std::string out = "{";
  for (std::size_t i = 0; i < names.size(); ++i) out += (i ? ", " : "") + names[i];
  return out + "}";
}

int cmd_query(const Options& o) {
  const Theory w = parse_theory(read_file(o.theory_path));
  const Formula phi = parse_formula(o.phi);
  const QuerySpec spec = make_spec(o);
  bool yes = false;
  std::optional<std::string> note;
  if (o.mode == "oracle") {
    const Verdict v = decide(w, phi, spec);
    yes = v.holds;
    if (v.witness) {
      const DefaultTheory t = query_theory(w, spec);
      note = (yes ? "witness: " : "refuting extension: ") + names_of(t, *v.witness);
    }
  } else if (o.mode == "qbf") {
    const EncodedQuery q = enc_query(w, phi, spec);
    const QbfResult r = solve_qbf(q.formula);
    yes = r.valid;
    if (yes && spec.mode == Mode::credulous) {
      GeneratingSet c;
      for (std::size_t k = 0; k < q.vars.g.size(); ++k) {
        auto it = r.outer_move.find(q.vars.g[k]);
        if (it != r.outer_move.end() && it->second) c.push_back(k);
      }
      note = "witness: " + names_of(q.theory, c);
    }
  } else if (o.mode == "solver") {
    if (o.solver_cmd.empty()) throw std::invalid_argument("--mode solver needs --solver-cmd");
    const EncodedQuery q = enc_query(w, phi, spec);
    yes = run_external_solver(to_qdimacs(q.formula).text, o.solver_cmd).valid;
  } else {
    throw std::invalid_argument("unknown mode '" + o.mode + "' (expected oracle, qbf or solver)");
  }
  std::cout << (yes ? "YES" : "NO") << '\n';
  if (note) std::cout << *note << '\n';
  return yes ? 0 : 1;
}

int cmd_extensions(const Options& o) {
  const Theory w = parse_theory(read_file(o.theory_path));
  QuerySpec spec = make_spec(o);
  const DefaultTheory t = query_theory(w, spec);
  const auto exts = spec.hierarchic ? hierarchic_extensions(t) : extensions(t);
  std::string text;
  for (const auto& c : exts) text += names_of(t, c) + '\n';
  emit(o, text);
  return 0;
}

int cmd_defaults(const Options& o) {
  const Theory w = parse_theory(read_file(o.theory_path));
  const DefaultTheory t = build_theory(w, parse_family(o.family));
  std::string text;
  for (const auto& d : t.defaults)
    text += d.name() + ": " + to_string(d.prerequisite()) + " : " + to_string(d.justification) + " / " +
            to_string(d.consequent) + '\n';
  emit(o, text);
  return 0;
}

int cmd_sign(const Options& o) {
  const Theory w = parse_theory(read_file(o.theory_path));
  const Family fam = parse_family(o.family);
  const Theory signed_w = fam == Family::t0 ? sign_theory(w) : index_occurrences(w).signed_theory;
  emit(o, to_string(signed_w));
  return 0;
}

int cmd_encode(const Options& o) {
  const Theory w = parse_theory(read_file(o.theory_path));
  const Formula phi = parse_formula(o.phi);
  const EncodedQuery q = enc_query(w, phi, make_spec(o));
  if (o.format == "qbf") {
    emit(o, to_string(q.formula) + '\n');
  } else if (o.format == "qdimacs") {
    const QdimacsExport e = to_qdimacs(q.formula);
    emit(o, e.text);
    std::string map_path = o.map_path;
    if (map_path.empty() && !o.output.empty()) map_path = o.output + ".map";
    if (!map_path.empty()) write_file(map_path, e.map_text());
  } else {
    throw std::invalid_argument("unknown format '" + o.format + "' (expected qbf or qdimacs)");
  }
  return 0;
}

int cmd_selftest(const Options& o) {
  SelftestConfig cfg;
  cfg.atoms = o.atoms;
  cfg.formulas = o.formulas;
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  const SelftestReport r = run_selftest(cfg);
  emit(o, r.text());
  return r.ok() ? 0 : 1;
}

int cmd_solve(const Options& o) {
  const std::string map = o.map_path.empty() ? std::string() : read_file(o.map_path);
  const bool valid = is_valid(parse_qdimacs(read_file(o.theory_path), map));
  std::cout << "s cnf " << (valid ? 1 : 0) << '\n';
  return valid ? 10 : 20;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Paraconsistent reasoning over signed default theories"};
  app.require_subcommand(1);
  Options o;

  auto add_theory = [&](CLI::App* sub) { sub->add_option("file", o.theory_path, "Theory file")->required(); };
  auto add_spec = [&](CLI::App* sub) {
    sub->add_option("--relation", o.relation, "c, s or p")->capture_default_str();
    sub->add_flag("--signed", o.is_signed, "Signed consequence (family t0 only)");
    sub->add_flag("--hierarchic", o.hierarchic, "Use hierarchic extensions");
    sub->add_option("--theory", o.family, "Default family: t0, t1 or t2")->capture_default_str();
    sub->add_option("--ranking", o.ranking_path, "Ranking file (lines '<atom> <rank>')");
  };
  auto add_output = [&](CLI::App* sub) { sub->add_option("-o,--output", o.output, "Output path"); };

  auto* query = app.add_subcommand("query", "Decide W |- phi");
  add_theory(query);
  query->add_option("--phi", o.phi, "Query formula")->required();
  add_spec(query);
  query->add_option("--mode", o.mode, "oracle, qbf or solver")->capture_default_str();
  query->add_option("--solver-cmd", o.solver_cmd, "External solver command containing {file}");

  auto* exts = app.add_subcommand("extensions", "List the (hierarchic) extensions by generating set");
  add_theory(exts);
  add_spec(exts);
  add_output(exts);

  auto* defaults = app.add_subcommand("defaults", "List the defaults of a theory family");
  add_theory(defaults);
  defaults->add_option("--theory", o.family, "Default family: t0, t1 or t2")->capture_default_str();
  add_output(defaults);

  auto* sign = app.add_subcommand("sign", "Print the signed theory");
  add_theory(sign);
  sign->add_option("--theory", o.family, "t0 for plain signing, t1/t2 for indexed")->capture_default_str();
  add_output(sign);

  auto* encode = app.add_subcommand("encode", "Write the QBF encoding of a query");
  add_theory(encode);
  encode->add_option("--phi", o.phi, "Query formula")->required();
  add_spec(encode);
  encode->add_option("--format", o.format, "qbf or qdimacs")->capture_default_str();
  encode->add_option("--map", o.map_path, "Variable map path (default <output>.map)");
  add_output(encode);

  auto* selftest = app.add_subcommand("selftest", "Cross-check the oracle and QBF backends on random instances");
  selftest->add_option("--atoms", o.atoms, "Atoms per theory")->capture_default_str();
  selftest->add_option("--formulas", o.formulas, "Formulas per theory")->capture_default_str();
  selftest->add_option("--trials", o.trials, "Number of instances")->capture_default_str();
  selftest->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
  selftest->add_option("--threads", o.threads, "Worker threads")->capture_default_str();
  add_output(selftest);

  auto* solve = app.add_subcommand("solve", "Decide a QDIMACS file (prints 's cnf 0|1', exits 10/20)");
  solve->add_option("file", o.theory_path, "QDIMACS file")->required();
  solve->add_option("--map", o.map_path, "Variable map");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*query) return cmd_query(o);
    if (*exts) return cmd_extensions(o);
    if (*defaults) return cmd_defaults(o);
    if (*sign) return cmd_sign(o);
    if (*encode) return cmd_encode(o);
    if (*selftest) return cmd_selftest(o);
    if (*solve) return cmd_solve(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
