#ifndef SIGSYS_ENCODER_HPP
#define SIGSYS_ENCODER_HPP

// Reductions of the consequence relations to closed QBFs. A selection C of
// defaults is represented by the guess variables g_i: g_i true iff the i-th
// default is in C.

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "sigsys/defaults.hpp"
#include "sigsys/formula.hpp"
#include "sigsys/oracle.hpp"
#include "sigsys/qbf.hpp"
#include "sigsys/signing.hpp"

namespace sigsys {

struct GuessVariables {
  std::vector<Atom> g;   // g_1 .. g_n, aligned with the default order
  std::vector<Atom> gp;  // primed copies for prudent encodings

  // Names g_i / gp_i, made fresh against `reserved`.
  static GuessVariables fresh(std::size_t n, std::span<const Atom> reserved) {
    FreshNames names(reserved);
    GuessVariables out;
    for (std::size_t i = 1; i <= n; ++i) out.g.push_back(names.make("g_" + std::to_string(i)));
    for (std::size_t i = 1; i <= n; ++i) out.gp.push_back(names.make("gp_" + std::to_string(i)));
    return out;
  }

  // The interpretation M_C over g (or gp when `primed`).
  Interpretation selection(const GeneratingSet& c, bool primed = false) const {
    Interpretation m;
    for (std::size_t k : c) m.insert((primed ? gp : g).at(k));
    return m;
  }
};

namespace detail {

inline std::vector<Atom> atoms_excluding(std::span<const Formula> fs, std::span<const Atom> excluded) {
  AtomSet skip(excluded.begin(), excluded.end());
  std::vector<Atom> out;
  for (const auto& a : atoms_of(fs))
    if (!skip.contains(a)) out.push_back(a);
  return out;
}

inline std::vector<Formula> concat(std::span<const Formula> a, std::span<const Formula> b) {
  std::vector<Formula> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

inline std::vector<Atom> pick(std::span<const Atom> g, std::span<const std::size_t> idx) {
  std::vector<Atom> out;
  for (std::size_t k : idx) out.push_back(g[k]);
  return out;
}

}  // namespace detail

// G <= S: /\ (g_i -> s_i).
inline Formula enc_leq(std::span<const Atom> g, std::span<const Formula> s) {
  if (g.size() != s.size()) throw std::invalid_argument("enc_leq: size mismatch");
  std::vector<Formula> parts;
  for (std::size_t i = 0; i < g.size(); ++i) parts.push_back(implies(atom(g[i]), s[i]));
  return conjoin(parts);
}

// C[T,S] = exists P (T & (G <= S)), P = var(T u S) without G and without
// the `shared` guess variables that T may mention.
inline Formula enc_consistency(std::span<const Formula> t, std::span<const Formula> s, std::span<const Atom> g,
                               std::span<const Atom> shared = {}) {
  const Formula body = conj(conjoin(t), enc_leq(g, s));
  const auto all = detail::concat(t, s);
  std::vector<Atom> keep(g.begin(), g.end());
  keep.insert(keep.end(), shared.begin(), shared.end());
  return quantify(Op::exists, detail::atoms_excluding(all, keep), body);
}

// C[T,S] & /\ (~g_i -> ~C[T u {s_i}, S \ {s_i}]) over the same free G.
inline Formula enc_maximal(std::span<const Formula> t, std::span<const Formula> s, std::span<const Atom> g,
                           std::span<const Atom> shared = {}) {
  if (g.size() != s.size()) throw std::invalid_argument("enc_maximal: size mismatch");
  std::vector<Formula> parts{enc_consistency(t, s, g, shared)};
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::vector<Formula> ti(t.begin(), t.end());
    ti.push_back(s[i]);
    std::vector<Formula> si;
    std::vector<Atom> gi;
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (k == i) continue;
      si.push_back(s[k]);
      gi.push_back(g[k]);
    }
    std::vector<Atom> shared_i(shared.begin(), shared.end());
    shared_i.push_back(g[i]);
    parts.push_back(implies(neg(atom(g[i])), neg(enc_consistency(ti, si, gi, shared_i))));
  }
  return conjoin(parts);
}

inline Formula enc_ext(const DefaultTheory& t, std::span<const Atom> g) {
  return enc_maximal(t.facts.formulas, t.justifications(), g);
}

// Cons[T,phi] = forall P (V & (G <= c(D)) -> phi).
inline Formula enc_cons(const DefaultTheory& t, const Formula& phi, std::span<const Atom> g) {
  const auto cs = t.consequents();
  const Formula body = implies(conj(conjoin(t.facts.formulas), enc_leq(g, cs)), phi);
  auto all = detail::concat(t.facts.formulas, cs);
  all.push_back(phi);
  return quantify(Op::forall, detail::atoms_excluding(all, g), body);
}

inline Formula enc_cons_renamed(const DefaultTheory& t, const Formula& phi, std::span<const Atom> g,
                                std::span<const Atom> gp) {
  if (g.size() != gp.size()) throw std::invalid_argument("enc_cons_renamed: size mismatch");
  std::unordered_map<Atom, Formula, AtomHash> rename;
  for (std::size_t i = 0; i < g.size(); ++i) rename.emplace(g[i], atom(gp[i]));
  return substitute(enc_cons(t, phi, g), rename);
}

// /\ over layers of Ext[(V & /\_{earlier} (g_j -> c(d_j)), D_i)].
inline Formula enc_exth(const DefaultTheory& t, std::span<const Atom> g) {
  if (!t.layers) throw std::invalid_argument("enc_exth: theory has no layers");
  std::vector<Formula> facts = t.facts.formulas;
  std::vector<Formula> parts;
  for (const auto& layer : *t.layers) {
    std::vector<Formula> js;
    for (std::size_t k : layer) js.push_back(t.defaults.at(k).justification);
    parts.push_back(enc_maximal(facts, js, detail::pick(g, layer), g));
    for (std::size_t k : layer) facts.push_back(implies(atom(g[k]), t.defaults[k].consequent));
  }
  return conjoin(parts);
}

inline Formula enc_extensions(const DefaultTheory& t, std::span<const Atom> g) {
  return t.layers ? enc_exth(t, g) : enc_ext(t, g);
}

// /\ (~g'_i -> exists G (Ext & ~Cons[T, c(d_i)])); ExtH replaces Ext on
// layered theories.
inline Formula enc_psi(const DefaultTheory& t, std::span<const Atom> g, std::span<const Atom> gp) {
  if (g.size() != t.defaults.size() || gp.size() != g.size()) throw std::invalid_argument("enc_psi: size mismatch");
  const Formula ext = enc_extensions(t, g);
  std::vector<Formula> parts;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Formula some = quantify(Op::exists, g, conj(ext, neg(enc_cons(t, t.defaults[i].consequent, g))));
    parts.push_back(implies(neg(atom(gp[i])), some));
  }
  return conjoin(parts);
}

struct EncodedQuery {
  Qbf formula;
  DefaultTheory theory;  // the theory Ext ranges over (layered when hierarchic)
  GuessVariables vars;
};

inline EncodedQuery enc_query(const Theory& w, const Formula& phi, const QuerySpec& spec) {
  spec.validate();
  if (!phi.is_propositional()) throw std::invalid_argument("query must be propositional");
  EncodedQuery out;
  out.theory = query_theory(w, spec);
  const DefaultTheory& t = out.theory;

  // Cons (and Cons') read the augmented theory and phi+- for signed queries.
  DefaultTheory t_cons = spec.is_signed ? augment_for_query(t, phi) : t;
  const Formula goal = spec.is_signed ? sign_formula(phi) : phi;

  std::vector<Formula> mentioned = t_cons.facts.formulas;
  for (const auto& d : t.defaults) {
    mentioned.push_back(d.justification);
    mentioned.push_back(d.consequent);
  }
  mentioned.push_back(phi);
  mentioned.push_back(goal);
  out.vars = GuessVariables::fresh(t.defaults.size(), atoms_of(mentioned));
  const auto& g = out.vars.g;
  const auto& gp = out.vars.gp;

  switch (spec.mode) {
    case Mode::credulous:
      out.formula = quantify(Op::exists, g, conj(enc_extensions(t, g), enc_cons(t_cons, goal, g)));
      break;
    case Mode::skeptical:
      out.formula = neg(quantify(Op::exists, g, conj(enc_extensions(t, g), neg(enc_cons(t_cons, goal, g)))));
      break;
    case Mode::prudent:
      out.formula =
          neg(quantify(Op::exists, gp, conj(neg(enc_cons_renamed(t_cons, goal, g, gp)), enc_psi(t, g, gp))));
      break;
  }
  return out;
}

}  // namespace sigsys

#endif  // SIGSYS_ENCODER_HPP
