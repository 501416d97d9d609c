#pragma once

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "icisres/germ.hpp"
#include "icisres/pairing.hpp"
#include "icisres/parser.hpp"
#include "icisres/random.hpp"
#include "icisres/residue.hpp"
#include "icisres/verify.hpp"

namespace icisres {

using Json = nlohmann::ordered_json;

// Structured result of one command. Contains no timing data, so the JSON
// rendering is a pure function of the input text, command and flags.
struct Report {
  std::string command;
  std::string input_hash;
  Json result = Json::object();
  Json caps_used = Json::object();
  std::uint64_t seed = 1;
  std::vector<std::string> discrepancies;

  int exit_code() const { return discrepancies.empty() ? 0 : 2; }
};

inline const std::vector<std::string>& all_commands() {
  static const std::vector<std::string> names{"index",       "residue", "sigma", "good-coords", "pairing",
                                              "curve-index", "mult",    "verify", "all"};
  return names;
}

inline std::string hash_hex(std::string_view text) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(text)));
  return buf;
}

namespace report_detail {

inline Json rational(const Rational& r) { return to_string(r); }

inline Json polys(const std::vector<Polynomial>& ps, const std::vector<std::string>& names) {
  Json out = Json::array();
  for (const auto& p : ps) out.push_back(to_string(p, names));
  return out;
}

inline Json matrix(const RationalMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(rational(m(r, c)));
    out.push_back(row);
  }
  return out;
}

inline Json matrix(const PolyMatrix& m, const std::vector<std::string>& names) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c), names));
    out.push_back(row);
  }
  return out;
}

inline Json coordinates(const GoodCoordinates& g, const std::vector<std::string>& names) {
  Json out;
  out["matrix"] = matrix(g.change.matrix);
  out["inverse"] = matrix(g.change.inverse);
  out["attempts"] = g.attempts;
  out["f"] = polys(g.problem.f, names);
  out["omega"] = polys(g.problem.omega, names);
  return out;
}

inline Json sigma(const SigmaData& s, const std::vector<std::string>& names) {
  Json out;
  out["M"] = matrix(s.M, names);
  out["sigma"] = to_string(s.sigma, names);
  out["DF"] = to_string(s.DF, names);
  return out;
}

inline Json pairing(const PairingReport& r, const std::vector<std::string>& names) {
  Json out;
  out["dimA"] = r.dimA;
  out["dimB"] = r.dimB;
  out["dimC"] = r.dimC;
  out["rank_beta"] = r.rank_beta;
  out["soc_A_dim"] = r.socA_dim;
  out["sigma_in_soc_C"] = r.sigma_in_socC;
  out["socle_bound_holds"] = r.bound_holds;
  out["sigma_pairing_vanishes"] = r.sigma_pairing_vanishes;
  Json basis = Json::array();
  for (const auto& m : r.basis) basis.push_back(to_string(Polynomial::monomial(m), names));
  out["basis"] = basis;
  out["gram"] = matrix(r.gram);
  out["coordinates"] = coordinates(r.coordinates, names);
  return out;
}

struct Residue {
  Json json;
  Rational value;
  unsigned cap;
};

inline Residue residue(const GermProblem& p, const EngineSettings& s, const std::vector<std::string>& names) {
  auto m = main_residue_detailed(p, s);
  Json out;
  out["residue"] = rational(m.value);
  out["sigma"] = to_string(m.sigma.sigma, names);
  out["DF"] = to_string(m.sigma.DF, names);
  out["coordinates"] = coordinates(m.coordinates, names);
  return {out, m.value, m.cap};
}

}  // namespace report_detail

// Runs one germ-file command. `seed` overrides the file's seed.
inline Report dispatch(const std::string& command, std::string_view text, const GermFile& file,
                       std::optional<std::uint64_t> seed = std::nullopt, const EngineSettings& base = {}) {
  using namespace report_detail;
  Report r;
  r.command = command;
  r.input_hash = hash_hex(text);
  r.seed = seed.value_or(file.seed.value_or(1));
  const EngineSettings s = file.settings(base);
  const auto& names = file.vars;
  auto surface = [&] {
    GermProblem p = file.problem(2);
    p.seed = r.seed;
    return p;
  };

  if (command == "index") {
    auto v = eg_index_detailed(surface(), s);
    r.result["index"] = v.index;
    r.caps_used["index"] = v.cap;
  } else if (command == "curve-index") {
    GermProblem p = file.problem(1);
    p.seed = r.seed;
    auto v = curve_index_detailed(p, s);
    r.result["index"] = v.index;
    r.caps_used["index"] = v.cap;
  } else if (command == "residue") {
    auto v = residue(surface(), s, names);
    r.result = v.json;
    r.caps_used["residue"] = v.cap;
  } else if (command == "sigma") {
    auto p = surface();
    auto ms = minors(p);
    r.result["principal_minors"] = polys(ms.principal, names);
    r.result.update(sigma(sigma_data(p), names));
  } else if (command == "good-coords") {
    auto p = surface();
    r.result = coordinates(find_good_coordinates(p, s), names);
    r.result["principal_minors"] = polys(minors(find_good_coordinates(p, s).problem).principal, names);
  } else if (command == "pairing") {
    auto rep = pairing_report(surface(), s);
    r.result = pairing(rep, names);
    r.discrepancies = rep.discrepancies;
  } else if (command == "mult") {
    if (file.g.empty()) throw InvalidProblem("'mult' needs the denominators g in the germ file");
    if (file.f.size() + file.g.size() != file.vars.size())
      throw ArityError("f and g together need " + std::to_string(file.vars.size()) + " entries, got " +
                           std::to_string(file.f.size() + file.g.size()),
                       file.f_pos.line, file.f_pos.column);
    auto m = intersection_multiplicity_both_ways(file.f, file.g, s);
    r.result["colength"] = m.lhs;
    r.result["relative_residue"] = rational(m.rhs);
    r.result["verdict"] = Rational(static_cast<long>(m.lhs)) == m.rhs ? "EQUAL" : "DIFFERENT";
    if (Rational(static_cast<long>(m.lhs)) != m.rhs)
      r.discrepancies.push_back("colength " + std::to_string(m.lhs) + " differs from relative residue " +
                                to_string(m.rhs));
  } else if (command == "all") {
    auto p = surface();
    auto idx = eg_index_detailed(p, s);
    auto res = residue(p, s, names);
    auto rep = pairing_report(p, s);
    r.result["index"] = idx.index;
    r.result["residue"] = res.json["residue"];
    const bool equal = Rational(static_cast<long>(idx.index)) == res.value;
    r.result["verdict"] = equal ? "EQUAL" : "DIFFERENT";
    r.result["sigma"] = res.json["sigma"];
    r.result["DF"] = res.json["DF"];
    r.result["coordinates"] = res.json["coordinates"];
    r.result["pairing"] = pairing(rep, names);
    r.caps_used["index"] = idx.cap;
    r.caps_used["residue"] = res.cap;
    if (!equal)
      r.discrepancies.push_back("index " + std::to_string(idx.index) + " differs from residue " + to_string(res.value));
    for (const auto& d : rep.discrepancies) r.discrepancies.push_back(d);
  } else {
    throw InvalidProblem("unknown command '" + command + "'");
  }
  return r;
}

inline Report verify_report(const VerificationPlan& plan) {
  Report r;
  r.command = "verify";
  std::string desc = "trials=" + std::to_string(plan.trials) + ";seed=" + std::to_string(plan.seed) + ";suites=";
  for (const auto& s : plan.suites) desc += s + ",";
  r.input_hash = hash_hex(desc);
  r.seed = plan.seed;
  r.caps_used["initial"] = plan.settings.initial_cap;
  r.caps_used["max"] = plan.settings.max_cap;
  Json suites = Json::array();
  for (const auto& o : run(plan)) {
    Json j;
    j["suite"] = o.suite;
    j["trials"] = o.trials;
    j["resamples"] = o.resamples;
    j["skipped"] = o.skipped;
    Json fails = Json::array();
    for (const auto& f : o.failures) {
      fails.push_back({{"seed", f.seed}, {"payload", f.payload}});
      r.discrepancies.push_back(o.suite + " failed at seed " + std::to_string(f.seed) + ": " + f.payload);
    }
    j["failures"] = fails;
    suites.push_back(j);
  }
  r.result["suites"] = suites;
  return r;
}

inline Json to_json(const Report& r) {
  Json j;
  j["command"] = r.command;
  j["input_hash"] = r.input_hash;
  j["result"] = r.result;
  j["caps_used"] = r.caps_used;
  j["seed"] = r.seed;
  j["discrepancies"] = r.discrepancies;
  return j;
}

inline std::string render_json(const Report& r) { return to_json(r).dump(2) + "\n"; }

namespace report_detail {

inline std::string scalar(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

inline bool flat(const Json& v) {
  if (!v.is_array()) return false;
  for (const auto& e : v)
    if (e.is_structured()) return false;
  return true;
}

inline void text(const Json& v, const std::string& indent, std::string& out) {
  std::size_t width = 0;
  for (const auto& [k, _] : v.items()) width = std::max(width, k.size());
  for (const auto& [k, e] : v.items()) {
    std::string key = indent + k + ":" + std::string(width - k.size() + 1, ' ');
    if (e.is_object()) {
      out += indent + k + ":\n";
      text(e, indent + "  ", out);
    } else if (flat(e)) {
      std::string items;
      for (const auto& x : e) items += (items.empty() ? "" : ", ") + scalar(x);
      out += key + "[" + items + "]\n";
    } else if (e.is_array()) {
      out += indent + k + ":\n";
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (flat(e[i])) {
          std::string items;
          for (const auto& x : e[i]) items += (items.empty() ? "" : ", ") + scalar(x);
          out += indent + "  [" + items + "]\n";
        } else if (e[i].is_object()) {
          out += indent + "  -\n";
          text(e[i], indent + "    ", out);
        } else {
          out += indent + "  " + scalar(e[i]) + "\n";
        }
      }
    } else {
      out += key + scalar(e) + "\n";
    }
  }
}

}  // namespace report_detail

// Aligned `key: value` rendering of the same record.
inline std::string render_text(const Report& r) {
  std::string out;
  report_detail::text(to_json(r), "", out);
  return out;
}

}  // namespace icisres
