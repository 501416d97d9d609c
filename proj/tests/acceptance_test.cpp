// Acceptance checks 1-9. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails. All comparisons are exact.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "icisres/icisres.hpp"

using namespace icisres;

namespace {

using Clock = std::chrono::steady_clock;

// Colength of I in the local ring from Macaulay matrices: dim of the span of
// monomials of degree < D modulo the truncated products x^a g. This value is
// nondecreasing in D; equality at D and D + 1 gives m^D in I + m^(D+1), so
// m^D lies in I and the value is the colength.
std::optional<std::size_t> macaulay_colength(const std::vector<Polynomial>& gens, std::size_t n,
                                             unsigned max_degree = 24) {
  auto value = [&](unsigned D) {
    auto monos = monomials_up_to(n, D - 1);
    std::map<Monomial, std::size_t, LocalGreater> col;
    for (std::size_t i = 0; i < monos.size(); ++i) col[monos[i]] = i;
    std::vector<Polynomial> rows;
    for (const auto& g : gens)
      for (const auto& m : monos) {
        Polynomial r = (Polynomial::monomial(m) * g).truncated(D - 1);
        if (!r.is_zero()) rows.push_back(r);
      }
    RationalMatrix M(rows.size(), monos.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (const auto& t : rows[r].terms()) M(r, col.at(t.mono)) = t.coef;
    return monos.size() - rank(M);
  };
  std::size_t prev = value(1);
  for (unsigned D = 2; D <= max_degree; ++D) {
    std::size_t cur = value(D);
    if (cur == prev) return cur;
    prev = cur;
  }
  return std::nullopt;
}

struct Check {
  bool ok = true;
  std::vector<std::string> notes;
  void fail(const std::string& why) {
    ok = false;
    notes.push_back(why);
  }
  void note(const std::string& s) { notes.push_back(s); }
};

std::string seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f s", s);
  return buf;
}

int failures = 0;

void criterion(int number, const std::string& title, double limit, const std::function<void(Check&)>& body) {
  Check c;
  auto start = Clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.fail(std::string("exception: ") + e.what());
  }
  double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
  if (limit > 0 && elapsed >= limit) c.fail("took " + seconds(elapsed) + ", limit " + seconds(limit));
  if (!c.ok) ++failures;
  std::cout << (c.ok ? "PASS " : "FAIL ") << number << " " << title << " (" << seconds(elapsed) << ")";
  for (const auto& n : c.notes) std::cout << "; " << n;
  std::cout << std::endl;
}

Rational as_rational(std::size_t k) { return Rational(static_cast<long>(k)); }

void index_equals_residue(Check& c, const std::string& name, const GermProblem& p, std::optional<std::size_t> expected,
                          double limit = 0) {
  auto start = Clock::now();
  std::size_t index = eg_index(p);
  Rational res = main_residue(p);
  double t = std::chrono::duration<double>(Clock::now() - start).count();
  if (as_rational(index) != res) c.fail(name + ": index " + std::to_string(index) + " != residue " + to_string(res));
  if (expected && index != *expected)
    c.fail(name + ": index " + std::to_string(index) + ", expected " + std::to_string(*expected));
  if (limit > 0 && t >= limit) c.fail(name + " took " + seconds(t));
  c.note(name + " = " + std::to_string(index));
}

std::vector<CorpusEntry> residue_corpus() {
  return {{"A1/dz", a1_germ_dz()},           {"diagonal(1,1)", smooth_diagonal(1, 1)},
          {"diagonal(2,3)", smooth_diagonal(2, 3)}, {"diagonal(3,3)", smooth_diagonal(3, 3)},
          {"E8/seed-2", e8_germ(2)},         {"E8/seed-3", e8_germ(3)}};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::optional<std::string> run_cli(const std::string& args, int& status) {
  std::string cmd = std::string(ICISRES_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return std::nullopt;
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  int rc = pclose(pipe);
  status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return out;
}

}  // namespace

int main() {
  criterion(1, "A1 germ x^2+y^2+z^2 with dz: index = residue = 2", 1.0,
            [](Check& c) { index_equals_residue(c, "A1/dz", a1_germ_dz(), 2); });

  criterion(2, "smooth diagonal x^k dx + y^l dy: index = residue = k*l", 3.0, [](Check& c) {
    for (auto [k, l] : std::vector<std::pair<unsigned, unsigned>>{{1, 1}, {2, 3}, {3, 3}})
      index_equals_residue(c, "(" + std::to_string(k) + "," + std::to_string(l) + ")", smooth_diagonal(k, l),
                           std::size_t{k} * l, 1.0);
  });

  criterion(3, "E8 x^2+y^3+z^5: index = residue = Macaulay corank", 30.0, [](Check& c) {
    for (const auto& [name, p] : std::vector<CorpusEntry>{
             {"dx+dy+dz", e8_germ(0)}, {"generic seed 2", e8_germ(2)}, {"generic seed 3", e8_germ(3)}}) {
      index_equals_residue(c, name, p, std::nullopt);
      auto oracle = macaulay_colength(ideal_J(p), p.n);
      if (!oracle) c.fail(name + ": Macaulay oracle did not stabilise");
      else if (*oracle != eg_index(p))
        c.fail(name + ": Macaulay corank " + std::to_string(*oracle) + " != index " + std::to_string(eg_index(p)));
    }
  });

  criterion(4, "lemma suites: det 100, eq1 50, lem2 25, eq2 25, ann 10", 120.0, [](Check& c) {
    for (auto [suite, trials] : std::vector<std::pair<std::string, std::size_t>>{
             {"det-lemmas", 100}, {"eq1", 50}, {"lem2", 25}, {"eq2-transform", 25}, {"ann-invariance", 10}}) {
      VerificationPlan plan;
      plan.suites = {suite};
      plan.trials = trials;
      plan.seed = 1;
      auto o = run(plan).front();
      if (o.trials != trials) c.fail(suite + " ran " + std::to_string(o.trials) + " trials");
      if (o.skipped) c.fail(suite + ": " + std::to_string(o.skipped) + " trials skipped");
      for (const auto& f : o.failures) c.fail(suite + ": " + f.payload);
      c.note(suite + " " + std::to_string(o.trials - o.failures.size()) + "/" + std::to_string(o.trials));
    }
  });

  criterion(5, "residue form: linearity, vanishing on J, unipotent mixes, lift independence", 0, [](Check& c) {
    Rng rng(5);
    LocalOrder reversed;
    std::size_t checks = 0;
    for (const auto& [name, p0] : residue_corpus()) {
      const GermProblem p = find_good_coordinates(p0).problem;
      const std::size_t n = p.n;
      auto ms = minors(p);
      std::vector<Polynomial> dens = p.f;
      dens.push_back(ms.principal[1]);
      dens.push_back(ms.principal[0]);
      const Polynomial df = DF(p);
      reversed.permutation.clear();
      for (std::size_t i = 0; i < n; ++i) reversed.permutation.push_back(n - 1 - i);

      for (int t = 0; t < 4; ++t) {
        Polynomial h1 = random_polynomial(rng, n, 0, 3), h2 = random_polynomial(rng, n, 0, 3);
        Rational a = random_rational(rng);
        Rational l1 = residue_form(p, h1), l2 = residue_form(p, h2);
        if (residue_form(p, a * h1 + h2) != a * l1 + l2) c.fail(name + ": linearity fails");

        if (grothendieck_residue({h1 * df, dens}) != l1) c.fail(name + ": form and symbol disagree");
        std::vector<Polynomial> mixed = dens;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < i; ++j) mixed[i] += random_polynomial(rng, n, 0, 1, 2) * dens[j];
        if (grothendieck_residue({h1 * df, mixed}) != l1) c.fail(name + ": unipotent mix changes the residue");

        auto other = grothendieck_residue_detailed({h1 * df, dens}, {}, reversed);
        if (other.value != l1) c.fail(name + ": lifts in two orders disagree");
        checks += 4;
      }

      auto basis = staircase_basis(standard_basis(ideal_J(p)));
      for (const auto& g : ideal_J(p))
        for (const auto& m : basis) {
          if (residue_form(p, g * Polynomial::monomial(m)) != 0)
            c.fail(name + ": nonzero on J generator " + to_string(g) + " times " +
                   to_string(Polynomial::monomial(m)));
          ++checks;
        }
    }
    c.note(std::to_string(checks) + " identities");
  });

  criterion(6, "pairing: rank beta = dim C, sigma in soc C, socle bound, dim C stable", 0, [](Check& c) {
    for (const auto& [name, p] : residue_corpus()) {
      auto r = pairing_report(p);
      if (r.rank_beta != r.dimC)
        c.fail(name + ": rank beta " + std::to_string(r.rank_beta) + " != dim C " + std::to_string(r.dimC));
      if (!r.sigma_in_socC) c.fail(name + ": sigma not a nonzero socle element of C");
      if (!r.bound_holds) c.fail(name + ": socle bound fails");
      std::size_t d1 = dimC_in_random_coordinates(p, 1), d2 = dimC_in_random_coordinates(p, 2);
      if (d1 != r.dimC || d2 != r.dimC)
        c.fail(name + ": dim C varies: " + std::to_string(r.dimC) + ", " + std::to_string(d1) + ", " +
               std::to_string(d2));
      c.note(name + " dimC=" + std::to_string(r.dimC));
    }
  });

  criterion(7, "multiplicity: colength = relative residue", 0, [](Check& c) {
    auto X2 = Polynomial::variable(2, 0), Y2 = Polynomial::variable(2, 1);
    auto X3 = Polynomial::variable(3, 0), Y3 = Polynomial::variable(3, 1), Z3 = Polynomial::variable(3, 2);
    struct Case {
      std::string name;
      std::vector<Polynomial> f, g;
      std::size_t expected;
    };
    std::vector<Case> cases{{"g=(x,y)", {}, {X2, Y2}, 1},
                            {"f=x^2+y^2+z^2 g=(y,x)", {X3 * X3 + Y3 * Y3 + Z3 * Z3}, {Y3, X3}, 2},
                            {"g=(x^2,y^3)", {}, {X2 * X2, Y2 * Y2 * Y2}, 6}};
    for (const auto& k : cases) {
      auto m = intersection_multiplicity_both_ways(k.f, k.g);
      if (m.lhs != k.expected || m.rhs != as_rational(k.expected))
        c.fail(k.name + ": (" + std::to_string(m.lhs) + ", " + to_string(m.rhs) + ")");
      c.note(k.name + " -> (" + std::to_string(m.lhs) + ", " + to_string(m.rhs) + ")");
    }
  });

  criterion(8, "cusp x^2 - y^3 with dy: curve index = 3", 0, [](Check& c) {
    auto x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
    GermProblem p{2, {x * x - y * y * y}, {Polynomial(2), Polynomial::constant(2, 1)}, 1};
    auto k = curve_index(p);
    if (k != 3) c.fail("got " + std::to_string(k));
  });

  criterion(9, "determinism: repeated runs give byte-identical JSON", 0, [](Check& c) {
    std::size_t runs = 0;
    for (const auto& entry : std::filesystem::directory_iterator(ICISRES_GERMS)) {
      const auto path = entry.path();
      if (path.extension() != ".germ") continue;
      const std::string stem = path.stem().string();
      std::vector<std::string> commands;
      if (stem.rfind("mult", 0) == 0) commands = {"mult"};
      else if (stem.rfind("cusp", 0) == 0) commands = {"curve-index"};
      else commands = {"index", "residue", "sigma", "good-coords", "pairing", "all"};
      const std::string text = read_file(path);
      auto file = parse_germ_file(text);
      for (const auto& cmd : commands) {
        for (std::optional<std::uint64_t> seed : {std::optional<std::uint64_t>{}, std::optional<std::uint64_t>{17}}) {
          std::string args = cmd + " " + path.string() + " --format json";
          if (seed) args += " --seed " + std::to_string(*seed);
          int s1 = -1, s2 = -1;
          auto a = run_cli(args, s1), b = run_cli(args, s2);
          if (!a || !b || s1 != 0 || s2 != 0) {
            c.fail(stem + " " + cmd + ": CLI exit " + std::to_string(s1));
            continue;
          }
          if (*a != *b) c.fail(stem + " " + cmd + ": CLI output differs between runs");
          if (*a != render_json(dispatch(cmd, text, file, seed)))
            c.fail(stem + " " + cmd + ": CLI output differs from the library report");
          runs += 2;
        }
      }
    }
    if (runs == 0) c.fail("no germ files found");
    c.note(std::to_string(runs) + " CLI runs");
  });

  return failures == 0 ? 0 : 1;
}
