// Acceptance battery: one pass/fail line per criterion, each with a pinned
// wall-clock limit. `acceptance --criterion N` runs a single criterion.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "oracles.hpp"
#include "support.hpp"

using namespace hyperq;

namespace {

constexpr double kSigmaTolerance = 1e-12;
constexpr std::size_t kRandomSpecs = 50;
constexpr std::uint64_t kBatterySeed = 48;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

AlgebraElement b(ArrowId g, Rational c = Rational(1)) { return AlgebraElement::basis(g, c); }

std::vector<ConcreteRealization> fixture_battery() {
  std::vector<ConcreteRealization> out;
  for (const auto& name : support::realized_fixtures()) out.push_back(support::realize(name));
  return out;
}

std::vector<ConcreteRealization> random_battery() {
  std::mt19937_64 rng(kBatterySeed);
  std::vector<ConcreteRealization> out;
  for (std::size_t i = 0; i < kRandomSpecs; ++i) out.push_back(orbit_atoms(coset_union(support::random_coset_spec(rng)).action));
  return out;
}

std::vector<ConcreteRealization> full_battery() {
  auto all = fixture_battery();
  for (auto& r : random_battery()) all.push_back(std::move(r));
  return all;
}

ArrowId mixed_arrow(const WeightedHypergroupoid& w) {
  for (ArrowId g = 0; g < w.arrow_count(); ++g)
    if (w.base().src(g) != w.base().tgt(g) && w.left(g) == ExtNat(1) && w.right(g) == ExtNat(2)) return g;
  throw std::logic_error("no arrow with weights (1, 2)");
}

Outcome group_algebra() {
  Outcome o;
  const WeightedHypergroupoid w = weights(support::realize("f2_s3_regular.json"));
  const Hypergroupoid& h = w.base();
  o.require(h.unit_count() == 1 && h.arrow_count() == 6, "expected 1 unit and 6 arrows");
  if (!o.ok) return o;
  for (ArrowId g = 0; g < 6; ++g) {
    o.require(chi(w, g) == Rational(1), "chi != 1 at a" + std::to_string(g));
    for (ArrowId g2 = 0; g2 < 6; ++g2) {
      for (const Term& t : w.products(g, g2)) o.require(t.coefficient <= ExtNat(1), "mu outside {0,1}");
      const AlgebraElement p = mul(w, b(g), b(g2));
      o.require(p.terms().size() == 1 && p.terms().begin()->second == Rational(1),
                "[a" + std::to_string(g) + "][a" + std::to_string(g2) + "] is not a single group element");
    }
  }
  std::mt19937_64 rng(1);
  for (double t : {0.5, 1.0})
    for (int trial = 0; trial < 20; ++trial) {
      const AlgebraElement u = support::random_element(rng, 6);
      const ComplexElement s = sigma(w, t, u);
      for (const auto& [g, c] : u.terms())
        o.require(std::abs(s.coefficient(g) - std::complex<double>(static_cast<double>(c), 0.0)) <= kSigmaTolerance,
                  "sigma_t is not the identity");
    }
  return o;
}

Outcome hecke_relation() {
  Outcome o;
  const ConcreteRealization real = support::realize("f3_s3_three_points.json");
  const WeightedHypergroupoid w = weights(real);
  o.require(real.arrow_count() == 2, "expected arrows 1 and Delta");
  if (!o.ok) return o;
  const ArrowId one = real.hypergroupoid().unit_arrow(0), delta = one == 0 ? 1 : 0;
  o.require(mul(w, b(delta), b(delta)) == b(one, Rational(2)) + b(delta), "[Delta]^2 != 2[1] + [Delta]");

  // 3x3 boolean relation matrices: Delta = complement of the diagonal.
  std::vector<std::vector<bool>> d(3, std::vector<bool>(3));
  oracle::Relation rel;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      if (real.arrow_of(x, y) == delta) {
        d[x][y] = true;
        rel.insert({x, y});
      }
  const auto support = oracle::bool_matmul(d, d);
  const auto counts = oracle::matmul(oracle::incidence(3, rel), oracle::incidence(3, rel));
  const RationalMatrix m = regular_rep(real, mul(w, b(delta), b(delta)));
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) {
      o.require(support[x][y] == (m.at(x, y) != 0), "support differs from the boolean composite");
      o.require(m.at(x, y) == Rational(counts[x][y]), "path counts differ");
      o.require(counts[x][y] == (x == y ? 2 : 1), "oracle counts are not 2 on the diagonal and 1 off it");
    }
  return o;
}

Outcome weight_identities() {
  Outcome o;
  std::size_t index = 0;
  for (const auto& real : full_battery()) {
    const WeightReport rep = validate_weights(weights(real));
    o.require(rep.passed(), "instance " + std::to_string(index) + ": " +
                                (rep.failures.empty() ? std::string() : rep.failures.front().identity));
    ++index;
  }
  if (o.ok) o.detail = std::to_string(index) + " instances";
  return o;
}

Outcome chi_and_star() {
  Outcome o;
  std::mt19937_64 rng(4);
  std::size_t index = 0;
  for (const auto& real : full_battery()) {
    const WeightedHypergroupoid w = weights(real);
    const std::string tag = "instance " + std::to_string(index++);
    for (ArrowId g = 0; g < w.arrow_count(); ++g)
      for (ArrowId g2 = 0; g2 < w.arrow_count(); ++g2)
        for (const Term& t : w.products(g, g2))
          o.require(chi(w, t.arrow) == chi(w, g) * chi(w, g2), tag + ": chi not multiplicative");
    for (int trial = 0; trial < 10; ++trial) {
      const auto x = support::random_element(rng, w.arrow_count());
      const auto y = support::random_element(rng, w.arrow_count());
      o.require(star(w, star(w, x)) == x, tag + ": star is not involutive");
      o.require(star(w, mul(w, x, y)) == mul(w, star(w, y), star(w, x)), tag + ": star is not anti-multiplicative");
    }
  }
  const WeightedHypergroupoid f4 = weights(support::realize("f4_s3_mixed.json"));
  o.require(chi(f4, mixed_arrow(f4)) == Rational(1, 2), "chi(o) != 1/2");
  return o;
}

Outcome kms() {
  Outcome o;
  std::size_t index = 0;
  for (const auto& real : full_battery()) {
    const KmsReport rep = kms_check(weights(real));
    o.require(rep.passed(), "instance " + std::to_string(index) + ": " + std::to_string(rep.failures.size()) +
                                " failing pairs");
    ++index;
  }
  const WeightedHypergroupoid w = weights(support::realize("f4_s3_mixed.json"));
  const ArrowId q = mixed_arrow(w), q2 = w.base().star(q);
  const Rational lhs = eta(w, mul(w, b(q), sigma_imag(w, b(q2))));
  const Rational rhs = eta(w, mul(w, b(q2), b(q)));
  o.require(lhs == 1 && rhs == 1, "(o, o*) gives lhs " + to_fraction_string(lhs) + ", rhs " + to_fraction_string(rhs));
  return o;
}

Outcome regular_representation() {
  Outcome o;
  std::mt19937_64 rng(6);
  for (const auto& name : support::realized_fixtures()) {
    const ConcreteRealization real = support::realize(name);
    const WeightedHypergroupoid w = weights(real);
    for (int trial = 0; trial < 100; ++trial) {
      const auto u = support::random_element(rng, w.arrow_count());
      const auto v = support::random_element(rng, w.arrow_count());
      o.require(regular_rep(real, mul(w, u, v)) == regular_rep(real, u) * regular_rep(real, v),
                name + ": regular representation is not multiplicative");
    }
  }
  return o;
}

Outcome quantale_axioms() {
  Outcome o;
  for (const auto& name : support::realized_fixtures()) {
    const AtomicQuantale q = to_quantale(support::realize(name).hypergroupoid());
    if (q.atom_count() <= 9) {
      const AxiomReport rep = check_axioms(q, AxiomCheckMode::exhaustive());
      for (const auto& r : rep.results) o.require(r.passed, name + ": " + r.axiom + " violated");
    }
  }
  {
    const AxiomReport rep = check_axioms(support::load_quantale("f5_quantale.json"), AxiomCheckMode::exhaustive());
    for (const auto& r : rep.results) o.require(r.passed, "F5: " + r.axiom + " violated");
  }
  for (const auto& name : support::realized_fixtures()) {
    const ConcreteRealization real = support::realize(name);
    const FactorizationResult g = is_grothendieck(to_quantale(real.hypergroupoid()));
    const FactorizationResult s = is_semisimple(real.hypergroupoid());
    o.require(g.holds, name + ": Q10 fails at a" + std::to_string(g.first_failure.value_or(0)));
    o.require(s.holds, name + ": not semi-simple at a" + std::to_string(s.first_failure.value_or(0)));
  }
  return o;
}

Outcome semisimple_formula() {
  Outcome o;
  for (const char* name : {"f2_s3_regular.json", "f4_s3_mixed.json"}) {
    const ConcreteRealization real = support::realize(name);
    const Hypergroupoid& h = real.hypergroupoid();
    for (ArrowId a = 0; a < h.arrow_count(); ++a)
      for (ArrowId g = 0; g < h.arrow_count(); ++g)
        for (ArrowId g2 = 0; g2 < h.arrow_count(); ++g2)
          o.require(mu_semisimple(h, a, g, g2) == ExtNat(count_mu(real, a, g, g2)),
                    std::string(name) + ": sup formula differs at <a" + std::to_string(a) + "|a" + std::to_string(g) +
                        ",a" + std::to_string(g2) + ">");
  }
  return o;
}

QuantaleMatrix random_matrix(const AtomicQuantale& q, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  QuantaleMatrix m(rows, cols, q.atom_count());
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m.at(i, j) = QElement::from_mask(q.atom_count(), rng() % (std::uint64_t{1} << q.atom_count()));
  return m;
}

QuantaleMatrix random_symmetric(const AtomicQuantale& q, std::size_t n, std::mt19937_64& rng) {
  QuantaleMatrix m = random_matrix(q, n, n, rng);
  for (std::size_t i = 0; i < n; ++i) {
    m.at(i, i) = m.at(i, i) | q_star(q, m.at(i, i));
    for (std::size_t j = 0; j < i; ++j) m.at(j, i) = q_star(q, m.at(i, j));
  }
  return m;
}

Outcome site_and_proj() {
  Outcome o;
  const ConcreteRealization real = support::realize("f1_trivial_two_points.json");
  const AtomicQuantale q = to_quantale(real.hypergroupoid());
  const SiteDescription s = site(q);
  o.require(s.objects().size() == 4, "expected 4 subobjects of the unit");
  if (!o.ok) return o;
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t c = 0; c < 4; ++c) {
      std::set<int> dom, cod;
      for (AtomId u : s.objects()[a].atoms()) dom.insert(int(real.representative(u).x));
      for (AtomId u : s.objects()[c].atoms()) cod.insert(int(real.representative(u).x));
      std::uint64_t power = 1;
      for (std::size_t i = 0; i < dom.size(); ++i) power *= cod.size();
      o.require(s.hom(a, c).size() == power && oracle::count_site_homs(2, dom, cod) == power,
                "hom(o" + std::to_string(a) + ", o" + std::to_string(c) + ") has the wrong size");
    }

  const AtomicQuantale f5 = support::load_quantale("f5_quantale.json");
  std::mt19937_64 rng(9);
  std::size_t discrepancies = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t nx = 1 + rng() % 3, ny = 1 + rng() % 3;
    const QuantaleMatrix xb = random_symmetric(f5, nx, rng), yb = random_symmetric(f5, ny, rng);
    const QuantaleMatrix r = random_matrix(f5, ny, nx, rng);
    discrepancies += check_qset(f5, xb).discrepancies.size() + check_qrelation(f5, xb, yb, r).discrepancies.size() +
                     check_qfunction(f5, xb, yb, r).discrepancies.size();
  }
  o.require(discrepancies == 0, std::to_string(discrepancies) + " primed/unprimed discrepancies");
  return o;
}

struct Run {
  int code;
  std::string out;
};

Run spawn(const std::string& cmd) {
  Run r{-1, {}};
  FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Outcome determinism() {
  Outcome o;
  const std::vector<std::string> fixtures{"f1_trivial_two_points.json", "f2_s3_regular.json", "f3_s3_three_points.json",
                                          "f4_s3_mixed.json", "f5_quantale.json", "f5_mutated.json",
                                          "f3_mutated_abstract.json", "infinite_weight_abstract.json",
                                          "kms_violating_abstract.json", "one_point.json"};
  const std::vector<std::string> commands{"atoms", "algebra", "check", "kms",
                                          "evolve --t 0.5 --element '[a0]'", "convolve --f '[a0]' --g '[a0]'", "site"};
  std::size_t runs = 0;
  for (const auto& f : fixtures)
    for (const auto& c : commands)
      for (const char* fmt : {"table", "json"}) {
        const std::string sub = c.substr(0, c.find(' '));
        const std::string rest = c.size() > sub.size() ? c.substr(sub.size()) : "";
        const std::string cmd = std::string(HYPERQ_BIN) + " " + sub + " '" + support::fixture_path(f) + "'" + rest +
                                " --format " + fmt;
        const Run a = spawn(cmd), b = spawn(cmd);
        o.require(a.code >= 0 && a.code == b.code && a.out == b.out, "differs: " + sub + " " + f + " " + fmt);
        runs += 2;
      }
  if (o.ok) o.detail = std::to_string(runs) + " runs";
  return o;
}

std::vector<Criterion> criteria() {
  return {
      {1, "group algebra of S3 acting on itself", 1.0, group_algebra},
      {2, "Hecke relation on three points", 1.0, hecke_relation},
      {3, "weight identities on fixtures and 50 random coset specs", 30.0, weight_identities},
      {4, "chi multiplicative, star involutive anti-homomorphism", 10.0, chi_and_star},
      {5, "KMS identity at inverse temperature 1", 10.0, kms},
      {6, "regular representation is multiplicative", 10.0, regular_representation},
      {7, "quantale axioms Q1-Q9 exhaustive, Q10 on realized fixtures", 60.0, quantale_axioms},
      {8, "semi-simple supremum formula equals counts", 5.0, semisimple_formula},
      {9, "site hom counts and primed Q-set axioms", 10.0, site_and_proj},
      {10, "CLI output is deterministic", 120.0, determinism},
  };
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  bool all_ok = true;
  for (const Criterion& c : criteria()) {
    if (only != 0 && c.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && secs >= c.limit_seconds) {
      o.ok = false;
      o.detail = "over time limit";
    }
    all_ok = all_ok && o.ok;
    std::ostringstream line;
    line << "criterion " << c.id << ": " << (o.ok ? "PASS" : "FAIL") << "  " << c.name << "  ["
         << std::fixed << std::setprecision(3) << secs << "s / " << std::setprecision(0) << c.limit_seconds << "s]";
    if (!o.detail.empty()) line << "  " << o.detail;
    std::cout << line.str() << "\n";
  }
  return all_ok ? 0 : 1;
}
