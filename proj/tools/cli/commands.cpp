#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <fmt/ostream.h>

#include "input.hpp"
#include "literal.hpp"

namespace hyperq::cli {

namespace {

using ojson = nlohmann::ordered_json;

enum class Format { table, json };

struct Loaded {
  std::string digest;
  InputSpec spec;
};

Loaded load(const std::string& path) {
  const std::string bytes = read_file(path);
  return {"sha256:" + sha256_hex(bytes), parse_input(std::string_view(bytes))};
}

/// The weighted table a command works on, with the realization when there is one.
struct Model {
  std::optional<ConcreteRealization> real;
  WeightedHypergroupoid weighted;
};

Model model_of(const InputSpec& spec, const char* command) {
  if (spec.is_realizable()) {
    ConcreteRealization real = orbit_atoms(action_of(spec));
    WeightedHypergroupoid w = weights(real);
    return {std::move(real), std::move(w)};
  }
  if (const auto* a = std::get_if<AbstractSpec>(&spec.value)) return {std::nullopt, a->table};
  throw ParseError(std::string(command) + " needs an action, coset or abstract input, not a bare quantale");
}

std::string arrow(ArrowId g) { return "a" + std::to_string(g); }

std::string ext_string(const ExtNat& e) { return e.to_string(); }
ojson ext_json(const ExtNat& e) { return e.is_infinite() ? ojson("inf") : ojson(e.value()); }

std::optional<Rational> chi_if_defined(const WeightedHypergroupoid& w, ArrowId g) {
  const ExtNat l = w.left(g), r = w.right(g);
  if (l.is_infinite() || r.is_infinite() || l.is_zero() || r.is_zero()) return std::nullopt;
  return chi(w, g);
}

/// Left-aligned columns separated by two spaces.
class Table {
public:
  explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  void print(std::ostream& out) const {
    std::vector<std::size_t> width;
    for (const auto& r : rows_)
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (width.size() <= i) width.push_back(0);
        width[i] = std::max(width[i], r[i].size());
      }
    for (const auto& r : rows_) {
      std::string line;
      for (std::size_t i = 0; i < r.size(); ++i) {
        line += r[i];
        if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
      }
      out << line << "\n";
    }
  }

private:
  std::vector<std::vector<std::string>> rows_;
};

ojson header_json(const char* command, const Loaded& in) {
  ojson j;
  j["tool"] = kToolVersion;
  j["command"] = command;
  j["input"] = {{"name", in.spec.name()}, {"kind", std::string(in.spec.kind())}, {"digest", in.digest}};
  return j;
}

void header_table(std::ostream& out, const char* command, const Loaded& in) {
  fmt::print(out, "{} {}\n", kToolVersion, command);
  fmt::print(out, "input: {} ({})  {}\n", in.spec.name().empty() ? "-" : in.spec.name(), in.spec.kind(), in.digest);
}

void finish(std::ostream& out, Format format, const ojson& j) {
  if (format == Format::json) out << j.dump(2) << "\n";
}

// ---------------------------------------------------------------- atoms

int cmd_atoms(const Loaded& in, Format format, std::ostream& out) {
  if (!in.spec.is_realizable()) throw ParseError("atoms needs an action or coset input");
  const ConcreteRealization real = orbit_atoms(action_of(in.spec));
  const Hypergroupoid& h = real.hypergroupoid();

  ojson j = header_json("atoms", in);
  j["points"] = real.point_count();
  ojson units = ojson::array(), arrows = ojson::array();
  std::vector<std::size_t> first_point(h.unit_count(), SIZE_MAX);
  for (std::size_t x = 0; x < real.point_count(); ++x)
    first_point[real.unit_of_point(x)] = std::min(first_point[real.unit_of_point(x)], x);
  for (UnitId e = 0; e < h.unit_count(); ++e)
    units.push_back({{"id", e}, {"size", real.unit_size(e)}, {"first_point", first_point[e]}, {"arrow", arrow(h.unit_arrow(e))}});
  for (ArrowId g = 0; g < h.arrow_count(); ++g) {
    const auto [x, y] = real.representative(g);
    arrows.push_back({{"id", arrow(g)}, {"src", h.src(g)}, {"tgt", h.tgt(g)}, {"star", arrow(h.star(g))},
                      {"orbit_size", real.orbit_size(g)}, {"representative", {x, y}}});
  }
  j["units"] = units;
  j["arrows"] = arrows;

  if (format == Format::json) {
    finish(out, format, j);
    return 0;
  }
  header_table(out, "atoms", in);
  fmt::print(out, "points {}  units {}  arrows {}\n\n", real.point_count(), h.unit_count(), h.arrow_count());
  Table tu({"unit", "size", "first_point", "identity"});
  for (UnitId e = 0; e < h.unit_count(); ++e)
    tu.add({std::to_string(e), std::to_string(real.unit_size(e)), std::to_string(first_point[e]), arrow(h.unit_arrow(e))});
  tu.print(out);
  out << "\n";
  Table ta({"arrow", "src", "tgt", "star", "orbit", "representative"});
  for (ArrowId g = 0; g < h.arrow_count(); ++g) {
    const auto [x, y] = real.representative(g);
    ta.add({arrow(g), std::to_string(h.src(g)), std::to_string(h.tgt(g)), arrow(h.star(g)),
            std::to_string(real.orbit_size(g)), fmt::format("({},{})", x, y)});
  }
  ta.print(out);
  return 0;
}

// ---------------------------------------------------------------- algebra

ojson weight_failures_json(const WeightReport& rep) {
  ojson fs = ojson::array();
  for (const WeightFailure& f : rep.failures) {
    ojson o{{"identity", f.identity}};
    o["a"] = f.a ? ojson(arrow(*f.a)) : ojson(nullptr);
    o["g"] = arrow(f.g);
    o["h"] = arrow(f.g2);
    o["lhs"] = ext_json(f.lhs);
    o["rhs"] = ext_json(f.rhs);
    fs.push_back(o);
  }
  return fs;
}

void weight_failures_table(std::ostream& out, const WeightReport& rep) {
  for (const WeightFailure& f : rep.failures)
    fmt::print(out, "  FAIL {} a={} g={} h={}: {} != {}\n", f.identity, f.a ? arrow(*f.a) : "-", arrow(f.g),
               arrow(f.g2), ext_string(f.lhs), ext_string(f.rhs));
}

int cmd_algebra(const Loaded& in, Format format, std::ostream& out, std::ostream& err) {
  const Model m = model_of(in.spec, "algebra");
  const WeightedHypergroupoid& w = m.weighted;
  const Hypergroupoid& h = w.base();
  const WeightReport rep = validate_weights(w);
  const bool finite = is_locally_finite(w);

  ojson j = header_json("algebra", in);
  ojson arrows = ojson::array(), constants = ojson::array();
  for (ArrowId g = 0; g < h.arrow_count(); ++g) {
    const auto c = chi_if_defined(w, g);
    arrows.push_back({{"id", arrow(g)}, {"src", h.src(g)}, {"tgt", h.tgt(g)}, {"star", arrow(h.star(g))},
                      {"left", ext_json(w.left(g))}, {"right", ext_json(w.right(g))},
                      {"chi", c ? ojson(to_fraction_string(*c)) : ojson(nullptr)}, {"simple", is_simple(h, g)}});
  }
  for (ArrowId g = 0; g < h.arrow_count(); ++g)
    for (ArrowId g2 = 0; g2 < h.arrow_count(); ++g2)
      for (const Term& t : w.products(g, g2))
        constants.push_back({{"a", arrow(t.arrow)}, {"g", arrow(g)}, {"h", arrow(g2)}, {"mu", ext_json(t.coefficient)}});
  j["arrows"] = arrows;
  j["structure_constants"] = constants;
  j["locally_finite"] = finite;
  j["weight_identities"] = {{"checked", rep.checked}, {"passed", rep.passed()}, {"failures", weight_failures_json(rep)}};

  if (format == Format::json) {
    finish(out, format, j);
  } else {
    header_table(out, "algebra", in);
    fmt::print(out, "units {}  arrows {}\n\n", h.unit_count(), h.arrow_count());
    Table t({"arrow", "src", "tgt", "star", "|g|_l", "|g|_r", "chi", "simple"});
    for (ArrowId g = 0; g < h.arrow_count(); ++g) {
      const auto c = chi_if_defined(w, g);
      t.add({arrow(g), std::to_string(h.src(g)), std::to_string(h.tgt(g)), arrow(h.star(g)), ext_string(w.left(g)),
             ext_string(w.right(g)), c ? to_fraction_string(*c) : "undefined", is_simple(h, g) ? "yes" : "no"});
    }
    t.print(out);
    out << "\nstructure constants <a|g,h>\n";
    for (ArrowId g = 0; g < h.arrow_count(); ++g)
      for (ArrowId g2 = 0; g2 < h.arrow_count(); ++g2)
        for (const Term& term : w.products(g, g2))
          fmt::print(out, "  <{}|{},{}> = {}\n", arrow(term.arrow), arrow(g), arrow(g2), ext_string(term.coefficient));
    fmt::print(out, "\nlocally finite: {}\n", finite ? "yes" : "no");
    fmt::print(out, "weight identities: {} checked, {} failed\n", rep.checked, rep.failures.size());
    weight_failures_table(out, rep);
  }
  if (!rep.passed()) {
    fmt::print(err, "check failed: weight identities ({} failures, first: {})\n", rep.failures.size(),
               rep.failures.front().identity);
    return 1;
  }
  return 0;
}

// ---------------------------------------------------------------- check

struct CheckOptions {
  bool exhaustive = false;
  std::optional<std::size_t> samples;
  std::uint64_t seed = 0;
};

constexpr std::size_t kExhaustiveBound = 9;
constexpr std::size_t kDefaultSamples = 2000;

ojson axiom_json(const AxiomReport& rep) {
  ojson rs = ojson::array();
  for (const AxiomResult& r : rep.results) {
    ojson o{{"axiom", r.axiom}, {"description", r.description}, {"passed", r.passed}, {"structural", r.structural}};
    o["witness"] = r.witness;
    rs.push_back(o);
  }
  return rs;
}

void axiom_table(std::ostream& out, const AxiomReport& rep) {
  for (const AxiomResult& r : rep.results) {
    std::string status = r.passed ? (r.structural ? "pass (structural)" : "pass") : "FAIL";
    std::string line = fmt::format("  {:<6}{:<19}{}", r.axiom, status, r.description);
    if (!r.passed) {
      line += "  witness:";
      for (const auto& w : r.witness) line += " " + w;
    }
    out << line << "\n";
  }
}

int cmd_check(const Loaded& in, const CheckOptions& opt, Format format, std::ostream& out, std::ostream& err) {
  std::optional<AtomicQuantale> q;
  std::optional<Hypergroupoid> h;
  std::optional<WeightedHypergroupoid> w;
  std::string hg_error;
  if (const auto* qs = std::get_if<QuantaleSpec>(&in.spec.value)) {
    q = qs->quantale;
    try {
      h = from_quantale(*q);
    } catch (const NotModular& e) {
      hg_error = e.what();
    }
  } else {
    Model m = model_of(in.spec, "check");
    w = m.weighted;
    h = w->base();
    q = to_quantale(*h);
  }

  // Exhaustive unless sampling was asked for, or the quantale is too large and
  // exhaustive mode was not explicitly requested.
  AxiomCheckMode mode = AxiomCheckMode::exhaustive(kExhaustiveBound);
  std::string mode_note = "exhaustive";
  if (opt.samples) {
    mode = AxiomCheckMode::sampled(*opt.samples, opt.seed);
    mode_note = fmt::format("sampled ({} samples, seed {})", *opt.samples, opt.seed);
  } else if (!opt.exhaustive && q->atom_count() > kExhaustiveBound) {
    mode = AxiomCheckMode::sampled(kDefaultSamples, opt.seed);
    mode_note = fmt::format("sampled ({} samples, seed {}; {} atoms exceed the exhaustive bound {})", kDefaultSamples,
                            opt.seed, q->atom_count(), kExhaustiveBound);
  }
  const AxiomReport qrep = check_axioms(*q, mode);
  const FactorizationResult groth = is_grothendieck(*q);
  std::optional<AxiomReport> hrep;
  if (h) hrep = check_hg_axioms(*h);
  std::optional<WeightReport> wrep;
  if (w) wrep = validate_weights(*w);

  std::vector<std::string> failed;
  for (const auto& r : qrep.results)
    if (!r.passed) failed.push_back(r.axiom);
  if (!h) failed.push_back("hypergroupoid");
  if (hrep)
    for (const auto& r : hrep->results)
      if (!r.passed) failed.push_back(r.axiom);
  if (wrep && !wrep->passed()) failed.push_back("weight identities");

  if (format == Format::json) {
    ojson j = header_json("check", in);
    j["quantale"] = {{"atoms", q->atom_count()}, {"mode", mode_note}, {"cases", qrep.cases_checked},
                     {"axioms", axiom_json(qrep)}};
    ojson g{{"holds", groth.holds}, {"informational", true}};
    g["first_failure"] = groth.first_failure ? ojson(arrow(*groth.first_failure)) : ojson(nullptr);
    j["grothendieck"] = g;
    if (hrep)
      j["hypergroupoid"] = {{"axioms", axiom_json(*hrep)}};
    else
      j["hypergroupoid"] = {{"error", hg_error}};
    if (wrep)
      j["weight_identities"] = {{"checked", wrep->checked}, {"passed", wrep->passed()},
                                {"failures", weight_failures_json(*wrep)}};
    j["passed"] = failed.empty();
    finish(out, format, j);
  } else {
    header_table(out, "check", in);
    fmt::print(out, "\nquantale axioms: {} atoms, {}, {} cases\n", q->atom_count(), mode_note, qrep.cases_checked);
    axiom_table(out, qrep);
    fmt::print(out, "  {:<6}{:<19}{}\n", "Q10", groth.holds ? "holds" : "does not hold",
               groth.holds ? "(informational)"
                           : fmt::format("(informational) no simple factorization of {}", arrow(*groth.first_failure)));
    out << "\nhypergroupoid axioms:\n";
    if (hrep)
      axiom_table(out, *hrep);
    else
      fmt::print(out, "  FAIL {}\n", hg_error);
    if (wrep) {
      fmt::print(out, "\nweight identities: {} checked, {} failed\n", wrep->checked, wrep->failures.size());
      weight_failures_table(out, *wrep);
    }
    fmt::print(out, "\nresult: {}\n", failed.empty() ? "pass" : "FAIL");
  }
  if (!failed.empty()) {
    std::string names;
    for (const auto& f : failed) names += (names.empty() ? "" : ", ") + f;
    fmt::print(err, "check failed: {}\n", names);
    return 1;
  }
  return 0;
}

// ---------------------------------------------------------------- kms

int cmd_kms(const Loaded& in, Format format, std::ostream& out, std::ostream& err) {
  const Model m = model_of(in.spec, "kms");
  const KmsReport rep = kms_check(m.weighted);
  if (format == Format::json) {
    ojson j = header_json("kms", in);
    j["pairs_checked"] = rep.pairs_checked;
    ojson fs = ojson::array();
    for (const KmsFailure& f : rep.failures)
      fs.push_back({{"q", arrow(f.q)}, {"q2", arrow(f.q2)}, {"lhs", to_fraction_string(f.lhs)},
                    {"rhs", to_fraction_string(f.rhs)}});
    j["failures"] = fs;
    j["passed"] = rep.passed();
    finish(out, format, j);
  } else {
    header_table(out, "kms", in);
    fmt::print(out, "\npairs checked: {}\nfailures: {}\n", rep.pairs_checked, rep.failures.size());
    for (const KmsFailure& f : rep.failures)
      fmt::print(out, "  FAIL q={} q'={}: eta([q] sigma_i([q'])) = {}, eta([q'][q]) = {}\n", arrow(f.q), arrow(f.q2),
                 to_fraction_string(f.lhs), to_fraction_string(f.rhs));
    fmt::print(out, "result: {}\n", rep.passed() ? "pass" : "FAIL");
  }
  if (!rep.passed()) {
    fmt::print(err, "check failed: kms ({} failing pairs)\n", rep.failures.size());
    return 1;
  }
  return 0;
}

// ---------------------------------------------------------------- evolve

double clean(double v) { return v == 0.0 ? 0.0 : v; }

int cmd_evolve(const Loaded& in, double t, const std::string& literal, Format format, std::ostream& out) {
  const Model m = model_of(in.spec, "evolve");
  const AlgebraElement u = parse_element(literal, m.weighted.arrow_count());
  const ComplexElement s = sigma(m.weighted, t, u);
  if (format == Format::json) {
    ojson j = header_json("evolve", in);
    j["t"] = t;
    j["element"] = format_element(u);
    ojson cs = ojson::array();
    for (const auto& [g, c] : s.terms())
      cs.push_back({{"arrow", arrow(g)}, {"re", clean(c.real())}, {"im", clean(c.imag())}});
    j["coefficients"] = cs;
    finish(out, format, j);
    return 0;
  }
  header_table(out, "evolve", in);
  fmt::print(out, "\nt = {:.17g}\nelement: {}\n", t, format_element(u));
  Table tab({"arrow", "re", "im"});
  for (const auto& [g, c] : s.terms())
    tab.add({arrow(g), fmt::format("{:.17g}", clean(c.real())), fmt::format("{:.17g}", clean(c.imag()))});
  tab.print(out);
  return 0;
}

// ---------------------------------------------------------------- convolve

int cmd_convolve(const Loaded& in, const std::string& f_lit, const std::string& g_lit, Format format, std::ostream& out) {
  const Model m = model_of(in.spec, "convolve");
  const std::size_t n = m.weighted.arrow_count();
  const ExtFunction f = parse_ext_function(f_lit, n), g = parse_ext_function(g_lit, n);
  const ExtFunction r = convolve_ext(m.weighted, f, g);
  if (format == Format::json) {
    ojson j = header_json("convolve", in);
    j["f"] = f_lit;
    j["g"] = g_lit;
    ojson vs = ojson::array();
    for (const auto& [a, v] : r) vs.push_back({{"arrow", arrow(a)}, {"value", ext_json(v)}});
    j["values"] = vs;
    finish(out, format, j);
    return 0;
  }
  header_table(out, "convolve", in);
  fmt::print(out, "\nf = {}\ng = {}\n(f * g):\n", f_lit, g_lit);
  if (r.empty()) out << "  0\n";
  for (const auto& [a, v] : r) fmt::print(out, "  {}: {}\n", arrow(a), ext_string(v));
  return 0;
}

// ---------------------------------------------------------------- site

int cmd_site(const Loaded& in, Format format, std::ostream& out) {
  AtomicQuantale q = [&] {
    if (const auto* qs = std::get_if<QuantaleSpec>(&in.spec.value)) return qs->quantale;
    return to_quantale(model_of(in.spec, "site").weighted.base());
  }();
  const SiteDescription s = site(q);
  const std::size_t k = s.objects().size();
  if (format == Format::json) {
    ojson j = header_json("site", in);
    ojson objs = ojson::array(), counts = ojson::array();
    for (const QElement& o : s.objects()) objs.push_back(o.atoms());
    for (std::size_t a = 0; a < k; ++a) {
      ojson row = ojson::array();
      for (std::size_t b = 0; b < k; ++b) row.push_back(s.hom(a, b).size());
      counts.push_back(row);
    }
    j["objects"] = objs;
    j["hom_counts"] = counts;
    finish(out, format, j);
    return 0;
  }
  header_table(out, "site", in);
  fmt::print(out, "\nobjects {}\n", k);
  for (std::size_t a = 0; a < k; ++a) fmt::print(out, "  o{} = {}\n", a, s.objects()[a].to_string());
  out << "\nhom counts (row = source, column = target)\n";
  std::vector<std::string> head{""};
  for (std::size_t b = 0; b < k; ++b) head.push_back("o" + std::to_string(b));
  Table t(head);
  for (std::size_t a = 0; a < k; ++a) {
    std::vector<std::string> row{"o" + std::to_string(a)};
    for (std::size_t b = 0; b < k; ++b) row.push_back(std::to_string(s.hom(a, b).size()));
    t.add(row);
  }
  t.print(out);
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact hypergroupoid algebras of finite permutation actions", "hyperq"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  std::string file;
  std::string format_name = "table";
  auto common = [&](CLI::App* sub) {
    sub->add_option("file", file, "input JSON file")->required();
    sub->add_option("--format", format_name, "output format")->check(CLI::IsMember({"table", "json"}));
  };

  auto* atoms = app.add_subcommand("atoms", "orbit table of a group action");
  common(atoms);
  auto* algebra = app.add_subcommand("algebra", "structure constants and weights");
  common(algebra);

  CheckOptions check_opt;
  std::size_t samples = 0;
  auto* check = app.add_subcommand("check", "quantale, hypergroupoid and weight identity checks");
  common(check);
  auto* exhaustive_flag = check->add_flag("--exhaustive", check_opt.exhaustive, "check every element triple");
  auto* samples_opt = check->add_option("--samples", samples, "number of random triples");
  check->add_option("--seed", check_opt.seed, "random seed for sampling");
  exhaustive_flag->excludes(samples_opt);

  auto* kms = app.add_subcommand("kms", "exact KMS check of the unit weight");
  common(kms);

  double t = 0;
  std::string element;
  auto* evolve = app.add_subcommand("evolve", "time evolution of an element");
  common(evolve);
  evolve->add_option("--t", t, "real time")->required();
  evolve->add_option("--element", element, "element literal, e.g. 2*[a3] + 1/2*[a0]")->required();

  std::string f_lit, g_lit;
  auto* convolve = app.add_subcommand("convolve", "convolution of extended-natural functions");
  common(convolve);
  convolve->add_option("--f", f_lit, "function literal")->required();
  convolve->add_option("--g", g_lit, "function literal")->required();

  auto* site_cmd = app.add_subcommand("site", "objects and hom counts of the site");
  common(site_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, r;
    const int code = app.exit(e, o, r);
    out << o.str();
    err << r.str();
    return code == 0 ? 0 : 2;
  }
  if (*samples_opt) check_opt.samples = samples;
  const Format format = format_name == "json" ? Format::json : Format::table;

  try {
    const Loaded in = load(file);
    if (atoms->parsed()) return cmd_atoms(in, format, out);
    if (algebra->parsed()) return cmd_algebra(in, format, out, err);
    if (check->parsed()) return cmd_check(in, check_opt, format, out, err);
    if (kms->parsed()) return cmd_kms(in, format, out, err);
    if (evolve->parsed()) return cmd_evolve(in, t, element, format, out);
    if (convolve->parsed()) return cmd_convolve(in, f_lit, g_lit, format, out);
    if (site_cmd->parsed()) return cmd_site(in, format, out);
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return 2;
  }
  return 2;
}

}  // namespace hyperq::cli
