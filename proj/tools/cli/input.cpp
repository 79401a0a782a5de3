#include "input.hpp"

#include <fstream>
#include <sstream>

#include <openssl/evp.h>

namespace hyperq::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& what) { throw ParseError(what); }

const json& field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) fail(std::string("missing field '") + key + "'");
  return obj.at(key);
}

std::size_t index_value(const json& v, const char* what) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    fail(std::string(what) + " must be a non-negative integer");
  return v.get<std::size_t>();
}

std::vector<std::size_t> index_list(const json& v, const char* what) {
  if (!v.is_array()) fail(std::string(what) + " must be an array");
  std::vector<std::size_t> out;
  for (const auto& x : v) out.push_back(index_value(x, what));
  return out;
}

Perm perm_value(const json& v, std::size_t degree, const char* what) {
  Perm p;
  for (std::size_t x : index_list(v, what)) p.push_back(static_cast<std::uint32_t>(x));
  if (p.size() != degree || !perm::is_permutation(p))
    fail(std::string(what) + " is not a permutation of " + std::to_string(degree) + " points");
  return p;
}

std::vector<Perm> perm_list(const json& v, std::size_t degree, const char* what) {
  if (!v.is_array()) fail(std::string(what) + " must be an array");
  std::vector<Perm> out;
  for (const auto& p : v) out.push_back(perm_value(p, degree, what));
  return out;
}

std::string name_of(const json& doc) {
  if (!doc.contains("name")) return "";
  if (!doc.at("name").is_string()) fail("'name' must be a string");
  return doc.at("name").get<std::string>();
}

ExtNat ext_value(const json& v) {
  if (v.is_string()) {
    if (v.get<std::string>() == "inf") return ExtNat::infinity();
    fail("structure constant strings must be \"inf\"");
  }
  return ExtNat(static_cast<std::uint64_t>(index_value(v, "structure constant")));
}

json ext_json(const ExtNat& e) { return e.is_infinite() ? json("inf") : json(e.value()); }

ActionSpec parse_action(const json& doc) {
  ActionSpec spec;
  spec.name = name_of(doc);
  spec.action.point_count = index_value(field(doc, "points"), "points");
  if (spec.action.point_count == 0) fail("'points' must be positive");
  spec.action.generators = perm_list(field(doc, "generators"), spec.action.point_count, "generator");
  return spec;
}

CosetSpec parse_coset(const json& doc) {
  CosetSpec spec;
  spec.name = name_of(doc);
  spec.degree = index_value(field(doc, "degree"), "degree");
  spec.group_generators = perm_list(field(doc, "group_generators"), spec.degree, "group generator");
  const json& subs = field(doc, "subgroups");
  if (!subs.is_array() || subs.empty()) fail("'subgroups' must be a non-empty array");
  for (const auto& s : subs) {
    Subgroup k;
    k.name = name_of(s);
    k.generators = perm_list(field(s, "generators"), spec.degree, "subgroup generator");
    spec.subgroups.push_back(std::move(k));
  }
  return spec;
}

AbstractSpec parse_abstract(const json& doc) {
  const std::size_t units = index_value(field(doc, "units"), "units");
  const json& arrows_doc = field(doc, "arrows");
  if (!arrows_doc.is_array()) fail("'arrows' must be an array");
  std::vector<ArrowInfo> arrows;
  for (const auto& a : arrows_doc)
    arrows.push_back({index_value(field(a, "src"), "src"), index_value(field(a, "tgt"), "tgt"),
                      index_value(field(a, "star"), "star")});
  const std::size_t n = arrows.size();
  const std::vector<ArrowId> unit_arrows = index_list(field(doc, "unit_arrows"), "unit arrow");

  std::vector<std::vector<ArrowId>> comp(n * n);
  const json& comp_doc = field(doc, "comp");
  if (!comp_doc.is_array()) fail("'comp' must be an array");
  for (const auto& c : comp_doc) {
    const std::size_t g = index_value(field(c, "left"), "left"), g2 = index_value(field(c, "right"), "right");
    if (g >= n || g2 >= n) fail("comp entry refers to an unknown arrow");
    if (!comp[g * n + g2].empty()) fail("comp entry for (a" + std::to_string(g) + ", a" + std::to_string(g2) + ") repeated");
    comp[g * n + g2] = index_list(field(c, "result"), "comp result");
    if (comp[g * n + g2].empty()) fail("comp results must be inhabited; omit empty pairs");
  }

  std::vector<std::vector<Term>> products(n * n);
  const json& mu_doc = field(doc, "mu");
  if (!mu_doc.is_array()) fail("'mu' must be an array");
  for (const auto& m : mu_doc) {
    if (!m.is_array() || m.size() != 4) fail("mu entries are [a, g, g', value]");
    const std::size_t a = index_value(m[0], "mu arrow"), g = index_value(m[1], "mu arrow"),
                      g2 = index_value(m[2], "mu arrow");
    if (a >= n || g >= n || g2 >= n) fail("mu entry refers to an unknown arrow");
    for (const Term& t : products[g * n + g2])
      if (t.arrow == a) fail("mu entry repeated");
    products[g * n + g2].push_back({a, ext_value(m[3])});
  }

  try {
    Hypergroupoid h(units, std::move(arrows), unit_arrows, std::move(comp));
    return {name_of(doc), WeightedHypergroupoid(std::move(h), std::move(products))};
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
}

QuantaleSpec parse_quantale(const json& doc) {
  const std::size_t n = index_value(field(doc, "atoms"), "atoms");
  if (n == 0) fail("'atoms' must be positive");
  const std::vector<AtomId> star = index_list(field(doc, "star"), "star");
  auto element = [&](const json& v) {
    QElement e(n);
    for (AtomId a : index_list(v, "atom")) {
      if (a >= n) fail("atom " + std::to_string(a) + " out of range");
      e.insert(a);
    }
    return e;
  };
  const QElement unit = element(field(doc, "unit"));
  std::vector<QElement> products(n * n, QElement(n));
  const json& prod_doc = field(doc, "products");
  if (!prod_doc.is_array()) fail("'products' must be an array");
  for (const auto& p : prod_doc) {
    const std::size_t a = index_value(field(p, "left"), "left"), b = index_value(field(p, "right"), "right");
    if (a >= n || b >= n) fail("product entry refers to an unknown atom");
    products[a * n + b] = element(field(p, "result"));
  }
  try {
    return {name_of(doc), AtomicQuantale(n, std::move(products), star, unit)};
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
}

json perm_json(const std::vector<Perm>& perms) {
  json out = json::array();
  for (const Perm& p : perms) out.push_back(p);
  return out;
}

}  // namespace

std::string_view InputSpec::kind() const {
  static constexpr std::string_view kinds[] = {"action", "coset", "abstract", "quantale"};
  return kinds[value.index()];
}

const std::string& InputSpec::name() const {
  return std::visit([](const auto& s) -> const std::string& { return s.name; }, value);
}

InputSpec parse_input(const json& doc) {
  if (!doc.is_object()) fail("input must be a JSON object");
  const json& schema = field(doc, "schema");
  if (!schema.is_string() || schema.get<std::string>() != kSchema)
    fail("unsupported schema; expected \"" + std::string(kSchema) + "\"");
  const json& kind = field(doc, "kind");
  if (!kind.is_string()) fail("'kind' must be a string");
  const std::string k = kind.get<std::string>();
  try {
    if (k == "action") return {parse_action(doc)};
    if (k == "coset") return {parse_coset(doc)};
    if (k == "abstract") return {parse_abstract(doc)};
    if (k == "quantale") return {parse_quantale(doc)};
  } catch (const json::exception& e) {
    fail(e.what());
  }
  fail("unknown kind '" + k + "'");
}

InputSpec parse_input(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  return parse_input(doc);
}

json to_json(const ActionSpec& spec) {
  return json{{"schema", kSchema},
              {"kind", "action"},
              {"name", spec.name},
              {"points", spec.action.point_count},
              {"generators", perm_json(spec.action.generators)}};
}

json to_json(const CosetSpec& spec) {
  json subs = json::array();
  for (const Subgroup& k : spec.subgroups) subs.push_back({{"name", k.name}, {"generators", perm_json(k.generators)}});
  return json{{"schema", kSchema},       {"kind", "coset"},
              {"name", spec.name},       {"degree", spec.degree},
              {"group_generators", perm_json(spec.group_generators)}, {"subgroups", subs}};
}

json to_json(const AbstractSpec& spec) {
  const Hypergroupoid& h = spec.table.base();
  json arrows = json::array(), comp = json::array(), mu = json::array();
  for (const ArrowInfo& a : h.arrows()) arrows.push_back({{"src", a.src}, {"tgt", a.tgt}, {"star", a.star}});
  for (ArrowId g = 0; g < h.arrow_count(); ++g)
    for (ArrowId g2 = 0; g2 < h.arrow_count(); ++g2) {
      const auto c = h.comp(g, g2);
      if (c.empty()) continue;
      comp.push_back({{"left", g}, {"right", g2}, {"result", std::vector<ArrowId>(c.begin(), c.end())}});
      for (const Term& t : spec.table.products(g, g2)) mu.push_back({t.arrow, g, g2, ext_json(t.coefficient)});
    }
  return json{{"schema", kSchema}, {"kind", "abstract"}, {"name", spec.name}, {"units", h.unit_count()},
              {"unit_arrows", h.unit_arrows()}, {"arrows", arrows}, {"comp", comp}, {"mu", mu}};
}

json to_json(const QuantaleSpec& spec) {
  const AtomicQuantale& q = spec.quantale;
  json star = json::array(), products = json::array();
  for (AtomId a = 0; a < q.atom_count(); ++a) star.push_back(q.atom_star(a));
  for (AtomId a = 0; a < q.atom_count(); ++a)
    for (AtomId b = 0; b < q.atom_count(); ++b)
      if (!q.atom_product(a, b).empty())
        products.push_back({{"left", a}, {"right", b}, {"result", q.atom_product(a, b).atoms()}});
  return json{{"schema", kSchema}, {"kind", "quantale"}, {"name", spec.name}, {"atoms", q.atom_count()},
              {"star", star}, {"unit", q.unit().atoms()}, {"products", products}};
}

PermAction action_of(const InputSpec& spec) {
  if (const auto* a = std::get_if<ActionSpec>(&spec.value)) return a->action;
  if (const auto* c = std::get_if<CosetSpec>(&spec.value)) return coset_union(*c).action;
  throw ParseError("input of kind '" + std::string(spec.kind()) + "' has no group action");
}

QuantaleMatrix parse_quantale_matrix(const AtomicQuantale& q, const json& rows) {
  if (!rows.is_array() || rows.empty() || !rows.front().is_array()) fail("matrix must be a non-empty array of rows");
  const std::size_t cols = rows.front().size();
  QuantaleMatrix m(rows.size(), cols, q.atom_count());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array() || rows[i].size() != cols) fail("matrix rows must have equal length");
    for (std::size_t j = 0; j < cols; ++j)
      for (AtomId a : index_list(rows[i][j], "atom")) {
        if (a >= q.atom_count()) fail("atom " + std::to_string(a) + " out of range");
        m.at(i, j).insert(a);
      }
  }
  return m;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("sha256: digest failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace hyperq::cli
