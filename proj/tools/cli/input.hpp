#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <hyperq/hyperq.hpp>
#include <json.hpp>

namespace hyperq::cli {

inline constexpr std::string_view kSchema = "hyperq/1";

/// A weighted hypergroupoid given directly by its tables.
struct AbstractSpec {
  std::string name;
  WeightedHypergroupoid table;
};

struct QuantaleSpec {
  std::string name;
  AtomicQuantale quantale;
};

struct ActionSpec {
  std::string name;
  PermAction action;
};

struct InputSpec {
  std::variant<ActionSpec, CosetSpec, AbstractSpec, QuantaleSpec> value;

  std::string_view kind() const;
  const std::string& name() const;
  bool is_realizable() const { return value.index() <= 1; }
};

/// Throws ParseError on malformed documents or inconsistent tables.
InputSpec parse_input(std::string_view text);
InputSpec parse_input(const nlohmann::json& doc);

nlohmann::json to_json(const ActionSpec& spec);
nlohmann::json to_json(const CosetSpec& spec);
nlohmann::json to_json(const AbstractSpec& spec);
nlohmann::json to_json(const QuantaleSpec& spec);

/// The action a realizable input describes (coset specs use all their subgroups).
PermAction action_of(const InputSpec& spec);

/// The quantale element `[[atoms...], ...]` matrix layout used by Q-set fixtures.
QuantaleMatrix parse_quantale_matrix(const AtomicQuantale& q, const nlohmann::json& rows);

/// SHA-256 of the bytes, lowercase hex.
std::string sha256_hex(std::string_view bytes);

/// Reads a whole file; throws ParseError when it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace hyperq::cli
