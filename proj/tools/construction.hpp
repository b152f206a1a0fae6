#pragma once

// Construction files: JSON descriptions of HNN-extensions, amalgams and
// towers. The schema is in docs/construction.schema.json.

#include <string>
#include <variant>

#include "json.hpp"
#include "qgrp/checker.hpp"
#include "qgrp/errors.hpp"
#include "qgrp/tower.hpp"

namespace qgrp::cli {

/// The document does not match the schema. `pointer` is a JSON pointer.
class SchemaError : public InputError {
 public:
  SchemaError(const std::string& pointer, const std::string& what)
      : InputError((pointer.empty() ? "document" : pointer) + ": " + what), pointer_(pointer) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

/// An input file could not be read.
class FileError : public InputError {
 public:
  using InputError::InputError;
};

struct TowerStep {
  std::string v;  // raw token text evaluated in the tower built so far
  std::int64_t m = 1;
  std::string name;
};

struct TowerSpec {
  Alphabet alphabet{"a"};
  std::vector<TowerStep> steps;
  Tower build() const;
};

using Construction = std::variant<HNNData, AmalgamData, TowerSpec>;

/// Validates against the schema, then parses words. Throws SchemaError or InputError.
Construction parse_construction(const nlohmann::json& doc);
Construction load_construction(const std::string& path);

}  // namespace qgrp::cli
