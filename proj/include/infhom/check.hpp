#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "infhom/linalg.hpp"

namespace infhom {

/// Where and how a condition failed: the basis indices involved (named, in a
/// fixed order) and the exact offending value.
struct Witness {
  std::vector<std::pair<std::string, std::int64_t>> indices;
  std::string description;
  std::optional<Matrix> matrix_value;
  std::optional<Vector> vector_value;

  Witness& at(std::string name, std::int64_t value) {
    indices.emplace_back(std::move(name), value);
    return *this;
  }
  Witness& describe(std::string text) {
    description = std::move(text);
    return *this;
  }
  Witness& with(Matrix m) {
    matrix_value = std::move(m);
    return *this;
  }
  Witness& with(Vector v) {
    vector_value = std::move(v);
    return *this;
  }
};

struct CheckResult {
  bool pass = true;
  std::optional<Witness> witness;

  static CheckResult ok() { return {}; }
  static CheckResult fail(Witness w) { return {false, std::move(w)}; }
  explicit operator bool() const { return pass; }
};

}  // namespace infhom
