#include "cptrefine/cpt.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "cptrefine/error.hpp"

namespace cptrefine {

namespace {

constexpr double kRowSumTolerance = 1e-9;
constexpr std::size_t kMaxRows = std::size_t{1} << 32;

}  // namespace

std::size_t Variable::state_index(std::string_view label) const {
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i] == label) return i;
  }
  throw ValidationError("variable '" + name + "' has no state '" +
                        std::string(label) + "'");
}

void Variable::validate() const {
  if (states.size() < 2) {
    throw ValidationError("variable '" + name + "' needs at least two states");
  }
  std::set<std::string_view> seen;
  for (const auto& s : states) {
    if (!seen.insert(s).second) {
      throw ValidationError("variable '" + name + "' repeats state '" + s + "'");
    }
  }
}

std::size_t CptShape::row_count() const {
  std::size_t rows = 1;
  for (auto c : parent_cards) rows *= c;
  return rows;
}

void CptShape::validate() const {
  if (child_card < 2) throw ValidationError("child cardinality must be at least 2");
  std::size_t rows = 1;
  for (auto c : parent_cards) {
    if (c < 1) throw ValidationError("parent cardinality must be at least 1");
    if (rows > kMaxRows / c) throw ValidationError("CPT has too many rows");
    rows *= c;
  }
}

std::size_t CptShape::row_index(std::span<const std::size_t> config) const {
  if (config.size() != parent_cards.size()) {
    throw ShapeMismatch("configuration has " + std::to_string(config.size()) +
                          " entries, expected " +
                          std::to_string(parent_cards.size()));
  }
  std::size_t index = 0;
  std::size_t stride = 1;
  for (std::size_t i = 0; i < config.size(); ++i) {
    if (config[i] >= parent_cards[i]) {
      throw ValidationError("state " + std::to_string(config[i]) +
                            " out of range for parent " + std::to_string(i));
    }
    index += config[i] * stride;
    stride *= parent_cards[i];
  }
  return index;
}

ParentConfig CptShape::config_of(std::size_t row) const {
  if (row >= row_count()) {
    throw ValidationError("row " + std::to_string(row) + " out of range");
  }
  ParentConfig config(parent_cards.size());
  for (std::size_t i = 0; i < parent_cards.size(); ++i) {
    config[i] = row % parent_cards[i];
    row /= parent_cards[i];
  }
  return config;
}

std::uint64_t param_count(std::span<const std::size_t> parent_cards,
                          std::size_t child_card) {
  CptShape shape{{parent_cards.begin(), parent_cards.end()}, child_card};
  shape.validate();
  return static_cast<std::uint64_t>(shape.row_count()) * (child_card - 1);
}

std::uint64_t param_count(const CptShape& shape) {
  return param_count(shape.parent_cards, shape.child_card);
}

CptShape Signature::shape() const {
  CptShape s;
  s.child_card = child.cardinality();
  for (const auto& p : parents) s.parent_cards.push_back(p.cardinality());
  return s;
}

void Signature::validate() const {
  child.validate();
  std::set<std::string_view> names{child.name};
  for (const auto& p : parents) {
    p.validate();
    if (!names.insert(p.name).second) {
      throw ValidationError("variable name '" + p.name + "' used twice");
    }
  }
  shape().validate();
}

Signature Signature::anonymous(const CptShape& shape) {
  auto make = [](std::string name, std::size_t card) {
    Variable v{std::move(name), {}};
    for (std::size_t s = 0; s < card; ++s) v.states.push_back(std::to_string(s));
    return v;
  };
  Signature sig{make("Y", shape.child_card), {}};
  for (std::size_t i = 0; i < shape.parent_cards.size(); ++i) {
    sig.parents.push_back(make("X" + std::to_string(i + 1), shape.parent_cards[i]));
  }
  return sig;
}

std::size_t Signature::parent_index(std::string_view name) const {
  for (std::size_t i = 0; i < parents.size(); ++i) {
    if (parents[i].name == name) return i;
  }
  throw ValidationError("no parent named '" + std::string(name) + "'");
}

Cpt::Cpt(Signature signature, std::vector<double> probs)
    : signature_(std::move(signature)), probs_(std::move(probs)) {
  signature_.validate();
  shape_ = signature_.shape();
  const std::size_t rows = shape_.row_count();
  const std::size_t card = shape_.child_card;
  if (probs_.size() != rows * card) {
    throw ShapeMismatch("CPT expects " + std::to_string(rows * card) +
                        " probabilities, got " + std::to_string(probs_.size()));
  }
  for (std::size_t k = 0; k < rows; ++k) {
    double sum = 0.0;
    for (std::size_t c = 0; c < card; ++c) {
      const double p = probs_[k * card + c];
      if (!(p >= 0.0 && p <= 1.0)) {
        throw ValidationError("row " + std::to_string(k) +
                              " has probability outside [0,1]");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      std::ostringstream msg;
      msg.precision(12);
      msg << "row " << k << " sums to " << sum;
      throw ValidationError(msg.str());
    }
  }
}

Cpt::Cpt(const CptShape& shape, std::vector<double> probs)
    : Cpt(Signature::anonymous(shape), std::move(probs)) {}

std::span<const double> Cpt::row(std::size_t k) const {
  if (k >= row_count()) throw ValidationError("row " + std::to_string(k) + " out of range");
  return {probs_.data() + k * shape_.child_card, shape_.child_card};
}

Cpt Cpt::with_probs(std::vector<double> probs) const {
  return Cpt(signature_, std::move(probs));
}

Cpt mle_from_counts(const CountTable& table) {
  table.signature.validate();
  const CptShape shape = table.signature.shape();
  const std::size_t card = shape.child_card;
  if (table.counts.size() != shape.row_count() * card) {
    throw ShapeMismatch("count table does not match its signature");
  }
  std::vector<double> probs(table.counts.size());
  for (std::size_t k = 0; k < shape.row_count(); ++k) {
    std::uint64_t total = 0;
    for (std::size_t c = 0; c < card; ++c) total += table.counts[k * card + c];
    if (total == 0) {
      throw ValidationError("row " + std::to_string(k) + " has no observations");
    }
    for (std::size_t c = 0; c < card; ++c) {
      probs[k * card + c] =
          static_cast<double>(table.counts[k * card + c]) / static_cast<double>(total);
    }
  }
  return Cpt(table.signature, std::move(probs));
}

}  // namespace cptrefine
