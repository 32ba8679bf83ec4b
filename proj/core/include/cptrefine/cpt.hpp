#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cptrefine {

/// One state index per parent, in parent order.
using ParentConfig = std::vector<std::size_t>;

/// A discrete variable with named, ordered states.
struct Variable {
  std::string name;
  std::vector<std::string> states;

  std::size_t cardinality() const { return states.size(); }

  /// Index of `label`, or throws ValidationError.
  std::size_t state_index(std::string_view label) const;

  /// Throws unless there are at least two states with unique labels.
  void validate() const;

  friend bool operator==(const Variable&, const Variable&) = default;
};

/// Cardinalities only. Rows are indexed mixed-radix with the first parent
/// varying fastest.
struct CptShape {
  std::vector<std::size_t> parent_cards;
  std::size_t child_card = 2;

  std::size_t parent_count() const { return parent_cards.size(); }
  std::size_t row_count() const;

  std::size_t row_index(std::span<const std::size_t> config) const;
  ParentConfig config_of(std::size_t row) const;

  void validate() const;

  friend bool operator==(const CptShape&, const CptShape&) = default;
};

/// Free parameters of a full CPT: (product of parent cardinalities) * (child_card - 1).
std::uint64_t param_count(std::span<const std::size_t> parent_cards,
                          std::size_t child_card);
std::uint64_t param_count(const CptShape& shape);

/// Child and parent variables of a local structure.
struct Signature {
  Variable child;
  std::vector<Variable> parents;

  CptShape shape() const;
  void validate() const;

  /// Labels "X1".."Xn" / "Y" with states "0".."s-1".
  static Signature anonymous(const CptShape& shape);

  /// Index of the parent called `name`, or throws ValidationError.
  std::size_t parent_index(std::string_view name) const;

  friend bool operator==(const Signature&, const Signature&) = default;
};

/// A conditional probability table: one child distribution per parent
/// configuration, stored row-major.
class Cpt {
 public:
  /// Row sums must be within 1e-9 of one; entries must lie in [0,1].
  Cpt(Signature signature, std::vector<double> probs);

  /// Default-labelled table (see Signature::anonymous).
  Cpt(const CptShape& shape, std::vector<double> probs);

  const Signature& signature() const { return signature_; }
  const Variable& child() const { return signature_.child; }
  const std::vector<Variable>& parents() const { return signature_.parents; }
  const CptShape& shape() const { return shape_; }

  std::size_t row_count() const { return shape_.row_count(); }
  std::size_t child_card() const { return shape_.child_card; }

  std::span<const double> row(std::size_t k) const;
  std::span<const double> row(std::span<const std::size_t> config) const {
    return row(shape_.row_index(config));
  }
  double at(std::size_t k, std::size_t child_state) const {
    return probs_[k * shape_.child_card + child_state];
  }
  const std::vector<double>& probs() const { return probs_; }

  /// Same labels, new probabilities.
  Cpt with_probs(std::vector<double> probs) const;

  friend bool operator==(const Cpt&, const Cpt&) = default;

 private:
  Signature signature_;
  CptShape shape_;
  std::vector<double> probs_;
};

/// Nonnegative counts n_{c(k)} per row and child state.
struct CountTable {
  Signature signature;
  std::vector<std::uint64_t> counts;
};

/// Maximum-likelihood CPT p(c|k) = n_{c(k)} / n_{(k)}. A row with zero total is
/// an error.
Cpt mle_from_counts(const CountTable& counts);

}  // namespace cptrefine
