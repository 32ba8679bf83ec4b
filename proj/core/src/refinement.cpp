#include "cptrefine/refinement.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "cptrefine/error.hpp"

namespace cptrefine {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::uint64_t product(const CptShape& shape, const std::vector<std::size_t>& parents) {
  std::uint64_t p = 1;
  for (auto i : parents) p *= shape.parent_cards.at(i);
  return p;
}

std::uint64_t pow2(std::size_t n) {
  if (n >= 63) throw ValidationError("too many mechanisms");
  return std::uint64_t{1} << n;
}

std::string join_states(const Variable& v, std::uint32_t mask) {
  std::string out;
  for (std::size_t s = 0; s < v.cardinality(); ++s) {
    if (!(mask & (1u << s))) continue;
    if (!out.empty()) out += "+";
    out += v.states[s];
  }
  return out;
}

std::string bits(const std::vector<std::uint32_t>& labels) {
  std::string out;
  for (auto l : labels) out += std::to_string(l);
  return out;
}

std::string blocks_text(const ParentPartition& blocks, const Signature& sig) {
  std::string out = "{";
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (b) out += " | ";
    for (std::size_t j = 0; j < blocks[b].size(); ++j) {
      if (j) out += ",";
      out += sig.parents.at(blocks[b][j]).name;
    }
  }
  return out + "}";
}

}  // namespace

const char* to_string(Gate gate) {
  switch (gate) {
    case Gate::kAnd: return "AND";
    case Gate::kOr: return "OR";
    case Gate::kXor: return "XOR";
  }
  return "?";
}

Gate gate_from_string(std::string_view name) {
  std::string upper(name);
  for (auto& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (upper == "AND") return Gate::kAnd;
  if (upper == "OR") return Gate::kOr;
  if (upper == "XOR") return Gate::kXor;
  throw ValidationError("unknown gate '" + std::string(name) + "' (expected AND, OR or XOR)");
}

void validate_parent_partition(const ParentPartition& blocks, std::size_t parent_count) {
  std::vector<bool> seen(parent_count, false);
  for (const auto& block : blocks) {
    if (block.empty()) throw ValidationError("parent partition has an empty block");
    for (auto i : block) {
      if (i >= parent_count) throw ValidationError("parent partition names an unknown parent");
      if (seen[i]) throw ValidationError("parent partition repeats a parent");
      seen[i] = true;
    }
  }
  for (std::size_t i = 0; i < parent_count; ++i) {
    if (!seen[i]) throw ValidationError("parent partition misses parent " + std::to_string(i));
  }
}

std::size_t block_config_count(const CptShape& shape, const std::vector<std::size_t>& block) {
  return static_cast<std::size_t>(product(shape, block));
}

std::size_t block_config_index(const CptShape& shape, const std::vector<std::size_t>& block,
                               std::span<const std::size_t> config) {
  std::size_t index = 0;
  std::size_t stride = 1;
  for (auto i : block) {
    index += config[i] * stride;
    stride *= shape.parent_cards[i];
  }
  return index;
}

ParamSavings param_savings(const RefinementSpec& spec, const CptShape& shape) {
  shape.validate();
  const std::uint64_t full = param_count(shape);
  const std::uint64_t per_row = shape.child_card - 1;
  const std::size_t n = shape.parent_count();
  const std::uint64_t free = std::visit(
      Overloaded{
          [&](const PruneSpec& s) -> std::uint64_t {
            if (s.pruned_parent >= n) throw ValidationError("pruned parent out of range");
            return full / shape.parent_cards[s.pruned_parent];
          },
          [&](const DivorceSpec& s) -> std::uint64_t {
            std::vector<std::size_t> rest;
            for (std::size_t i = 0; i < n; ++i) {
              if (std::find(s.divorced.begin(), s.divorced.end(), i) == s.divorced.end()) {
                rest.push_back(i);
              }
            }
            return 2 * product(shape, rest) * per_row;
          },
          [&](const ScmSpec&) -> std::uint64_t { return 2 * per_row; },
          [&](const IciSpec&) -> std::uint64_t {
            std::uint64_t sum = 0;
            for (auto c : shape.parent_cards) sum += c;
            return sum;
          },
          [&](const PiciSpec&) -> std::uint64_t {
            std::uint64_t sum = 0;
            for (auto c : shape.parent_cards) sum += c;
            return sum + pow2(n) * per_row;
          },
          [&](const SiciSpec& s) -> std::uint64_t {
            std::uint64_t sum = 0;
            for (const auto& block : s.blocks) sum += product(shape, block);
            if (!s.is_upper_stochastic()) sum += pow2(s.blocks.size()) * per_row;
            return sum;
          },
      },
      spec);
  return {free, static_cast<std::int64_t>(full) - static_cast<std::int64_t>(free)};
}

std::string method_name(const RefinementSpec& spec) {
  return std::visit(Overloaded{
                        [](const PruneSpec&) { return std::string("Pruning"); },
                        [](const DivorceSpec&) { return std::string("Divorcing"); },
                        [](const ScmSpec&) { return std::string("SCM"); },
                        [](const IciSpec&) { return std::string("ICI"); },
                        [](const PiciSpec&) { return std::string("PICI"); },
                        [](const SiciSpec& s) {
                          return std::string(s.is_upper_stochastic() ? "SICI" : "DS-SICI");
                        },
                    },
                    spec);
}

std::string describe(const RefinementSpec& spec, const Signature& sig) {
  return std::visit(
      Overloaded{
          [&](const PruneSpec& s) { return "prune " + sig.parents.at(s.pruned_parent).name; },
          [&](const DivorceSpec& s) {
            std::string out = std::string(to_string(s.gate)) + "(";
            for (std::size_t j = 0; j < s.divorced.size(); ++j) {
              const auto& v = sig.parents.at(s.divorced[j]);
              if (j) out += "; ";
              out += v.name + "=" + join_states(v, s.binarization.at(j));
            }
            return out + ")";
          },
          [&](const ScmSpec& s) {
            std::ostringstream out;
            std::size_t ones = 0;
            for (auto b : s.block) ones += b;
            out << "M=1 on " << ones << " of " << s.block.size() << " configurations: rows";
            for (std::size_t r = 0; r < s.block.size(); ++r) {
              if (s.block[r]) out << ' ' << (r + 1);
            }
            return out.str();
          },
          [&](const IciSpec& s) { return "f(m)=" + bits(s.combiner); },
          [&](const PiciSpec&) { return std::string("stochastic lower CPT"); },
          [&](const SiciSpec& s) {
            std::string out = blocks_text(s.blocks, sig);
            if (s.is_upper_stochastic()) out += " f(m)=" + bits(s.combiner);
            return out;
          },
      },
      spec);
}

}  // namespace cptrefine
