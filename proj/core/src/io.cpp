#include "cptrefine/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cptrefine/error.hpp"

namespace cptrefine {

namespace {

using nlohmann::json;

constexpr double kRejectTolerance = 1e-6;
constexpr double kSilentTolerance = 1e-9;

const json& member(const json& object, const char* key, const std::string& where) {
  if (!object.is_object() || !object.contains(key)) {
    throw ValidationError(where + ": missing \"" + key + "\"");
  }
  return object.at(key);
}

Variable parse_variable(const json& node, const std::string& where) {
  const json& name = member(node, "name", where);
  const json& states = member(node, "states", where);
  if (!name.is_string() || !states.is_array()) {
    throw ValidationError(where + ": \"name\" must be a string and \"states\" an array");
  }
  Variable v{name.get<std::string>(), {}};
  for (const auto& s : states) {
    if (!s.is_string()) throw ValidationError(where + ": state labels must be strings");
    v.states.push_back(s.get<std::string>());
  }
  v.validate();
  return v;
}

std::string number(double v) { return json(v).dump(); }

}  // namespace

std::string describe_config(const Signature& signature, const ParentConfig& config) {
  std::string out;
  for (std::size_t i = 0; i < config.size(); ++i) {
    if (i) out += ", ";
    out += signature.parents[i].name + "=" + signature.parents[i].states[config[i]];
  }
  return out.empty() ? "(no parents)" : out;
}

LoadedCpt parse_cpt(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("invalid JSON: ") + e.what());
  }
  const json& format = member(doc, "format", "document");
  if (!format.is_number_integer() || format.get<int>() != kCptFormatVersion) {
    throw ValidationError("unsupported CPT format (expected \"format\": 1)");
  }
  Signature sig{parse_variable(member(doc, "child", "document"), "child"), {}};
  const json& parents = member(doc, "parents", "document");
  if (!parents.is_array()) throw ValidationError("\"parents\" must be an array");
  for (std::size_t i = 0; i < parents.size(); ++i) {
    sig.parents.push_back(parse_variable(parents[i], "parent " + std::to_string(i)));
  }
  sig.validate();
  const CptShape shape = sig.shape();
  const std::size_t card = shape.child_card;

  const json& rows = member(doc, "rows", "document");
  if (!rows.is_array()) throw ValidationError("\"rows\" must be an array");
  std::vector<double> probs(shape.row_count() * card);
  std::vector<bool> seen(shape.row_count(), false);
  std::vector<std::string> warnings;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string where = "row " + std::to_string(i);
    const json& config_node = member(rows[i], "config", where);
    const json& probs_node = member(rows[i], "probs", where);
    if (!config_node.is_array() || config_node.size() != sig.parents.size()) {
      throw ValidationError(where + ": \"config\" needs one state label per parent");
    }
    ParentConfig config(sig.parents.size());
    for (std::size_t p = 0; p < config.size(); ++p) {
      if (!config_node[p].is_string()) throw ValidationError(where + ": state labels must be strings");
      config[p] = sig.parents[p].state_index(config_node[p].get<std::string>());
    }
    const std::size_t k = shape.row_index(config);
    const std::string label = describe_config(sig, config);
    if (seen[k]) throw ValidationError("duplicate configuration " + label);
    seen[k] = true;
    if (!probs_node.is_array() || probs_node.size() != card) {
      throw ValidationError(label + ": \"probs\" needs " + std::to_string(card) + " numbers");
    }
    double sum = 0.0;
    for (std::size_t c = 0; c < card; ++c) {
      if (!probs_node[c].is_number()) throw ValidationError(label + ": probabilities must be numbers");
      const double p = probs_node[c].get<double>();
      if (!(p >= 0.0 && p <= 1.0)) throw ValidationError(label + ": probability outside [0,1]");
      probs[k * card + c] = p;
      sum += p;
    }
    const double drift = std::abs(sum - 1.0);
    if (drift > kRejectTolerance) {
      std::ostringstream msg;
      msg << label << ": probabilities sum to " << sum;
      throw ValidationError(msg.str());
    }
    if (drift > kSilentTolerance) {
      for (std::size_t c = 0; c < card; ++c) probs[k * card + c] /= sum;
      std::ostringstream msg;
      msg << label << ": renormalized row summing to " << sum;
      warnings.push_back(msg.str());
    }
  }
  for (std::size_t k = 0; k < seen.size(); ++k) {
    if (!seen[k]) {
      throw ValidationError("missing configuration " + describe_config(sig, shape.config_of(k)));
    }
  }
  return {Cpt(std::move(sig), std::move(probs)), std::move(warnings)};
}

LoadedCpt load_cpt(const std::filesystem::path& path) { return parse_cpt(read_file(path)); }

std::string format_cpt(const Cpt& cpt) {
  auto variable = [](const Variable& v) {
    return "{\"name\": " + json(v.name).dump() + ", \"states\": " +
           [&] {
             std::string s = "[";
             for (std::size_t i = 0; i < v.states.size(); ++i) {
               if (i) s += ", ";
               s += json(v.states[i]).dump();
             }
             return s + "]";
           }() +
           "}";
  };
  const Signature& sig = cpt.signature();
  std::string out = "{\n  \"format\": 1,\n  \"child\": " + variable(sig.child) + ",\n";
  out += "  \"parents\": [";
  for (std::size_t i = 0; i < sig.parents.size(); ++i) {
    out += i ? ",\n    " : "\n    ";
    out += variable(sig.parents[i]);
  }
  out += sig.parents.empty() ? "],\n" : "\n  ],\n";
  out += "  \"rows\": [";
  for (std::size_t k = 0; k < cpt.row_count(); ++k) {
    const ParentConfig config = cpt.shape().config_of(k);
    out += k ? ",\n    " : "\n    ";
    out += "{\"config\": [";
    for (std::size_t p = 0; p < config.size(); ++p) {
      if (p) out += ", ";
      out += json(sig.parents[p].states[config[p]]).dump();
    }
    out += "], \"probs\": [";
    const auto row = cpt.row(k);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ", ";
      out += number(row[c]);
    }
    out += "]}";
  }
  out += "\n  ]\n}\n";
  return out;
}

void save_cpt(const Cpt& cpt, const std::filesystem::path& path) {
  write_file_atomic(path, format_cpt(cpt));
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace cptrefine
