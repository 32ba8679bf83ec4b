#include "cptrefine/report.hpp"

#include <algorithm>
#include <cstdio>

#include "cptrefine/io.hpp"
#include "cptrefine/partitions.hpp"
#include "cptrefine/structural.hpp"

namespace cptrefine {

std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  std::string s = buf;
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
  return s;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

MethodOutcome make_outcome(const Cpt& truth, const RefinementSpec& spec, ApproxResult approx) {
  const ParamSavings counts = param_savings(spec, truth.shape());
  ReportRow row{method_name(spec), approx.score, counts.free_params, counts.savings,
                describe(spec, truth.signature())};
  return {std::move(row), spec, std::move(approx)};
}

std::vector<MethodOutcome> reproduce(const Cpt& truth, const ReproduceOptions& options) {
  auto announce = [&](const char* name) {
    if (options.on_method) options.on_method(name);
  };
  std::vector<MethodOutcome> out;

  announce("Pruning");
  auto pruned = prune_best(truth);
  out.push_back(make_outcome(truth, pruned.spec, std::move(pruned.result)));

  announce("Divorcing");
  auto divorced = divorce_best(truth, 2);
  out.push_back(make_outcome(truth, divorced.spec, std::move(divorced.result)));

  announce("SCM");
  SearchResult scm = truth.row_count() <= kMaxBipartitionItems
                         ? scm_bruteforce(truth, options.progress)
                         : scm_ga(truth, options.ga, options.progress);
  out.push_back(make_outcome(truth, scm.best_spec, std::move(scm.approx)));

  announce("ICI");
  SearchResult ici = optimize_ici(truth, options.ga, options.progress);
  out.push_back(make_outcome(truth, ici.best_spec, std::move(ici.approx)));

  announce("SICI");
  SiciSearchResult sici = optimize_sici(truth, options.ga, options.progress);
  const SearchResult& best = sici.best().result;
  out.push_back(make_outcome(truth, best.best_spec, best.approx));
  return out;
}

std::string report_csv(const std::vector<MethodOutcome>& outcomes) {
  std::string out = "method,optimal_score,free_parameters,parameter_savings,spec\n";
  for (const auto& o : outcomes) {
    out += csv_field(o.row.method) + "," + format_fixed(o.row.score) + "," +
           std::to_string(o.row.free_params) + "," + std::to_string(o.row.savings) + "," +
           csv_field(o.row.summary) + "\n";
  }
  return out;
}

std::string report_text(const std::vector<MethodOutcome>& outcomes) {
  std::vector<std::vector<std::string>> cells{
      {"Method", "Optimal Score (4dp)", "Number of Parameters", "Parameter Savings"}};
  for (const auto& o : outcomes) {
    cells.push_back({o.row.method, format_fixed(o.row.score), std::to_string(o.row.free_params),
                     std::to_string(o.row.savings)});
  }
  std::vector<std::size_t> width(cells[0].size(), 0);
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  }
  std::string out;
  for (std::size_t l = 0; l < cells.size(); ++l) {
    for (std::size_t c = 0; c < cells[l].size(); ++c) {
      if (c) out += "  ";
      const std::string& s = cells[l][c];
      if (c == 0) {
        out += s + std::string(width[c] - s.size(), ' ');
      } else {
        out += std::string(width[c] - s.size(), ' ') + s;
      }
    }
    out += "\n";
    if (l == 0) {
      std::size_t total = 2 * (width.size() - 1);
      for (auto w : width) total += w;
      out += std::string(total, '-') + "\n";
    }
  }
  for (const auto& o : outcomes) out += o.row.method + ": " + o.row.summary + "\n";
  return out;
}

std::string approximations_csv(const Cpt& truth, const std::vector<MethodOutcome>& outcomes) {
  const Signature& sig = truth.signature();
  std::string out = "row";
  for (const auto& p : sig.parents) out += "," + csv_field(p.name);
  auto columns = [&](const std::string& prefix) {
    for (const auto& s : sig.child.states) out += "," + csv_field(prefix + ":" + s);
  };
  columns("Truth");
  for (const auto& o : outcomes) columns(o.row.method);
  out += "\n";
  for (std::size_t k = 0; k < truth.row_count(); ++k) {
    out += std::to_string(k + 1);
    const ParentConfig config = truth.shape().config_of(k);
    for (std::size_t p = 0; p < config.size(); ++p) {
      out += "," + csv_field(sig.parents[p].states[config[p]]);
    }
    for (double v : truth.row(k)) out += "," + format_fixed(v);
    for (const auto& o : outcomes) {
      for (double v : o.approx.cpt.row(k)) out += "," + format_fixed(v);
    }
    out += "\n";
  }
  out += "score";
  for (std::size_t i = 0; i < sig.parents.size() + sig.child.states.size(); ++i) out += ",";
  for (const auto& o : outcomes) {
    out += "," + format_fixed(o.row.score);
    for (std::size_t s = 1; s < sig.child.states.size(); ++s) out += ",";
  }
  return out + "\n";
}

std::string row_breakdown(const Cpt& truth, const std::vector<double>& distances) {
  std::string out;
  for (std::size_t k = 0; k < distances.size(); ++k) {
    out += std::to_string(k + 1) + "  " +
           describe_config(truth.signature(), truth.shape().config_of(k)) + "  " +
           format_fixed(distances[k]) + "\n";
  }
  return out;
}

}  // namespace cptrefine
