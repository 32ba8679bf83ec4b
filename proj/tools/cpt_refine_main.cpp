// cpt-refine: approximate a conditional probability table with structural
// refinements and report how close each approximation gets.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cptrefine/cptrefine.hpp"

namespace fs = std::filesystem;
using namespace cptrefine;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitShape = 3;
constexpr int kExitGuard = 4;

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

class Progress {
 public:
  explicit Progress(bool quiet) : quiet_(quiet) {}

  void method(const std::string& name) {
    finish();
    if (!quiet_) std::cerr << name << "...\n";
  }

  SearchProgressFn callback() {
    if (quiet_) return {};
    return [this](const SearchProgress& p) { report(p); };
  }

  void finish() {
    if (dirty_) std::cerr << "\n";
    dirty_ = false;
  }

 private:
  void report(const SearchProgress& p) {
    const auto now = std::chrono::steady_clock::now();
    const bool done = p.total != 0 && p.evaluations >= p.total;
    if (!done && now - last_ < std::chrono::milliseconds(250)) return;
    last_ = now;
    char line[160];
    if (p.total) {
      std::snprintf(line, sizeof line, "\r  %llu / %llu evaluated (%.1f%%), best %.4f",
                    static_cast<unsigned long long>(p.evaluations),
                    static_cast<unsigned long long>(p.total),
                    100.0 * static_cast<double>(p.evaluations) / static_cast<double>(p.total),
                    p.best_score);
    } else {
      std::snprintf(line, sizeof line, "\r  %llu evaluations, best %.4f",
                    static_cast<unsigned long long>(p.evaluations), p.best_score);
    }
    std::cerr << line << std::flush;
    dirty_ = true;
  }

  bool quiet_;
  bool dirty_ = false;
  std::chrono::steady_clock::time_point last_{};
};

struct GaFlags {
  std::uint64_t seed = GaConfig{}.seed;
  std::size_t restarts = GaConfig{}.restarts;
  std::size_t population = GaConfig{}.population;
  std::size_t generations = GaConfig{}.max_generations;

  void attach(CLI::App& cmd) {
    cmd.add_option("--seed", seed, "First GA seed; restart r uses seed + r")->capture_default_str();
    cmd.add_option("--restarts", restarts, "Independent GA restarts")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--population", population, "GA population size")
        ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20))
        ->capture_default_str();
    cmd.add_option("--generations", generations, "GA generation limit")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }

  GaConfig config() const {
    GaConfig c;
    c.seed = seed;
    c.restarts = restarts;
    c.population = population;
    c.max_generations = generations;
    return c;
  }
};

void print_outcome(const Cpt& truth, const MethodOutcome& o) {
  std::cout << "method:      " << o.row.method << "\n"
            << "spec:        " << o.row.summary << "\n"
            << "score:       " << format_fixed(o.row.score) << "\n"
            << "free params: " << o.row.free_params << " of "
            << param_count(truth.shape()) << " (saves " << o.row.savings << ")\n";
}

void emit(const Cpt& truth, const MethodOutcome& o, const std::string& out) {
  print_outcome(truth, o);
  if (!out.empty()) {
    save_cpt(o.approx.cpt, out);
    std::cout << "wrote:       " << out << "\n";
  }
}

LoadedCpt load_truth(const std::string& path) {
  LoadedCpt loaded = load_cpt(path);
  for (const auto& w : loaded.warnings) std::cerr << "warning: " << path << ": " << w << "\n";
  return loaded;
}

void require_same_signature(const Cpt& a, const Cpt& b) {
  if (!(a.shape().parent_cards == b.shape().parent_cards) ||
      a.shape().child_card != b.shape().child_card) {
    throw ShapeMismatch("tables have different shapes");
  }
  const Signature& x = a.signature();
  const Signature& y = b.signature();
  if (x.child.name != y.child.name || x.child.states != y.child.states) {
    throw ShapeMismatch("child variables differ");
  }
  for (std::size_t i = 0; i < x.parents.size(); ++i) {
    if (x.parents[i].name != y.parents[i].name || x.parents[i].states != y.parents[i].states) {
      throw ShapeMismatch("parent " + std::to_string(i + 1) + " differs: " + x.parents[i].name +
                          " vs " + y.parents[i].name);
    }
  }
}

std::size_t parent_by_name(const Signature& sig, const std::string& name) {
  return sig.parent_index(name);
}

/// "A | B,C" -> {{A}, {B, C}}
ParentPartition parse_partition(const Signature& sig, const std::string& text) {
  ParentPartition blocks;
  for (const auto& block_text : split(text, '|')) {
    std::vector<std::size_t> block;
    for (const auto& name : split(block_text, ',')) {
      if (name.empty()) throw ValidationError("empty parent name in partition \"" + text + "\"");
      block.push_back(parent_by_name(sig, name));
    }
    blocks.push_back(std::move(block));
  }
  validate_parent_partition(blocks, sig.parents.size());
  return blocks;
}

/// "SleepDuration=<6hours,>9hours": the listed states feed gate input 1.
std::map<std::size_t, std::uint32_t> parse_maps(const Signature& sig,
                                                const std::vector<std::string>& maps) {
  std::map<std::size_t, std::uint32_t> out;
  for (const auto& m : maps) {
    const auto eq = m.find('=');
    if (eq == std::string::npos) throw ValidationError("--map expects Name=state[,state...]: " + m);
    const std::size_t p = parent_by_name(sig, trim(m.substr(0, eq)));
    if (out.count(p)) throw ValidationError("--map given twice for " + sig.parents[p].name);
    std::uint32_t mask = 0;
    for (const auto& state : split(m.substr(eq + 1), ',')) {
      mask |= std::uint32_t{1} << sig.parents[p].state_index(state);
    }
    out[p] = mask;
  }
  return out;
}

DivorceSpec build_divorce(const Signature& sig, const std::string& parents,
                          const std::string& gate, const std::vector<std::string>& maps) {
  DivorceSpec spec;
  spec.gate = gate_from_string(gate);
  for (const auto& name : split(parents, ',')) spec.divorced.push_back(parent_by_name(sig, name));
  auto masks = parse_maps(sig, maps);
  for (std::size_t p : spec.divorced) {
    auto it = masks.find(p);
    if (it != masks.end()) {
      spec.binarization.push_back(it->second);
      masks.erase(it);
    } else if (sig.parents[p].cardinality() == 2) {
      spec.binarization.push_back(0b10);
    } else {
      throw ValidationError("parent " + sig.parents[p].name +
                            " has more than two states and needs --map");
    }
  }
  if (!masks.empty()) {
    throw ValidationError("--map names " + sig.parents[masks.begin()->first].name +
                          ", which is not in --parents");
  }
  return spec;
}

int run(int argc, char** argv) {
  CLI::App app{"Approximate a conditional probability table with structural refinements"};
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "No progress output on stderr");

  // score
  auto* score_cmd = app.add_subcommand("score", "Score an approximation against the truth");
  std::string truth_path, approx_path, metric_name = "tvd";
  double epsilon = kDefaultKlEpsilon;
  bool verbose = false;
  score_cmd->add_option("truth", truth_path, "Ground-truth CPT (JSON)")->required();
  score_cmd->add_option("approx", approx_path, "Approximate CPT (JSON)")->required();
  score_cmd->add_option("--metric", metric_name, "tvd or kl")
      ->check(CLI::IsMember({"tvd", "kl"}))
      ->capture_default_str();
  score_cmd->add_option("--epsilon", epsilon, "KL smoothing added to the approximation");
  score_cmd->add_flag("-v,--verbose", verbose, "Print the per-row breakdown");

  // reproduce
  auto* repro_cmd = app.add_subcommand("reproduce", "Run all five methods and write the report");
  std::string report_path = "report.csv", out_dir;
  GaFlags repro_ga;
  repro_cmd->add_option("truth", truth_path, "Ground-truth CPT (JSON)")->required();
  repro_ga.attach(*repro_cmd);
  repro_cmd->add_option("--out", report_path, "Method table (CSV)")->capture_default_str();
  repro_cmd->add_option("--out-dir", out_dir, "Also write each method's CPT as JSON here");

  // per-method commands
  std::string out_path;
  auto add_method = [&](const char* name, const char* help) {
    auto* cmd = app.add_subcommand(name, help);
    cmd->add_option("truth", truth_path, "Ground-truth CPT (JSON)")->required();
    cmd->add_option("--out", out_path, "Write the expanded approximation (JSON)");
    return cmd;
  };

  std::string prune_parent;
  auto* prune_cmd = add_method("prune", "Remove one parent edge");
  prune_cmd->add_option("--parent", prune_parent, "Parent to prune (default: best)");

  std::string divorce_parents, gate_name;
  std::vector<std::string> maps;
  auto* divorce_cmd = add_method("divorce", "Route parents through a gate node");
  auto* parents_opt = divorce_cmd->add_option("--parents", divorce_parents,
                                              "Comma-separated parents (default: best pair)");
  divorce_cmd->add_option("--gate", gate_name, "AND, OR or XOR")
      ->check(CLI::IsMember({"AND", "OR", "XOR"}, CLI::ignore_case))
      ->needs(parents_opt);
  divorce_cmd->add_option("--map", maps, "Name=state[,state...] feeding gate input 1")
      ->needs(parents_opt);

  auto* scm_cmd = add_method("scm", "Exact simple canonical model search");

  GaFlags method_ga;
  auto* ici_cmd = add_method("ici", "Genetic search over ICI models");
  method_ga.attach(*ici_cmd);

  std::string partition_text;
  auto* sici_cmd = add_method("sici", "Genetic search over US-SICI models");
  method_ga.attach(*sici_cmd);
  sici_cmd->add_option("--partition", partition_text,
                       "Parent blocks, e.g. \"A | B,C\" (default: all partitions)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  Progress progress(quiet);

  if (*score_cmd) {
    const Cpt truth = load_truth(truth_path).cpt;
    const Cpt approx = load_truth(approx_path).cpt;
    require_same_signature(truth, approx);
    const Metric metric = metric_name == "kl" ? Metric::kKullbackLeibler : Metric::kTotalVariation;
    if (verbose) std::cout << row_breakdown(truth, row_distances(truth, approx, metric, epsilon));
    std::cout << format_fixed(score(truth, approx, metric, epsilon)) << "\n";
    return 0;
  }

  const Cpt truth = load_truth(truth_path).cpt;

  if (*repro_cmd) {
    ReproduceOptions options;
    options.ga = repro_ga.config();
    options.ga.validate();
    options.on_method = [&](const std::string& m) { progress.method(m); };
    options.progress = progress.callback();
    const auto outcomes = reproduce(truth, options);
    progress.finish();
    std::cout << report_text(outcomes);
    write_file_atomic(report_path, report_csv(outcomes));
    fs::path side = report_path;
    side.replace_filename(side.stem().string() + "_cpts.csv");
    write_file_atomic(side, approximations_csv(truth, outcomes));
    std::cout << "wrote " << report_path << " and " << side.string() << "\n";
    if (!out_dir.empty()) {
      fs::create_directories(out_dir);
      for (const auto& o : outcomes) {
        std::string file = o.row.method;
        for (auto& c : file) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        save_cpt(o.approx.cpt, fs::path(out_dir) / (file + ".json"));
      }
      std::cout << "wrote method tables to " << out_dir << "\n";
    }
    return 0;
  }

  if (*prune_cmd) {
    if (prune_parent.empty()) {
      auto best = prune_best(truth);
      emit(truth, make_outcome(truth, best.spec, std::move(best.result)), out_path);
    } else {
      const PruneSpec spec{parent_by_name(truth.signature(), prune_parent)};
      const auto& shape = truth.shape();
      ApproxResult r = fit_and_score(truth, prune_groups(shape, spec),
                                     param_savings(spec, shape).free_params);
      emit(truth, make_outcome(truth, spec, std::move(r)), out_path);
    }
    return 0;
  }

  if (*divorce_cmd) {
    if (divorce_parents.empty()) {
      auto best = divorce_best(truth, 2);
      emit(truth, make_outcome(truth, best.spec, std::move(best.result)), out_path);
    } else {
      if (gate_name.empty()) throw ValidationError("--parents needs --gate");
      for (auto& c : gate_name) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      const DivorceSpec spec = build_divorce(truth.signature(), divorce_parents, gate_name, maps);
      const auto& shape = truth.shape();
      validate_divorce(shape, spec);
      ApproxResult r = fit_and_score(truth, divorce_groups(shape, spec),
                                     param_savings(spec, shape).free_params);
      emit(truth, make_outcome(truth, spec, std::move(r)), out_path);
    }
    return 0;
  }

  if (*scm_cmd) {
    progress.method("SCM");
    SearchResult r = truth.row_count() <= kMaxBipartitionItems
                         ? scm_bruteforce(truth, progress.callback())
                         : scm_ga(truth, GaConfig{}, progress.callback());
    progress.finish();
    emit(truth, make_outcome(truth, r.best_spec, std::move(r.approx)), out_path);
    return 0;
  }

  const GaConfig config = method_ga.config();
  config.validate();

  if (*ici_cmd) {
    progress.method("ICI");
    SearchResult r = optimize_ici(truth, config, progress.callback());
    progress.finish();
    emit(truth, make_outcome(truth, r.best_spec, std::move(r.approx)), out_path);
    std::cout << "seed used:   " << r.seed_used << " (" << r.generations_run << " generations, "
              << r.evaluations << " evaluations)\n";
    return 0;
  }

  if (*sici_cmd) {
    progress.method("SICI");
    if (!partition_text.empty()) {
      const ParentPartition blocks = parse_partition(truth.signature(), partition_text);
      SearchResult r = optimize_sici_partition(truth, blocks, config, progress.callback());
      progress.finish();
      emit(truth, make_outcome(truth, r.best_spec, std::move(r.approx)), out_path);
      return 0;
    }
    SiciSearchResult all = optimize_sici(truth, config, progress.callback());
    progress.finish();
    for (const auto& p : all.per_partition) {
      std::cout << format_fixed(p.result.best_score) << "  "
                << describe(p.result.best_spec, truth.signature()) << "\n";
    }
    std::cout << "\n";
    const SearchResult& best = all.best().result;
    emit(truth, make_outcome(truth, best.best_spec, best.approx), out_path);
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ShapeMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitShape;
  } catch (const SearchGuardExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGuard;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
