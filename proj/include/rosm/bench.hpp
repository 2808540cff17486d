#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rosm/exact.hpp"
#include "rosm/generators.hpp"
#include "rosm/pipelines.hpp"

namespace rosm::bench {

using json = nlohmann::json;

/// konrad:<n> | planted:<n>,<p> | gnp:<n>,<p> | file:<path>
struct InstanceSpec {
  enum class Kind { Konrad, Planted, Gnp, File };
  Kind kind = Kind::Konrad;
  std::size_t n = 0;
  double p = 0.0;
  std::string path;

  static InstanceSpec parse(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
      throw std::invalid_argument("instance '" + text + "': expected <kind>:<args>");
    }
    const std::string kind = text.substr(0, colon);
    const std::string args = text.substr(colon + 1);
    InstanceSpec s;
    auto bad = [&] { return std::invalid_argument("instance '" + text + "': malformed arguments"); };
    auto parse_n = [&](const std::string& t) {
      std::size_t used = 0;
      long long v = 0;
      try {
        v = std::stoll(t, &used);
      } catch (const std::exception&) {
        throw bad();
      }
      if (used != t.size() || v < 0) throw bad();
      return static_cast<std::size_t>(v);
    };
    auto parse_np = [&] {
      const auto comma = args.find(',');
      if (comma == std::string::npos) throw bad();
      s.n = parse_n(args.substr(0, comma));
      const std::string pt = args.substr(comma + 1);
      std::size_t used = 0;
      try {
        s.p = std::stod(pt, &used);
      } catch (const std::exception&) {
        throw bad();
      }
      if (used != pt.size()) throw bad();
    };
    if (kind == "konrad") {
      s.kind = Kind::Konrad;
      s.n = parse_n(args);
    } else if (kind == "planted") {
      s.kind = Kind::Planted;
      parse_np();
    } else if (kind == "gnp") {
      s.kind = Kind::Gnp;
      parse_np();
    } else if (kind == "file") {
      s.kind = Kind::File;
      if (args.empty()) throw bad();
      s.path = args;
    } else {
      throw std::invalid_argument("instance '" + text + "': unknown kind '" + kind + "'");
    }
    return s;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << std::setprecision(17);
    switch (kind) {
      case Kind::Konrad: os << "konrad:" << n; break;
      case Kind::Planted: os << "planted:" << n << ',' << p; break;
      case Kind::Gnp: os << "gnp:" << n << ',' << p; break;
      case Kind::File: os << "file:" << path; break;
    }
    return os.str();
  }

  /// Random generators draw from `seed`; the others ignore it.
  Graph build(std::uint64_t seed) const {
    switch (kind) {
      case Kind::Konrad: return gen_konrad_hard(n);
      case Kind::Planted: return gen_planted_bipartite(n, p, seed);
      case Kind::Gnp: return gen_random_general(n, p, seed);
      case Kind::File: return load_edgelist(path).graph;
    }
    throw std::logic_error("unreachable instance kind");
  }
};

enum class Algorithm { Greedy, BmBarg, BmFarg, Gm };

inline std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Greedy: return "greedy";
    case Algorithm::BmBarg: return "bm-barg";
    case Algorithm::BmFarg: return "bm-farg";
    case Algorithm::Gm: return "gm";
  }
  return "?";
}

inline Algorithm parse_algorithm(const std::string& s) {
  for (Algorithm a : {Algorithm::Greedy, Algorithm::BmBarg, Algorithm::BmFarg, Algorithm::Gm}) {
    if (to_string(a) == s) return a;
  }
  throw std::invalid_argument("unknown algorithm '" + s + "'");
}

struct ExperimentConfig {
  InstanceSpec instance;
  Algorithm algorithm = Algorithm::Greedy;
  /// "practical" or "paper"; the overrides below replace single fields.
  std::string preset = "practical";
  std::optional<double> tau;
  std::optional<double> threshold;
  std::optional<int> max_depth;
  std::optional<double> prefix_frac;
  std::size_t trials = 1;
  std::uint64_t base_seed = 0;
  /// Advisory edge budget; absent means 30 n log2(n)^2 / gamma_min.
  std::optional<std::size_t> budget;
  bool diagnostics = false;

  void validate() const {
    if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
    if (preset != "practical" && preset != "paper") {
      throw std::invalid_argument("config: preset must be 'practical' or 'paper'");
    }
  }

  AugmenterParams resolve_params(std::size_t n) const {
    AugmenterParams p = preset == "paper" ? AugmenterParams::paper(n) : AugmenterParams::practical();
    if (tau) p.tau = *tau;
    if (threshold) p.threshold = *threshold;
    if (max_depth) p.max_depth = *max_depth;
    if (prefix_frac) p.prefix_frac = *prefix_frac;
    return p;
  }
};

/// Quantities measured against one fixed maximum matching M*.
struct Diagnostics {
  std::size_t m1_star = 0;  ///< M* edges touching V(M0)
  std::size_t m2_star = 0;  ///< the other M* edges
  double alpha = 0.0;       ///< m1_star / mu
  double delta = 0.0;       ///< |M0| / m1_star - 1/2 (0 when m1_star == 0)
  std::optional<std::size_t> r_p;     ///< M*_2 edges touching V(P1) (first level)
  std::optional<std::size_t> r_q;     ///< M*_2 edges touching V(Q1)
  std::optional<std::size_t> m_c_star;  ///< M* edges in A(M_Q) x B(M_P)
  std::optional<std::size_t> mu_g_prime;  ///< mu of the (V(M0), rest) subgraph
  bool identities_hold = true;
};

struct TrialRecord {
  std::uint64_t seed = 0;
  std::size_t matching_size = 0;
  std::size_t mu_exact = 0;
  double ratio = 0.0;
  std::size_t m0_size = 0;
  std::size_t t_size = 0;
  std::size_t r_size = 0;
  std::size_t peak_edges = 0;
  int recursion_depth = 0;
  double runtime_ms = 0.0;
  std::vector<std::string> flags;
  std::optional<Diagnostics> diagnostics;
};

struct Aggregates {
  double mean_ratio = 0.0;
  double min_ratio = 0.0;
  std::size_t p95_peak_edges = 0;
  std::size_t flagged_trials = 0;
};

struct RunReport {
  ExperimentConfig config;
  std::size_t num_vertices = 0;
  std::size_t num_edges = 0;
  std::size_t budget = 0;
  AugmenterParams params;
  std::vector<TrialRecord> trials;
  Aggregates aggregates;
};

/// Nearest-rank percentile (q in (0,1]) of a non-empty sample.
inline std::size_t percentile_nearest_rank(std::vector<std::size_t> xs, double q) {
  if (xs.empty()) return 0;
  std::sort(xs.begin(), xs.end());
  auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(xs.size())));
  rank = std::clamp<std::size_t>(rank, 1, xs.size());
  return xs[rank - 1];
}

inline Aggregates aggregate(const std::vector<TrialRecord>& trials) {
  Aggregates a;
  if (trials.empty()) return a;
  double sum = 0.0;
  a.min_ratio = trials.front().ratio;
  std::vector<std::size_t> peaks;
  for (const auto& t : trials) {
    sum += t.ratio;
    a.min_ratio = std::min(a.min_ratio, t.ratio);
    peaks.push_back(t.peak_edges);
    if (!t.flags.empty()) ++a.flagged_trials;
  }
  a.mean_ratio = sum / static_cast<double>(trials.size());
  a.p95_peak_edges = percentile_nearest_rank(std::move(peaks), 0.95);
  return a;
}

inline Matching exact_matching(const Graph& g) {
  if (g.is_bipartite()) return max_matching_bipartite(g.edges(), *g.bipartition());
  return max_matching_general(g.num_vertices(), g.edges());
}

/// Splits a fixed maximum matching by V(M0) and, when the first-level
/// wings are given, counts how much of it they reach.
inline Diagnostics diagnose(const Graph& g, const Matching& opt, const Matching& m0,
                            const WingSnapshot* wings) {
  Diagnostics d;
  for (const Edge& e : opt.edges()) {
    if (m0.matched(e.u) || m0.matched(e.v)) {
      ++d.m1_star;
    } else {
      ++d.m2_star;
    }
  }
  const double mu = static_cast<double>(opt.size());
  d.alpha = mu > 0 ? static_cast<double>(d.m1_star) / mu : 0.0;
  d.delta = d.m1_star > 0 ? static_cast<double>(m0.size()) / static_cast<double>(d.m1_star) - 0.5
                          : 0.0;
  d.identities_hold = d.m1_star + d.m2_star == opt.size() && m0.size() <= d.m1_star &&
                      d.m1_star <= 2 * m0.size();

  if (wings) {
    const std::size_t n = g.num_vertices();
    auto touched = [n](const std::vector<Edge>& es) {
      std::vector<std::uint8_t> mark(n, 0);
      for (const Edge& e : es) mark[e.u] = mark[e.v] = 1;
      return mark;
    };
    const auto vp1 = touched(wings->p1), vq1 = touched(wings->q1);
    const auto vmp = touched(wings->mp), vmq = touched(wings->mq);
    std::size_t rp = 0, rq = 0, mc = 0;
    for (const Edge& e : opt.edges()) {
      const bool in_m2 = !m0.matched(e.u) && !m0.matched(e.v);
      if (in_m2 && (vp1[e.u] || vp1[e.v])) ++rp;
      if (in_m2 && (vq1[e.u] || vq1[e.v])) ++rq;
      // opt from the bipartite oracle is stored (A, B).
      if (vmq[e.u] && vmp[e.v]) ++mc;
    }
    d.r_p = rp;
    d.r_q = rq;
    d.m_c_star = mc;
  }

  std::vector<Edge> cross;
  for (const Edge& e : g.edges()) {
    if (m0.matched(e.u) != m0.matched(e.v)) cross.push_back(e);
  }
  const BipartiteView view(m0);
  for (Edge& e : cross) e = view.to_view(e);
  d.mu_g_prime = max_matching_bipartite(cross, view.bipartition()).size();
  return d;
}

/// One pipeline run on one shuffled stream.
struct TrialOutcome {
  PipelineResult result;
  std::optional<WingSnapshot> wings;
};

inline TrialOutcome run_pipeline(Algorithm algo, EdgeStream& stream, const AugmenterParams& params,
                                 MemoryMeter& meter) {
  TrialOutcome out;
  switch (algo) {
    case Algorithm::Greedy:
      out.result = greedy_pipeline(stream, meter);
      break;
    case Algorithm::BmBarg:
    case Algorithm::BmFarg: {
      const auto kind = algo == Algorithm::BmBarg ? AugmenterKind::Three : AugmenterKind::ThreeFive;
      out.result = bm(stream, kind, params, meter);
      out.wings = out.result.candidates.first_level;
      break;
    }
    case Algorithm::Gm:
      out.result = gm(stream, AugmenterKind::ThreeFive, params, meter).pipeline;
      break;
  }
  return out;
}

/// Runs every trial of `config`. The instance is built from base_seed;
/// trial i streams it in the order given by seed base_seed + i. Failures
/// inside a trial become flags on its record.
inline RunReport run(const ExperimentConfig& config) {
  config.validate();
  RunReport report;
  report.config = config;
  const Graph g = config.instance.build(config.base_seed);
  report.num_vertices = g.num_vertices();
  report.num_edges = g.num_edges();
  report.params = config.resolve_params(g.num_vertices());
  report.budget = config.budget.value_or(default_budget(g.num_vertices(), report.params));

  std::optional<Matching> opt;
  std::string oracle_error;
  try {
    opt = exact_matching(g);
  } catch (const std::exception& e) {
    oracle_error = e.what();
  }

  for (std::size_t i = 0; i < config.trials; ++i) {
    TrialRecord rec;
    rec.seed = config.base_seed + i;
    const auto start = std::chrono::steady_clock::now();
    try {
      if (!opt) throw std::runtime_error("oracle failed: " + oracle_error);
      rec.mu_exact = opt->size();
      EdgeStream stream = shuffle(g, rec.seed);
      MemoryMeter meter(report.budget);
      TrialOutcome out = run_pipeline(config.algorithm, stream, report.params, meter);
      const auto& a = out.result.artifacts;
      rec.matching_size = a.final_size;
      rec.ratio = rec.mu_exact ? static_cast<double>(a.final_size) / rec.mu_exact : 1.0;
      rec.m0_size = a.m0_size;
      rec.t_size = a.t_size;
      rec.r_size = a.r_size;
      rec.peak_edges = a.peak_edges;
      rec.recursion_depth = a.recursion_depth;
      rec.flags = a.flags();
      if (!validate_matching(g, out.result.matching).ok()) rec.flags.emplace_back("invalid_matching");
      if (!stream.read_exactly_once()) rec.flags.emplace_back("single_pass_violation");
      if (config.diagnostics) {
        rec.diagnostics =
            diagnose(g, *opt, out.result.m0, out.wings ? &*out.wings : nullptr);
        if (!rec.diagnostics->identities_hold) rec.flags.emplace_back("identity_violation");
      }
    } catch (const std::exception& e) {
      rec.flags.emplace_back(std::string("error: ") + e.what());
    }
    rec.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report.trials.push_back(std::move(rec));
  }
  report.aggregates = aggregate(report.trials);
  return report;
}

// JSON mapping.

inline void to_json(json& j, const ExperimentConfig& c) {
  j = json{{"instance", c.instance.to_string()},
           {"algorithm", to_string(c.algorithm)},
           {"preset", c.preset},
           {"trials", c.trials},
           {"base_seed", c.base_seed},
           {"diagnostics", c.diagnostics}};
  if (c.tau) j["tau"] = *c.tau;
  if (c.threshold) j["threshold"] = *c.threshold;
  if (c.max_depth) j["max_depth"] = *c.max_depth;
  if (c.prefix_frac) j["prefix_frac"] = *c.prefix_frac;
  if (c.budget) j["budget"] = *c.budget;
}

inline void from_json(const json& j, ExperimentConfig& c) {
  c.instance = InstanceSpec::parse(j.at("instance").get<std::string>());
  c.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
  c.preset = j.at("preset").get<std::string>();
  c.trials = j.at("trials").get<std::size_t>();
  c.base_seed = j.at("base_seed").get<std::uint64_t>();
  c.diagnostics = j.at("diagnostics").get<bool>();
  auto opt = [&j](const char* key, auto& field) {
    using T = typename std::decay_t<decltype(field)>::value_type;
    if (j.contains(key)) field = j.at(key).get<T>();
  };
  opt("tau", c.tau);
  opt("threshold", c.threshold);
  opt("max_depth", c.max_depth);
  opt("prefix_frac", c.prefix_frac);
  opt("budget", c.budget);
}

inline void to_json(json& j, const Diagnostics& d) {
  j = json{{"alpha", d.alpha},     {"delta", d.delta},
           {"m1_star", d.m1_star}, {"m2_star", d.m2_star},
           {"identities_hold", d.identities_hold}};
  if (d.r_p) j["r_p"] = *d.r_p;
  if (d.r_q) j["r_q"] = *d.r_q;
  if (d.m_c_star) j["m_c_star"] = *d.m_c_star;
  if (d.mu_g_prime) j["mu_g_prime"] = *d.mu_g_prime;
}

inline json trial_json(const TrialRecord& t, bool with_runtime) {
  json j{{"seed", t.seed},
         {"matching_size", t.matching_size},
         {"mu_exact", t.mu_exact},
         {"ratio", t.ratio},
         {"m0_size", t.m0_size},
         {"t_size", t.t_size},
         {"r_size", t.r_size},
         {"peak_edges", t.peak_edges},
         {"recursion_depth", t.recursion_depth},
         {"flags", t.flags}};
  if (with_runtime) j["runtime_ms"] = t.runtime_ms;
  if (t.diagnostics) j["diagnostics"] = *t.diagnostics;
  return j;
}

inline json report_json(const RunReport& r, bool with_runtime = true) {
  json trials = json::array();
  for (const auto& t : r.trials) trials.push_back(trial_json(t, with_runtime));
  return json{{"config", r.config},
              {"instance", {{"num_vertices", r.num_vertices}, {"num_edges", r.num_edges}}},
              {"params",
               {{"preset", r.params.preset},
                {"tau", r.params.tau},
                {"threshold", r.params.threshold},
                {"max_depth", r.params.max_depth},
                {"prefix_frac", r.params.prefix_frac}}},
              {"budget", r.budget},
              {"trials", trials},
              {"aggregates",
               {{"mean_ratio", r.aggregates.mean_ratio},
                {"min_ratio", r.aggregates.min_ratio},
                {"p95_peak_edges", r.aggregates.p95_peak_edges},
                {"flagged_trials", r.aggregates.flagged_trials}}}};
}

enum class Format { Json, Csv };

inline Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  throw std::invalid_argument("unknown format '" + s + "'");
}

inline void write_csv(std::ostream& out, const RunReport& r, bool with_runtime = true) {
  out << "seed,matching_size,mu_exact,ratio,m0_size,t_size,r_size,peak_edges,recursion_depth";
  if (with_runtime) out << ",runtime_ms";
  out << ",flags\n";
  out << std::setprecision(17);
  for (const auto& t : r.trials) {
    std::string flags;
    for (const auto& f : t.flags) {
      if (!flags.empty()) flags += ';';
      for (char ch : f) flags += (ch == '"') ? '\'' : ch;
    }
    out << t.seed << ',' << t.matching_size << ',' << t.mu_exact << ',' << t.ratio << ','
        << t.m0_size << ',' << t.t_size << ',' << t.r_size << ',' << t.peak_edges << ','
        << t.recursion_depth;
    if (with_runtime) out << ',' << t.runtime_ms;
    out << ",\"" << flags << "\"\n";
  }
}

inline void emit(const RunReport& r, Format fmt, std::ostream& out, bool with_runtime = true) {
  if (fmt == Format::Json) {
    out << report_json(r, with_runtime).dump(2) << '\n';
  } else {
    write_csv(out, r, with_runtime);
  }
}

/// Writes to `path`, or to `fallback` when path is empty or "-".
/// Throws std::runtime_error if the file cannot be written.
inline void emit(const RunReport& r, Format fmt, const std::string& path, std::ostream& fallback,
                 bool with_runtime = true) {
  if (path.empty() || path == "-") {
    emit(r, fmt, fallback, with_runtime);
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  emit(r, fmt, out, with_runtime);
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace rosm::bench
