// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Everything is seeded, so reruns print the same verdicts.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rosm/rosm.hpp"

using namespace rosm;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

// Streams touched by any pipeline in this binary, audited in C11.
struct PassAudit {
  std::size_t streams = 0;
  std::size_t reread = 0;
  std::size_t unread = 0;
  void record(const EdgeStream& s) {
    ++streams;
    if (s.max_reads_per_position() > 1) ++reread;
    if (!s.read_exactly_once()) ++unread;
  }
} audit;

int failures = 0;

void report(int id, const char* name, double limit_s, const std::function<Verdict()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_s > 0 && secs > limit_s) {
    v.pass = false;
    v.detail += " (over time limit " + std::to_string(static_cast<int>(limit_s)) + "s)";
  }
  if (!v.pass) ++failures;
  std::printf("[%s] C%d %s: %s [%.1fs]\n", v.pass ? "PASS" : "FAIL", id, name, v.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

std::size_t mu_of(const Graph& g) {
  return g.is_bipartite() ? max_matching_bipartite(g.edges(), *g.bipartition()).size()
                          : max_matching_general(g.num_vertices(), g.edges()).size();
}

// C1 ---------------------------------------------------------------------

Graph random_instance(Rng& rng, int kind) {
  const double degree = 1.0 + 7.0 * rng.unit();
  switch (kind) {
    case 0: {
      const std::size_t n = 2 + rng.below(255);
      return gen_planted_bipartite(n, std::min(1.0, degree / n), rng.next());
    }
    case 1:
      return gen_konrad_hard(2 * (1 + rng.below(100)));
    case 2: {
      const std::size_t na = 1 + rng.below(200), nb = 1 + rng.below(200);
      return testkit::random_bipartite(na, nb, std::min(1.0, degree / std::max(na, nb)), rng);
    }
    default: {
      const std::size_t n = 3 + rng.below(510);
      return gen_random_general(n, std::min(1.0, degree / n), rng.next());
    }
  }
}

Verdict validity() {
  Rng rng(1001);
  std::size_t checked = 0, invalid = 0;
  auto check = [&](const Graph& g, const Matching& m) {
    ++checked;
    if (!validate_matching(g, m).ok()) ++invalid;
  };
  for (int trial = 0; trial < 1000; ++trial) {
    const Graph g = random_instance(rng, trial % 4);
    if (g.num_edges() == 0) {
      --trial;
      continue;
    }
    AugmenterParams p;
    p.prefix_frac = 0.05 + 0.3 * rng.unit();
    p.tau = 0.02 + 0.25 * rng.unit();
    const std::uint64_t seed = rng.next();
    {
      auto s = shuffle(g, seed);
      MemoryMeter meter;
      check(g, greedy_pipeline(s, meter).matching);
      audit.record(s);
    }
    {
      auto s = shuffle(g, seed);
      MemoryMeter meter;
      check(g, gm(s, AugmenterKind::ThreeFive, p, meter).pipeline.matching);
      audit.record(s);
    }
    if (!g.is_bipartite()) continue;
    for (auto kind : {AugmenterKind::Three, AugmenterKind::ThreeFive}) {
      {
        auto s = shuffle(g, seed);
        MemoryMeter meter;
        const auto m0 = greedy(g.num_vertices(), s.iterate(segment_of_fraction(s.size(), 0.0, p.prefix_frac)), meter);
        const auto cs = kind == AugmenterKind::Three ? barg(s, s.remaining(), m0, p, meter)
                                                     : farg(s, s.remaining(), m0, p, meter);
        check(g, cs.final_matching);
        audit.record(s);
      }
      {
        auto s = shuffle(g, seed);
        MemoryMeter meter;
        check(g, bm(s, kind, p, meter).matching);
        audit.record(s);
      }
    }
  }
  return {invalid == 0, fmt("%.0f matchings from 1000 trials, %.0f invalid", checked, invalid)};
}

// C2 ---------------------------------------------------------------------

Verdict oracle_equivalence() {
  Rng rng(1002);
  std::size_t mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    if (trial % 2 == 0) {
      const std::size_t na = 1 + rng.below(5), nb = 1 + rng.below(10 - na);
      const auto g = testkit::random_bipartite(na, nb, rng.unit(), rng);
      const auto brute = max_matching_bruteforce(g.edges());
      mismatches += max_matching_bipartite(g.edges(), *g.bipartition()).size() != brute;
      mismatches += max_matching_general(g.num_vertices(), g.edges()).size() != brute;
    } else {
      const auto g = testkit::random_general(1 + rng.below(10), rng.unit(), rng);
      mismatches += max_matching_general(g.num_vertices(), g.edges()).size() !=
                    max_matching_bruteforce(g.edges());
    }
  }
  return {mismatches == 0, fmt("200 graphs, %.0f mismatches", mismatches)};
}

// C3 ---------------------------------------------------------------------

Verdict augmentation_identity() {
  Rng rng(1003);
  std::size_t bad = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto inst = testkit::random_aug_instance(rng);
    const auto grown = apply_augmenting_paths(inst.m, inst.paths);
    bad += grown.size() != inst.m.size() + inst.paths.size();
    Matching back = grown;
    for (const auto& path : inst.paths.paths) back = symmetric_difference(std::move(back), path);
    bad += !(back == inst.m);
  }
  return {bad == 0, fmt("500 path sets, %.0f violations", bad)};
}

// C4 ---------------------------------------------------------------------

Verdict non_interfering() {
  Rng rng(1004);
  std::size_t violations = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = testkit::random_general(2 + rng.below(15), 0.1 + 0.6 * rng.unit(), rng);
    const auto m = testkit::random_matching(g, rng.unit(), rng);
    const long mu = static_cast<long>(max_matching_bruteforce(g.edges()));
    std::vector<Edge> r;
    for (const Edge& e : g.edges()) {
      if (!m.matched(e.u) && !m.matched(e.v)) r.push_back(e);
    }
    const long mu_r = static_cast<long>(max_matching_bruteforce(r));
    const long k = static_cast<long>(m.size());
    // alpha * mu = |M|, so both bounds are integral.
    violations += mu_r < mu - 2 * k;
    violations += k + mu_r < mu - k;
  }
  return {violations == 0, fmt("200 graphs, %.0f violations", violations)};
}

// C5 ---------------------------------------------------------------------

Verdict wing_subgraphs() {
  Rng rng(1005);
  std::size_t violations = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t na = 1 + rng.below(8), nb = 1 + rng.below(8);
    const auto g = testkit::random_bipartite(na, nb, 0.1 + 0.6 * rng.unit(), rng);
    const auto& bip = *g.bipartition();
    const auto m = testkit::maximal_matching(g, rng);
    std::vector<Edge> upper, lower;
    for (const Edge& e : g.edges()) {
      const Edge o = bip.orient(e);
      if (m.matched(o.u) && !m.matched(o.v)) upper.push_back(o);
      if (!m.matched(o.u) && m.matched(o.v)) lower.push_back(o);
    }
    const long mu = static_cast<long>(max_matching_bruteforce(g.edges()));
    const long k = static_cast<long>(m.size());
    violations += static_cast<long>(max_matching_bipartite(upper, bip).size()) < mu - k;
    violations += static_cast<long>(max_matching_bipartite(lower, bip).size()) < mu - k;
  }
  return {violations == 0, fmt("200 graphs, %.0f violations", violations)};
}

// C6 ---------------------------------------------------------------------

Verdict residual_bound() {
  const auto g = gen_planted_bipartite(512, 0.2, 6);
  const double n = static_cast<double>(g.num_vertices());
  std::string detail;
  bool pass = true;
  for (double gamma : {0.05, 0.1, 0.25}) {
    const double bound = 30.0 * n * std::log2(n) / gamma;
    int within = 0;
    std::size_t worst = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      auto s = shuffle(g, seed);
      MemoryMeter meter;
      const auto m0 = greedy(g.num_vertices(), s.iterate(segment_of_fraction(s.size(), 0.0, gamma)), meter);
      const auto r = collect_residual(s.iterate(s.remaining()), disjoint_from(m0), meter);
      within += static_cast<double>(r.size()) <= bound;
      worst = std::max(worst, r.size());
      audit.record(s);
    }
    pass = pass && within >= 95;
    detail += fmt("gamma=%.2f %.0f/100 within (max %.0f <= %.0f); ", gamma, within, worst, bound);
  }
  return {pass, detail};
}

// C7, C9, C10 --------------------------------------------------------------

bench::ExperimentConfig konrad_config(bench::Algorithm algo) {
  bench::ExperimentConfig c;
  c.instance = bench::InstanceSpec::parse("konrad:2000");
  c.algorithm = algo;
  c.preset = "practical";
  c.trials = 20;
  c.base_seed = 0;
  return c;
}

bench::RunReport konrad_bm, konrad_greedy;

Verdict improvement_gate() {
  konrad_greedy = bench::run(konrad_config(bench::Algorithm::Greedy));
  konrad_bm = bench::run(konrad_config(bench::Algorithm::BmFarg));
  const double g = konrad_greedy.aggregates.mean_ratio, b = konrad_bm.aggregates.mean_ratio;
  std::size_t errors = 0;
  for (const auto* r : {&konrad_greedy, &konrad_bm}) {
    for (const auto& t : r->trials) {
      for (const auto& f : t.flags) errors += f.rfind("error", 0) == 0 || f == "invalid_matching";
    }
  }
  return {errors == 0 && b >= g + 0.02 && b >= 0.55,
          fmt("bm-farg mean %.4f, greedy mean %.4f, gap %.4f (need >= 0.02 and >= 0.55), errors %.0f",
              b, g, b - g, errors)};
}

Verdict memory_gate() {
  std::size_t within = 0, flagged = 0, unflagged_over = 0;
  std::size_t worst = 0;
  for (const auto& t : konrad_bm.trials) {
    const bool over = t.peak_edges > konrad_bm.budget;
    const bool has_flag = std::find(t.flags.begin(), t.flags.end(), "budget_exceeded") != t.flags.end();
    within += !over;
    flagged += has_flag;
    unflagged_over += over && !has_flag;
    worst = std::max(worst, t.peak_edges);
  }
  const std::size_t n = konrad_bm.trials.size();
  return {n > 0 && within * 100 >= 95 * n && unflagged_over == 0,
          fmt("%.0f/%.0f within budget %.0f (max peak %.0f)", within, n,
              static_cast<double>(konrad_bm.budget), worst) +
              fmt(", %.0f flagged, %.0f over without flag", flagged, unflagged_over)};
}

Verdict determinism() {
  const auto again = bench::run(konrad_config(bench::Algorithm::BmFarg));
  std::size_t diffs = 0;
  if (again.trials.size() != konrad_bm.trials.size()) return {false, "trial count changed"};
  for (std::size_t i = 0; i < again.trials.size(); ++i) {
    diffs += again.trials[i].matching_size != konrad_bm.trials[i].matching_size;
    diffs += again.trials[i].peak_edges != konrad_bm.trials[i].peak_edges;
  }
  return {diffs == 0, fmt("%.0f trials rerun, %.0f differences", again.trials.size(), diffs)};
}

// C8 ---------------------------------------------------------------------

Verdict gm_sanity() {
  std::size_t below_m0 = 0;
  double gm_sum = 0, greedy_sum = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto g = gen_random_general(200, 0.03, 800 + seed);
    const double mu = static_cast<double>(mu_of(g));
    auto s1 = shuffle(g, seed);
    auto s2 = shuffle(g, seed);
    MemoryMeter m1, m2;
    const auto r = gm(s1, AugmenterKind::ThreeFive, AugmenterParams::practical(), m1).pipeline;
    const auto gr = greedy_pipeline(s2, m2);
    audit.record(s1);
    audit.record(s2);
    below_m0 += r.matching.size() < r.m0.size();
    gm_sum += r.matching.size() / mu;
    greedy_sum += gr.matching.size() / mu;
  }
  Rng rng(1008);
  std::size_t violations = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 4 + rng.below(13);
    const auto g = testkit::random_general(n, 0.2 + 0.5 * rng.unit(), rng);
    if (g.num_edges() == 0) {
      --trial;
      continue;
    }
    auto s = shuffle(g, rng.next());
    MemoryMeter meter;
    const auto r = gm(s, AugmenterKind::ThreeFive, AugmenterParams::practical(), meter).pipeline;
    audit.record(s);
    const auto d = bench::diagnose(g, max_matching_general(n, g.edges()), r.m0, nullptr);
    violations += static_cast<long>(*d.mu_g_prime) <
                  2 * static_cast<long>(d.m1_star) - 2 * static_cast<long>(r.m0.size());
  }
  const double gm_mean = gm_sum / 50, greedy_mean = greedy_sum / 50;
  return {below_m0 == 0 && gm_mean >= greedy_mean - 0.01 && violations == 0,
          fmt("gm mean %.4f vs greedy %.4f, %.0f runs below |M0|, %.0f inequality violations", gm_mean,
              greedy_mean, below_m0, violations)};
}

// C11 --------------------------------------------------------------------

Verdict single_pass() {
  for (const auto* r : {&konrad_greedy, &konrad_bm}) {
    for (const auto& t : r->trials) {
      ++audit.streams;
      audit.reread += std::find(t.flags.begin(), t.flags.end(), "single_pass_violation") != t.flags.end();
    }
  }
  return {audit.streams > 0 && audit.reread == 0 && audit.unread == 0,
          fmt("%.0f streams audited, %.0f with a position read twice, %.0f not fully read",
              audit.streams, audit.reread, audit.unread)};
}

}  // namespace

int main() {
  report(1, "validity", 120, validity);
  report(2, "oracle equivalence", 60, oracle_equivalence);
  report(3, "augmentation identity", 0, augmentation_identity);
  report(4, "non-interfering edges", 0, non_interfering);
  report(5, "wing subgraph bound", 0, wing_subgraphs);
  report(6, "residual edge bound", 180, residual_bound);
  report(7, "improvement over greedy", 300, improvement_gate);
  report(8, "general graph reduction", 0, gm_sanity);
  report(9, "memory budget", 0, memory_gate);
  report(10, "determinism", 0, determinism);
  report(11, "single pass", 0, single_pass);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
