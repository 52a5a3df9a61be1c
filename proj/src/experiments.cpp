#include "lotprop/experiments.hpp"

#include <gmpxx.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "lotprop/propagation.hpp"
#include "lotprop/strategy.hpp"

namespace lotprop {

namespace {

// Uniform draw in [0, m) by rejection; uniform_int_distribution is not
// bit-specified across standard libraries, the raw mt19937_64 stream is.
std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t m) {
  std::uint64_t rem =
      (std::numeric_limits<std::uint64_t>::max() % m + 1) % m;  // 2^64 mod m
  std::uint64_t bound = 0 - rem;  // wraps to 2^64 - rem; rem == 0 accepts all
  for (;;) {
    std::uint64_t u = gen();
    if (rem == 0 || u < bound) return u % m;
  }
}

long rat_ceil(const Rational& r) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), r.num().get_mpz_t(), r.den().get_mpz_t());
  if (!q.fits_slong_p()) throw std::invalid_argument("draw count out of range");
  return q.get_si();
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

Network random_network(int n, int d, const Rational& focal_degree_factor,
                       std::uint64_t seed, int H) {
  if (d < 2 || n <= d) throw std::invalid_argument("random_network: need n > d >= 2");
  if (H < 1) throw std::invalid_argument("random_network: H must be >= 1");
  if (focal_degree_factor.sign() <= 0)
    throw std::invalid_argument("random_network: factor must be positive");
  long base_draws = (d + 1) / 2;
  long focal_draws = rat_ceil(focal_degree_factor * Rational(d, 2));
  if (focal_draws < 1 || focal_draws > n - 1)
    throw std::invalid_argument("random_network: focal draw count out of range");

  std::mt19937_64 gen(seed);
  NodeId sender = static_cast<NodeId>(1 + uniform_below(gen, n - 1));

  std::set<std::pair<NodeId, NodeId>> edges;
  for (NodeId v = 0; v < n; ++v) {
    long draws = v == 0 ? focal_draws : base_draws;
    std::set<NodeId> targets;
    while (static_cast<long>(targets.size()) < draws) {
      auto r = static_cast<NodeId>(uniform_below(gen, n - 1));
      NodeId t = r >= v ? r + 1 : r;
      targets.insert(t);
    }
    for (NodeId t : targets) edges.emplace(std::min(v, t), std::max(v, t));
  }

  std::vector<std::pair<NodeId, NodeId>> edge_list(edges.begin(), edges.end());
  return Network::general(n, sender, edge_list, Rational(1, H), Rational(1));
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  if (spec.K < 1) throw std::invalid_argument("run_experiment: K must be >= 1");
  for (int k : spec.withhold_grid)
    if (k < 1 || k > spec.H)
      throw std::invalid_argument("run_experiment: withhold level outside 1..H");

  auto t0 = std::chrono::steady_clock::now();
  ExperimentResult res;
  res.spec = spec;
  res.per_k.resize(spec.withhold_grid.size());
  for (std::size_t gi = 0; gi < spec.withhold_grid.size(); ++gi) {
    res.per_k[gi].k = spec.withhold_grid[gi];
    res.per_k[gi].samples.reserve(spec.K);
  }

  for (int idx = 0; idx < spec.K; ++idx) {
    Network net = random_network(spec.n, spec.d, spec.focal_degree_factor,
                                 spec.master_seed + static_cast<std::uint64_t>(idx),
                                 spec.H);
    for (auto& summary : res.per_k) {
      StrategyProfile prof = StrategyProfile::uniform_withhold(net, 0, summary.k);
      PropagationOutcome out = propagate(net, prof);
      summary.samples.push_back(utility(net, out, 0));
    }
  }

  for (auto& summary : res.per_k) {
    Rational sum;
    for (const Rational& s : summary.samples) sum += s;
    summary.mean = sum / Rational(spec.K);
    Rational var;
    for (const Rational& s : summary.samples) {
      Rational dev = s - summary.mean;
      var += dev * dev;
    }
    summary.stddev = std::sqrt((var / Rational(spec.K)).to_double());
  }

  res.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

std::string to_csv(const ExperimentResult& result) {
  std::ostringstream os;
  os << "k,mean_utility,std,samples,n,d,H,K,factor,seed\n";
  const ExperimentSpec& s = result.spec;
  for (const WithholdSummary& row : result.per_k)
    os << row.k << ',' << row.mean.decimal(12) << ',' << fmt_double(row.stddev)
       << ',' << row.samples.size() << ',' << s.n << ',' << s.d << ',' << s.H << ','
       << s.K << ',' << s.focal_degree_factor.str() << ',' << s.master_seed << '\n';
  return os.str();
}

void emit_csv(const ExperimentResult& result, const std::string& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("emit_csv: cannot open " + path);
  f << to_csv(result);
  f.flush();
  if (!f) throw std::runtime_error("emit_csv: write failed for " + path);
}

}  // namespace lotprop
