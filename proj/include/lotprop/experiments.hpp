#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lotprop/network.hpp"
#include "lotprop/rational.hpp"

namespace lotprop {

// Withhold-k sweep over K random networks. The focal player is node 0; every
// other player fully propagates while the focal keeps k*x_min at each reward
// bucket. x_min = 1/H, so the sender hands out exactly 1.
struct ExperimentSpec {
  int n = 200;
  int d = 6;  // expected degree target; each node initiates ceil(d/2) draws
  int H = 6;
  int K = 20;
  Rational focal_degree_factor = Rational(1);  // scales the focal's draw count
  std::vector<int> withhold_grid;              // values in 1..H
  std::uint64_t master_seed = 0;
};

struct WithholdSummary {
  int k = 0;
  Rational mean;                  // exact average of the K samples
  double stddev = 0.0;            // population sigma, readout only
  std::vector<Rational> samples;  // focal utility per network, K entries
};

struct ExperimentResult {
  ExperimentSpec spec;
  std::vector<WithholdSummary> per_k;
  double seconds = 0.0;
};

// Random graph on nodes 0..n-1: every node initiates ceil(d/2) draws of
// distinct uniform targets (never itself), node 0 initiates
// ceil(factor * d/2) instead; the union of the draws forms an undirected
// simple graph, so duplicate draws collapse and the expected degree lands
// slightly below d. The sender is drawn uniformly from 1..n-1 (node 0 is
// always a player). mt19937_64 with rejection sampling keeps the byte
// stream identical across platforms. x_min = 1/H, initial reward 1.
Network random_network(int n, int d, const Rational& focal_degree_factor,
                       std::uint64_t seed, int H = 1);

// Evaluates the focal's exact utility for every k in the grid across K
// networks (network i uses seed master_seed + i, shared by all k). An
// unreachable focal records utility 0 and the sample is kept.
ExperimentResult run_experiment(const ExperimentSpec& spec);

// One row per withhold level: `k,mean_utility,std,samples,n,d,H,K,factor,seed`
// with the exact mean rendered at 12 significant digits. Same spec, same
// bytes.
std::string to_csv(const ExperimentResult& result);
void emit_csv(const ExperimentResult& result, const std::string& path);

}  // namespace lotprop
