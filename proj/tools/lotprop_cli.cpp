#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lotprop.h"

// Thin shell over the C API: builds a network from --dary or --graph, runs
// one engine entry point, prints the machine-readable result on stdout and a
// one-line verdict on stderr. Exit codes: 0 success (claim holds), 1 claim
// violated (witness on stdout), 2 usage or input error.

namespace {

[[noreturn]] void die(const std::string& msg) {
  std::fprintf(stderr, "error: %s\n", msg.c_str());
  std::exit(2);
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) die("cannot open " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

// Prints an owned C string with exactly one trailing newline and frees it.
void emit(char* owned) {
  if (!owned) return;
  std::size_t len = std::strlen(owned);
  std::fwrite(owned, 1, len, stdout);
  if (len == 0 || owned[len - 1] != '\n') std::fputc('\n', stdout);
  lp_free_string(owned);
}

struct NetOpts {
  std::string dary;   // "d,f,depth"
  std::string graph;  // network json file
  std::string x_min;  // override, --dary only
};

void add_net_opts(CLI::App* sub, NetOpts& o) {
  auto* dary = sub->add_option(
      "--dary", o.dary, "d,f,depth: f complete d-ary subtrees, depth levels");
  auto* graph = sub->add_option("--graph", o.graph, "network json file");
  auto* xm = sub->add_option("--x-min", o.x_min,
                             "minimum offer p/q (--dary only, default 1/depth)");
  dary->excludes(graph);
  graph->excludes(dary);
  xm->excludes(graph);
}

lp_network* build_network(const NetOpts& o) {
  lp_network* net = nullptr;
  if (!o.dary.empty()) {
    int d = 0, f = 0, depth = 0;
    char tail = 0;
    if (std::sscanf(o.dary.c_str(), "%d,%d,%d%c", &d, &f, &depth, &tail) != 3)
      die("--dary wants three integers d,f,depth, got \"" + o.dary + "\"");
    if (lp_network_dary(d, f, depth, o.x_min.empty() ? nullptr : o.x_min.c_str(),
                        &net) != LP_OK)
      die(lp_last_error());
  } else if (!o.graph.empty()) {
    std::string text = slurp(o.graph);
    if (lp_network_from_json(text.c_str(), &net) != LP_OK) die(lp_last_error());
  } else {
    die("need --dary or --graph");
  }
  return net;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact engine for the reward-splitting propagation game"};
  app.require_subcommand(1);

  NetOpts net_opts;
  std::string profile = "fp";
  int32_t player = 0;
  std::string comm = "players";
  int max_coalition = 2;
  std::string order = "appendix";
  uint64_t seed = 0;
  std::string claim;
  std::string grid;

  auto* build = app.add_subcommand("build", "construct a network, print its json");
  add_net_opts(build, net_opts);

  auto* prop = app.add_subcommand("propagate", "run propagation, print the outcome");
  add_net_opts(prop, net_opts);
  prop->add_option("--profile", profile,
                   "fp | decline | withhold:K | counterexample (default fp)");
  prop->add_option("--player", player,
                   "focal player for withhold:K (default 0)");

  auto* util = app.add_subcommand("utility", "exact utility of one player");
  add_net_opts(util, net_opts);
  util->add_option("--profile", profile,
                   "fp | decline | withhold:K | counterexample (default fp)");
  util->add_option("--player", player, "player id; also the withhold:K focal")
      ->required();

  auto* nash = app.add_subcommand(
      "verify-nash", "exhaustive unilateral-deviation check; exit 1 on a witness");
  add_net_opts(nash, net_opts);
  nash->add_option("--profile", profile,
                   "fp | decline | withhold:K (focal 0) | counterexample");

  auto* ccp = app.add_subcommand(
      "verify-ccp", "connected-coalition check; exit 1 on a witness");
  add_net_opts(ccp, net_opts);
  ccp->add_option("--profile", profile,
                  "fp | decline | withhold:K (focal 0) | counterexample");
  ccp->add_option("--comm", comm,
                  "players | friendship | roots-complete (default players)");
  ccp->add_option("--max-coalition", max_coalition, "coalition size cap (default 2)");

  auto* elim = app.add_subcommand(
      "eliminate", "iterated dominance elimination; exit 1 unless only full "
                   "propagation survives");
  add_net_opts(elim, net_opts);
  elim->add_option("--order", order, "appendix | random (default appendix)");
  elim->add_option("--seed", seed, "shuffle seed for --order random");

  auto* friends = app.add_subcommand(
      "friends", "best friends, good friends and the friendship forest");
  add_net_opts(friends, net_opts);

  auto* check = app.add_subcommand(
      "check", "exact inequality sweep; exit 1 if any grid point fails");
  check->add_option("--claim", claim, "1 | 2 | 3 | eq2 | intro | lemma3")
      ->required();
  check->add_option(
      "--grid", grid,
      "override, e.g. \"d=3,4;k=1..8;eps=0,1/2\" (keys d k f n fi phi eps c "
      "den kmax offset)");

  auto* exp = app.add_subcommand(
      "experiment", "withhold sweep over random networks, csv + summary");
  std::string spec_file;
  int en = 200, ed = 6, eH = 6, eK = 20;
  std::string factor = "1";
  uint64_t eseed = 0;
  std::vector<int> egrid;
  std::string out_csv;
  auto* spec_opt = exp->add_option("--spec", spec_file, "spec json file");
  auto* n_opt = exp->add_option("--n", en, "nodes (default 200)");
  auto* d_opt = exp->add_option("--d", ed, "expected degree target (default 6)");
  auto* H_opt = exp->add_option("--H", eH, "reward steps, x_min = 1/H (default 6)");
  auto* K_opt = exp->add_option("--K", eK, "networks per point (default 20)");
  auto* f_opt = exp->add_option("--factor", factor,
                                "focal degree factor p/q (default 1)");
  auto* s_opt = exp->add_option("--seed", eseed, "master seed");
  auto* g_opt = exp->add_option("--grid", egrid, "withhold levels (default 1..H)")
                    ->delimiter(',');
  exp->add_option("--out", out_csv, "csv path ('-' for stdout, else summary on stdout)");
  for (auto* o : {n_opt, d_opt, H_opt, K_opt, f_opt, s_opt, g_opt})
    spec_opt->excludes(o);

  CLI11_PARSE(app, argc, argv);

  if (app.got_subcommand(build)) {
    lp_network* net = build_network(net_opts);
    char* out = nullptr;
    if (lp_network_to_json(net, &out) != LP_OK) die(lp_last_error());
    emit(out);
    lp_network_free(net);
    return 0;
  }

  if (app.got_subcommand(prop) || app.got_subcommand(util)) {
    lp_network* net = build_network(net_opts);
    char* out = nullptr;
    lp_status rc = app.got_subcommand(prop)
                       ? lp_propagate(net, profile.c_str(), player, &out)
                       : lp_utility(net, profile.c_str(), player, &out);
    if (rc != LP_OK) die(lp_last_error());
    emit(out);
    lp_network_free(net);
    return 0;
  }

  if (app.got_subcommand(nash)) {
    lp_network* net = build_network(net_opts);
    int holds = 0;
    char* out = nullptr;
    if (lp_verify_nash(net, profile.c_str(), &holds, &out) != LP_OK)
      die(lp_last_error());
    emit(out);
    lp_network_free(net);
    std::fprintf(stderr, "verify-nash: %s\n",
                 holds ? "no profitable unilateral deviation"
                       : "violated, witness on stdout");
    return holds ? 0 : 1;
  }

  if (app.got_subcommand(ccp)) {
    lp_network* net = build_network(net_opts);
    int holds = 0;
    char* out = nullptr;
    if (lp_verify_ccp(net, profile.c_str(), comm.c_str(), max_coalition, &holds,
                      &out) != LP_OK)
      die(lp_last_error());
    emit(out);
    lp_network_free(net);
    std::fprintf(stderr, "verify-ccp: %s\n",
                 holds ? "no profitable connected coalition"
                       : "violated, witness on stdout");
    return holds ? 0 : 1;
  }

  if (app.got_subcommand(elim)) {
    lp_network* net = build_network(net_opts);
    int collapsed = 0;
    char* out = nullptr;
    if (lp_eliminate(net, order.c_str(), seed, &collapsed, &out) != LP_OK)
      die(lp_last_error());
    emit(out);
    lp_network_free(net);
    std::fprintf(stderr, "eliminate: %s\n",
                 collapsed ? "collapsed to full propagation"
                           : "other strategies survive");
    return collapsed ? 0 : 1;
  }

  if (app.got_subcommand(friends)) {
    lp_network* net = build_network(net_opts);
    char* out = nullptr;
    if (lp_friends(net, &out) != LP_OK) die(lp_last_error());
    emit(out);
    lp_network_free(net);
    return 0;
  }

  if (app.got_subcommand(check)) {
    int64_t violations = 0;
    char* out = nullptr;
    if (lp_check(claim.c_str(), grid.empty() ? nullptr : grid.c_str(),
                 &violations, &out) != LP_OK)
      die(lp_last_error());
    emit(out);
    std::fprintf(stderr, "check %s: %lld violating grid point(s)\n", claim.c_str(),
                 static_cast<long long>(violations));
    return violations == 0 ? 0 : 1;
  }

  if (app.got_subcommand(exp)) {
    std::string spec_json;
    if (!spec_file.empty()) {
      spec_json = slurp(spec_file);
    } else {
      if (factor.find('"') != std::string::npos) die("--factor wants p/q");
      std::ostringstream os;
      os << "{\"n\":" << en << ",\"d\":" << ed << ",\"H\":" << eH
         << ",\"K\":" << eK << ",\"factor\":\"" << factor << "\",\"seed\":" << eseed;
      if (!egrid.empty()) {
        os << ",\"grid\":[";
        for (std::size_t i = 0; i < egrid.size(); ++i)
          os << (i ? "," : "") << egrid[i];
        os << "]";
      }
      os << "}";
      spec_json = os.str();
    }
    char* csv = nullptr;
    char* summary = nullptr;
    if (lp_experiment(spec_json.c_str(), &csv, &summary) != LP_OK)
      die(lp_last_error());
    if (out_csv == "-") {
      emit(csv);
      lp_free_string(summary);
    } else {
      if (!out_csv.empty()) {
        std::ofstream f(out_csv, std::ios::binary | std::ios::trunc);
        if (!f) die("cannot open " + out_csv);
        f << csv;
        f.flush();
        if (!f) die("write failed for " + out_csv);
        std::fprintf(stderr, "experiment: csv written to %s\n", out_csv.c_str());
      }
      emit(summary);
      lp_free_string(csv);
    }
    return 0;
  }

  return 0;
}
