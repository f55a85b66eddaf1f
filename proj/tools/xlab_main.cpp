#include <CLI11.hpp>
#include <optional>
#include <string>
#include <vector>

#include "xlab/runner.hpp"

namespace {

// Flag values override anything loaded from --config.
struct FlagValues {
  std::string config_path;
  std::string graph;
  std::string fn_path;
  std::string gen;
  std::vector<long long> k;
  std::vector<double> eps, t, gamma, b;
  std::optional<long long> trials;
  std::optional<int> nodes;
  std::optional<std::uint64_t> seed;
  std::optional<double> norm_cap;
  std::string bits;
  bool lower_tail = false;
  std::string out;
};

void add_common_flags(CLI::App* cmd, FlagValues& flags) {
  cmd->add_option("--config", flags.config_path, "JSON config file; flags override its values");
  cmd->add_option("--graph", flags.graph, "complete:N | cycle:N | margulis:M | graph file path");
  cmd->add_option("--fn", flags.fn_path, "matrix function JSON file");
  cmd->add_option("--gen", flags.gen, "generator spec seed:n:d");
  cmd->add_option("--k", flags.k, "walk length (or matrix count for gt-verify)")
      ->expected(1, 10000);
  cmd->add_option("--eps", flags.eps, "deviation threshold")->expected(1, 10000);
  cmd->add_option("--t", flags.t, "exponent scale t")->expected(1, 10000);
  cmd->add_option("--gamma", flags.gamma, "real part gamma")->expected(1, 10000);
  cmd->add_option("--b", flags.b, "imaginary part b")->expected(1, 10000);
  cmd->add_option("--trials", flags.trials, "Monte-Carlo trials / random vectors / walks");
  cmd->add_option("--nodes", flags.nodes, "quadrature nodes per arc (default 128)");
  cmd->add_option("--seed", flags.seed, "64-bit seed for trial streams");
  cmd->add_option("--norm-cap", flags.norm_cap, "gt-verify: max spectral norm of the tuple");
  cmd->add_option("--bits", flags.bits, "sample: explicit 0/1 seed string for the sampler");
  cmd->add_flag("--min-side", flags.lower_tail, "tail: check lambda_min <= -eps instead");
  cmd->add_option("--out", flags.out, "report basename; writes <out>.csv and <out>.json");
}

xlab::ExperimentConfig merge(const std::string& command, const FlagValues& flags) {
  xlab::ExperimentConfig cfg;
  if (!flags.config_path.empty()) cfg = xlab::load_config_file(flags.config_path);
  cfg.command = command;
  if (!flags.graph.empty()) cfg.graph = flags.graph;
  if (!flags.fn_path.empty()) cfg.fn_path = flags.fn_path;
  if (!flags.gen.empty()) cfg.gen = flags.gen;
  if (!flags.k.empty()) cfg.k = flags.k;
  if (!flags.eps.empty()) cfg.eps = flags.eps;
  if (!flags.t.empty()) cfg.t = flags.t;
  if (!flags.gamma.empty()) cfg.gamma = flags.gamma;
  if (!flags.b.empty()) cfg.b = flags.b;
  if (flags.trials) cfg.trials = flags.trials;
  if (flags.nodes) cfg.nodes = *flags.nodes;
  if (flags.seed) cfg.seed = *flags.seed;
  if (flags.norm_cap) cfg.norm_cap = *flags.norm_cap;
  if (!flags.bits.empty()) cfg.bits = flags.bits;
  if (flags.lower_tail) cfg.lower_tail = true;
  if (!flags.out.empty()) cfg.out = flags.out;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"xlab: expander-walk matrix concentration laboratory"};
  app.require_subcommand(1);

  const std::vector<std::string> commands = {"gt-verify", "tail",       "tail-exact",
                                             "healy",     "mgf",        "martingale",
                                             "graph-info", "sample"};
  std::vector<FlagValues> flag_sets(commands.size());
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    CLI::App* sub = app.add_subcommand(commands[i]);
    add_common_flags(sub, flag_sets[i]);
    subs.push_back(sub);
  }

  // graph-info takes the spec positionally as well
  std::string graph_positional;
  subs[6]->add_option("spec", graph_positional, "graph spec");

  CLI11_PARSE(app, argc, argv);

  for (std::size_t i = 0; i < commands.size(); ++i) {
    if (subs[i]->parsed()) {
      try {
        if (i == 6 && !graph_positional.empty()) flag_sets[i].graph = graph_positional;
        const xlab::ExperimentConfig cfg = merge(commands[i], flag_sets[i]);
        return xlab::execute(cfg);
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
      }
    }
  }
  return 1;
}
