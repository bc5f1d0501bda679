#include "gwac/cli.hpp"

#include <cstdint>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gwac/codec.hpp"
#include "gwac/errors.hpp"
#include "gwac/evalgen.hpp"
#include "gwac/graph.hpp"
#include "gwac/ioutil.hpp"
#include "gwac/rng.hpp"

namespace gwac {

namespace {

const CLI::Validator RhoCheck(
    [](std::string& s) {
      const double v = std::stod(s);
      return (v > 0.0 && v <= 1.0) ? "" : "must be in (0, 1]";
    },
    "RHO");

const CLI::Validator PositiveReal(
    [](std::string& s) { return std::stod(s) > 0.0 ? "" : "must be positive"; },
    "POSITIVE");

const CLI::Validator EvenOrder(
    [](std::string& s) {
      const int v = std::stoi(s);
      return (v >= 2 && v <= 20 && v % 2 == 0) ? "" : "must be even and in [2, 20]";
    },
    "EVEN");

struct CodecFlags {
  std::string mode = "line";
  double rho = 1.0;
  double step = 0.01;
  int K = 8;
  int m_max = 2;

  void attach(CLI::App* cmd, bool with_rho) {
    cmd->add_option("--mode", mode, "filtering operator: line or edge")
        ->check(CLI::IsMember({"line", "edge"}));
    if (with_rho)
      cmd->add_option("--rho", rho, "kept coefficient fraction")->check(RhoCheck);
    cmd->add_option("--step", step, "quantizer step size")->check(PositiveReal);
    cmd->add_option("--K", K, "filter polynomial order")->check(EvenOrder);
    cmd->add_option("--mmax", m_max, "decomposition levels")->check(CLI::Range(1, 3));
  }

  CodecConfig config() const {
    CodecConfig cfg;
    cfg.mode = mode == "edge" ? OperatorMode::edge : OperatorMode::line;
    cfg.rho = rho;
    cfg.quant_step = step;
    cfg.filter_order = K;
    cfg.m_max = m_max;
    return cfg;
  }
};

struct GenFlags {
  std::string kind = "sensor";
  int n = 500;
  uint64_t seed = 0;
  int k = 15;
  int sensor_k = 6;
  int communities = 5;
  double p = 0.05;
  double intra_p = 0.19;
  double inter_p = 0.002;

  void attach(CLI::App* cmd) {
    cmd->add_option("--kind", kind, "graph family: sensor, community, knn, er")
        ->check(CLI::IsMember({"sensor", "community", "knn", "er"}));
    cmd->add_option("--n", n, "node count")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", seed, "generator seed");
    cmd->add_option("--k", k, "neighbor count (knn)")->check(CLI::PositiveNumber);
    cmd->add_option("--sensor-k", sensor_k, "neighbor count (sensor)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--communities", communities, "block count (community)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--p", p, "edge probability (er)")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--intra-p", intra_p, "within-block probability (community)")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--inter-p", inter_p, "across-block probability (community)")
        ->check(CLI::Range(0.0, 1.0));
  }

  GenSpec spec() const {
    GenSpec s;
    s.kind = kind_from_name(kind);
    s.n = n;
    s.seed = seed;
    s.knn_k = k;
    s.sensor_k = sensor_k;
    s.communities = communities;
    s.er_p = p;
    s.intra_p = intra_p;
    s.inter_p = inter_p;
    return s;
  }
};

MetricReport eval_report(const Bitstream& b, const UGraph& ref, int trials,
                         int cluster_k, uint64_t seed) {
  const UGraph rec = decompress(b);
  if (rec.n != ref.n)
    throw std::invalid_argument("eval: bitstream and reference disagree on node count");

  MetricReport row;
  row.method = b.config.mode == OperatorMode::edge ? "proposed-edge" : "proposed-line";
  row.operating_point = b.config.rho;
  row.bytes_topology = b.topology.size();
  row.bytes_weights = b.weights.size();
  row.bytes_total = b.total_bytes();
  row.seed = seed;

  const Eigen::MatrixXd W_ref(weighted_adjacency(ref));
  const Eigen::MatrixXd W_rec(weighted_adjacency(rec));
  const Eigen::Index n2 = W_ref.size();
  row.snr_db = snr_db(Eigen::Map<const Eigen::VectorXd>(W_ref.data(), n2),
                      Eigen::Map<const Eigen::VectorXd>(W_rec.data(), n2));
  row.diffusion_snr_db =
      ref.n >= 100
          ? diffusion_snr(ref, rec, trials, mix_seed({seed, 1}))
          : std::numeric_limits<double>::quiet_NaN();
  if (cluster_k <= ref.n) {
    const auto labels_ref = spectral_clustering(ref, cluster_k, mix_seed({seed, 2}));
    const auto labels_rec = spectral_clustering(rec, cluster_k, mix_seed({seed, 3}));
    row.cluster_consistency = cluster_consistency(labels_ref, labels_rec);
  } else {
    row.cluster_consistency = std::numeric_limits<double>::quiet_NaN();
  }
  return row;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"gwac: lossless-topology, lossy-weight graph compression"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read defaults from an INI file");

  auto* gen_cmd = app.add_subcommand("generate", "write a synthetic weighted graph");
  GenFlags gen;
  std::string gen_out;
  gen.attach(gen_cmd);
  gen_cmd->add_option("--out", gen_out, "edge-list output path")->required();

  auto* comp_cmd = app.add_subcommand("compress", "edge list -> gwac bitstream");
  CodecFlags comp;
  std::string comp_in, comp_out;
  comp.attach(comp_cmd, true);
  comp_cmd->add_option("--in", comp_in, "edge-list input path")->required();
  comp_cmd->add_option("--out", comp_out, "bitstream output path")->required();

  auto* dec_cmd = app.add_subcommand("decompress", "gwac bitstream -> edge list");
  std::string dec_in, dec_out;
  dec_cmd->add_option("--in", dec_in, "bitstream input path")->required();
  dec_cmd->add_option("--out", dec_out, "edge-list output path")->required();

  auto* eval_cmd = app.add_subcommand("eval", "score one bitstream against a reference");
  std::string eval_in, eval_ref, eval_format = "csv";
  int eval_trials = 20, eval_k = 2;
  uint64_t eval_seed = 0;
  eval_cmd->add_option("--in", eval_in, "bitstream input path")->required();
  eval_cmd->add_option("--ref", eval_ref, "reference edge-list path")->required();
  eval_cmd->add_option("--trials", eval_trials, "diffusion trials")
      ->check(CLI::PositiveNumber);
  eval_cmd->add_option("--cluster-k", eval_k, "clustering target count")
      ->check(CLI::Range(2, 1 << 20));
  eval_cmd->add_option("--seed", eval_seed, "metric RNG seed");
  eval_cmd->add_option("--format", eval_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* sweep_cmd = app.add_subcommand("sweep", "rate-distortion sweep report");
  CodecFlags sweep_codec;
  GenFlags sweep_gen;
  sweep_codec.attach(sweep_cmd, false);
  std::string sweep_graph_file, sweep_out, sweep_format = "csv";
  std::vector<std::string> sweep_methods{"proposed-line", "proposed-edge", "direct-dct",
                                         "direct-lra",    "direct-gfb",    "binary"};
  std::vector<double> sweep_rhos{0.005, 0.01, 0.02, 0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 1.0};
  int sweep_trials = 20, sweep_k = 2;
  sweep_cmd->add_option("--in", sweep_graph_file, "edge-list input path (overrides --graph)");
  sweep_cmd->add_option("--graph", sweep_gen.kind, "generate the input graph instead")
      ->check(CLI::IsMember({"sensor", "community", "knn", "er"}));
  sweep_cmd->add_option("--n", sweep_gen.n, "node count for --graph")
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--methods", sweep_methods, "comma-separated method list")
      ->delimiter(',');
  sweep_cmd->add_option("--rhos", sweep_rhos, "comma-separated operating points")
      ->delimiter(',')
      ->check(RhoCheck);
  sweep_cmd->add_option("--trials", sweep_trials, "diffusion trials")
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--cluster-k", sweep_k, "clustering target count")
      ->check(CLI::Range(2, 1 << 20));
  sweep_cmd->add_option("--seed", sweep_gen.seed, "graph and metric seed");
  sweep_cmd->add_option("--out", sweep_out, "report path (stdout when omitted)");
  sweep_cmd->add_option("--format", sweep_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen_cmd->parsed()) {
      save_edge_list(gen_out, generate(gen.spec()));
      return 0;
    }
    if (comp_cmd->parsed()) {
      const UGraph g = load_edge_list(comp_in);
      const Bitstream b = compress(g, comp.config());
      write_file_atomic(comp_out, b.serialize());
      return 0;
    }
    if (dec_cmd->parsed()) {
      const Bitstream b = Bitstream::parse(read_binary_file(dec_in));
      save_edge_list(dec_out, decompress(b));
      return 0;
    }
    if (eval_cmd->parsed()) {
      const Bitstream b = Bitstream::parse(read_binary_file(eval_in));
      const UGraph ref = load_edge_list(eval_ref);
      const MetricReport row = eval_report(b, ref, eval_trials, eval_k, eval_seed);
      std::cout << (eval_format == "json" ? report_json({row}) : report_csv({row}));
      return 0;
    }
    if (sweep_cmd->parsed()) {
      SweepOptions opt;
      opt.methods.clear();
      for (const std::string& name : sweep_methods)
        opt.methods.push_back(method_from_name(name));
      opt.rhos = sweep_rhos;
      opt.codec = sweep_codec.config();
      opt.cluster_k = sweep_k;
      opt.diffusion_trials = sweep_trials;
      opt.seed = sweep_gen.seed;
      const UGraph g = sweep_graph_file.empty() ? generate(sweep_gen.spec())
                                                : load_edge_list(sweep_graph_file);
      const std::vector<MetricReport> rows = rd_sweep(g, opt);
      const std::string text =
          sweep_format == "json" ? report_json(rows) : report_csv(rows);
      if (sweep_out.empty())
        std::cout << text;
      else
        write_file_atomic(sweep_out, text);
      return 0;
    }
  } catch (const DecodeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace gwac
