// Command-line harness: pathological workloads against selectable collector
// backends with metrics CSV emission, a differential fuzz runner, and
// reduction self-tests against the naive reachability oracle.

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "gcds/metrics.hpp"
#include "gcds/reductions.hpp"
#include "gcds/workloads.hpp"

namespace {

using namespace gcds;

int run_command(const std::string& backend_name, const std::string& workload,
                std::uint32_t n, std::uint32_t cap, bool cyclic,
                double permanent_fraction, std::uint64_t seed,
                const std::string& out_path, const std::string& trace_path,
                bool no_cursor) {
  BackendOptions bopts{!no_cursor};
  auto backend = make_backend(backend_name, bopts);
  StepCounter counter;
  backend->attach_counter(&counter);

  MetricsRecord record;
  int exit_code = 0;

  if (!trace_path.empty()) {
    auto trace = load_trace_file(trace_path);
    record = run_trace(*backend, trace);
  } else if (workload == "thrashing") {
    ThrashingParams params;
    params.n = n;
    params.cap = cap;
    params.cyclic = cyclic;
    params.permanent_fraction = permanent_fraction;
    CapRunReport rep = run_thrashing(*backend, params);
    record = std::move(rep.record);
    std::cout << "stage2_max_pause=" << rep.stage2_max_pause
              << " injected_steps=" << rep.injected_steps
              << " peak_live=" << rep.peak_live
              << " out_of_memory=" << (rep.out_of_memory ? "yes" : "no")
              << "\n";
    if (rep.out_of_memory) {
      std::cerr << "allocation request could not be serviced under the cap\n";
      exit_code = 2;
    }
  } else if (workload == "baker") {
    BakerReport rep = run_baker(*backend, n);
    record = std::move(rep.record);
    std::cout << "delete_pause=" << rep.delete_pause
              << " service_pause=" << rep.service_pause
              << " serviced=" << (rep.serviced ? "yes" : "no") << "\n";
    if (!rep.serviced) exit_code = 2;
  } else {
    std::vector<MutOp> trace;
    if (workload == "list") {
      trace = workload_list(n);
    } else if (workload == "dbllist") {
      trace = workload_dbllist(n);
    } else if (workload == "sparse-churn") {
      trace = workload_sparse_churn(n, 2, seed);
    } else if (workload == "dense-teardown") {
      trace = workload_dense_teardown(n, 64, seed);
    } else {
      std::cerr << "unknown workload: " << workload << "\n";
      return 1;
    }
    record = run_trace(*backend, trace);
  }

  std::cout << "backend=" << backend->name() << " ops="
            << record.op_kinds.size() << " total_steps="
            << record.total_steps() << " max_pause="
            << record.max_pause_steps() << " delay="
            << to_string(measure_delay(record)) << "\n";

  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return 1;
    }
    write_metrics_csv(out, record);
  }
  return exit_code;
}

int fuzz_command(const std::string& backends_csv, const std::string& cls,
                 std::uint32_t trials, std::uint64_t seed,
                 std::uint32_t max_nodes, std::uint32_t max_ops,
                 bool no_cursor) {
  FuzzOptions opts;
  std::stringstream ss(backends_csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) opts.backends.push_back(tok);
  }
  opts.cls = parse_trace_class(cls);
  opts.trials = trials;
  opts.seed = seed;
  opts.max_nodes = max_nodes;
  opts.max_ops = max_ops;
  opts.cursor_memo = !no_cursor;
  FuzzReport rep = run_fuzz(opts);
  std::cout << rep.summary();
  return rep.violations == 0 ? 0 : 1;
}

int reduce_drds_command(const std::string& backend_name, std::uint32_t n,
                        std::uint32_t graphs, std::uint32_t ops_per_graph,
                        std::uint64_t seed) {
  auto factory = [&]() { return make_backend(backend_name); };
  std::uint64_t budget = calibrate_drds_pause_budget(factory, n);
  std::mt19937_64 rng(seed);
  std::uint64_t queries = 0, agreements = 0;
  for (std::uint32_t g = 0; g < graphs; ++g) {
    DrdsFromGcds reduced(factory(), budget, 1);
    NaiveDrds naive;
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (std::uint32_t i = 0; i < ops_per_graph; ++i) {
      std::uint32_t pick = rng() % 10;
      VertexId a = rng() % n;
      VertexId b = rng() % n;
      if (pick < 4) {
        reduced.dc_insert(a, b);
        naive.dc_insert(a, b);
        edges.push_back({a, b});
      } else if (pick < 6 && !edges.empty()) {
        std::size_t k = rng() % edges.size();
        auto [x, y] = edges[k];
        edges[k] = edges.back();
        edges.pop_back();
        reduced.dc_delete(x, y);
        naive.dc_delete(x, y);
      } else {
        if (a == b) b = (b + 1) % n;
        ++queries;
        if (reduced.dc_connected(a, b) == naive.dc_connected(a, b))
          ++agreements;
      }
    }
  }
  std::cout << "drds reduction: backend=" << backend_name
            << " budget=" << budget << " queries=" << queries
            << " agreements=" << agreements << "\n";
  return queries == agreements ? 0 : 1;
}

int reduce_lprds_command(const std::string& backend_name,
                         std::uint32_t layers, std::uint32_t width,
                         std::uint32_t updates, std::uint64_t seed) {
  std::vector<std::uint32_t> layer_of(layers * width);
  for (std::uint32_t l = 0; l < layers; ++l)
    for (std::uint32_t w = 0; w < width; ++w) layer_of[l * width + w] = l;
  auto factory = [&]() { return make_backend(backend_name); };
  std::uint64_t budget = calibrate_lprds_pause_budget(factory, layer_of);

  LprdsFromGcds reduced(factory(), layer_of, budget, 1);
  NaiveDrds naive;
  // Identity permutations between adjacent layers to start.
  std::vector<std::vector<VertexId>> perm(layers - 1);
  for (std::uint32_t l = 0; l + 1 < layers; ++l) {
    perm[l].resize(width);
    for (std::uint32_t w = 0; w < width; ++w) {
      perm[l][w] = w;
      reduced.lp_insert(l * width + w, (l + 1) * width + w);
      naive.dc_insert(l * width + w, (l + 1) * width + w);
    }
  }
  std::mt19937_64 rng(seed);
  std::uint64_t queries = 0, agreements = 0;
  auto check_all = [&]() {
    for (std::uint32_t w = 0; w < width; ++w) {
      for (VertexId target = 0; target < layers * width; ++target) {
        if (layer_of[target] == 0) continue;
        ++queries;
        if (reduced.lp_connected(w, target) == naive.dc_connected(w, target))
          ++agreements;
      }
    }
  };
  check_all();
  for (std::uint32_t u = 0; u < updates; ++u) {
    std::uint32_t l = rng() % (layers - 1);
    std::uint32_t i = rng() % width;
    std::uint32_t j = rng() % width;
    if (i == j) continue;
    // Swap two targets of one layer's permutation.
    VertexId si = l * width + i, sj = l * width + j;
    VertexId ti = (l + 1) * width + perm[l][i];
    VertexId tj = (l + 1) * width + perm[l][j];
    reduced.lp_delete(si, ti);
    naive.dc_delete(si, ti);
    reduced.lp_delete(sj, tj);
    naive.dc_delete(sj, tj);
    std::swap(perm[l][i], perm[l][j]);
    reduced.lp_insert(si, (l + 1) * width + perm[l][i]);
    naive.dc_insert(si, (l + 1) * width + perm[l][i]);
    reduced.lp_insert(sj, (l + 1) * width + perm[l][j]);
    naive.dc_insert(sj, (l + 1) * width + perm[l][j]);
    if (u % 37 == 0) check_all();
  }
  check_all();
  std::cout << "lprds reduction: backend=" << backend_name
            << " budget=" << budget << " queries=" << queries
            << " agreements=" << agreements << "\n";
  return queries == agreements ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reachability-based collector laboratory"};
  app.require_subcommand(1);

  // run
  std::string backend = "ett", workload = "list", out_path, trace_path;
  std::uint32_t n = 1024, cap = 0;
  bool cyclic = false, no_cursor = false;
  double permanent_fraction = 0.5;
  std::uint64_t seed = 1;
  auto* run = app.add_subcommand("run", "run a workload against a backend");
  run->add_option("--backend", backend, "rc|ms|ett|drds")->required();
  run->add_option("--workload", workload,
                  "thrashing|list|dbllist|baker|sparse-churn|dense-teardown");
  run->add_option("--n", n, "scale parameter");
  run->add_option("--cap", cap, "logical memory cap (thrashing)");
  run->add_flag("--cyclic", cyclic, "cyclic temporaries (thrashing)");
  run->add_option("--permanent-fraction", permanent_fraction,
                  "stage-1 share (thrashing)");
  run->add_option("--seed", seed, "workload seed");
  run->add_option("--out", out_path, "metrics CSV path");
  run->add_option("--trace", trace_path, "run a trace file instead");
  run->add_flag("--no-cursor", no_cursor, "disable the ett scan memoization");

  // fuzz
  std::string backends_csv = "ett,ms", cls = "general";
  std::uint32_t trials = 100, max_nodes = 300, max_ops = 2000;
  auto* fuzz = app.add_subcommand("fuzz", "differential fuzz vs the oracle");
  fuzz->add_option("--backends", backends_csv, "comma-separated backends");
  fuzz->add_option("--class", cls, "trace class (general|ar|aar|saar:<m>)");
  fuzz->add_option("--trials", trials, "number of traces");
  fuzz->add_option("--seed", seed, "fuzz seed");
  fuzz->add_option("--max-nodes", max_nodes, "max allocations per trace");
  fuzz->add_option("--max-ops", max_ops, "max ops per trace");
  fuzz->add_flag("--no-cursor", no_cursor, "disable the ett scan memoization");

  // reduce
  auto* reduce = app.add_subcommand("reduce", "reduction self-tests");
  reduce->require_subcommand(1);
  std::uint32_t graphs = 50, ops_per_graph = 200, layers = 8, width = 8,
                updates = 200, universe = 24;
  auto* rdrds = reduce->add_subcommand("drds", "reachability via a collector");
  rdrds->add_option("--backend", backend, "inner GCDS backend")->required();
  rdrds->add_option("--n", universe, "vertex universe size");
  rdrds->add_option("--graphs", graphs, "random graphs");
  rdrds->add_option("--ops", ops_per_graph, "ops per graph");
  rdrds->add_option("--seed", seed, "rng seed");
  auto* rlp = reduce->add_subcommand("lprds", "layered permutation queries");
  std::uint32_t lp_n = 0;
  rlp->add_option("--backend", backend, "inner GCDS backend")->required();
  rlp->add_option("--n", lp_n, "shorthand for an n-layer by n-wide grid");
  rlp->add_option("--layers", layers, "layer count");
  rlp->add_option("--width", width, "vertices per layer");
  rlp->add_option("--updates", updates, "random permutation updates");
  rlp->add_option("--seed", seed, "rng seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return run_command(backend, workload, n, cap, cyclic,
                         permanent_fraction, seed, out_path, trace_path,
                         no_cursor);
    }
    if (fuzz->parsed()) {
      return fuzz_command(backends_csv, cls, trials, seed, max_nodes, max_ops,
                          no_cursor);
    }
    if (reduce->parsed()) {
      if (rdrds->parsed())
        return reduce_drds_command(backend, universe, graphs, ops_per_graph,
                                   seed);
      if (rlp->parsed()) {
        if (lp_n) layers = width = lp_n;
        return reduce_lprds_command(backend, layers, width, updates, seed);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
