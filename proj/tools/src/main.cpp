// quarkflow: decompose stencil update formulas into atomic stages.
#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "quarkflow/pipeline.hpp"

namespace {

using namespace quarkflow;

bool color_enabled() {
  const char* v = std::getenv("QUARKFLOW_COLOR");
  return v == nullptr || std::string(v) != "0";
}

std::string paint(const std::string& text, const char* code) {
  if (!color_enabled()) return text;
  return std::string("\033[") + code + "m" + text + "\033[0m";
}

std::string pass_str() { return paint("PASS", "32"); }
std::string fail_str() { return paint("FAIL", "31"); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << text;
}

struct LoadedInput {
  std::string name;
  ComputationalGraph graph;
  std::optional<TracedGraph> traced;
};

LoadedInput load_input(const std::string& input, const std::string& example) {
  LoadedInput loaded;
  if (!example.empty()) {
    ExampleGraph ex = example_graph(example);
    loaded.name = example;
    loaded.graph = std::move(ex.graph);
    loaded.traced = std::move(ex.traced);
    return loaded;
  }
  loaded.name = std::filesystem::path(input).stem().string();
  const std::string text = read_file(input);
  const bool looks_json =
      input.size() > 5 && input.substr(input.size() - 5) == ".json";
  if (looks_json) {
    loaded.graph = read_graph_json(text);
  } else {
    loaded.traced = trace(parse_stencil(text));
    loaded.graph = loaded.traced->graph;
  }
  return loaded;
}

std::string summary_text(const LoadedInput& input, const PipelineResult& run) {
  SharingReport sharing = sharing_report(input.graph, run.decomposition);
  std::ostringstream out;
  out << "input: " << input.name << "\n";
  out << "vertices: " << input.graph.vertex_count() << "\n";
  out << "edges: " << input.graph.edge_count() << "\n";
  out << "swept_edges: " << input.graph.swept_count() << "\n";
  out << "swept_depth: " << swept_depth(input.graph) << "\n";
  out << "wk: " << run.model.wk << "\n";
  out << "stages: " << run.decomposition.stage_count << "\n";
  for (const Stage& stage : run.decomposition.stages) {
    out << "stage " << stage.index << ": vertices=" << stage.vertices.size()
        << " edges=" << stage.edges.size() << " swept=" << stage.swept_count
        << " shared_out=" << stage.shared_out.size() << "\n";
  }
  out << "shared_vertices: " << sharing.shared_vertex_count << "\n";
  out << "shared_weight: " << sharing.shared_weight << "\n";
  out << "sharing_total: " << sharing.total << "\n";
  out << "objective: " << run.objective << "\n";
  return out.str();
}

std::vector<std::int64_t> parse_wk_list(const std::string& list) {
  std::vector<std::int64_t> values;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    values.push_back(std::stoll(item));
  }
  return values;
}

int cmd_decompose(const std::string& input, const std::string& example,
                  std::int64_t wk, const std::string& wk_sweep,
                  const std::string& format, const std::string& out_path,
                  const std::string& dump_network) {
  LoadedInput loaded = load_input(input, example);
  require_valid(loaded.graph);

  if (!wk_sweep.empty()) {
    std::vector<std::int64_t> wks = parse_wk_list(wk_sweep);
    std::optional<std::pair<std::int64_t, std::int64_t>> first;
    bool consistent = true;
    std::ostringstream out;
    for (std::int64_t w : wks) {
      PipelineResult run = decompose_graph(loaded.graph, w);
      SharingReport sharing = sharing_report(loaded.graph, run.decomposition);
      out << "wk=" << w << ": stages=" << run.decomposition.stage_count
          << " sharing_total=" << sharing.total
          << " shared_weight=" << sharing.shared_weight << "\n";
      if (!first)
        first = {run.decomposition.stage_count, sharing.total};
      else
        consistent = consistent &&
                     first->first == run.decomposition.stage_count &&
                     first->second == sharing.total;
    }
    out << "wk_sweep_consistent: " << (consistent ? "yes" : "no") << "\n";
    write_output(out.str(), out_path);
    return 0;
  }

  PipelineResult run = decompose_graph(loaded.graph, wk);
  if (!dump_network.empty())
    write_output(dump_dimacs(run.network), dump_network);

  if (format == "summary") {
    write_output(summary_text(loaded, run), out_path);
    std::cerr << "time_ms: " << run.solve_ms << "\n";
  } else if (format == "json") {
    write_output(write_decomposition_json(run.decomposition), out_path);
  } else if (format == "dot") {
    write_output(render_dot(loaded.graph, run.decomposition), out_path);
  } else if (format == "kernels") {
    if (!loaded.traced)
      throw MissingExprMetadataError(
          "kernels need a formula input (.stencil or a traced example), "
          "not a bare graph");
    std::vector<std::string> kernels =
        emit_stage_kernels(*loaded.traced, run.decomposition);
    if (out_path.empty()) {
      for (const std::string& k : kernels) std::cout << k;
    } else {
      std::filesystem::create_directories(out_path);
      for (std::size_t i = 0; i < kernels.size(); ++i) {
        const std::string file =
            out_path + "/stage_" + std::to_string(i + 1) + ".kernel";
        write_output(kernels[i], file);
      }
    }
  } else {
    throw std::runtime_error("unknown format \"" + format + "\"");
  }
  return 0;
}

int cmd_verify(const std::string& graph_path, const std::string& decomp_path) {
  ComputationalGraph graph = read_graph_json(read_file(graph_path));
  require_valid(graph);
  Decomposition decomposition =
      read_decomposition_json(read_file(decomp_path));
  VerificationReport report = verify(graph, decomposition);
  std::cout << report.to_json();
  return report.overall ? 0 : 2;
}

int cmd_render(const std::string& input, const std::string& example,
               const std::string& decomp_path, std::int64_t wk,
               const std::string& out_path) {
  LoadedInput loaded = load_input(input, example);
  require_valid(loaded.graph);
  Decomposition decomposition;
  if (!decomp_path.empty()) {
    decomposition = read_decomposition_json(read_file(decomp_path));
    if (static_cast<int>(decomposition.create.size()) !=
        loaded.graph.vertex_count())
      throw std::runtime_error("decomposition covers " +
                               std::to_string(decomposition.create.size()) +
                               " vertices, graph has " +
                               std::to_string(loaded.graph.vertex_count()));
  } else {
    decomposition = decompose_graph(loaded.graph, wk).decomposition;
  }
  write_output(render_dot(loaded.graph, decomposition), out_path);
  return 0;
}

int cmd_example(const std::string& name, const std::string& out_path) {
  ExampleGraph ex = example_graph(name);
  write_output(write_graph_json(ex.graph), out_path);
  return 0;
}

double median_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n == 0) return 0.0;
  return n % 2 == 1 ? values[n / 2]
                    : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

int cmd_bench(int repeat, int random_seeds, std::int64_t wk) {
  if (random_seeds > 0) {
    CrossCheckResult result =
        run_oracle_cross_check(0, static_cast<std::uint64_t>(random_seeds), wk);
    std::cout << "random graphs: " << result.total << "\n";
    std::cout << "oracle match: " << result.objective_matches << "/"
              << result.total << "\n";
    std::cout << "verified: " << result.verified << "/" << result.total
              << "\n";
    std::cout << "duality exact: " << result.duality_ok << "/" << result.total
              << "\n";
    std::cout << "status: " << (result.all_ok() ? pass_str() : fail_str())
              << "\n";
    if (!result.first_failure.empty())
      std::cout << "first failure: " << result.first_failure << "\n";
    return 0;
  }

  struct Row {
    const char* name;
    double budget_ms;  // <= 0 means no budget
  };
  const Row rows[] = {{"heat1d", 0.0}, {"heat3d", 100.0}, {"euler3d", 10000.0}};
  std::cout << "name      vertices  edges  swept  K  shared_w  median_ms  budget_ms  status\n";
  for (const Row& row : rows) {
    ExampleGraph ex = example_graph(row.name);
    std::vector<double> times;
    PipelineResult last;
    for (int i = 0; i < repeat; ++i) {
      last = decompose_graph(ex.graph, wk);
      times.push_back(last.solve_ms);
    }
    SharingReport sharing = sharing_report(ex.graph, last.decomposition);
    const double median = median_of(times);
    const bool ok = row.budget_ms <= 0.0 || median < row.budget_ms;
    char line[160];
    std::snprintf(line, sizeof(line),
                  "%-9s %8d %6d %6d %2lld %9lld %10.3f %10.0f  ",
                  row.name, ex.graph.vertex_count(), ex.graph.edge_count(),
                  ex.graph.swept_count(),
                  static_cast<long long>(last.decomposition.stage_count),
                  static_cast<long long>(sharing.shared_weight), median,
                  row.budget_ms);
    std::cout << line << (ok ? pass_str() : fail_str()) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quarkflow: optimal decomposition of stencil update formulas "
               "into atomic stages"};
  app.require_subcommand(1);

  std::string input, example, out_path, decomp_path, dump_network;
  std::string format = "summary";
  std::string wk_sweep;
  std::int64_t wk = 1;
  int repeat = 10, random_seeds = 0;

  CLI::App* dec = app.add_subcommand("decompose",
                                     "decompose a formula or graph into stages");
  dec->add_option("--input", input, "input file (.stencil DSL or .json graph)");
  dec->add_option("--example", example, "bundled example name");
  dec->add_option("--wk", wk, "stage-count weight in the objective")
      ->check(CLI::PositiveNumber);
  dec->add_option("--wk-sweep", wk_sweep,
                  "comma-separated wk values; reports whether results change");
  dec->add_option("--format", format, "json|dot|kernels|summary")
      ->check(CLI::IsMember({"json", "dot", "kernels", "summary"}));
  dec->add_option("--out", out_path, "output file (kernels: directory)");
  dec->add_option("--dump-network", dump_network,
                  "also write the flow network in DIMACS-min format");

  CLI::App* ver = app.add_subcommand("verify",
                                     "check a decomposition against its graph");
  std::string verify_graph;
  ver->add_option("--input", verify_graph, "graph JSON")->required();
  ver->add_option("--decomp", decomp_path, "decomposition JSON")->required();

  CLI::App* ren = app.add_subcommand("render", "render a decomposition as DOT");
  ren->add_option("--input", input, "input file (.stencil or .json)");
  ren->add_option("--example", example, "bundled example name");
  ren->add_option("--decomp", decomp_path,
                  "existing decomposition JSON (otherwise solve)");
  ren->add_option("--wk", wk, "stage-count weight")->check(CLI::PositiveNumber);
  ren->add_option("--out", out_path, "output file");

  CLI::App* exa = app.add_subcommand("example", "write a bundled graph as JSON");
  std::string example_name;
  exa->add_option("name", example_name, "heat1d|heat3d|euler3d|manu-a..manu-f")
      ->required();
  exa->add_option("--out", out_path, "output file");

  CLI::App* ben = app.add_subcommand("bench", "time the bundled examples");
  ben->add_option("--repeat", repeat, "runs per example")
      ->check(CLI::PositiveNumber);
  ben->add_option("--random", random_seeds,
                  "cross-check N seeded random graphs against the oracle");
  ben->add_option("--wk", wk, "stage-count weight")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (dec->parsed()) {
      if (input.empty() == example.empty()) {
        std::cerr << "error: need exactly one of --input / --example\n";
        return 1;
      }
      return cmd_decompose(input, example, wk, wk_sweep, format, out_path,
                           dump_network);
    }
    if (ver->parsed()) return cmd_verify(verify_graph, decomp_path);
    if (ren->parsed()) {
      if (input.empty() == example.empty()) {
        std::cerr << "error: need exactly one of --input / --example\n";
        return 1;
      }
      return cmd_render(input, example, decomp_path, wk, out_path);
    }
    if (exa->parsed()) return cmd_example(example_name, out_path);
    if (ben->parsed()) return cmd_bench(repeat, random_seeds, wk);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
