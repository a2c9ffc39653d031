// Drives the installed CLI binary end to end. The binary path arrives as the
// first non-flag argument (wired up by ctest).
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "quarkflow/graph.hpp"

namespace {

std::string g_binary;
std::filesystem::path g_dir;

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = "QUARKFLOW_COLOR=0 " + g_binary + " " + args + " 2>/dev/null";
  RunResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buffer;
  std::size_t n = 0;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
    result.out.append(buffer.data(), n);
  int raw = pclose(pipe);
  result.status = WEXITSTATUS(raw);
  return result;
}

std::string path_of(const char* name) { return (g_dir / name).string(); }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE(out.good());
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("decompose --example heat3d --format summary") {
  RunResult r = run("decompose --example heat3d --format summary");
  CHECK(r.status == 0);
  CHECK(r.out.find("stages: 2\n") != std::string::npos);
  CHECK(r.out.find("shared_weight: 2\n") != std::string::npos);
  CHECK(r.out.find("swept_edges: 6\n") != std::string::npos);
}

TEST_CASE("decompose a DSL file end to end") {
  const std::string stencil = path_of("heat.stencil");
  write_file(stencil,
             "input u0;\n"
             "let r = 1 / 2;\n"
             "let uHalf = u0 + r / 2 * (im(u0) + ip(u0) - 2 * u0);\n"
             "output un = u0 + r * (im(uHalf) + ip(uHalf) - 2 * uHalf);\n");
  RunResult r = run("decompose --input " + stencil + " --format summary");
  CHECK(r.status == 0);
  CHECK(r.out.find("stages: 2\n") != std::string::npos);
  CHECK(r.out.find("shared_weight: 2\n") != std::string::npos);
}

TEST_CASE("decompose/verify round trip, then a tampered file") {
  const std::string graph = path_of("g.json");
  const std::string decomp = path_of("d.json");
  CHECK(run("example manu-c --out " + graph).status == 0);
  CHECK(run("decompose --input " + graph + " --format json --out " + decomp)
            .status == 0);

  RunResult ok = run("verify --input " + graph + " --decomp " + decomp);
  CHECK(ok.status == 0);
  CHECK(ok.out.find("\"overall\": true") != std::string::npos);

  // duplicate one stage edge into another stage
  std::string text = read_file(decomp);
  const std::string marker = "\"edges\": [";
  std::size_t pos = text.find(marker);
  REQUIRE(pos != std::string::npos);
  std::size_t open = text.find('[', pos + marker.size());
  std::size_t close = text.find(']', open);
  std::string first_edge = text.substr(open, close - open + 1);
  std::size_t second = text.find(marker, close);
  REQUIRE(second != std::string::npos);
  text.insert(second + marker.size(), first_edge + ", ");
  write_file(decomp, text);

  RunResult bad = run("verify --input " + graph + " --decomp " + decomp);
  CHECK(bad.status == 2);
  CHECK(bad.out.find("\"overall\": false") != std::string::npos);
}

TEST_CASE("verify with a missing file exits 1") {
  CHECK(run("verify --input /nonexistent.json --decomp /nonexistent2.json")
            .status == 1);
}

TEST_CASE("example: writes graph JSON; unknown name exits 1") {
  RunResult r = run("example heat1d");
  CHECK(r.status == 0);
  quarkflow::ComputationalGraph g = quarkflow::read_graph_json(r.out);
  CHECK(g.vertex_count() == 15);
  CHECK(g.swept_count() == 4);
  CHECK(quarkflow::validate(g).sources.size() == 1);
  CHECK(quarkflow::validate(g).sinks.size() == 1);

  CHECK(run("example nope").status == 1);
}

TEST_CASE("euler3d example has swept depth 8") {
  RunResult r = run("example euler3d");
  CHECK(r.status == 0);
  CHECK(quarkflow::swept_depth(quarkflow::read_graph_json(r.out)) == 8);
}

TEST_CASE("dot and json outputs are byte-deterministic") {
  const std::string a = path_of("a.dot"), b = path_of("b.dot");
  CHECK(run("decompose --example heat1d --format dot --out " + a).status == 0);
  CHECK(run("decompose --example heat1d --format dot --out " + b).status == 0);
  CHECK(read_file(a) == read_file(b));
  CHECK(read_file(a).rfind("digraph", 0) == 0);
}

TEST_CASE("render subcommand matches decompose --format dot") {
  const std::string a = path_of("r1.dot"), b = path_of("r2.dot");
  CHECK(run("render --example manu-a --out " + a).status == 0);
  CHECK(run("decompose --example manu-a --format dot --out " + b).status == 0);
  CHECK(read_file(a) == read_file(b));
}

TEST_CASE("kernels write one file per stage") {
  const std::string dir = path_of("kernels");
  CHECK(run("decompose --example heat1d --format kernels --out " + dir)
            .status == 0);
  CHECK(std::filesystem::exists(dir + "/stage_1.kernel"));
  CHECK(std::filesystem::exists(dir + "/stage_2.kernel"));
  CHECK(read_file(dir + "/stage_2.kernel").find("un = ") != std::string::npos);
}

TEST_CASE("wk sweep reports consistency") {
  RunResult r = run("decompose --example heat1d --wk-sweep 1,5,100");
  CHECK(r.status == 0);
  CHECK(r.out.find("wk=1: stages=2 sharing_total=2") != std::string::npos);
  CHECK(r.out.find("wk=100: stages=2 sharing_total=2") != std::string::npos);
  CHECK(r.out.find("wk_sweep_consistent: yes") != std::string::npos);
}

TEST_CASE("bench table runs with --repeat 1") {
  RunResult r = run("bench --repeat 1");
  CHECK(r.status == 0);
  CHECK(r.out.find("heat1d") != std::string::npos);
  CHECK(r.out.find("euler3d") != std::string::npos);
  CHECK(r.out.find("PASS") != std::string::npos);
}

TEST_CASE("bench --random cross-checks against the oracle") {
  RunResult r = run("bench --random 25");
  CHECK(r.status == 0);
  CHECK(r.out.find("oracle match: 25/25") != std::string::npos);
  CHECK(r.out.find("status: PASS") != std::string::npos);
}

TEST_CASE("kernels need formula input, not a bare graph") {
  const std::string graph = path_of("bare.json");
  CHECK(run("example manu-a --out " + graph).status == 0);
  CHECK(run("decompose --input " + graph + " --format kernels").status == 1);
}

TEST_CASE("decompose requires exactly one input source") {
  CHECK(run("decompose").status == 1);
  CHECK(run("decompose --example heat1d --input x.json").status == 1);
  CHECK(run("decompose --input /does/not/exist.json").status == 1);
}

int main(int argc, char** argv) {
  doctest::Context context;
  context.applyCommandLine(argc, argv);
  for (int i = 1; i < argc; ++i)
    if (argv[i][0] != '-') g_binary = argv[i];
  if (g_binary.empty()) {
    const char* env = std::getenv("QUARKFLOW_BIN");
    if (env) g_binary = env;
  }
  if (g_binary.empty()) {
    std::fprintf(stderr, "usage: test_cli <path-to-quarkflow-binary>\n");
    return 1;
  }
  g_dir = std::filesystem::temp_directory_path() / "quarkflow_cli_test";
  std::filesystem::create_directories(g_dir);
  int rc = context.run();
  std::filesystem::remove_all(g_dir);
  return rc;
}
