#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "hyperarr/cache.hpp"
#include "hyperarr/parse.hpp"
#include "hyperarr/report.hpp"
#include "support.hpp"

using namespace hyperarr;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(HYPERARR_BIN) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("hyperarr_cli_" + name);
  fs::remove_all(p);
  return p;
}

using Fact = std::pair<std::string, std::string>;

std::string leaf(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "none";
  return j.dump();
}

// (key, value) for every scalar leaf in document order; array elements take
// the key of their array. "coeffs" subtrees are skipped.
void json_facts(const Json& j, const std::string& key, std::vector<Fact>& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items())
      if (k != "coeffs") json_facts(v, k, out);
  } else if (j.is_array()) {
    for (const auto& e : j) json_facts(e, key, out);
  } else {
    out.emplace_back(key, leaf(j));
  }
}

// Reads the same pairs back from the indented text rendering.
std::vector<Fact> text_facts(const std::string& text) {
  std::vector<Fact> out;
  std::vector<std::pair<std::size_t, std::string>> keys;  // indent, key
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::size_t indent = line.find_first_not_of(' ');
    std::string body = line.substr(indent);
    while (body.rfind("- ", 0) == 0 || body == "-") {
      body = body.size() > 2 ? body.substr(2) : "";
      indent += 2;
    }
    while (!keys.empty() && keys.back().first >= indent) keys.pop_back();
    std::string key = keys.empty() ? "" : keys.back().second;
    std::string value = body;
    const auto colon = body.find(": ");
    if (colon != std::string::npos && body.front() != '[') {
      key = body.substr(0, colon);
      value = body.substr(colon + 2);
    } else if (!body.empty() && body.back() == ':') {
      keys.emplace_back(indent, body.substr(0, body.size() - 1));
      continue;
    }
    if (value.empty()) continue;
    if (value.front() == '[' && value.back() == ']') {
      std::string inner = value.substr(1, value.size() - 2);
      std::size_t pos = 0;
      while (!inner.empty()) {
        const auto comma = inner.find(", ", pos);
        out.emplace_back(key, inner.substr(pos, comma - pos));
        if (comma == std::string::npos) break;
        pos = comma + 2;
      }
    } else {
      out.emplace_back(key, value);
    }
  }
  return out;
}

// Every {"text", "coeffs"} pair parses back to the same coefficients.
void check_forms(const Json& j, unsigned order) {
  if (j.is_object()) {
    if (j.contains("text") && j.contains("coeffs") && j["coeffs"].is_array()) {
      const auto ambient = j["coeffs"].size();
      const auto f = parse_form(j["text"].get<std::string>(), ambient, order);
      Json coeffs = Json::array();
      for (const auto& c : f.coeffs()) coeffs.push_back(element_json(c));
      CHECK(coeffs == j["coeffs"]);
    }
    for (const auto& [k, v] : j.items()) check_forms(v, order);
  } else if (j.is_array()) {
    for (const auto& e : j) check_forms(e, order);
  }
}

void check_facts(const Json& report) {
  std::vector<Fact> from_json;
  json_facts(report, "", from_json);
  CHECK(text_facts(render_text(report)) == from_json);
}

}  // namespace

TEST_CASE("text and JSON carry the same facts") {
  CommandContext ctx;
  const std::vector<CommandResult> results{
      cmd_build(ctx, "H3"),
      cmd_lattice(ctx, "G(3,1,3)"),
      cmd_modular(ctx, "D4", std::nullopt),
      cmd_modular(ctx, "A(3)", 2),
      cmd_supersolvable(ctx, "G(3,1,3)"),
      cmd_supersolvable(ctx, "B(3) * G(3,3,3)"),
      cmd_rank2_criterion(ctx, "G25"),
      cmd_poincare(ctx, "B(3)"),
      cmd_decompose(ctx, "B(2) * A(2)"),
      cmd_verify_paper(ctx, "D4"),
  };
  for (const auto& r : results) {
    CAPTURE(r.report.dump());
    check_facts(r.report);
    const auto& arr = r.report.contains("arrangement") ? r.report["arrangement"] : Json();
    check_forms(r.report, arr.is_object() ? arr["field_order"].get<unsigned>() : 1U);
  }
  CHECK(results[7].report["exponents"] == Json::array({1, 3, 5}));
  CHECK(results[7].report["poincare"]["text"] == "1 + 9t + 23t^2 + 15t^3");
  CHECK(results[8].report["factors"].size() == 2);
  CHECK(results[9].exit_code == 0);
}

TEST_CASE("property: random reports render faithfully [1000 cases]") {
  testing::Gen g(0xC11);
  const auto dir = scratch("random");
  fs::create_directories(dir);
  const auto path = (dir / "a.arr").string();
  const std::vector<unsigned> orders{1, 3, 4, 5};
  CommandContext ctx;
  for (int iter = 0; iter < 1000; ++iter) {
    const unsigned n = g.pick(orders);
    const auto a = g.arrangement(static_cast<std::size_t>(g.range(1, 4)), n, 6);
    {
      std::ofstream out(path);
      out << write_arrangement(a);
    }
    const auto r = iter % 2 ? cmd_supersolvable(ctx, path) : cmd_modular(ctx, path, std::nullopt);
    check_facts(r.report);
    check_forms(r.report, n);
    CHECK(r.report["arrangement"]["content_hash"] == a.content_hash());
  }
  fs::remove_all(dir);
}

TEST_CASE("exit codes") {
  CHECK(run("lattice D4").code == 0);
  CHECK(run("supersolvable G29 --rank2-criterion").code == 0);
  CHECK(run("build Nope").code == 2);
  CHECK(run("build 'G(3,2,3)'").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("modular D4 --rank 9").code == 2);
  CHECK(run("supersolvable 'B(2) * B(2)' --rank2-criterion").code == 3);
  CHECK(run("--max-flats 10 lattice F4").code == 3);
  CHECK(run("verify-paper nothing-here").code == 2);
  CHECK(run("verify-paper F4/2").code == 0);

  const auto dir = scratch("bad");
  fs::create_directories(dir);
  {
    std::ofstream out(dir / "bad.arr");
    out << "ambient 2 field 1\na +\n";
  }
  CHECK(run("build " + (dir / "bad.arr").string()).code == 2);
  fs::remove_all(dir);
}

TEST_CASE("JSON output is deterministic across runs and thread counts") {
  for (std::string args : {"supersolvable G26", "modular 'G(3,1,3)'", "poincare 'B(3) * A(2)'"}) {
    CAPTURE(args);
    const auto a = run("--json --threads 1 " + args);
    const auto b = run("--json --threads 1 " + args);
    const auto c = run("--json --threads 8 " + args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    CHECK_NOTHROW((void)Json::parse(a.out));
  }
  const auto t = run("--json --timing lattice D4");
  CHECK(Json::parse(t.out).contains("timing"));
  CHECK_FALSE(Json::parse(run("--json lattice D4").out).contains("timing"));
}

TEST_CASE("warm and cold cache give identical reports") {
  const auto dir = scratch("cache");
  const std::string flag = "--json --cache-dir " + dir.string() + " ";
  for (std::string args : {"supersolvable G29", "modular H3", "poincare 'G(3,1,3) * B(2)'"}) {
    CAPTURE(args);
    const auto plain = run("--json " + args);
    const auto cold = run(flag + args);
    const auto warm = run(flag + args);
    CHECK(cold.out == plain.out);
    CHECK(warm.out == cold.out);
  }
  std::size_t entries = 0;
  for (const auto& e : fs::directory_iterator(dir)) entries += e.path().extension() == ".lattice";
  CHECK(entries >= 3);

  // A corrupted entry is a miss, not an error.
  for (const auto& e : fs::directory_iterator(dir)) {
    std::ofstream out(e.path(), std::ios::trunc);
    out << "hyperarr-lattice 1\ngarbage\n";
  }
  const auto again = run(flag + "modular H3");
  CHECK(again.code == 0);
  CHECK(again.out == run("--json modular H3").out);

  setenv(kCacheEnv, dir.string().c_str(), 1);
  CHECK(run("--json modular H3").code == 0);
  unsetenv(kCacheEnv);
  fs::remove_all(dir);
}
