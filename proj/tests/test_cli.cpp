#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "qtop/cli.hpp"
#include "qtop/errors.hpp"
#include "qtop/manifold.hpp"

using namespace qtop;

namespace {

struct Run {
  int code;
  std::string out, err;
};

const std::filesystem::path& workdir() {
  static const std::filesystem::path d = [] {
    auto p = std::filesystem::temp_directory_path() /
             ("qtop-cli-" + std::to_string(::getpid()));
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
  }();
  return d;
}

std::string write_file(const std::string& name, const std::string& text) {
  const auto path = workdir() / name;
  std::ofstream(path) << text;
  return path.string();
}

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), {"--cache", (workdir() / "cache").string()});
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);)
    if (l == line) return true;
  return false;
}

}  // namespace

TEST_CASE("parsing manifold descriptions") {
  const ManifoldDesc l = parse_manifold("manifold lens { n = 5, q = 1 }");
  REQUIRE(std::holds_alternative<LensDesc>(l.body));
  CHECK(std::get<LensDesc>(l.body).n == 5);
  CHECK(l.kind() == "lens");

  const ManifoldDesc h = parse_manifold("manifold heegaard { genus = 2, word = \"a1 b1^-1 c1\" }");
  REQUIRE(std::holds_alternative<HeegaardDesc>(h.body));
  CHECK(std::get<HeegaardDesc>(h.body).word.tokens.size() == 3);

  const ManifoldDesc pl =
      parse_manifold("manifold plumbing { vertices = [(1,-2),(2,-2)], edges = [(1,2)] }");
  REQUIRE(std::holds_alternative<PlumbingTree>(pl.body));
  CHECK(std::get<PlumbingTree>(pl.body).vertices.size() == 2);
  CHECK(std::get<PlumbingTree>(pl.body).edges.size() == 1);

  const ManifoldDesc cs = parse_manifold(
      "# two summands\nmanifold connected_sum {\n  lens { n = 5, q = 1 },  # first\n"
      "  heegaard { genus = 1, word = \"\" }\n}\n");
  const auto hp = heegaard_presentation(cs);
  REQUIRE(hp.has_value());
  CHECK(hp->genus == 2);

  const ManifoldDesc mt = parse_manifold("manifold mapping_torus { genus = 1, word = \"a1\" }");
  CHECK(mt.kind() == "mapping_torus");
  CHECK_FALSE(heegaard_presentation(mt).has_value());
  CHECK(surgery_presentation(l)->vertices.size() == 1);
}

TEST_CASE("parse errors carry locations") {
  auto location = [](const std::string& text) {
    try {
      parse_manifold(text);
    } catch (const ParseError& e) {
      return std::pair{e.line(), e.column()};
    }
    return std::pair{0, 0};
  };
  CHECK(location("manifold lens { n = 5 q = 1 }") == std::pair{1, 23});
  CHECK(location("manifold\n  lens { n = 4, q = 2 }") == std::pair{2, 3});
  CHECK(location("manifold plumbing {\n vertices = [(1,0),(2,0),(3,0)],\n"
                 " edges = [(1,2),(2,3),(3,1)] }") == std::pair{1, 10});
  CHECK(location("manifold lens { n = 5, n = 1 }") == std::pair{1, 24});
  CHECK(location("manifold lens { n = 5 }") == std::pair{1, 10});
  CHECK(location("manifold torus { }") == std::pair{1, 10});
  CHECK(location("manifold connected_sum { mapping_torus { genus = 1, word = \"\" } }") ==
        std::pair{1, 26});
  CHECK(location("manifold heegaard { genus = 1, word = \"c1\" }") == std::pair{1, 32});
  CHECK(location("manifold lens { n = 5, q = 1 } extra") == std::pair{1, 32});
  CHECK(location("manifold heegaard { genus = 1, word = \"a1 }") == std::pair{1, 39});
}

TEST_CASE("jp command") {
  const std::string f = write_file("lens_5_1.m", "manifold lens { n = 5, q = 1 }\n");
  const Run r = run({"jp", "--p", "5", "--input", f});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "jp = 1 (exact, heegaard)"));
  CHECK(has_line(r.out, "route = heegaard"));

  const std::string e8 = write_file(
      "e8.m",
      "manifold plumbing {\n  vertices = [(1,-2),(2,-2),(3,-2),(4,-2),(5,-2),(6,-2),(7,-2),(8,-2)],\n"
      "  edges = [(1,2),(2,3),(3,4),(4,5),(5,6),(6,7),(3,8)]\n}\n");
  const Run s = run({"jp", "--p", "7", "--input", e8});
  CHECK(s.code == 0);
  CHECK(has_line(s.out, "jp = 0 (exact, surgery-sandwich)"));

  const std::string nil = write_file("nil.m", "manifold mapping_torus { genus = 1, word = \"a1\" }");
  const Run m = run({"jp", "--p", "5", "--input", nil});
  CHECK(has_line(m.out, "jp = 1 (exact, mapping-torus)"));
  CHECK(has_line(m.out, "b1 = 2"));
}

TEST_CASE("dim, invariant and rho commands") {
  const Run d = run({"dim", "--p", "7", "--genus", "1"});
  CHECK(d.code == 0);
  CHECK(d.out == "3\n");
  const std::string f = write_file("l72.m", "manifold lens { n = 7, q = 2 }");
  const Run inv = run({"invariant", "--p", "5", "--input", f});
  CHECK(inv.code == 0);
  CHECK(has_line(inv.out, "valuation = 0"));
  const Run rho = run({"rho", "--p", "5", "--input", f, "--column", "2"});
  CHECK(rho.code == 0);
  CHECK(has_line(rho.out, "dim = 2"));
  CHECK(has_line(rho.out, "column = 2"));
  CHECK(run({"rho", "--p", "5", "--input", f, "--column", "3"}).code == 1);
}

TEST_CASE("explore is deterministic and bounded") {
  const Run a = run({"explore", "--p", "5", "--genus", "2", "--samples", "100", "--seed", "1"});
  const Run b = run({"explore", "--p", "5", "--genus", "2", "--samples", "100", "--seed", "1"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  long total = 0;
  std::istringstream in(a.out);
  for (std::string l; std::getline(in, l);) {
    if (l.rfind("jp[", 0) == 0) total += std::stol(l.substr(l.find('=') + 1));
  }
  CHECK(total == 100);
  CHECK(a.out.find("jp[3]") == std::string::npos);
  CHECK(a.out.find("nondivisible = ") != std::string::npos);
}

TEST_CASE("check-bounds") {
  const std::string f = write_file("s1s2.m", "manifold heegaard { genus = 2, word = \"\" }");
  const Run ok = run({"check-bounds", "--p", "5", "--input", f, "--cut", "2"});
  CHECK(ok.code == 0);
  CHECK(has_line(ok.out, "chain = holds"));
  const Run bad = run({"check-bounds", "--p", "5", "--input", f, "--cut", "3"});
  CHECK(bad.code == 1);
  CHECK(has_line(bad.out, "chain = violated"));
}

TEST_CASE("selfcheck and cache") {
  CHECK(run({"cache", "--p", "5", "--genus", "2"}).code == 0);
  const Run s = run({"selfcheck", "--p", "5", "--trees", "10"});
  CHECK(s.code == 0);
  CHECK(has_line(s.out, "selfcheck = pass"));
  CHECK(s.out.find("cache = consistent (14 files)") != std::string::npos);
  // Deleting the cache reproduces identical reports.
  const std::string f = write_file("l10.m", "manifold lens { n = 10, q = 3 }");
  const Run before = run({"rho", "--p", "5", "--input", f});
  std::filesystem::remove_all(workdir() / "cache");
  const Run after = run({"rho", "--p", "5", "--input", f});
  CHECK(before.out == after.out);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 1);
  CHECK(run({"jp", "--p", "5"}).code == 1);
  CHECK(run({"jp", "--p", "5", "--input", (workdir() / "missing.m").string()}).code == 1);
  const std::string bad = write_file("bad.m", "manifold lens { n = 4, q = 2 }");
  const Run r = run({"jp", "--p", "5", "--input", bad});
  CHECK(r.code == 1);
  CHECK(r.err.find(":1:10:") != std::string::npos);
  CHECK(run({"dim", "--p", "9", "--genus", "1"}).code == 1);
  CHECK(run({"--help"}).code == 0);
}
