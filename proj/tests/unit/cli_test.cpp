#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "opk/cli/cache.hpp"
#include "opk/cli/cli.hpp"
#include "opk/operad/quotient.hpp"

namespace {

namespace fs = std::filesystem;
using namespace opk::cli;

/// Fresh directory under the system temp dir, removed on destruction.
struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("opk-test-" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

RunConfig parse(std::vector<std::string> args) {
  args.insert(args.begin(), "opk");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return parse_command_line(static_cast<int>(argv.size()), argv.data());
}

json without_timings(json doc) {
  doc.erase("timings");
  return doc;
}

struct Process {
  int status = 0;
  std::string output;
};

Process run_binary(const std::string& args) {
  Process p;
  FILE* f = popen((std::string(OPK_BINARY) + " " + args + " 2>/dev/null").c_str(), "r");
  if (!f) return {-1, ""};
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, f)) p.output.append(buf, n);
  const int st = pclose(f);
  p.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return p;
}

TEST(Cli, PartitionHomologyExample) {
  const auto doc = run(parse({"homology", "partition", "--r", "4", "--ring", "Z"}));
  EXPECT_EQ(doc["results"]["4"]["betti"], json({{"3", 6}}));
  EXPECT_EQ(doc["results"]["4"]["torsion"], json::object());
  for (const auto* key : {"version", "config", "results", "timings"}) EXPECT_TRUE(doc.contains(key)) << key;
}

TEST(Cli, KoszulCheckExample) {
  const auto doc = run(parse({"koszul-check", "--preset", "com", "--max-arity", "5", "--ring", "F2"}));
  ASSERT_EQ(doc["results"].size(), 4u);
  for (const auto& [k, v] : doc["results"].items()) EXPECT_TRUE(v["koszul"].get<bool>()) << k;
}

TEST(Cli, BarDimsExample) {
  const auto doc = run(parse({"bar", "--preset", "assoc", "--arity", "4", "--dims-only"}));
  EXPECT_EQ(doc["results"]["4"]["dims"], json({24, 120, 120}));
  EXPECT_FALSE(doc["results"]["4"].contains("betti"));
}

TEST(Cli, ValidatesConfigs) {
  EXPECT_THROW(parse({"bar", "--preset", "com", "--arity", "3", "--ring", "Fp"}), UsageError);
  EXPECT_THROW(parse({"bar", "--preset", "com", "--arity", "3", "--ring", "Q", "--p", "3"}), UsageError);
  EXPECT_THROW(parse({"bar", "--preset", "com", "--arity", "1"}), UsageError);
  EXPECT_THROW(parse({"bar", "--preset", "nope", "--arity", "3"}), UsageError);
  EXPECT_THROW(parse({"bar", "--arity", "3"}), UsageError);
  EXPECT_THROW(parse({"koszul-complex", "--preset", "com", "--arity", "3"}), UsageError);
  EXPECT_THROW(parse({"homology", "partition", "--preset", "com", "--r", "3"}), UsageError);
  const auto c = parse({"bar", "--preset", "com", "--arity", "3", "--ring", "Fp", "--p", "3"});
  EXPECT_EQ(c.to_json()["ring"], "F3");
}

TEST(Cli, SameConfigGivesSameDocument) {
  const auto c = parse({"bar", "--preset", "lie", "--max-arity", "5"});
  EXPECT_EQ(without_timings(run(c)), without_timings(run(c)));
  auto parallel = c;
  parallel.jobs = 3;
  EXPECT_EQ(run(parallel)["results"], run(c)["results"]);
}

TEST(Cli, CsvHasOneRowPerArityAndDegree) {
  const auto doc = run(parse({"bar", "--preset", "com", "--max-arity", "4"}));
  const std::string csv = render(doc, "csv");
  EXPECT_EQ(csv, "arity,degree,dim,betti,torsion\n2,1,1,1,\n3,1,1,0,\n3,2,3,2,\n4,1,1,0,\n4,2,10,0,\n4,3,15,6,\n");
}

TEST(Cache, StoreThenLoadReproducesTheDocument) {
  TempDir dir;
  const auto lie = opk::operad::quadratic_quotient(opk::operad::load_preset("lie"), 5);
  const OperadCache cache(dir.path);
  const auto key = OperadCache::key(opk::operad::preset_source("lie"), 5, lie.ring());
  cache.store(key, lie);
  const auto loaded = cache.load(key);
  ASSERT_TRUE(loaded.has_value());
  EXPECT_EQ(operad_to_json(*loaded).dump(), operad_to_json(lie).dump());
  for (int m = 2; m <= 5; ++m)
    for (int k = 2; m + k - 1 <= 5; ++k)
      for (int i = 1; i <= m; ++i) EXPECT_EQ(loaded->composite_matrix(m, i, k), lie.composite_matrix(m, i, k));
}

TEST(Cache, KeysSeparateRingsAndArities) {
  const auto src = opk::operad::preset_source("com");
  const auto q = opk::linalg::CoefficientRing::rationals();
  EXPECT_NE(OperadCache::key(src, 5, q), OperadCache::key(src, 4, q));
  EXPECT_NE(OperadCache::key(src, 5, q), OperadCache::key(src, 5, opk::linalg::CoefficientRing::integers()));
  EXPECT_EQ(OperadCache::key(src, 5, q), OperadCache::key(src, 5, q));
}

TEST(Cache, HitSkipsTheQuotientAndCorruptionRecomputes) {
  TempDir dir;
  const auto c = parse({"bar", "--preset", "lie", "--max-arity", "5", "--cache", dir.path.string()});
  const auto first = run(c);
  const auto second = run(c);
  EXPECT_EQ(first["timings"]["cache"], "miss");
  EXPECT_EQ(second["timings"]["cache"], "hit");
  EXPECT_EQ(first["results"], second["results"]);

  std::vector<fs::path> entries;
  for (const auto& e : fs::directory_iterator(dir.path)) entries.push_back(e.path());
  ASSERT_EQ(entries.size(), 1u);
  std::string text;
  {
    std::ifstream in(entries[0]);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  // Flip one digit inside the payload: the digest no longer matches.
  const auto pos = text.find("\"rank\":2");
  ASSERT_NE(pos, std::string::npos);
  text[pos + 7] = '3';
  std::ofstream(entries[0]) << text;
  std::string warning;
  EXPECT_FALSE(OperadCache(dir.path).load(entries[0].stem().string(), &warning).has_value());
  EXPECT_NE(warning.find("digest"), std::string::npos);

  const auto third = run(c);
  EXPECT_EQ(third["timings"]["cache"], "miss");
  EXPECT_EQ(third["results"], first["results"]);
  EXPECT_EQ(run(c)["timings"]["cache"], "hit");
}

TEST(Binary, ExitCodesAndErrorDocuments) {
  TempDir dir;
  EXPECT_EQ(run_binary("bar --preset com --arity 3").status, 0);
  const auto usage = run_binary("bar --preset com");
  EXPECT_EQ(usage.status, 1);
  EXPECT_EQ(json::parse(usage.output)["error"]["kind"], "usage");

  const auto bad = dir.path / "bad.op";
  std::ofstream(bad) << "operad X\ngen m arity 2 trivial\nrel m(m(x1,x2),x3) ++\n";
  const auto parse_error = run_binary("bar --presentation " + bad.string() + " --arity 3");
  EXPECT_EQ(parse_error.status, 2);
  const auto err = json::parse(parse_error.output)["error"];
  EXPECT_EQ(err["line"], 3);
  EXPECT_EQ(err["column"], 21);

  const auto torsion = dir.path / "torsion.op";
  std::ofstream(torsion) << "operad T\ngen m arity 2 trivial\nrel 2*m(m(x1,x2),x3) - 2*m(m(x1,x3),x2)\n"
                            "rel 2*m(m(x1,x2),x3) - 2*m(x1,m(x2,x3))\n";
  const auto obstruction = run_binary("bar --presentation " + torsion.string() + " --arity 3 --ring Z");
  EXPECT_EQ(obstruction.status, 3);
  EXPECT_EQ(json::parse(obstruction.output)["error"]["obstruction"], "torsion");
}

TEST(Binary, WritesToOutFile) {
  TempDir dir;
  const auto out = dir.path / "r.json";
  EXPECT_EQ(run_binary("dual --preset com --out " + out.string()).status, 0);
  std::ifstream in(out);
  const auto doc = json::parse(in);
  EXPECT_TRUE(doc["results"]["3"]["round_trip"].get<bool>());
  EXPECT_NE(doc["results"]["3"]["dsl"].get<std::string>().find("operad"), std::string::npos);
}

}  // namespace
