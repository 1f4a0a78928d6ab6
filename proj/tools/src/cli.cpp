#include "opk/cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "opk/bar/bar_complex.hpp"
#include "opk/bar/twisted.hpp"
#include "opk/cli/cache.hpp"
#include "opk/linalg/chain_complex.hpp"
#include "opk/linalg/elimination.hpp"
#include "opk/operad/quotient.hpp"
#include "opk/simplicial/levelization.hpp"
#include "opk/simplicial/partition_complex.hpp"
#include "opk/simplicial/simplicial_bar.hpp"
#include "opk/version.hpp"

namespace opk::cli {

using linalg::ChainComplexData;
using linalg::CoefficientRing;
using linalg::HomologySummary;
using operad::Operad;
using OperadPtr = std::shared_ptr<const Operad>;
using Clock = std::chrono::steady_clock;

namespace {

const std::set<std::string> kCommands = {"homology", "bar",         "simplicial-bar", "koszul-check",
                                         "koszul-complex", "levelization", "dual", "character"};
const std::set<std::string> kFormats = {"json", "csv", "text"};

bool needs_operad(const RunConfig& c) {
  if (c.command == "homology" || c.command == "dual") return false;
  if (c.command == "character") return c.target != "partition";
  return true;
}

/// Smallest arity accepted by each arity-iterating command.
int min_arity(const RunConfig& c) {
  if (c.command == "koszul-complex" || c.command == "character") return 1;
  return 2;
}

std::string ring_name(const RunConfig& c) {
  if (c.ring == "Fp") return "F" + std::to_string(c.prime);
  return c.ring;
}

CoefficientRing make_ring(const RunConfig& c) {
  try {
    return CoefficientRing::parse(ring_name(c));
  } catch (const std::exception& e) {
    throw UsageError("invalid ring '" + ring_name(c) + "': " + e.what());
  }
}

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read presentation file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string presentation_source(const RunConfig& c) {
  if (!c.preset.empty()) return operad::preset_source(c.preset);
  return read_file(c.presentation_path);
}

json homology_json(const HomologySummary& h) {
  json betti = json::object();
  json torsion = json::object();
  for (const auto& [d, b] : h.betti)
    if (b != 0) betti[std::to_string(d)] = b;
  for (const auto& [d, t] : h.torsion) {
    if (t.empty()) continue;
    json f = json::array();
    for (const auto& x : t) f.push_back(linalg::to_string(x));
    torsion[std::to_string(d)] = std::move(f);
  }
  return {{"betti", std::move(betti)}, {"torsion", std::move(torsion)}};
}

json complex_json(const ChainComplexData& c, bool dims_only) {
  std::vector<int> dims;
  for (int d = c.min_degree(); d <= c.max_degree(); ++d) dims.push_back(c.dim(d));
  json out = {{"min_degree", c.min_degree()}, {"dims", dims}};
  if (!dims_only) {
    const auto h = linalg::homology(c);
    out.update(homology_json(h));
    out["acyclic"] = h.acyclic();
  }
  return out;
}

json map_json(const std::map<int, int>& m) {
  json out = json::object();
  for (const auto& [k, v] : m) out[std::to_string(k)] = v;
  return out;
}

json koszul_arity(const OperadPtr& p, int n) {
  const bar::BarComplex b(p, n);
  json cols = json::array();
  bool ok = true;
  for (int s : b.weight_values()) {
    const auto h = linalg::homology(b.weight_column(s));
    bool concentrated = true;
    for (int d : h.support()) concentrated = concentrated && d == s;
    ok = ok && concentrated;
    json col = homology_json(h);
    col["weight"] = s;
    col["concentrated"] = concentrated;
    cols.push_back(std::move(col));
  }
  return {{"koszul", ok}, {"columns", std::move(cols)}};
}

json levelization_arity(const OperadPtr& p, int n) {
  const simplicial::Levelization l(p, n);
  const auto rep = simplicial::check_levelization(l);
  return {{"chain_map", rep.chain_map},
          {"injective", rep.injective},
          {"homology_iso", rep.homology_iso},
          {"ok", rep.ok()},
          {"bar_betti", map_json(rep.bar_betti)},
          {"simplicial_betti", map_json(rep.simplicial_betti)},
          {"induced_rank", map_json(rep.induced_rank)},
          {"failure", rep.failure}};
}

json character_arity(const OperadPtr& p, int n) {
  json classes = json::array();
  for (const auto& w : comb::conjugacy_class_representatives(n))
    classes.push_back({{"cycle_type", w.cycle_type()}, {"value", linalg::to_string(operad::character(p->module(), n, w))}});
  return {{"rank", p->rank(n)}, {"classes", std::move(classes)}};
}

json partition_character(int r) {
  const auto lie = std::make_shared<const Operad>(operad::quadratic_quotient(operad::load_preset("lie"), std::max(r, 2)));
  json classes = json::array();
  bool matches = true;
  for (const auto& [w, value] : simplicial::top_homology_character(r)) {
    const linalg::Scalar expected = operad::character(lie->module(), r, w) * w.sign();
    matches = matches && expected == value;
    classes.push_back({{"cycle_type", w.cycle_type()}, {"homology", linalg::to_string(value)}, {"lie_sgn", linalg::to_string(expected)}});
  }
  return {{"degree", r - 1}, {"classes", std::move(classes)}, {"matches", matches}};
}

int relation_rank(const CoefficientRing& ring, const std::vector<operad::MonomialCombination>& rows,
                  const std::vector<operad::Monomial>& monomials) {
  std::unordered_map<operad::Monomial, int, operad::MonomialHash> index;
  for (std::size_t i = 0; i < monomials.size(); ++i) index.emplace(monomials[i], static_cast<int>(i));
  std::vector<linalg::SparseVec> vecs;
  for (const auto& row : rows) {
    linalg::VecBuilder b(ring);
    for (const auto& [m, c] : row) b.add(index.at(m), c);
    vecs.push_back(b.take());
  }
  return static_cast<int>(linalg::row_echelon(ring, vecs, false).rows.size());
}

json presentation_dims(const operad::QuadraticPresentation& p) {
  const auto monomials = operad::enumerate_monomials(p.generators, 3, 2);
  return {{"generators", p.generators.max_arity() >= 2 ? p.generators.rank(2) : 0},
          {"free", monomials.size()},
          {"relations", relation_rank(p.ring(), operad::closed_relations(p, 3), monomials)}};
}

json dual_results(const RunConfig& c) {
  const auto ring = make_ring(c);
  const auto p = c.preset.empty() ? operad::parse_presentation(read_file(c.presentation_path), ring) : operad::load_preset(c.preset, ring);
  const auto d1 = operad::quadratic_dual(p);
  const auto d2 = operad::quadratic_dual(d1);
  const json a = presentation_dims(p);
  const json b = presentation_dims(d1);
  const json e = presentation_dims(d2);
  json r2 = {{"original", a["generators"]}, {"dual", b["generators"]}, {"double_dual", e["generators"]}};
  json r3 = {{"original", a}, {"dual", b}, {"double_dual", e}};
  r3["round_trip"] = a == e;
  r3["complementary"] = a["relations"].get<int>() + b["relations"].get<int>() == a["free"].get<int>();
  r3["dsl"] = operad::to_dsl(d1);
  return {{"2", std::move(r2)}, {"3", std::move(r3)}};
}

/// Runs f over the arities on up to `jobs` threads; results keep arity order.
template <class F>
json per_arity(const std::vector<int>& arities, int jobs, F f) {
  std::vector<json> out(arities.size());
  std::vector<std::exception_ptr> errors(arities.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < arities.size(); i = next++) {
      try {
        out[i] = f(arities[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(arities.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  json results = json::object();
  for (std::size_t i = 0; i < arities.size(); ++i) results[std::to_string(arities[i])] = std::move(out[i]);
  return results;
}

}  // namespace

void RunConfig::validate() const {
  if (!kCommands.count(command)) throw UsageError("unknown command '" + command + "'");
  if (!kFormats.count(format)) throw UsageError("format must be json, csv or text");
  if (jobs < 1) throw UsageError("--jobs must be at least 1");
  if (ring == "Fp") {
    if (prime == 0) throw UsageError("--ring Fp requires --p <prime>");
  } else if (prime != 0) {
    throw UsageError("--p is only valid with --ring Fp");
  }
  make_ring(*this);
  if (command == "homology" && target != "partition") throw UsageError("homology supports the target 'partition'");
  if (command == "character" && !target.empty() && target != "partition")
    throw UsageError("character supports an operad or the target 'partition'");
  if (command == "character" && target == "partition" && ring != "Q") throw UsageError("partition characters are computed over Q");
  if (command == "koszul-complex") {
    if (kind.empty()) throw UsageError("koszul-complex requires --kind");
    try {
      bar::parse_twist_kind(kind);
    } catch (const std::exception&) {
      throw UsageError("--kind must be bar-right, bar-left, koszul-right or koszul-left");
    }
  }
  if (dims_only && command != "bar" && command != "simplicial-bar" && command != "koszul-complex" && command != "homology")
    throw UsageError("--dims-only applies to complex-valued commands");
  const bool partition = target == "partition";
  const bool wants_source = needs_operad(*this) || command == "dual";
  if (wants_source) {
    if (preset.empty() == presentation_path.empty()) throw UsageError("give exactly one of --preset or --presentation");
    if (!preset.empty()) {
      const auto names = operad::preset_names();
      if (std::find(names.begin(), names.end(), preset) == names.end()) throw UsageError("unknown preset '" + preset + "'");
    }
  } else if (!preset.empty() || !presentation_path.empty()) {
    throw UsageError(command + (partition ? " partition" : "") + " takes no operad");
  }
  if (command == "dual") {
    if (arity || max_arity || r) throw UsageError("dual takes no arity options");
    return;
  }
  const int given = (arity > 0) + (max_arity > 0) + (r > 0);
  if (given != 1) throw UsageError(partition ? "give one of --r, --arity or --max-arity" : "give one of --arity or --max-arity");
  if (r > 0 && !partition) throw UsageError("--r applies to partition targets");
  const int lo = partition ? 2 : min_arity(*this);
  const int bound = std::max({arity, max_arity, r});
  if (bound < lo) throw UsageError("arity bound must be at least " + std::to_string(lo));
  if (bound > 12) throw UsageError("arity bound must be at most 12");
}

std::vector<int> RunConfig::arities() const {
  if (arity > 0) return {arity};
  if (r > 0) return {r};
  std::vector<int> out;
  for (int n = target == "partition" ? 2 : min_arity(*this); n <= max_arity; ++n) out.push_back(n);
  return out;
}

json RunConfig::to_json() const {
  json j = {{"command", command}, {"ring", ring_name(*this)}, {"format", format}, {"jobs", jobs}};
  if (!target.empty()) j["target"] = target;
  if (!preset.empty()) j["preset"] = preset;
  if (!presentation_path.empty()) j["presentation"] = presentation_path;
  if (arity) j["arity"] = arity;
  if (max_arity) j["max_arity"] = max_arity;
  if (r) j["r"] = r;
  if (!kind.empty()) j["kind"] = kind;
  if (dims_only) j["dims_only"] = true;
  if (!cache_dir.empty()) j["cache"] = cache_dir;
  return j;
}

RunConfig parse_command_line(int argc, const char* const* argv, std::string* help) {
  RunConfig c;
  CLI::App app{"Exact computations with quadratic operads, bar constructions and partition complexes", "opk"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  auto common = [&](CLI::App* s) {
    s->add_option("--preset", c.preset, "Built-in operad: com, assoc or lie");
    s->add_option("--presentation", c.presentation_path, "Path to a presentation file");
    s->add_option("--ring", c.ring, "Coefficient ring: Z, Q, Fp (with --p) or F<prime>");
    s->add_option("--p", c.prime, "Prime for --ring Fp");
    s->add_option("--out", c.out, "Output file (default: stdout)");
    s->add_option("--format", c.format, "Output format: json, csv or text");
    s->add_option("--cache", c.cache_dir, "Cache directory (default: $OPK_CACHE)");
    s->add_option("--jobs", c.jobs, "Worker threads across arities");
  };
  auto arity_opts = [&](CLI::App* s) {
    s->add_option("--arity", c.arity, "Single arity");
    s->add_option("--max-arity", c.max_arity, "All arities up to this bound");
  };

  auto* homology = app.add_subcommand("homology", "Homology of the partition complex");
  homology->add_option("target", c.target, "Complex to compute (partition)")->required();
  homology->add_option("--r", c.r, "Size of the ground set");
  homology->add_flag("--dims-only", c.dims_only, "Skip homology");
  arity_opts(homology);
  common(homology);

  auto* bar = app.add_subcommand("bar", "Reduced bar complex");
  bar->add_flag("--dims-only", c.dims_only, "Skip homology");
  arity_opts(bar);
  common(bar);

  auto* sbar = app.add_subcommand("simplicial-bar", "Normalized simplicial bar complex");
  sbar->add_flag("--dims-only", c.dims_only, "Skip homology");
  arity_opts(sbar);
  common(sbar);

  auto* kcheck = app.add_subcommand("koszul-check", "Bar homology Koszul criterion");
  arity_opts(kcheck);
  common(kcheck);

  auto* kcomplex = app.add_subcommand("koszul-complex", "Twisted bar and Koszul complexes");
  kcomplex->add_option("--kind", c.kind, "bar-right, bar-left, koszul-right or koszul-left");
  kcomplex->add_flag("--dims-only", c.dims_only, "Skip homology");
  arity_opts(kcomplex);
  common(kcomplex);

  auto* level = app.add_subcommand("levelization", "Levelization map from the bar to the simplicial bar complex");
  arity_opts(level);
  common(level);

  auto* dual = app.add_subcommand("dual", "Quadratic dual presentation");
  common(dual);

  auto* character = app.add_subcommand("character", "Symmetric group characters");
  character->add_option("target", c.target, "Optional target (partition)");
  character->add_option("--r", c.r, "Size of the ground set for partition");
  arity_opts(character);
  common(character);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    if (help) *help = e.get_name() == "CallForVersion" ? std::string(kVersion) + "\n" : app.help();
    for (auto* s : app.get_subcommands())
      if (help && e.get_name() != "CallForVersion") *help = s->help();
    return c;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  c.command = app.get_subcommands().front()->get_name();
  if (c.cache_dir.empty())
    if (const char* env = std::getenv("OPK_CACHE")) c.cache_dir = env;
  c.validate();
  return c;
}

json run(const RunConfig& c) {
  c.validate();
  const auto t0 = Clock::now();
  json timings = {{"cache", "none"}};
  json results;
  if (c.command == "dual") {
    const auto t1 = Clock::now();
    results = dual_results(c);
    timings["compute_ms"] = ms_since(t1);
  } else if (!needs_operad(c)) {
    const auto ring = make_ring(c);
    const auto t1 = Clock::now();
    if (c.command == "homology") {
      results = per_arity(c.arities(), c.jobs, [&](int r) {
        return complex_json(simplicial::PartitionComplex(r, ring).complex(), c.dims_only);
      });
    } else {
      results = per_arity(c.arities(), c.jobs, [](int r) { return partition_character(r); });
    }
    timings["compute_ms"] = ms_since(t1);
  } else {
    const auto ring = make_ring(c);
    const auto arities = c.arities();
    const int top = std::max(2, arities.back());
    const std::string source = presentation_source(c);
    const auto t1 = Clock::now();
    std::optional<Operad> loaded;
    std::string key;
    std::unique_ptr<OperadCache> cache;
    if (c.cache_dir.empty()) {
      timings["cache"] = "disabled";
    } else {
      cache = std::make_unique<OperadCache>(c.cache_dir);
      key = OperadCache::key(source, top, ring);
      std::string warning;
      loaded = cache->load(key, &warning);
      if (!warning.empty()) std::cerr << "opk: warning: " << warning << "\n";
      timings["cache"] = loaded ? "hit" : "miss";
    }
    if (!loaded) {
      loaded = operad::quadratic_quotient(operad::parse_presentation(source, ring), top);
      if (cache) {
        try {
          cache->store(key, *loaded);
        } catch (const std::exception& e) {
          std::cerr << "opk: warning: " << e.what() << "\n";
        }
      }
    }
    const OperadPtr p = std::make_shared<const Operad>(std::move(*loaded));
    timings["operad_build_ms"] = ms_since(t1);

    const auto t2 = Clock::now();
    if (c.command == "bar") {
      results = per_arity(arities, c.jobs, [&](int n) { return complex_json(bar::BarComplex(p, n).complex(), c.dims_only); });
    } else if (c.command == "simplicial-bar") {
      results = per_arity(arities, c.jobs,
                          [&](int n) { return complex_json(simplicial::SimplicialBarComplex(p, n).complex(), c.dims_only); });
    } else if (c.command == "koszul-check") {
      results = per_arity(arities, c.jobs, [&](int n) { return koszul_arity(p, n); });
    } else if (c.command == "koszul-complex") {
      const auto kind = bar::parse_twist_kind(c.kind);
      results = per_arity(arities, c.jobs, [&](int n) { return complex_json(bar::twisted_complex(p, kind, n), c.dims_only); });
    } else if (c.command == "levelization") {
      results = per_arity(arities, c.jobs, [&](int n) { return levelization_arity(p, n); });
    } else {
      results = per_arity(arities, c.jobs, [&](int n) { return character_arity(p, n); });
    }
    timings["compute_ms"] = ms_since(t2);
  }
  timings["total_ms"] = ms_since(t0);
  return {{"version", kVersion}, {"config", c.to_json()}, {"results", std::move(results)}, {"timings", std::move(timings)}};
}

namespace {

std::string scalar_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

/// Leaves of a JSON value as (pointer, rendered value) pairs.
void flatten(const json& v, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (v.is_object()) {
    for (const auto& [k, x] : v.items()) flatten(x, prefix.empty() ? k : prefix + "." + k, out);
  } else if (v.is_array() && !v.empty() && (v.front().is_object() || v.front().is_array())) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], prefix + "." + std::to_string(i), out);
  } else if (v.is_array()) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : " ") + scalar_text(x);
    out.emplace_back(prefix, s);
  } else {
    out.emplace_back(prefix, scalar_text(v));
  }
}

bool complex_shaped(const json& results) {
  if (results.empty()) return false;
  for (const auto& [k, v] : results.items())
    if (!v.is_object() || !v.contains("dims")) return false;
  return true;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n ") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

/// Arity keys in numeric order.
std::vector<std::string> arity_keys(const json& results) {
  std::vector<std::string> keys;
  for (const auto& [k, v] : results.items()) keys.push_back(k);
  std::sort(keys.begin(), keys.end(), [](const std::string& a, const std::string& b) { return std::stoi(a) < std::stoi(b); });
  return keys;
}

}  // namespace

std::string render(const json& doc, const std::string& format) {
  if (format == "json") return doc.dump(2) + "\n";
  std::ostringstream os;
  if (doc.contains("error")) {
    os << "error," << csv_quote(doc["error"].value("kind", "")) << "," << csv_quote(doc["error"].value("message", "")) << "\n";
    return format == "csv" ? os.str() : "error: " + doc["error"].value("message", std::string()) + "\n";
  }
  const json& results = doc.at("results");
  const bool complexes = complex_shaped(results);
  if (format == "csv") {
    if (complexes) {
      os << "arity,degree,dim,betti,torsion\n";
      for (const auto& k : arity_keys(results)) {
        const json& r = results[k];
        const int lo = r["min_degree"].get<int>();
        for (std::size_t i = 0; i < r["dims"].size(); ++i) {
          const std::string d = std::to_string(lo + static_cast<int>(i));
          os << k << "," << d << "," << r["dims"][i].get<int>() << ",";
          if (r.contains("betti")) os << (r["betti"].contains(d) ? r["betti"][d].get<int>() : 0);
          os << ",";
          if (r.contains("torsion") && r["torsion"].contains(d)) {
            std::string t;
            for (const auto& x : r["torsion"][d]) t += (t.empty() ? "" : " ") + x.get<std::string>();
            os << csv_quote(t);
          }
          os << "\n";
        }
      }
    } else {
      os << "arity,field,value\n";
      for (const auto& k : arity_keys(results)) {
        std::vector<std::pair<std::string, std::string>> rows;
        flatten(results[k], "", rows);
        for (const auto& [f, v] : rows) os << k << "," << csv_quote(f) << "," << csv_quote(v) << "\n";
      }
    }
    return os.str();
  }
  const json& cfg = doc.at("config");
  os << "opk " << doc.at("version").get<std::string>() << ": " << cfg.at("command").get<std::string>();
  if (cfg.contains("target")) os << " " << cfg["target"].get<std::string>();
  if (cfg.contains("preset")) os << " " << cfg["preset"].get<std::string>();
  os << " over " << cfg.at("ring").get<std::string>() << "\n";
  for (const auto& k : arity_keys(results)) {
    const json& r = results[k];
    os << "arity " << k << "\n";
    if (complexes) {
      const int lo = r["min_degree"].get<int>();
      for (std::size_t i = 0; i < r["dims"].size(); ++i) {
        const std::string d = std::to_string(lo + static_cast<int>(i));
        os << "  degree " << d << ": dim " << r["dims"][i].get<int>();
        if (r.contains("betti")) os << ", betti " << (r["betti"].contains(d) ? r["betti"][d].get<int>() : 0);
        if (r.contains("torsion") && r["torsion"].contains(d)) {
          os << ", torsion";
          for (const auto& x : r["torsion"][d]) os << " Z/" << x.get<std::string>();
        }
        os << "\n";
      }
    } else {
      std::vector<std::pair<std::string, std::string>> rows;
      flatten(r, "", rows);
      for (const auto& [f, v] : rows) {
        if (v.find('\n') != std::string::npos) {
          os << "  " << f << ":\n";
          std::istringstream lines(v);
          for (std::string line; std::getline(lines, line);) os << "    " << line << "\n";
        } else {
          os << "  " << f << " = " << v << "\n";
        }
      }
    }
  }
  return os.str();
}

json error_document(const std::string& kind, const std::string& message, const json& extra) {
  json err = {{"kind", kind}, {"message", message}};
  err.update(extra);
  return {{"version", kVersion}, {"error", std::move(err)}};
}

int main_entry(int argc, const char* const* argv) {
  RunConfig config;
  std::string help;
  auto emit = [&](const json& doc) {
    const std::string text = render(doc, kFormats.count(config.format) ? config.format : "json");
    if (config.out.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(config.out, std::ios::binary | std::ios::trunc);
    if (!out) {
      std::cerr << "opk: cannot write " << config.out << "\n";
      std::cout << text;
      return;
    }
    out << text;
  };
  auto fail = [&](int code, const std::string& kind, const std::string& message, const json& extra = json::object()) {
    std::cerr << "opk: " << message << "\n";
    emit(error_document(kind, message, extra));
    return code;
  };
  try {
    config = parse_command_line(argc, argv, &help);
    if (!help.empty()) {
      std::cout << help;
      return kExitOk;
    }
    emit(run(config));
    return kExitOk;
  } catch (const UsageError& e) {
    return fail(kExitUsage, "usage", e.what());
  } catch (const operad::ParseError& e) {
    return fail(kExitParse, "parse", e.detail(), {{"line", e.line()}, {"column", e.column()}});
  } catch (const operad::QuotientObstruction& e) {
    json factors = json::array();
    for (const auto& f : e.factors()) factors.push_back(linalg::to_string(f));
    const bool torsion = e.kind() == operad::QuotientObstruction::Kind::Torsion;
    return fail(kExitObstruction, "obstruction", e.what(),
                {{"obstruction", torsion ? "torsion" : "no-monomial-basis"},
                 {"arity", e.arity()},
                 {"weight", e.weight()},
                 {"factors", std::move(factors)}});
  } catch (const std::exception& e) {
    return fail(kExitUsage, "usage", e.what());
  }
}

}  // namespace opk::cli
