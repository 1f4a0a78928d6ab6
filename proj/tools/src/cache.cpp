#include "opk/cli/cache.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "opk/version.hpp"

namespace opk::cli {

using linalg::CoefficientRing;
using linalg::ExactMatrix;
using linalg::Scalar;

json matrix_to_json(const ExactMatrix& m) {
  json entries = json::array();
  for (int c = 0; c < m.cols(); ++c)
    for (const auto& [r, x] : m.column(c)) entries.push_back({r, c, linalg::to_string(x)});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

ExactMatrix matrix_from_json(const json& j, const CoefficientRing& ring) {
  ExactMatrix m(ring, j.at("rows").get<int>(), j.at("cols").get<int>());
  for (const auto& e : j.at("entries")) {
    const int r = e.at(0).get<int>();
    const int c = e.at(1).get<int>();
    if (r < 0 || r >= m.rows() || c < 0 || c >= m.cols()) throw std::runtime_error("matrix entry out of range");
    m.set(r, c, ring.normalize(Scalar(e.at(2).get<std::string>())));
  }
  return m;
}

json operad_to_json(const operad::Operad& p) {
  const auto& mod = p.module();
  json arities = json::array();
  for (int n = 1; n <= p.max_arity(); ++n) {
    json gens = json::array();
    for (int k = 0; k + 1 < n; ++k) gens.push_back(matrix_to_json(mod.generator(n, k)));
    std::vector<std::string> labels;
    for (int i = 0; i < p.rank(n); ++i) labels.push_back(p.label(n, i));
    arities.push_back({{"arity", n},
                       {"rank", p.rank(n)},
                       {"degrees", mod.degrees(n)},
                       {"weights", mod.weights(n)},
                       {"generators", std::move(gens)},
                       {"labels", std::move(labels)}});
  }
  json composites = json::array();
  for (int m = 2; m <= p.max_arity(); ++m)
    for (int k = 2; m + k - 1 <= p.max_arity(); ++k)
      for (int i = 1; i <= m; ++i) composites.push_back({{"m", m}, {"k", k}, {"i", i}, {"matrix", matrix_to_json(p.composite_matrix(m, i, k))}});
  return {{"name", p.name()},
          {"ring", p.ring().name()},
          {"max_arity", p.max_arity()},
          {"arities", std::move(arities)},
          {"composites", std::move(composites)}};
}

operad::Operad operad_from_json(const json& j) {
  try {
    const auto ring = CoefficientRing::parse(j.at("ring").get<std::string>());
    const int max = j.at("max_arity").get<int>();
    operad::SymSequence mod(ring, max);
    std::vector<std::vector<std::string>> labels(static_cast<std::size_t>(max) + 1);
    for (const auto& a : j.at("arities")) {
      const int n = a.at("arity").get<int>();
      if (n < 1 || n > max) throw std::runtime_error("arity out of range");
      std::vector<ExactMatrix> gens;
      for (const auto& g : a.at("generators")) gens.push_back(matrix_from_json(g, ring));
      mod.set_component(n, std::move(gens), a.at("degrees").get<std::vector<int>>(), a.at("weights").get<std::vector<int>>());
      labels[static_cast<std::size_t>(n)] = a.at("labels").get<std::vector<std::string>>();
      if (mod.rank(n) != a.at("rank").get<int>()) throw std::runtime_error("rank mismatch");
    }
    std::vector<std::vector<std::vector<ExactMatrix>>> comp(static_cast<std::size_t>(max) + 1);
    for (int m = 2; m <= max; ++m) comp[static_cast<std::size_t>(m)].resize(static_cast<std::size_t>(max) + 1);
    for (const auto& c : j.at("composites")) {
      const int m = c.at("m").get<int>();
      const int k = c.at("k").get<int>();
      const int i = c.at("i").get<int>();
      if (m < 2 || k < 2 || m + k - 1 > max || i < 1 || i > m) throw std::runtime_error("composite index out of range");
      auto& slot = comp[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)];
      if (static_cast<int>(slot.size()) != i - 1) throw std::runtime_error("composites out of order");
      slot.push_back(matrix_from_json(c.at("matrix"), ring));
    }
    return operad::Operad(j.at("name").get<std::string>(), std::move(mod), std::move(comp), std::move(labels));
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed operad document: ") + e.what());
  }
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) throw std::runtime_error("SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::string OperadCache::key(const std::string& source, int max_arity, const CoefficientRing& ring) {
  std::ostringstream os;
  os << "opk " << kVersion << "\nring " << ring.name() << "\narity " << max_arity << "\n" << source;
  return sha256_hex(os.str());
}

std::optional<operad::Operad> OperadCache::load(const std::string& key, std::string* warning) const {
  const auto file = path(key);
  std::ifstream in(file, std::ios::binary);
  if (!in) return std::nullopt;
  const auto fail = [&](const std::string& why) -> std::optional<operad::Operad> {
    if (warning) *warning = "ignoring cache entry " + file.string() + ": " + why;
    return std::nullopt;
  };
  try {
    const json doc = json::parse(in);
    if (doc.at("format").get<std::string>() != "opk-operad-cache") return fail("unknown format");
    if (doc.at("version").get<std::string>() != kVersion) return fail("written by another version");
    if (doc.at("key").get<std::string>() != key) return fail("key mismatch");
    const json& payload = doc.at("operad");
    if (sha256_hex(payload.dump()) != doc.at("digest").get<std::string>()) return fail("digest mismatch");
    return operad_from_json(payload);
  } catch (const std::exception& e) {
    return fail(e.what());
  }
}

void OperadCache::store(const std::string& key, const operad::Operad& p) const {
  std::filesystem::create_directories(dir_);
  json payload = operad_to_json(p);
  const json doc = {{"format", "opk-operad-cache"}, {"version", kVersion}, {"key", key}, {"digest", sha256_hex(payload.dump())}, {"operad", std::move(payload)}};
  // Write then rename so readers never see a partial file.
  const auto tmp = path(key).string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write cache entry " + tmp);
    out << doc.dump();
  }
  std::filesystem::rename(tmp, path(key));
}

}  // namespace opk::cli
