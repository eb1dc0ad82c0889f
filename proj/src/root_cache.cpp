#include "ipoly/root_cache.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ipoly {

std::filesystem::path default_cache_path() {
  if (const char* env = std::getenv(kRootCacheEnv); env != nullptr && *env != '\0') return env;
  return "ipoly_roots.cache";
}

RootCache::RootCache(std::filesystem::path path) : path_(std::move(path)) {
  std::ifstream in(*path_);
  if (!in) return;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string hash, p, k, r;
    int unit = -1;
    if (!(fields >> hash >> p >> k >> r >> unit) || (unit != 0 && unit != 1)) {
      throw std::runtime_error("root cache " + path_->string() + ": malformed line " +
                               std::to_string(lineno));
    }
    PadicRoot root{parse_integer(p), static_cast<unsigned>(std::stoul(k)), parse_integer(r),
                   unit == 1, std::nullopt};
    merge({hash, root.p}, root);
  }
}

bool RootCache::merge(const Key& key, const PadicRoot& root) {
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    entries_.emplace(key, root);
    return true;
  }
  PadicRoot& have = it->second;
  const unsigned low = std::min(have.k, root.k);
  const Integer m = pow(key.second, low);
  if (mod(have.r, m) != mod(root.r, m)) {
    throw std::runtime_error("root cache: conflicting residue class for " + key.first + " at p=" +
                             key.second.get_str());
  }
  if (root.k > have.k) {
    have = root;
    return true;
  }
  return false;
}

std::optional<PadicRoot> RootCache::lookup(const std::string& key, const Integer& p) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.find({key, p});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

PadicRoot RootCache::record(const std::string& key, const PadicRoot& root) {
  std::unique_lock lock(mutex_);
  const Key k{key, root.p};
  if (merge(k, root) && path_) {
    std::ofstream out(*path_, std::ios::app);
    if (!out) throw std::runtime_error("cannot write root cache " + path_->string());
    out << key << ' ' << root.p.get_str() << ' ' << root.k << ' ' << root.r.get_str() << ' '
        << (root.unit ? 1 : 0) << '\n';
  }
  return entries_.at(k);
}

std::size_t RootCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

}  // namespace ipoly
