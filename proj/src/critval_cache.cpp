#include "fgof/critval_cache.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>

#include <json.hpp>

#include "fgof/error.hpp"

namespace fgof {

namespace {

using nlohmann::json;

std::atomic<std::size_t> g_simulations{0};
std::mutex g_store_mutex;

void warn(const std::string& message) { std::cerr << "warning: " << message << '\n'; }

json to_json(const CritValTable& table) {
  json levels = json::array();
  for (const auto& [level, value] : table.values) {
    levels.push_back({{"level", level}, {"value", value}, {"mc_stderr", table.mc_stderr.at(level)}});
  }
  return {{"kernel", table.kernel},
          {"null", table.null_fingerprint},
          {"functional", table.functional},
          {"reps", table.reps},
          {"grid_size", table.grid_size},
          {"seed", table.seed},
          {"levels", levels}};
}

CritValTable from_json(const json& j) {
  CritValTable table;
  table.kernel = j.at("kernel").get<std::string>();
  table.null_fingerprint = j.at("null").get<std::string>();
  table.functional = j.at("functional").get<std::string>();
  table.reps = j.at("reps").get<std::size_t>();
  table.grid_size = j.at("grid_size").get<std::size_t>();
  table.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& row : j.at("levels")) {
    const double level = row.at("level").get<double>();
    table.values[level] = row.at("value").get<double>();
    table.mc_stderr[level] = row.at("mc_stderr").get<double>();
  }
  return table;
}

json load_store(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return json::object();
  try {
    json store = json::parse(in);
    if (!store.is_object() || !store.contains("entries") || !store["entries"].is_object()) {
      throw std::runtime_error("missing entries object");
    }
    return store;
  } catch (const std::exception& e) {
    warn("critical-value cache " + path.string() + " is corrupt (" + e.what() +
         "); recomputing");
    return json::object();
  }
}

bool save_store(const std::filesystem::path& path, const json& store) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) return false;
    out << store.dump(2) << '\n';
    if (!out) return false;
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    return false;
  }
  return true;
}

}  // namespace

std::string cache_key(const KernelSpec& spec, const Functional& functional, std::size_t reps,
                      std::uint64_t seed) {
  return std::string(to_string(spec.id)) + "|" + spec.null_fingerprint() + "|" +
         functional.fingerprint() + "|reps=" + std::to_string(reps) +
         "|grid=" + std::to_string(spec.grid.size()) + "|seed=" + std::to_string(seed);
}

CritValTable cache_get_or_compute(const std::string& store_path, const KernelSpec& spec,
                                  const Functional& functional, std::span<const double> levels,
                                  std::size_t reps, std::uint64_t seed, unsigned threads) {
  if (store_path.empty()) {
    ++g_simulations;
    return critical_values(spec, functional, levels, reps, seed, threads);
  }
  const std::filesystem::path path(store_path);
  const std::string key = cache_key(spec, functional, reps, seed);
  std::set<double> wanted(levels.begin(), levels.end());

  json store;
  {
    std::lock_guard lock(g_store_mutex);
    store = load_store(path);
  }
  if (store.contains("entries") && store["entries"].contains(key)) {
    try {
      CritValTable cached = from_json(store["entries"][key]);
      const bool complete = std::all_of(wanted.begin(), wanted.end(),
                                        [&](double l) { return cached.values.count(l) > 0; });
      if (complete) return cached;
      for (const auto& [level, value] : cached.values) wanted.insert(level);
    } catch (const std::exception& e) {
      warn("cache entry '" + key + "' is corrupt (" + e.what() + "); recomputing");
    }
  }

  const std::vector<double> all(wanted.begin(), wanted.end());
  ++g_simulations;
  CritValTable table = critical_values(spec, functional, all, reps, seed, threads);

  std::lock_guard lock(g_store_mutex);
  json fresh = load_store(path);
  if (!fresh.contains("entries")) {
    fresh = json::object();
    fresh["schema_version"] = 1;
    fresh["entries"] = json::object();
  }
  fresh["entries"][key] = to_json(table);
  if (!save_store(path, fresh)) {
    warn("cannot write critical-value cache " + path.string() + "; result not persisted");
  }
  return table;
}

std::size_t cache_simulation_count() noexcept { return g_simulations.load(); }

CritValTable simulated_critical_values(const KernelSpec& spec, const Functional& functional,
                                       std::span<const double> levels,
                                       const CritValSource& source) {
  return cache_get_or_compute(source.cache_path, spec, functional, levels, source.reps,
                              source.seed, source.threads);
}

}  // namespace fgof
