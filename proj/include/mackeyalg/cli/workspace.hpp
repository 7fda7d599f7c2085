#ifndef MACKEYALG_CLI_WORKSPACE_HPP
#define MACKEYALG_CLI_WORKSPACE_HPP

#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>

#include "mackeyalg/io/json.hpp"

namespace mackeyalg::cli {

namespace fs = std::filesystem;
using io::Json;

/// A reference that names neither a file nor a manifest entry.
class UnresolvedReference : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

inline Json read_json(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw UnresolvedReference("cannot read " + p.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError(p.string() + ": " + e.what());
  }
}

inline void write_text(const fs::path& p, const std::string& text) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + p.string());
  out << text;
}

/// Kinds of named objects in a manifest.
inline const std::vector<std::string>& manifest_kinds() {
  static const std::vector<std::string> k{"groups", "functors", "signs", "modules"};
  return k;
}

/// Directory with manifest.json (kind -> name -> relative file) and a
/// content addressed cache/ of reports. Loaded objects are memoized by
/// reference; access is serialized by a mutex.
class Workspace {
 public:
  explicit Workspace(fs::path root) : root_(std::move(root)) {
    if (fs::exists(root_ / "manifest.json")) manifest_ = read_json(root_ / "manifest.json");
    for (auto& k : manifest_kinds())
      if (!manifest_.contains(k)) manifest_[k] = Json::object();
  }

  const fs::path& root() const { return root_; }
  const Json& manifest() const { return manifest_; }
  bool has_manifest() const { return fs::exists(root_ / "manifest.json"); }

  void add(const std::string& kind, const std::string& name, const std::string& file, const Json& doc) {
    write_text(root_ / file, io::canonical(doc));
    manifest_[kind][name] = file;
  }

  void save_manifest() const { write_text(root_ / "manifest.json", io::canonical(manifest_)); }

  /// A manifest name of the given kind, or a path to a file.
  Json document(const std::string& kind, const std::string& ref) const {
    if (manifest_[kind].contains(ref)) return read_json(root_ / manifest_[kind][ref].get<std::string>());
    if (fs::is_regular_file(ref)) return read_json(ref);
    if (fs::is_regular_file(root_ / ref)) return read_json(root_ / ref);
    throw UnresolvedReference("unresolved " + kind.substr(0, kind.size() - 1) + " reference '" + ref + "'");
  }

  /// Groups are referenced from other documents by name or inlined.
  burnside::Context context(const Json& ref) {
    const std::string key = ref.is_string() ? ref.get<std::string>() : ref.dump();
    std::lock_guard<std::mutex> lock(mu_);
    auto it = contexts_.find(key);
    if (it != contexts_.end()) return it->second;
    Json doc = ref.is_string() ? document("groups", key) : ref;
    auto ctx = burnside::GContext::make(io::group_from(doc));
    contexts_.emplace(key, ctx);
    return ctx;
  }

  fs::path cache_file(const std::string& key) const { return root_ / "cache" / (key + ".json"); }

  std::optional<std::string> cache_get(const std::string& key) const {
    std::lock_guard<std::mutex> lock(mu_);
    std::ifstream in(cache_file(key), std::ios::binary);
    if (!in) return std::nullopt;
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  void cache_put(const std::string& key, const std::string& text) const {
    std::lock_guard<std::mutex> lock(mu_);
    write_text(cache_file(key), text);
  }

 private:
  fs::path root_;
  Json manifest_ = Json::object();
  mutable std::mutex mu_;
  std::map<std::string, burnside::Context> contexts_;
};

}  // namespace mackeyalg::cli

#endif  // MACKEYALG_CLI_WORKSPACE_HPP
