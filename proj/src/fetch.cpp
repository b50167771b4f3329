#include "unarydt/fetch.hpp"

#include <cstdlib>
#include <filesystem>
#include <stdexcept>

#include <httplib.h>

#include "unarydt/serialize.hpp"
#include "unarydt/util.hpp"

namespace fs = std::filesystem;

namespace unarydt {

const ManifestEntry* DatasetManifest::find(const std::string& name) const {
  for (const auto& entry : entries) {
    if (entry.name == name) {
      return &entry;
    }
  }
  return nullptr;
}

DatasetManifest load_manifest(const std::string& path) {
  json doc = load_json(path);
  if (!doc.is_object() || !doc.contains("datasets")) {
    throw std::runtime_error("manifest missing 'datasets' array: " + path);
  }
  DatasetManifest manifest;
  manifest.directory = fs::path(path).parent_path().string();
  for (const auto& entry_json : doc.at("datasets")) {
    ManifestEntry entry;
    entry.name = entry_json.at("name").get<std::string>();
    entry.path = entry_json.value("path", "");
    entry.url = entry_json.value("url", "");
    entry.crc32 = entry_json.value("crc32", "");
    entry.schema.has_header = entry_json.value("has_header", true);
    entry.schema.label_column = entry_json.value("label_column", "class");
    entry.schema.label_index = entry_json.value("label_index", -1);
    if (entry.path.empty() && entry.url.empty()) {
      throw std::runtime_error("manifest entry '" + entry.name +
                               "' has neither path nor url");
    }
    manifest.entries.push_back(std::move(entry));
  }
  return manifest;
}

std::string cache_directory() {
  if (const char* env = std::getenv("UNARYDT_CACHE_DIR")) {
    return env;
  }
  return ".unarydt_cache";
}

namespace {

void verify_checksum(const std::string& path, const std::string& expected,
                     const std::string& what) {
  if (expected.empty()) {
    return;
  }
  std::uint32_t actual = crc32_file(path);
  std::uint32_t wanted = parse_crc32_hex(expected);
  if (actual != wanted) {
    throw std::runtime_error(what + ": checksum mismatch for " + path + " (got " +
                             crc32_hex(actual) + ", expected " + expected + ")");
  }
}

void download(const std::string& url, const std::string& dest) {
  // split scheme://host[:port]/path
  const std::string scheme_sep = "://";
  std::size_t scheme_at = url.find(scheme_sep);
  if (scheme_at == std::string::npos) {
    throw std::runtime_error("malformed url: " + url);
  }
  std::string scheme = url.substr(0, scheme_at);
  if (scheme == "https") {
    throw std::runtime_error(
        "https downloads are not supported by this build; fetch the file "
        "manually into the cache directory (" +
        cache_directory() + ") or switch the manifest entry to a local path");
  }
  if (scheme != "http") {
    throw std::runtime_error("unsupported url scheme: " + scheme);
  }
  std::size_t path_at = url.find('/', scheme_at + scheme_sep.size());
  std::string host = url.substr(scheme_at + scheme_sep.size(),
                                path_at - scheme_at - scheme_sep.size());
  std::string target = path_at == std::string::npos ? "/" : url.substr(path_at);

  httplib::Client client(("http://" + host).c_str());
  client.set_follow_location(true);
  client.set_connection_timeout(30);
  client.set_read_timeout(60);
  auto res = client.Get(target.c_str());
  if (!res || res->status != 200) {
    throw std::runtime_error("download failed for " + url +
                             (res ? " (status " + std::to_string(res->status) + ")"
                                  : " (no response)"));
  }
  save_text(dest, res->body);
}

}  // namespace

std::string fetch_dataset(const DatasetManifest& manifest, const ManifestEntry& entry) {
  if (!entry.path.empty()) {
    fs::path local = fs::path(manifest.directory) / entry.path;
    if (!fs::exists(local)) {
      throw std::runtime_error("committed dataset missing: " + local.string());
    }
    verify_checksum(local.string(), entry.crc32, entry.name);
    return local.string();
  }

  fs::path cache = cache_directory();
  fs::create_directories(cache);
  fs::path local = cache / (entry.name + ".csv");
  if (fs::exists(local)) {
    try {
      verify_checksum(local.string(), entry.crc32, entry.name);
      return local.string();  // cached copy is good
    } catch (const std::exception&) {
      fs::remove(local);  // stale or corrupt; re-download
    }
  }
  download(entry.url, local.string());
  try {
    verify_checksum(local.string(), entry.crc32, entry.name);
  } catch (const std::exception&) {
    fs::remove(local);
    throw;
  }
  return local.string();
}

RawDataset open_dataset(const std::optional<DatasetManifest>& manifest,
                        const std::string& name, const CsvSchema& fallback_schema) {
  if (manifest) {
    if (const ManifestEntry* entry = manifest->find(name)) {
      std::string local = fetch_dataset(*manifest, *entry);
      RawDataset ds = load_csv(local, entry->schema);
      ds.name = entry->name;
      return ds;
    }
  }
  return load_csv(name, fallback_schema);
}

}  // namespace unarydt
