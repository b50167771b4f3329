#pragma once

#include <optional>
#include <string>
#include <vector>

#include "unarydt/dataset.hpp"

namespace unarydt {

/// One dataset the toolkit knows how to obtain: either a file committed in
/// the repository (path, relative to the manifest) or a remote file (url)
/// cached locally after download. The crc32 pins the exact bytes.
struct ManifestEntry {
  std::string name;
  std::string path;  // committed file, relative to the manifest
  std::string url;   // remote source (http)
  std::string crc32; // expected checksum, "0x" hex; empty = unchecked
  CsvSchema schema;
};

struct DatasetManifest {
  std::string directory;  // where the manifest file lives
  std::vector<ManifestEntry> entries;

  const ManifestEntry* find(const std::string& name) const;
};

DatasetManifest load_manifest(const std::string& path);

/// Directory for downloaded files: $UNARYDT_CACHE_DIR or ".unarydt_cache".
std::string cache_directory();

/// Ensure the entry's file is present locally and its checksum matches.
/// Committed files are used in place; remote files are reused from the
/// cache when already present and valid, otherwise downloaded. Returns the
/// local path. Checksum mismatches and unreachable sources throw.
std::string fetch_dataset(const DatasetManifest& manifest, const ManifestEntry& entry);

/// Load a dataset by manifest name (fetching if needed) or, when `name`
/// does not appear in the manifest (or no manifest is given), treat it as a
/// CSV path with the supplied schema.
RawDataset open_dataset(const std::optional<DatasetManifest>& manifest,
                        const std::string& name, const CsvSchema& fallback_schema);

}  // namespace unarydt
