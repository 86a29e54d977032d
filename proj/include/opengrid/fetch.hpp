#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

// Content-addressed download cache for the public source files.
//
// Manifest format, one entry per line, '#' starts a comment:
//
//   Substation.csv = https://example.org/aies/Substation.csv sha256=<hex>
//
// The sha256 field is optional; without it every run downloads.
namespace opengrid::fetch {

struct ManifestEntry {
  std::string name;
  std::string url;
  std::optional<std::string> sha256;  // lowercase hex
};

std::vector<ManifestEntry> parse_manifest(std::istream& in);
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path);

struct Response {
  int status = 0;  // 0 = connection failure
  std::string body;
  std::string error;
};

// Transport hook so callers (and tests) can count or replace network access.
using Transport = std::function<Response(const std::string& url)>;

// cpp-httplib for http/https, direct read for file://.
Response http_get(const std::string& url);

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

struct FetchOptions {
  int max_attempts = 3;  // connection failures and 5xx are retried
  Transport transport = http_get;
};

// Returns one cache path per manifest entry, in manifest order. Cached files
// are named <sha256>_<name>. A cached file whose content no longer matches
// its name is reported as HashMismatch, never replaced.
std::vector<std::filesystem::path> fetch_dataset(const std::vector<ManifestEntry>& manifest,
                                                 const std::filesystem::path& cache_dir,
                                                 const FetchOptions& options = {});

}  // namespace opengrid::fetch
