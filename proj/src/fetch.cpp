#include "opengrid/fetch.hpp"

#include <openssl/evp.h>

#include <cctype>
#include <fstream>
#include <iterator>
#include <memory>
#include <regex>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "opengrid/error.hpp"

namespace opengrid::fetch {
namespace {

namespace fs = std::filesystem;

std::string read_all(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

bool retriable(const Response& r) { return r.status == 0 || r.status >= 500; }

}  // namespace

std::vector<ManifestEntry> parse_manifest(std::istream& in) {
  static const std::regex entry_re(R"(^\s*([^=\s]+)\s*=\s*(\S+)(?:\s+sha256=([0-9a-fA-F]{64}))?\s*$)");
  std::vector<ManifestEntry> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::smatch m;
    if (!std::regex_match(line, m, entry_re)) {
      throw Error(ErrorCode::MalformedRow, "manifest line " + std::to_string(number) +
                                               ": expected 'name = url [sha256=<hex>]'");
    }
    ManifestEntry e{m[1].str(), m[2].str(), std::nullopt};
    if (m[3].matched) e.sha256 = lower(m[3].str());
    for (const auto& prev : out) {
      if (prev.name == e.name) {
        throw Error(ErrorCode::DuplicateId, "manifest line " + std::to_string(number) +
                                                ": dataset '" + e.name + "' listed twice");
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<ManifestEntry> read_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open manifest " + path.string());
  return parse_manifest(in);
}

Response http_get(const std::string& url) {
  if (url.starts_with("file://")) {
    const fs::path path = url.substr(7);
    std::ifstream in(path, std::ios::binary);
    if (!in) return {404, {}, "no such file " + path.string()};
    return {200, std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()), {}};
  }

  static const std::regex url_re(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(url, m, url_re)) return {0, {}, "unsupported url " + url};
  httplib::Client client(m[1].str());
  client.set_follow_location(true);
  client.set_connection_timeout(10);
  client.set_read_timeout(60);
  const std::string path = m[2].matched ? m[2].str() : "/";
  auto result = client.Get(path);
  if (!result) return {0, {}, httplib::to_string(result.error())};
  return {result->status, result->body, {}};
}

std::string sha256_hex(std::string_view bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
    throw Error(ErrorCode::Io, "sha256 failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xF]);
  }
  return out;
}

std::string sha256_file(const fs::path& path) { return sha256_hex(read_all(path)); }

std::vector<fs::path> fetch_dataset(const std::vector<ManifestEntry>& manifest, const fs::path& cache_dir,
                                    const FetchOptions& options) {
  std::vector<fs::path> out;
  if (manifest.empty()) return out;
  fs::create_directories(cache_dir);

  for (const auto& entry : manifest) {
    if (entry.sha256) {
      const fs::path cached = cache_dir / (*entry.sha256 + "_" + entry.name);
      if (fs::exists(cached)) {
        if (sha256_file(cached) != *entry.sha256) {
          throw Error(ErrorCode::HashMismatch,
                      "cached copy of '" + entry.name + "' at " + cached.string() + " is corrupt");
        }
        out.push_back(cached);
        continue;
      }
    }

    Response response;
    for (int attempt = 1; attempt <= std::max(1, options.max_attempts); ++attempt) {
      response = options.transport(entry.url);
      if (!retriable(response)) break;
      if (attempt < options.max_attempts) std::this_thread::sleep_for(std::chrono::milliseconds(100 * attempt));
    }
    if (response.status != 200) {
      const std::string why = response.status == 0 ? response.error : "HTTP " + std::to_string(response.status);
      throw Error(ErrorCode::NetworkError, "dataset '" + entry.name + "' (" + entry.url + "): " + why);
    }

    const std::string digest = sha256_hex(response.body);
    if (entry.sha256 && digest != *entry.sha256) {
      throw Error(ErrorCode::HashMismatch, "dataset '" + entry.name + "' expected sha256 " + *entry.sha256 +
                                               ", downloaded " + digest);
    }
    const fs::path target = cache_dir / (digest + "_" + entry.name);
    if (fs::exists(target)) {
      if (sha256_file(target) != digest) {
        throw Error(ErrorCode::HashMismatch, "cached copy " + target.string() + " is corrupt");
      }
    } else {
      const fs::path tmp = target.string() + ".part";
      {
        std::ofstream f(tmp, std::ios::binary);
        f.write(response.body.data(), static_cast<std::streamsize>(response.body.size()));
        if (!f) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
      }
      fs::rename(tmp, target);
    }
    out.push_back(target);
  }
  return out;
}

}  // namespace opengrid::fetch
