#include "reflexive/catalog.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <sstream>

#include "reflexive/error.hpp"

namespace reflexive {

namespace {

// Open descriptor holding a flock for its lifetime.
class LockedFile {
 public:
  LockedFile(const std::filesystem::path& path, bool write) {
    fd_ = ::open(path.c_str(), write ? (O_RDWR | O_CREAT | O_APPEND) : O_RDONLY, 0644);
    if (fd_ < 0) fail(ErrorKind::StoreCorrupt, path.string() + ": " + std::strerror(errno));
    if (::flock(fd_, write ? LOCK_EX : LOCK_SH) != 0) {
      ::close(fd_);
      fail(ErrorKind::StoreCorrupt, path.string() + ": cannot lock: " + std::strerror(errno));
    }
  }
  LockedFile(const LockedFile&) = delete;
  LockedFile& operator=(const LockedFile&) = delete;
  ~LockedFile() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }

  std::string read_all() const {
    std::string data;
    char buf[1 << 16];
    ::lseek(fd_, 0, SEEK_SET);
    while (true) {
      const auto got = ::read(fd_, buf, sizeof buf);
      if (got < 0) fail(ErrorKind::StoreCorrupt, std::string("read failed: ") + std::strerror(errno));
      if (got == 0) return data;
      data.append(buf, static_cast<std::size_t>(got));
    }
  }

  void append(const std::string& text) const {
    std::size_t done = 0;
    while (done < text.size()) {
      const auto put = ::write(fd_, text.data() + done, text.size() - done);
      if (put < 0) fail(ErrorKind::StoreCorrupt, std::string("write failed: ") + std::strerror(errno));
      done += static_cast<std::size_t>(put);
    }
  }

 private:
  int fd_ = -1;
};

std::vector<CatalogRecord> parse_store(const std::string& data, const std::filesystem::path& path) {
  std::vector<CatalogRecord> out;
  std::istringstream in(data);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      CatalogRecord r{j.at("key").get<std::string>(), report_from_json(j.at("report").dump())};
      if (r.key != CatalogStore::key_for(r.report.normal_form)) throw std::runtime_error("key does not match");
      out.push_back(std::move(r));
    } catch (const std::exception& e) {
      fail(ErrorKind::StoreCorrupt, path.string() + ":" + std::to_string(number) + ": malformed record (" + e.what() + ")");
    }
  }
  return out;
}

void sort_records(std::vector<CatalogRecord>& records) {
  std::sort(records.begin(), records.end(), [](const CatalogRecord& a, const CatalogRecord& b) {
    if (a.key != b.key) return a.key < b.key;
    return matrix_less(a.report.normal_form, b.report.normal_form);
  });
}

}  // namespace

bool CatalogQuery::matches(const InvariantReport& r) const {
  if (reflexive && r.reflexive != *reflexive) return false;
  if (dim && r.dim != *dim) return false;
  if (h11 && (!r.h11 || *r.h11 != *h11)) return false;
  if (h21 && (!r.h21 || *r.h21 != *h21)) return false;
  if (euler && (!r.euler_cy3 || *r.euler_cy3 != *euler)) return false;
  return true;
}

CatalogStore::CatalogStore(std::filesystem::path path) : path_(std::move(path)) {}

std::string CatalogStore::key_for(const IntMatrix& nf) {
  std::uint64_t h = 14695981039346656037ull;
  const std::string text = std::to_string(nf.rows()) + "x" + std::to_string(nf.cols()) + ":" + nf.to_string();
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

bool CatalogStore::add(const LatticePolytope& p) { return add(build_report(p)); }

bool CatalogStore::add(const InvariantReport& report) {
  LockedFile file(path_, true);
  const auto records = parse_store(file.read_all(), path_);
  for (const auto& r : records)
    if (r.report.normal_form == report.normal_form) return false;
  nlohmann::json line;
  line["key"] = key_for(report.normal_form);
  line["report"] = nlohmann::json::parse(report_to_json(report, -1));
  file.append(line.dump() + "\n");
  return true;
}

std::vector<CatalogRecord> CatalogStore::list() const {
  if (!std::filesystem::exists(path_)) return {};
  LockedFile file(path_, false);
  auto records = parse_store(file.read_all(), path_);
  sort_records(records);
  return records;
}

std::vector<CatalogRecord> CatalogStore::find(const CatalogQuery& query) const {
  auto records = list();
  std::erase_if(records, [&](const CatalogRecord& r) { return !query.matches(r.report); });
  return records;
}

std::filesystem::path default_catalog_path() {
  if (const char* env = std::getenv("REFLEXIVE_CATALOG"); env && *env) return env;
  return "reflexive_catalog.jsonl";
}

}  // namespace reflexive
