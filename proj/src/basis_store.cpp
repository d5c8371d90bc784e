#include <pfva/basis_store.hpp>

#include "json.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <atomic>
#include <cctype>
#include <cerrno>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pfva {

namespace {

class FileLock {
 public:
  FileLock(const std::filesystem::path& path, int op) : fd_(::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644)) {
    if (fd_ < 0) throw std::runtime_error("cannot open lock file " + path.string());
    while (::flock(fd_, op) != 0)
      if (errno != EINTR) throw std::runtime_error("flock failed on " + path.string());
  }
  ~FileLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_;
};

std::string sanitize(std::string_view s) {
  std::string out;
  for (char c : s) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.') ? c : '_';
  return out;
}

}  // namespace

BasisStore::BasisStore(std::filesystem::path dir, std::string version)
    : dir_(std::move(dir)), version_(std::move(version)) {
  std::filesystem::create_directories(dir_);
}

std::filesystem::path BasisStore::file_for(int k, std::string_view space, int cutoff) const {
  return dir_ / ("k" + std::to_string(k) + "_" + sanitize(space) + "_c" + std::to_string(cutoff) + "_" +
                 sanitize(version_) + ".json");
}

std::optional<GradedBasis> BasisStore::load(int k, std::string_view space, int cutoff) const {
  const auto path = file_for(k, space, cutoff);
  if (!std::filesystem::exists(path)) return std::nullopt;
  FileLock lock(dir_ / ".lock", LOCK_SH);
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    const auto j = nlohmann::json::parse(in);
    if (j.at("engine") != version_ || j.at("space") != space || j.at("k") != k || j.at("cutoff") != cutoff)
      return std::nullopt;
    return graded_basis_from_json(j);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void BasisStore::store(const GradedBasis& basis, int k, std::string_view space, int cutoff) const {
  static std::atomic<unsigned> counter{0};
  auto j = to_json(basis, k, cutoff);
  j["engine"] = version_;
  j["space"] = std::string(space);
  const auto path = file_for(k, space, cutoff);
  std::ostringstream name;
  name << path.filename().string() << ".tmp." << ::getpid() << "." << counter++;
  const auto tmp = dir_ / name.str();

  FileLock lock(dir_ / ".lock", LOCK_EX);
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << j.dump() << '\n';
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp);
      throw std::runtime_error("cannot write cache file " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace pfva
