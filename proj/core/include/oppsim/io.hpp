#pragma once

#include <fstream>
#include <string>
#include <string_view>

namespace oppsim {

// Shortest decimal form that parses back to exactly the same double
// (std::to_chars). Keeps CSV/scenario output byte-stable and lossless.
std::string fmt_double(double v);

// Parses a double, throws SimError on trailing garbage or empty input.
double parse_double(std::string_view s);
long long parse_int(std::string_view s);
unsigned long long parse_uint(std::string_view s);

// Writes content to path via a temp file plus rename, so a killed process
// never leaves a truncated file under the final name. Throws IoError.
void atomic_write_file(const std::string& path, std::string_view content);

std::string read_file(const std::string& path);  // throws IoError

// Streaming variant of atomic_write_file for large outputs: writes to
// path.tmp and renames on commit(). An uncommitted file is removed on
// destruction, so interrupted runs never leave partial output behind the
// final name.
class AtomicFile {
 public:
  explicit AtomicFile(std::string path);  // throws IoError
  ~AtomicFile();

  AtomicFile(const AtomicFile&) = delete;
  AtomicFile& operator=(const AtomicFile&) = delete;

  std::ofstream& stream() { return out_; }
  void commit();  // throws IoError

 private:
  std::string path_;
  std::string tmp_;
  std::ofstream out_;
  bool committed_ = false;
};

}  // namespace oppsim
