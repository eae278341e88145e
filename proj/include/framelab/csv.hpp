#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace framelab::csv {

// %.17g: enough digits to round-trip IEEE doubles, no trailing noise for
// short decimals. Output is byte-stable for a fixed input.
std::string fmt(double x);
std::string fmt(std::int64_t x);
std::string fmt(std::uint64_t x);
std::string fmt(int x);
inline std::string fmt(const std::string& s) { return s; }
inline std::string fmt(const char* s) { return s; }

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  void comment(std::string_view text) { out_ << "# " << text << "\n"; }

  template <class... Ts>
  void row(const Ts&... vals) {
    bool first = true;
    ((out_ << (first ? (first = false, "") : ",") << fmt(vals)), ...);
    out_ << "\n";
  }

 private:
  std::ostream& out_;
};

}  // namespace framelab::csv
