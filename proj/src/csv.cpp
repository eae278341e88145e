#include "framelab/csv.hpp"

#include <cstdio>

namespace framelab::csv {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt(std::int64_t x) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(x));
  return buf;
}

std::string fmt(std::uint64_t x) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%llu", static_cast<unsigned long long>(x));
  return buf;
}

std::string fmt(int x) { return fmt(static_cast<std::int64_t>(x)); }

}  // namespace framelab::csv
