#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "symflow/lattice.hpp"
#include "symflow/thermo.hpp"

namespace symflow {

/// Shortest decimal text that reads back to the same double.
std::string format_real(double x);
std::string format_vec(const Vec& v);
std::string format_vec(const IntVector& v);

/// Writes RFC 4180 rows; fields containing separators or quotes are quoted.
class CsvWriter {
 public:
  CsvWriter(std::ostream& os, std::vector<std::string> header);

  void row(const std::vector<std::string>& fields);
  [[nodiscard]] std::size_t columns() const noexcept { return columns_; }

 private:
  void emit(const std::vector<std::string>& fields);

  std::ostream& os_;
  std::size_t columns_;
};

}  // namespace symflow
