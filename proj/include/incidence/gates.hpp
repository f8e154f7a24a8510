#pragma once

// Size gates for exhaustive searches.

#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace incidence {

class GateExceeded : public std::runtime_error {
 public:
  GateExceeded(std::string what, boost::multiprecision::cpp_int size, boost::multiprecision::cpp_int limit);

  const boost::multiprecision::cpp_int& search_space() const { return size_; }
  const boost::multiprecision::cpp_int& limit() const { return limit_; }

 private:
  boost::multiprecision::cpp_int size_;
  boost::multiprecision::cpp_int limit_;
};

struct GateOptions {
  /// Run searches past their limits; a warning with the search-space size is
  /// written to stderr instead of throwing.
  bool override_gates = false;
};

/// Throws GateExceeded when size > limit unless overridden.
void enforce_gate(std::string_view what, const boost::multiprecision::cpp_int& size,
                  const boost::multiprecision::cpp_int& limit, const GateOptions& options = {});

}  // namespace incidence
