#include "incidence/gates.hpp"

#include <iostream>

namespace incidence {

GateExceeded::GateExceeded(std::string what, boost::multiprecision::cpp_int size,
                           boost::multiprecision::cpp_int limit)
    : std::runtime_error(what + " = " + size.str() + " exceeds the limit " + limit.str() +
                         " (use --gate-override to run anyway)"),
      size_(std::move(size)),
      limit_(std::move(limit)) {}

void enforce_gate(std::string_view what, const boost::multiprecision::cpp_int& size,
                  const boost::multiprecision::cpp_int& limit, const GateOptions& options) {
  if (size <= limit) return;
  if (!options.override_gates) throw GateExceeded(std::string(what), size, limit);
  std::cerr << "warning: " << what << " = " << size << " exceeds the limit " << limit
            << "; this may run for a long time\n";
}

}  // namespace incidence
