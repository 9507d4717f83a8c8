#pragma once

#include <string>
#include <string_view>

#include "qsp/circuit.hpp"

namespace qsp {

// OpenQASM 2.0 subset: one `qreg q[n];`, `u(theta,phi,lambda) q[i];` and
// `cx q[i],q[j];`. A `// global_phase:` comment carries the circuit phase.
// Register order is big-endian: q[0] is the most significant bit of the
// amplitude index.

std::string emit_qasm(const Circuit& c);

/// Parses text produced by emit_qasm. Throws ParseError with a line number.
Circuit parse_qasm(std::string_view text);

}  // namespace qsp
