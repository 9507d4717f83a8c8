#include "qsp/qasm.hpp"

#include <charconv>
#include <cstdio>
#include <numbers>
#include <optional>
#include <regex>
#include <sstream>
#include <vector>

#include "qsp/errors.hpp"

namespace qsp {
namespace {

constexpr std::string_view kPhaseTag = "// global_phase:";

std::string fmt_angle(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& s, std::size_t line);

// Accepts "pi", "-pi/2", "3*pi/4" and friends as well as plain numbers.
std::optional<double> pi_expression(const std::string& s, std::size_t line) {
  static const std::regex re(R"((-?)(?:([0-9.eE+-]+)\*)?pi(?:/([0-9.eE+-]+))?)");
  std::smatch mt;
  if (!std::regex_match(s, mt, re)) return std::nullopt;
  double v = std::numbers::pi;
  if (mt[2].matched) v *= to_double(mt[2], line);
  if (mt[3].matched) v /= to_double(mt[3], line);
  return mt[1].length() ? -v : v;
}

double to_double(const std::string& s, std::size_t line) {
  if (s.find("pi") != std::string::npos) {
    if (const auto v = pi_expression(s, line)) return *v;
    throw ParseError(line, "bad angle '" + s + "'");
  }
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "bad angle '" + s + "'");
  }
}

int to_index(const std::string& s, std::size_t line) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw ParseError(line, "bad qubit index '" + s + "'");
  return v;
}

}  // namespace

std::string emit_qasm(const Circuit& c) {
  std::ostringstream out;
  out << "OPENQASM 2.0;\n";
  out << "include \"qelib1.inc\";\n";
  out << "// bit order: big-endian, q[0] is the most significant bit of the state index\n";
  out << kPhaseTag << ' ' << fmt_angle(c.global_phase()) << '\n';
  out << "qreg q[" << c.width() << "];\n";
  for (const auto& g : c.gates()) {
    if (const auto* one = std::get_if<OneQubitGate>(&g)) {
      out << "u(" << fmt_angle(one->theta) << ',' << fmt_angle(one->phi) << ',' << fmt_angle(one->lambda) << ") q["
          << one->target << "];\n";
    } else {
      const auto& cx = std::get<CnotGate>(g);
      out << "cx q[" << cx.control << "],q[" << cx.target << "];\n";
    }
  }
  return out.str();
}

Circuit parse_qasm(std::string_view text) {
  static const std::regex qreg_re(R"(qreg\s+q\s*\[\s*(\d+)\s*\]\s*;)");
  static const std::regex u_re(R"(u\s*\(\s*([^,\s]+)\s*,\s*([^,\s]+)\s*,\s*([^)\s]+)\s*\)\s*q\s*\[\s*(\d+)\s*\]\s*;)");
  static const std::regex cx_re(R"(cx\s+q\s*\[\s*(\d+)\s*\]\s*,\s*q\s*\[\s*(\d+)\s*\]\s*;)");

  std::optional<Circuit> circuit;
  std::optional<double> phase;
  bool saw_header = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const auto line = trim(raw);
    if (line.empty()) continue;
    if (line.starts_with(kPhaseTag)) {
      phase = to_double(std::string(trim(line.substr(kPhaseTag.size()))), line_no);
      continue;
    }
    if (line.starts_with("//")) continue;
    if (!saw_header) {
      if (line != "OPENQASM 2.0;") throw ParseError(line_no, "expected 'OPENQASM 2.0;' header");
      saw_header = true;
      continue;
    }
    if (line.starts_with("include")) {
      if (line != "include \"qelib1.inc\";") throw ParseError(line_no, "unsupported include");
      continue;
    }

    const std::string s(line);
    std::smatch mt;
    if (std::regex_match(s, mt, qreg_re)) {
      if (circuit) throw ParseError(line_no, "only one quantum register is supported");
      const int width = to_index(mt[1], line_no);
      if (width < 1) throw ParseError(line_no, "register must hold at least one qubit");
      circuit.emplace(width);
      continue;
    }
    if (!circuit) throw ParseError(line_no, "gate before register declaration");
    try {
      if (std::regex_match(s, mt, u_re)) {
        circuit->u(to_double(mt[1], line_no), to_double(mt[2], line_no), to_double(mt[3], line_no),
                   to_index(mt[4], line_no));
      } else if (std::regex_match(s, mt, cx_re)) {
        circuit->cx(to_index(mt[1], line_no), to_index(mt[2], line_no));
      } else {
        throw ParseError(line_no, "unsupported statement '" + s + "'");
      }
    } catch (const InvalidInput& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (!saw_header) throw ParseError(line_no, "missing OPENQASM header");
  if (!circuit) throw ParseError(line_no, "missing qreg declaration");
  if (phase) circuit->add_phase(*phase);
  return *std::move(circuit);
}

}  // namespace qsp
