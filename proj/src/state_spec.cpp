#include "spekkens/state_spec.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

#include "spekkens/errors.hpp"

namespace spekkens::state_spec {

using dense::Complex;
using dense::DenseState;
using dense::Vector;

namespace {

std::size_t skip_space(std::string_view s, std::size_t pos) {
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  return pos;
}

bool is_generator_list(std::string_view s) {
  const auto pos = skip_space(s, 0);
  if (pos >= s.size() || (s[pos] != '+' && s[pos] != '-')) return false;
  const auto next = s.find_first_not_of("+-i", pos);
  return next != std::string_view::npos && std::string_view("IXYZ").find(s[next]) != std::string_view::npos;
}

DenseState parse_generators(std::string_view s, int d) {
  std::vector<dense::PauliLabel> gens;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto end = s.find(',', start);
    if (end == std::string_view::npos) end = s.size();
    const auto first = skip_space(s, start);
    auto last = end;
    while (last > first && std::isspace(static_cast<unsigned char>(s[last - 1]))) --last;
    if (first >= last) throw ParseError("empty generator", first + 1);
    if (s[first] != '+' && s[first] != '-') throw ParseError("generator must start with a sign", first + 1);
    try {
      gens.push_back(dense::PauliLabel::parse(std::string(s.substr(first, last - first)), d));
    } catch (const ParseError& e) {
      throw ParseError(e.message(), first + e.column());
    }
    if (!gens.empty() && gens.back().n() != gens.front().n()) {
      throw ParseError("generator length differs from the first generator", first + 1);
    }
    start = end + 1;
  }
  if (gens.size() != static_cast<std::size_t>(gens.front().n())) {
    throw ParseError("expected " + std::to_string(gens.front().n()) + " generators, found " +
                         std::to_string(gens.size()),
                     s.size() + 1);
  }
  try {
    return dense::stabilizer_state(gens);
  } catch (const InvalidInput& e) {
    throw ParseError(e.what(), 1);
  }
}

Vector ket_symbol(char c, int d, std::size_t column) {
  Vector v = Vector::Zero(d);
  if (c == '+') {
    v.setConstant(Complex(1.0 / std::sqrt(static_cast<double>(d)), 0.0));
  } else if (c == '-') {
    if (d != 2) throw ParseError("'-' is a qubit ket", column);
    v(0) = 1.0 / std::sqrt(2.0);
    v(1) = -1.0 / std::sqrt(2.0);
  } else if (std::isdigit(static_cast<unsigned char>(c)) && c - '0' < d) {
    v(c - '0') = 1.0;
  } else {
    throw ParseError(std::string("unexpected ket symbol '") + c + "'", column);
  }
  return v;
}

DenseState parse_ket(std::string_view s, int d) {
  const auto bar = s.find('|');
  std::string gate;
  std::size_t body = skip_space(s, 0);
  std::size_t body_end = s.size();
  while (body_end > body && std::isspace(static_cast<unsigned char>(s[body_end - 1]))) --body_end;
  if (bar != std::string_view::npos) {
    const auto g0 = skip_space(s, 0);
    std::size_t g1 = bar;
    while (g1 > g0 && std::isspace(static_cast<unsigned char>(s[g1 - 1]))) --g1;
    gate = std::string(s.substr(g0, g1 - g0));
    if (body_end == 0 || s[body_end - 1] != '>') throw ParseError("ket must end with '>'", body_end + 1);
    body = bar + 1;
    --body_end;
  }
  if (body >= body_end) throw ParseError("empty ket", body + 1);
  std::vector<Vector> kets;
  for (std::size_t i = body; i < body_end; ++i) kets.push_back(ket_symbol(s[i], d, i + 1));
  DenseState state = DenseState::product(d, kets);
  if (gate.empty()) return state;
  if (!dense::is_known_gate(gate, d)) throw ParseError("unknown gate '" + gate + "'", skip_space(s, 0) + 1);
  const int n = state.n();
  const int arity = dense::gate_arity(gate);
  if (arity == n) {
    std::vector<int> wires(static_cast<std::size_t>(n));
    for (int w = 0; w < n; ++w) wires[static_cast<std::size_t>(w)] = w;
    return state.evolved(dense::gate(gate, wires, n, d));
  }
  if (arity != 1) {
    throw ParseError("gate " + gate + " acts on " + std::to_string(arity) + " wires but the ket has " +
                         std::to_string(n),
                     skip_space(s, 0) + 1);
  }
  for (int w = 0; w < n; ++w) state = state.evolved(dense::gate(gate, {w}, n, d));
  return state;
}

double parse_real(std::string_view s, std::size_t& pos, std::size_t offset) {
  double value = 0.0;
  const char* begin = s.data() + pos;
  const auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), value);
  if (ec != std::errc()) throw ParseError("expected a number", offset + pos + 1);
  pos += static_cast<std::size_t>(ptr - begin);
  return value;
}

/// a, bi, a+bi, i, -i
Complex parse_complex(std::string_view s, std::size_t offset) {
  Complex value(0.0, 0.0);
  std::size_t pos = 0;
  bool any = false;
  while (pos < s.size()) {
    double sign = 1.0;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1.0 : 1.0;
      ++pos;
    } else if (any) {
      throw ParseError("expected '+' or '-'", offset + pos + 1);
    }
    double magnitude = 1.0;
    const bool bare_i = pos < s.size() && s[pos] == 'i';
    if (!bare_i) magnitude = parse_real(s, pos, offset);
    if (pos < s.size() && s[pos] == 'i') {
      value += Complex(0.0, sign * magnitude);
      ++pos;
    } else {
      value += Complex(sign * magnitude, 0.0);
    }
    any = true;
  }
  if (!any) throw ParseError("empty amplitude", offset + 1);
  return value;
}

DenseState parse_amplitudes(std::string_view s, int d) {
  const auto open = s.find('[');
  const auto close = s.rfind(']');
  if (close == std::string_view::npos || close < open) throw ParseError("missing ']'", s.size() + 1);
  if (skip_space(s, close + 1) != s.size()) throw ParseError("text after ']'", close + 2);
  std::vector<Complex> amps;
  std::size_t start = open + 1;
  while (start <= close) {
    auto end = s.find(',', start);
    if (end == std::string_view::npos || end > close) end = close;
    std::string token;
    std::size_t token_start = start;
    for (std::size_t i = start; i < end; ++i) {
      if (!std::isspace(static_cast<unsigned char>(s[i]))) {
        if (token.empty()) token_start = i;
        token += s[i];
      }
    }
    amps.push_back(parse_complex(token, token_start));
    start = end + 1;
  }
  std::size_t dim = 1;
  int n = 0;
  while (dim < amps.size()) {
    dim *= static_cast<std::size_t>(d);
    ++n;
  }
  if (dim != amps.size() || n == 0) {
    throw ParseError(std::to_string(amps.size()) + " amplitudes is not a power of d=" + std::to_string(d), open + 1);
  }
  Vector v(static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) v(static_cast<Eigen::Index>(i)) = amps[i];
  try {
    return DenseState(d, n, v);
  } catch (const InvalidInput& e) {
    throw ParseError(e.what(), open + 1);
  }
}

}  // namespace

DenseState parse(std::string_view text, int d) {
  phase::require_modulus(d);
  const auto first = skip_space(text, 0);
  if (first == text.size()) throw ParseError("empty state", 1);
  if (text[first] == '[') return parse_amplitudes(text, d);
  if (is_generator_list(text)) return parse_generators(text, d);
  return parse_ket(text, d);
}

}  // namespace spekkens::state_spec
