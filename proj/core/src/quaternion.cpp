#include "qstoch/quaternion.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <cstdio>
#include <ostream>

#include "qstoch/error.hpp"

namespace qstoch {

double distance_inf(const Quaternion& p, const Quaternion& q) {
  return std::max({std::abs(p.w - q.w), std::abs(p.x - q.x), std::abs(p.y - q.y), std::abs(p.z - q.z)});
}

Quaternion conjugate_by(const Quaternion& q, const Quaternion& x) {
  if (std::abs(x.norm() - 1.0) > 1e-9) {
    throw Error(ErrorKind::NonUnitConjugator, "conjugator norm is " + std::to_string(x.norm()));
  }
  return x * q * x.conj();
}

std::pair<double, Quaternion> pure_dot_cross(const Quaternion& p, const Quaternion& q) {
  if (std::abs(p.w) > 1e-9 || std::abs(q.w) > 1e-9) {
    throw Error(ErrorKind::NotPure, "pure_dot_cross needs zero scalar parts");
  }
  const double d = p.x * q.x + p.y * q.y + p.z * q.z;
  const Quaternion c{0.0, p.y * q.z - p.z * q.y, p.z * q.x - p.x * q.z, p.x * q.y - p.y * q.x};
  return {d, c};
}

Quaternion pow(const Quaternion& q, int exponent) {
  Quaternion base = exponent < 0 ? q.inverse() : q;
  unsigned e = exponent < 0 ? static_cast<unsigned>(-static_cast<long>(exponent)) : static_cast<unsigned>(exponent);
  Quaternion result{1.0};
  while (e != 0) {
    if (e & 1u) result = result * base;
    base = base * base;
    e >>= 1u;
  }
  return result;
}

std::string format_literal(const Quaternion& q) {
  std::array<char, 128> buf{};
  const int len = std::snprintf(buf.data(), buf.size(), "(%.17g,%.17g,%.17g,%.17g)", q.w, q.x, q.y, q.z);
  return std::string(buf.data(), static_cast<std::size_t>(len));
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view field, std::string_view whole) {
  field = trim(field);
  // strtod accepts the same grammar the writer emits (including inf/nan), and
  // from_chars for double is not available on every toolchain we target.
  std::string tmp(field);
  char* end = nullptr;
  const double value = std::strtod(tmp.c_str(), &end);
  if (tmp.empty() || end != tmp.c_str() + tmp.size()) {
    throw Error(ErrorKind::Parse, "bad quaternion field '" + tmp + "' in '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

Quaternion parse_literal(std::string_view text) {
  std::string_view body = trim(text);
  if (!body.empty() && body.front() == '(') {
    if (body.back() != ')') throw Error(ErrorKind::Parse, "unterminated quaternion literal '" + std::string(text) + "'");
    body = body.substr(1, body.size() - 2);
  }
  std::array<double, 4> c{};
  std::size_t field = 0;
  std::size_t start = 0;
  for (std::size_t pos = 0; pos <= body.size(); ++pos) {
    if (pos == body.size() || body[pos] == ',') {
      if (field >= 4) throw Error(ErrorKind::Parse, "too many fields in '" + std::string(text) + "'");
      c[field++] = parse_double(body.substr(start, pos - start), text);
      start = pos + 1;
    }
  }
  if (field != 4) throw Error(ErrorKind::Parse, "expected 4 fields in '" + std::string(text) + "'");
  return {c[0], c[1], c[2], c[3]};
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q) { return os << format_literal(q); }

}  // namespace qstoch
