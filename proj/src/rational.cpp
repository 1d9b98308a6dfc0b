#include "surfmmp/rational.hpp"

#include <cctype>

#include "surfmmp/error.hpp"

namespace surfmmp {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "dimension mismatch";
    case ErrorKind::Singular: return "singular system";
    case ErrorKind::NotContractible: return "not contractible";
    case ErrorKind::InconsistentIncidence: return "inconsistent incidence";
    case ErrorKind::NoZariskiDecomposition: return "no Zariski decomposition within tracked curves";
    case ErrorKind::NotRedundant: return "not redundant";
    case ErrorKind::UnknownName: return "unknown name";
    case ErrorKind::InvariantViolation: return "invariant violation";
    case ErrorKind::Parse: return "parse error";
  }
  return "error";
}

std::string to_string(const Rational& value) { return value.get_str(); }

namespace {

bool valid_integer(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!valid_integer(num, true) || !valid_integer(den, false)) {
    throw SurfaceError(ErrorKind::Parse, "malformed rational '" + std::string(text) + "'");
  }
  if (num[0] == '+') num.remove_prefix(1);
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw SurfaceError(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

}  // namespace surfmmp
