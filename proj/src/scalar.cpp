#include <pfva/scalar.hpp>

#include <stdexcept>

namespace pfva {

std::string to_string(const Scalar& s) { return s.get_str(); }

Scalar parse_scalar(std::string_view text) {
  auto valid_int = [](std::string_view t, bool allow_sign) {
    if (t.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (t[0] == '-' || t[0] == '+')) i = 1;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  const auto slash = text.find('/');
  const auto num = text.substr(0, slash);
  const auto den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  if (!valid_int(num, true) || (slash != std::string_view::npos && !valid_int(den, false)))
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  std::string n(num);
  if (!n.empty() && n[0] == '+') n.erase(0, 1);
  Scalar out;
  out.get_num() = Integer(n, 10);
  out.get_den() = slash == std::string_view::npos ? Integer(1) : Integer(std::string(den), 10);
  if (out.get_den() == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  out.canonicalize();
  return out;
}

Integer binomial(long l, long j) {
  if (j < 0) return 0;
  Integer num = 1;
  for (long i = 0; i < j; ++i) num *= Integer(l - i);
  return num / factorial(j);
}

Integer factorial(long n) {
  Integer out = 1;
  for (long i = 2; i <= n; ++i) out *= i;
  return out;
}

}  // namespace pfva
