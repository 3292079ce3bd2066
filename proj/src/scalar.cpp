#include "pqstab/scalar.hpp"

#include <cctype>

#include "pqstab/error.hpp"

namespace pqstab {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw InputError("malformed number '" + std::string(whole) + "'");
  }
  mpz_class value(std::string(s), 10);
  return negative ? mpz_class(-value) : value;
}

}  // namespace

Scalar make_scalar(long num, long den) {
  if (den == 0) throw InputError("zero denominator");
  Scalar value(num, den);
  value.canonicalize();
  return value;
}

Scalar parse_scalar(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw InputError("empty number");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(text.substr(0, slash), whole);
    mpz_class den = parse_integer(text.substr(slash + 1), whole);
    if (den == 0) throw InputError("zero denominator in '" + std::string(whole) + "'");
    Scalar value(num, den);
    value.canonicalize();
    return value;
  }

  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    bool negative = !int_part.empty() && int_part.front() == '-';
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) int_part.remove_prefix(1);
    if ((int_part.empty() && frac_part.empty()) ||
        (!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part))) {
      throw InputError("malformed number '" + std::string(whole) + "'");
    }
    mpz_class scale = 1;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac_part.size());
    mpz_class num = int_part.empty() ? mpz_class(0) : mpz_class(std::string(int_part), 10);
    num *= scale;
    if (!frac_part.empty()) num += mpz_class(std::string(frac_part), 10);
    if (negative) num = -num;
    Scalar value(num, scale);
    value.canonicalize();
    return value;
  }

  return Scalar(parse_integer(text, whole));
}

std::string to_string(const Scalar& value) { return value.get_str(); }

}  // namespace pqstab
