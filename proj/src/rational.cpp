#include "augsos/rational.hpp"

#include <cctype>

#include "augsos/error.hpp"

namespace augsos {

namespace {

mpz_class floor_of(const Rational& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw Error(ErrorCode::Parse, "malformed rational '" + std::string(text) + "'");
  }
  mpz_class p(std::string(num), 10);
  mpz_class q(std::string(den), 10);
  if (q == 0) throw Error(ErrorCode::Parse, "zero denominator in '" + std::string(text) + "'");
  Rational r(negative ? mpz_class(-p) : p, q);
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& value) { return value.get_str(10); }

Rational approximate(double value, const mpz_class& denominator_bound) {
  const Rational exact(value);
  mpz_class h_prev = 1, h = floor_of(exact);
  mpz_class k_prev = 0, k = 1;
  Rational rest = exact - Rational(h);
  while (rest != 0) {
    const Rational inv = 1 / rest;
    const mpz_class a = floor_of(inv);
    const mpz_class k_next = a * k + k_prev;
    if (k_next > denominator_bound) break;
    const mpz_class h_next = a * h + h_prev;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
    rest = inv - Rational(a);
  }
  Rational out(h, k);
  out.canonicalize();
  return out;
}

}  // namespace augsos
