#include "flipdist/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace flipdist {

Rational::Rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::invalid_argument("rational division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::parse(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  size_t pos = 0;
  bool neg = false;
  if (text[pos] == '+' || text[pos] == '-') {
    neg = text[pos] == '-';
    ++pos;
  }
  auto read_digits = [&](std::string& out) {
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      out.push_back(text[pos]);
      ++pos;
    }
    if (pos == start) throw std::invalid_argument("malformed rational literal: " + std::string(text));
  };
  std::string num_digits;
  read_digits(num_digits);
  std::string den_digits = "1";
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    den_digits.clear();
    read_digits(den_digits);
  }
  if (pos != text.size()) throw std::invalid_argument("malformed rational literal: " + std::string(text));
  mpz_class num(num_digits, 10);
  mpz_class den(den_digits, 10);
  if (den == 0) throw std::invalid_argument("rational with zero denominator: " + std::string(text));
  if (neg) num = -num;
  return Rational(num, den);
}

std::string Rational::str() const {
  std::string s = v_.get_num().get_str();
  if (v_.get_den() != 1) {
    s += '/';
    s += v_.get_den().get_str();
  }
  return s;
}

Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace flipdist
