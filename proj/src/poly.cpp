#include "motivic/poly.hpp"

#include <cctype>
#include <map>

#include "motivic/error.hpp"

namespace motivic {

IntPoly::IntPoly(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long long c : coeffs) coeffs_.emplace_back(c);
  trim();
}

IntPoly IntPoly::constant(const Integer& c) { return IntPoly(std::vector<Integer>{c}); }

IntPoly IntPoly::monomial(const Integer& c, std::size_t degree) {
  std::vector<Integer> v(degree + 1);
  v[degree] = c;
  return IntPoly(std::move(v));
}

void IntPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPoly IntPoly::operator-() const {
  IntPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

IntPoly& IntPoly::operator+=(const IntPoly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  trim();
  return *this;
}

IntPoly& IntPoly::operator*=(const Integer& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Integer> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return IntPoly(std::move(out));
}

IntPoly IntPoly::shifted(std::size_t k) const {
  if (is_zero() || k == 0) return *this;
  std::vector<Integer> out(k);
  out.insert(out.end(), coeffs_.begin(), coeffs_.end());
  return IntPoly(std::move(out));
}

IntPoly IntPoly::unshifted(std::size_t k) const {
  if (is_zero() || k == 0) return *this;
  for (std::size_t i = 0; i < k && i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) throw Error(ErrorCode::internal, "unshift of non-divisible polynomial");
  }
  if (k >= coeffs_.size()) return {};
  return IntPoly(std::vector<Integer>(coeffs_.begin() + static_cast<std::ptrdiff_t>(k), coeffs_.end()));
}

std::size_t IntPoly::low_order() const {
  std::size_t k = 0;
  while (k < coeffs_.size() && coeffs_[k] == 0) ++k;
  return is_zero() ? 0 : k;
}

std::pair<IntPoly, IntPoly> IntPoly::divmod_monic(const IntPoly& monic) const {
  if (monic.is_zero() || monic.leading() != 1) {
    throw Error(ErrorCode::internal, "divmod_monic needs a monic divisor");
  }
  const std::size_t dm = static_cast<std::size_t>(monic.degree());
  if (degree() < monic.degree()) return {IntPoly{}, *this};
  std::vector<Integer> rem = coeffs_;
  std::vector<Integer> quo(coeffs_.size() - dm);
  for (std::size_t i = coeffs_.size(); i-- > dm;) {
    const Integer c = rem[i];
    if (c == 0) continue;
    quo[i - dm] = c;
    for (std::size_t j = 0; j <= dm; ++j) rem[i - dm + j] -= c * monic.coeffs_[j];
  }
  rem.resize(dm);
  return {IntPoly(std::move(quo)), IntPoly(std::move(rem))};
}

bool IntPoly::divisible_by_monic(const IntPoly& monic) const {
  return divmod_monic(monic).second.is_zero();
}

IntPoly IntPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Integer> out(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) out[i - 1] = coeffs_[i] * i;
  return IntPoly(std::move(out));
}

Integer IntPoly::content() const {
  Integer g = 0;
  for (const auto& c : coeffs_) g = boost::multiprecision::gcd(g, c);
  return g;
}

IntPoly IntPoly::compose_affine(const Integer& a, const Integer& b) const {
  // Horner in the polynomial ring: ((c_n)(a+bx) + c_{n-1})(a+bx) + ...
  const IntPoly lin(std::vector<Integer>{a, b});
  IntPoly acc;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    acc = acc * lin;
    acc += IntPoly::constant(coeffs_[i]);
  }
  return acc;
}

Integer IntPoly::eval(const Integer& x) const {
  Integer acc = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
  return acc;
}

Rational IntPoly::eval(const Rational& x) const {
  Rational acc = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + Rational(coeffs_[i]);
  return acc;
}

std::string IntPoly::to_string(std::string_view var) const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const Integer& c = coeffs_[i];
    if (c == 0) continue;
    const bool neg = c < 0;
    const Integer mag = neg ? Integer(-c) : c;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    if (i == 0 || mag != 1) {
      out += mag.str();
      if (i != 0) out += "*";
    }
    if (i >= 1) out += var;
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

IntPoly lefschetz_minus_one(std::int64_t n) {
  IntPoly r = IntPoly::monomial(1, static_cast<std::size_t>(n));
  return r - IntPoly::constant(1);
}

std::int64_t euler_phi(std::int64_t n) {
  std::int64_t result = n;
  std::int64_t m = n;
  for (std::int64_t d = 2; d * d <= m; ++d) {
    if (m % d != 0) continue;
    while (m % d == 0) m /= d;
    result -= result / d;
  }
  if (m > 1) result -= result / m;
  return result;
}

IntPoly cyclotomic(std::int64_t n) {
  if (n < 1) throw Error(ErrorCode::internal, "cyclotomic index must be positive");
  thread_local std::map<std::int64_t, IntPoly> cache;
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  IntPoly r = lefschetz_minus_one(n);
  for (std::int64_t d = 1; d < n; ++d) {
    if (n % d == 0) r = r.divmod_monic(cyclotomic(d)).first;
  }
  cache.emplace(n, r);
  return r;
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, char var) : text_(text), var_(var) {}

  IntPoly parse() {
    IntPoly acc;
    skip_ws();
    bool first = true;
    while (pos_ < text_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      acc += parse_term() * Integer(sign);
      first = false;
      skip_ws();
    }
    if (first) fail("empty polynomial");
    return acc;
  }

 private:
  IntPoly parse_term() {
    Integer coeff = 1;
    bool have_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = parse_integer();
      have_coeff = true;
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        skip_ws();
        if (peek() != var_) fail("expected variable after '*'");
      }
    }
    if (peek() == var_) {
      ++pos_;
      skip_ws();
      std::size_t power = 1;
      if (peek() == '^') {
        ++pos_;
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent");
        power = static_cast<std::size_t>(parse_integer());
      }
      return IntPoly::monomial(coeff, power);
    }
    if (!have_coeff) fail("expected coefficient or variable");
    return IntPoly::constant(coeff);
  }

  Integer parse_integer() {
    Integer v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      ++pos_;
    }
    return v;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::parse_error,
                msg + " at offset " + std::to_string(pos_) + " in \"" + std::string(text_) + "\"");
  }

  std::string_view text_;
  char var_;
  std::size_t pos_ = 0;
};

// Fraction-free Gaussian elimination; entries are overwritten.
Integer bareiss_determinant(std::vector<std::vector<Integer>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

Integer resultant(const IntPoly& f, const IntPoly& g) {
  const auto m = static_cast<std::size_t>(f.degree());
  const auto n = static_cast<std::size_t>(g.degree());
  const std::size_t size = m + n;
  std::vector<std::vector<Integer>> syl(size, std::vector<Integer>(size));
  for (std::size_t row = 0; row < n; ++row) {
    for (std::size_t j = 0; j <= m; ++j) syl[row][row + j] = f.coeff(m - j);
  }
  for (std::size_t row = 0; row < m; ++row) {
    for (std::size_t j = 0; j <= n; ++j) syl[n + row][row + j] = g.coeff(n - j);
  }
  return bareiss_determinant(std::move(syl));
}

}  // namespace

IntPoly parse_int_poly(std::string_view text, char var) { return PolyParser(text, var).parse(); }

Integer discriminant(const IntPoly& f) {
  if (f.degree() < 1) throw Error(ErrorCode::invalid_input, "discriminant of a constant");
  if (f.degree() == 1) return 1;
  const auto n = f.degree();
  Integer res = resultant(f, f.derivative());
  if ((n * (n - 1) / 2) % 2 != 0) res = -res;
  return res / f.leading();
}

}  // namespace motivic
