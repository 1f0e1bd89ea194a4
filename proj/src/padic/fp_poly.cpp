#include "motivic/padic/fp_poly.hpp"

#include "motivic/error.hpp"

namespace motivic::padic {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t reduce(const Integer& c, std::uint64_t p) {
  Integer r = c % p;
  if (r < 0) r += p;
  return static_cast<std::uint64_t>(r);
}

std::vector<std::int64_t> prime_divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

FpPoly::FpPoly(std::uint64_t p, std::vector<std::uint64_t> coeffs) : p_(p), coeffs_(std::move(coeffs)) {
  if (p < 2) throw Error(ErrorCode::invalid_input, "field characteristic must be >= 2");
  for (auto& c : coeffs_) c %= p_;
  trim();
}

FpPoly FpPoly::from_int(const IntPoly& f, std::uint64_t p) {
  std::vector<std::uint64_t> c;
  c.reserve(f.coeffs().size());
  for (const auto& z : f.coeffs()) c.push_back(reduce(z, p));
  return FpPoly(p, std::move(c));
}

void FpPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

FpPoly FpPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(mod_inverse(leading(), p_));
}

FpPoly FpPoly::scaled(std::uint64_t c) const {
  std::vector<std::uint64_t> out = coeffs_;
  for (auto& x : out) x = mulmod(x, c % p_, p_);
  return FpPoly(p_, std::move(out));
}

FpPoly FpPoly::derivative() const {
  if (coeffs_.size() <= 1) return FpPoly(p_, {});
  std::vector<std::uint64_t> out(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) out[i - 1] = mulmod(coeffs_[i], i % p_, p_);
  return FpPoly(p_, std::move(out));
}

std::uint64_t FpPoly::eval(std::uint64_t x) const {
  std::uint64_t acc = 0;
  x %= p_;
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = (mulmod(acc, x, p_) + coeffs_[i]) % p_;
  return acc;
}

FpPoly FpPoly::operator-() const {
  std::vector<std::uint64_t> out = coeffs_;
  for (auto& c : out) c = (p_ - c) % p_;
  return FpPoly(p_, std::move(out));
}

FpPoly operator+(const FpPoly& a, const FpPoly& b) {
  std::vector<std::uint64_t> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (a.coeff(i) + b.coeff(i)) % a.p_;
  return FpPoly(a.p_, std::move(out));
}

FpPoly operator-(const FpPoly& a, const FpPoly& b) { return a + (-b); }

FpPoly operator*(const FpPoly& a, const FpPoly& b) {
  if (a.is_zero() || b.is_zero()) return FpPoly(a.p_, {});
  std::vector<std::uint64_t> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      out[i + j] = (out[i + j] + mulmod(a.coeffs_[i], b.coeffs_[j], a.p_)) % a.p_;
    }
  }
  return FpPoly(a.p_, std::move(out));
}

std::pair<FpPoly, FpPoly> FpPoly::divmod(const FpPoly& d) const {
  if (d.is_zero()) throw Error(ErrorCode::division_by_zero, "polynomial division by zero");
  if (degree() < d.degree()) return {FpPoly(p_, {}), *this};
  const std::uint64_t inv = mod_inverse(d.leading(), p_);
  const auto dd = static_cast<std::size_t>(d.degree());
  std::vector<std::uint64_t> rem = coeffs_;
  std::vector<std::uint64_t> quo(coeffs_.size() - dd);
  for (std::size_t i = coeffs_.size(); i-- > dd;) {
    const std::uint64_t c = mulmod(rem[i], inv, p_);
    if (c == 0) continue;
    quo[i - dd] = c;
    for (std::size_t j = 0; j <= dd; ++j) {
      rem[i - dd + j] = (rem[i - dd + j] + p_ - mulmod(c, d.coeffs_[j], p_)) % p_;
    }
  }
  rem.resize(dd);
  return {FpPoly(p_, std::move(quo)), FpPoly(p_, std::move(rem))};
}

std::string FpPoly::to_string(std::string_view var) const {
  std::vector<Integer> c(coeffs_.begin(), coeffs_.end());
  return IntPoly(std::move(c)).to_string(var);
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p) {
  // Extended Euclid on signed values.
  std::int64_t t = 0, new_t = 1;
  auto r = static_cast<std::int64_t>(p);
  auto new_r = static_cast<std::int64_t>(a % p);
  if (new_r == 0) throw Error(ErrorCode::division_by_zero, "zero has no inverse mod p");
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  if (r != 1) throw Error(ErrorCode::division_by_zero, "element not invertible");
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

FpPoly gcd(FpPoly a, FpPoly b) {
  while (!b.is_zero()) {
    FpPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

FpPoly powmod(FpPoly base, Integer exp, const FpPoly& modulus) {
  FpPoly result = FpPoly::constant(modulus.p(), 1) % modulus;
  base = base % modulus;
  while (exp > 0) {
    if ((exp & 1) != 0) result = (result * base) % modulus;
    base = (base * base) % modulus;
    exp >>= 1;
  }
  return result;
}

FpPoly frobenius_power(const FpPoly& g, std::int64_t k) {
  FpPoly h = FpPoly::x(g.p()) % g;
  for (std::int64_t i = 0; i < k; ++i) h = powmod(h, Integer(g.p()), g);
  return h;
}

bool is_irreducible(const FpPoly& g) {
  const std::int64_t n = g.degree();
  if (n < 1) return false;
  if (n == 1) return true;
  const FpPoly x = FpPoly::x(g.p());
  if (!((frobenius_power(g, n) - x) % g).is_zero()) return false;
  for (std::int64_t r : prime_divisors(n)) {
    if (gcd(g, frobenius_power(g, n / r) - x).degree() != 0) return false;
  }
  return true;
}

bool is_squarefree(const FpPoly& g) {
  if (g.is_zero()) return false;
  if (g.degree() <= 0) return true;
  return gcd(g, g.derivative()).degree() == 0;
}

FpPoly deterministic_irreducible(std::uint64_t p, std::int64_t f) {
  if (f < 1) throw Error(ErrorCode::invalid_degree, "extension degree must be >= 1");
  const Integer count = ipow(Integer(p), static_cast<std::uint64_t>(f));
  for (Integer idx = 0; idx < count; ++idx) {
    // The constant term is the most significant digit of idx.
    std::vector<std::uint64_t> c(static_cast<std::size_t>(f) + 1);
    Integer rest = idx;
    for (std::int64_t j = f - 1; j >= 0; --j) {
      c[static_cast<std::size_t>(j)] = static_cast<std::uint64_t>(rest % p);
      rest /= p;
    }
    c[static_cast<std::size_t>(f)] = 1;
    FpPoly g(p, std::move(c));
    if (is_irreducible(g)) return g;
  }
  throw Error(ErrorCode::internal, "no irreducible polynomial found");
}

DegreeProfile distinct_degree_profile(const FpPoly& g_in) {
  if (g_in.is_zero()) throw Error(ErrorCode::invalid_input, "zero polynomial");
  if (!is_squarefree(g_in)) throw Error(ErrorCode::not_squarefree, g_in.to_string() + " is not squarefree");
  DegreeProfile profile;
  FpPoly g = g_in.monic();
  const FpPoly x = FpPoly::x(g.p());
  FpPoly h = x % g;
  std::int64_t d = 0;
  while (g.degree() >= 2 * (d + 1)) {
    ++d;
    h = powmod(h, Integer(g.p()), g);
    const FpPoly factor = gcd(g, h - x);
    if (factor.degree() > 0) {
      profile[d] += factor.degree() / d;
      g = g / factor;
      h = h % g;
    }
  }
  if (g.degree() > 0) profile[g.degree()] += 1;
  return profile;
}

std::uint64_t root_count_gcd(const FpPoly& g, std::int64_t f) {
  if (g.is_zero()) throw Error(ErrorCode::invalid_input, "root count of the zero polynomial");
  if (g.degree() == 0) return 0;
  const FpPoly m = g.monic();
  return static_cast<std::uint64_t>(gcd(m, frobenius_power(m, f) - FpPoly::x(g.p())).degree());
}

std::uint64_t root_count_exhaustive(const FpPoly& g, std::int64_t f) {
  if (g.is_zero()) throw Error(ErrorCode::invalid_input, "root count of the zero polynomial");
  const std::uint64_t p = g.p();
  const FpPoly modulus = deterministic_irreducible(p, f);
  const auto q = static_cast<std::uint64_t>(ipow(Integer(p), static_cast<std::uint64_t>(f)));
  std::uint64_t count = 0;
  for (std::uint64_t idx = 0; idx < q; ++idx) {
    std::vector<std::uint64_t> digits(static_cast<std::size_t>(f));
    std::uint64_t rest = idx;
    for (auto& dgt : digits) {
      dgt = rest % p;
      rest /= p;
    }
    const FpPoly a(p, std::move(digits));
    FpPoly acc(p, {});
    for (std::size_t i = g.coeffs().size(); i-- > 0;) {
      acc = (acc * a + FpPoly::constant(p, g.coeffs()[i])) % modulus;
    }
    if (acc.is_zero()) ++count;
  }
  return count;
}

std::uint64_t root_count(const FpPoly& g, std::int64_t f) {
  const std::uint64_t by_gcd = root_count_gcd(g, f);
  if (ipow(Integer(g.p()), static_cast<std::uint64_t>(f)) <= 10000) {
    if (root_count_exhaustive(g, f) != by_gcd) {
      throw Error(ErrorCode::internal, "root count routes disagree for " + g.to_string());
    }
  }
  return by_gcd;
}

std::vector<std::pair<FpPoly, std::int64_t>> squarefree_decomposition(const FpPoly& g_in) {
  std::vector<std::pair<FpPoly, std::int64_t>> out;
  if (g_in.is_zero()) throw Error(ErrorCode::invalid_input, "zero polynomial");
  const std::uint64_t p = g_in.p();
  FpPoly g = g_in.monic();
  if (g.degree() <= 0) return out;
  const FpPoly one = FpPoly::constant(p, 1);
  FpPoly c = gcd(g, g.derivative());
  FpPoly w = g / c;
  std::int64_t i = 1;
  while (w.degree() > 0) {
    const FpPoly y = gcd(w, c);
    const FpPoly fac = w / y;
    if (fac.degree() > 0) out.emplace_back(fac.monic(), i);
    w = y;
    c = c / y;
    ++i;
  }
  if (c.degree() > 0) {
    // c is a p-th power; over F_p the p-th root just drops to every p-th coefficient.
    std::vector<std::uint64_t> root;
    for (std::size_t k = 0; k < c.coeffs().size(); k += p) root.push_back(c.coeffs()[k]);
    for (auto& [fac, mult] : squarefree_decomposition(FpPoly(p, std::move(root)))) {
      out.emplace_back(fac, mult * static_cast<std::int64_t>(p));
    }
  }
  return out;
}

std::vector<std::uint64_t> prime_field_roots(const FpPoly& g) {
  std::vector<std::uint64_t> roots;
  for (std::uint64_t r = 0; r < g.p(); ++r) {
    if (g.eval(r) == 0) roots.push_back(r);
  }
  return roots;
}

Integer hensel_lift(const IntPoly& f, std::uint64_t r, std::uint64_t p, std::int64_t n) {
  const FpPoly fbar = FpPoly::from_int(f, p);
  const FpPoly dbar = fbar.derivative();
  if (fbar.eval(r) != 0) throw Error(ErrorCode::invalid_input, "not a root mod p");
  const std::uint64_t deriv = dbar.eval(r);
  if (deriv == 0) throw Error(ErrorCode::invalid_input, "root is not simple");
  const Integer u = mod_inverse(deriv, p);
  Integer x = r;
  Integer pk = p;
  for (std::int64_t k = 1; k < n; ++k) {
    // f(x) = 0 mod p^k; correct the next digit.
    Integer t = (-(f.eval(x) / pk) * u) % p;
    if (t < 0) t += p;
    x += t * pk;
    pk *= p;
  }
  return x;
}

}  // namespace motivic::padic
