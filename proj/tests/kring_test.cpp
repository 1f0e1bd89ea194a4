#include <gtest/gtest.h>

#include <random>

#include "motivic/error.hpp"
#include "motivic/kring/effectivity.hpp"
#include "motivic/kring/expression.hpp"
#include "motivic/kring/motivic_element.hpp"
#include "motivic/padic/fp_poly.hpp"
#include "support/generators.hpp"
#include "support/naive_field.hpp"
#include "support/print.hpp"

namespace {

using motivic::Error;
using motivic::ErrorCode;
using motivic::Integer;
using motivic::IntPoly;
using motivic::Rational;
using namespace motivic::kring;
using testing_support::NaiveField;
using testing_support::random_certificate;
using testing_support::random_effective;
using testing_support::random_element;
using testing_support::random_rational;

using Status = EffectivityResult::Status;

MotivicElement L(std::int64_t k = 1) { return MotivicElement::lefschetz(k); }
MotivicElement A(std::int64_t a) { return MotivicElement::atom(a); }

template <typename F>
void expect_error(ErrorCode code, F&& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected " << motivic::to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

const std::vector<std::pair<std::uint64_t, std::int64_t>> kGrid = {{2, 1}, {2, 2}, {3, 1}, {3, 2}, {5, 1}};

// ---- atoms and ring structure ----

TEST(Atom, Examples) {
  EXPECT_EQ(A(1), MotivicElement(1));
  EXPECT_EQ(A(3) * A(1), A(3));
  expect_error(ErrorCode::invalid_degree, [] { (void)A(0); });
  for (std::uint64_t p : {2, 3, 5}) {
    EXPECT_EQ(A(2).count(p, 1), 0);
    EXPECT_EQ(A(2).count(p, 2), 2);
  }
  EXPECT_TRUE(A(2).has_certificate());
}

TEST(Atom, ProductRule) {
  EXPECT_EQ(A(2) * A(2), MotivicElement(2) * A(2));
  EXPECT_EQ(A(2) * A(3), A(6));
  EXPECT_EQ(A(4) * A(6), MotivicElement(2) * A(12));
}

// C_q(atom(a)) is the number of roots in F_q of an irreducible of degree a.
TEST(Atom, ProductMatchesRootCountingOracle) {
  for (std::uint64_t p : {2, 3}) {
    std::vector<NaiveField> fields;
    for (std::size_t f = 1; f <= 4; ++f) fields.emplace_back(p, f);
    for (std::int64_t a = 1; a <= 3; ++a) {
      for (std::int64_t b = 1; b <= 3; ++b) {
        const auto ga = NaiveField(p, static_cast<std::size_t>(a)).modulus;
        const auto gb = NaiveField(p, static_cast<std::size_t>(b)).modulus;
        const MotivicElement prod = A(a) * A(b);
        for (std::size_t f = 1; f <= 4; ++f) {
          const auto roots = fields[f - 1].count_roots(ga) * fields[f - 1].count_roots(gb);
          EXPECT_EQ(prod.count(p, static_cast<std::int64_t>(f)), Rational(roots))
              << "p=" << p << " a=" << a << " b=" << b << " f=" << f;
        }
      }
    }
  }
}

TEST(Ring, UnitAndZero) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    const MotivicElement x = random_element(rng);
    EXPECT_EQ(x * MotivicElement(1), x);
    EXPECT_EQ(x + MotivicElement(), x);
    EXPECT_TRUE((x - x).is_zero());
  }
}

TEST(Ring, LawsOnRandomTriples) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 500; ++i) {
    const MotivicElement x = random_element(rng);
    const MotivicElement y = random_element(rng);
    const MotivicElement z = random_element(rng);
    ASSERT_EQ((x + y) + z, x + (y + z));
    ASSERT_EQ((x * y) * z, x * (y * z));
    ASSERT_EQ(x + y, y + x);
    ASSERT_EQ(x * y, y * x);
    ASSERT_EQ(x * (y + z), x * y + x * z);
  }
}

TEST(Ring, DivisionRules) {
  EXPECT_EQ((L() - MotivicElement(1)) / (L() - MotivicElement(1)), MotivicElement(1));
  const MotivicElement inv = MotivicElement(1) / (L() + MotivicElement(1));
  EXPECT_EQ(inv * (L() + MotivicElement(1)), MotivicElement(1));
  expect_error(ErrorCode::division_by_zero, [] { (void)(L() / MotivicElement(0)); });
  expect_error(ErrorCode::unsupported_denominator, [] { (void)(L() / (L() - MotivicElement(2))); });
  expect_error(ErrorCode::unsupported_denominator, [] { (void)(L() / A(2)); });
}

TEST(Dimension, Examples) {
  EXPECT_EQ((L(2) - A(2)).dimension(), Dimension(2));
  EXPECT_EQ(L(-3).dimension(), Dimension(-3));
  EXPECT_TRUE(MotivicElement().dimension().is_neg_inf());
  EXPECT_LT(MotivicElement().dimension(), Dimension(-1000));
  EXPECT_EQ((MotivicElement(1) / (L() + MotivicElement(1))).dimension(), Dimension(-1));
  EXPECT_EQ((A(3) * L(4) + L(-1)).dimension(), Dimension(4));
}

// ---- weights ----

TEST(Weight, Examples) {
  for (std::int64_t i = -4; i <= 4; ++i) EXPECT_EQ(L(i).weight_sup_bound(), Integer(1)) << i;
  MotivicElement partial;
  for (int n = 0; n <= 25; ++n) {
    partial += L(-n);
    EXPECT_EQ(partial.weight_sup_bound(), Integer(1)) << n;
  }
  EXPECT_EQ(A(2).weight_sup_bound(), Integer(2));
  EXPECT_EQ((MotivicElement(1) / (MotivicElement(1) - L(-1))).weight_sup_bound(), Integer(1));
  EXPECT_EQ(MotivicElement().weight_sup_bound(), Integer(0));
  // Coefficients of 1/(L-1)^2 grow linearly.
  const MotivicElement sq = MotivicElement(1) / ((L() - MotivicElement(1)) * (L() - MotivicElement(1)));
  EXPECT_FALSE(sq.weight_sup_bound().has_value());
  EXPECT_EQ(sq.weight_bound_at(-20), Integer(9));
}

TEST(Weight, BoundAtMatchesSupOnLaurentPolynomials) {
  const MotivicElement x = L(2) * MotivicElement(3) - A(2) * L(-1) + A(3);
  EXPECT_EQ(x.weight_bound_at(4), Integer(3));
  EXPECT_EQ(x.weight_bound_at(0), Integer(3));
  EXPECT_EQ(x.weight_bound_at(-2), Integer(2));
  EXPECT_EQ(x.weight_bound_at(1), Integer(0));
  EXPECT_EQ(x.weight_sup_bound(), Integer(3));
}

TEST(Weight, Subadditive) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 300; ++i) {
    const MotivicElement x = random_element(rng, true);
    const MotivicElement y = random_element(rng, true);
    const Integer wx = *x.weight_sup_bound();
    const Integer wy = *y.weight_sup_bound();
    ASSERT_LE(*(x + y).weight_sup_bound(), wx + wy);
    ASSERT_LE(*(x - y).weight_sup_bound(), wx + wy);
  }
}

// The periodic scan must agree with direct series coefficients.
TEST(Weight, ExpansionAgreesWithSeriesCoefficients) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const LaurentRational c = random_rational(rng, true);
    const LaurentExpansion ex = c.expansion();
    for (std::int64_t j = -30; j <= 6; ++j) ASSERT_EQ(ex.coeff(j), c.coefficient(j)) << c.to_string() << " j=" << j;
  }
}

// ---- counting ----

TEST(Counting, Examples) {
  for (auto [p, f] : kGrid) EXPECT_EQ(L().count(p, f), Rational(motivic::ipow(Integer(p), f)));
  EXPECT_EQ((MotivicElement(1) / (MotivicElement(1) - L(-1))).count(3, 1), Rational(3, 2));
  EXPECT_EQ(A(2).count(3, 1), 0);
  EXPECT_EQ(A(2).count(3, 2), 2);
  expect_error(ErrorCode::invalid_input, [] { (void)L().count(4, 1); });
}

TEST(Counting, RingHomomorphismOnRandomPairs) {
  std::mt19937_64 rng(31337);
  for (auto [p, f] : kGrid) {
    for (int i = 0; i < 200; ++i) {
      const MotivicElement x = random_element(rng);
      const MotivicElement y = random_element(rng);
      const Rational cx = x.count(p, f);
      const Rational cy = y.count(p, f);
      ASSERT_EQ((x + y).count(p, f), cx + cy);
      ASSERT_EQ((x - y).count(p, f), cx - cy);
      ASSERT_EQ((x * y).count(p, f), cx * cy);
    }
  }
}

// Independent check of the quotient evaluation: C_q(x) * C_q(den) = C_q(num).
TEST(Counting, QuotientsAgreeWithClearedDenominators) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 100; ++i) {
    const LaurentRational c = random_rational(rng, false);
    const MotivicElement num(LaurentRational::polynomial(c.numerator()));
    MotivicElement den = L(c.l_power());
    for (auto [d, e] : c.cyclotomic_exponents()) {
      for (std::int64_t k = 0; k < e; ++k) den *= MotivicElement(LaurentRational::polynomial(motivic::cyclotomic(d)));
    }
    for (auto [p, f] : kGrid) ASSERT_EQ(MotivicElement(c).count(p, f) * den.count(p, f), num.count(p, f));
  }
}

// ---- zero-dimensional classes ----

motivic::padic::FpPoly fp(std::uint64_t p, std::vector<std::uint64_t> c) { return {p, std::move(c)}; }

TEST(ZeroDim, Examples) {
  EXPECT_EQ(class_of_zero_dim(fp(3, {1, 0, 1})), A(2));
  EXPECT_EQ(class_of_zero_dim(fp(5, {1, 0, 1})), MotivicElement(2) * A(1));
  EXPECT_EQ(class_of_zero_dim(fp(5, {0, 4, 0, 1})), MotivicElement(3));
  expect_error(ErrorCode::not_squarefree, [] { (void)class_of_zero_dim(fp(3, {0, 0, 1})); });
  EXPECT_TRUE(class_of_zero_dim(fp(3, {1, 0, 1})).has_certificate());
}

TEST(ZeroDim, CountingMatchesRootCountOracle) {
  std::mt19937_64 rng(4242);
  int checked = 0;
  for (std::uint64_t p : {2, 3, 5, 7}) {
    std::vector<NaiveField> fields;
    for (std::size_t f = 1; f <= 4; ++f) {
      if (std::pow(static_cast<double>(p), static_cast<double>(f)) <= 2401) fields.emplace_back(p, f);
    }
    std::uniform_int_distribution<std::uint64_t> coeff(0, p - 1);
    std::uniform_int_distribution<int> deg(1, 6);
    for (int trial = 0; trial < 15; ++trial) {
      std::vector<std::uint64_t> c(static_cast<std::size_t>(deg(rng)) + 1);
      for (auto& x : c) x = coeff(rng);
      c.back() = 1;
      const motivic::padic::FpPoly g(p, c);
      if (!motivic::padic::is_squarefree(g)) continue;
      const MotivicElement cls = class_of_zero_dim(g);
      for (const auto& field : fields) {
        ASSERT_EQ(cls.count(p, static_cast<std::int64_t>(field.f)), Rational(field.count_roots(c)))
            << g.to_string() << " p=" << p << " f=" << field.f;
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 100);
}

// ---- effectivity ----

TEST(Effectivity, Examples) {
  const auto gm = certify_effective(L() - MotivicElement(1));
  ASSERT_EQ(gm.status, Status::certified);
  ASSERT_EQ(gm.certificate->parts().size(), 1U);
  const auto& part = gm.certificate->parts()[0];
  EXPECT_EQ(part.atom, 1);
  ASSERT_EQ(part.factors.size(), 1U);
  EXPECT_EQ(part.factors[0], CertificateFactor::cyclotomic(1));
  EXPECT_EQ(part.shift, 0);
  EXPECT_EQ(part.multiplicity, 1);
  EXPECT_TRUE(part.is_finite());

  const auto neg = certify_effective(MotivicElement(-1));
  EXPECT_EQ(neg.status, Status::negative);
  ASSERT_TRUE(neg.witness.has_value());
  EXPECT_LT(MotivicElement(-1).count(neg.witness->first, neg.witness->second), 0);
}

TEST(Effectivity, InverseOfLPlusOneIsPeriodic) {
  const MotivicElement x = MotivicElement(1) / (L() + MotivicElement(1));
  const auto r = certify_effective(x);
  ASSERT_EQ(r.status, Status::certified);
  ASSERT_EQ(r.certificate->parts().size(), 1U);
  const auto& part = r.certificate->parts()[0];
  EXPECT_EQ(part.factors, std::vector<CertificateFactor>{CertificateFactor::cyclotomic(1)});
  EXPECT_EQ(part.shift, -2);
  EXPECT_EQ(part.periods, std::vector<std::int64_t>{2});
  // (L+1) * sum_{m=1}^N (L-1) L^{-2m} = 1 - L^{-2N}
  MotivicElement partial;
  for (int n = 1; n <= 30; ++n) {
    partial += (L() - MotivicElement(1)) * L(-2 * n);
    const MotivicElement err = (L() + MotivicElement(1)) * partial - MotivicElement(1);
    ASSERT_EQ(err, -L(-2 * n));
    ASSERT_EQ((x - partial).dimension(), Dimension(-2 * n - 1));
  }
}

TEST(Effectivity, RepeatedFactors) {
  const MotivicElement gm = L() - MotivicElement(1);
  for (const MotivicElement& x : {gm * gm, gm * gm * gm, MotivicElement(1) / (gm * gm), A(2) * gm * gm * L(-3)}) {
    const auto r = certify_effective(x);
    ASSERT_EQ(r.status, Status::certified) << x.to_string();
    EXPECT_EQ(r.certificate->value(), x);
  }
}

TEST(Effectivity, UnknownIsNotAnError) {
  // L - [2] is the class of A^1 minus a degree-2 point, but the greedy cannot see it.
  const auto r = certify_effective(L() - A(2));
  EXPECT_EQ(r.status, Status::unknown);
  expect_error(ErrorCode::uncertified_coefficient, [] { (void)certified(L() - A(2)); });
}

TEST(Effectivity, ComplementFactor) {
  CertificatePart part;
  part.factors.push_back(CertificateFactor::complement(1, A(2)));
  const auto cert = std::make_shared<const EffectivityCertificate>(std::vector<CertificatePart>{part});
  const MotivicElement x = (L() - A(2)).with_certificate(cert);
  EXPECT_EQ(certify_effective(x).status, Status::certified);
  expect_error(ErrorCode::internal, [&] { (void)(L() - A(3)).with_certificate(cert); });
}

TEST(Effectivity, DecompositionsSumBack) {
  std::mt19937_64 rng(11);
  int certified_count = 0;
  for (int i = 0; i < 300; ++i) {
    const MotivicElement x = random_effective(rng).without_certificate();
    const auto r = certify_effective(x);
    ASSERT_NE(r.status, Status::negative) << x.to_string();
    if (r.status == Status::certified) {
      ASSERT_EQ(r.certificate->value(), x);
      ++certified_count;
    }
  }
  EXPECT_GT(certified_count, 200);
}

TEST(Effectivity, CertificatesPropagate) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 100; ++i) {
    const MotivicElement x = random_effective(rng, 2);
    const MotivicElement y = random_effective(rng, 2);
    const MotivicElement s = x + y;
    const MotivicElement m = x * y;
    ASSERT_TRUE(s.has_certificate());
    ASSERT_TRUE(m.has_certificate());
    ASSERT_EQ(s.certificate()->value(), s);
    ASSERT_EQ(m.certificate()->value(), m);
    ASSERT_FALSE((x - y).has_certificate());
    ASSERT_FALSE((-x).has_certificate() && !x.is_zero());
  }
  EXPECT_EQ(L(3).times_lefschetz(-5).certificate()->value(), L(-2));
}

TEST(Order, Examples) {
  EXPECT_EQ(leq(MotivicElement(), L() - MotivicElement(1)), Truth::yes);
  EXPECT_EQ(leq(A(2) * L(-1), A(2)), Truth::yes);
  EXPECT_EQ(leq(MotivicElement(1), MotivicElement()), Truth::no);
  EXPECT_EQ(leq(L(-1), MotivicElement(1) / (L() - MotivicElement(1))), Truth::yes);
}

TEST(Order, SandwichBoundsDimension) {
  std::mt19937_64 rng(35);
  int decided = 0;
  for (int i = 0; i < 300; ++i) {
    const MotivicElement a = random_effective(rng).without_certificate();
    const MotivicElement x = a + random_effective(rng).without_certificate();
    const MotivicElement b = x + random_effective(rng).without_certificate();
    // a <= x <= b holds by construction.
    ASSERT_LE(x.dimension(), std::max(a.dimension(), b.dimension()));
    if (leq(a, x) == Truth::yes && leq(x, b) == Truth::yes) ++decided;
  }
  EXPECT_GT(decided, 150);
}

TEST(Order, Antisymmetry) {
  std::mt19937_64 rng(36);
  std::uniform_int_distribution<int> coin(0, 3);
  int both = 0;
  for (int i = 0; i < 200; ++i) {
    const MotivicElement x = random_element(rng, true);
    const MotivicElement d = coin(rng) == 0 ? MotivicElement() : random_effective(rng).without_certificate();
    const MotivicElement y = x + d;
    const Truth xy = leq(x, y);
    const Truth yx = leq(y, x);
    if (xy == Truth::yes && yx == Truth::yes) {
      ASSERT_EQ(x, y);
      ++both;
    }
    if (!d.is_zero()) ASSERT_NE(yx, Truth::yes) << d.to_string();
  }
  EXPECT_GT(both, 20);
}

// ---- expressions ----

TEST(Expression, Parses) {
  EXPECT_EQ(parse_ring_expression("[2]*[2]"), MotivicElement(2) * A(2));
  EXPECT_EQ(parse_ring_expression("1/(1-1/L)").count(3, 1), Rational(3, 2));
  EXPECT_EQ(parse_ring_expression("L^-2 + 3*L^2"), L(-2) + MotivicElement(3) * L(2));
  EXPECT_EQ(parse_ring_expression(" -(L - [3]) "), A(3) - L());
  EXPECT_EQ(parse_ring_expression("1 - [2]/(L+1)"), MotivicElement(1) - A(2) / (L() + MotivicElement(1)));
  EXPECT_TRUE(parse_ring_expression("L*(L-1) + [2]").has_certificate() == false);
  EXPECT_TRUE(parse_ring_expression("L*L + [2]*3").has_certificate());
}

TEST(Expression, Errors) {
  expect_error(ErrorCode::division_by_zero, [] { (void)parse_ring_expression("L/0"); });
  expect_error(ErrorCode::parse_error, [] { (void)parse_ring_expression("L+"); });
  expect_error(ErrorCode::parse_error, [] { (void)parse_ring_expression("(L"); });
  expect_error(ErrorCode::parse_error, [] { (void)parse_ring_expression("L x"); });
  expect_error(ErrorCode::parse_error, [] { (void)parse_ring_expression("[]"); });
  expect_error(ErrorCode::invalid_degree, [] { (void)parse_ring_expression("[0]"); });
  expect_error(ErrorCode::unsupported_denominator, [] { (void)parse_ring_expression("1/(L-2)"); });
}

// ---- canonical form ----

TEST(LaurentRational, ProductForm) {
  const auto inv = (LaurentRational(1) / LaurentRational::polynomial(IntPoly({1, 1}))).product_form();
  EXPECT_EQ(inv.numerator, IntPoly({-1, 1}));
  EXPECT_EQ(inv.l_power, 0);
  EXPECT_EQ(inv.cyclo, std::vector<std::int64_t>{2});

  const auto geo = (LaurentRational(1) / (LaurentRational(1) - LaurentRational::lefschetz_power(-1))).product_form();
  EXPECT_EQ(geo.numerator, IntPoly({0, 1}));
  EXPECT_EQ(geo.l_power, 0);
  EXPECT_EQ(geo.cyclo, std::vector<std::int64_t>{1});

  const auto mixed = LaurentRational::make(IntPoly({1}), 2, {{1, 2}, {3, 1}}).product_form();
  EXPECT_EQ(mixed.numerator, IntPoly({1}));
  EXPECT_EQ(mixed.l_power, 2);
  EXPECT_EQ(mixed.cyclo, (std::vector<std::int64_t>{1, 3}));
}

TEST(LaurentRational, InverseRoundTrip) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 200; ++i) {
    const LaurentRational c = random_rational(rng, false);
    if (!c.is_unit()) continue;
    ASSERT_EQ(c * c.inverse(), LaurentRational(1));
  }
  EXPECT_FALSE(LaurentRational::polynomial(IntPoly({-2, 1})).is_unit());
  EXPECT_TRUE(LaurentRational::polynomial(IntPoly({1, 1, 1})).is_unit());
}

}  // namespace
