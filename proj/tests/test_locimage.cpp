#include <algorithm>
#include <map>

#include <gtest/gtest.h>

#include "repvar/locimage.hpp"

using namespace repvar;

namespace {

RatPoly P(std::initializer_list<long> dense) {
  std::vector<Rat> c;
  for (long v : dense) c.emplace_back(v);
  return poly_from_coeffs(c);
}

RatFn over_one_minus_t2(const RatPoly& p) { return RatFn(p, P({1, 0, -1})); }

std::vector<ImageElement> sorted(std::vector<ImageElement> v) {
  sort_canonical(v);
  return v;
}

// Predicates written out directly: Plus k <= l; Minus k + l >= n (+1 if singular).
bool admitted(unsigned n, Variety v, Sector s, unsigned k, unsigned l) {
  if (s == Sector::Plus) return k <= l;
  return k + l >= n + (v == Variety::Singular ? 1 : 0);
}

// Rank over Q by Gaussian elimination.
std::size_t rank_over_q(std::vector<std::vector<Rat>> m) {
  std::size_t rank = 0;
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const Rat f = m[r][c] / m[rank][c];
      for (std::size_t cc = c; cc < cols; ++cc) m[r][cc] -= f * m[rank][cc];
    }
    ++rank;
  }
  return rank;
}

using Product = std::map<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, Rat>>;

Product products_of(const CupTable& t) {
  Product out;
  for (const auto& e : t.entries) out[{e.i, e.j}] = {e.k, e.coeff};
  return out;
}

}  // namespace

TEST(ImageSpec, MinimalC1Power) {
  const ImageSpec plus{3, Variety::Regular, Sector::Plus};
  const ImageSpec minus_r{3, Variety::Regular, Sector::Minus};
  const ImageSpec minus_s{3, Variety::Singular, Sector::Minus};
  for (unsigned k = 0; k <= 3; ++k) {
    EXPECT_EQ(plus.min_c1_power(k), k);
    EXPECT_EQ(minus_r.min_c1_power(k), 3 - k);
    EXPECT_EQ(minus_s.min_c1_power(k), 4 - k);
  }
  EXPECT_FALSE(plus.admits(4, 10));
}

TEST(ImageBasis, Examples) {
  EXPECT_EQ(image_basis({1, Variety::Regular, Sector::Minus}, 4),
            sorted({{0, 1}, {0, 2}, {1, 0}, {1, 1}}));
  for (Variety v : {Variety::Regular, Variety::Singular})
    EXPECT_EQ(image_basis({1, v, Sector::Plus}, 3), sorted({{0, 0}, {0, 1}, {1, 1}}));
  EXPECT_EQ(image_basis({0, Variety::Singular, Sector::Minus}, 4), sorted({{0, 1}, {0, 2}}));
}

TEST(ImageBasis, MatchesDirectPredicateEnumeration) {
  for (unsigned n = 0; n <= 6; ++n)
    for (Variety v : {Variety::Regular, Variety::Singular})
      for (Sector s : {Sector::Plus, Sector::Minus}) {
        const unsigned bound = 2 * n + 6;
        std::vector<ImageElement> expected;
        for (Mask m = 0; m < (Mask{1} << n); ++m)
          for (unsigned l = 0; popcount(m) + 2 * l <= bound; ++l)
            if (admitted(n, v, s, popcount(m), l)) expected.push_back({m, l});
        EXPECT_EQ(image_basis({n, v, s}, bound), sorted(expected));
      }
}

TEST(ImageHilbert, Examples) {
  EXPECT_EQ(image_hilbert_series({1, Variety::Regular, Sector::Plus}), over_one_minus_t2(P({1, 0, 0, 1})));
  EXPECT_EQ(image_hilbert_series({1, Variety::Singular, Sector::Plus}), over_one_minus_t2(P({1, 0, 0, 1})));
  EXPECT_EQ(image_hilbert_series({1, Variety::Regular, Sector::Minus}), over_one_minus_t2(P({0, 1, 1})));
  EXPECT_EQ(image_hilbert_series({0, Variety::Singular, Sector::Minus}), over_one_minus_t2(P({0, 0, 1})));
}

TEST(ImageHilbert, ClosedFormsAndCoefficientCounts) {
  for (unsigned n = 0; n <= 8; ++n)
    for (Variety v : {Variety::Regular, Variety::Singular})
      for (Sector s : {Sector::Plus, Sector::Minus}) {
        const ImageSpec spec{n, v, s};
        const auto series = image_hilbert_series(spec);
        EXPECT_EQ(series, image_hilbert_closed_form(spec));
        const unsigned bound = 2 * n + 6;
        const auto coeffs = series_expand(series, bound);
        std::vector<Rat> counts(bound + 1, Rat(0));
        for (const auto& e : image_basis(spec, bound)) counts[e.total_degree()] += 1;
        EXPECT_EQ(coeffs, counts) << "n=" << n;
      }
}

TEST(Kunneth, CombinedPredicatesMatchExamples) {
  for (unsigned n = 1; n <= 7; ++n) {
    const auto reg = kunneth_combine(image_module(n - 1, Variety::Regular), image_module(1, Variety::Regular));
    const auto sing = kunneth_combine(image_module(n, Variety::Regular), image_module(0, Variety::Singular));
    EXPECT_EQ(reg.generators, n);
    EXPECT_EQ(sing.generators, n);
    for (Mask m = 0; m < (Mask{1} << n); ++m) {
      const unsigned k = popcount(m);
      for (unsigned l = 0; l <= 2 * n + 2; ++l) {
        EXPECT_EQ(reg.contains(Sector::Plus, m, l), k <= l);
        EXPECT_EQ(reg.contains(Sector::Minus, m, l), k + l >= n);
        EXPECT_EQ(sing.contains(Sector::Minus, m, l), k + l >= n + 1);
        EXPECT_EQ(sing.contains(Sector::Plus, m, l), k <= l);
      }
    }
  }
}

// Pairing the Plus part of one factor with the Minus part of the other does
// not reproduce the image: the combination must be sector by sector.
TEST(Kunneth, MixedSectorCombinationIsRejected) {
  const unsigned n = 3;
  const auto a = image_module(n - 1, Variety::Regular);
  const auto b = image_module(1, Variety::Regular);
  ImageModule mixed;
  mixed.generators = n;
  mixed.min_c1_power = [a, b](Sector s, Mask subset) {
    const Sector other = s == Sector::Plus ? Sector::Minus : Sector::Plus;
    return a.min_c1_power(s, subset & 3) + b.min_c1_power(other, subset >> 2);
  };
  EXPECT_FALSE(module_hilbert_series(mixed, Sector::Minus) ==
               image_hilbert_series({n, Variety::Regular, Sector::Minus}));
}

TEST(Factorization, SpecExamplesPass) {
  for (unsigned n : {1U, 2U, 5U})
    for (Variety v : {Variety::Regular, Variety::Singular}) {
      const auto r = factorization_check(n, v);
      EXPECT_TRUE(r.pass) << r.first_discrepancy.value_or("");
      EXPECT_EQ(r.degree_bound, 2 * n + 6);
      EXPECT_GT(r.elements_checked, 0U);
    }
  EXPECT_TRUE(factorization_check(2, Variety::Regular, 10).pass);
  EXPECT_THROW(factorization_check(0, Variety::Regular), UsageError);
}

TEST(OrdinaryBasis, Examples) {
  const auto r0 = ordinary_basis(0, Variety::Regular);
  ASSERT_EQ(r0.size(), 2U);
  EXPECT_EQ(r0[0], (OrdClass{Sector::Plus, 0, 0}));
  EXPECT_EQ(r0[1], (OrdClass{Sector::Minus, 0, 0}));

  const auto s0 = ordinary_basis(0, Variety::Singular);
  ASSERT_EQ(s0.size(), 2U);
  EXPECT_EQ(s0[0].bidegree(), std::make_pair(0U, 0U));
  EXPECT_EQ(s0[1].bidegree(), std::make_pair(0U, 2U));

  std::vector<std::pair<unsigned, unsigned>> bideg;
  for (const auto& c : ordinary_basis(1, Variety::Regular)) bideg.push_back(c.bidegree());
  EXPECT_EQ(bideg, (std::vector<std::pair<unsigned, unsigned>>{{0, 0}, {1, 2}, {0, 2}, {1, 0}}));
}

TEST(OrdinaryBasis, SizeIsTwoToTheNPlusOne) {
  for (unsigned n = 0; n <= 12; ++n)
    for (Variety v : {Variety::Regular, Variety::Singular})
      EXPECT_EQ(ordinary_basis(n, v).size(), std::size_t{2} << n);
}

TEST(CupProduct, Examples) {
  const OrdClass m1{Sector::Minus, 0b01, 1}, m2{Sector::Minus, 0b10, 1};
  auto r = cup_product(m1, m2, 2, Variety::Regular);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->cls, (OrdClass{Sector::Plus, 0b11, 2}));
  EXPECT_EQ(r->coeff, 1);
  EXPECT_EQ(r->cls.degree(), 6U);

  const OrdClass s1{Sector::Minus, 0b01, 2}, s2{Sector::Minus, 0b10, 2};
  EXPECT_FALSE(cup_product(s1, s2, 2, Variety::Singular));

  for (unsigned n = 0; n <= 4; ++n)
    for (Variety v : {Variety::Regular, Variety::Singular})
      for (const auto& c : ordinary_basis(n, v)) {
        auto u = cup_product({Sector::Plus, 0, 0}, c, n, v);
        ASSERT_TRUE(u);
        EXPECT_EQ(u->cls, c);
        EXPECT_EQ(u->coeff, 1);
      }
}

TEST(CupProduct, GradedCommutativityExhaustive) {
  for (unsigned n = 0; n <= 5; ++n)
    for (Variety v : {Variety::Regular, Variety::Singular}) {
      const auto t = cup_table(n, v);
      const auto prod = products_of(t);
      for (std::size_t i = 0; i < t.basis.size(); ++i)
        for (std::size_t j = 0; j < t.basis.size(); ++j) {
          const auto ij = prod.find({i, j}), ji = prod.find({j, i});
          ASSERT_EQ(ij == prod.end(), ji == prod.end());
          if (ij == prod.end()) continue;
          EXPECT_EQ(ij->second.first, ji->second.first);
          const int sign = (t.basis[i].degree() * t.basis[j].degree()) % 2 ? -1 : 1;
          EXPECT_EQ(ij->second.second, sign * ji->second.second);
        }
    }
}

TEST(CupProduct, AssociativityExhaustive) {
  for (unsigned n = 0; n <= 4; ++n)
    for (Variety v : {Variety::Regular, Variety::Singular}) {
      const auto t = cup_table(n, v);
      const auto prod = products_of(t);
      auto mul = [&](std::size_t a, std::size_t b) -> std::optional<std::pair<std::size_t, Rat>> {
        auto it = prod.find({a, b});
        if (it == prod.end()) return std::nullopt;
        return it->second;
      };
      const std::size_t N = t.basis.size();
      for (std::size_t a = 0; a < N; ++a)
        for (std::size_t b = 0; b < N; ++b)
          for (std::size_t c = 0; c < N; ++c) {
            std::optional<std::pair<std::size_t, Rat>> left, right;
            if (auto ab = mul(a, b))
              if (auto abc = mul(ab->first, c)) left = std::make_pair(abc->first, ab->second * abc->second);
            if (auto bc = mul(b, c))
              if (auto abc = mul(a, bc->first)) right = std::make_pair(abc->first, bc->second * abc->second);
            ASSERT_EQ(left.has_value(), right.has_value()) << "n=" << n;
            if (left) { EXPECT_EQ(*left, *right); }
          }
    }
}

TEST(CupProduct, DegreesAddAndProductsStayInBasis) {
  for (unsigned n = 0; n <= 5; ++n)
    for (Variety v : {Variety::Regular, Variety::Singular}) {
      const auto t = cup_table(n, v);
      for (const auto& e : t.entries) {
        EXPECT_EQ(t.basis[e.k].degree(), t.basis[e.i].degree() + t.basis[e.j].degree());
        EXPECT_TRUE(e.coeff == 1 || e.coeff == -1);
      }
    }
}

TEST(CupProduct, RegularMinusPairingIsPerfect) {
  for (unsigned n = 0; n <= 6; ++n) {
    const auto t = cup_table(n, Variety::Regular);
    const std::size_t half = t.basis.size() / 2;
    const std::size_t top = full_mask(n);  // Plus block index of a_{1..n}
    EXPECT_EQ(t.basis[top].degree(), 3 * n);
    std::vector<std::vector<Rat>> pairing(half, std::vector<Rat>(half, Rat(0)));
    for (const auto& e : t.entries)
      if (e.i >= half && e.j >= half) {
        ASSERT_EQ(e.k, top);
        pairing[e.i - half][e.j - half] = e.coeff;
      }
    EXPECT_EQ(rank_over_q(pairing), half) << "n=" << n;
  }
}

TEST(CupProduct, RegularFullPoincarePairingIsPerfect) {
  for (unsigned n = 0; n <= 5; ++n) {
    const auto t = cup_table(n, Variety::Regular);
    const std::size_t N = t.basis.size(), top = full_mask(n);
    std::vector<std::vector<Rat>> pairing(N, std::vector<Rat>(N, Rat(0)));
    for (const auto& e : t.entries)
      if (e.k == top) pairing[e.i][e.j] = e.coeff;
    EXPECT_EQ(rank_over_q(pairing), N) << "n=" << n;
  }
}

TEST(CupProduct, PlusTimesMinusVanishesInPositiveDegree) {
  for (unsigned n = 0; n <= 6; ++n)
    for (Variety v : {Variety::Regular, Variety::Singular}) {
      const auto t = cup_table(n, v);
      for (const auto& e : t.entries) {
        const auto& a = t.basis[e.i];
        const auto& b = t.basis[e.j];
        if (a.sector != b.sector) { EXPECT_TRUE((a.sector == Sector::Plus ? a : b).subset == 0); }
      }
    }
}

TEST(CupProduct, PlusSubringIsExteriorOnDegreeThreeGenerators) {
  for (unsigned n = 0; n <= 6; ++n)
    for (Variety v : {Variety::Regular, Variety::Singular}) {
      const auto basis = ordinary_basis(n, v);
      for (unsigned i = 1; i <= n; ++i) EXPECT_EQ(basis[Mask{1} << (i - 1)].degree(), 3U);
      for (Mask s = 0; s <= full_mask(n); ++s) {
        for (Mask u = 0; u <= full_mask(n); ++u) {
          auto r = cup_product(basis[s], basis[u], n, v);
          auto ext = ext_mul({s, 1}, {u, 1});
          ASSERT_EQ(r.has_value(), ext.has_value());
          if (!r) continue;
          EXPECT_EQ(r->cls, basis[ext->subset]);
          EXPECT_EQ(r->coeff, ext->sign);
        }
        if (s == full_mask(n)) break;
      }
    }
}

TEST(CupProduct, SingularMinusProductsVanish) {
  for (unsigned n = 0; n <= 6; ++n) {
    const auto t = cup_table(n, Variety::Singular);
    const std::size_t half = t.basis.size() / 2;
    for (const auto& e : t.entries) EXPECT_FALSE(e.i >= half && e.j >= half);
  }
}

TEST(CupTable, JsonShape) {
  const auto j = to_json(cup_table(1, Variety::Regular));
  EXPECT_EQ(j.at("n"), 1);
  EXPECT_EQ(j.at("basis").size(), 4U);
  for (const auto& row : j.at("table")) EXPECT_EQ(row.size(), 4U);
}
