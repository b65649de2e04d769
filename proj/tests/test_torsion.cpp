#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "gen.hpp"
#include "lptorsion/error.hpp"
#include "lptorsion/torsion.hpp"

using lpt::ExponentInterval;
using lpt::ExponentSet;
using lpt::GroupModel;
using lpt::PinchedClass;
using lpt::Scalar;

namespace {

Scalar q(long n, long d = 1) { return Scalar::rational(n, d); }

lpt::Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const lpt::Error& e) {
    return e.code();
  }
  return lpt::Errc::internal;
}

lpt::DerivationSpectrum spec(std::initializer_list<Scalar> w, bool abelian = true) {
  return lpt::DerivationSpectrum(std::vector<Scalar>(w), abelian);
}

GroupModel g2_4() { return GroupModel::heintze(lpt::two_valued_spectrum(4, 2, q(1, 2))); }

const Scalar kDeltas[] = {q(-1, 4), q(-4, 9), q(-9, 16)};

ExponentInterval open(const Scalar& a, const Scalar& b) { return ExponentInterval::open(a, b); }

}  // namespace

TEST(Nonvanishing, Examples) {
  auto w = lpt::torsion_nonvanishing_interval(lpt::two_valued_spectrum(4, 2, q(1, 2)), 2);
  EXPECT_EQ(w.hull, open(2, 4));
  EXPECT_TRUE(w.punctures.empty());
  EXPECT_EQ(w.components, ExponentSet(open(2, 4)));
  // unnormalized weights give the same window
  EXPECT_EQ(lpt::torsion_nonvanishing_interval(spec({1, 1, 2}), 2).hull, open(2, 4));
  EXPECT_EQ(lpt::torsion_nonvanishing_interval(spec({1, 1, 2}), 3).hull, open(q(4, 3), 2));
  EXPECT_TRUE(lpt::torsion_nonvanishing_interval(spec({1, 1}), 2).hull.is_empty());
}

TEST(Nonvanishing, Preconditions) {
  EXPECT_EQ(code_of([] { (void)lpt::torsion_nonvanishing_interval(spec({1, 1, 2}, false), 2); }),
            lpt::Errc::nonabelian);
  EXPECT_EQ(code_of([] { (void)lpt::torsion_nonvanishing_interval(spec({1, 1, 2}), 1); }),
            lpt::Errc::degree_out_of_range);
  EXPECT_EQ(code_of([] { (void)lpt::torsion_nonvanishing_interval(spec({1, 1, 2}), 4); }),
            lpt::Errc::degree_out_of_range);
}

TEST(TwoValuedClosedForm, Examples) {
  EXPECT_EQ(lpt::theorem_b_interval(4, 2, q(-1, 4)), open(2, 4));
  EXPECT_EQ(lpt::theorem_b_interval(5, 2, q(-1, 4)), open(q(5, 2), 5));
  auto b = lpt::theorem_b_interval(4, 3, q(-1, 4));
  EXPECT_EQ(b.lower(), q(5, 4));
  EXPECT_EQ(b, lpt::torsion_nonvanishing_interval(spec({q(1, 2), 1, 1}), 3).leading());
  EXPECT_EQ(code_of([] { (void)lpt::theorem_b_interval(4, 4, q(-1, 4)); }), lpt::Errc::domain);
  EXPECT_EQ(code_of([] { (void)lpt::theorem_b_interval(4, 2, q(-1)); }), lpt::Errc::domain);
}

// The closed form is the first component of the nonvanishing set; the window
// itself can carry a critical puncture (e.g. n = 6, mu = 3).
TEST(TwoValuedClosedForm, DualPath) {
  int hull_differs = 0;
  for (const auto& d : kDeltas) {
    Scalar root = Scalar::sqrt(-d);
    for (int n = 3; n <= 10; ++n)
      for (int mu = 2; mu <= n - 1; ++mu) {
        auto closed = lpt::theorem_b_interval(n, mu, d);
        auto w = lpt::torsion_nonvanishing_interval(lpt::two_valued_spectrum(n, mu, root), mu);
        ASSERT_EQ(closed, w.leading()) << n << " " << mu;
        ASSERT_EQ(closed.lower(), lpt::q_bound(n, root, mu - 1));
        ASSERT_EQ(closed.lower(), w.hull.lower());
        if (!(closed == w.hull)) ++hull_differs;
      }
  }
  EXPECT_GT(hull_differs, 0);
  auto w = lpt::torsion_nonvanishing_interval(lpt::two_valued_spectrum(6, 3, q(1, 2)), 3);
  EXPECT_EQ(w.hull, open(q(7, 4), q(7, 2)));
  EXPECT_EQ(w.punctures, std::vector<Scalar>{q(7, 3)});
  EXPECT_EQ(lpt::theorem_b_interval(6, 3, q(-1, 4)), open(q(7, 4), q(7, 3)));
}

TEST(Nonvanishing, PuncturesMatchEnumeration) {
  gen::Rng rng(21);
  for (int rep = 0; rep < 300; ++rep) {
    int rank = static_cast<int>(rng.integer(2, 7));
    std::vector<Scalar> wts;
    for (int i = 0; i < rank; ++i) wts.push_back(q(rng.integer(1, 5), rng.integer(1, 2)));
    lpt::DerivationSpectrum s(wts);
    std::vector<Scalar> sorted = s.weights();
    for (int k = 2; k <= rank; ++k) {
      auto w = lpt::torsion_nonvanishing_interval(s, k);
      // oracle: every (k-1)-subset sum by bitmask
      std::set<std::pair<long, long>> seen;
      std::vector<Scalar> sums;
      for (unsigned m = 0; m < (1u << rank); ++m) {
        if (__builtin_popcount(m) != k - 1) continue;
        Scalar t(0);
        for (int i = 0; i < rank; ++i)
          if (m & (1u << i)) t += sorted[static_cast<size_t>(i)];
        if (std::find(sums.begin(), sums.end(), t) == sums.end()) sums.push_back(t);
      }
      std::vector<Scalar> inside;
      for (const auto& t : sums) {
        Scalar p = s.trace() / t;
        if (w.hull.contains(p)) inside.push_back(p);
      }
      std::sort(inside.begin(), inside.end());
      ASSERT_EQ(w.punctures, inside);
      for (const auto& p : inside) ASSERT_FALSE(w.components.contains(p));
      if (!w.punctures.empty()) ASSERT_GE(sums.size(), 3u);
      // the window is the interior of tr/W_{k-1} .. tr/w_{k-1}
      if (!w.hull.is_empty()) {
        ASSERT_EQ(w.hull.lower(), std::max(Scalar(1), s.trace() / s.W(k - 1)));
        ASSERT_EQ(*w.hull.upper(), s.trace() / s.w(k - 1));
      }
    }
  }
}

TEST(Hyperbolic, PointsAreSharpThresholds) {
  EXPECT_EQ(lpt::hyperbolic_torsion_points(4, 2), std::vector<Scalar>{3});
  EXPECT_EQ(lpt::hyperbolic_torsion_points(4, 3), std::vector<Scalar>{q(3, 2)});
  EXPECT_EQ(lpt::hyperbolic_torsion_points(3, 2), std::vector<Scalar>{2});
  for (int n = 3; n <= 11; ++n)
    for (int k = 2; k <= n - 1; ++k) {
      auto pts = lpt::hyperbolic_torsion_points(n, k);
      ASSERT_EQ(pts.size(), 1u);
      ASSERT_GT(pts[0], Scalar(1));
      ASSERT_EQ(pts[0], lpt::q_bound(PinchedClass(n, q(-1)), k - 1));
    }
  EXPECT_EQ(code_of([] { (void)lpt::hyperbolic_torsion_points(4, 4); }), lpt::Errc::degree_out_of_range);
}

TEST(TInvariant, Examples) {
  EXPECT_EQ(lpt::t_invariant(g2_4()), q(2));
  EXPECT_EQ(lpt::t_invariant(GroupModel::heintze(spec({1, 1, 2}))), q(2));
  EXPECT_EQ(lpt::t_invariant(GroupModel::real_hyperbolic(4)), q(3));
  EXPECT_EQ(lpt::t_invariant(GroupModel::reference("CH2")), q(4));
  EXPECT_EQ(lpt::t_invariant(GroupModel::heintze(spec({1, 1, 1}))), q(3));
  EXPECT_EQ(code_of([] { (void)lpt::t_invariant(GroupModel::heintze(spec({1, 2, 3}))); }),
            lpt::Errc::not_determined);
  EXPECT_EQ(code_of([] { (void)GroupModel::reference("HH2"); }), lpt::Errc::domain);
}

// T is the lower end of the degree-2 window, which is q(n, delta, 1)
TEST(TInvariant, AgreesWithWindow) {
  for (const auto& d : kDeltas)
    for (int n = 3; n <= 10; ++n) {
      auto s = lpt::two_valued_spectrum(n, 2, Scalar::sqrt(-d));
      ASSERT_EQ(lpt::t_invariant(GroupModel::heintze(s)), lpt::torsion_nonvanishing_interval(s, 2).hull.lower());
    }
}

TEST(DegreeReport, HeadlineGroup) {
  auto r = lpt::degree_report(g2_4(), 2);
  EXPECT_EQ(r.torsion_nonzero, ExponentSet(open(2, 4)));
  EXPECT_EQ(r.torsion_zero, ExponentSet(open(1, 2)));
  // 2 is the common endpoint, covered by neither theorem
  EXPECT_EQ(r.unknown, ExponentSet({ExponentInterval::point(2), ExponentInterval::make(4, true, std::nullopt, false)}));
  EXPECT_FALSE(r.approximate);
}

TEST(DegreeReport, RealHyperbolic) {
  auto r = lpt::degree_report(GroupModel::real_hyperbolic(4), 3);
  EXPECT_EQ(r.torsion_nonzero, ExponentSet(ExponentInterval::point(q(3, 2))));
  EXPECT_EQ(r.torsion_zero, ExponentSet({open(1, q(3, 2)), ExponentInterval::open(q(3, 2), std::nullopt)}));
  EXPECT_TRUE(r.unknown.is_empty());
}

TEST(DegreeReport, TopDegreeAndNonabelian) {
  auto r = lpt::degree_report(g2_4(), 4);
  EXPECT_TRUE(r.torsion_nonzero.is_empty());
  ASSERT_FALSE(r.notes.empty());
  EXPECT_NE(r.notes[0].find("not covered"), std::string::npos);
  auto nab = lpt::degree_report(GroupModel::heintze(spec({1, 1, 2}, false)), 2);
  EXPECT_TRUE(nab.torsion_nonzero.is_empty());
  EXPECT_FALSE(nab.notes.empty());
  EXPECT_EQ(nab.unknown, ExponentSet(ExponentInterval::whole()));
  auto ch2 = lpt::degree_report(GroupModel::reference("CH2"), 2);
  EXPECT_EQ(ch2.torsion_zero, ExponentSet(open(1, 4)));
  EXPECT_EQ(code_of([] { (void)lpt::degree_report(GroupModel::real_hyperbolic(4), 5); }),
            lpt::Errc::degree_out_of_range);
}

TEST(DegreeReport, NoContradictionAndExactComplement) {
  for (const auto& d : kDeltas)
    for (int n = 3; n <= 10; ++n)
      for (int mu = 2; mu <= n - 1; ++mu) {
        auto g = GroupModel::heintze(lpt::two_valued_spectrum(n, mu, Scalar::sqrt(-d)));
        for (int k = 2; k <= n; ++k) {
          auto r = lpt::degree_report(g, k);
          ASSERT_TRUE(intersect(r.torsion_zero, r.torsion_nonzero).is_empty());
          auto known = unite(unite(r.torsion_zero, r.full_zero), r.torsion_nonzero);
          ASSERT_TRUE(intersect(known, r.unknown).is_empty());
          ASSERT_EQ(unite(known, r.unknown), ExponentSet(ExponentInterval::whole()));
        }
      }
}

TEST(Obstruction, Examples) {
  auto o = lpt::qi_obstruction(g2_4(), PinchedClass(4, Scalar::approx(-0.3)));
  ASSERT_TRUE(o.obstructed);
  EXPECT_EQ(o.degree, 2);
  EXPECT_TRUE(o.approximate);
  ASSERT_EQ(o.witness.parts().size(), 1u);
  EXPECT_NEAR(o.witness.parts()[0].lower().to_double(), 2.0, 1e-12);
  EXPECT_NEAR(o.witness.parts()[0].upper()->to_double(), 1 + 2 * std::sqrt(0.3), 1e-12);

  EXPECT_FALSE(lpt::qi_obstruction(g2_4(), PinchedClass(4, q(-1, 4))).obstructed);
  EXPECT_FALSE(lpt::qi_obstruction(GroupModel::real_hyperbolic(4), PinchedClass(4, q(-1, 2))).obstructed);

  // exact witness with an irrational endpoint
  auto exact = lpt::qi_obstruction(g2_4(), PinchedClass(4, q(-3, 10)));
  ASSERT_TRUE(exact.obstructed);
  EXPECT_FALSE(exact.approximate);
  EXPECT_EQ(exact.witness, ExponentSet(open(2, Scalar(1) + Scalar(2) * Scalar::sqrt(q(3, 10)))));
}

TEST(Obstruction, OnlyBetterPinchingIsObstructed) {
  // G_{2,n,delta} against delta' < delta is obstructed, delta' >= delta is not
  for (int n = 3; n <= 8; ++n)
    for (long num = 1; num <= 9; ++num) {
      Scalar d = q(-num, 10);
      auto g = GroupModel::heintze(lpt::two_valued_spectrum(n, 2, q(1, 2)));
      bool obstructed = lpt::qi_obstruction(g, PinchedClass(n, d)).obstructed;
      ASSERT_EQ(obstructed, d < q(-1, 4)) << n << " " << d.to_string();
    }
  auto o = lpt::qi_obstruction(g2_4(), PinchedClass(5, q(-1, 2)));
  EXPECT_FALSE(o.obstructed);
  EXPECT_FALSE(o.notes.empty());
}

TEST(Tradeoff, Examples) {
  auto t = lpt::truncation_tradeoff(1.5, 1.5, 7.0, 7.0);
  EXPECT_NEAR(t.s, 0.0, 1e-15);
  EXPECT_NEAR(t.bound, 7.0, 1e-12);
  t = lpt::truncation_tradeoff(1, 1, std::exp(2.0), 1);
  EXPECT_NEAR(t.s, 1.0, 1e-14);
  EXPECT_NEAR(t.bound, std::exp(1.0), 1e-14);
  EXPECT_NEAR(lpt::truncation_tradeoff(2, 1, 8, 1).bound, 4.0, 1e-12);
  EXPECT_EQ(code_of([] { (void)lpt::truncation_tradeoff(0, 1, 1, 1); }), lpt::Errc::domain);
}

// s minimizes e^{mu s} n + e^{-eta s} m; golden-section search as the oracle
TEST(Tradeoff, MinimizesTheSum) {
  gen::Rng rng(31);
  for (int rep = 0; rep < 200; ++rep) {
    double mu = rng.real(0.1, 3), eta = rng.real(0.1, 3), m = std::exp(rng.real(-5, 5)), n = std::exp(rng.real(-5, 5));
    auto f = [&](double s) { return std::exp(mu * s) * n + std::exp(-eta * s) * m; };
    double a = -40, b = 40;
    const double g = (std::sqrt(5.0) - 1) / 2;
    for (int i = 0; i < 200; ++i) {
      double c = b - g * (b - a), d = a + g * (b - a);
      (f(c) < f(d) ? b : a) = (f(c) < f(d) ? d : c);
    }
    auto t = lpt::truncation_tradeoff(mu, eta, m, n);
    ASSERT_NEAR(t.s, (a + b) / 2, 1e-6);
    // the minimum is a fixed multiple of the bound
    double ratio = f(t.s) / t.bound;
    double expected = std::pow(eta / mu, mu / (mu + eta)) + std::pow(mu / eta, eta / (mu + eta));
    ASSERT_NEAR(ratio, expected, 1e-9 * expected);
  }
}
