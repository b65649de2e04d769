// Exercises the shared library through its C interface only.
#include <gtest/gtest.h>

#include <json.hpp>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "lptorsion/lptorsion.h"

using json = nlohmann::ordered_json;

namespace {

struct Str {
  char* p = nullptr;
  ~Str() { lpt_string_free(p); }
  json parse() const { return json::parse(p); }
  std::string str() const { return p; }
};

struct SpectrumDel {
  void operator()(lpt_spectrum* s) const { lpt_spectrum_free(s); }
};
struct GroupDel {
  void operator()(lpt_group* g) const { lpt_group_free(g); }
};
struct PinchedDel {
  void operator()(lpt_pinched* c) const { lpt_pinched_free(c); }
};
using Spectrum = std::unique_ptr<lpt_spectrum, SpectrumDel>;
using Group = std::unique_ptr<lpt_group, GroupDel>;
using Pinched = std::unique_ptr<lpt_pinched, PinchedDel>;

lpt_status make_spectrum(std::vector<const char*> w, Spectrum& out, int abelian = 1) {
  lpt_spectrum* s = nullptr;
  lpt_status st = lpt_spectrum_create(w.data(), w.size(), abelian, 0, &s);
  out.reset(s);
  return st;
}

Pinched make_pinched(int n, const char* delta) {
  lpt_pinched* c = nullptr;
  EXPECT_EQ(lpt_pinched_create(n, delta, 0, &c), LPT_OK) << lpt_last_error();
  return Pinched(c);
}

}  // namespace

TEST(CApi, StatusNames) {
  EXPECT_STREQ(lpt_status_name(LPT_OK), "ok");
  EXPECT_STREQ(lpt_status_name(LPT_ERR_NONABELIAN), "nonabelian");
  EXPECT_STREQ(lpt_status_name(LPT_ERR_NULL_ARGUMENT), "null_argument");
  EXPECT_STREQ(lpt_status_name(static_cast<lpt_status>(99)), "unknown");
  lpt_string_free(nullptr);
}

TEST(CApi, SpectrumLifecycle) {
  Spectrum s;
  ASSERT_EQ(make_spectrum({"2", "1", "1"}, s), LPT_OK);
  EXPECT_EQ(lpt_spectrum_rank(s.get()), 3);
  Str ext;
  ASSERT_EQ(lpt_exterior_json(s.get(), 2, &ext.p), LPT_OK);
  auto j = ext.parse();
  EXPECT_EQ(j["size"], 3);
  EXPECT_EQ(j["min"], "2");
  EXPECT_EQ(j["max"], "3");
  Str crit;
  ASSERT_EQ(lpt_critical_json(s.get(), 1, &crit.p), LPT_OK);
  EXPECT_EQ(crit.parse()["critical"], json::parse(R"(["2","4"])"));
}

TEST(CApi, ErrorCodesAndLastError) {
  Spectrum s;
  EXPECT_EQ(make_spectrum({"1", "3/"}, s), LPT_ERR_PARSE);
  EXPECT_EQ(s, nullptr);
  EXPECT_NE(std::string(lpt_last_error()), "");
  EXPECT_EQ(make_spectrum({"1", "-2"}, s), LPT_ERR_DOMAIN);
  EXPECT_EQ(make_spectrum({"sqrt(2)", "sqrt(3)"}, s), LPT_ERR_FIELD_MISMATCH);
  EXPECT_NE(std::string(lpt_last_error()).find("field"), std::string::npos);

  ASSERT_EQ(make_spectrum({"1", "2"}, s), LPT_OK);
  EXPECT_STREQ(lpt_last_error(), "");
  Str out;
  EXPECT_EQ(lpt_critical_json(s.get(), 7, &out.p), LPT_ERR_DEGREE);
  EXPECT_EQ(out.p, nullptr);
  EXPECT_EQ(lpt_contracting_json(s.get(), 1, "0", &out.p), LPT_ERR_DOMAIN);

  Spectrum na;
  ASSERT_EQ(make_spectrum({"1", "2", "3"}, na, 0), LPT_OK);
  EXPECT_EQ(lpt_nonvanishing_json(na.get(), 2, &out.p), LPT_ERR_NONABELIAN);

  lpt_group* g = nullptr;
  ASSERT_EQ(lpt_group_heintze(na.get(), &g), LPT_OK);
  Group ng(g);
  EXPECT_EQ(lpt_t_invariant(ng.get(), &out.p), LPT_ERR_NONABELIAN);

  Spectrum s123;
  ASSERT_EQ(make_spectrum({"1", "2", "3"}, s123), LPT_OK);
  ASSERT_EQ(lpt_group_heintze(s123.get(), &g), LPT_OK);
  Group g123(g);
  EXPECT_EQ(lpt_t_invariant(g123.get(), &out.p), LPT_ERR_NOT_DETERMINED);

  EXPECT_EQ(lpt_group_reference("CH3", &g), LPT_ERR_DOMAIN);
  EXPECT_EQ(lpt_lab_lemma_r_json("{not json", &out.p), LPT_ERR_PARSE);
  EXPECT_EQ(lpt_lab_lemma_r_json("[1]", &out.p), LPT_ERR_PARSE);
}

TEST(CApi, NullArguments) {
  char* out = nullptr;
  EXPECT_EQ(lpt_exterior_json(nullptr, 1, &out), LPT_ERR_NULL_ARGUMENT);
  EXPECT_EQ(lpt_spectrum_create(nullptr, 2, 1, 0, nullptr), LPT_ERR_NULL_ARGUMENT);
  EXPECT_EQ(lpt_t_invariant(nullptr, &out), LPT_ERR_NULL_ARGUMENT);
  EXPECT_EQ(lpt_theorem_b_json(4, 2, nullptr, &out), LPT_ERR_NULL_ARGUMENT);
  EXPECT_EQ(lpt_truncation_tradeoff(1, 1, 1, 1, nullptr, nullptr), LPT_ERR_NULL_ARGUMENT);
  EXPECT_EQ(lpt_spectrum_rank(nullptr), 0);
  EXPECT_EQ(out, nullptr);
  lpt_spectrum_free(nullptr);
  lpt_group_free(nullptr);
  lpt_pinched_free(nullptr);
}

TEST(CApi, LastErrorIsPerThread) {
  Spectrum s;
  ASSERT_EQ(make_spectrum({"1", "x"}, s), LPT_ERR_PARSE);
  std::string other;
  std::thread([&] { other = lpt_last_error(); }).join();
  EXPECT_EQ(other, "");
  EXPECT_NE(std::string(lpt_last_error()), "");
}

TEST(CApi, PinchedClass) {
  auto c = make_pinched(4, "-1/4");
  Str q1, q2;
  ASSERT_EQ(lpt_q_bound(c.get(), 1, &q1.p), LPT_OK);
  ASSERT_EQ(lpt_q_bound(c.get(), 2, &q2.p), LPT_OK);
  EXPECT_EQ(q1.str(), "2");
  EXPECT_EQ(q2.str(), "5/4");
  Str v;
  ASSERT_EQ(lpt_vanishing_json(c.get(), 2, &v.p), LPT_OK);
  EXPECT_EQ(v.parse()["intervals"]["torsion_zero"], json::parse(R"(["1","2","open"])"));
  Str e;
  ASSERT_EQ(lpt_eta_json(c.get(), 1, "3/2", &e.p), LPT_OK);
  EXPECT_EQ(e.parse()["degree"], 1);
  lpt_pinched* bad = nullptr;
  EXPECT_EQ(lpt_pinched_create(4, "1/2", 0, &bad), LPT_ERR_DOMAIN);
  EXPECT_EQ(bad, nullptr);
}

// Two routes to the same interval: the closed form for the two-valued family,
// and the generic nonvanishing window computed from its spectrum.
TEST(CApi, ClosedFormAgreesWithGenericWindow) {
  int compared = 0;
  for (int n = 3; n <= 9; ++n)
    for (const char* delta : {"-1/4", "-1/2", "-9/16", "-1/9"})
      for (int mu = 2; mu < n; ++mu) {
        lpt_spectrum* raw = nullptr;
        ASSERT_EQ(lpt_spectrum_two_valued(n, mu, delta, 0, &raw), LPT_OK) << lpt_last_error();
        Spectrum s(raw);
        Str closed, generic;
        lpt_status st = lpt_theorem_b_json(n, mu, delta, &closed.p);
        if (st != LPT_OK) {
          EXPECT_EQ(st, LPT_ERR_DEGREE);
          continue;
        }
        ASSERT_EQ(lpt_nonvanishing_json(s.get(), mu, &generic.p), LPT_OK);
        auto comps = generic.parse()["intervals"]["torsion_nonzero"];
        ASSERT_FALSE(comps.empty());
        EXPECT_EQ(closed.parse()["intervals"]["torsion_nonzero"], comps.front()) << n << " " << mu << " " << delta;
        ++compared;
      }
  EXPECT_GT(compared, 40);
}

TEST(CApi, Groups) {
  lpt_group* g = nullptr;
  ASSERT_EQ(lpt_group_real_hyperbolic(4, &g), LPT_OK);
  Group rh(g);
  EXPECT_EQ(lpt_group_dimension(rh.get()), 4);
  Str t;
  ASSERT_EQ(lpt_t_invariant(rh.get(), &t.p), LPT_OK);
  EXPECT_EQ(t.str(), "3");

  ASSERT_EQ(lpt_group_reference("CH2", &g), LPT_OK);
  Group ch(g);
  Str r;
  ASSERT_EQ(lpt_degree_report_json(ch.get(), 2, &r.p), LPT_OK);
  EXPECT_EQ(r.parse()["degree"], 2);

  Spectrum s;
  ASSERT_EQ(make_spectrum({"1", "1", "2"}, s), LPT_OK);
  ASSERT_EQ(lpt_group_heintze(s.get(), &g), LPT_OK);
  s.reset();  // the group keeps its own copy
  Group h(g);
  auto tight = make_pinched(4, "-3/10");
  Str qi;
  ASSERT_EQ(lpt_qi_check_json(h.get(), tight.get(), &qi.p), LPT_OK);
  EXPECT_TRUE(qi.parse()["obstructed"].get<bool>());
  auto loose = make_pinched(4, "-1/5");
  Str qi2;
  ASSERT_EQ(lpt_qi_check_json(h.get(), loose.get(), &qi2.p), LPT_OK);
  EXPECT_FALSE(qi2.parse()["obstructed"].get<bool>());
}

TEST(CApi, Tradeoff) {
  double s = 0, bound = 0;
  ASSERT_EQ(lpt_truncation_tradeoff(1, 1, 1, 1, &s, &bound), LPT_OK);
  EXPECT_NEAR(s, 0.0, 1e-12);
  EXPECT_NEAR(bound, 1.0, 1e-12);  // both terms equal 1 at s = 0
  EXPECT_EQ(lpt_truncation_tradeoff(-1, 1, 1, 1, &s, &bound), LPT_ERR_DOMAIN);
}

TEST(CApi, Labs) {
  Str k;
  ASSERT_EQ(lpt_lab_kunneth_json(R"({"eps": [0.01, 0.001, 0.0001], "annuli": 8})", &k.p), LPT_OK) << lpt_last_error();
  auto kj = k.parse();
  EXPECT_EQ(kj["divergence"].size(), 3u);
  Str r;
  ASSERT_EQ(lpt_lab_riccati_json(R"({"dims": [2], "count": 2, "t_end": 2})", &r.p), LPT_OK) << lpt_last_error();
  auto rj = r.parse();
  EXPECT_EQ(rj["fields"].size(), 2u);
  for (const auto& c : rj["checks"]) EXPECT_TRUE(c["pass"].get<bool>()) << c.dump();
  Str bad;
  EXPECT_EQ(lpt_lab_riccati_json(R"({"h": -1})", &bad.p), LPT_ERR_DOMAIN);
  EXPECT_EQ(lpt_lab_kunneth_json(R"({"eps": [0.5]})", &bad.p), LPT_ERR_DOMAIN);
}
