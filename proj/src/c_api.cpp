#include "lptorsion/lptorsion.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>

#include "lptorsion/error.hpp"
#include "lptorsion/report_json.hpp"

struct lpt_spectrum {
  lpt::DerivationSpectrum spec;
};
struct lpt_group {
  lpt::GroupModel model;
};
struct lpt_pinched {
  lpt::PinchedClass cls;
};

namespace {

thread_local std::string last_error;

lpt_status fail(lpt_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

template <class F>
lpt_status guarded(F&& body) {
  last_error.clear();
  try {
    body();
    return LPT_OK;
  } catch (const lpt::Error& e) {
    return fail(static_cast<lpt_status>(static_cast<int>(e.code())), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(LPT_ERR_PARSE, std::string("bad JSON: ") + e.what());
  } catch (const std::bad_alloc&) {
    return fail(LPT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(LPT_ERR_INTERNAL, e.what());
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void need(const void* p, const char* what) {
  if (!p) throw lpt::Error(lpt::Errc::domain, std::string("null argument: ") + what);
}

lpt::Scalar scalar_arg(const char* text, bool approximate = false) {
  need(text, "scalar");
  lpt::Scalar x = lpt::parse_scalar(text);
  return approximate ? x.to_approx() : x;
}

lpt::json parse_config(const char* config) {
  if (!config || !*config) return lpt::json::object();
  auto j = lpt::json::parse(config);
  if (!j.is_object()) throw lpt::Error(lpt::Errc::parse, "lab config must be a JSON object");
  return j;
}

// p may be given as a number or as a scalar string
double real_field(const lpt::json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j[key];
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return lpt::parse_scalar(v.get<std::string>()).to_double();
  throw lpt::Error(lpt::Errc::parse, std::string("'") + key + "' must be a number");
}

std::vector<int> int_list(const lpt::json& j, const char* key, std::vector<int> fallback) {
  if (!j.contains(key)) return fallback;
  return j[key].get<std::vector<int>>();
}

void emit(const lpt::json& j, char** out) {
  need(out, "out");
  *out = dup(j.dump());
}

}  // namespace

extern "C" {

const char* lpt_status_name(lpt_status s) {
  switch (s) {
    case LPT_OK:
      return "ok";
    case LPT_ERR_NULL_ARGUMENT:
      return "null_argument";
    default:
      if (s >= LPT_ERR_PARSE && s <= LPT_ERR_INTERNAL) return lpt::errc_name(static_cast<lpt::Errc>(s));
      return "unknown";
  }
}

const char* lpt_last_error(void) { return last_error.c_str(); }

void lpt_string_free(char* s) { std::free(s); }

lpt_status lpt_spectrum_create(const char* const* weights, size_t count, int abelian, int approximate,
                               lpt_spectrum** out) {
  if (!out || (!weights && count)) return fail(LPT_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] {
    std::vector<lpt::Scalar> w;
    for (size_t i = 0; i < count; ++i) w.push_back(scalar_arg(weights[i], approximate));
    *out = new lpt_spectrum{lpt::DerivationSpectrum(std::move(w), abelian != 0)};
  });
}

lpt_status lpt_spectrum_two_valued(int n, int mu, const char* delta, int approximate, lpt_spectrum** out) {
  if (!out || !delta) return fail(LPT_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] {
    lpt::Scalar d = scalar_arg(delta, approximate);
    if (!(d < lpt::Scalar(0)) || d < lpt::Scalar(-1)) throw lpt::Error(lpt::Errc::domain, "delta must lie in [-1, 0)");
    *out = new lpt_spectrum{lpt::two_valued_spectrum(n, mu, lpt::Scalar::sqrt(-d))};
  });
}

void lpt_spectrum_free(lpt_spectrum* s) { delete s; }

int lpt_spectrum_rank(const lpt_spectrum* s) { return s ? s->spec.rank() : 0; }

lpt_status lpt_group_heintze(const lpt_spectrum* s, lpt_group** out) {
  if (!s || !out) return fail(LPT_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] { *out = new lpt_group{lpt::GroupModel::heintze(s->spec)}; });
}

lpt_status lpt_group_real_hyperbolic(int n, lpt_group** out) {
  if (!out) return fail(LPT_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] { *out = new lpt_group{lpt::GroupModel::real_hyperbolic(n)}; });
}

lpt_status lpt_group_reference(const char* name, lpt_group** out) {
  if (!name || !out) return fail(LPT_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] { *out = new lpt_group{lpt::GroupModel::reference(name)}; });
}

void lpt_group_free(lpt_group* g) { delete g; }

int lpt_group_dimension(const lpt_group* g) { return g ? g->model.n() : 0; }

lpt_status lpt_pinched_create(int n, const char* delta, int approximate, lpt_pinched** out) {
  if (!delta || !out) return fail(LPT_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] { *out = new lpt_pinched{lpt::PinchedClass(n, scalar_arg(delta, approximate))}; });
}

void lpt_pinched_free(lpt_pinched* c) { delete c; }

lpt_status lpt_exterior_json(const lpt_spectrum* s, int k, char** out) {
  if (!s) return fail(LPT_ERR_NULL_ARGUMENT, "null spectrum");
  return guarded([&] {
    if (k < 0 || k > s->spec.rank())
      throw lpt::Error(lpt::Errc::degree_out_of_range, "degree must lie in 0..n-1");
    lpt::json j = lpt::to_json(lpt::exterior_spectrum(s->spec, k));
    j["w"] = lpt::to_json(s->spec.w(k));
    j["W"] = lpt::to_json(s->spec.W(k));
    j["trace"] = lpt::to_json(s->spec.trace());
    j["approximate"] = s->spec.approximate();
    emit(j, out);
  });
}

lpt_status lpt_critical_json(const lpt_spectrum* s, int k, char** out) {
  if (!s) return fail(LPT_ERR_NULL_ARGUMENT, "null spectrum");
  return guarded([&] {
    emit({{"degree", k},
          {"critical", lpt::to_json(lpt::critical_exponents(s->spec, k))},
          {"approximate", s->spec.approximate()}},
         out);
  });
}

lpt_status lpt_contracting_json(const lpt_spectrum* s, int k, const char* p, char** out) {
  if (!s || !p) return fail(LPT_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] {
    lpt::Scalar pv = scalar_arg(p, s->spec.approximate());
    auto dims = lpt::grading_dims(s->spec, k, pv);
    emit({{"degree", k},
          {"p", lpt::to_json(pv)},
          {"threshold", lpt::to_json(s->spec.trace() / pv)},
          {"status", lpt::contraction_name(lpt::is_contracting(s->spec, k, pv))},
          {"grading", {{"plus", dims.plus}, {"zero", dims.zero}, {"minus", dims.minus}}},
          {"approximate", s->spec.approximate() || pv.exact() == false}},
         out);
  });
}

lpt_status lpt_q_bound(const lpt_pinched* c, int k, char** out) {
  if (!c || !out) return fail(LPT_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] { *out = dup(lpt::q_bound(c->cls, k).to_string()); });
}

lpt_status lpt_vanishing_json(const lpt_pinched* c, int k, char** out) {
  if (!c) return fail(LPT_ERR_NULL_ARGUMENT, "null class");
  return guarded([&] {
    auto v = lpt::vanishing_intervals(c->cls, k);
    emit({{"degree", k},
          {"intervals", {{"torsion_zero", lpt::to_json(v.torsion_zero)}, {"full_zero", lpt::to_json(v.full_zero)}}},
          {"approximate", !c->cls.delta().exact()}},
         out);
  });
}

lpt_status lpt_contraction_json(const lpt_pinched* c, int k, char** out) {
  if (!c) return fail(LPT_ERR_NULL_ARGUMENT, "null class");
  return guarded([&] {
    auto r = lpt::contraction_range(c->cls, k);
    emit({{"degree", k},
          {"intervals", {{"contracting", lpt::to_json(r.contracting)}, {"dilating", lpt::to_json(r.dilating)}}},
          {"approximate", !c->cls.delta().exact()}},
         out);
  });
}

lpt_status lpt_eta_json(const lpt_pinched* c, int k, const char* p, char** out) {
  if (!c || !p) return fail(LPT_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] {
    auto e = lpt::eta_exponent(c->cls, k, scalar_arg(p, !c->cls.delta().exact()));
    emit({{"degree", k}, {"eta", lpt::to_json(e.eta)}, {"eta_prime", lpt::to_json(e.eta_prime)}}, out);
  });
}

lpt_status lpt_nonvanishing_json(const lpt_spectrum* s, int k, char** out) {
  if (!s) return fail(LPT_ERR_NULL_ARGUMENT, "null spectrum");
  return guarded([&] {
    lpt::json j{{"degree", k}};
    auto w = lpt::torsion_nonvanishing_interval(s->spec, k);
    j["intervals"] = {{"torsion_nonzero", lpt::to_json(w.components)}, {"hull", lpt::to_json(w.hull)}};
    j["punctures"] = lpt::to_json(w.punctures);
    j["approximate"] = s->spec.approximate();
    emit(j, out);
  });
}

lpt_status lpt_theorem_b_json(int n, int mu, const char* delta, char** out) {
  if (!delta) return fail(LPT_ERR_NULL_ARGUMENT, "null delta");
  return guarded([&] {
    lpt::Scalar d = scalar_arg(delta);
    emit({{"degree", mu}, {"intervals", {{"torsion_nonzero", lpt::to_json(lpt::theorem_b_interval(n, mu, d))}}}},
         out);
  });
}

lpt_status lpt_hyperbolic_points_json(int n, int k, char** out) {
  return guarded([&] { emit({{"degree", k}, {"points", lpt::to_json(lpt::hyperbolic_torsion_points(n, k))}}, out); });
}

lpt_status lpt_t_invariant(const lpt_group* g, char** out) {
  if (!g || !out) return fail(LPT_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] { *out = dup(lpt::t_invariant(g->model).to_string()); });
}

lpt_status lpt_degree_report_json(const lpt_group* g, int k, char** out) {
  if (!g) return fail(LPT_ERR_NULL_ARGUMENT, "null group");
  return guarded([&] { emit(lpt::to_json(lpt::degree_report(g->model, k)), out); });
}

lpt_status lpt_qi_check_json(const lpt_group* g, const lpt_pinched* c, char** out) {
  if (!g || !c) return fail(LPT_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] { emit(lpt::to_json(lpt::qi_obstruction(g->model, c->cls)), out); });
}

lpt_status lpt_truncation_tradeoff(double mu, double eta, double m, double n_mag, double* s, double* bound) {
  if (!s || !bound) return fail(LPT_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] {
    auto t = lpt::truncation_tradeoff(mu, eta, m, n_mag);
    *s = t.s;
    *bound = t.bound;
  });
}

lpt_status lpt_lab_riccati_json(const char* config, char** out) {
  return guarded([&] {
    auto j = parse_config(config);
    lpt::RiccatiBatchConfig cfg;
    cfg.dims = int_list(j, "dims", cfg.dims);
    if (j.contains("deltas")) {
      cfg.deltas.clear();
      for (const auto& d : j["deltas"]) cfg.deltas.push_back(lpt::scalar_from_json(d));
    }
    cfg.count = j.value("count", cfg.count);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.t_end = real_field(j, "t_end", cfg.t_end);
    cfg.h = real_field(j, "h", cfg.h);
    emit(lpt::to_json(lpt::riccati_batch(cfg)), out);
  });
}

lpt_status lpt_lab_lemma_r_json(const char* config, char** out) {
  return guarded([&] {
    auto j = parse_config(config);
    emit(lpt::to_json(lpt::lemma_r_report(real_field(j, "p", 2.0), int_list(j, "j", {5, 10, 20, 40}),
                                          j.value("n", 4))),
         out);
  });
}

lpt_status lpt_lab_radial_json(const char* config, char** out) {
  return guarded([&] {
    auto j = parse_config(config);
    emit(lpt::to_json(lpt::tpknonnul_radial_check(real_field(j, "p", 1.5), int_list(j, "j", {5, 10, 20}))), out);
  });
}

lpt_status lpt_lab_kunneth_json(const char* config, char** out) {
  return guarded([&] {
    auto j = parse_config(config);
    std::vector<double> eps{1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
    if (j.contains("eps")) eps = j["eps"].get<std::vector<double>>();
    emit(lpt::to_json(lpt::kunneth_counterexample_report(eps, j.value("annuli", 200))), out);
  });
}

}  // extern "C"
