#include "lptorsion/report_json.hpp"

#include <cmath>

#include "lptorsion/error.hpp"

namespace lpt {

namespace {

const char* kind_name(bool lo_closed, bool hi_closed) {
  if (lo_closed && hi_closed) return "closed";
  if (!lo_closed && !hi_closed) return "open";
  return lo_closed ? "right-open" : "left-open";
}

// JSON has no infinities; large or non-finite diagnostics become strings
json number(double x) {
  if (std::isfinite(x)) return x;
  return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
}

json strings(const std::vector<std::string>& v) { return json(v); }

}  // namespace

json to_json(const Scalar& x) { return x.to_string(); }

json to_json(const ExponentInterval& i) {
  if (i.is_empty()) return nullptr;
  json hi = i.upper() ? to_json(*i.upper()) : json("inf");
  return json::array({to_json(i.lower()), hi, kind_name(i.lower_closed(), i.upper_closed())});
}

json to_json(const ExponentSet& s) {
  json out = json::array();
  for (const auto& p : s.parts()) out.push_back(to_json(p));
  return out;
}

json to_json(const std::vector<Scalar>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(to_json(x));
  return out;
}

json to_json(const CheckReport& c) {
  json out{{"name", c.name}, {"pass", c.pass}, {"worst", number(c.worst)}};
  if (!c.detail.empty()) out["detail"] = c.detail;
  return out;
}

json to_json(const std::vector<CheckReport>& cs) {
  json out = json::array();
  for (const auto& c : cs) out.push_back(to_json(c));
  return out;
}

Scalar scalar_from_json(const json& j) {
  if (!j.is_string()) throw Error(Errc::parse, "scalar must be a JSON string");
  return parse_scalar(j.get<std::string>());
}

ExponentInterval interval_from_json(const json& j) {
  if (j.is_null()) return ExponentInterval();
  if (!j.is_array() || j.size() != 3 || !j[2].is_string()) throw Error(Errc::parse, "interval must be [lo, hi, kind]");
  std::string kind = j[2];
  bool lo_closed = kind == "closed" || kind == "right-open";
  bool hi_closed = kind == "closed" || kind == "left-open";
  if (!lo_closed && !hi_closed && kind != "open") throw Error(Errc::parse, "unknown interval kind '" + kind + "'");
  std::optional<Scalar> hi;
  if (!(j[1].is_string() && j[1] == "inf")) hi = scalar_from_json(j[1]);
  return ExponentInterval::make(scalar_from_json(j[0]), lo_closed, hi, hi_closed);
}

ExponentSet set_from_json(const json& j) {
  if (!j.is_array()) throw Error(Errc::parse, "set must be a list of intervals");
  std::vector<ExponentInterval> parts;
  for (const auto& e : j) parts.push_back(interval_from_json(e));
  return ExponentSet(parts);
}

json to_json(const ExteriorSpectrum& e) {
  json sums = json::array();
  for (const auto& s : e.sums) sums.push_back({{"value", to_json(s.value)}, {"count", s.count}});
  return {{"degree", e.degree}, {"size", e.size()}, {"min", to_json(e.min())}, {"max", to_json(e.max())},
          {"sums", sums}};
}

json to_json(const DegreeReport& r) {
  return {{"degree", r.degree},
          {"intervals",
           {{"torsion_zero", to_json(r.torsion_zero)},
            {"full_zero", to_json(r.full_zero)},
            {"torsion_nonzero", to_json(r.torsion_nonzero)},
            {"unknown", to_json(r.unknown)}}},
          {"punctures", to_json(r.punctures)},
          {"critical", to_json(r.critical)},
          {"approximate", r.approximate},
          {"notes", strings(r.notes)}};
}

DegreeReport degree_report_from_json(const json& j) {
  DegreeReport r;
  try {
    r.degree = j.at("degree").get<int>();
    const auto& iv = j.at("intervals");
    r.torsion_zero = set_from_json(iv.at("torsion_zero"));
    r.full_zero = set_from_json(iv.at("full_zero"));
    r.torsion_nonzero = set_from_json(iv.at("torsion_nonzero"));
    r.unknown = set_from_json(iv.at("unknown"));
    for (const auto& x : j.at("punctures")) r.punctures.push_back(scalar_from_json(x));
    for (const auto& x : j.at("critical")) r.critical.push_back(scalar_from_json(x));
    r.approximate = j.at("approximate").get<bool>();
    r.notes = j.at("notes").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw Error(Errc::parse, std::string("malformed degree report: ") + e.what());
  }
  return r;
}

json to_json(const ObstructionReport& r) {
  json out{{"obstructed", r.obstructed}};
  out["degree"] = r.obstructed ? json(r.degree) : json(nullptr);
  out["witness"] = to_json(r.witness);
  out["approximate"] = r.approximate;
  out["notes"] = strings(r.notes);
  return out;
}

json to_json(const NonvanishingWindow& w) {
  return {{"hull", to_json(w.hull)}, {"punctures", to_json(w.punctures)}, {"components", to_json(w.components)}};
}

json to_json(const RiccatiBatchReport& r) {
  json fields = json::array();
  for (const auto& f : r.fields) {
    bool ok = true;
    for (const auto& c : f.checks) ok = ok && c.pass;
    fields.push_back({{"m", f.m}, {"delta", f.delta}, {"seed", f.seed}, {"pass", ok}});
  }
  return {{"fields", fields}, {"checks", to_json(r.checks)}};
}

json to_json(const LemmaRReport& r) {
  json rows = json::array();
  for (const auto& x : r.rows)
    rows.push_back({{"j", x.j},
                    {"pairing_main", number(x.pairing_main)},
                    {"pairing", number(x.pairing)},
                    {"plateau_norm", number(x.plateau_norm)},
                    {"norm", number(x.norm)},
                    {"sup_norm", number(x.sup_norm)},
                    {"dv", {number(x.dv_plateau), number(x.dv_mid), number(x.dv_tail)}},
                    {"sv", {number(x.sv_low), number(x.sv_mid), number(x.sv_tail)}},
                    {"sdv", {number(x.sdv_plateau), number(x.sdv_mid), number(x.sdv_tail)}},
                    {"sa_prime", number(x.sa_prime)},
                    {"max_jump", number(x.max_jump)},
                    {"monotone", x.monotone}});
  json fits = json::array();
  for (const auto& f : r.fits)
    fits.push_back({{"name", f.name}, {"analytic", number(f.analytic)}, {"fitted", number(f.fitted)}, {"pass", f.pass}});
  json slopes = json::array();
  for (double s : r.norm_slopes) slopes.push_back(number(s));
  return {{"input", {{"p", r.p}, {"n", r.n}}},
          {"p_conj", r.p_conj},
          {"eps", r.eps},
          {"calibration_error", number(r.calibration_error)},
          {"rows", rows},
          {"norm_slopes", slopes},
          {"norm_slope_analytic", number(r.norm_slope_analytic)},
          {"fits", fits},
          {"checks", to_json(r.checks)}};
}

json to_json(const RadialReport& r) {
  json rows = json::array();
  for (const auto& x : r.rows)
    rows.push_back({{"j", x.j},
                    {"outer", number(x.outer)},
                    {"inner", number(x.inner)},
                    {"quarter_pairing", number(x.quarter_pairing)},
                    {"jacobian_bound", number(x.jacobian_bound)}});
  return {{"input", {{"p", r.p}, {"n", r.n}}},
          {"rows", rows},
          {"inner_rate_analytic", number(r.inner_rate_analytic)},
          {"inner_rate_fitted", number(r.inner_rate_fitted)},
          {"checks", to_json(r.checks)}};
}

json to_json(const KunnethReport& r) {
  json div = json::array();
  for (const auto& d : r.divergence)
    div.push_back({{"eps", d.eps}, {"integral", number(d.integral)}, {"integral_half", number(d.integral_half)},
                   {"ratio", number(d.ratio)}});
  json ann = json::array();
  for (const auto& a : r.annuli)
    ann.push_back({{"log2_outer", a.log2_outer},
                   {"gamma_x", number(a.gamma_x)},
                   {"gamma_y", number(a.gamma_y)},
                   {"upper", number(a.upper)},
                   {"sum_x", number(a.sum_x)},
                   {"sum_upper", number(a.sum_upper)}});
  return {{"divergence", div},
          {"annuli", ann},
          {"upper_closed_form", number(r.upper_closed_form)},
          {"upper_limit", number(r.upper_limit)},
          {"checks", to_json(r.checks)}};
}

bool all_checks_pass(const json& report) {
  if (!report.contains("checks")) return true;
  for (const auto& c : report["checks"])
    if (!c.value("pass", false)) return false;
  return true;
}

}  // namespace lpt
