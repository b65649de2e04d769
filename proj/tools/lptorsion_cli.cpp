// Command-line front end. Talks to the library only through the C API.
#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lptorsion/lptorsion.h"

using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitCheckFailed = 3;
constexpr int kExitNumerical = 4;

struct Opts {
  std::string weights;
  std::string group;
  std::optional<int> n, mu, degree;
  std::string delta;
  std::string p;
  std::string against_delta;
  std::optional<int> against_n;
  bool nonabelian = false;
  std::string mode = "exact";
  std::string format = "json";
  std::uint64_t seed = 1;
  double t_end = 20.0;
  double h = 1e-3;
  int count = 100;
  std::string m = "2,3,5";
  std::string j_list;
  std::string eps_list;
  int annuli = 200;
  std::string csv;
};

struct CliError {
  lpt_status status;
  std::string message;
};

void check(lpt_status s) {
  if (s != LPT_OK) throw CliError{s, lpt_last_error()};
}

[[noreturn]] void input_error(const std::string& msg) { throw CliError{LPT_ERR_DOMAIN, msg}; }

json take(char* s) {
  json j = json::parse(s);
  lpt_string_free(s);
  return j;
}

std::string take_string(char* s) {
  std::string out(s);
  lpt_string_free(s);
  return out;
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(' ');
    auto e = item.find_last_not_of(' ');
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

template <class T>
std::vector<T> numbers(const std::string& text, const char* flag) {
  std::vector<T> out;
  for (const auto& s : split(text)) {
    try {
      size_t used = 0;
      if constexpr (std::is_integral_v<T>)
        out.push_back(static_cast<T>(std::stol(s, &used)));
      else
        out.push_back(static_cast<T>(std::stod(s, &used)));
      if (used != s.size()) throw std::invalid_argument(s);
    } catch (const std::exception&) {
      input_error("bad number '" + s + "' in " + flag);
    }
  }
  if (out.empty()) input_error(std::string(flag) + " is empty");
  return out;
}

using Spectrum = std::unique_ptr<lpt_spectrum, decltype(&lpt_spectrum_free)>;
using Group = std::unique_ptr<lpt_group, decltype(&lpt_group_free)>;
using Pinched = std::unique_ptr<lpt_pinched, decltype(&lpt_pinched_free)>;

class Session {
 public:
  explicit Session(const Opts& o) : o_(o) {
    if (o.mode != "exact" && o.mode != "float") input_error("--mode must be exact or float");
    if (o.format != "json" && o.format != "table") input_error("--format must be json or table");
  }

  const Opts& opts() const { return o_; }
  int approx() const { return o_.mode == "float" ? 1 : 0; }
  bool has_spectrum_input() const { return !o_.weights.empty() || o_.mu.has_value(); }

  Spectrum spectrum() const {
    lpt_spectrum* s = nullptr;
    if (!o_.group.empty() && o_.group != "heintze") input_error("this command needs a heintze group");
    if (!o_.weights.empty()) {
      if (o_.mu || !o_.delta.empty()) input_error("give either --weights or --n/--mu/--delta, not both");
      auto w = split(o_.weights);
      std::vector<const char*> ptrs;
      for (const auto& x : w) ptrs.push_back(x.c_str());
      check(lpt_spectrum_create(ptrs.data(), ptrs.size(), o_.nonabelian ? 0 : 1, approx(), &s));
      Spectrum out(s, lpt_spectrum_free);
      if (o_.n && *o_.n != static_cast<int>(w.size()) + 1) input_error("--n disagrees with the number of weights");
      return out;
    }
    if (!o_.n || !o_.mu || o_.delta.empty()) input_error("need --weights, or --n, --mu and --delta");
    check(lpt_spectrum_two_valued(*o_.n, *o_.mu, o_.delta.c_str(), approx(), &s));
    return Spectrum(s, lpt_spectrum_free);
  }

  Group group() const {
    lpt_group* g = nullptr;
    std::string kind = o_.group.empty() ? "heintze" : o_.group;
    if (kind == "heintze") {
      auto s = spectrum();
      check(lpt_group_heintze(s.get(), &g));
    } else if (kind == "real-hyperbolic") {
      if (!o_.n) input_error("--group real-hyperbolic needs --n");
      check(lpt_group_real_hyperbolic(*o_.n, &g));
    } else if (kind == "ch2") {
      check(lpt_group_reference("CH2", &g));
    } else {
      input_error("unknown group '" + kind + "' (heintze, real-hyperbolic, ch2)");
    }
    return Group(g, lpt_group_free);
  }

  Pinched pinched(int n, const std::string& delta) const {
    if (delta.empty()) input_error("a pinched class needs a delta");
    lpt_pinched* c = nullptr;
    check(lpt_pinched_create(n, delta.c_str(), approx(), &c));
    return Pinched(c, lpt_pinched_free);
  }

  json input() const {
    json in = json::object();
    if (!o_.group.empty()) in["group"] = o_.group;
    if (!o_.weights.empty()) in["weights"] = split(o_.weights);
    if (o_.n) in["n"] = *o_.n;
    if (o_.mu) in["mu"] = *o_.mu;
    if (!o_.delta.empty()) in["delta"] = o_.delta;
    if (!o_.p.empty()) in["p"] = o_.p;
    if (!o_.against_delta.empty()) in["against_delta"] = o_.against_delta;
    if (o_.nonabelian) in["abelian"] = false;
    in["mode"] = o_.mode;
    return in;
  }

 private:
  const Opts& o_;
};

std::vector<int> degrees(const Opts& o, int lo, int hi) {
  if (o.degree) return {*o.degree};
  std::vector<int> ks;
  for (int k = lo; k <= hi; ++k) ks.push_back(k);
  return ks;
}

json with_input(const Session& s, const json& body) {
  json out{{"input", s.input()}};
  for (const auto& [k, v] : body.items()) out[k] = v;
  return out;
}

json per_degree(const Session& s, const std::vector<int>& ks, const std::function<json(int)>& f) {
  if (ks.size() == 1) return with_input(s, f(ks[0]));
  json list = json::array();
  for (int k : ks) list.push_back(f(k));
  return {{"input", s.input()}, {"degrees", list}};
}

json cmd_spectrum(const Session& s) {
  auto sp = s.spectrum();
  return per_degree(s, degrees(s.opts(), 0, lpt_spectrum_rank(sp.get())), [&](int k) {
    char* out = nullptr;
    check(lpt_exterior_json(sp.get(), k, &out));
    return take(out);
  });
}

json cmd_critical(const Session& s) {
  auto sp = s.spectrum();
  return per_degree(s, degrees(s.opts(), 1, lpt_spectrum_rank(sp.get())), [&](int k) {
    char* out = nullptr;
    check(lpt_critical_json(sp.get(), k, &out));
    return take(out);
  });
}

json cmd_contract(const Session& s) {
  const Opts& o = s.opts();
  if (s.has_spectrum_input()) {
    if (o.p.empty()) input_error("the spectral criterion needs --p");
    auto sp = s.spectrum();
    return per_degree(s, degrees(o, 1, lpt_spectrum_rank(sp.get())), [&](int k) {
      char* out = nullptr;
      check(lpt_contracting_json(sp.get(), k, o.p.c_str(), &out));
      return take(out);
    });
  }
  if (!o.n) input_error("need --weights, --n/--mu/--delta, or --n/--delta for a pinched class");
  auto cls = s.pinched(*o.n, o.delta);
  return per_degree(s, degrees(o, 1, *o.n - 1), [&](int k) {
    char* out = nullptr;
    check(lpt_contraction_json(cls.get(), k, &out));
    json j = take(out);
    if (!o.p.empty()) {
      check(lpt_eta_json(cls.get(), k, o.p.c_str(), &out));
      json e = take(out);
      j["eta"] = e["eta"];
      j["eta_prime"] = e["eta_prime"];
    }
    return j;
  });
}

json cmd_vanish(const Session& s) {
  const Opts& o = s.opts();
  if (!o.n) input_error("vanish needs --n and --delta");
  auto cls = s.pinched(*o.n, o.delta);
  return per_degree(s, degrees(o, 2, *o.n), [&](int k) {
    char* out = nullptr;
    check(lpt_vanishing_json(cls.get(), k, &out));
    json j = take(out);
    check(lpt_q_bound(cls.get(), k - 1, &out));
    j["q_previous"] = take_string(out);
    if (k <= *o.n - 1) {
      check(lpt_q_bound(cls.get(), k, &out));
      j["q"] = take_string(out);
    }
    return j;
  });
}

json cmd_nonvanish(const Session& s) {
  const Opts& o = s.opts();
  auto sp = s.spectrum();
  return per_degree(s, degrees(o, 2, lpt_spectrum_rank(sp.get())), [&](int k) {
    char* out = nullptr;
    check(lpt_nonvanishing_json(sp.get(), k, &out));
    json j = take(out);
    // the closed form for the two-valued family, as a second route
    if (o.mu && *o.mu == k && o.weights.empty() && !s.approx()) {
      if (lpt_theorem_b_json(*o.n, *o.mu, o.delta.c_str(), &out) == LPT_OK)
        j["intervals"]["closed_form"] = take(out)["intervals"]["torsion_nonzero"];
    }
    return j;
  });
}

json cmd_report(const Session& s) {
  auto g = s.group();
  int n = lpt_group_dimension(g.get());
  return per_degree(s, degrees(s.opts(), 2, n), [&](int k) {
    char* out = nullptr;
    check(lpt_degree_report_json(g.get(), k, &out));
    return take(out);
  });
}

json cmd_tinv(const Session& s) {
  auto g = s.group();
  char* out = nullptr;
  lpt_status st = lpt_t_invariant(g.get(), &out);
  if (st == LPT_ERR_NOT_DETERMINED)
    return with_input(s, {{"t_invariant", nullptr}, {"notes", {lpt_last_error()}}});
  check(st);
  return with_input(s, {{"t_invariant", take_string(out)}});
}

json cmd_qi_check(const Session& s) {
  const Opts& o = s.opts();
  if (o.against_delta.empty()) input_error("qi-check needs --against-delta");
  auto g = s.group();
  int n = o.against_n ? *o.against_n : lpt_group_dimension(g.get());
  auto cls = s.pinched(n, o.against_delta);
  char* out = nullptr;
  check(lpt_qi_check_json(g.get(), cls.get(), &out));
  return with_input(s, take(out));
}

json run_lab(lpt_status (*fn)(const char*, char**), const json& config) {
  char* out = nullptr;
  check(fn(config.dump().c_str(), &out));
  json body = take(out);
  json j{{"input", config}};
  for (const auto& [k, v] : body.items()) j[k] = v;
  return j;
}

json cmd_lab_riccati(const Session& s) {
  const Opts& o = s.opts();
  json cfg{{"dims", numbers<int>(o.m, "--m")},
           {"deltas", split(o.delta.empty() ? "-1/4,-1/2" : o.delta)},
           {"count", o.count},
           {"seed", o.seed},
           {"t_end", o.t_end},
           {"h", o.h}};
  return run_lab(lpt_lab_riccati_json, cfg);
}

json cmd_lab_lemma_r(const Session& s) {
  const Opts& o = s.opts();
  json cfg{{"p", o.p.empty() ? "2" : o.p},
           {"j", numbers<int>(o.j_list.empty() ? "5,10,20,40" : o.j_list, "--j-list")},
           {"n", o.n.value_or(4)}};
  return run_lab(lpt_lab_lemma_r_json, cfg);
}

json cmd_lab_radial(const Session& s) {
  const Opts& o = s.opts();
  json cfg{{"p", o.p.empty() ? "3/2" : o.p}, {"j", numbers<int>(o.j_list.empty() ? "5,10,20" : o.j_list, "--j-list")}};
  return run_lab(lpt_lab_radial_json, cfg);
}

json cmd_lab_kunneth(const Session& s) {
  const Opts& o = s.opts();
  json cfg{{"eps", numbers<double>(o.eps_list.empty() ? "1e-2,1e-3,1e-4,1e-5,1e-6" : o.eps_list, "--eps-list")},
           {"annuli", o.annuli}};
  return run_lab(lpt_lab_kunneth_json, cfg);
}

// --- rendering ---

bool is_interval(const json& j) {
  return j.is_array() && j.size() == 3 && j[2].is_string() &&
         (j[2] == "open" || j[2] == "closed" || j[2] == "left-open" || j[2] == "right-open");
}

std::string interval_text(const json& j) {
  if (j.is_null()) return "empty";
  std::string kind = j[2];
  bool lc = kind == "closed" || kind == "right-open";
  bool hc = kind == "closed" || kind == "left-open";
  std::string lo = j[0], hi = j[1];
  if (lc && hc && lo == hi) return "{" + lo + "}";
  return std::string(lc ? "[" : "(") + lo + ", " + hi + (hc ? "]" : ")");
}

std::string cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  if (is_interval(v)) return interval_text(v);
  if (v.is_array() && !v.empty() && std::all_of(v.begin(), v.end(), [](const json& e) { return is_interval(e); })) {
    std::string s;
    for (const auto& e : v) s += (s.empty() ? "" : " U ") + interval_text(e);
    return s;
  }
  if (v.is_array() && v.empty()) return "none";
  if (v.is_array() && std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_primitive(); })) {
    std::string s;
    for (const auto& e : v) s += (s.empty() ? "" : ", ") + cell(e);
    return s;
  }
  return v.dump();
}

void render_rows(std::ostream& os, const json& rows, const std::string& indent) {
  std::vector<std::string> keys;
  for (const auto& r : rows)
    for (const auto& [k, v] : r.items())
      if (std::find(keys.begin(), keys.end(), k) == keys.end() && k != "detail") keys.push_back(k);
  std::vector<std::vector<std::string>> cells;
  std::vector<size_t> width;
  for (const auto& k : keys) width.push_back(k.size());
  for (const auto& r : rows) {
    std::vector<std::string> line;
    for (size_t i = 0; i < keys.size(); ++i) {
      line.push_back(r.contains(keys[i]) ? cell(r[keys[i]]) : "");
      width[i] = std::max(width[i], line.back().size());
    }
    cells.push_back(std::move(line));
  }
  auto print = [&](const std::vector<std::string>& line) {
    os << indent;
    for (size_t i = 0; i < line.size(); ++i) os << line[i] << std::string(width[i] - line[i].size() + 2, ' ');
    os << "\n";
  };
  print(keys);
  for (const auto& line : cells) print(line);
}

void render_table(std::ostream& os, const json& j, const std::string& indent = "") {
  for (const auto& [k, v] : j.items()) {
    if (v.is_object() && !v.empty()) {
      os << indent << k << ":\n";
      render_table(os, v, indent + "  ");
    } else if (v.is_array() && !v.empty() && v[0].is_object()) {
      os << indent << k << ":\n";
      if (k == "degrees") {
        for (const auto& d : v) {
          render_table(os, d, indent + "  ");
          os << "\n";
        }
      } else {
        render_rows(os, v, indent + "  ");
      }
    } else {
      os << indent << k << ": " << cell(v) << "\n";
    }
  }
}

void write_csv(const std::string& path, const json& report) {
  const char* table = report.contains("rows") ? "rows" : report.contains("annuli") ? "annuli" : "fields";
  if (!report.contains(table)) input_error("this report has no table to write as CSV");
  std::ofstream f(path);
  if (!f) input_error("cannot open " + path + " for writing");
  bool header = true;
  for (const auto& row : report[table]) {
    std::vector<std::pair<std::string, std::string>> flat;
    for (const auto& [k, v] : row.items()) {
      if (v.is_array()) {
        for (size_t i = 0; i < v.size(); ++i) flat.emplace_back(k + "_" + std::to_string(i), cell(v[i]));
      } else {
        flat.emplace_back(k, v.is_string() ? v.get<std::string>() : v.dump());
      }
    }
    if (header) {
      for (size_t i = 0; i < flat.size(); ++i) f << (i ? "," : "") << flat[i].first;
      f << "\n";
      header = false;
    }
    for (size_t i = 0; i < flat.size(); ++i) f << (i ? "," : "") << flat[i].second;
    f << "\n";
  }
}

int exit_for(lpt_status s) {
  switch (s) {
    case LPT_ERR_BLOWUP:
    case LPT_ERR_QUADRATURE:
    case LPT_ERR_INTERNAL:
      return kExitNumerical;
    default:
      return kExitInput;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"L^p torsion calculator and numerical labs"};
  app.require_subcommand(1);
  Opts o;

  using Handler = json (*)(const Session&);
  struct Command {
    const char* name;
    const char* help;
    Handler run;
    bool lab;
  };
  const Command commands[] = {
      {"spectrum", "exterior-power spectra of the derivation", cmd_spectrum, false},
      {"critical", "critical exponents per degree", cmd_critical, false},
      {"contract", "(k,p)-contraction: spectral criterion at --p, or pinched-class ranges", cmd_contract, false},
      {"vanish", "vanishing intervals for a pinched class", cmd_vanish, false},
      {"nonvanish", "torsion nonvanishing intervals for an abelian Heintze group", cmd_nonvanish, false},
      {"report", "per-degree summary for a group", cmd_report, false},
      {"tinv", "the invariant T", cmd_tinv, false},
      {"qi-check", "look for a pinching obstruction to quasi-isometry", cmd_qi_check, false},
      {"lab-riccati", "Riccati comparison batch", cmd_lab_riccati, true},
      {"lab-lemma-r", "test-function family certificates", cmd_lab_lemma_r, true},
      {"lab-radial", "radial reduction in degree 3 on R^3 x R", cmd_lab_radial, true},
      {"lab-kunneth", "L^2 Kunneth counterexample certificates", cmd_lab_kunneth, true},
  };

  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->set_help_flag("--help", "print this help");  // -h would clash with --h
    sub->add_option("--format", o.format, "json or table")->capture_default_str();
    sub->add_option("--mode", o.mode, "exact or float")->capture_default_str();
    sub->add_option("--p", o.p, "exponent p");
    sub->add_option("--n", o.n, "dimension n");
    sub->add_option("--delta", o.delta, "upper curvature bound, e.g. -1/4 (comma list for lab-riccati)");
    if (!c.lab) {
      sub->add_option("--weights", o.weights, "comma-separated weights, e.g. 1,1,2 or 1/2,1+sqrt(2)");
      sub->add_option("--group", o.group, "heintze, real-hyperbolic or ch2");
      sub->add_option("--mu", o.mu, "mu of the two-valued family");
      sub->add_option("--degree", o.degree, "a single degree k");
      sub->add_flag("--nonabelian", o.nonabelian, "the kernel is not abelian");
      sub->add_option("--against-delta", o.against_delta, "delta of the pinched class to test against");
      sub->add_option("--against-n", o.against_n, "dimension of that class (defaults to the group's)");
    } else {
      sub->add_option("--seed", o.seed)->capture_default_str();
      sub->add_option("--t-end", o.t_end)->capture_default_str();
      sub->add_option("--h", o.h)->capture_default_str();
      sub->add_option("--count", o.count)->capture_default_str();
      sub->add_option("--m", o.m, "comma list of Riccati dimensions")->capture_default_str();
      sub->add_option("--j-list", o.j_list, "comma list of j");
      sub->add_option("--eps-list", o.eps_list, "comma list of eps");
      sub->add_option("--annuli", o.annuli)->capture_default_str();
      sub->add_option("--csv", o.csv, "also write the report table as CSV");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitInput;
  }

  for (const auto& c : commands) {
    if (!app.got_subcommand(c.name)) continue;
    try {
      Session s(o);
      json report = c.run(s);
      if (o.format == "table")
        render_table(std::cout, report);
      else
        std::cout << report.dump(2) << "\n";
      if (!o.csv.empty()) write_csv(o.csv, report);
      if (c.lab) {
        for (const auto& chk : report["checks"])
          if (!chk.value("pass", false)) return kExitCheckFailed;
      }
      return kExitOk;
    } catch (const CliError& e) {
      std::cerr << "error (" << lpt_status_name(e.status) << "): " << e.message << "\n";
      return exit_for(e.status);
    } catch (const json::exception& e) {
      std::cerr << "error: malformed library output: " << e.what() << "\n";
      return kExitNumerical;
    }
  }
  return kExitInput;
}
