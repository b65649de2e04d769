#include "lptorsion/scalar.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>

#include "lptorsion/error.hpp"

namespace lpt {

namespace {

// Splits n = f^2 * r with r as small as trial division up to 10^6 allows.
// Radicands met in practice are tiny, so this is exact for them.
void square_part(const mpz_class& n, mpz_class& f, mpz_class& r) {
  f = 1;
  r = n;
  if (mpz_perfect_square_p(r.get_mpz_t())) {
    mpz_sqrt(f.get_mpz_t(), r.get_mpz_t());
    r = 1;
    return;
  }
  for (unsigned long d = 2; d <= 1000000; ++d) {
    mpz_class dd = mpz_class(d) * d;
    if (dd > r) break;
    while (mpz_divisible_p(r.get_mpz_t(), dd.get_mpz_t())) {
      r /= dd;
      f *= d;
    }
  }
  if (r > 1 && mpz_perfect_square_p(r.get_mpz_t())) {
    mpz_class g;
    mpz_sqrt(g.get_mpz_t(), r.get_mpz_t());
    f *= g;
    r = 1;
  }
}

}  // namespace

Scalar::Scalar(mpq_class a) : a_(std::move(a)) { a_.canonicalize(); }

Scalar Scalar::rational(long num, long den) {
  if (den == 0) throw Error(Errc::division_by_zero, "zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return Scalar(q);
}

Scalar Scalar::quad(const mpq_class& a, const mpq_class& b, const mpq_class& s) {
  if (sgn(s) < 0) throw Error(Errc::domain, "negative radicand " + s.get_str());
  Scalar x{mpq_class(a)};
  if (sgn(b) == 0 || sgn(s) == 0) return x;
  // sqrt(p/q) = sqrt(p*q)/q
  mpz_class pq = s.get_num() * s.get_den();
  mpz_class f, r;
  square_part(pq, f, r);
  mpq_class coef = b * mpq_class(f, s.get_den());
  coef.canonicalize();
  if (r == 1) {
    x.a_ += coef;
  } else {
    x.b_ = coef;
    x.s_ = r;
  }
  x.normalize();
  return x;
}

Scalar Scalar::approx(double v) {
  Scalar x;
  x.approx_ = true;
  x.v_ = v;
  return x;
}

Scalar Scalar::sqrt(const Scalar& x) {
  if (x.sign() < 0) throw Error(Errc::domain, "square root of a negative value");
  if (x.approx_) return approx(std::sqrt(std::abs(x.v_)));
  if (!x.is_rational()) throw Error(Errc::field_mismatch, "nested square roots are not supported");
  return quad(0, 1, x.a_);
}

void Scalar::normalize() {
  if (sgn(b_) == 0) s_ = 0;
}

double Scalar::to_double() const {
  if (approx_) return v_;
  if (sgn(b_) == 0) return a_.get_d();
  return a_.get_d() + b_.get_d() * std::sqrt(s_.get_d());
}

int Scalar::sign() const {
  if (approx_) return std::abs(v_) <= kTolerance ? 0 : (v_ > 0 ? 1 : -1);
  int sa = sgn(a_), sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  int c = cmp(mpq_class(a_ * a_), mpq_class(b_ * b_ * s_));
  if (c == 0) return 0;
  return c > 0 ? sa : sb;
}

void Scalar::check_compatible(const Scalar& o) const {
  if (approx_ != o.approx_) {
    const Scalar& ex = approx_ ? o : *this;
    if (!ex.is_rational())
      throw Error(Errc::mode_mismatch, "cannot combine an exact irrational value with an approximate one");
    return;
  }
  if (!approx_ && sgn(b_) != 0 && sgn(o.b_) != 0 && s_ != o.s_)
    throw Error(Errc::field_mismatch,
                "values live in different fields: sqrt(" + s_.get_str() + ") vs sqrt(" + o.s_.get_str() + ")");
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  r.v_ = -r.v_;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_compatible(o);
  if (approx_ || o.approx_) return *this = approx(to_double() + o.to_double());
  a_ += o.a_;
  if (sgn(o.b_) != 0) {
    b_ += o.b_;
    s_ = o.s_;
  }
  normalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  check_compatible(o);
  if (approx_ || o.approx_) return *this = approx(to_double() * o.to_double());
  mpz_class s = sgn(b_) != 0 ? s_ : o.s_;
  mpq_class a = a_ * o.a_ + b_ * o.b_ * s;
  mpq_class b = a_ * o.b_ + b_ * o.a_;
  a_ = a;
  b_ = b;
  s_ = s;
  normalize();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  check_compatible(o);
  if (o.sign() == 0) throw Error(Errc::division_by_zero, "division by zero");
  if (approx_ || o.approx_) return *this = approx(to_double() / o.to_double());
  // multiply through by the conjugate of the denominator
  mpq_class norm = o.a_ * o.a_ - o.b_ * o.b_ * o.s_;
  Scalar conj = o;
  conj.b_ = -conj.b_;
  *this *= conj;
  a_ /= norm;
  b_ /= norm;
  normalize();
  return *this;
}

std::string Scalar::to_string() const {
  if (approx_) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v_);
    std::string out(buf, res.ptr);
    if (out.find_first_of(".eEn") == std::string::npos) out += ".0";
    return out;
  }
  if (sgn(b_) == 0) return a_.get_str();
  mpq_class mag = abs(b_);
  std::string root = "sqrt(" + s_.get_str() + ")";
  std::string term = mag == 1 ? root : mag.get_str() + "*" + root;
  if (sgn(a_) == 0) return (sgn(b_) < 0 ? "-" : "") + term;
  return a_.get_str() + (sgn(b_) < 0 ? "-" : "+") + term;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view t) : t_(t) {}

  Scalar parse() {
    Scalar v = expr();
    skip();
    if (i_ != t_.size()) fail("unexpected trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(Errc::parse, "cannot parse '" + std::string(t_) + "': " + why);
  }
  void skip() {
    while (i_ < t_.size() && (t_[i_] == ' ' || t_[i_] == '\t')) ++i_;
  }
  bool eat(std::string_view tok) {
    skip();
    if (t_.substr(i_, tok.size()) == tok) {
      i_ += tok.size();
      return true;
    }
    return false;
  }

  Scalar expr() {
    Scalar v = term();
    for (;;) {
      if (eat("+"))
        v += term();
      else if (eat("-"))
        v -= term();
      else
        return v;
    }
  }

  Scalar term() {
    Scalar v = unary();
    for (;;) {
      if (eat("*")) {
        v *= unary();
      } else if (eat("/")) {
        v /= unary();
      } else if (at_root()) {
        v *= unary();  // "3√2" is an implicit product
      } else {
        return v;
      }
    }
  }

  bool at_root() {
    skip();
    return t_.substr(i_, 3) == "\xE2\x88\x9A";
  }

  Scalar unary() {
    if (eat("-")) return -unary();
    if (eat("+")) return unary();
    return primary();
  }

  Scalar primary() {
    if (eat("(")) {
      Scalar v = expr();
      if (!eat(")")) fail("missing ')'");
      return v;
    }
    if (eat("sqrt")) {
      if (!eat("(")) fail("expected '(' after sqrt");
      Scalar v = expr();
      if (!eat(")")) fail("missing ')'");
      return Scalar::sqrt(v);
    }
    if (eat("\xE2\x88\x9A")) {
      return Scalar::sqrt(primary());
    }
    return number();
  }

  Scalar number() {
    skip();
    size_t start = i_;
    while (i_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[i_]))) ++i_;
    bool decimal = false;
    if (i_ < t_.size() && t_[i_] == '.') {
      decimal = true;
      ++i_;
      while (i_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[i_]))) ++i_;
    }
    if (i_ < t_.size() && (t_[i_] == 'e' || t_[i_] == 'E') && i_ > start) {
      decimal = true;
      ++i_;
      if (i_ < t_.size() && (t_[i_] == '+' || t_[i_] == '-')) ++i_;
      size_t exp_start = i_;
      while (i_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[i_]))) ++i_;
      if (exp_start == i_) fail("malformed exponent");
    }
    if (i_ == start || (i_ == start + 1 && t_[start] == '.')) fail("expected a number");
    std::string tok(t_.substr(start, i_ - start));
    if (decimal) return Scalar::approx(std::strtod(tok.c_str(), nullptr));
    return Scalar(mpq_class(mpz_class(tok, 10)));
  }

  std::string_view t_;
  size_t i_ = 0;
};

}  // namespace

Scalar parse_scalar(std::string_view text) {
  try {
    return Parser(text).parse();
  } catch (const std::invalid_argument&) {
    throw Error(Errc::parse, "cannot parse '" + std::string(text) + "'");
  }
}

}  // namespace lpt
