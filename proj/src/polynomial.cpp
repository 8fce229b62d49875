#include "kiss3/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "kiss3/errors.hpp"

namespace kiss3 {

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw DomainError("interval endpoint not finite");
  if (lo > hi) throw DomainError("interval with lo > hi");
}

Interval max(const Interval& a, const Interval& b) {
  return Interval(std::max(a.lo, b.lo), std::max(a.hi, b.hi));
}

Interval operator+(const Interval& a, const Interval& b) {
  // Round the sum outward by one ulp on each side.
  const double inf = std::numeric_limits<double>::infinity();
  return Interval(std::nextafter(a.lo + b.lo, -inf), std::nextafter(a.hi + b.hi, inf));
}

Interval RationalInterval::to_interval() const {
  return Interval(to_double_down(lo), to_double_up(hi));
}

// --- RationalPoly -----------------------------------------------------------

RationalPoly::RationalPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

RationalPoly::RationalPoly(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { trim(); }

RationalPoly RationalPoly::constant(const Rational& c) { return RationalPoly({c}); }

RationalPoly RationalPoly::monomial(const Rational& c, int power) {
  if (power < 0) throw DomainError("negative monomial power");
  std::vector<Rational> v(static_cast<std::size_t>(power) + 1);
  v.back() = c;
  return RationalPoly(std::move(v));
}

RationalPoly RationalPoly::identity() { return monomial(1, 1); }

void RationalPoly::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

Rational RationalPoly::coeff(int k) const {
  if (k < 0 || k > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(k)];
}

const Rational& RationalPoly::leading() const {
  if (is_zero()) throw DomainError("zero polynomial has no leading coefficient");
  return coeffs_.back();
}

std::vector<double> RationalPoly::to_doubles() const {
  std::vector<double> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.get_d());
  return out;
}

RationalPoly& RationalPoly::operator+=(const RationalPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

RationalPoly& RationalPoly::operator-=(const RationalPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

RationalPoly& RationalPoly::operator*=(const Rational& s) {
  for (auto& c : coeffs_) c *= s;
  trim();
  return *this;
}

RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (sgn(a.coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return RationalPoly(std::move(out));
}

RationalPoly operator-(RationalPoly a) {
  for (auto& c : a.coeffs_) c = -c;
  return a;
}

std::string RationalPoly::to_string(const char* var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rational& c = coeffs_[static_cast<std::size_t>(k)];
    if (sgn(c) == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = mag == 1 && k > 0;
    if (!unit) os << kiss3::to_string(mag);
    if (k > 0) {
      if (!unit) os << "*";
      os << var;
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

RationalPoly pow(const RationalPoly& p, int n) {
  if (n < 0) throw DomainError("negative polynomial power");
  RationalPoly out = RationalPoly::constant(1);
  for (int i = 0; i < n; ++i) out = out * p;
  return out;
}

std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& a, const RationalPoly& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  if (a.degree() < b.degree()) return {RationalPoly(), a};
  const auto db = static_cast<std::size_t>(b.degree());
  std::vector<Rational> rem(a.coefficients().begin(), a.coefficients().end());
  std::vector<Rational> quot(rem.size() - db);
  const Rational& lead = b.leading();
  for (std::size_t k = rem.size(); k-- > db;) {
    if (sgn(rem[k]) == 0) continue;
    Rational q = rem[k] / lead;
    quot[k - db] = q;
    for (std::size_t j = 0; j <= db; ++j) rem[k - db + j] -= q * b.coeff(static_cast<int>(j));
  }
  rem.resize(db);
  return {RationalPoly(std::move(quot)), RationalPoly(std::move(rem))};
}

namespace {

RationalPoly monic(RationalPoly p) {
  if (p.is_zero()) return p;
  Rational inv = 1 / p.leading();
  return p * inv;
}

// Scale by 1/|leading|; keeps every sign, shrinks coefficient growth.
RationalPoly sign_preserving_normalize(RationalPoly p) {
  if (p.is_zero()) return p;
  Rational inv = 1 / abs(p.leading());
  return p * inv;
}

int sign_at(const RationalPoly& p, const Rational& x) { return sgn(eval(p, x)); }

}  // namespace

RationalPoly gcd(const RationalPoly& a, const RationalPoly& b) {
  RationalPoly x = a;
  RationalPoly y = b;
  while (!y.is_zero()) {
    RationalPoly r = divmod(x, y).second;
    x = std::move(y);
    y = sign_preserving_normalize(std::move(r));
  }
  return monic(std::move(x));
}

RationalPoly squarefree_part(const RationalPoly& p) {
  if (p.degree() <= 0) return p;
  RationalPoly g = gcd(p, derivative(p));
  if (g.degree() == 0) return p;
  return divmod(p, g).first;
}

RationalPoly compose(const RationalPoly& p, const RationalPoly& q) {
  RationalPoly out;
  for (int k = p.degree(); k >= 0; --k) out = out * q + RationalPoly::constant(p.coeff(k));
  return out;
}

Rational eval(const RationalPoly& p, const Rational& t) {
  Rational acc = 0;
  const auto c = p.coefficients();
  for (std::size_t k = c.size(); k-- > 0;) {
    acc *= t;
    acc += c[k];
  }
  return acc;
}

double eval_real(const RationalPoly& p, double t) {
  double acc = 0.0;
  const auto c = p.coefficients();
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * t + c[k].get_d();
  return acc;
}

RationalPoly derivative(const RationalPoly& p) {
  if (p.degree() <= 0) return {};
  std::vector<Rational> out(static_cast<std::size_t>(p.degree()));
  for (int k = 1; k <= p.degree(); ++k) out[static_cast<std::size_t>(k - 1)] = p.coeff(k) * k;
  return RationalPoly(std::move(out));
}

RationalInterval eval_range(const RationalPoly& p, const Rational& lo, const Rational& hi) {
  if (lo > hi) throw DomainError("eval_range with lo > hi");
  Rational acc_lo = 0;
  Rational acc_hi = 0;
  const auto c = p.coefficients();
  for (std::size_t k = c.size(); k-- > 0;) {
    Rational p1 = acc_lo * lo;
    Rational p2 = acc_lo * hi;
    Rational p3 = acc_hi * lo;
    Rational p4 = acc_hi * hi;
    acc_lo = std::min({p1, p2, p3, p4}) + c[k];
    acc_hi = std::max({p1, p2, p3, p4}) + c[k];
  }
  return {acc_lo, acc_hi};
}

Rational root_separation_bound(const RationalPoly& q) {
  const int n = q.degree();
  if (n <= 1) return 1;
  mpz_class den_lcm = 1;
  for (const auto& c : q.coefficients()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  std::size_t max_bits = 1;
  for (const auto& c : q.coefficients()) {
    mpz_class scaled = c.get_num() * (den_lcm / c.get_den());
    max_bits = std::max(max_bits, mpz_sizeinbase(scaled.get_mpz_t(), 2));
  }
  const double log2_norm = static_cast<double>(max_bits) + 0.5 * std::log2(n + 1.0);
  const double log2_sep = 0.5 * std::log2(3.0) - 0.5 * (n + 2) * std::log2(static_cast<double>(n)) -
                          (n - 1) * log2_norm;
  const long e = static_cast<long>(std::floor(log2_sep)) - 1;
  Rational out = 1;
  if (e < 0) {
    mpz_class d;
    mpz_ui_pow_ui(d.get_mpz_t(), 2, static_cast<unsigned long>(-e));
    out /= d;
  }
  return out;
}

// --- Sturm ------------------------------------------------------------------

SturmSequence::SturmSequence(const RationalPoly& p) {
  if (p.is_zero()) throw DomainError("Sturm sequence of the zero polynomial");
  chain_.push_back(sign_preserving_normalize(squarefree_part(p)));
  separation_ = root_separation_bound(chain_.front());
  if (chain_.front().degree() == 0) return;
  chain_.push_back(sign_preserving_normalize(derivative(chain_.front())));
  while (true) {
    const auto& a = chain_[chain_.size() - 2];
    const auto& b = chain_.back();
    RationalPoly r = divmod(a, b).second;
    if (r.is_zero()) break;
    chain_.push_back(sign_preserving_normalize(-r));
  }
}

int SturmSequence::variations(const Rational& x) const {
  int changes = 0;
  int last = 0;
  for (const auto& p : chain_) {
    const int s = sign_at(p, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int SturmSequence::count(Rational a, Rational b) const {
  if (!(a < b)) throw DomainError("sturm_count requires a < b");
  const RationalPoly& q = squarefree();
  Rational nudge = (b - a) / 4;
  if (separation_ / 2 < nudge) nudge = separation_ / 2;
  if (sign_at(q, a) == 0) a += nudge;
  if (sign_at(q, b) == 0) b -= nudge;
  if (sign_at(q, a) == 0 || sign_at(q, b) == 0)
    throw DegenerateEndpoint("endpoint still a root after nudging");
  return variations(a) - variations(b);
}

int sturm_count(const RationalPoly& p, const Rational& a, const Rational& b) {
  return SturmSequence(p).count(a, b);
}

namespace {

// Halve an isolating interval of a simple root of q until it is narrow enough.
// Requires q(lo) * q(hi) < 0, or lo == hi for an exact root.
RationalInterval bisect_to_width(const RationalPoly& q, RationalInterval iv, const Rational& width) {
  if (iv.lo == iv.hi) return iv;
  int s_lo = sign_at(q, iv.lo);
  while (iv.hi - iv.lo > width) {
    Rational mid = (iv.lo + iv.hi) / 2;
    const int s_mid = sign_at(q, mid);
    if (s_mid == 0) return {mid, mid};
    if (s_mid == s_lo) {
      iv.lo = mid;
    } else {
      iv.hi = mid;
    }
  }
  return iv;
}

}  // namespace

std::vector<RationalInterval> isolate_all_roots(const RationalPoly& p, const Rational& a,
                                                const Rational& b, const Rational& width) {
  std::vector<RationalInterval> out;
  if (!(a < b) || p.degree() <= 0) return out;
  const SturmSequence chain(p);
  const RationalPoly& q = chain.squarefree();
  if (q.degree() <= 0) return out;

  auto inward = [&](const Rational& l, const Rational& r) {
    Rational nudge = (r - l) / 4;
    if (chain.separation() / 2 < nudge) nudge = chain.separation() / 2;
    return nudge;
  };

  struct Piece {
    Rational lo, hi;
  };
  std::vector<Piece> stack;
  {
    Rational lo = a;
    Rational hi = b;
    const Rational n = inward(lo, hi);
    if (sign_at(q, lo) == 0) lo += n;
    if (sign_at(q, hi) == 0) hi -= n;
    stack.push_back({lo, hi});
  }
  while (!stack.empty()) {
    Piece piece = std::move(stack.back());
    stack.pop_back();
    const int n = chain.variations(piece.lo) - chain.variations(piece.hi);
    if (n <= 0) continue;
    if (n == 1) {
      out.push_back(bisect_to_width(q, {piece.lo, piece.hi}, width));
      continue;
    }
    Rational mid = (piece.lo + piece.hi) / 2;
    if (sign_at(q, mid) == 0) {
      out.push_back({mid, mid});
      Rational nudge = inward(piece.lo, mid);
      const Rational n2 = inward(mid, piece.hi);
      if (n2 < nudge) nudge = n2;
      stack.push_back({piece.lo, mid - nudge});
      stack.push_back({mid + nudge, piece.hi});
    } else {
      stack.push_back({piece.lo, mid});
      stack.push_back({mid, piece.hi});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.lo < y.lo; });
  return out;
}

RationalInterval isolate_root_exact(const RationalPoly& p, const Rational& a, const Rational& b,
                                    const Rational& width) {
  if (sgn(width) <= 0) throw DomainError("isolation width must be positive");
  const SturmSequence chain(p);
  const int n = chain.count(a, b);
  if (n == 0) throw NoRoot("no root in the given interval");
  if (n > 1) throw MultipleRoots(std::to_string(n) + " distinct roots in the given interval");
  auto roots = isolate_all_roots(p, a, b, width);
  return roots.front();
}

Interval isolate_root(const RationalPoly& p, const Rational& a, const Rational& b, double width) {
  if (!(width > 0.0)) throw DomainError("isolation width must be positive");
  return isolate_root_exact(p, a, b, exact(width)).to_interval();
}

Interval max_on_interval(const RationalPoly& p, const Rational& a, const Rational& b, double tol) {
  if (a > b) throw DomainError("max_on_interval requires a <= b");
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  // Half of tol is spent on refinement, the rest covers outward rounding.
  const Rational target = exact(tol) / 2;

  Rational best_lo = eval(p, a);
  Rational best_hi = best_lo;
  {
    const Rational vb = eval(p, b);
    if (vb > best_lo) best_lo = vb;
    if (vb > best_hi) best_hi = vb;
  }

  const RationalPoly dp = derivative(p);
  if (a < b && dp.degree() >= 1) {
    const RationalPoly dq = squarefree_part(dp);
    for (auto iv : isolate_all_roots(dp, a, b, b - a)) {
      RationalInterval range = eval_range(p, iv.lo, iv.hi);
      while (range.width() > target) {
        iv = bisect_to_width(dq, iv, iv.width() / 2);
        range = eval_range(p, iv.lo, iv.hi);
      }
      if (range.lo > best_lo) best_lo = range.lo;
      if (range.hi > best_hi) best_hi = range.hi;
    }
  }
  return Interval(to_double_down(best_lo), to_double_up(best_hi));
}

Interval max_on_interval(const RationalPoly& p, double a, double b, double tol) {
  return max_on_interval(p, exact(a), exact(b), tol);
}

}  // namespace kiss3
