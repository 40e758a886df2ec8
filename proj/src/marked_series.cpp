#include "rans/marked_series.hpp"

#include <algorithm>
#include <sstream>

#include "rans/errors.hpp"

namespace rans {

Polynomial Polynomial::constant(const mpq_class& c) { return monomial(Monomial{}, c); }

Polynomial Polynomial::monomial(const Monomial& m, const mpq_class& c) {
  Polynomial p;
  p.add_term(m, c);
  return p;
}

mpq_class Polynomial::coeff(const Monomial& m) const {
  const auto it = terms_.find(m);
  return it == terms_.end() ? mpq_class(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const mpq_class& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (sgn(it->second) == 0) terms_.erase(it);
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

Polynomial& Polynomial::operator*=(const mpq_class& k) {
  if (sgn(k) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= k;
  return *this;
}

mpq_class Polynomial::at_ones() const {
  mpq_class s = 0;
  for (const auto& [m, c] : terms_) s += c;
  return s;
}

mpq_class Polynomial::derivative_at_ones(std::size_t mark) const {
  mpq_class s = 0;
  for (const auto& [m, c] : terms_) s += c * m[mark];
  return s;
}

MarkedSeries::MarkedSeries(std::size_t marks, std::size_t precision) : marks_(marks), c_(precision + 1) {
  if (marks > kMaxMarks) throw Error(ErrorCode::kInvalidArgument, "too many mark variables");
}

MarkedSeries MarkedSeries::constant(std::size_t marks, std::size_t precision, const mpq_class& c) {
  MarkedSeries s(marks, precision);
  s.c_[0] = Polynomial::constant(c);
  return s;
}

MarkedSeries MarkedSeries::term(std::size_t marks, std::size_t precision, std::size_t zpow, const Monomial& m,
                                const mpq_class& c) {
  MarkedSeries s(marks, precision);
  if (zpow <= precision) s.c_[zpow] = Polynomial::monomial(m, c);
  return s;
}

MarkedSeries MarkedSeries::from_series(std::size_t marks, const PowerSeries& s) {
  MarkedSeries r(marks, s.precision());
  for (std::size_t i = 0; i <= s.precision(); ++i) r.c_[i] = Polynomial::constant(s[i]);
  return r;
}

const Polynomial& MarkedSeries::coeff(std::size_t n) const {
  if (n >= c_.size())
    throw Error(ErrorCode::kOutOfRange, "coefficient index " + std::to_string(n) +
                                            " beyond truncation order " + std::to_string(precision()));
  return c_[n];
}

mpq_class MarkedSeries::coeff(std::size_t n, const Monomial& m) const { return coeff(n).coeff(m); }

MarkedSeries MarkedSeries::truncated(std::size_t precision) const {
  if (precision > this->precision()) throw Error(ErrorCode::kOutOfRange, "cannot extend a marked series");
  MarkedSeries r(marks_, precision);
  std::copy_n(c_.begin(), precision + 1, r.c_.begin());
  return r;
}

MarkedSeries MarkedSeries::padded(std::size_t precision) const {
  MarkedSeries r(marks_, std::max(precision, this->precision()));
  std::copy(c_.begin(), c_.end(), r.c_.begin());
  return r;
}

MarkedSeries MarkedSeries::capped(std::size_t mark, std::uint32_t max_degree) const {
  MarkedSeries r(marks_, precision());
  for (std::size_t n = 0; n < c_.size(); ++n)
    for (const auto& [m, c] : c_[n].terms())
      if (m[mark] <= max_degree) r.c_[n].add_term(m, c);
  return r;
}

MarkedSeries MarkedSeries::reciprocal() const {
  const auto& head = c_[0].terms();
  if (head.size() != 1 || head.begin()->first != Monomial{})
    throw Error(ErrorCode::kInvalidArgument, "reciprocal needs a nonzero constant z^0 coefficient");
  const mpq_class inv = 1 / head.begin()->second;
  MarkedSeries r(marks_, precision());
  r.c_[0] = Polynomial::constant(inv);
  for (std::size_t k = 1; k < c_.size(); ++k) {
    Polynomial acc;
    for (std::size_t i = 1; i <= k; ++i) acc += c_[i] * r.c_[k - i];
    acc *= -inv;
    r.c_[k] = std::move(acc);
  }
  return r;
}

MarkedSeries MarkedSeries::substitute(const std::function<Monomial(std::size_t, const Monomial&)>& f,
                                      std::size_t new_marks) const {
  MarkedSeries r(new_marks, precision());
  for (std::size_t n = 0; n < c_.size(); ++n)
    for (const auto& [m, c] : c_[n].terms()) r.c_[n].add_term(f(n, m), c);
  return r;
}

PowerSeries MarkedSeries::at_ones() const {
  PowerSeries s(precision());
  for (std::size_t n = 0; n < c_.size(); ++n) s[n] = c_[n].at_ones();
  return s;
}

PowerSeries MarkedSeries::derivative_at_ones(std::size_t mark) const {
  if (mark >= marks_) throw Error(ErrorCode::kOutOfRange, "mark index out of range");
  PowerSeries s(precision());
  for (std::size_t n = 0; n < c_.size(); ++n) s[n] = c_[n].derivative_at_ones(mark);
  return s;
}

MarkedSeries& MarkedSeries::operator+=(const MarkedSeries& o) {
  c_.resize(std::min(c_.size(), o.c_.size()));
  for (std::size_t n = 0; n < c_.size(); ++n) c_[n] += o.c_[n];
  return *this;
}

MarkedSeries& MarkedSeries::operator-=(const MarkedSeries& o) {
  c_.resize(std::min(c_.size(), o.c_.size()));
  for (std::size_t n = 0; n < c_.size(); ++n) c_[n] -= o.c_[n];
  return *this;
}

MarkedSeries& MarkedSeries::operator*=(const MarkedSeries& o) {
  const std::size_t len = std::min(c_.size(), o.c_.size());
  std::vector<Polynomial> r(len);
  for (std::size_t i = 0; i < len; ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < len; ++j)
      if (!o.c_[j].is_zero()) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  marks_ = std::max(marks_, o.marks_);
  return *this;
}

MarkedSeries solve_fixed_point(std::size_t marks, std::size_t precision,
                               const std::function<MarkedSeries(const MarkedSeries&)>& rhs) {
  MarkedSeries s(marks, 0);
  for (std::size_t k = 0; k <= precision; ++k) {
    auto next = rhs(s.padded(k));
    if (next.precision() < k) throw Error(ErrorCode::kInvalidArgument, "fixed point: rhs lost precision");
    s = next.truncated(k);
  }
  return s;
}

std::string to_text(const MarkedSeries& s) {
  std::ostringstream out;
  for (std::size_t n = 0; n <= s.precision(); ++n)
    for (const auto& [m, c] : s[n].terms()) {
      out << n << "; ";
      for (std::size_t i = 0; i < s.marks(); ++i) out << (i ? "," : "") << m[i];
      out << "; " << c << '\n';
    }
  return out.str();
}

}  // namespace rans
