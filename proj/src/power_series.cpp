#include "rans/power_series.hpp"

#include <algorithm>
#include <sstream>

#include "rans/errors.hpp"

namespace rans {

namespace {

bool integral(const std::vector<mpq_class>& c) {
  return std::all_of(c.begin(), c.end(), [](const mpq_class& x) { return x.get_den() == 1; });
}

std::vector<mpz_class> numerators(const std::vector<mpq_class>& c, std::size_t len) {
  std::vector<mpz_class> out(len);
  for (std::size_t i = 0; i < len; ++i) out[i] = c[i].get_num();
  return out;
}

}  // namespace

PowerSeries::PowerSeries(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) {
  if (c_.empty()) c_.resize(1);
}

PowerSeries PowerSeries::constant(const mpq_class& value, std::size_t precision) {
  PowerSeries s(precision);
  s.c_[0] = value;
  return s;
}

PowerSeries PowerSeries::variable(std::size_t precision) {
  PowerSeries s(precision);
  if (precision >= 1) s.c_[1] = 1;
  return s;
}

const mpq_class& PowerSeries::coeff(std::size_t n) const {
  if (n >= c_.size())
    throw Error(ErrorCode::kOutOfRange, "coefficient index " + std::to_string(n) +
                                            " beyond truncation order " + std::to_string(precision()));
  return c_[n];
}

std::optional<std::size_t> PowerSeries::valuation() const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (sgn(c_[i]) != 0) return i;
  return std::nullopt;
}

bool PowerSeries::is_integral() const { return integral(c_); }

PowerSeries PowerSeries::truncated(std::size_t precision) const {
  if (precision > this->precision())
    throw Error(ErrorCode::kOutOfRange, "cannot extend a series beyond its precision");
  return PowerSeries(std::vector<mpq_class>(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(precision + 1)));
}

PowerSeries PowerSeries::shifted(std::size_t k) const {
  PowerSeries r(precision());
  for (std::size_t i = 0; i + k < c_.size(); ++i) r.c_[i + k] = c_[i];
  return r;
}

PowerSeries PowerSeries::derivative() const {
  if (precision() == 0) return PowerSeries(0);
  PowerSeries r(precision() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = c_[i] * static_cast<unsigned long>(i);
  return r;
}

PowerSeries PowerSeries::reciprocal() const {
  PowerSeries one = constant(1, precision());
  return one /= *this;
}

PowerSeries PowerSeries::pow(unsigned k) const {
  PowerSeries result = constant(1, precision());
  PowerSeries base = *this;
  while (k) {
    if (k & 1U) result *= base;
    k >>= 1U;
    if (k) base *= base;
  }
  return result;
}

mpq_class PowerSeries::evaluate(const mpq_class& z) const {
  mpq_class acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * z + c_[i];
  return acc;
}

PowerSeries& PowerSeries::operator+=(const PowerSeries& o) {
  c_.resize(std::min(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

PowerSeries& PowerSeries::operator-=(const PowerSeries& o) {
  c_.resize(std::min(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

PowerSeries& PowerSeries::operator*=(const PowerSeries& o) {
  const std::size_t len = std::min(c_.size(), o.c_.size());
  if (integral(c_) && integral(o.c_)) {
    const auto a = numerators(c_, len), b = numerators(o.c_, len);
    std::vector<mpz_class> r(len);
    for (std::size_t i = 0; i < len; ++i) {
      if (sgn(a[i]) == 0) continue;
      for (std::size_t j = 0; i + j < len; ++j)
        mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
    c_.assign(len, mpq_class(0));
    for (std::size_t i = 0; i < len; ++i) c_[i] = mpq_class(r[i]);
    return *this;
  }
  std::vector<mpq_class> r(len);
  for (std::size_t i = 0; i < len; ++i) {
    if (sgn(c_[i]) == 0) continue;
    for (std::size_t j = 0; i + j < len; ++j) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  return *this;
}

PowerSeries& PowerSeries::operator/=(const PowerSeries& o) {
  const auto v = o.valuation();
  if (!v) throw Error(ErrorCode::kInvalidArgument, "division by the zero series");
  // Cancel z^v explicitly: the numerator must vanish below z^v.
  for (std::size_t i = 0; i < *v && i < c_.size(); ++i)
    if (sgn(c_[i]) != 0)
      throw Error(ErrorCode::kInvalidArgument, "division would produce negative powers of z");
  const std::size_t prec = std::min(precision(), o.precision());
  if (prec < *v) throw Error(ErrorCode::kOutOfRange, "precision exhausted by valuation shift");
  const std::size_t len = prec - *v + 1;
  const mpq_class& lead = o.c_[*v];

  if (integral(c_) && integral(o.c_) && (lead == 1 || lead == -1)) {
    std::vector<mpz_class> a(len), b(len), r(len);
    for (std::size_t i = 0; i < len; ++i) {
      a[i] = c_[i + *v].get_num();
      b[i] = o.c_[i + *v].get_num();
    }
    const bool neg = lead < 0;
    for (std::size_t k = 0; k < len; ++k) {
      mpz_class acc = a[k];
      for (std::size_t i = 1; i <= k; ++i) mpz_submul(acc.get_mpz_t(), b[i].get_mpz_t(), r[k - i].get_mpz_t());
      r[k] = neg ? mpz_class(-acc) : acc;
    }
    c_.assign(len, mpq_class(0));
    for (std::size_t i = 0; i < len; ++i) c_[i] = mpq_class(r[i]);
    return *this;
  }

  std::vector<mpq_class> r(len);
  const mpq_class inv = 1 / lead;
  for (std::size_t k = 0; k < len; ++k) {
    mpq_class acc = c_[k + *v];
    for (std::size_t i = 1; i <= k; ++i) acc -= o.c_[i + *v] * r[k - i];
    r[k] = acc * inv;
  }
  c_ = std::move(r);
  return *this;
}

PowerSeries& PowerSeries::operator*=(const mpq_class& k) {
  for (auto& x : c_) x *= k;
  return *this;
}

PowerSeries& PowerSeries::operator/=(const mpq_class& k) {
  if (sgn(k) == 0) throw Error(ErrorCode::kInvalidArgument, "division by zero scalar");
  for (auto& x : c_) x /= k;
  return *this;
}

std::optional<std::size_t> first_mismatch(const PowerSeries& a, const PowerSeries& b) {
  const std::size_t len = std::min(a.precision(), b.precision()) + 1;
  for (std::size_t i = 0; i < len; ++i)
    if (a[i] != b[i]) return i;
  return std::nullopt;
}

std::string to_csv(const PowerSeries& s) {
  std::ostringstream out;
  const bool ints = s.is_integral();
  out << (ints ? "n,value\n" : "n,numerator,denominator\n");
  for (std::size_t i = 0; i <= s.precision(); ++i) {
    out << i << ',' << s[i].get_num();
    if (!ints) out << ',' << s[i].get_den();
    out << '\n';
  }
  return out.str();
}

}  // namespace rans
