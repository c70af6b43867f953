#include "congruence/laurent.hpp"

#include <algorithm>
#include <sstream>

namespace congruence {

Laurent Laurent::monomial(const Scalar& c, int degree) {
  Laurent r(c.field());
  if (!c.is_zero()) r.terms_.emplace_back(degree, c);
  return r;
}

void Laurent::check_same(const Laurent& b) const {
  if (!(field_ == b.field_))
    throw Error(ErrorCode::MixedFields, "Laurent operands belong to different fields");
}

int Laurent::min_degree() const {
  if (terms_.empty()) throw Error(ErrorCode::InvalidArgument, "degree of the zero Laurent polynomial");
  return terms_.front().first;
}

int Laurent::max_degree() const {
  if (terms_.empty()) throw Error(ErrorCode::InvalidArgument, "degree of the zero Laurent polynomial");
  return terms_.back().first;
}

Scalar Laurent::coeff(int degree) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), degree,
                             [](const Term& t, int d) { return t.first < d; });
  if (it != terms_.end() && it->first == degree) return it->second;
  return field_.zero();
}

namespace {

template <class Combine>
std::vector<Laurent::Term> merge(const std::vector<Laurent::Term>& a, const std::vector<Laurent::Term>& b,
                                 Combine combine, bool negate_b) {
  std::vector<Laurent::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, negate_b ? -b[j].second : b[j].second);
      ++j;
    } else {
      Scalar c = combine(a[i].second, b[j].second);
      if (!c.is_zero()) out.emplace_back(a[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Laurent Laurent::operator+(const Laurent& b) const {
  check_same(b);
  Laurent r(field_);
  r.terms_ = merge(terms_, b.terms_, [](const Scalar& x, const Scalar& y) { return x + y; }, false);
  return r;
}

Laurent Laurent::operator-(const Laurent& b) const {
  check_same(b);
  Laurent r(field_);
  r.terms_ = merge(terms_, b.terms_, [](const Scalar& x, const Scalar& y) { return x - y; }, true);
  return r;
}

Laurent Laurent::operator-() const {
  Laurent r(field_);
  r.terms_.reserve(terms_.size());
  for (const auto& [d, c] : terms_) r.terms_.emplace_back(d, -c);
  return r;
}

Laurent Laurent::operator*(const Laurent& b) const {
  check_same(b);
  Laurent r(field_);
  if (terms_.empty() || b.terms_.empty()) return r;
  if (terms_.size() == 1 || b.terms_.size() == 1) {
    const auto& single = terms_.size() == 1 ? terms_.front() : b.terms_.front();
    const auto& other = terms_.size() == 1 ? b.terms_ : terms_;
    r.terms_.reserve(other.size());
    for (const auto& [d, c] : other) r.terms_.emplace_back(d + single.first, c * single.second);
    return r;
  }
  const int lo = terms_.front().first + b.terms_.front().first;
  const int hi = terms_.back().first + b.terms_.back().first;
  std::vector<Scalar> acc(static_cast<std::size_t>(hi - lo + 1), field_.zero());
  for (const auto& [da, ca] : terms_)
    for (const auto& [db, cb] : b.terms_) acc[static_cast<std::size_t>(da + db - lo)] += ca * cb;
  for (std::size_t k = 0; k < acc.size(); ++k)
    if (!acc[k].is_zero()) r.terms_.emplace_back(lo + static_cast<int>(k), std::move(acc[k]));
  return r;
}

Laurent Laurent::scaled(const Scalar& c) const {
  Laurent r(field_);
  if (c.is_zero()) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& [d, x] : terms_) r.terms_.emplace_back(d, x * c);
  return r;
}

Laurent Laurent::shifted(int k) const {
  Laurent r = *this;
  for (auto& t : r.terms_) t.first += k;
  return r;
}

bool Laurent::operator==(const Laurent& b) const {
  if (terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].first != b.terms_[i].first || !(terms_[i].second == b.terms_[i].second)) return false;
  return true;
}

Scalar Laurent::eval_at_zero() const {
  if (!terms_.empty() && terms_.front().first < 0)
    throw Error(ErrorCode::NegativeDegree,
                "term of degree " + std::to_string(terms_.front().first) + " survives at t = 0");
  return coeff(0);
}

Scalar Laurent::evaluate(const Scalar& t) const {
  if (t.is_zero()) throw Error(ErrorCode::DivisionByZero, "Laurent polynomial evaluated at t = 0");
  Scalar sum = field_.zero();
  for (const auto& [d, c] : terms_) {
    Scalar power = field_.one();
    const Scalar base = d < 0 ? t.inverse() : t;
    for (int i = 0; i < (d < 0 ? -d : d); ++i) power *= base;
    sum += c * power;
  }
  return sum;
}

std::optional<Laurent::Unit> Laurent::unit() const {
  if (terms_.size() != 1) return std::nullopt;
  return Unit{terms_.front().second, terms_.front().first};
}

std::string Laurent::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    os << (i ? " + " : "") << terms_[i].second.to_string() << "*t^" << terms_[i].first;
  return os.str();
}

}  // namespace congruence
