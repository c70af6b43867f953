#include "congruence/field.hpp"

#include <algorithm>
#include <cstring>
#include <sstream>

namespace congruence {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::ShapeMismatch: return "shape_mismatch";
    case ErrorCode::MixedFields: return "mixed_fields";
    case ErrorCode::DivisionByZero: return "division_by_zero";
    case ErrorCode::NoSquareRoot: return "no_square_root";
    case ErrorCode::NegativeDegree: return "negative_degree";
    case ErrorCode::Singular: return "singular";
    case ErrorCode::DependentColumns: return "dependent_columns";
    case ErrorCode::NoSolution: return "no_solution";
    case ErrorCode::BudgetExceeded: return "budget_exceeded";
    case ErrorCode::UnsupportedField: return "unsupported_field";
    case ErrorCode::NotFound: return "not_found";
    case ErrorCode::RankPrecondition: return "rank_precondition";
    case ErrorCode::HypothesisViolation: return "hypothesis_violation";
    case ErrorCode::VerificationFailed: return "verification_failed";
    case ErrorCode::TowerTooDeep: return "tower_too_deep";
    case ErrorCode::MalformedInput: return "malformed_input";
  }
  return "unknown";
}

namespace {

using detail::FieldState;
using detail::TowerValue;

constexpr std::size_t kHalf = kMaxTowerCoeffs / 2;

inline uint32_t addm(uint32_t a, uint32_t b, uint32_t p) {
  const uint32_t s = a + b;
  return s >= p ? s - p : s;
}
inline uint32_t subm(uint32_t a, uint32_t b, uint32_t p) { return a >= b ? a - b : a + p - b; }
inline uint32_t mulm(uint32_t a, uint32_t b, uint32_t p) {
  return static_cast<uint32_t>(static_cast<uint64_t>(a) * b % p);
}

uint32_t powm(uint32_t a, uint64_t e, uint32_t p) {
  uint64_t result = 1;
  uint64_t base = a % p;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<uint32_t>(result);
}

inline uint32_t invm(uint32_t a, uint32_t p) { return powm(a, p - 2, p); }

bool is_prime(uint32_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Tonelli-Shanks; a must be a quadratic residue mod p.
uint32_t sqrt_mod_p(uint32_t a, uint32_t p) {
  if (a == 0) return 0;
  uint64_t q = p - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  uint32_t z = 2;
  while (powm(z, (p - 1) / 2, p) != p - 1) ++z;
  uint64_t m = s;
  uint64_t c = powm(z, q, p);
  uint64_t t = powm(a, q, p);
  uint64_t r = powm(a, (q + 1) / 2, p);
  while (t != 1) {
    uint64_t i = 0;
    uint64_t tt = t;
    while (tt != 1) {
      tt = tt * tt % p;
      ++i;
    }
    uint64_t b = c;
    for (uint64_t j = 0; j + i + 1 < m; ++j) b = b * b % p;
    m = i;
    c = b * b % p;
    t = t * c % p;
    r = r * b % p;
  }
  return static_cast<uint32_t>(r);
}

inline bool raw_is_zero(const uint32_t* a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != 0) return false;
  return true;
}

inline void raw_add(const uint32_t* a, const uint32_t* b, uint32_t* out, std::size_t n, uint32_t p) {
  for (std::size_t i = 0; i < n; ++i) out[i] = addm(a[i], b[i], p);
}
inline void raw_sub(const uint32_t* a, const uint32_t* b, uint32_t* out, std::size_t n, uint32_t p) {
  for (std::size_t i = 0; i < n; ++i) out[i] = subm(a[i], b[i], p);
}
inline void raw_scale(const uint32_t* a, uint32_t c, uint32_t* out, std::size_t n, uint32_t p) {
  for (std::size_t i = 0; i < n; ++i) out[i] = mulm(a[i], c, p);
}

// out = a*b at `level`; out must not alias a or b.
void raw_mul(const FieldState& f, int level, const uint32_t* a, const uint32_t* b, uint32_t* out) {
  const uint32_t p = f.p;
  if (level == 0) {
    out[0] = mulm(a[0], b[0], p);
    return;
  }
  const std::size_t h = std::size_t{1} << (level - 1);
  const uint32_t* a0 = a;
  const uint32_t* a1 = a + h;
  const uint32_t* b0 = b;
  const uint32_t* b1 = b + h;
  const bool a1z = raw_is_zero(a1, h);
  const bool b1z = raw_is_zero(b1, h);
  if (a1z && b1z) {
    raw_mul(f, level - 1, a0, b0, out);
    std::fill(out + h, out + 2 * h, 0u);
    return;
  }
  if (a1z || b1z) {
    // (x)(y0 + y1 t) = x*y0 + x*y1 t
    const uint32_t* x = a1z ? a0 : b0;
    const uint32_t* y = a1z ? b : a;
    raw_mul(f, level - 1, x, y, out);
    raw_mul(f, level - 1, x, y + h, out + h);
    return;
  }
  uint32_t m0[kHalf], m1[kHalf], m2[kHalf], sa[kHalf], sb[kHalf], am1[kHalf];
  raw_mul(f, level - 1, a0, b0, m0);
  raw_mul(f, level - 1, a1, b1, m1);
  raw_add(a0, a1, sa, h, p);
  raw_add(b0, b1, sb, h, p);
  raw_mul(f, level - 1, sa, sb, m2);
  raw_mul(f, level - 1, f.alpha[level].data(), m1, am1);
  for (std::size_t i = 0; i < h; ++i) {
    out[h + i] = subm(subm(m2[i], m0[i], p), m1[i], p);
    out[i] = addm(m0[i], am1[i], p);
  }
}

// Norm x0^2 - a_k x1^2 from level k down to level k-1.
void raw_norm(const FieldState& f, int level, const uint32_t* a, uint32_t* out) {
  const std::size_t h = std::size_t{1} << (level - 1);
  uint32_t sq0[kHalf], sq1[kHalf], t[kHalf];
  raw_mul(f, level - 1, a, a, sq0);
  raw_mul(f, level - 1, a + h, a + h, sq1);
  raw_mul(f, level - 1, f.alpha[level].data(), sq1, t);
  raw_sub(sq0, t, out, h, f.p);
}

void raw_inv(const FieldState& f, int level, const uint32_t* a, uint32_t* out) {
  if (level == 0) {
    out[0] = invm(a[0], f.p);
    return;
  }
  const std::size_t h = std::size_t{1} << (level - 1);
  uint32_t n[kHalf], ninv[kHalf], tmp[kHalf];
  raw_norm(f, level, a, n);
  raw_inv(f, level - 1, n, ninv);
  raw_mul(f, level - 1, a, ninv, out);
  raw_mul(f, level - 1, a + h, ninv, tmp);
  for (std::size_t i = 0; i < h; ++i) out[h + i] = tmp[i] == 0 ? 0 : f.p - tmp[i];
}

// Whether a (viewed in F_(level)) is a square there.
bool raw_is_square(const FieldState& f, int level, const uint32_t* a) {
  const std::size_t n = std::size_t{1} << level;
  if (raw_is_zero(a, n)) return true;
  if (level == 0) return powm(a[0], (f.p - 1) / 2, f.p) == 1;
  const std::size_t h = n / 2;
  // Everything in F_(level-1) is a square one level up.
  if (raw_is_zero(a + h, h)) return true;
  uint32_t norm[kHalf];
  raw_norm(f, level, a, norm);
  return raw_is_square(f, level - 1, norm);
}

// Some root of a, which must be a square in F_(level).
void raw_sqrt(const FieldState& f, int level, const uint32_t* a, uint32_t* out) {
  const uint32_t p = f.p;
  if (level == 0) {
    out[0] = sqrt_mod_p(a[0], p);
    return;
  }
  const std::size_t h = std::size_t{1} << (level - 1);
  const uint32_t* x0 = a;
  const uint32_t* x1 = a + h;
  std::fill(out, out + 2 * h, 0u);
  if (raw_is_zero(x1, h)) {
    if (raw_is_square(f, level - 1, x0)) {
      raw_sqrt(f, level - 1, x0, out);
    } else {
      // x0 / a_k is a square in F_(level-1); sqrt(x0) = sqrt(x0 / a_k) * t_k.
      uint32_t ainv[kHalf], q[kHalf];
      raw_inv(f, level - 1, f.alpha[level].data(), ainv);
      raw_mul(f, level - 1, x0, ainv, q);
      raw_sqrt(f, level - 1, q, out + h);
    }
    return;
  }
  // (u + v t)^2 = x0 + x1 t  <=>  u^2 = (x0 +- sqrt(N(x))) / 2, v = x1 / (2u).
  uint32_t n[kHalf], w[kHalf], u2[kHalf], tmp[kHalf];
  raw_norm(f, level, a, n);
  raw_sqrt(f, level - 1, n, w);
  const uint32_t half = invm(2, p);
  raw_add(x0, w, tmp, h, p);
  raw_scale(tmp, half, u2, h, p);
  if (!raw_is_square(f, level - 1, u2)) {
    raw_sub(x0, w, tmp, h, p);
    raw_scale(tmp, half, u2, h, p);
  }
  uint32_t u[kHalf], two_u[kHalf], inv2u[kHalf];
  raw_sqrt(f, level - 1, u2, u);
  raw_scale(u, 2, two_u, h, p);
  raw_inv(f, level - 1, two_u, inv2u);
  std::copy(u, u + h, out);
  raw_mul(f, level - 1, x1, inv2u, out + h);
}

void trim(TowerValue& v) {
  while (v.level > 0) {
    const std::size_t h = std::size_t{1} << (v.level - 1);
    if (!raw_is_zero(v.c.data() + h, h)) break;
    --v.level;
  }
}

uint64_t sat_pow(uint64_t base, uint64_t exp) {
  uint64_t r = 1;
  for (uint64_t i = 0; i < exp; ++i) {
    if (r > UINT64_MAX / base) return UINT64_MAX;
    r *= base;
  }
  return r;
}

void decode_index(uint64_t index, uint32_t p, std::size_t n, uint32_t* out) {
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = static_cast<uint32_t>(index % p);
    index /= p;
  }
}

}  // namespace

// ---------------------------------------------------------------- Field

Field Field::rational() {
  auto s = std::make_shared<FieldState>();
  s->kind = FieldKind::Rational;
  return Field(std::move(s));
}

Field Field::tower(uint32_t p) {
  if (p == 2) throw Error(ErrorCode::InvalidArgument, "characteristic 2 is not supported");
  if (p >= (1u << 31) || !is_prime(p))
    throw Error(ErrorCode::InvalidArgument, "tower base must be an odd prime below 2^31, got " + std::to_string(p));
  auto s = std::make_shared<FieldState>();
  s->kind = FieldKind::Tower;
  s->p = p;
  return Field(std::move(s));
}

FieldKind Field::kind() const { return state_->kind; }
uint32_t Field::prime() const { return state_->p; }
int Field::top_level() const { return state_->top.load(std::memory_order_acquire); }

void Field::ensure_level(int level) const {
  if (!is_tower()) throw Error(ErrorCode::UnsupportedField, "tower levels requested on a rational field");
  if (level > kMaxTowerLevel)
    throw Error(ErrorCode::TowerTooDeep, "tower level " + std::to_string(level) + " exceeds the supported maximum");
  if (level <= top_level()) return;
  std::lock_guard lock(state_->extend_mutex);
  FieldState& f = *state_;
  for (int k = f.top.load(std::memory_order_relaxed) + 1; k <= level; ++k) {
    // First non-square of F_(k-1) in canonical order, skipping the subfield.
    const int m = k - 1;
    const std::size_t n = std::size_t{1} << m;
    uint64_t index = m == 0 ? 1 : sat_pow(f.p, n / 2);
    std::array<uint32_t, kHalf> cand{};
    for (;; ++index) {
      decode_index(index, f.p, n, cand.data());
      if (!raw_is_square(f, m, cand.data())) break;
    }
    f.alpha[k] = cand;
    f.top.store(k, std::memory_order_release);
  }
}

std::vector<Scalar> Field::adjoined() const {
  std::vector<Scalar> out;
  if (!is_tower()) return out;
  for (int k = 1; k <= top_level(); ++k) {
    const std::size_t n = std::size_t{1} << (k - 1);
    out.push_back(from_coeffs(k - 1, std::span<const uint32_t>(state_->alpha[k].data(), n)));
  }
  return out;
}

uint64_t Field::level_size(int level) const {
  return sat_pow(prime(), uint64_t{1} << level);
}

int Field::level_for_size(uint64_t min_size) const {
  for (int k = 0; k <= kMaxTowerLevel; ++k)
    if (level_size(k) >= min_size) return k;
  throw Error(ErrorCode::TowerTooDeep, "no supported tower level has " + std::to_string(min_size) + " elements");
}

Scalar Field::zero() const {
  if (is_tower()) return Scalar(state_, TowerValue{});
  return Scalar(state_, mpq_class(0));
}

Scalar Field::one() const { return from_int(1); }

Scalar Field::from_int(int64_t v) const {
  if (!is_tower()) return Scalar(state_, mpq_class(mpz_class(std::to_string(v))));
  TowerValue t;
  const int64_t p = state_->p;
  t.c[0] = static_cast<uint32_t>(((v % p) + p) % p);
  return Scalar(state_, t);
}

Scalar Field::from_rational(const mpq_class& q) const {
  if (!is_tower()) {
    mpq_class c = q;
    c.canonicalize();
    return Scalar(state_, std::move(c));
  }
  const mpz_class p = state_->p;
  mpz_class num = q.get_num() % p;
  mpz_class den = q.get_den() % p;
  if (den == 0) throw Error(ErrorCode::DivisionByZero, "denominator vanishes mod p");
  if (num < 0) num += p;
  return from_int(num.get_si()) / from_int(den.get_si());
}

Scalar Field::from_coeffs(int level, std::span<const uint32_t> coeffs) const {
  if (!is_tower()) throw Error(ErrorCode::UnsupportedField, "coefficient form requires a tower field");
  const std::size_t n = std::size_t{1} << level;
  if (coeffs.size() != n)
    throw Error(ErrorCode::MalformedInput, "level " + std::to_string(level) + " needs " + std::to_string(n) + " coefficients");
  ensure_level(level);
  TowerValue t;
  t.level = static_cast<uint8_t>(level);
  for (std::size_t i = 0; i < n; ++i) t.c[i] = coeffs[i] % state_->p;
  trim(t);
  return Scalar(state_, t);
}

Scalar Field::element(int level, uint64_t index) const {
  ensure_level(level);
  TowerValue t;
  t.level = static_cast<uint8_t>(level);
  decode_index(index, state_->p, std::size_t{1} << level, t.c.data());
  trim(t);
  return Scalar(state_, t);
}

Scalar Field::sample(Rng& rng, uint64_t min_size) const {
  if (!is_tower()) {
    const auto bound = static_cast<int64_t>(std::min<uint64_t>(min_size, 1u << 30));
    return from_int(rng.between(-bound, bound));
  }
  const int level = level_for_size(min_size);
  ensure_level(level);
  TowerValue t;
  t.level = static_cast<uint8_t>(level);
  for (std::size_t i = 0; i < (std::size_t{1} << level); ++i)
    t.c[i] = static_cast<uint32_t>(rng.below(state_->p));
  trim(t);
  return Scalar(state_, t);
}

// ---------------------------------------------------------------- Scalar

void Scalar::check_same(const Scalar& b) const {
  if (state_ != b.state_ || state_ == nullptr)
    throw Error(ErrorCode::MixedFields, "operands belong to different field configurations");
}

bool Scalar::is_zero() const {
  if (kind() == FieldKind::Rational) return sgn(rational()) == 0;
  const auto& t = tower();
  return t.level == 0 && t.c[0] == 0;
}

bool Scalar::is_one() const {
  if (kind() == FieldKind::Rational) return rational() == 1;
  const auto& t = tower();
  return t.level == 0 && t.c[0] == 1;
}

int Scalar::level() const { return kind() == FieldKind::Tower ? tower().level : 0; }

std::span<const uint32_t> Scalar::coeffs() const {
  const auto& t = tower();
  return {t.c.data(), std::size_t{1} << t.level};
}

const mpq_class& Scalar::rational() const { return std::get<mpq_class>(value_); }

Scalar Scalar::operator+(const Scalar& b) const {
  check_same(b);
  if (kind() == FieldKind::Rational) return Scalar(state_, mpq_class(rational() + b.rational()));
  const auto& x = tower();
  const auto& y = b.tower();
  TowerValue r;
  r.level = std::max(x.level, y.level);
  raw_add(x.c.data(), y.c.data(), r.c.data(), std::size_t{1} << r.level, state_->p);
  trim(r);
  return Scalar(state_, r);
}

Scalar Scalar::operator-(const Scalar& b) const {
  check_same(b);
  if (kind() == FieldKind::Rational) return Scalar(state_, mpq_class(rational() - b.rational()));
  const auto& x = tower();
  const auto& y = b.tower();
  TowerValue r;
  r.level = std::max(x.level, y.level);
  raw_sub(x.c.data(), y.c.data(), r.c.data(), std::size_t{1} << r.level, state_->p);
  trim(r);
  return Scalar(state_, r);
}

Scalar Scalar::operator-() const {
  if (kind() == FieldKind::Rational) return Scalar(state_, mpq_class(-rational()));
  const auto& x = tower();
  TowerValue r;
  r.level = x.level;
  for (std::size_t i = 0; i < (std::size_t{1} << x.level); ++i) r.c[i] = x.c[i] == 0 ? 0 : state_->p - x.c[i];
  return Scalar(state_, r);
}

Scalar Scalar::operator*(const Scalar& b) const {
  check_same(b);
  if (kind() == FieldKind::Rational) return Scalar(state_, mpq_class(rational() * b.rational()));
  const auto& x = tower();
  const auto& y = b.tower();
  TowerValue r;
  if (x.level == 0 || y.level == 0) {
    const auto& wide = x.level == 0 ? y : x;
    const uint32_t c = x.level == 0 ? x.c[0] : y.c[0];
    if (c == 0) return Scalar(state_, r);
    r.level = wide.level;
    raw_scale(wide.c.data(), c, r.c.data(), std::size_t{1} << r.level, state_->p);
    return Scalar(state_, r);
  }
  r.level = std::max(x.level, y.level);
  raw_mul(*state_, r.level, x.c.data(), y.c.data(), r.c.data());
  trim(r);
  return Scalar(state_, r);
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  if (kind() == FieldKind::Rational) return Scalar(state_, mpq_class(1 / rational()));
  const auto& x = tower();
  TowerValue r;
  r.level = x.level;
  raw_inv(*state_, x.level, x.c.data(), r.c.data());
  trim(r);
  return Scalar(state_, r);
}

Scalar Scalar::operator/(const Scalar& b) const {
  check_same(b);
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero");
  if (kind() == FieldKind::Rational) return Scalar(state_, mpq_class(rational() / b.rational()));
  return *this * b.inverse();
}

bool Scalar::operator==(const Scalar& b) const {
  if (state_ != b.state_) return false;
  if (state_ == nullptr) return true;
  if (kind() == FieldKind::Rational) return rational() == b.rational();
  const auto& x = tower();
  const auto& y = b.tower();
  if (x.level != y.level) return false;
  return std::equal(x.c.begin(), x.c.begin() + (std::size_t{1} << x.level), y.c.begin());
}

std::strong_ordering Scalar::operator<=>(const Scalar& b) const {
  check_same(b);
  if (kind() == FieldKind::Rational) {
    const int c = cmp(rational(), b.rational());
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }
  const auto& x = tower();
  const auto& y = b.tower();
  if (x.level != y.level) return x.level <=> y.level;
  for (std::size_t i = std::size_t{1} << x.level; i-- > 0;)
    if (x.c[i] != y.c[i]) return x.c[i] <=> y.c[i];
  return std::strong_ordering::equal;
}

std::string Scalar::to_string() const {
  if (!bound()) return "<unbound>";
  if (kind() == FieldKind::Rational) return rational().get_num().get_str() + "/" + rational().get_den().get_str();
  std::ostringstream os;
  os << '[' << level() << ':';
  const auto c = coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << ']';
  return os.str();
}

bool is_square(const Scalar& a) {
  if (a.kind() == FieldKind::Rational) {
    const mpq_class& q = a.rational();
    if (sgn(q) < 0) return false;
    return mpz_perfect_square_p(q.get_num().get_mpz_t()) && mpz_perfect_square_p(q.get_den().get_mpz_t());
  }
  const auto& t = a.tower();
  return raw_is_square(*a.state_, t.level, t.c.data());
}

Scalar sqrt(const Scalar& a) {
  if (a.kind() == FieldKind::Rational) {
    if (!is_square(a))
      throw Error(ErrorCode::NoSquareRoot, a.to_string() + " is not a square in Q");
    mpz_class num, den;
    mpz_sqrt(num.get_mpz_t(), a.rational().get_num().get_mpz_t());
    mpz_sqrt(den.get_mpz_t(), a.rational().get_den().get_mpz_t());
    return Scalar(a.state_, mpq_class(num, den));
  }
  const auto& t = a.tower();
  int level = t.level;
  if (!raw_is_square(*a.state_, level, t.c.data())) {
    ++level;
    a.field().ensure_level(level);
  }
  TowerValue r;
  r.level = static_cast<uint8_t>(level);
  raw_sqrt(*a.state_, level, t.c.data(), r.c.data());
  trim(r);
  Scalar root(a.state_, r);
  Scalar other = -root;
  return other < root ? other : root;
}

}  // namespace congruence
