#pragma once

// Exact scalars: arbitrary-precision rationals and prime-field residues
// behind a single runtime-tagged value type. No rounding anywhere.

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace hlr {

// Arbitrary-precision signed integer, sign + base-2^32 magnitude.
// Division is binary long division; plenty fast at the matrix sizes
// this library targets (ambient dimensions of a few hundred).
class BigInt {
public:
  BigInt() = default;
  BigInt(std::int64_t v) {
    if (v == 0) return;
    sign_ = v < 0 ? -1 : 1;
    // avoid UB on INT64_MIN
    std::uint64_t m = v < 0 ? ~static_cast<std::uint64_t>(v) + 1 : static_cast<std::uint64_t>(v);
    limbs_.push_back(static_cast<std::uint32_t>(m & 0xffffffffu));
    if (m >> 32) limbs_.push_back(static_cast<std::uint32_t>(m >> 32));
  }

  static BigInt from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("BigInt: empty literal");
    std::size_t i = 0;
    int sign = 1;
    if (s[0] == '-') { sign = -1; i = 1; }
    else if (s[0] == '+') { i = 1; }
    if (i == s.size()) throw std::invalid_argument("BigInt: bare sign");
    BigInt r;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9')
        throw std::invalid_argument("BigInt: bad digit in '" + s + "'");
      r = r.mul_small(10);
      r = r + BigInt(s[i] - '0');
    }
    if (!r.is_zero()) r.sign_ = sign;
    return r;
  }

  bool is_zero() const { return sign_ == 0; }
  bool is_negative() const { return sign_ < 0; }
  bool is_one() const { return sign_ == 1 && limbs_.size() == 1 && limbs_[0] == 1; }

  BigInt operator-() const {
    BigInt r = *this;
    r.sign_ = -r.sign_;
    return r;
  }

  BigInt abs() const {
    BigInt r = *this;
    if (r.sign_ < 0) r.sign_ = 1;
    return r;
  }

  friend BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    BigInt r;
    if (a.sign_ == b.sign_) {
      r.limbs_ = add_mag(a.limbs_, b.limbs_);
      r.sign_ = a.sign_;
    } else {
      int c = cmp_mag(a.limbs_, b.limbs_);
      if (c == 0) return BigInt();
      if (c > 0) {
        r.limbs_ = sub_mag(a.limbs_, b.limbs_);
        r.sign_ = a.sign_;
      } else {
        r.limbs_ = sub_mag(b.limbs_, a.limbs_);
        r.sign_ = b.sign_;
      }
    }
    return r;
  }

  friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

  friend BigInt operator*(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0 || b.sign_ == 0) return BigInt();
    BigInt r;
    r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
      std::uint64_t carry = 0;
      for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
        std::uint64_t cur = static_cast<std::uint64_t>(a.limbs_[i]) * b.limbs_[j] +
                            r.limbs_[i + j] + carry;
        r.limbs_[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffu);
        carry = cur >> 32;
      }
      std::size_t k = i + b.limbs_.size();
      while (carry) {
        std::uint64_t cur = r.limbs_[k] + carry;
        r.limbs_[k] = static_cast<std::uint32_t>(cur & 0xffffffffu);
        carry = cur >> 32;
        ++k;
      }
    }
    r.trim();
    r.sign_ = a.sign_ * b.sign_;
    return r;
  }

  // Truncated division: quotient rounds toward zero, remainder has the
  // sign of the dividend (|r| < |b|).
  friend void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.sign_ == 0) throw std::domain_error("BigInt: division by zero");
    int c = cmp_mag(a.limbs_, b.limbs_);
    if (c < 0) { q = BigInt(); r = a; return; }
    // binary long division on magnitudes
    BigInt qm, rm;
    int bits = static_cast<int>(a.limbs_.size()) * 32;
    for (int i = bits - 1; i >= 0; --i) {
      rm = rm.shl1();
      if (a.bit(i)) rm.set_bit0();
      if (cmp_mag(rm.limbs_, b.limbs_) >= 0) {
        rm.limbs_ = sub_mag(rm.limbs_, b.limbs_);
        rm.trim();
        qm.set_bit(i);
      }
    }
    qm.trim(); rm.trim();
    qm.sign_ = qm.limbs_.empty() ? 0 : a.sign_ * b.sign_;
    rm.sign_ = rm.limbs_.empty() ? 0 : a.sign_;
    q = qm; r = rm;
  }

  friend BigInt operator/(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    divmod(a, b, q, r);
    return q;
  }

  friend BigInt operator%(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    divmod(a, b, q, r);
    return r;
  }

  friend bool operator==(const BigInt& a, const BigInt& b) {
    return a.sign_ == b.sign_ && a.limbs_ == b.limbs_;
  }
  friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
  friend bool operator<(const BigInt& a, const BigInt& b) {
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
    int c = cmp_mag(a.limbs_, b.limbs_);
    return a.sign_ >= 0 ? c < 0 : c > 0;
  }

  static BigInt gcd(BigInt a, BigInt b) {
    // binary gcd on magnitudes
    a.sign_ = a.limbs_.empty() ? 0 : 1;
    b.sign_ = b.limbs_.empty() ? 0 : 1;
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    int shift = 0;
    while (a.even() && b.even()) { a = a.shr1(); b = b.shr1(); ++shift; }
    while (a.even()) a = a.shr1();
    while (!b.is_zero()) {
      while (b.even()) b = b.shr1();
      if (cmp_mag(a.limbs_, b.limbs_) > 0) std::swap(a, b);
      b.limbs_ = sub_mag(b.limbs_, a.limbs_);
      b.trim();
      if (b.limbs_.empty()) b.sign_ = 0;
    }
    for (int i = 0; i < shift; ++i) a = a.shl1();
    return a;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    BigInt t = abs();
    std::string out;
    BigInt ten9(1000000000);
    while (!t.is_zero()) {
      BigInt q, r;
      divmod(t, ten9, q, r);
      std::uint64_t chunk = r.to_u64();
      for (int i = 0; i < 9; ++i) {
        out.push_back(static_cast<char>('0' + chunk % 10));
        chunk /= 10;
      }
      t = q;
    }
    while (out.size() > 1 && out.back() == '0') out.pop_back();
    if (sign_ < 0) out.push_back('-');
    std::string rev(out.rbegin(), out.rend());
    return rev;
  }

  // valid only when the value fits; used for residue extraction
  std::int64_t to_i64() const {
    std::uint64_t m = to_u64();
    if (m > static_cast<std::uint64_t>(INT64_MAX))
      throw std::overflow_error("BigInt: does not fit in int64");
    return sign_ < 0 ? -static_cast<std::int64_t>(m) : static_cast<std::int64_t>(m);
  }

private:
  int sign_ = 0;
  std::vector<std::uint32_t> limbs_;

  std::uint64_t to_u64() const {
    if (limbs_.size() > 2) throw std::overflow_error("BigInt: does not fit in 64 bits");
    std::uint64_t m = 0;
    if (limbs_.size() > 1) m = static_cast<std::uint64_t>(limbs_[1]) << 32;
    if (!limbs_.empty()) m |= limbs_[0];
    return m;
  }

  BigInt mul_small(std::uint32_t f) const {
    BigInt r;
    if (sign_ == 0 || f == 0) return r;
    std::uint64_t carry = 0;
    for (std::uint32_t limb : limbs_) {
      std::uint64_t cur = static_cast<std::uint64_t>(limb) * f + carry;
      r.limbs_.push_back(static_cast<std::uint32_t>(cur & 0xffffffffu));
      carry = cur >> 32;
    }
    if (carry) r.limbs_.push_back(static_cast<std::uint32_t>(carry));
    r.sign_ = sign_;
    return r;
  }

  bool even() const { return limbs_.empty() || (limbs_[0] & 1u) == 0; }
  bool bit(int i) const {
    std::size_t limb = static_cast<std::size_t>(i) / 32;
    if (limb >= limbs_.size()) return false;
    return (limbs_[limb] >> (i % 32)) & 1u;
  }
  void set_bit(int i) {
    std::size_t limb = static_cast<std::size_t>(i) / 32;
    if (limb >= limbs_.size()) limbs_.resize(limb + 1, 0);
    limbs_[limb] |= (1u << (i % 32));
    sign_ = 1;
  }
  void set_bit0() {
    if (limbs_.empty()) limbs_.push_back(0);
    limbs_[0] |= 1u;
    sign_ = 1;
  }
  BigInt shl1() const {
    BigInt r;
    if (limbs_.empty()) return r;
    std::uint32_t carry = 0;
    for (std::uint32_t limb : limbs_) {
      r.limbs_.push_back((limb << 1) | carry);
      carry = limb >> 31;
    }
    if (carry) r.limbs_.push_back(carry);
    r.sign_ = sign_ == 0 ? 1 : sign_;
    return r;
  }
  BigInt shr1() const {
    BigInt r = *this;
    std::uint32_t carry = 0;
    for (std::size_t i = r.limbs_.size(); i-- > 0;) {
      std::uint32_t next = r.limbs_[i] & 1u;
      r.limbs_[i] = (r.limbs_[i] >> 1) | (carry << 31);
      carry = next;
    }
    r.trim();
    if (r.limbs_.empty()) r.sign_ = 0;
    return r;
  }

  void trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.empty()) sign_ = 0;
  }

  static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;) {
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
  }
  static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b) {
    const auto& big = a.size() >= b.size() ? a : b;
    const auto& small = a.size() >= b.size() ? b : a;
    std::vector<std::uint32_t> r;
    r.reserve(big.size() + 1);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < big.size(); ++i) {
      std::uint64_t cur = carry + big[i] + (i < small.size() ? small[i] : 0);
      r.push_back(static_cast<std::uint32_t>(cur & 0xffffffffu));
      carry = cur >> 32;
    }
    if (carry) r.push_back(static_cast<std::uint32_t>(carry));
    return r;
  }
  // requires |a| >= |b|
  static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> r;
    r.reserve(a.size());
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      std::int64_t cur = static_cast<std::int64_t>(a[i]) - borrow -
                         (i < b.size() ? static_cast<std::int64_t>(b[i]) : 0);
      if (cur < 0) { cur += (1ll << 32); borrow = 1; } else { borrow = 0; }
      r.push_back(static_cast<std::uint32_t>(cur));
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  }
};

// Reduced fraction num/den with den > 0, gcd(|num|, den) = 1.
class Rational {
public:
  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t n) : num_(n), den_(1) {}
  Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("Rational: division by zero");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
  }
  Rational operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

  std::string to_string() const {
    if (den_.is_one()) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
  }

private:
  BigInt num_, den_;

  void normalize() {
    if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
    if (num_.is_zero()) { den_ = BigInt(1); return; }
    if (den_.is_negative()) { num_ = -num_; den_ = -den_; }
    BigInt g = BigInt::gcd(num_.abs(), den_);
    if (!g.is_one()) { num_ = num_ / g; den_ = den_ / g; }
  }
};

enum class FieldKind { rationals, prime_field };

struct FieldDescriptor {
  FieldKind kind = FieldKind::rationals;
  std::int64_t characteristic = 0;  // 0 for Q, prime p otherwise

  static FieldDescriptor rationals() { return {FieldKind::rationals, 0}; }
  static FieldDescriptor prime(std::int64_t p) {
    if (p < 2) throw std::invalid_argument("FieldDescriptor: characteristic must be prime");
    for (std::int64_t d = 2; d * d <= p; ++d)
      if (p % d == 0) throw std::invalid_argument("FieldDescriptor: characteristic must be prime");
    return {FieldKind::prime_field, p};
  }

  friend bool operator==(const FieldDescriptor& a, const FieldDescriptor& b) {
    return a.kind == b.kind && a.characteristic == b.characteristic;
  }
  friend bool operator!=(const FieldDescriptor& a, const FieldDescriptor& b) { return !(a == b); }
};

// A field element tagged with its field. Rationals are stored as reduced
// fractions, prime-field elements as the canonical residue in [0, p).
class Scalar {
public:
  Scalar() = default;  // 0 in Q; usable as a placeholder before assignment

  static Scalar zero(const FieldDescriptor& f) { return from_int(f, 0); }
  static Scalar one(const FieldDescriptor& f) { return from_int(f, 1); }

  static Scalar from_int(const FieldDescriptor& f, std::int64_t v) {
    Scalar s;
    s.field_ = f;
    if (f.kind == FieldKind::rationals) {
      s.rat_ = Rational(v);
    } else {
      std::int64_t p = f.characteristic;
      s.res_ = ((v % p) + p) % p;
    }
    return s;
  }

  static Scalar rational(BigInt num, BigInt den) {
    Scalar s;
    s.field_ = FieldDescriptor::rationals();
    s.rat_ = Rational(std::move(num), std::move(den));
    return s;
  }

  // "p/q" or "n" over Q; decimal residue over F_p
  static Scalar parse(const FieldDescriptor& f, const std::string& text) {
    if (f.kind == FieldKind::rationals) {
      auto slash = text.find('/');
      if (slash == std::string::npos)
        return rational(BigInt::from_string(text), BigInt(1));
      return rational(BigInt::from_string(text.substr(0, slash)),
                      BigInt::from_string(text.substr(slash + 1)));
    }
    BigInt v = BigInt::from_string(text);
    BigInt p(f.characteristic);
    BigInt r = v % p;
    std::int64_t res = r.to_i64();
    return from_int(f, res);
  }

  const FieldDescriptor& field() const { return field_; }
  bool is_zero() const {
    return field_.kind == FieldKind::rationals ? rat_.is_zero() : res_ == 0;
  }
  bool is_one() const { return *this == one(field_); }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    a.require_same(b);
    Scalar r;
    r.field_ = a.field_;
    if (a.field_.kind == FieldKind::rationals) r.rat_ = a.rat_ + b.rat_;
    else r.res_ = (a.res_ + b.res_) % a.field_.characteristic;
    return r;
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    a.require_same(b);
    Scalar r;
    r.field_ = a.field_;
    if (a.field_.kind == FieldKind::rationals) r.rat_ = a.rat_ * b.rat_;
    else r.res_ = mulmod(a.res_, b.res_, a.field_.characteristic);
    return r;
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }
  Scalar operator-() const {
    Scalar r = *this;
    if (field_.kind == FieldKind::rationals) r.rat_ = -r.rat_;
    else if (r.res_ != 0) r.res_ = field_.characteristic - r.res_;
    return r;
  }

  Scalar inverse() const {
    if (is_zero()) throw std::domain_error("Scalar: inverse of zero");
    Scalar r = *this;
    if (field_.kind == FieldKind::rationals) {
      r.rat_ = Rational(1) / rat_;
    } else {
      r.res_ = invmod(res_, field_.characteristic);
    }
    return r;
  }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    a.require_same(b);
    if (a.field_.kind == FieldKind::rationals) return a.rat_ == b.rat_;
    return a.res_ == b.res_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  std::string to_string() const {
    if (field_.kind == FieldKind::rationals) return rat_.to_string();
    return std::to_string(res_);
  }

private:
  FieldDescriptor field_ = FieldDescriptor::rationals();
  Rational rat_;
  std::int64_t res_ = 0;

  void require_same(const Scalar& o) const {
    if (field_ != o.field_) throw std::invalid_argument("Scalar: mixed fields");
  }

  static std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t p) {
    return static_cast<std::int64_t>(static_cast<__int128>(a) * b % p);
  }
  static std::int64_t invmod(std::int64_t a, std::int64_t p) {
    std::int64_t t = 0, new_t = 1, r = p, new_r = a % p;
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      std::int64_t tmp = t - q * new_t;
      t = new_t; new_t = tmp;
      tmp = r - q * new_r;
      r = new_r; new_r = tmp;
    }
    if (r != 1) throw std::domain_error("Scalar: not invertible mod p");
    return ((t % p) + p) % p;
  }
};

}  // namespace hlr
