#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace nilpiece {

/// Field elements are stored as their integer encoding sum_i c_i p^i, where
/// c_0..c_{k-1} are the coefficients of the polynomial representative.
using Elem = std::uint8_t;

class FieldElement;

/// A finite field GF(p^k) with q = p^k <= 256.
///
/// Arithmetic is table driven: exponential/logarithm tables relative to a
/// primitive element are built once at construction, and the full
/// multiplication table is derived from them. A Field is an immutable value;
/// copies share the tables.
class Field {
 public:
  /// Builds GF(p^k). Without a modulus the built-in default table is used
  /// (Conway polynomials). `modulus` is monic, low-to-high, length k+1.
  static Field create(int p, int k,
                      std::optional<std::vector<int>> modulus = std::nullopt);

  /// Default modulus for (p, k); throws SizeError/ConstructionError if none.
  static std::vector<int> default_modulus(int p, int k);

  int characteristic() const;
  int degree() const;
  int order() const;
  const std::vector<int>& modulus() const;

  Elem add(Elem a, Elem b) const { return tables_->add[index(a, b)]; }
  Elem sub(Elem a, Elem b) const { return tables_->add[index(a, tables_->neg[b])]; }
  Elem neg(Elem a) const { return tables_->neg[a]; }
  Elem mul(Elem a, Elem b) const { return tables_->mul[index(a, b)]; }
  /// Multiplicative inverse; throws DivideByZero for 0.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;

  /// The unique square root in characteristic 2, a^(2^(k-1)).
  /// Throws CharacteristicError in odd characteristic.
  Elem sqrt_char2(Elem a) const;

  /// Image of an integer under Z -> GF(p) -> GF(q).
  Elem from_int(long long n) const;
  std::vector<int> coefficients(Elem a) const;
  /// Throws ConstructionError when the vector is too long or has entries
  /// outside [0, p).
  Elem from_coefficients(std::span<const int> coeffs) const;

  /// The primitive element the log tables are built on.
  Elem generator() const;
  /// Discrete log base generator(); a must be nonzero.
  int log(Elem a) const;

  FieldElement element(Elem value) const;
  std::vector<FieldElement> elements() const;

  /// Fields compare equal when (p, k, modulus) agree.
  bool operator==(const Field& other) const;

  /// Test hook: a copy of this field whose multiplication table has one
  /// entry overwritten. Used for fault-injection in the self test.
  Field with_corrupted_product(Elem a, Elem b, Elem value) const;

 private:
  struct Tables {
    int p = 0;
    int k = 0;
    int q = 0;
    std::vector<int> modulus;
    std::vector<Elem> add;
    std::vector<Elem> mul;
    std::vector<Elem> neg;
    std::vector<Elem> inv;
    std::vector<Elem> sqrt;
    std::vector<Elem> exp;  // exp[i] = g^i, i in [0, q-2]
    std::vector<int> log;   // log[exp[i]] = i; log[0] = -1
  };

  explicit Field(std::shared_ptr<const Tables> t) : tables_(std::move(t)) {}
  std::size_t index(Elem a, Elem b) const {
    return static_cast<std::size_t>(a) * tables_->q + b;
  }

  std::shared_ptr<const Tables> tables_;
};

/// An element bound to its field. Mixed-field arithmetic throws FieldMismatch.
class FieldElement {
 public:
  FieldElement(Field field, Elem value);

  const Field& field() const { return field_; }
  Elem value() const { return value_; }
  bool is_zero() const { return value_ == 0; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement inverse() const;
  FieldElement pow(std::uint64_t e) const;
  FieldElement sqrt_char2() const;

  bool operator==(const FieldElement& o) const;

 private:
  void check_same(const FieldElement& o) const;

  Field field_;
  Elem value_;
};

enum class ArithOp { add, sub, mul, div };

/// Exact field arithmetic on bound elements.
FieldElement arith(const FieldElement& a, const FieldElement& b, ArithOp op);

}  // namespace nilpiece
