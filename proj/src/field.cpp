#include "nilpiece/field.hpp"

#include <map>
#include <string>
#include <utility>

#include "nilpiece/errors.hpp"

namespace nilpiece {
namespace {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

using Poly = std::vector<int>;  // low-to-high coefficients mod p

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo the monic polynomial m, coefficients mod p.
Poly poly_mod(Poly a, const Poly& m, int p) {
  trim(a);
  const int dm = static_cast<int>(m.size()) - 1;
  while (static_cast<int>(a.size()) - 1 >= dm) {
    const int shift = static_cast<int>(a.size()) - 1 - dm;
    const int lead = a.back();
    for (int i = 0; i <= dm; ++i)
      a[i + shift] = ((a[i + shift] - lead * m[i]) % p + p) % p;
    trim(a);
  }
  return a;
}

// Trial division by every monic polynomial of degree <= k/2.
bool is_irreducible(const Poly& m, int p) {
  const int k = static_cast<int>(m.size()) - 1;
  for (int d = 1; 2 * d <= k; ++d) {
    int count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (int idx = 0; idx < count; ++idx) {
      Poly f(d + 1, 0);
      f[d] = 1;
      int t = idx;
      for (int i = 0; i < d; ++i) {
        f[i] = t % p;
        t /= p;
      }
      if (poly_mod(m, f, p).empty()) return false;
    }
  }
  return true;
}

const std::map<std::pair<int, int>, Poly>& conway_table() {
  static const std::map<std::pair<int, int>, Poly> table = {
      {{2, 1}, {1, 1}},
      {{2, 2}, {1, 1, 1}},
      {{2, 3}, {1, 1, 0, 1}},
      {{2, 4}, {1, 1, 0, 0, 1}},
      {{2, 5}, {1, 0, 1, 0, 0, 1}},
      {{2, 6}, {1, 1, 0, 1, 1, 0, 1}},
      {{2, 7}, {1, 1, 0, 0, 0, 0, 0, 1}},
      {{2, 8}, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
      {{3, 1}, {1, 1}},
      {{3, 2}, {2, 2, 1}},
      {{3, 3}, {1, 2, 0, 1}},
      {{3, 4}, {2, 0, 0, 2, 1}},
      {{3, 5}, {1, 2, 0, 0, 0, 1}},
      {{5, 1}, {3, 1}},
      {{5, 2}, {2, 4, 1}},
      {{5, 3}, {3, 3, 0, 1}},
      {{7, 1}, {4, 1}},
      {{7, 2}, {3, 6, 1}},
  };
  return table;
}

}  // namespace

std::vector<int> Field::default_modulus(int p, int k) {
  if (!is_prime(p)) throw ConstructionError("p=" + std::to_string(p) + " is not prime");
  if (k < 1) throw ConstructionError("extension degree must be >= 1");
  long long q = 1;
  for (int i = 0; i < k; ++i) {
    q *= p;
    if (q > 256) throw SizeError("p^k exceeds 256");
  }
  const auto& table = conway_table();
  if (auto it = table.find({p, k}); it != table.end()) return it->second;
  if (k == 1) return {0, 1};
  throw ConstructionError("no default modulus for this (p, k)");
}

Field Field::create(int p, int k, std::optional<std::vector<int>> modulus) {
  if (!is_prime(p)) throw ConstructionError("p=" + std::to_string(p) + " is not prime");
  if (k < 1) throw ConstructionError("extension degree must be >= 1");
  int q = 1;
  for (int i = 0; i < k; ++i) {
    q *= p;
    if (q > 256) throw SizeError("p^k exceeds 256");
  }

  Poly m = modulus ? *modulus : default_modulus(p, k);
  if (static_cast<int>(m.size()) != k + 1)
    throw ConstructionError("modulus must have k+1 coefficients");
  for (int c : m)
    if (c < 0 || c >= p) throw ConstructionError("modulus coefficient out of range");
  if (m.back() != 1) throw ConstructionError("modulus must be monic");
  if (!is_irreducible(m, p)) throw ConstructionError("modulus is reducible");

  auto t = std::make_shared<Tables>();
  t->p = p;
  t->k = k;
  t->q = q;
  t->modulus = m;

  auto digits = [&](int a) {
    Poly d(k, 0);
    for (int i = 0; i < k; ++i) {
      d[i] = a % p;
      a /= p;
    }
    return d;
  };
  auto encode = [&](const Poly& d) {
    int a = 0;
    for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) a = a * p + d[i];
    return a;
  };

  t->add.resize(static_cast<std::size_t>(q) * q);
  t->neg.resize(q);
  for (int a = 0; a < q; ++a) {
    const Poly da = digits(a);
    Poly dn(k);
    for (int i = 0; i < k; ++i) dn[i] = (p - da[i]) % p;
    t->neg[a] = static_cast<Elem>(encode(dn));
    for (int b = 0; b < q; ++b) {
      const Poly db = digits(b);
      Poly s(k);
      for (int i = 0; i < k; ++i) s[i] = (da[i] + db[i]) % p;
      t->add[static_cast<std::size_t>(a) * q + b] = static_cast<Elem>(encode(s));
    }
  }

  // Schoolbook product, only used to locate a primitive element.
  auto slow_mul = [&](int a, int b) {
    const Poly da = digits(a), db = digits(b);
    Poly prod(2 * k, 0);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
    Poly r = poly_mod(prod, m, p);
    r.resize(k, 0);
    return encode(r);
  };

  int gen = -1;
  for (int g = 1; g < q && gen < 0; ++g) {
    int x = 1, order = 0;
    do {
      x = slow_mul(x, g);
      ++order;
    } while (x != 1);
    if (order == q - 1) gen = g;
  }
  if (gen < 0) throw InternalInvariantViolation("no primitive element found");

  t->exp.resize(q - 1);
  t->log.assign(q, -1);
  int x = 1;
  for (int i = 0; i < q - 1; ++i) {
    t->exp[i] = static_cast<Elem>(x);
    t->log[x] = i;
    x = slow_mul(x, gen);
  }

  t->mul.assign(static_cast<std::size_t>(q) * q, 0);
  t->inv.assign(q, 0);
  for (int a = 1; a < q; ++a) {
    for (int b = 1; b < q; ++b)
      t->mul[static_cast<std::size_t>(a) * q + b] =
          t->exp[(t->log[a] + t->log[b]) % (q - 1)];
    t->inv[a] = t->exp[(q - 1 - t->log[a]) % (q - 1)];
  }

  if (p == 2) {
    t->sqrt.assign(q, 0);
    for (int a = 0; a < q; ++a) t->sqrt[t->mul[static_cast<std::size_t>(a) * q + a]] = static_cast<Elem>(a);
  }
  return Field(std::move(t));
}

int Field::characteristic() const { return tables_->p; }
int Field::degree() const { return tables_->k; }
int Field::order() const { return tables_->q; }
const std::vector<int>& Field::modulus() const { return tables_->modulus; }

Elem Field::inv(Elem a) const {
  if (a == 0) throw DivideByZero("inverse of zero");
  return tables_->inv[a];
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t ord = static_cast<std::uint64_t>(tables_->q - 1);
  return tables_->exp[(static_cast<std::uint64_t>(tables_->log[a]) * (e % ord)) % ord];
}

Elem Field::sqrt_char2(Elem a) const {
  if (tables_->p != 2) throw CharacteristicError("square root requested in odd characteristic");
  return tables_->sqrt[a];
}

Elem Field::from_int(long long n) const {
  const int p = tables_->p;
  return static_cast<Elem>(((n % p) + p) % p);
}

std::vector<int> Field::coefficients(Elem a) const {
  std::vector<int> d(tables_->k, 0);
  int v = a;
  for (int i = 0; i < tables_->k; ++i) {
    d[i] = v % tables_->p;
    v /= tables_->p;
  }
  return d;
}

Elem Field::from_coefficients(std::span<const int> coeffs) const {
  if (static_cast<int>(coeffs.size()) > tables_->k)
    throw ConstructionError("too many coefficients for field element");
  int a = 0;
  for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i) {
    if (coeffs[i] < 0 || coeffs[i] >= tables_->p)
      throw ConstructionError("coefficient out of range");
    a = a * tables_->p + coeffs[i];
  }
  return static_cast<Elem>(a);
}

Elem Field::generator() const { return tables_->exp.size() > 1 ? tables_->exp[1] : tables_->exp[0]; }

int Field::log(Elem a) const {
  if (a == 0) throw DivideByZero("logarithm of zero");
  return tables_->log[a];
}

FieldElement Field::element(Elem value) const { return FieldElement(*this, value); }

std::vector<FieldElement> Field::elements() const {
  std::vector<FieldElement> out;
  out.reserve(tables_->q);
  for (int a = 0; a < tables_->q; ++a) out.emplace_back(*this, static_cast<Elem>(a));
  return out;
}

bool Field::operator==(const Field& other) const {
  if (tables_ == other.tables_) return true;
  return tables_->p == other.tables_->p && tables_->k == other.tables_->k &&
         tables_->modulus == other.tables_->modulus;
}

Field Field::with_corrupted_product(Elem a, Elem b, Elem value) const {
  auto t = std::make_shared<Tables>(*tables_);
  t->mul[static_cast<std::size_t>(a) * t->q + b] = value;
  return Field(std::move(t));
}

FieldElement::FieldElement(Field field, Elem value) : field_(std::move(field)), value_(value) {
  if (value_ >= field_.order()) throw ConstructionError("element encoding out of range");
}

void FieldElement::check_same(const FieldElement& o) const {
  if (!(field_ == o.field_)) throw FieldMismatch("operands belong to different fields");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same(o);
  return {field_, field_.add(value_, o.value_)};
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
  check_same(o);
  return {field_, field_.sub(value_, o.value_)};
}
FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same(o);
  return {field_, field_.mul(value_, o.value_)};
}
FieldElement FieldElement::operator/(const FieldElement& o) const {
  check_same(o);
  return {field_, field_.div(value_, o.value_)};
}
FieldElement FieldElement::operator-() const { return {field_, field_.neg(value_)}; }
FieldElement FieldElement::inverse() const { return {field_, field_.inv(value_)}; }
FieldElement FieldElement::pow(std::uint64_t e) const { return {field_, field_.pow(value_, e)}; }
FieldElement FieldElement::sqrt_char2() const { return {field_, field_.sqrt_char2(value_)}; }

bool FieldElement::operator==(const FieldElement& o) const {
  return field_ == o.field_ && value_ == o.value_;
}

FieldElement arith(const FieldElement& a, const FieldElement& b, ArithOp op) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::div: return a / b;
  }
  throw InternalInvariantViolation("unknown arithmetic operation");
}

}  // namespace nilpiece
