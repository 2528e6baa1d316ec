#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "weylforge/flpoly.hpp"

namespace weylforge {

inline constexpr std::uint64_t kDefaultEnumBudget = std::uint64_t{1} << 24;

// Immutable description of F_{q^m} presented as F_q[x]/(modulus).  The modulus
// is the canonical one for (q, m): the first monic irreducible of degree m in
// ascending order of the base-q integer encoding of its coefficient vector
// (constant term least significant).  For m = 1 this scan yields x itself.
struct FieldDescriptor {
  std::uint64_t q = 0;
  int m = 0;
  flpoly::Poly modulus;  // monic, degree m, little-endian
  std::uint64_t size = 0;  // q^m; guaranteed to fit the enumeration budget

  bool operator==(const FieldDescriptor& other) const {
    return q == other.q && m == other.m && modulus == other.modulus;
  }
};

class Field;

// Element of F_{q^m}: residues little-endian, length m, each in [0, q).
class FieldElement {
 public:
  FieldElement() = default;

  const std::vector<std::uint64_t>& coeffs() const { return coeffs_; }
  const std::shared_ptr<const FieldDescriptor>& descriptor() const { return desc_; }

  bool is_zero() const;
  std::uint64_t encoding() const;  // sum coeffs[i] * q^i

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator-() const;
  bool operator==(const FieldElement& o) const;

  FieldElement inverse() const;  // DivisionByZero on zero
  FieldElement pow(std::uint64_t e) const;

 private:
  friend class Field;
  FieldElement(std::shared_ptr<const FieldDescriptor> d, std::vector<std::uint64_t> c)
      : desc_(std::move(d)), coeffs_(std::move(c)) {}

  std::shared_ptr<const FieldDescriptor> desc_;
  std::vector<std::uint64_t> coeffs_;
};

class Field {
 public:
  Field() = default;

  // Constructs F_{q^m} with the canonical modulus.  Errors: NotPrime when q is
  // not an odd prime, BudgetExceeded when q^m exceeds the enumeration budget.
  static Field build(std::uint64_t q, int m,
                     std::uint64_t budget = kDefaultEnumBudget);

  std::uint64_t q() const { return desc_->q; }
  int m() const { return desc_->m; }
  std::uint64_t size() const { return desc_->size; }
  const flpoly::Poly& modulus() const { return desc_->modulus; }
  const std::shared_ptr<const FieldDescriptor>& descriptor() const { return desc_; }

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement constant(std::uint64_t c) const;  // image of c mod q
  FieldElement generator() const;                // residue class of x
  FieldElement element(std::vector<std::uint64_t> coeffs) const;
  FieldElement from_encoding(std::uint64_t e) const;

  bool same_field(const Field& o) const { return *desc_ == *o.desc_; }

 private:
  explicit Field(std::shared_ptr<const FieldDescriptor> d) : desc_(std::move(d)) {}
  std::shared_ptr<const FieldDescriptor> desc_;
};

// Multiplicative quadratic character chi(a) = a^((q^m - 1)/2) mapped to
// {-1, 0, +1}; chi(0) = 0.
int quadratic_character(const FieldElement& a);

// Field homomorphism F_{q^s} -> F_{q^m} for s | m, determined by the coherent
// canonical system of generator images (see embed_subfield).
class Embedding {
 public:
  const Field& domain() const { return domain_; }
  const Field& codomain() const { return codomain_; }

  FieldElement operator()(const FieldElement& a) const;

 private:
  friend Embedding embed_subfield(const Field&, const Field&);
  Embedding(Field dom, Field cod, std::vector<FieldElement> powers)
      : domain_(std::move(dom)), codomain_(std::move(cod)),
        gen_powers_(std::move(powers)) {}

  Field domain_;
  Field codomain_;
  std::vector<FieldElement> gen_powers_;  // images of generator^0 .. generator^{s-1}
};

// Errors: NotASubfield unless small.q == big.q and small.m | big.m.
Embedding embed_subfield(const Field& big, const Field& small);

// All roots in K of a polynomial with F_q coefficients (q = K.q()), sorted by
// element encoding.  Exposed for tests.
std::vector<FieldElement> roots_in_field(const flpoly::Poly& f, const Field& K);

}  // namespace weylforge
