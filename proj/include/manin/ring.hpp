#pragma once

// Exact coefficient ring: rationals and multivariate polynomials over a
// named, ordered list of base coordinates.

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace manin {

using Rational = mpq_class;

std::string to_string(const Rational& q);
Rational parse_rational(std::string_view text);

/// Raised by the polynomial and JSON readers. `position` is a byte offset
/// into the parsed text.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

inline constexpr std::size_t kMaxCoordinates = 8;

/// Ordered list of coordinate names x_1..x_m of the affine base.
/// Copies share storage; equality is by name list.
class Coordinates {
 public:
  Coordinates();
  explicit Coordinates(std::vector<std::string> names);

  /// x1, ..., xm
  static Coordinates standard(std::size_t m);

  std::size_t size() const noexcept { return names_->size(); }
  const std::string& name(std::size_t i) const { return names_->at(i); }
  const std::vector<std::string>& names() const noexcept { return *names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  friend bool operator==(const Coordinates& a, const Coordinates& b);

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

class Polynomial {
 public:
  using Exponent = std::array<std::uint16_t, kMaxCoordinates>;
  using TermMap = std::map<Exponent, Rational>;

  Polynomial() = default;
  explicit Polynomial(Coordinates coords);
  Polynomial(Coordinates coords, const Rational& constant);

  static Polynomial variable(const Coordinates& coords, std::size_t index);
  static Polynomial monomial(const Coordinates& coords, const Exponent& exponent,
                             const Rational& coefficient = 1);

  const Coordinates& coordinates() const noexcept { return coords_; }
  const TermMap& terms() const noexcept { return terms_; }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  unsigned total_degree() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Rational& factor);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& q) { return a *= q; }
  friend Polynomial operator*(const Rational& q, Polynomial a) { return a *= q; }
  Polynomial operator-() const;

  Polynomial pow(unsigned exponent) const;
  Polynomial derivative(std::size_t variable) const;
  Polynomial derivative(std::string_view variable) const;

  /// Canonical text: graded order, highest degree first; parses back to
  /// the same polynomial.
  std::string to_string() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  void require_same_ring(const Polynomial& other) const;
  void add_term(const Exponent& e, const Rational& c);

  Coordinates coords_;
  TermMap terms_;
};

/// Reads the grammar
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := base ('^' nat)?
///   base   := rational | name | '(' expr ')'
/// Whitespace is ignored; implicit multiplication is rejected.
Polynomial parse_polynomial(std::string_view text, const Coordinates& coords);

std::ostream& operator<<(std::ostream& os, const Polynomial& p);

/// All monomials x^gamma with |gamma| <= max_degree, ordered by degree and
/// then lexicographically.
std::vector<Polynomial> monomials_up_to(const Coordinates& coords, unsigned max_degree);

}  // namespace manin
