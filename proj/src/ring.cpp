#include "manin/ring.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace manin {

std::string to_string(const Rational& q) { return q.get_str(); }

std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.to_string(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  Rational q;
  if (s.empty() || q.set_str(s, 10) != 0) {
    throw ParseError("invalid rational '" + s + "'", 0);
  }
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'", 0);
  q.canonicalize();
  return q;
}

ParseError::ParseError(const std::string& what, std::size_t position)
    : std::runtime_error(what + " at position " + std::to_string(position)),
      position_(position) {}

namespace {

Rational canonical(Rational q) {
  q.canonicalize();
  return q;
}

const std::shared_ptr<const std::vector<std::string>>& empty_names() {
  static const auto names = std::make_shared<const std::vector<std::string>>();
  return names;
}

}  // namespace

Coordinates::Coordinates() : names_(empty_names()) {}

Coordinates::Coordinates(std::vector<std::string> names) {
  if (names.size() > kMaxCoordinates) {
    throw std::invalid_argument("at most " + std::to_string(kMaxCoordinates) +
                                " base coordinates are supported");
  }
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto& n = names[i];
    if (n.empty() || !(std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_')) {
      throw std::invalid_argument("invalid coordinate name '" + n + "'");
    }
    for (char c : n) {
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) {
        throw std::invalid_argument("invalid coordinate name '" + n + "'");
      }
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (names[j] == n) throw std::invalid_argument("duplicate coordinate '" + n + "'");
    }
  }
  names_ = names.empty() ? empty_names()
                         : std::make_shared<const std::vector<std::string>>(std::move(names));
}

Coordinates Coordinates::standard(std::size_t m) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= m; ++i) names.push_back("x" + std::to_string(i));
  return Coordinates(std::move(names));
}

std::optional<std::size_t> Coordinates::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_->size(); ++i) {
    if ((*names_)[i] == name) return i;
  }
  return std::nullopt;
}

bool operator==(const Coordinates& a, const Coordinates& b) {
  return a.names_ == b.names_ || *a.names_ == *b.names_;
}

// ---------------------------------------------------------------------------

Polynomial::Polynomial(Coordinates coords) : coords_(std::move(coords)) {}

Polynomial::Polynomial(Coordinates coords, const Rational& constant)
    : coords_(std::move(coords)) {
  if (constant != 0) terms_.emplace(Exponent{}, canonical(constant));
}

Polynomial Polynomial::variable(const Coordinates& coords, std::size_t index) {
  if (index >= coords.size()) throw std::out_of_range("coordinate index out of range");
  Exponent e{};
  e[index] = 1;
  return monomial(coords, e);
}

Polynomial Polynomial::monomial(const Coordinates& coords, const Exponent& exponent,
                                const Rational& coefficient) {
  for (std::size_t i = coords.size(); i < kMaxCoordinates; ++i) {
    if (exponent[i] != 0) throw std::invalid_argument("exponent outside coordinate range");
  }
  Polynomial p(coords);
  if (coefficient != 0) p.terms_.emplace(exponent, canonical(coefficient));
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponent{});
}

Rational Polynomial::constant_term() const {
  auto it = terms_.find(Exponent{});
  return it == terms_.end() ? Rational(0) : it->second;
}

unsigned Polynomial::total_degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) {
    d = std::max(d, static_cast<unsigned>(std::accumulate(e.begin(), e.end(), 0u)));
  }
  return d;
}

void Polynomial::require_same_ring(const Polynomial& other) const {
  if (!(coords_ == other.coords_)) {
    throw std::invalid_argument("polynomial coordinate lists differ");
  }
}

void Polynomial::add_term(const Exponent& e, const Rational& c) {
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same_ring(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_same_ring(other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.require_same_ring(b);
  Polynomial out(a.coords_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Polynomial::Exponent e;
      for (std::size_t i = 0; i < kMaxCoordinates; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& factor) {
  if (factor == 0) {
    terms_.clear();
  } else {
    const Rational f = canonical(factor);
    for (auto& [e, c] : terms_) c *= f;
  }
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial out(*this);
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result(coords_, 1);
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result *= base;
    exponent >>= 1u;
    if (exponent > 0) base *= base;
  }
  return result;
}

Polynomial Polynomial::derivative(std::size_t variable) const {
  if (variable >= coords_.size()) throw std::invalid_argument("unknown variable index");
  Polynomial out(coords_);
  for (const auto& [e, c] : terms_) {
    if (e[variable] == 0) continue;
    Exponent d = e;
    --d[variable];
    out.terms_.emplace(d, c * e[variable]);
  }
  return out;
}

Polynomial Polynomial::derivative(std::string_view variable) const {
  auto idx = coords_.index_of(variable);
  if (!idx) throw std::invalid_argument("unknown variable '" + std::string(variable) + "'");
  return derivative(*idx);
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  return a.coords_ == b.coords_ && a.terms_ == b.terms_;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<const TermMap::value_type*> order;
  order.reserve(terms_.size());
  for (const auto& t : terms_) order.push_back(&t);
  auto degree = [](const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0u); };
  std::sort(order.begin(), order.end(), [&](auto* x, auto* y) {
    auto dx = degree(x->first), dy = degree(y->first);
    if (dx != dy) return dx > dy;
    return x->first > y->first;
  });

  std::ostringstream os;
  bool first = true;
  for (const auto* t : order) {
    Rational c = t->second;
    const bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;

    std::vector<std::string> factors;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (t->first[i] == 0) continue;
      std::string f = coords_.name(i);
      if (t->first[i] > 1) f += "^" + std::to_string(t->first[i]);
      factors.push_back(std::move(f));
    }
    if (factors.empty() || c != 1) factors.insert(factors.begin(), c.get_str());
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i) os << '*';
      os << factors[i];
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------

namespace {

class PolynomialParser {
 public:
  PolynomialParser(std::string_view text, const Coordinates& coords)
      : text_(text), coords_(coords) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  Polynomial expr() {
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    Polynomial acc = term();
    if (negate) acc = -acc;
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (accept('*')) acc *= factor();
    skip_ws();
    if (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(') {
        fail("implicit multiplication is not supported");
      }
    }
    return acc;
  }

  Polynomial factor() {
    Polynomial b = base();
    if (accept('^')) {
      skip_ws();
      const unsigned long e = natural();
      if (e > 1000) fail("exponent too large");
      b = b.pow(static_cast<unsigned>(e));
    }
    return b;
  }

  unsigned long natural() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a natural number");
    if (pos_ - start > 9) fail("number too long for an exponent");
    return std::stoul(std::string(text_.substr(start, pos_ - start)));
  }

  Polynomial base() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      mpz_class num(std::string(text_.substr(start, pos_ - start)));
      mpz_class den = 1;
      if (accept('/')) {
        skip_ws();
        const std::size_t dstart = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (dstart == pos_) fail("expected a denominator");
        den = mpz_class(std::string(text_.substr(dstart, pos_ - dstart)));
        if (den == 0) fail("zero denominator");
      }
      Rational q(num, den);
      q.canonicalize();
      return Polynomial(coords_, q);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string_view name = text_.substr(start, pos_ - start);
      auto idx = coords_.index_of(name);
      if (!idx) {
        pos_ = start;
        fail("unknown variable '" + std::string(name) + "'");
      }
      return Polynomial::variable(coords_, *idx);
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const Coordinates& coords_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const Coordinates& coords) {
  return PolynomialParser(text, coords).parse();
}

std::vector<Polynomial> monomials_up_to(const Coordinates& coords, unsigned max_degree) {
  std::vector<Polynomial> out;
  const std::size_t m = coords.size();
  for (unsigned deg = 0; deg <= max_degree; ++deg) {
    // exponents of total degree `deg`, in descending lexicographic order
    Polynomial::Exponent e{};
    std::vector<Polynomial::Exponent> level;
    auto rec = [&](auto&& self, std::size_t var, unsigned remaining) -> void {
      if (var + 1 == m || m == 0) {
        if (m == 0) {
          if (remaining == 0) level.push_back(e);
          return;
        }
        e[var] = static_cast<std::uint16_t>(remaining);
        level.push_back(e);
        e[var] = 0;
        return;
      }
      for (int k = static_cast<int>(remaining); k >= 0; --k) {
        e[var] = static_cast<std::uint16_t>(k);
        self(self, var + 1, remaining - static_cast<unsigned>(k));
      }
      e[var] = 0;
    };
    rec(rec, 0, deg);
    for (const auto& ex : level) out.push_back(Polynomial::monomial(coords, ex));
  }
  return out;
}

}  // namespace manin
