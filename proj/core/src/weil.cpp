#include "sdg/weil.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <sstream>

#include "sdg/errors.hpp"

namespace sdg {

// ---------------------------------------------------------------- Monomial

Monomial Monomial::of(std::initializer_list<std::uint32_t> indices) {
  Monomial m;
  for (auto i : indices) m.insert(i);
  return m;
}

Monomial Monomial::of(std::span<const GeneratorId> gens) {
  Monomial m;
  for (const auto& g : gens) m.insert(g.index);
  return m;
}

Monomial Monomial::single(std::uint32_t index) {
  Monomial m;
  m.insert(index);
  return m;
}

bool Monomial::empty() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
}

int Monomial::degree() const noexcept {
  int n = 0;
  for (auto w : words_) n += std::popcount(w);
  return n;
}

bool Monomial::contains(std::uint32_t index) const noexcept {
  return index < kMaxGenerators && ((words_[index / 64] >> (index % 64)) & 1U) != 0;
}

bool Monomial::intersects(const Monomial& o) const noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if ((words_[i] & o.words_[i]) != 0) return true;
  return false;
}

bool Monomial::includes(const Monomial& o) const noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if ((o.words_[i] & ~words_[i]) != 0) return false;
  return true;
}

std::uint32_t Monomial::max_index() const noexcept {
  for (std::size_t i = words_.size(); i-- > 0;)
    if (words_[i] != 0) return static_cast<std::uint32_t>(i * 64 + 63 - std::countl_zero(words_[i]));
  return 0;
}

Monomial Monomial::operator|(const Monomial& o) const noexcept {
  Monomial r;
  for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] | o.words_[i];
  return r;
}

Monomial Monomial::without(const Monomial& o) const noexcept {
  Monomial r;
  for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] & ~o.words_[i];
  return r;
}

void Monomial::insert(std::uint32_t index) {
  if (index >= kMaxGenerators) throw ContextError("generator index out of range");
  words_[index / 64] |= (std::uint64_t{1} << (index % 64));
}

void Monomial::erase(std::uint32_t index) noexcept {
  if (index < kMaxGenerators) words_[index / 64] &= ~(std::uint64_t{1} << (index % 64));
}

std::vector<std::uint32_t> Monomial::indices() const {
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    auto w = words_[i];
    while (w != 0) {
      const int b = std::countr_zero(w);
      out.push_back(static_cast<std::uint32_t>(i * 64 + b));
      w &= w - 1;
    }
  }
  return out;
}

// -------------------------------------------------------- GeneratorContext

namespace {
std::atomic<std::uint64_t> next_context_id{1};
}

GeneratorContext::GeneratorContext() : id_(next_context_id.fetch_add(1)) {}

std::size_t GeneratorContext::allocated() const {
  std::lock_guard lock(mutex_);
  return next_;
}

GeneratorId GeneratorContext::allocate() {
  std::lock_guard lock(mutex_);
  if (next_ >= kMaxGenerators) throw ContextError("generator context exhausted");
  return GeneratorId{id_, next_++};
}

std::vector<GeneratorId> GeneratorContext::allocate(std::size_t count) {
  std::vector<GeneratorId> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(allocate());
  return out;
}

void GeneratorContext::reserve_through(std::uint32_t index) {
  std::lock_guard lock(mutex_);
  if (index >= kMaxGenerators) throw ContextError("generator index out of range");
  next_ = std::max(next_, index + 1);
}

// ------------------------------------------------------------- WeilElement

WeilElement::WeilElement(const Rational& c) {
  if (c != 0) terms_.emplace_back(Monomial{}, c);
}

WeilElement::WeilElement(long c) : WeilElement(Rational(c)) {}

WeilElement WeilElement::generator(GeneratorId g) { return term(g.context, Monomial::single(g.index), 1); }

WeilElement WeilElement::term(std::uint64_t context, Monomial m, const Rational& c) {
  WeilElement e;
  if (c != 0) {
    e.terms_.emplace_back(m, c);
    e.context_ = context;
    e.normalize_context();
  }
  return e;
}

WeilElement WeilElement::from_terms(std::uint64_t context, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
  WeilElement e;
  e.context_ = context;
  for (auto& t : terms) {
    if (!e.terms_.empty() && e.terms_.back().first == t.first) {
      e.terms_.back().second += t.second;
      if (e.terms_.back().second == 0) e.terms_.pop_back();
    } else if (t.second != 0) {
      e.terms_.push_back(std::move(t));
    }
  }
  e.normalize_context();
  return e;
}

bool WeilElement::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().first.empty());
}

Rational WeilElement::constant_term() const {
  if (!terms_.empty() && terms_.front().first.empty()) return terms_.front().second;
  return 0;
}

Rational WeilElement::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& key) { return t.first < key; });
  if (it != terms_.end() && it->first == m) return it->second;
  return 0;
}

Monomial WeilElement::support() const {
  Monomial m;
  for (const auto& t : terms_) m = m | t.first;
  return m;
}

std::uint64_t WeilElement::merge_context(std::uint64_t a, std::uint64_t b) {
  if (a == 0) return b;
  if (b == 0 || a == b) return a;
  throw ContextError("cannot combine elements from different generator contexts");
}

void WeilElement::normalize_context() noexcept {
  if (is_constant()) context_ = 0;
}

WeilElement& WeilElement::operator+=(const WeilElement& o) {
  if (o.terms_.empty()) return *this;
  const auto ctx = merge_context(context_, o.context_);
  std::vector<Term> merged;
  merged.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      merged.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->first < a->first) {
      merged.push_back(*b++);
    } else {
      Rational s = a->second + b->second;
      if (s != 0) merged.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  context_ = ctx;
  normalize_context();
  return *this;
}

WeilElement& WeilElement::operator-=(const WeilElement& o) { return *this += -o; }

WeilElement operator-(WeilElement a) {
  for (auto& t : a.terms_) t.second = -t.second;
  return a;
}

WeilElement& WeilElement::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    context_ = 0;
    return *this;
  }
  for (auto& t : terms_) t.second *= s;
  return *this;
}

WeilElement operator*(const WeilElement& a, const WeilElement& b) {
  if (a.terms_.empty() || b.terms_.empty()) return {};
  const auto ctx = WeilElement::merge_context(a.context_, b.context_);
  std::vector<WeilElement::Term> products;
  products.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_)
      if (!ma.intersects(mb)) products.emplace_back(ma | mb, ca * cb);
  return WeilElement::from_terms(ctx, std::move(products));
}

WeilElement& WeilElement::operator*=(const WeilElement& o) { return *this = *this * o; }

std::string WeilElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << sdg::to_string(c);
    for (auto i : m.indices()) os << "*d" << i;
  }
  return os.str();
}

WeilElement ring_combine(const WeilElement& a, const WeilElement& b, RingOp op) {
  switch (op) {
    case RingOp::Add:
      return a + b;
    case RingOp::Sub:
      return a - b;
    case RingOp::Mul:
      return a * b;
  }
  return {};
}

// ------------------------------------------------------------ substitution

bool squares_to_zero(const WeilElement& a) { return (a * a).is_zero(); }

WeilElement substitute(const WeilElement& a, const Substitution& sigma) {
  if (sigma.empty() || a.is_constant()) return a;
  for (const auto& [g, image] : sigma) {
    if (a.context() != 0 && g.context != a.context())
      throw ContextError("substitution refers to a generator of another context");
    if (!squares_to_zero(image)) throw NilpotencyError("substitution image does not square to zero");
  }
  WeilElement result;
  for (const auto& [m, c] : a.terms()) {
    Monomial kept;
    WeilElement factor(c);
    for (auto idx : m.indices()) {
      auto it = sigma.find(GeneratorId{a.context(), idx});
      if (it == sigma.end()) {
        kept.insert(idx);
      } else {
        factor *= it->second;
        if (factor.is_zero()) break;
      }
    }
    if (factor.is_zero()) continue;
    result += factor * WeilElement::term(a.context(), kept, 1);
  }
  return result;
}

WeilMatrix substitute(const WeilMatrix& a, const Substitution& sigma) {
  return a.map([&](const WeilElement& x) { return substitute(x, sigma); });
}

WeilVector substitute(const WeilVector& a, const Substitution& sigma) {
  WeilVector out;
  out.reserve(a.size());
  for (const auto& x : a) out.push_back(substitute(x, sigma));
  return out;
}

// -------------------------------------------------------------- extraction

WeilElement factor_top(const WeilElement& a, const Monomial& m) {
  std::vector<WeilElement::Term> out;
  out.reserve(a.terms().size());
  for (const auto& [mono, c] : a.terms()) {
    if (!mono.includes(m)) {
      std::ostringstream os;
      os << "residue outside the target monomial: term " << sdg::to_string(c);
      for (auto i : mono.indices()) os << "*d" << i;
      throw ResidueError(os.str());
    }
    out.emplace_back(mono.without(m), c);
  }
  return WeilElement::from_terms(a.context(), std::move(out));
}

WeilMatrix factor_top(const WeilMatrix& a, const Monomial& m) {
  return a.map([&](const WeilElement& x) { return factor_top(x, m); });
}

std::vector<WeilElement> expand_along(const WeilElement& a, std::span<const GeneratorId> gens) {
  if (gens.size() > 20) throw std::invalid_argument("expand_along: too many generators");
  for (const auto& g : gens)
    if (a.context() != 0 && g.context != a.context())
      throw ContextError("expand_along: generator from another context");
  std::vector<std::vector<WeilElement::Term>> buckets(std::size_t{1} << gens.size());
  for (const auto& [mono, c] : a.terms()) {
    std::size_t mask = 0;
    Monomial rest = mono;
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (mono.contains(gens[i].index)) {
        mask |= std::size_t{1} << i;
        rest.erase(gens[i].index);
      }
    buckets[mask].emplace_back(rest, c);
  }
  std::vector<WeilElement> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(WeilElement::from_terms(a.context(), std::move(b)));
  return out;
}

WeilElement product_of(std::span<const GeneratorId> gens) {
  if (gens.empty()) return WeilElement(1);
  return WeilElement::term(gens.front().context, Monomial::of(gens), 1);
}

Rational to_rational(const WeilElement& a) {
  if (!a.is_constant()) throw InputError("expected a rational, got " + a.to_string());
  return a.constant_term();
}

RationalMatrix to_rational(const WeilMatrix& a) {
  return a.map([](const WeilElement& x) { return to_rational(x); });
}

WeilMatrix to_weil(const RationalMatrix& a) {
  return a.map([](const Rational& x) { return WeilElement(x); });
}

RationalMatrix constant_part(const WeilMatrix& a) {
  return a.map([](const WeilElement& x) { return x.constant_term(); });
}

WeilMatrix matrix_inverse(const WeilMatrix& a) {
  if (!a.square()) throw std::invalid_argument("matrix_inverse: matrix is not square");
  const WeilMatrix base_inv = to_weil(inverse(constant_part(a)));
  const WeilMatrix nilpotent = a - to_weil(constant_part(a));
  if (nilpotent.is_zero()) return base_inv;
  // a = A0 (I + A0^-1 N); (I + X)^-1 = sum (-X)^j terminates since every
  // entry of X^j has monomials of degree >= j.
  const WeilMatrix step = -(base_inv * nilpotent);
  WeilMatrix power = WeilMatrix::identity(a.rows());
  WeilMatrix series = power;
  for (std::size_t j = 0; j <= kMaxGenerators; ++j) {
    power = power * step;
    if (power.is_zero()) return series * base_inv;
    series += power;
  }
  throw std::logic_error("matrix_inverse: nilpotent series did not terminate");
}

WeilMatrix kronecker(const WeilMatrix& a, const WeilMatrix& b) {
  WeilMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return out;
}

WeilMatrix transpose(const WeilMatrix& a) {
  WeilMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

}  // namespace sdg
