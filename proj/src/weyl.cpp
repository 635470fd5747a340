#include "weylq/weyl.hpp"

#include <cmath>

#include "weylq/errors.hpp"

namespace weylq {

Complex inner(const Label& f, const Label& g) {
  if (f.size() != g.size()) fail(ErrorKind::MismatchedDimension, "label dimensions differ");
  Complex s = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) s += std::conj(f[k]) * g[k];
  return s;
}

double norm_sq(const Label& f) {
  double s = 0.0;
  for (const auto& c : f) s += std::norm(c);
  return s;
}

double symplectic(const Label& f, const Label& g) { return inner(f, g).imag(); }

Label add(const Label& f, const Label& g) {
  if (f.size() != g.size()) fail(ErrorKind::MismatchedDimension, "label dimensions differ");
  Label r(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) r[k] = f[k] + g[k];
  return r;
}

Label negate(const Label& f) { return scale(f, -1.0); }

Label scale(const Label& f, double s) {
  Label r(f);
  for (auto& c : r) c *= s;
  return r;
}

bool is_zero(const Label& f) {
  for (const auto& c : f) {
    if (std::abs(c.real()) >= WeylElement::kMergeTol / 2 ||
        std::abs(c.imag()) >= WeylElement::kMergeTol / 2)
      return false;
  }
  return true;
}

WeylElement::WeylElement(double hbar, std::size_t dim) : hbar_(hbar), dim_(dim) {
  if (hbar < 0) fail(ErrorKind::NegativeHbar, "deformation parameter must be nonnegative");
}

WeylElement WeylElement::identity(double hbar, std::size_t dim) {
  return generator(hbar, Label(dim, 0.0), 1.0);
}

WeylElement WeylElement::generator(double hbar, const Label& f, Complex c) {
  WeylElement a(hbar, f.size());
  a.add_term(f, c);
  return a;
}

WeylElement::Key WeylElement::key_of(const Label& f) const {
  if (f.size() != dim_) fail(ErrorKind::MismatchedDimension, "label has the wrong dimension");
  Key k(2 * dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    k[2 * i] = std::llround(f[i].real() / kMergeTol);
    k[2 * i + 1] = std::llround(f[i].imag() / kMergeTol);
  }
  return k;
}

Complex WeylElement::coefficient(const Label& f) const {
  auto it = terms_.find(key_of(f));
  return it == terms_.end() ? Complex(0.0) : it->second.coeff;
}

std::vector<Term> WeylElement::terms() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [k, t] : terms_) out.push_back(t);
  return out;
}

void WeylElement::add_term(const Label& f, Complex c) {
  Key k = key_of(f);
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    if (std::abs(c) >= kPruneTol) {
      // the caller's coordinates are kept; the key only decides identity
      terms_.emplace(std::move(k), Term{f, c});
    }
    return;
  }
  it->second.coeff += c;
  if (std::abs(it->second.coeff) < kPruneTol) terms_.erase(it);
}

WeylElement& WeylElement::operator+=(const WeylElement& other) {
  if (other.hbar_ != hbar_) fail(ErrorKind::MismatchedHbar, "elements live at different h");
  if (other.dim_ != dim_) fail(ErrorKind::MismatchedDimension, "label dimensions differ");
  for (const auto& [k, t] : other.terms_) add_term(t.label, t.coeff);
  return *this;
}

WeylElement& WeylElement::operator-=(const WeylElement& other) {
  if (other.hbar_ != hbar_) fail(ErrorKind::MismatchedHbar, "elements live at different h");
  if (other.dim_ != dim_) fail(ErrorKind::MismatchedDimension, "label dimensions differ");
  for (const auto& [k, t] : other.terms_) add_term(t.label, -t.coeff);
  return *this;
}

WeylElement& WeylElement::operator*=(Complex c) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second.coeff *= c;
    if (std::abs(it->second.coeff) < kPruneTol)
      it = terms_.erase(it);
    else
      ++it;
  }
  return *this;
}

WeylElement operator+(WeylElement a, const WeylElement& b) { return a += b; }
WeylElement operator-(WeylElement a, const WeylElement& b) { return a -= b; }
WeylElement operator*(Complex c, WeylElement a) { return a *= c; }

namespace {

void check_compatible(const WeylElement& a, const WeylElement& b) {
  if (a.hbar() != b.hbar()) fail(ErrorKind::MismatchedHbar, "elements live at different h");
  if (a.dim() != b.dim()) fail(ErrorKind::MismatchedDimension, "label dimensions differ");
}

}  // namespace

WeylElement multiply(const WeylElement& a, const WeylElement& b) {
  check_compatible(a, b);
  const double h = a.hbar();
  WeylElement out(h, a.dim());
  const auto ta = a.terms();
  const auto tb = b.terms();
  for (const auto& x : ta) {
    for (const auto& y : tb) {
      const double s = symplectic(x.label, y.label);
      out.add_term(add(x.label, y.label), x.coeff * y.coeff * std::polar(1.0, -h * s / 2));
    }
  }
  return out;
}

WeylElement adjoint(const WeylElement& a) {
  WeylElement out(a.hbar(), a.dim());
  for (const auto& t : a.terms()) out.add_term(negate(t.label), std::conj(t.coeff));
  return out;
}

WeylElement poisson_bracket(const WeylElement& a, const WeylElement& b) {
  check_compatible(a, b);
  if (a.hbar() != 0.0) fail(ErrorKind::NonzeroHbar, "Poisson bracket needs h = 0");
  WeylElement out(0.0, a.dim());
  for (const auto& x : a.terms()) {
    for (const auto& y : b.terms()) {
      out.add_term(add(x.label, y.label), x.coeff * y.coeff * symplectic(y.label, x.label));
    }
  }
  return out;
}

WeylElement scaled_commutator(const WeylElement& a, const WeylElement& b) {
  check_compatible(a, b);
  const double h = a.hbar();
  if (h == 0.0) fail(ErrorKind::ZeroHbar, "scaled commutator needs h > 0");
  WeylElement out(h, a.dim());
  // (ab - ba)/(ih) on generators: -(2/h) sin(h sigma/2) W(f+g)
  for (const auto& x : a.terms()) {
    for (const auto& y : b.terms()) {
      const double s = symplectic(x.label, y.label);
      out.add_term(add(x.label, y.label), x.coeff * y.coeff * (-2.0 / h) * std::sin(h * s / 2));
    }
  }
  return out;
}

Complex central_state(const WeylElement& a) { return a.coefficient(Label(a.dim(), 0.0)); }

NormBounds norm_bounds(const WeylElement& a) {
  double l2 = 0.0, l1 = 0.0;
  for (const auto& t : a.terms()) {
    l2 += std::norm(t.coeff);
    l1 += std::abs(t.coeff);
  }
  NormBounds nb{std::sqrt(l2), l1};
  if (a.size() == 1) nb.lower = nb.upper;
  return nb;
}

double distance(const WeylElement& a, const WeylElement& b) {
  check_compatible(a, b);
  double d = 0.0;
  for (const auto& t : (a - b).terms()) d = std::max(d, std::abs(t.coeff));
  return d;
}

}  // namespace weylq
