#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <vector>

namespace weylq {

using Complex = std::complex<double>;

// Coordinates of a test function in a fixed orthonormal basis.
using Label = std::vector<Complex>;

Complex inner(const Label& f, const Label& g);  // antilinear in f
double norm_sq(const Label& f);
double symplectic(const Label& f, const Label& g);  // Im <f, g>
Label add(const Label& f, const Label& g);
Label negate(const Label& f);
Label scale(const Label& f, double s);
bool is_zero(const Label& f);

struct Term {
  Label label;
  Complex coeff;
};

// Finite linear combination of Weyl generators W^h(f).
class WeylElement {
 public:
  static constexpr double kMergeTol = 1e-12;
  static constexpr double kPruneTol = 1e-15;

  WeylElement(double hbar, std::size_t dim);

  static WeylElement identity(double hbar, std::size_t dim);
  static WeylElement generator(double hbar, const Label& f, Complex c = 1.0);

  double hbar() const { return hbar_; }
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  Complex coefficient(const Label& f) const;
  std::vector<Term> terms() const;

  // Adds c W(f), merging labels and pruning tiny coefficients.
  void add_term(const Label& f, Complex c);

  WeylElement& operator+=(const WeylElement& other);
  WeylElement& operator-=(const WeylElement& other);
  WeylElement& operator*=(Complex c);

 private:
  using Key = std::vector<long long>;
  Key key_of(const Label& f) const;

  double hbar_;
  std::size_t dim_;
  std::map<Key, Term> terms_;
};

WeylElement operator+(WeylElement a, const WeylElement& b);
WeylElement operator-(WeylElement a, const WeylElement& b);
WeylElement operator*(Complex c, WeylElement a);

WeylElement multiply(const WeylElement& a, const WeylElement& b);
WeylElement adjoint(const WeylElement& a);
WeylElement poisson_bracket(const WeylElement& a, const WeylElement& b);
WeylElement scaled_commutator(const WeylElement& a, const WeylElement& b);
Complex central_state(const WeylElement& a);

struct NormBounds {
  double lower;
  double upper;
};
NormBounds norm_bounds(const WeylElement& a);

// Max coefficient difference over the union of labels.
double distance(const WeylElement& a, const WeylElement& b);

}  // namespace weylq
