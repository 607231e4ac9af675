#pragma once

// The graded algebra S = C_0(R) of even/odd functions, its comultiplication
// into functions on R^2 with the twisted (Koszul-signed) product, and the
// counit f -> f(0).
//
// Functions are evaluation callables with a parity tag; algebraic identities
// are checked by evaluating on uniform grids.

#include <complex>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace speck::schwartz {

using Complex = std::complex<double>;

enum class Parity { even, odd, mixed };

Parity operator+(Parity a, Parity b);  // parity of a product
const char* to_string(Parity p);

class SFunction {
 public:
  using Eval = std::function<Complex(double)>;

  SFunction() = default;
  SFunction(Eval eval, Parity parity, std::string label = {});

  /// u(x) = exp(-x^2).
  static SFunction u();
  /// v(x) = x exp(-x^2).
  static SFunction v();
  static SFunction zero();

  Complex operator()(double x) const { return eval_(x); }
  Parity parity() const { return parity_; }
  const std::string& label() const { return label_; }
  bool homogeneous() const { return parity_ != Parity::mixed; }

  /// Even and odd parts (f(x) +- f(-x)) / 2.
  SFunction even_part() const;
  SFunction odd_part() const;

  friend SFunction operator*(const SFunction& f, const SFunction& g);
  friend SFunction operator+(const SFunction& f, const SFunction& g);
  friend SFunction operator*(Complex c, const SFunction& f);

 private:
  Eval eval_ = [](double) { return Complex{}; };
  Parity parity_ = Parity::even;
  std::string label_;
};

struct Bidegree {
  int x = 0;
  int y = 0;
  friend bool operator==(Bidegree, Bidegree) = default;
};

/// A function on R^2 stored as a sum of homogeneous components.
class BiFunction {
 public:
  using Eval = std::function<Complex(double, double)>;
  struct Component {
    Eval eval;
    Bidegree degree;
  };

  BiFunction() = default;
  BiFunction(Eval eval, Bidegree degree);
  explicit BiFunction(std::vector<Component> components);

  Complex operator()(double x, double y) const;
  const std::vector<Component>& components() const { return components_; }
  bool homogeneous() const;
  /// Throws DecomposeFirstError for mixed functions. The zero function has
  /// bidegree (0,0).
  Bidegree bidegree() const;

  friend BiFunction operator+(const BiFunction& f, const BiFunction& g);

 private:
  std::vector<Component> components_;
};

/// (f .^ g)(x,y) = (-1)^{jk} f(x,y) g(x,y) for f of bidegree (i,j) and g of
/// bidegree (k,l); the result has bidegree (i+k, j+l) mod 2.
BiFunction twisted_product(const BiFunction& f, const BiFunction& g);
/// Bilinear extension of twisted_product over homogeneous components.
BiFunction twisted_product_components(const BiFunction& f,
                                      const BiFunction& g);

/// r(x,y) = sqrt(x^2 + y^2).
double radius(double x, double y);
/// xi_x = x / r and xi_y = y / r, both 1/sqrt(2) at the origin.
double xi_x(double x, double y);
double xi_y(double x, double y);

/// Even f -> f o r; odd f -> xi_x (f o r) + xi_y (f o r), returned as the
/// (1,0) and (0,1) components. Throws DecomposeFirstError for mixed f.
BiFunction comultiply(const SFunction& f);

/// An element sum_k c_k f_k (x) h_k of the algebraic tensor product.
struct ElementaryTensor {
  Complex coefficient;
  SFunction left;
  SFunction right;
};
/// Comultiplication of the generators in tensor form:
/// u -> u (x) u, v -> u (x) v + v (x) u, 0 -> empty sum.
/// Throws UnsupportedError for other functions.
std::vector<ElementaryTensor> comultiply_tensor(const SFunction& f);
BiFunction evaluate_tensor(const std::vector<ElementaryTensor>& terms);

/// eta(f) = f(0).
Complex counit(const SFunction& f);

struct Grid {
  double lo = -4.0;
  double hi = 4.0;
  int points = 201;

  double at(int k) const;
};

/// sup over grid^2 of |comultiply(f g) - comultiply(f) .^ comultiply(g)|.
double check_multiplicativity(const SFunction& f, const SFunction& g,
                              const Grid& grid = {});
/// sup over grid^3 of |(Delta (x) 1) Delta f - (1 (x) Delta) Delta f|.
double coassociativity_residual(const SFunction& f, const Grid& grid);
/// max of sup |(eta (x) 1) Delta f - f| and sup |(1 (x) eta) Delta f - f|.
double counit_residual(const SFunction& f, const Grid& grid = {});
/// sup over grid^2 of |F - G|.
double grid_distance(const BiFunction& f, const BiFunction& g,
                     const Grid& grid = {});
/// sup over the grid of |f(-x) - (+-) f(x)| for the tagged parity.
double parity_defect(const SFunction& f, const Grid& grid = {});
/// Largest violation of the per-component bidegree symmetries.
double bidegree_defect(const BiFunction& f, const Grid& grid = {});

/// Writes "x,y,re,im" rows for every grid point.
void write_grid_csv(std::ostream& out, const BiFunction& f,
                    const Grid& grid = {});

}  // namespace speck::schwartz
