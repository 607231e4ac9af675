#include "speck/schwartz.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "speck/errors.hpp"

namespace speck::schwartz {

namespace {

int sign_of(int degree) { return degree % 2 == 0 ? 1 : -1; }

int parity_bit(Parity p) {
  if (p == Parity::mixed) throw DecomposeFirstError("mixed parity input");
  return p == Parity::even ? 0 : 1;
}

}  // namespace

Parity operator+(Parity a, Parity b) {
  if (a == Parity::mixed || b == Parity::mixed) return Parity::mixed;
  return a == b ? Parity::even : Parity::odd;
}

const char* to_string(Parity p) {
  switch (p) {
    case Parity::even: return "even";
    case Parity::odd: return "odd";
    case Parity::mixed: return "mixed";
  }
  return "?";
}

SFunction::SFunction(Eval eval, Parity parity, std::string label)
    : eval_(std::move(eval)), parity_(parity), label_(std::move(label)) {}

SFunction SFunction::u() {
  return {[](double x) { return Complex(std::exp(-x * x)); }, Parity::even,
          "u"};
}

SFunction SFunction::v() {
  return {[](double x) { return Complex(x * std::exp(-x * x)); }, Parity::odd,
          "v"};
}

SFunction SFunction::zero() {
  return {[](double) { return Complex{}; }, Parity::even, "0"};
}

SFunction SFunction::even_part() const {
  auto e = eval_;
  return {[e](double x) { return 0.5 * (e(x) + e(-x)); }, Parity::even,
          label_.empty() ? "" : label_ + "_even"};
}

SFunction SFunction::odd_part() const {
  auto e = eval_;
  return {[e](double x) { return 0.5 * (e(x) - e(-x)); }, Parity::odd,
          label_.empty() ? "" : label_ + "_odd"};
}

SFunction operator*(const SFunction& f, const SFunction& g) {
  auto a = f.eval_;
  auto b = g.eval_;
  return {[a, b](double x) { return a(x) * b(x); }, f.parity_ + g.parity_,
          f.label_ + "*" + g.label_};
}

SFunction operator+(const SFunction& f, const SFunction& g) {
  auto a = f.eval_;
  auto b = g.eval_;
  const Parity p = f.parity_ == g.parity_ ? f.parity_ : Parity::mixed;
  return {[a, b](double x) { return a(x) + b(x); }, p,
          f.label_ + "+" + g.label_};
}

SFunction operator*(Complex c, const SFunction& f) {
  auto a = f.eval_;
  return {[a, c](double x) { return c * a(x); }, f.parity_, f.label_};
}

BiFunction::BiFunction(Eval eval, Bidegree degree)
    : components_{{std::move(eval), degree}} {}

BiFunction::BiFunction(std::vector<Component> components)
    : components_(std::move(components)) {}

Complex BiFunction::operator()(double x, double y) const {
  Complex s{};
  for (const auto& c : components_) s += c.eval(x, y);
  return s;
}

bool BiFunction::homogeneous() const {
  return std::all_of(components_.begin(), components_.end(),
                     [this](const Component& c) {
                       return c.degree == components_.front().degree;
                     });
}

Bidegree BiFunction::bidegree() const {
  if (!homogeneous())
    throw DecomposeFirstError("bifunction has mixed bidegree");
  return components_.empty() ? Bidegree{} : components_.front().degree;
}

BiFunction operator+(const BiFunction& f, const BiFunction& g) {
  auto comps = f.components_;
  comps.insert(comps.end(), g.components_.begin(), g.components_.end());
  return BiFunction(std::move(comps));
}

BiFunction twisted_product(const BiFunction& f, const BiFunction& g) {
  const Bidegree df = f.bidegree();
  const Bidegree dg = g.bidegree();
  const double sign = sign_of(df.y * dg.x);
  auto a = f;
  auto b = g;
  return BiFunction(
      [a, b, sign](double x, double y) { return sign * a(x, y) * b(x, y); },
      Bidegree{(df.x + dg.x) % 2, (df.y + dg.y) % 2});
}

BiFunction twisted_product_components(const BiFunction& f,
                                      const BiFunction& g) {
  std::vector<BiFunction::Component> out;
  for (const auto& cf : f.components())
    for (const auto& cg : g.components()) {
      const auto p = twisted_product(BiFunction(cf.eval, cf.degree),
                                     BiFunction(cg.eval, cg.degree));
      out.push_back(p.components().front());
    }
  return BiFunction(std::move(out));
}

double radius(double x, double y) { return std::hypot(x, y); }

double xi_x(double x, double y) {
  const double r = radius(x, y);
  return r == 0.0 ? M_SQRT1_2 : x / r;
}

double xi_y(double x, double y) {
  const double r = radius(x, y);
  return r == 0.0 ? M_SQRT1_2 : y / r;
}

BiFunction comultiply(const SFunction& f) {
  const int p = parity_bit(f.parity());
  if (p == 0)
    return BiFunction([f](double x, double y) { return f(radius(x, y)); },
                      Bidegree{0, 0});
  return BiFunction(std::vector<BiFunction::Component>{
      {[f](double x, double y) { return xi_x(x, y) * f(radius(x, y)); },
       Bidegree{1, 0}},
      {[f](double x, double y) { return xi_y(x, y) * f(radius(x, y)); },
       Bidegree{0, 1}}});
}

std::vector<ElementaryTensor> comultiply_tensor(const SFunction& f) {
  const auto u = SFunction::u();
  const auto v = SFunction::v();
  if (f.label() == "u") return {{1.0, u, u}};
  if (f.label() == "v") return {{1.0, u, v}, {1.0, v, u}};
  if (f.label() == "0") return {};
  throw UnsupportedError("tensor form of the coproduct is only available for "
                         "u, v and 0");
}

BiFunction evaluate_tensor(const std::vector<ElementaryTensor>& terms) {
  std::vector<BiFunction::Component> comps;
  for (const auto& t : terms) {
    const Bidegree d{parity_bit(t.left.parity()),
                     parity_bit(t.right.parity())};
    comps.push_back({[t](double x, double y) {
                       return t.coefficient * t.left(x) * t.right(y);
                     },
                     d});
  }
  return BiFunction(std::move(comps));
}

Complex counit(const SFunction& f) { return f(0.0); }

double Grid::at(int k) const {
  if (points == 1) return lo;
  return lo + (hi - lo) * static_cast<double>(k) / (points - 1);
}

double grid_distance(const BiFunction& f, const BiFunction& g,
                     const Grid& grid) {
  double worst = 0.0;
  for (int a = 0; a < grid.points; ++a)
    for (int b = 0; b < grid.points; ++b) {
      const double x = grid.at(a), y = grid.at(b);
      worst = std::max(worst, std::abs(f(x, y) - g(x, y)));
    }
  return worst;
}

double check_multiplicativity(const SFunction& f, const SFunction& g,
                              const Grid& grid) {
  const BiFunction lhs = comultiply(f * g);
  const BiFunction rhs =
      twisted_product_components(comultiply(f), comultiply(g));
  return grid_distance(lhs, rhs, grid);
}

namespace {

// (Delta (x) 1) F and (1 (x) Delta) F as functions of three variables.
Complex delta_left(const BiFunction& f, double x, double y, double z) {
  Complex s{};
  const double r = radius(x, y);
  for (const auto& c : f.components()) {
    const Complex val = c.eval(r, z);
    s += c.degree.x == 0 ? val : (xi_x(x, y) + xi_y(x, y)) * val;
  }
  return s;
}

Complex delta_right(const BiFunction& f, double x, double y, double z) {
  Complex s{};
  const double r = radius(y, z);
  for (const auto& c : f.components()) {
    const Complex val = c.eval(x, r);
    s += c.degree.y == 0 ? val : (xi_x(y, z) + xi_y(y, z)) * val;
  }
  return s;
}

}  // namespace

double coassociativity_residual(const SFunction& f, const Grid& grid) {
  const BiFunction d = comultiply(f);
  double worst = 0.0;
  for (int a = 0; a < grid.points; ++a)
    for (int b = 0; b < grid.points; ++b)
      for (int c = 0; c < grid.points; ++c) {
        const double x = grid.at(a), y = grid.at(b), z = grid.at(c);
        worst = std::max(worst, std::abs(delta_left(d, x, y, z) -
                                         delta_right(d, x, y, z)));
      }
  return worst;
}

double counit_residual(const SFunction& f, const Grid& grid) {
  const BiFunction d = comultiply(f);
  double worst = 0.0;
  for (int a = 0; a < grid.points; ++a) {
    const double x = grid.at(a);
    worst = std::max(worst, std::abs(d(0.0, x) - f(x)));
    worst = std::max(worst, std::abs(d(x, 0.0) - f(x)));
  }
  return worst;
}

double parity_defect(const SFunction& f, const Grid& grid) {
  if (f.parity() == Parity::mixed) return 0.0;
  const double s = f.parity() == Parity::even ? 1.0 : -1.0;
  double worst = 0.0;
  for (int a = 0; a < grid.points; ++a) {
    const double x = grid.at(a);
    worst = std::max(worst, std::abs(f(-x) - s * f(x)));
  }
  return worst;
}

double bidegree_defect(const BiFunction& f, const Grid& grid) {
  double worst = 0.0;
  for (const auto& c : f.components()) {
    const double sx = sign_of(c.degree.x), sy = sign_of(c.degree.y);
    for (int a = 0; a < grid.points; ++a)
      for (int b = 0; b < grid.points; ++b) {
        const double x = grid.at(a), y = grid.at(b);
        const Complex val = c.eval(x, y);
        worst = std::max(worst, std::abs(c.eval(-x, y) - sx * val));
        worst = std::max(worst, std::abs(c.eval(x, -y) - sy * val));
      }
  }
  return worst;
}

void write_grid_csv(std::ostream& out, const BiFunction& f, const Grid& grid) {
  out << "x,y,re,im\n";
  out.precision(17);
  for (int a = 0; a < grid.points; ++a)
    for (int b = 0; b < grid.points; ++b) {
      const double x = grid.at(a), y = grid.at(b);
      const Complex val = f(x, y);
      out << x << ',' << y << ',' << val.real() << ',' << val.imag() << '\n';
    }
}

}  // namespace speck::schwartz
