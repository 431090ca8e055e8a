// Copyright 2026 The fpa-regret Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FPA_PIECEWISE_HPP_
#define FPA_PIECEWISE_HPP_

#include <vector>

namespace fpa {

// Quadratic piece a*x^2 + b*x + c.
struct Quadratic {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double operator()(double x) const { return (a * x + b) * x + c; }
  Quadratic& operator+=(const Quadratic& o) {
    a += o.a;
    b += o.b;
    c += o.c;
    return *this;
  }
};

struct Maximum {
  double argmax = 0.0;
  double value = 0.0;
};

// Function on [0, 1] given by quadratic pieces on the left-closed cells
// [x_i, x_{i+1}); the last cell also contains 1. Expected utilities of all
// closed-form environments have this shape.
class PiecewiseQuadratic {
 public:
  // The zero function.
  PiecewiseQuadratic();
  // `breaks` = x_0 = 0 < ... < x_n = 1, one piece per cell.
  PiecewiseQuadratic(std::vector<double> breaks, std::vector<Quadratic> pieces);

  double operator()(double x) const;

  PiecewiseQuadratic& operator+=(const PiecewiseQuadratic& other);
  PiecewiseQuadratic& operator*=(double factor);
  friend PiecewiseQuadratic operator+(PiecewiseQuadratic a, const PiecewiseQuadratic& b) {
    return a += b;
  }
  friend PiecewiseQuadratic operator*(double f, PiecewiseQuadratic a) { return a *= f; }

  // Adds `q` on [lo, hi) (on [lo, 1] when hi >= 1).
  void add_on(double lo, double hi, const Quadratic& q);

  // Supremum over [0, 1], assuming the function is continuous or only jumps
  // upward at breaks. Checks cell ends and interior vertices.
  Maximum maximize() const;

  const std::vector<double>& breaks() const { return breaks_; }
  const std::vector<Quadratic>& pieces() const { return pieces_; }

 private:
  std::vector<double> breaks_;
  std::vector<Quadratic> pieces_;
};

}  // namespace fpa

#endif  // FPA_PIECEWISE_HPP_
