#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyperstretch/hgeom.hpp"
#include "hyperstretch/stretch.hpp"
#include "hyperstretch/words.hpp"

namespace hyperstretch {

// One verified quantity: |value - reference| <= tolerance for kind "abs",
// value <= reference + tolerance for "le", value >= reference - tolerance for
// "ge", exact equality for "exact". Reports always embed the tolerance used.
struct Check {
  std::string name;
  std::string kind;
  double value{0.0};
  double reference{0.0};
  double tolerance{0.0};
  bool pass{false};
};

Check check_abs(const std::string& name, double value, double reference, double tol);
Check check_le(const std::string& name, double value, double bound, double tol);
Check check_ge(const std::string& name, double value, double bound, double tol);
Check check_exact(const std::string& name, double value, double reference);

bool all_pass(const std::vector<Check>& checks);

// Exact 2x2 integer matrices for the unipotent generator identities.
struct IntMat2 {
  long long a, b, c, d;
  friend IntMat2 operator*(const IntMat2& x, const IntMat2& y) {
    return IntMat2{x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                   x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  long long trace() const { return a + d; }
};

IntMat2 int_power(IntMat2 m, int e);

// Unipotent pair j(alpha) = [[1,3],[0,1]], j(beta) = [[1,0],[-3,1]] and the
// words w_k = alpha^{m} beta^{m} with m = 2^{k-1} k.
Representation<double> unipotent_pair_rep();
long long ex97_word_exponent(int k);

struct Ex97Row {
  int k{0};
  long long exponent{0};
  long long trace_exact{0};
  long long trace_closed_form{0};
  double lambda_j{0.0};
  double lambda_j_reference{0.0};  // 4 (k log 2 + log k)
  double lambda_rho{0.0};
  double lambda_rho_reference{0.0};  // 4 k log 2
  double ratio{0.0};
  double ratio_bound{0.0};  // 1 - log k / (k log 2)
};

struct Ex97Report {
  std::vector<Ex97Row> rows;
  std::vector<Check> checks;
};

Ex97Report run_ex97(int k_max);

struct Ex98Row {
  int k{0};
  double center_distance{0.0};
  double lambda{0.0};
  double reference{0.0};  // 4 k log 2
};

struct Ex98Report {
  std::vector<Ex98Row> rows;
  std::vector<Check> checks;
};

// The rotation-composition construction: rho_k(alpha), rho_k(beta) are
// rotations of angle 2 pi / (2^k k) about 2^k i and 2^{-k} i, composed
// literally; the closed form 4 k log 2 is the check.
Ex98Report run_ex98(int k_max);

struct Ex91Report {
  int first_index{0};
  int generator_count{0};
  int ball_radius{0};
  std::vector<double> lambda_alpha, lambda_beta;
  DriftScanResult drift;
  std::vector<Check> checks;
};

// Schottky-type pair from half-circles of radius 1 and log k centered at k^2
// and k^2 + k, for k = N .. N + gens - 1.
Ex91Report run_ex91(int N, int gens, int L);

struct Ex94Report {
  RightTriangleSides coarse, fine;  // angles (pi/3, pi/2, pi/14) and (.., pi/7)
  double c0{0.0};                   // fine.c / coarse.c
  RatioSupResult ratio;
  double margin{0.0};  // c0 - C'_L
  std::vector<Check> checks;
};

Ex94Report run_ex94(int L, int grid, std::uint64_t seed = 1);

struct Ex81Report {
  double t{0.0}, T{0.0};
  double lip_phi{0.0};       // g(T)/g(t)
  double extension_c{0.0};   // constant returned by the one-point extension
  HPoint extension_point{HPoint::plane(0, 1)};
  std::vector<Check> checks;
};

// Three points at distance t from a center, images at distance T along the
// same rays; g(s) = 2 arcsinh(sqrt(3)/2 sinh s) is the pairwise gauge.
Ex81Report run_ex81(double t, double T);

double ex81_gauge(double s);  // g(s)

}  // namespace hyperstretch
