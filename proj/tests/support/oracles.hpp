#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hcert/multiplicity.hpp"
#include "hcert/problem.hpp"

namespace oracle {

// Example 1 data: Dirichlet kernel, window [1/4,3/4], gamma = t(1-t)+1/4, theta = 1/2.
hcert::ProblemSpec example1_problem();
// Example 2 data: periodic kernel, window [1/4,3/4], theta = 1/2, eta = 1/2.
hcert::ProblemSpec example2_problem();

// Closed forms for Example 1.
double ex1_tilde_gamma(double t);   // int_0^1 G(t,s) gamma(s) ds
double ex1_window_green(double t);  // int_{1/4}^{3/4} G(t,s) ds, t in [1/4,3/4]
double ex1_i1_bracket(double t);
double ex1_i0_bracket(double t);
// Minimum of ex1_i0_bracket over [1/4,3/4] by dense sampling.
double ex1_i0_bracket_min();

// Finite-difference solutions of the two boundary value problems on t_i = i/n,
// Richardson-combined from n and 2n; returns (nodes, values).
std::pair<std::vector<double>, std::vector<double>> fd_example1(int n);
std::pair<std::vector<double>, std::vector<double>> fd_example2(int n);

// Largest solution count over all admissible chains, from the literal pattern table.
int brute_force_best(const std::vector<std::pair<double, hcert::IndexKind>>& entries, double c);

// Largest eigenvalue modulus by a dense eigensolve.
double dense_spectral_radius(const Eigen::MatrixXd& m);

std::string config_path(const std::string& name);

}  // namespace oracle
